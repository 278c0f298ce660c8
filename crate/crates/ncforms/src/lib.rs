//! Weight-3 cusp forms on eight index-36 noncongruence subgroups: exact
//! q-expansions, Frobenius traces of the attached elliptic surfaces, and
//! mod p^2 congruence checks against congruence newforms.

pub mod aswd;
pub mod catalog;
pub mod error;
pub mod report;
pub mod series;
pub mod surface;
pub mod trace;

pub use error::{Error, Result};
