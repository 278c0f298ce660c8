//! Exact q-series: rationals, truncated Puiseux series, eta quotients and
//! Eisenstein series.

pub mod eisenstein;
pub mod eta;
pub mod io;
pub mod puiseux;
pub mod rational;

pub use eisenstein::{divisor_sigma, eisenstein_e6};
pub use eta::{eta_expansion, EtaQuotient};
pub use puiseux::PuiseuxSeries;
pub use rational::ExactRational;

/// Default working order: exponents through `q^{501/mu}`.
pub const DEFAULT_ORDER: i64 = 502;
