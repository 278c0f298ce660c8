//! Rational functions over Q, Weierstrass families, j-invariants and
//! modular-polynomial relations.

pub mod isogeny;
pub mod modpoly;
pub mod poly;
pub mod ratfunc;
pub mod weierstrass;

pub use modpoly::ModularPolynomial;
pub use poly::Poly;
pub use ratfunc::RationalFunctionQ;
pub use weierstrass::{long_to_short, BaseFamily, ShortWeierstrass, WeierstrassFamily};
