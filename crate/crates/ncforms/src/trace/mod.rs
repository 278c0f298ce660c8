//! Finite-field point counting and Frobenius traces of the elliptic surfaces.

pub mod counting;
pub mod field;
pub mod frobenius;

pub use counting::{classify_singular_fiber, count_points_short, quadratic_character, FiberType};
pub use field::{FiniteField, PrimeField, QuadExtField};
pub use frobenius::{frobenius_trace, local_traces, trace_fingerprint, LocalTrace, SurfaceModel};
