//! Congruences modulo `p^2` between the noncongruence basis and newforms.

pub mod detect;
pub mod ratios;
pub mod residue;

pub use detect::{basis_sequences, detect_basis, twist_match, CaseKind, CongruenceReport, NewformMatch, TwistMatch};
pub use ratios::{
    aswd_three_term_check, cross_ratio_constancy, ratio_constancy, ratio_test, solve_alpha_ap, AlphaData, ApValue,
    CoefficientSequence, RatioOutcome, RatioTest, ThreeTermReport,
};
pub use residue::{cbrt_mod_p2, padic_valuation, reduce_mod_p2, sixth_roots_mod_p2, sqrt_mod_p2, Residue, ResidueModP2};
