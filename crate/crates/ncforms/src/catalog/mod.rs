//! Static data for the groups and their newforms, and the group-theoretic
//! operations built on it.

pub mod basis;
pub mod groups;
pub mod newforms;
pub mod structure;

pub use groups::{all_groups, group, primary_groups, GroupRecord, Parent};
pub use newforms::{BiquadraticNumber, NewformTag};
