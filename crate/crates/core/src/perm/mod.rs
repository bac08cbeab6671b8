//! Permutations, permutation groups and their actions.

mod action;
pub(crate) mod chain;
mod group;
pub mod io;
mod permutation;

pub use action::{is_semiregular, InducedAction, SetOrbit, DEFAULT_SET_ORBIT_BOUND};
pub use group::{PermGroup, DEFAULT_ENUMERATION_BOUND};
pub use permutation::Permutation;
