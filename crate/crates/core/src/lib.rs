//! Extremely primitive groups and the linear spaces they act on.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`]: permutations and permutation groups with a deterministic
//!   base and strong generating set;
//! * [`gf`]: finite fields `GF(p^d)` and the number theory behind primitive
//!   prime divisors;
//! * [`families`]: constructors for the concrete groups and seed spaces;
//! * [`eprim`]: the primitivity hierarchy and the soluble classification
//!   predicate, with a brute-force survey;
//! * [`linspace`]: linear spaces, their parameters and refinements;
//! * [`star`]: Property (*), the line space `LS(G)`, transversality and the
//!   line stabiliser structure;
//! * [`refine`]: refinements of line-transitive spaces and their recovery.

pub mod eprim;
pub mod error;
pub mod families;
pub mod gf;
pub mod linspace;
pub mod perm;
pub mod refine;
pub mod star;

pub use error::{Error, Result};
pub use linspace::{LinearSpace, SpaceParams};
pub use perm::{PermGroup, Permutation};
pub use star::GroupSpacePair;
