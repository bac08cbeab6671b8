//! Finite fields and the number theory they need.

mod field;
pub mod numtheory;

pub use field::{FieldCtx, FieldElement};
pub use numtheory::{factorize, is_prime, is_primitive_prime_divisor};
