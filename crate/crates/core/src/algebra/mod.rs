//! Finite fields, exact determinants, Kronecker-power transforms over the
//! subset lattice, and prime sampling.

mod field;
pub mod lattice;
pub mod matrix;
pub mod prime;

pub use field::{Field, Gf2k, Integers, I128, Ring, Zp, IRREDUCIBLE_LOW};
pub use lattice::{moebius, yates, zeta, LatticeVector, SmallMatrix, SmallMatrixKind, TransformKind};
pub use matrix::{determinant, determinant_exact_int, Matrix};
pub use prime::{is_prime, next_prime, sample_prime};
