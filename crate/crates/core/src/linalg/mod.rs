//! Exact linear algebra: integer matrices, Smith normal form, chain complexes
//! and their homology over ℤ, ℚ and prime fields.

mod complex;
mod elimination;
mod matrix;
mod ring;
mod snf;

pub use complex::{homology, homology_basis, ChainComplex, DegreeHomology, HomologyBasis, HomologyReport};
pub use matrix::Matrix;
pub use ring::{is_prime, Ring};
pub use snf::{invariant_factors, smith_normal_form, SmithForm};
