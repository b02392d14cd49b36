//! Finitely presented simplicial sets, standard constructions, and normalized
//! chains with the Alexander–Whitney coproduct.

mod coalgebra;
mod constructions;
mod io;
pub mod random;
mod set;

pub use coalgebra::{aw_coalgebra, normalized_chains, CoalgebraElement, DGCoalgebra};
pub use constructions::{nerve_monoid, quotient, sphere, standard_simplex, Monoid};
pub(crate) use constructions::subsets;
pub use io::{FaceEntry, SimplexEntry, SimplicialSetFile, SIMPLICIAL_FORMAT};
pub use set::{Simplex, SimplexRef, SimplicialSet};
