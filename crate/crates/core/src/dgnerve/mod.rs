//! Small dg categories over prime fields, their dg nerves, and an exhaustive
//! check that dg functors out of the rigidified simplices correspond to
//! nerve simplices naturally.

mod adjunction;
mod category;
mod nerve;

pub use adjunction::{adjunction_check, dg_functors, monotone_maps, precompose, theta, AdjunctionReport, DgFunctor, DimensionCheck};
pub use category::{CompositionEntry, DGCategory, DGCategoryFile, HomSpace, MorphismEntry, Vector};
pub use nerve::{dg_nerve_simplices, families_order, nerve_simplicial_set, pull_simplex, DGNerveSimplex};

#[cfg(test)]
mod tests;
