//! Loop-space models of finite simplicial sets: normalized chains with the
//! Alexander–Whitney coproduct, the cobar construction, chain-level cubical
//! rigidification, necklaces and the box category, cubical sets with
//! connections, dg nerves, and (co)Hochschild complexes.

pub mod cobar;
pub mod cubical;
pub mod dgnerve;
pub mod error;
pub mod hochschild;
pub mod linalg;
pub mod necklace;
pub mod rigidify;
pub mod simplicial;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
