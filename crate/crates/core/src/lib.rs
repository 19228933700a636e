//! Linear codes over prime fields with poset metrics.
//!
//! The crate computes direct-sum decompositions of a code relative to a
//! poset metric, the minimal syndrome-table size over the code's isometry
//! orbit, and the hierarchical neighbours that bound it from both sides.

pub mod code;
pub mod decoder;
pub mod decomposition;
pub mod error;
pub mod field;
pub mod io;
pub mod isometry;
pub mod linalg;
pub mod metric;
pub mod partition;
pub mod poset;
pub mod search;
pub mod subset;
pub mod verify;

pub use code::{LinearCode, ParityData};
pub use decomposition::{Complexity, Decomposition, Profile};
pub use error::{Error, Result};
pub use field::{Field, FieldVector};
pub use isometry::{IsometryGroup, PIsometry};
pub use partition::PointedPartition;
pub use poset::{Permutation, Poset};
pub use subset::ElementSet;
