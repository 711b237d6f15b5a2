//! Partitions of complete geometric graphs into plane spanning trees.

pub mod error;
pub mod geom;
pub mod halving;
pub mod halving_partition;
pub mod io;
pub mod partition;
pub mod presets;
pub mod svg;
pub mod taxonomy;
pub mod tree;
pub mod verify;
pub mod wheel;

pub use error::{Error, Result};
pub use geom::{ConfigTag, GeomEdge, Orientation, Point, PointSet};
pub use partition::Partition;
pub use tree::{AbstractTree, GeomTree};
