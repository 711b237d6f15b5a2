//! An ordered list of trees on a shared point set.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{GeomEdge, PointSet};
use crate::tree::GeomTree;

#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    ps: Arc<PointSet>,
    trees: Vec<GeomTree>,
}

impl Partition {
    /// Every tree must be drawn on `ps`. Structural validity is checked by
    /// [`crate::verify::verify_partition`], not here.
    pub fn new(ps: Arc<PointSet>, trees: Vec<GeomTree>) -> Result<Self> {
        for (i, t) in trees.iter().enumerate() {
            if !Arc::ptr_eq(t.shared_point_set(), &ps) && t.point_set() != &*ps {
                return Err(Error::NotAPartition(format!("tree {i} uses a different point set")));
            }
        }
        Ok(Self { ps, trees })
    }

    pub fn from_edge_lists(ps: Arc<PointSet>, lists: &[Vec<GeomEdge>]) -> Result<Self> {
        let trees =
            lists.iter().map(|edges| GeomTree::new(ps.clone(), edges.iter().copied())).collect::<Result<Vec<_>>>()?;
        Self::new(ps, trees)
    }

    pub fn point_set(&self) -> &PointSet {
        &self.ps
    }

    pub fn shared_point_set(&self) -> &Arc<PointSet> {
        &self.ps
    }

    pub fn trees(&self) -> &[GeomTree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Sorted edge lists, sorted among themselves; tree order is forgotten.
    pub fn canonical(&self) -> Vec<Vec<GeomEdge>> {
        let mut lists: Vec<Vec<GeomEdge>> = self.trees.iter().map(|t| t.edges().to_vec()).collect();
        lists.sort();
        lists
    }

    /// Index of the tree containing `e`, if any.
    pub fn tree_of(&self, e: GeomEdge) -> Option<usize> {
        self.trees.iter().position(|t| t.contains(e))
    }
}
