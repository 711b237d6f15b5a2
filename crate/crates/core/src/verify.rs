//! Construction-independent verification and brute-force oracles.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{GeomEdge, PointSet};
use crate::partition::Partition;
use crate::taxonomy::first_crossing;
use crate::tree::GeomTree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyFailure {
    /// Edge multiset differs from the complete graph.
    Coverage {
        missing: Vec<GeomEdge>,
        repeated: Vec<GeomEdge>,
    },
    NotSpanning {
        tree: usize,
    },
    Crossing {
        tree: usize,
        e: GeomEdge,
        f: GeomEdge,
    },
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyFailure::Coverage { missing, repeated } => {
                write!(f, "coverage: {} missing", missing.len())?;
                if let Some(e) = missing.first() {
                    write!(f, " (first {e})")?;
                }
                write!(f, ", {} repeated", repeated.len())?;
                if let Some(e) = repeated.first() {
                    write!(f, " (first {e})")?;
                }
                Ok(())
            }
            VerifyFailure::NotSpanning { tree } => write!(f, "tree {tree} is not a spanning tree"),
            VerifyFailure::Crossing { tree, e, f: g } => write!(f, "tree {tree}: {e} crosses {g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub points: usize,
    pub trees: usize,
    pub failure: Option<VerifyFailure>,
}

/// Checks, in order: edge multiset equals `E(K_N)`; each tree spanning; each tree plane.
pub fn verify_partition(p: &Partition) -> Result<VerifyReport> {
    let ps = p.point_set();
    let report = |failure: Option<VerifyFailure>| VerifyReport {
        ok: failure.is_none(),
        points: ps.len(),
        trees: p.len(),
        failure,
    };
    let mut count: BTreeMap<GeomEdge, usize> = BTreeMap::new();
    for t in p.trees() {
        for &e in t.edges() {
            *count.entry(e).or_default() += 1;
        }
    }
    let missing: Vec<GeomEdge> = ps.all_edges().into_iter().filter(|e| !count.contains_key(e)).collect();
    let repeated: Vec<GeomEdge> = count.iter().filter(|(_, &c)| c > 1).map(|(&e, _)| e).collect();
    if !missing.is_empty() || !repeated.is_empty() {
        return Ok(report(Some(VerifyFailure::Coverage { missing, repeated })));
    }
    for (i, t) in p.trees().iter().enumerate() {
        if t.abstract_tree().is_err() {
            return Ok(report(Some(VerifyFailure::NotSpanning { tree: i })));
        }
    }
    for (i, t) in p.trees().iter().enumerate() {
        if let Some((e, f)) = first_crossing(t)? {
            return Ok(report(Some(VerifyFailure::Crossing { tree: i, e, f })));
        }
    }
    Ok(report(None))
}

/// Partitions in canonical form: trees sorted by their sorted edge lists.
pub type CanonicalPartition = Vec<Vec<GeomEdge>>;

/// Enumerates partitions of `E(K_{2n})` into `n` plane spanning trees, up to
/// tree order. Exhaustive when `limit` is `None` (only allowed for `n <= 3`);
/// otherwise stops after `limit` partitions.
pub fn brute_force_partitions(ps: &PointSet, limit: Option<usize>) -> Result<Vec<CanonicalPartition>> {
    let size = ps.len();
    if size % 2 == 1 {
        return Err(Error::OddPointCount(size));
    }
    let n = size / 2;
    if limit.is_none() && n > 3 {
        return Err(Error::TooLarge(format!("exhaustive search needs n <= 3, got n = {n}")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter("need at least 4 points".into()));
    }
    let edges = ps.all_edges();
    let m = edges.len();
    let mut cross = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let c = ps.edges_cross(edges[i], edges[j])?;
            cross[i][j] = c;
            cross[j][i] = c;
        }
    }
    let mut search = Search {
        edges: &edges,
        cross: &cross,
        slots: vec![Slot::new(size); n],
        limit,
        found: BTreeSet::new(),
        max_per_tree: size - 1,
    };
    search.run(0);
    Ok(search.found.into_iter().collect())
}

#[derive(Clone)]
struct Slot {
    parent: Vec<usize>,
    members: Vec<usize>,
}

impl Slot {
    fn new(size: usize) -> Self {
        Self { parent: (0..size).collect(), members: Vec::new() }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }
}

struct Search<'a> {
    edges: &'a [GeomEdge],
    cross: &'a [Vec<bool>],
    slots: Vec<Slot>,
    limit: Option<usize>,
    found: BTreeSet<CanonicalPartition>,
    max_per_tree: usize,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.found.len() >= l)
    }

    fn run(&mut self, idx: usize) {
        if self.done() {
            return;
        }
        if idx == self.edges.len() {
            let mut canon: CanonicalPartition = self
                .slots
                .iter()
                .map(|s| {
                    let mut list: Vec<GeomEdge> = s.members.iter().map(|&i| self.edges[i]).collect();
                    list.sort();
                    list
                })
                .collect();
            canon.sort();
            self.found.insert(canon);
            return;
        }
        let e = self.edges[idx];
        // First-use symmetry breaking: an edge may open at most one new slot.
        let first_empty = self.slots.iter().position(|s| s.members.is_empty());
        for s in 0..self.slots.len() {
            if let Some(fe) = first_empty {
                if s > fe {
                    break;
                }
            }
            let slot = &self.slots[s];
            if slot.members.len() == self.max_per_tree {
                continue;
            }
            let (ra, rb) = (slot.find(e.a), slot.find(e.b));
            if ra == rb {
                continue;
            }
            if slot.members.iter().any(|&j| self.cross[idx][j]) {
                continue;
            }
            let saved = self.slots[s].parent[ra];
            self.slots[s].parent[ra] = rb;
            self.slots[s].members.push(idx);
            self.run(idx + 1);
            self.slots[s].members.pop();
            self.slots[s].parent[ra] = saved;
            if self.done() {
                return;
            }
        }
    }
}

/// Rebuilds a [`Partition`] from canonical edge lists.
pub fn partition_from_canonical(ps: Arc<PointSet>, canon: &CanonicalPartition) -> Result<Partition> {
    Partition::from_edge_lists(ps, canon)
}

/// Side sizes of a non-radial wheel edge `uv`: `A` is the side without the center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation1Entry {
    pub edge: GeomEdge,
    pub a: Vec<usize>,
    pub a_x: Vec<usize>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation1Report {
    pub ok: bool,
    pub entries: Vec<Observation1Entry>,
}

/// For every non-radial edge, checks `|A| < |A(x)|`, `|A| <= n-2`, `|A(x)| >= n`
/// and that the center lies in `A(x)`.
pub fn check_observation1(t: &GeomTree) -> Result<Observation1Report> {
    let ps = t.point_set();
    let n = ps.wheel_n().ok_or(Error::NotWheelConfig)?;
    let x = ps.wheel_center().ok_or(Error::NotWheelConfig)?;
    let mut entries = Vec::new();
    for &e in t.edges() {
        if e.contains(x) {
            continue;
        }
        let x_side = ps.strict_orientation(e.a, e.b, x)?;
        let (mut a, mut a_x) = (Vec::new(), Vec::new());
        for v in 0..ps.len() {
            if e.contains(v) {
                continue;
            }
            if ps.strict_orientation(e.a, e.b, v)? == x_side {
                a_x.push(v);
            } else {
                a.push(v);
            }
        }
        let ok = a.len() < a_x.len() && a.len() + 2 <= n && a_x.len() >= n && a_x.contains(&x);
        entries.push(Observation1Entry { edge: e, a, a_x, ok });
    }
    Ok(Observation1Report { ok: entries.iter().all(|e| e.ok), entries })
}
