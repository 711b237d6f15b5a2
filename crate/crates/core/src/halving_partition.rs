//! Partitions built from halving lines: the star-pair tree, the `S_{2t}(m,m)`
//! family, symmetric caterpillars, and w-caterpillars.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{GeomEdge, PointSet};
use crate::halving::{
    balance, check_theorem3_hypothesis, check_theorem4_hypothesis, h_labeling, w_labeling, HLabeling, WLabeling,
};
use crate::partition::Partition;
use crate::tree::GeomTree;

/// Which end of the fan line receives the star.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StarSide {
    /// `v_s` is joined to `v_{s+1}, …, v_t`.
    #[default]
    Low,
    /// `v_t` is joined to `v_s, …, v_{t-1}`.
    High,
}

/// Direction of one growth step of the covered interval `[p, q]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtendSide {
    /// Adds `v_q v_{p-1}`.
    Left,
    /// Adds `v_p v_{q+1}`.
    Right,
}

/// Placement of the big half in the w-caterpillar construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WType {
    /// Big half `v_{n+1}, …, v_{2n-2}, v_0`.
    #[default]
    Type1,
    /// Big half `v_n, …, v_{2n-2}`.
    Type2,
}

/// Free choices of the half-tree constructions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionChoices {
    /// Labels `(s, t)` of the fan line; `None` takes the first admissible one.
    pub fan_line: Option<(usize, usize)>,
    pub star_side: StarSide,
    /// One entry per growth step; empty means "left while possible, then right".
    pub extend_side: Vec<ExtendSide>,
    pub type4: WType,
    /// Point index to be labeled `v_0`; `None` keeps the default labeling.
    pub anchor: Option<usize>,
}

/// Index arithmetic on a cyclic labeling `v_0, …, v_{len-1}`.
struct Labels<'a> {
    order: &'a [usize],
}

impl Labels<'_> {
    fn v(&self, i: usize) -> usize {
        self.order[i % self.order.len()]
    }

    fn edge(&self, i: usize, j: usize) -> GeomEdge {
        GeomEdge::new(self.v(i), self.v(j))
    }
}

/// The h-labeling with `v_0` moved to `anchor` when given.
pub fn anchored_h_labeling(ps: &PointSet, anchor: Option<usize>) -> Result<HLabeling> {
    let h = h_labeling(ps)?;
    match anchor {
        None => Ok(h),
        Some(a) => {
            let pos = h
                .order
                .iter()
                .position(|&p| p == a)
                .ok_or_else(|| Error::InvalidChoices(format!("anchor {a} is not a point")))?;
            Ok(h.rotated(pos))
        }
    }
}

/// The w-labeling with `v_0` moved to `anchor` when given.
pub fn anchored_w_labeling(ps: &PointSet, anchor: Option<usize>) -> Result<WLabeling> {
    let wl = w_labeling(ps)?;
    match anchor {
        None => Ok(wl),
        Some(a) => {
            let pos = wl
                .order
                .iter()
                .position(|&p| p == a)
                .ok_or_else(|| Error::InvalidChoices(format!("anchor {a} is not a circle point")))?;
            Ok(wl.rotated(pos))
        }
    }
}

/// The tree `{w1 u, uv, v w2} ∪ {w1 x : x ∈ P_1} ∪ {v y : y ∈ P_2}` for the
/// halving line `uv`, where `P_1 ∋ w1` and `P_2 ∋ w2` are its open sides.
pub fn lemma6_tree(ps: Arc<PointSet>, u: usize, v: usize, w1: usize, w2: usize) -> Result<GeomTree> {
    lemma6_build(ps, u, v, w1, w2, false)
}

/// Variant in which the second star is centered at `w2` (joined to `v`)
/// rather than at `v`: `{w1 u, uv, v w2} ∪ {w1 x : x ∈ P_1} ∪ {w2 y : y ∈ P_2}`.
pub fn lemma6_tree_twin_stars(ps: Arc<PointSet>, u: usize, v: usize, w1: usize, w2: usize) -> Result<GeomTree> {
    lemma6_build(ps, u, v, w1, w2, true)
}

fn lemma6_build(ps: Arc<PointSet>, u: usize, v: usize, w1: usize, w2: usize, twin: bool) -> Result<GeomTree> {
    let size = ps.len();
    if [u, v, w1, w2].iter().any(|&i| i >= size) || u == v {
        return Err(Error::InvalidParameter("vertex index out of range or u = v".into()));
    }
    if balance(&ps, u, v)? != 0 {
        return Err(Error::NotAHalvingLine(u, v));
    }
    if w1 == u || w1 == v || w2 == u || w2 == v {
        return Err(Error::SideViolation("w1 and w2 must lie off the line".into()));
    }
    let side1 = ps.strict_orientation(u, v, w1)?;
    if ps.strict_orientation(u, v, w2)? == side1 {
        return Err(Error::SideViolation(format!("{w1} and {w2} lie on the same side of {u}-{v}")));
    }
    let mut edges = vec![GeomEdge::new(w1, u), GeomEdge::new(u, v), GeomEdge::new(v, w2)];
    let center2 = if twin { w2 } else { v };
    for x in 0..size {
        if x == u || x == v {
            continue;
        }
        if ps.strict_orientation(u, v, x)? == side1 {
            if x != w1 {
                edges.push(GeomEdge::new(w1, x));
            }
        } else if x != center2 {
            edges.push(GeomEdge::new(center2, x));
        }
    }
    GeomTree::new(ps, edges)
}

/// The `n` trees `S_{2t}(m, m)`, `m = n - t`, from the default h-labeling.
pub fn theorem2_partition(ps: Arc<PointSet>, t: usize) -> Result<Partition> {
    let h = h_labeling(&ps)?;
    theorem2_partition_on(ps, t, &h)
}

/// As [`theorem2_partition`], on a given h-labeling.
pub fn theorem2_partition_on(ps: Arc<PointSet>, t: usize, h: &HLabeling) -> Result<Partition> {
    if t > 1 {
        return Err(Error::InvalidParameter(format!("t must be 0 or 1, got {t}")));
    }
    let n = h.m();
    let l = Labels { order: &h.order };
    let mut trees = Vec::with_capacity(n);
    for i in 0..n {
        let mut edges = Vec::with_capacity(2 * n - 1);
        if t == 0 {
            edges.push(l.edge(i, i + n));
            edges.extend((i + 1..i + n).map(|x| l.edge(i, x)));
            edges.extend((i + n + 1..i + 2 * n).map(|y| l.edge(i + n, y)));
        } else {
            edges.push(l.edge(i, i + n));
            edges.push(l.edge(i, i + n + 1));
            edges.push(l.edge(i + n, i + 1));
            edges.extend((i + 2..i + n).map(|x| l.edge(i + 1, x)));
            edges.extend((i + n + 2..i + 2 * n).map(|y| l.edge(i + n + 1, y)));
        }
        trees.push(GeomTree::new(ps.clone(), edges)?);
    }
    Partition::new(ps, trees)
}

/// A half tree on the label interval `[lo, hi]` (unreduced labels) holding
/// `size` points, grown from a fan on `(s, t)`.
fn half_tree(
    fan: (usize, usize),
    star: StarSide,
    extend: &[ExtendSide],
    lo: usize,
    hi: usize,
    size: usize,
) -> Result<Vec<(usize, usize)>> {
    let (s, t) = fan;
    let steps = size - 1 - (t - s);
    if !extend.is_empty() && extend.len() != steps {
        return Err(Error::InvalidChoices(format!("{} extension steps given, {steps} required", extend.len())));
    }
    let mut edges: Vec<(usize, usize)> = match star {
        StarSide::Low => (s + 1..=t).map(|x| (s, x)).collect(),
        StarSide::High => (s..t).map(|y| (t, y)).collect(),
    };
    let (mut p, mut q) = (s, t);
    for step in 0..steps {
        let side = match extend.get(step) {
            Some(&side) => side,
            None if p > lo => ExtendSide::Left,
            None => ExtendSide::Right,
        };
        match side {
            ExtendSide::Left => {
                if p <= lo {
                    return Err(Error::InvalidChoices(format!(
                        "step {step}: v_{} lies outside the half",
                        p as isize - 1
                    )));
                }
                edges.push((q, p - 1));
                p -= 1;
            }
            ExtendSide::Right => {
                if q >= hi {
                    return Err(Error::InvalidChoices(format!("step {step}: v_{} lies outside the half", q + 1)));
                }
                edges.push((p, q + 1));
                q += 1;
            }
        }
    }
    Ok(edges)
}

fn pick_fan(requested: Option<(usize, usize)>, candidates: Vec<(usize, usize)>, r: usize) -> Result<(usize, usize)> {
    match requested {
        Some(f) if candidates.contains(&f) => Ok(f),
        Some(f) => Err(Error::InvalidChoices(format!(
            "fan line {f:?} is not an admissible {r}-halving line; candidates: {candidates:?}"
        ))),
        None => candidates.first().copied().ok_or(Error::NoFanLine { r, candidates }),
    }
}

/// Admissible fan lines `(s, t)` for the symmetric-caterpillar construction:
/// `0 <= s < t <= n`, `t - s <= n - 1`, balance `r`.
pub fn theorem3_fan_candidates(ps: &PointSet, h: &HLabeling, r: usize) -> Result<Vec<(usize, usize)>> {
    let n = h.m();
    let mut out = Vec::new();
    for s in 0..=n {
        for t in s + 1..=(s + n - 1).min(n) {
            if balance(ps, h.v(s), h.v(t))? == r {
                out.push((s, t));
            }
        }
    }
    Ok(out)
}

/// Symmetric-caterpillar partition; the hypothesis is checked first.
pub fn theorem3_partition(ps: Arc<PointSet>, r: usize, choices: &ConstructionChoices) -> Result<Partition> {
    let report = check_theorem3_hypothesis(&ps, r)?;
    if let Some((v, k, c)) = report.violation {
        return Err(Error::HypothesisViolated(format!("point {v} lies on {c} {k}-halving lines")));
    }
    theorem3_construct(ps, r, choices)
}

/// Symmetric-caterpillar construction without the hypothesis check.
///
/// `T_0` is two copies (shifted by `n`) of a half tree on `n` consecutive
/// labels in `[0, n]`, joined by `v_0 v_n`; `T_q` shifts every label by `q`.
pub fn theorem3_construct(ps: Arc<PointSet>, r: usize, choices: &ConstructionChoices) -> Result<Partition> {
    let h = anchored_h_labeling(&ps, choices.anchor)?;
    let n = h.m();
    if r == 0 || r >= n {
        return Err(Error::InvalidParameter(format!("r must be in 1..={}, got {r}", n - 1)));
    }
    // L_k through v_i and v_{i+n-k} must be a k-halving line.
    for k in 1..=r {
        for i in 0..2 * n {
            let got = balance(&ps, h.v(i), h.v(i + n - k))?;
            if got != k {
                return Err(Error::StructureViolation {
                    lemma: "L_k".into(),
                    witness: format!("v_{i} v_{} has balance {got}, expected {k}", (i + n - k) % (2 * n)),
                });
            }
        }
    }
    let fan = pick_fan(choices.fan_line, theorem3_fan_candidates(&ps, &h, r)?, r)?;
    let half = half_tree(fan, choices.star_side, &choices.extend_side, 0, n, n)?;
    let mut base: Vec<(usize, usize)> = vec![(0, n)];
    for &(a, b) in &half {
        base.push((a, b));
        base.push((a + n, b + n));
    }
    let l = Labels { order: &h.order };
    let trees = (0..n)
        .map(|q| GeomTree::new(ps.clone(), base.iter().map(|&(a, b)| l.edge(a + q, b + q))))
        .collect::<Result<Vec<_>>>()?;
    Partition::new(ps, trees)
}

/// Label interval `[lo, hi]` of the big half (unreduced, modulo `2n-1`).
fn big_half(n: usize, kind: WType) -> (usize, usize) {
    match kind {
        WType::Type1 => (n + 1, 2 * n - 1),
        WType::Type2 => (n, 2 * n - 2),
    }
}

/// Admissible fan lines inside the big half for the w-caterpillar construction.
pub fn theorem4_fan_candidates(ps: &PointSet, wl: &WLabeling, r: usize, kind: WType) -> Result<Vec<(usize, usize)>> {
    let n = (wl.order.len() + 1) / 2;
    let (lo, hi) = big_half(n, kind);
    let mut out = Vec::new();
    for s in lo..=hi {
        for t in s + 1..=hi {
            if balance(ps, wl.v(s), wl.v(t))? == r {
                out.push((s, t));
            }
        }
    }
    Ok(out)
}

/// w-caterpillar partition; the hypothesis is checked first.
pub fn theorem4_partition(ps: Arc<PointSet>, r: usize, choices: &ConstructionChoices) -> Result<Partition> {
    let report = check_theorem4_hypothesis(&ps, r)?;
    if let Some((v, k, c)) = report.violation {
        return Err(Error::HypothesisViolated(format!("point {v} lies on {c} {k}-halving lines")));
    }
    theorem4_construct(ps, r, choices)
}

/// w-caterpillar construction without the hypothesis check.
///
/// `T_0` is the 4-path `w v_{n-1} v_0 v_n`, a half tree on the big half, and
/// its copy shifted by `-n` on the small half. `T_1..T_{n-2}` shift `T_0`'s
/// circle labels; `T_{n-1}` is the w-star over `v_{2n-2}, v_0, …, v_{n-2}`
/// plus `T_0`'s edges inside `v_0..v_{n-1}` shifted by `n-1`.
pub fn theorem4_construct(ps: Arc<PointSet>, r: usize, choices: &ConstructionChoices) -> Result<Partition> {
    let wl = anchored_w_labeling(&ps, choices.anchor)?;
    let m = wl.order.len();
    let n = (m + 1) / 2;
    if r == 0 || r >= n {
        return Err(Error::InvalidParameter(format!("r must be in 1..={}, got {r}", n - 1)));
    }
    let (lo, hi) = big_half(n, choices.type4);
    let half = if n == 2 {
        // The big half is a single point; T_0 is the 4-path alone.
        Vec::new()
    } else {
        let fan = pick_fan(choices.fan_line, theorem4_fan_candidates(&ps, &wl, r, choices.type4)?, r)?;
        half_tree(fan, choices.star_side, &choices.extend_side, lo, hi, n - 1)?
    };
    let l = Labels { order: &wl.order };
    let w = wl.w;
    // Circle edges of T_0 in reduced labels; w is joined to v_{n-1}.
    let mut circle: Vec<(usize, usize)> = vec![(n - 1, 0), (0, n)];
    for &(a, b) in &half {
        circle.push((a % m, b % m));
        circle.push(((a - n) % m, (b - n) % m));
    }
    let mut trees = Vec::with_capacity(n);
    for q in 0..n - 1 {
        let mut edges = vec![GeomEdge::new(w, l.v(n - 1 + q))];
        edges.extend(circle.iter().map(|&(a, b)| l.edge(a + q, b + q)));
        trees.push(GeomTree::new(ps.clone(), edges)?);
    }
    let mut last: Vec<GeomEdge> =
        std::iter::once(2 * n - 2).chain(0..n - 1).map(|z| GeomEdge::new(w, l.v(z))).collect();
    last.extend(circle.iter().filter(|&&(a, b)| a < n && b < n).map(|&(a, b)| l.edge(a + n - 1, b + n - 1)));
    trees.push(GeomTree::new(ps.clone(), last)?);
    Partition::new(ps, trees)
}

/// The `K_4` intersections asserted for two star-pair trees on crossing
/// halving lines: `(E(T_1) ∩ K_4, E(T_2) ∩ K_4)`.
pub fn lemma7_k4_intersections(
    t1: &GeomTree,
    t2: &GeomTree,
    quad: [usize; 4],
) -> (BTreeSet<GeomEdge>, BTreeSet<GeomEdge>) {
    let mut k4 = BTreeSet::new();
    for i in 0..4 {
        for j in i + 1..4 {
            k4.insert(GeomEdge::new(quad[i], quad[j]));
        }
    }
    let cut = |t: &GeomTree| t.edges().iter().copied().filter(|e| k4.contains(e)).collect();
    (cut(t1), cut(t2))
}

fn random_extension<R: Rng + ?Sized>(
    fan: (usize, usize),
    lo: usize,
    hi: usize,
    size: usize,
    rng: &mut R,
) -> Vec<ExtendSide> {
    let (mut p, mut q) = fan;
    let steps = size - 1 - (q - p);
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let left = p > lo && (q >= hi || rng.gen_bool(0.5));
        if left {
            p -= 1;
            out.push(ExtendSide::Left);
        } else {
            q += 1;
            out.push(ExtendSide::Right);
        }
    }
    out
}

fn random_star<R: Rng + ?Sized>(rng: &mut R) -> StarSide {
    if rng.gen_bool(0.5) {
        StarSide::Low
    } else {
        StarSide::High
    }
}

/// A uniformly drawn valid choice vector for [`theorem3_partition`].
pub fn random_theorem3_choices<R: Rng + ?Sized>(ps: &PointSet, r: usize, rng: &mut R) -> Result<ConstructionChoices> {
    let h = h_labeling(ps)?;
    let n = h.m();
    let candidates = theorem3_fan_candidates(ps, &h, r)?;
    let fan = *candidates.choose(rng).ok_or(Error::NoFanLine { r, candidates: Vec::new() })?;
    Ok(ConstructionChoices {
        fan_line: Some(fan),
        star_side: random_star(rng),
        extend_side: random_extension(fan, 0, n, n, rng),
        type4: WType::Type1,
        anchor: None,
    })
}

/// A uniformly drawn valid choice vector for [`theorem4_partition`]; the
/// type is drawn among those with an admissible fan line.
pub fn random_theorem4_choices<R: Rng + ?Sized>(ps: &PointSet, r: usize, rng: &mut R) -> Result<ConstructionChoices> {
    let wl = w_labeling(ps)?;
    let n = (wl.order.len() + 1) / 2;
    let mut options = Vec::new();
    for kind in [WType::Type1, WType::Type2] {
        for fan in theorem4_fan_candidates(ps, &wl, r, kind)? {
            options.push((kind, fan));
        }
    }
    if n == 2 {
        let kind = if rng.gen_bool(0.5) { WType::Type1 } else { WType::Type2 };
        return Ok(ConstructionChoices { type4: kind, ..Default::default() });
    }
    let &(kind, fan) = options.choose(rng).ok_or(Error::NoFanLine { r, candidates: Vec::new() })?;
    let (lo, hi) = big_half(n, kind);
    Ok(ConstructionChoices {
        fan_line: Some(fan),
        star_side: random_star(rng),
        extend_side: random_extension(fan, lo, hi, n - 1, rng),
        type4: kind,
        anchor: None,
    })
}
