//! k-halving lines, h-labelings and w-labelings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{angle_about, Orientation, Point, PointSet};

/// Line through points `i < j` leaving `m-1-k` and `m-1+k` points on its sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalvingLine {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl HalvingLine {
    pub fn touches(&self, v: usize) -> bool {
        self.i == v || self.j == v
    }
}

fn half_size(ps: &PointSet) -> Result<usize> {
    let n = ps.len();
    if n % 2 == 1 {
        return Err(Error::OddPointCount(n));
    }
    if n < 4 {
        return Err(Error::InvalidParameter(format!("need at least 4 points, got {n}")));
    }
    Ok(n / 2)
}

/// Number of points strictly left of the directed line `i -> j`.
pub fn left_count(ps: &PointSet, i: usize, j: usize) -> Result<usize> {
    let mut left = 0;
    for v in 0..ps.len() {
        if v != i && v != j && ps.strict_orientation(i, j, v)? == Orientation::Ccw {
            left += 1;
        }
    }
    Ok(left)
}

/// Balance parameter of the line through `i` and `j`.
pub fn balance(ps: &PointSet, i: usize, j: usize) -> Result<usize> {
    half_size(ps)?;
    let others = ps.len() - 2;
    let left = left_count(ps, i, j)?;
    Ok((2 * left).abs_diff(others) / 2)
}

/// Every pair with its balance parameter, lexicographic by `(i, j)`.
pub fn all_lines(ps: &PointSet) -> Result<Vec<HalvingLine>> {
    half_size(ps)?;
    let n = ps.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(HalvingLine { i, j, k: balance(ps, i, j)? });
        }
    }
    Ok(out)
}

/// All lines with balance parameter exactly `k`, lexicographic by `(i, j)`.
pub fn k_halving_lines(ps: &PointSet, k: usize) -> Result<Vec<HalvingLine>> {
    Ok(all_lines(ps)?.into_iter().filter(|l| l.k == k).collect())
}

/// `incidence[v][k]` = number of k-halving lines through `v`.
pub fn incidence_table(ps: &PointSet) -> Result<Vec<Vec<usize>>> {
    let m = half_size(ps)?;
    let mut table = vec![vec![0; m]; ps.len()];
    for l in all_lines(ps)? {
        table[l.i][l.k] += 1;
        table[l.j][l.k] += 1;
    }
    Ok(table)
}

/// Anticlockwise labeling `v_0..v_{2m-1}` in which `v_i v_{m+i}` are the halving lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HLabeling {
    /// `(v_i, v_{m+i})` as original point indices, `i = 0..m`.
    pub pairs: Vec<(usize, usize)>,
    /// `order[i]` is the original index of `v_i`.
    pub order: Vec<usize>,
}

impl HLabeling {
    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    /// Original index of `v_i`, `i` taken modulo `2m`.
    pub fn v(&self, i: usize) -> usize {
        self.order[i % self.order.len()]
    }

    /// Same labeling with `v_0` moved to what is currently `v_shift`.
    pub fn rotated(&self, shift: usize) -> HLabeling {
        let len = self.order.len();
        let order: Vec<usize> = (0..len).map(|i| self.order[(i + shift) % len]).collect();
        let m = len / 2;
        let pairs = (0..m).map(|i| (order[i], order[i + m])).collect();
        HLabeling { pairs, order }
    }
}

/// A point `w` on `2m-1` halving lines and the anticlockwise order of the rest about it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WLabeling {
    pub w: usize,
    /// `order[i]` is the original index of `v_i`, `i = 0..2m-1`.
    pub order: Vec<usize>,
}

impl WLabeling {
    /// Original index of `v_i`, `i` taken modulo `2m-1`.
    pub fn v(&self, i: usize) -> usize {
        self.order[i % self.order.len()]
    }

    pub fn rotated(&self, shift: usize) -> WLabeling {
        let len = self.order.len();
        WLabeling { w: self.w, order: (0..len).map(|i| self.order[(i + shift) % len]).collect() }
    }
}

fn centroid(ps: &PointSet) -> Point {
    let n = ps.len() as f64;
    let (sx, sy) = ps.points().iter().fold((0.0, 0.0), |(x, y), p| (x + p.x, y + p.y));
    Point { x: sx / n, y: sy / n }
}

fn sort_by_angle(origin: Point, ps: &PointSet, idx: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut keyed: Vec<(f64, usize)> = idx.into_iter().map(|v| (angle_about(origin, ps.point(v)), v)).collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    keyed.into_iter().map(|(_, v)| v).collect()
}

/// True iff `v_i v_{i+m}` is a halving line with exactly `v_{i+1}..v_{i+m-1}`
/// on its right (the side swept first when turning anticlockwise), for every `i`.
fn is_valid_h_order(ps: &PointSet, order: &[usize]) -> Result<bool> {
    let len = order.len();
    let m = len / 2;
    for i in 0..len {
        let (a, b) = (order[i], order[(i + m) % len]);
        for step in 1..len {
            if step == m {
                continue;
            }
            let c = order[(i + step) % len];
            let want = if step < m { Orientation::Cw } else { Orientation::Ccw };
            if ps.strict_orientation(a, b, c)? != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Computes the h-labeling, with `v_0` the point of minimal angle about the centroid.
pub fn h_labeling(ps: &PointSet) -> Result<HLabeling> {
    let m = half_size(ps)?;
    let halving = k_halving_lines(ps, 0)?;
    if halving.len() != m {
        return Err(Error::NoHLabeling { reason: format!("{} halving lines, expected {m}", halving.len()) });
    }
    let mut partner = vec![None; ps.len()];
    for l in &halving {
        for (a, b) in [(l.i, l.j), (l.j, l.i)] {
            if partner[a].is_some() {
                return Err(Error::NoHLabeling { reason: format!("point {a} lies on more than one halving line") });
            }
            partner[a] = Some(b);
        }
    }
    let mut order = sort_by_angle(centroid(ps), ps, 0..ps.len());
    if !is_valid_h_order(ps, &order)? {
        // Fall back to the rotation order of the directed halving segments.
        let mut keyed: Vec<(f64, usize)> = (0..ps.len())
            .map(|a| {
                let b = partner[a].expect("every point has a partner");
                (angle_about(ps.point(a), ps.point(b)), a)
            })
            .collect();
        keyed.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        let mut alt: Vec<usize> = keyed.into_iter().map(|(_, a)| a).collect();
        // Keep the same `v_0` as the centroid order would have chosen.
        let first = order[0];
        let pos = alt.iter().position(|&a| a == first).expect("point present");
        alt.rotate_left(pos);
        if !is_valid_h_order(ps, &alt)? {
            return Err(Error::NoHLabeling {
                reason: "halving lines do not induce a consistent anticlockwise labeling".into(),
            });
        }
        order = alt;
    }
    let pairs = (0..m).map(|i| (order[i], order[i + m])).collect();
    Ok(HLabeling { pairs, order })
}

/// Finds `w` on `2m-1` halving lines and orders the other points anticlockwise
/// about it, starting from the one of minimal angle.
pub fn w_labeling(ps: &PointSet) -> Result<WLabeling> {
    let m = half_size(ps)?;
    let table = incidence_table(ps)?;
    let candidates: Vec<usize> = (0..ps.len()).filter(|&v| table[v][0] == 2 * m - 1).collect();
    let w = match candidates.as_slice() {
        [w] => *w,
        [] => return Err(Error::NoWLabeling { reason: format!("no point lies on {} halving lines", 2 * m - 1) }),
        _ => {
            return Err(Error::NoWLabeling {
                reason: format!("several points lie on {} halving lines: {candidates:?}", 2 * m - 1),
            })
        }
    };
    let order = sort_by_angle(ps.point(w), ps, (0..ps.len()).filter(|&v| v != w));
    Ok(WLabeling { w, order })
}

/// Outcome of a hypothesis check; `violation` is `(point, k, incidences)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub holds: bool,
    pub violation: Option<(usize, usize, usize)>,
}

impl HypothesisReport {
    fn from_violation(violation: Option<(usize, usize, usize)>) -> Self {
        Self { holds: violation.is_none(), violation }
    }
}

fn check_r(ps: &PointSet, r: usize) -> Result<usize> {
    let m = half_size(ps)?;
    if r == 0 || r > m - 1 {
        return Err(Error::InvalidParameter(format!("r must be in 1..={}, got {r}", m - 1)));
    }
    Ok(m)
}

/// Each point on one 0-halving line and two k-halving lines for `1 <= k <= r`.
pub fn check_theorem3_hypothesis(ps: &PointSet, r: usize) -> Result<HypothesisReport> {
    check_r(ps, r)?;
    let table = incidence_table(ps)?;
    for k in 0..=r {
        let want = if k == 0 { 1 } else { 2 };
        for (v, row) in table.iter().enumerate() {
            if row[k] != want {
                return Ok(HypothesisReport::from_violation(Some((v, k, row[k]))));
            }
        }
    }
    Ok(HypothesisReport::from_violation(None))
}

/// `w` on `2m-1` halving lines; every other point on one 0-halving line and
/// two k-halving lines for `1 <= k <= r`.
pub fn check_theorem4_hypothesis(ps: &PointSet, r: usize) -> Result<HypothesisReport> {
    let m = check_r(ps, r)?;
    let table = incidence_table(ps)?;
    let Some(w) = (0..ps.len()).find(|&v| table[v][0] == 2 * m - 1) else {
        let v = (0..ps.len()).max_by_key(|&v| (table[v][0], std::cmp::Reverse(v))).unwrap_or(0);
        return Ok(HypothesisReport::from_violation(Some((v, 0, table[v][0]))));
    };
    for k in 0..=r {
        let want = if k == 0 { 1 } else { 2 };
        for (v, row) in table.iter().enumerate() {
            if v != w && row[k] != want {
                return Ok(HypothesisReport::from_violation(Some((v, k, row[k]))));
            }
        }
    }
    Ok(HypothesisReport::from_violation(None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{default_wheel_seed, make_wheel, regular_polygon};

    #[test]
    fn regular_octagon_lines() {
        let ps = regular_polygon(8, 1.0, 0.1).unwrap();
        let zero: Vec<_> = k_halving_lines(&ps, 0).unwrap().iter().map(|l| (l.i, l.j)).collect();
        assert_eq!(zero, vec![(0, 4), (1, 5), (2, 6), (3, 7)]);
        let sides = k_halving_lines(&ps, 3).unwrap();
        assert_eq!(sides.len(), 8);
        assert!(sides.iter().all(|l| l.j - l.i == 1 || (l.i, l.j) == (0, 7)));
    }

    #[test]
    fn odd_count_rejected() {
        let ps = regular_polygon(7, 1.0, 0.0).unwrap();
        assert_eq!(k_halving_lines(&ps, 0), Err(Error::OddPointCount(7)));
    }

    #[test]
    fn convex_h_labeling() {
        let ps = regular_polygon(10, 1.0, 0.3).unwrap();
        let h = h_labeling(&ps).unwrap();
        assert_eq!(h.pairs, vec![(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)]);
    }

    #[test]
    fn wheel_has_w_but_no_h() {
        for n in 2..=6 {
            let ps = make_wheel(n, 1.0, default_wheel_seed(n)).unwrap();
            assert!(matches!(h_labeling(&ps), Err(Error::NoHLabeling { .. })));
            let w = w_labeling(&ps).unwrap();
            assert_eq!(w.w, 2 * n - 1);
            assert_eq!(w.order.len(), 2 * n - 1);
        }
    }

    #[test]
    fn convex_has_no_w() {
        let ps = regular_polygon(8, 1.0, 0.0).unwrap();
        assert!(matches!(w_labeling(&ps), Err(Error::NoWLabeling { .. })));
    }

    #[test]
    fn hypotheses() {
        let ps = regular_polygon(10, 1.0, 0.2).unwrap();
        for r in 1..=4 {
            assert!(check_theorem3_hypothesis(&ps, r).unwrap().holds);
        }
        assert!(!check_theorem4_hypothesis(&ps, 1).unwrap().holds);
        let wheel = make_wheel(4, 1.0, default_wheel_seed(4)).unwrap();
        assert!(!check_theorem3_hypothesis(&wheel, 1).unwrap().holds);
        assert!(check_theorem4_hypothesis(&wheel, 1).unwrap().holds);
    }
}
