//! Deterministic SVG drawings of trees and partitions.

use std::fmt::Write as _;

use crate::geom::PointSet;
use crate::partition::Partition;
use crate::tree::GeomTree;

/// Tree colors, cycled when there are more trees than entries.
pub const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#000000", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"];

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    /// Output width in pixels; height follows the aspect ratio.
    pub width: f64,
    pub vertex_radius: f64,
    pub stroke_width: f64,
    /// One label per point; `None` uses `v_i`, with `x` for a wheel center.
    pub labels: Option<Vec<String>>,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self { width: 480.0, vertex_radius: 4.0, stroke_width: 2.0, labels: None }
    }
}

fn default_labels(ps: &PointSet) -> Vec<String> {
    let center = ps.wheel_center();
    (0..ps.len()).map(|i| if Some(i) == center { "x".to_string() } else { format!("v{i}") }).collect()
}

/// Renders a partition, one color per tree.
pub fn render_partition(p: &Partition, style: &SvgStyle) -> String {
    render_trees(p.point_set(), p.trees(), style)
}

/// Renders a single tree in the first palette color.
pub fn render_tree(t: &GeomTree, style: &SvgStyle) -> String {
    render_trees(t.point_set(), std::slice::from_ref(t), style)
}

pub fn render_trees(ps: &PointSet, trees: &[GeomTree], style: &SvgStyle) -> String {
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in ps.points() {
        min_x = min_x.min(p.x);
        max_x = max_x.max(p.x);
        min_y = min_y.min(p.y);
        max_y = max_y.max(p.y);
    }
    if ps.is_empty() {
        (min_x, max_x, min_y, max_y) = (0.0, 1.0, 0.0, 1.0);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let margin = 0.05 * span;
    let (vx, vy) = (min_x - margin, -max_y - margin);
    let (vw, vh) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin);
    // Scale pixel-sized style values into user units.
    let unit = vw / style.width;
    let height = style.width * vh / vw;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="{vx:.4} {vy:.4} {vw:.4} {vh:.4}">"#,
        style.width, height
    );
    let _ = writeln!(out, r#"<rect x="{vx:.4}" y="{vy:.4}" width="{vw:.4}" height="{vh:.4}" fill="white"/>"#);
    for (i, t) in trees.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            out,
            r#"<g class="tree" data-tree="{i}" stroke="{color}" stroke-width="{:.4}" stroke-linecap="round">"#,
            style.stroke_width * unit
        );
        for e in t.edges() {
            let (p, q) = (ps.point(e.a), ps.point(e.b));
            let _ = writeln!(out, r#"<line x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}"/>"#, p.x, -p.y, q.x, -q.y);
        }
        out.push_str("</g>\n");
    }
    let labels = style.labels.clone().unwrap_or_else(|| default_labels(ps));
    let r = style.vertex_radius * unit;
    let font = 12.0 * unit;
    out.push_str("<g class=\"points\">\n");
    for (i, p) in ps.points().iter().enumerate() {
        let _ = writeln!(out, r#"<circle cx="{:.4}" cy="{:.4}" r="{r:.4}" fill="black"/>"#, p.x, -p.y);
        if let Some(label) = labels.get(i) {
            let _ = writeln!(
                out,
                r#"<text x="{:.4}" y="{:.4}" font-size="{font:.4}" font-family="sans-serif">{label}</text>"#,
                p.x + 1.5 * r,
                -p.y - 1.5 * r
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_points;
    use std::sync::Arc;

    fn fig2i() -> Partition {
        let ps = Arc::new(preset_points("fig2").unwrap());
        let lists = [
            vec![(5, 2), (2, 0), (0, 3), (3, 4), (0, 1)],
            vec![(5, 1), (1, 4), (4, 2), (4, 0), (2, 3)],
            vec![(5, 0), (5, 3), (5, 4), (1, 3), (1, 2)],
        ];
        let trees = lists.iter().map(|l| GeomTree::from_pairs(ps.clone(), l).unwrap()).collect();
        Partition::new(ps, trees).unwrap()
    }

    #[test]
    fn one_segment_per_edge_and_three_colors() {
        let svg = render_partition(&fig2i(), &SvgStyle::default());
        assert_eq!(svg.matches("<line ").count(), 15);
        for color in &PALETTE[..3] {
            assert!(svg.contains(&format!("stroke=\"{color}\"")));
        }
        assert!(!svg.contains(&format!("stroke=\"{}\"", PALETTE[3])));
        assert!(svg.contains(">x</text>"));
    }

    #[test]
    fn single_tree_and_determinism() {
        let p = fig2i();
        let svg = render_tree(&p.trees()[0], &SvgStyle::default());
        assert_eq!(svg.matches("<line ").count(), 5);
        assert_eq!(render_partition(&p, &SvgStyle::default()), render_partition(&p, &SvgStyle::default()));
    }
}
