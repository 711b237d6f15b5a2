//! Plain-text formats for point sets, partitions and edge lists.
//!
//! ```text
//! pointset <count> <general|convex|wheel>
//! <x> <y>
//! ...
//!
//! partition <points> <trees>
//! tree <i>
//! <a> <b>
//! ...
//! ```
//!
//! Blank lines and text after `#` are ignored.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{ConfigTag, GeomEdge, Point, PointSet};
use crate::partition::Partition;

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

fn parse_edge_tokens(line: usize, tokens: &[&str]) -> Result<GeomEdge> {
    if tokens.len() != 2 {
        return Err(parse_err(line, format!("expected `a b`, found {} fields", tokens.len())));
    }
    let a: usize = parse_num(line, tokens[0], "vertex")?;
    let b: usize = parse_num(line, tokens[1], "vertex")?;
    GeomEdge::try_new(a, b).map_err(|_| parse_err(line, format!("loop edge {a}-{b}")))
}

pub fn parse_pointset(text: &str) -> Result<PointSet> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `pointset` header"))?;
    if header.len() != 3 || header[0] != "pointset" {
        return Err(parse_err(hline, "header must be `pointset <count> <general|convex|wheel>`"));
    }
    let count: usize = parse_num(hline, header[1], "count")?;
    let tag = match header[2] {
        "general" => ConfigTag::General,
        "convex" => ConfigTag::Convex,
        "wheel" => {
            if count < 4 || count % 2 == 1 {
                return Err(parse_err(hline, format!("a wheel needs an even count >= 4, got {count}")));
            }
            ConfigTag::Wheel { n: count / 2 }
        }
        other => return Err(parse_err(hline, format!("unknown configuration `{other}`"))),
    };
    let mut points = Vec::with_capacity(count);
    let mut last_line = hline;
    for (line, tokens) in lines {
        last_line = line;
        if tokens.len() != 2 {
            return Err(parse_err(line, format!("expected `x y`, found {} fields", tokens.len())));
        }
        let x: f64 = parse_num(line, tokens[0], "coordinate")?;
        let y: f64 = parse_num(line, tokens[1], "coordinate")?;
        let p = Point::new(x, y).map_err(|e| parse_err(line, e.to_string()))?;
        if points.len() == count {
            return Err(parse_err(line, format!("more than {count} points")));
        }
        points.push(p);
    }
    if points.len() != count {
        return Err(parse_err(last_line, format!("expected {count} points, found {}", points.len())));
    }
    PointSet::new(points, tag).map_err(|e| match e {
        Error::DegenerateInput(msg) => Error::InvariantViolation(msg),
        other => other,
    })
}

pub fn emit_pointset(ps: &PointSet) -> String {
    let mut out = format!("pointset {} {}\n", ps.len(), ps.tag());
    for p in ps.points() {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}

/// Parses a partition file against the point set it is drawn on.
pub fn parse_partition(text: &str, ps: Arc<PointSet>) -> Result<Partition> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `partition` header"))?;
    if header.len() != 3 || header[0] != "partition" {
        return Err(parse_err(hline, "header must be `partition <points> <trees>`"));
    }
    let points: usize = parse_num(hline, header[1], "point count")?;
    let count: usize = parse_num(hline, header[2], "tree count")?;
    if points != ps.len() {
        return Err(parse_err(hline, format!("partition is for {points} points, point set has {}", ps.len())));
    }
    let mut lists: Vec<Vec<GeomEdge>> = Vec::new();
    let mut last_line = hline;
    for (line, tokens) in lines {
        last_line = line;
        if tokens[0] == "tree" {
            if tokens.len() != 2 {
                return Err(parse_err(line, "expected `tree <i>`"));
            }
            let i: usize = parse_num(line, tokens[1], "tree index")?;
            if i != lists.len() {
                return Err(parse_err(line, format!("expected tree {}, found tree {i}", lists.len())));
            }
            lists.push(Vec::new());
            continue;
        }
        let e = parse_edge_tokens(line, &tokens)?;
        if e.b >= points {
            return Err(parse_err(line, format!("vertex {} out of range", e.b)));
        }
        lists.last_mut().ok_or_else(|| parse_err(line, "edge before the first `tree` line"))?.push(e);
    }
    if lists.len() != count {
        return Err(parse_err(last_line, format!("expected {count} trees, found {}", lists.len())));
    }
    Partition::from_edge_lists(ps, &lists)
}

pub fn emit_partition(p: &Partition) -> String {
    let mut out = format!("partition {} {}\n", p.point_set().len(), p.len());
    for (i, t) in p.trees().iter().enumerate() {
        let _ = writeln!(out, "tree {i}");
        for e in t.edges() {
            let _ = writeln!(out, "{} {}", e.a, e.b);
        }
    }
    out
}

/// One `a b` edge per line.
pub fn parse_edge_list(text: &str) -> Result<Vec<GeomEdge>> {
    content_lines(text).map(|(line, tokens)| parse_edge_tokens(line, &tokens)).collect()
}

pub fn emit_edge_list(edges: &[GeomEdge]) -> String {
    edges.iter().map(|e| format!("{} {}\n", e.a, e.b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{default_wheel_seed, make_wheel};

    #[test]
    fn four_points() {
        let ps = parse_pointset("pointset 4 general\n0 0\n1 0\n0 1\n2 3\n").unwrap();
        assert_eq!(ps.len(), 4);
        assert_eq!(ps.tag(), ConfigTag::General);
    }

    #[test]
    fn round_trip_wheel() {
        let ps = make_wheel(4, 1.0, default_wheel_seed(4)).unwrap();
        let text = emit_pointset(&ps);
        let back = parse_pointset(&text).unwrap();
        assert_eq!(back, ps);
        assert_eq!(emit_pointset(&back), text);
    }

    #[test]
    fn duplicate_point_is_invariant_violation() {
        let err = parse_pointset("pointset 4 general\n0 0\n1 0\n0 0\n2 3\n").unwrap_err();
        assert!(matches!(err, Error::InvariantViolation(_)), "{err:?}");
    }

    #[test]
    fn collinear_general_is_invariant_violation() {
        let err = parse_pointset("pointset 4 general\n0 0\n1 1\n2 2\n2 3\n").unwrap_err();
        assert!(matches!(err, Error::InvariantViolation(_)), "{err:?}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_pointset("# header next\npointset 3 general\n0 0\n1 zero\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 4, msg: "invalid coordinate `zero`".into() });
        let err = parse_pointset("pointset 3 circle\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_pointset("pointset 3 general\n0 0\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn partition_round_trip() {
        let ps = Arc::new(make_wheel(2, 1.0, default_wheel_seed(2)).unwrap());
        let text = "partition 4 2\ntree 0\n0 3\n0 1\n1 2\ntree 1\n0 2\n2 3\n1 3\n";
        let p = parse_partition(text, ps.clone()).unwrap();
        assert_eq!(p.len(), 2);
        let again = parse_partition(&emit_partition(&p), ps).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn partition_errors() {
        let ps = Arc::new(make_wheel(2, 1.0, default_wheel_seed(2)).unwrap());
        let err = parse_partition("partition 4 1\n0 1\n", ps.clone()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_partition("partition 4 1\ntree 0\n0 9\n", ps.clone()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_partition("partition 6 1\n", ps).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn edge_lists() {
        let edges = parse_edge_list("# a path\n0 1\n1 2 # middle\n\n2 3\n").unwrap();
        assert_eq!(edges, vec![GeomEdge::new(0, 1), GeomEdge::new(1, 2), GeomEdge::new(2, 3)]);
        assert_eq!(parse_edge_list(&emit_edge_list(&edges)).unwrap(), edges);
        assert!(matches!(parse_edge_list("1 1\n"), Err(Error::Parse { line: 1, .. })));
    }
}
