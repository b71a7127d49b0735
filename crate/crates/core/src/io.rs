//! Point and graph text files.
//!
//! Point file: one point per line, two whitespace-separated coordinates,
//! each a decimal literal (read exactly) or `p/q`. Lines starting with `#`
//! are comments; blank lines are ignored.
//!
//! Graph file: a point section, one blank line, then one edge per line as two
//! 0-based vertex indices.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::geometry::{format_rational, parse_rational, ExactPoint};
use crate::graph::PlaneGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointFile {
    pub path: PathBuf,
    pub points: Vec<ExactPoint>,
}

impl PointFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Ok(PointFile {
            path: path.to_path_buf(),
            points: parse_points(&text)?,
        })
    }
}

fn is_comment(line: &str) -> bool {
    line.trim_start().starts_with('#')
}

fn parse_point_line(line: &str, lineno: usize) -> Result<ExactPoint> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line: lineno,
            message: format!("expected two coordinates, found {}", fields.len()),
        });
    }
    let coord = |s: &str| {
        parse_rational(s).map_err(|message| Error::Parse {
            line: lineno,
            message,
        })
    };
    Ok(ExactPoint::new(coord(fields[0])?, coord(fields[1])?))
}

pub fn parse_points(text: &str) -> Result<Vec<ExactPoint>> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || is_comment(line) {
            continue;
        }
        points.push(parse_point_line(line, i + 1)?);
    }
    if points.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: "no points in input".into(),
        });
    }
    Ok(points)
}

pub fn format_points<'a, I>(points: I) -> String
where
    I: IntoIterator<Item = &'a ExactPoint>,
{
    let mut out = String::new();
    for p in points {
        let _ = writeln!(out, "{} {}", format_rational(&p.x), format_rational(&p.y));
    }
    out
}

pub fn write_points<'a, I>(path: &Path, header: &str, points: I) -> Result<()>
where
    I: IntoIterator<Item = &'a ExactPoint>,
{
    let mut text = String::new();
    for line in header.lines() {
        let _ = writeln!(text, "# {line}");
    }
    text.push_str(&format_points(points));
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn parse_graph(text: &str) -> Result<PlaneGraph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut in_edges = false;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if is_comment(line) {
            continue;
        }
        if line.trim().is_empty() {
            if !vertices.is_empty() {
                in_edges = true;
            }
            continue;
        }
        if !in_edges {
            vertices.push(parse_point_line(line, lineno)?);
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed: Vec<usize> = fields
            .iter()
            .map(|f| f.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse {
                line: lineno,
                message: format!("bad vertex index: {e}"),
            })?;
        let [u, v] = parsed[..] else {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected two vertex indices, found {}", fields.len()),
            });
        };
        edges.push((u, v, lineno));
    }
    if vertices.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: "no vertices in graph".into(),
        });
    }
    let mut g = PlaneGraph::new(vertices, std::iter::empty()).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    for (u, v, lineno) in edges {
        g.add_edge(u, v).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
    }
    Ok(g)
}

pub fn read_graph(path: &Path) -> Result<PlaneGraph> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

pub fn format_graph(g: &PlaneGraph) -> String {
    let mut out = format_points(g.vertices());
    out.push('\n');
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rational;
    use proptest::prelude::*;

    #[test]
    fn parses_decimals_fractions_comments() {
        let pts = parse_points("# square\n0 0\n1.5 -2/3\n\n  # indented comment\n.25 7\n").unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[1], ExactPoint::from_fractions(3, 2, -2, 3));
        assert_eq!(pts[2], ExactPoint::from_fractions(1, 4, 7, 1));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_points("0 0\n1 2 3\n"),
            Err(Error::Parse {
                line: 2,
                message: "expected two coordinates, found 3".into()
            })
        );
        assert!(matches!(
            parse_points("0 0\n\nx 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_points(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_points("# only\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn graph_round_trip() {
        let text = "0 0\n1 0\n1 1\n0 1\n\n0 1\n1 2\n2 3\n3 0\n0 2\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertices().len(), 4);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(
            parse_graph("0 0\n1 0\n\n0 5\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            parse_graph("0 0\n1 0\n\n0 1 2\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(parse_graph("\n\n"), Err(Error::Parse { .. })));
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1..i64::MAX).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    proptest! {
        #[test]
        fn point_text_round_trips(pts in prop::collection::vec((rational(), rational()), 1..20)) {
            let pts: Vec<ExactPoint> = pts.into_iter().map(|(x, y)| ExactPoint::new(x, y)).collect();
            let text = format_points(&pts);
            prop_assert_eq!(parse_points(&text).unwrap(), pts);
        }
    }
}
