//! Reading and writing inputs and reports.
//!
//! JSON documents are recognised by their `"type"` field:
//! `finite_metric`, `graph`, `points` and `shape2d`. Anything that is not a
//! JSON object is read as a CSV point cloud with one point per line. Every
//! number is exact: strings such as `"3/4"`, `"sqrt(2)"` or `"0.125"` are read
//! verbatim, and writers emit the same string forms.

use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::PointSet;
use crate::exact::{parse_rational, rational_points, ExactLength};
use crate::metspace::FiniteMetricSpace;
use crate::shape2d::{ConvexBody2D, Hole, Shape2D};

/// A parsed input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Finite(FiniteMetricSpace),
    Points(PointSet),
    Shape(Shape2D),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Finite(_) => "finite_metric",
            Input::Points(_) => "points",
            Input::Shape(_) => "shape2d",
        }
    }

    /// The finite metric space behind a finite input.
    pub fn metric_space(&self) -> Option<FiniteMetricSpace> {
        match self {
            Input::Finite(s) => Some(s.clone()),
            Input::Points(p) => Some(p.metric_space()),
            Input::Shape(_) => None,
        }
    }
}

#[derive(Deserialize)]
struct Header {
    #[serde(rename = "type")]
    kind: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricDoc {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    dist: Vec<Vec<ExactLength>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    #[serde(rename = "type")]
    _kind: String,
    vertices: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsDoc {
    #[serde(rename = "type")]
    kind: String,
    #[serde(with = "rational_points")]
    points: Vec<Vec<BigRational>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeDoc {
    #[serde(rename = "type")]
    kind: String,
    outer: ConvexBody2D,
    #[serde(default)]
    holes: Vec<Hole>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses a JSON document or, failing the leading `{`, a CSV point cloud.
pub fn parse_input(text: &str) -> Result<Input> {
    if text.trim_start().starts_with('{') {
        parse_json_input(text)
    } else {
        parse_csv_points(text).map(Input::Points)
    }
}

/// Parses a JSON input, dispatching on its `"type"` field.
pub fn parse_json_input(text: &str) -> Result<Input> {
    let header: Header = serde_json::from_str(text).map_err(json_error)?;
    match header.kind.as_str() {
        "finite_metric" => {
            let doc: MetricDoc = serde_json::from_str(text).map_err(json_error)?;
            let n = doc.dist.len();
            let labels = doc.labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
            FiniteMetricSpace::from_matrix(labels, doc.dist).map(Input::Finite)
        }
        "graph" => {
            let doc: GraphDoc = serde_json::from_str(text).map_err(json_error)?;
            FiniteMetricSpace::from_graph(doc.vertices, &doc.edges, doc.labels).map(Input::Finite)
        }
        "points" => {
            let doc: PointsDoc = serde_json::from_str(text).map_err(json_error)?;
            PointSet::new(doc.points).map(Input::Points)
        }
        "shape2d" => {
            let doc: ShapeDoc = serde_json::from_str(text).map_err(json_error)?;
            Shape2D::new(doc.outer, doc.holes).map(Input::Shape)
        }
        other => Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("unknown input type {other:?}"),
        }),
    }
}

/// Parses a CSV point cloud. Blank lines and `#` comments are skipped, and a
/// first row that does not parse as numbers is taken as a header.
pub fn parse_csv_points(text: &str) -> Result<PointSet> {
    let mut points = Vec::new();
    let mut seen_data = false;
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        let mut offset = 0;
        let mut failure = None;
        for field in line.split(',') {
            let column = offset + field.len() - field.trim_start().len() + 1;
            offset += field.len() + 1;
            match parse_rational(field.trim()) {
                Ok(q) => row.push(q),
                Err(e) => {
                    failure = Some(Error::Parse {
                        line: idx + 1,
                        column,
                        message: match e {
                            Error::Parse { message, .. } => message,
                            other => other.to_string(),
                        },
                    });
                    break;
                }
            }
        }
        match failure {
            Some(_) if !seen_data && points.is_empty() => {
                seen_data = true;
                continue;
            }
            Some(e) => return Err(e),
            None => {
                seen_data = true;
                points.push(row);
            }
        }
    }
    PointSet::new(points)
}

/// Reads and parses a file.
pub fn read_input(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}

/// The JSON document for a finite metric space.
pub fn finite_metric_json(space: &FiniteMetricSpace) -> String {
    to_json(&MetricDoc {
        kind: "finite_metric".into(),
        labels: Some(space.labels().to_vec()),
        dist: space.matrix().to_vec(),
    })
}

/// The JSON document for a point cloud.
pub fn points_json(points: &PointSet) -> String {
    to_json(&PointsDoc {
        kind: "points".into(),
        points: points.points.clone(),
    })
}

/// The JSON document for a shape.
pub fn shape_json(shape: &Shape2D) -> String {
    to_json(&ShapeDoc {
        kind: "shape2d".into(),
        outer: shape.outer.clone(),
        holes: shape.holes.clone(),
    })
}

/// The JSON document for any input.
pub fn input_json(input: &Input) -> String {
    match input {
        Input::Finite(s) => finite_metric_json(s),
        Input::Points(p) => points_json(p),
        Input::Shape(s) => shape_json(s),
    }
}

/// Pretty JSON with a trailing newline; field order follows the type, so
/// output is deterministic.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

/// Parses a report previously written by [`to_json`].
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(json_error)
}
