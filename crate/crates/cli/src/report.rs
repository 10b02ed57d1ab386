//! Report types emitted by the subcommands. Every report is written as JSON
//! with exact numbers in string form and reads back with the same types.

use serde::{Deserialize, Serialize};

use maghom::euclid::{CaratheodoryCertificate, PointSet};
use maghom::homology::{EulerReport, HomologyTable, KyReport};
use maghom::shape2d::{BoundaryCurve, CoreDescription, RigidMotion2D};
use maghom::ExactLength;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyCount {
    pub distance: ExactLength,
    /// Unordered adjacent pairs at this distance.
    pub pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum AnalyzeReport {
    Finite {
        points: usize,
        aligned: bool,
        /// `(a, b, x, y)`: `x, y ∈ [a, b]` but not ordered along it.
        geodetic_violation: Option<[String; 4]>,
        /// `(a, x, y, b)`.
        four_cut: Option<[String; 4]>,
        inner_boundary: Vec<String>,
        adjacency: Vec<AdjacencyCount>,
    },
    Shape {
        holes: usize,
        aligned: bool,
        inner_boundary: Vec<BoundaryCurve>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub table: HomologyTable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ky: Option<KyReport>,
    /// Why the thin-chain comparison was not run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ky_skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinBlock {
    pub n: usize,
    pub length: ExactLength,
    pub chains: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinReport {
    pub n_max: usize,
    pub l_max: Option<ExactLength>,
    pub blocks: Vec<ThinBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquivReport {
    Points {
        equivalent: bool,
        /// `X → Y` as an index table.
        f: Option<Vec<usize>>,
        /// `Y → X` as an index table.
        g: Option<Vec<usize>>,
        /// Both tables were re-checked to be distance-decreasing.
        lipschitz_verified: bool,
    },
    Shape {
        equivalent: bool,
        motion: Option<RigidMotion2D>,
    },
}

impl EquivReport {
    pub fn equivalent(&self) -> bool {
        match self {
            EquivReport::Points { equivalent, .. } | EquivReport::Shape { equivalent, .. } => *equivalent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoreReport {
    Points { core: PointSet },
    Shape { core: CoreDescription },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarathReport {
    pub point: Vec<String>,
    pub certificate: CaratheodoryCertificate,
    pub verified: bool,
}

pub type EulerCheckReport = EulerReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub seed: u64,
    pub samples: usize,
    pub n_max: usize,
    /// Chains whose extension is proper, so the face relations have content.
    pub face_relations_checked: usize,
    pub face_relation_failures: usize,
    /// Chains whose chosen point coincides with an entry (`φ = 0`).
    pub degenerate_extensions: usize,
    /// Chains already equal to their frame.
    pub adjacent_frames: usize,
    /// Failures of the homotopy identity for `f = g` on the inner boundary.
    pub identity_failures: usize,
}

impl PhiReport {
    pub fn ok(&self) -> bool {
        self.face_relation_failures == 0 && self.identity_failures == 0
    }
}
