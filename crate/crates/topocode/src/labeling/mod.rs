//! Vertex, edge and total labelings of graphs.
//!
//! A [`Labeling`] stores one color per vertex and optionally one color per edge.
//! Kinds with an induced edge rule (graceful, felicitous, ...) may omit edge colors;
//! they are then derived from the vertex colors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

mod search;
mod transform;
mod verify;

pub use search::{search_labeling, SearchOutcome, SEARCHABLE};
pub use transform::{
    dual, equivalent_labeling, graceful_join, multi_dimension_compose, reciprocal_transform,
    set_dual_transform, totally_kd_sequential, DualScope, EdgeTreatment, JoinMode,
    MultiColoring, ReciprocalPart, SetDualVariant, EQUIVALENCE_TARGETS,
};
pub use verify::{verify, verify_as, verify_matching, MatchKind, VerificationReport, Violation, Witness};

pub type Params = BTreeMap<String, i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("unknown labeling kind `{0}`")]
    UnknownKind(String),
    #[error("kind `{kind}` requires parameter `{param}`")]
    MissingParam { kind: &'static str, param: &'static str },
    #[error("invalid parameter `{0}`: {1}")]
    InvalidParam(String, String),
    #[error("vertex {0} is not colored")]
    UncoloredVertex(usize),
    #[error("edge ({0}, {1}) is not colored")]
    UncoloredEdge(usize, usize),
    #[error("edge ({0}, {1}) is not in the graph")]
    UnknownEdge(usize, usize),
    #[error("labeling colors {got} vertices but the graph has {expected}")]
    VertexCount { expected: usize, got: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid labeling json: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

macro_rules! kinds {
    ($($variant:ident => $tag:literal [$($param:literal),*]),* $(,)?) => {
        /// Closed catalog of labeling and coloring families.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Kind {
            $($variant),*
        }

        impl Kind {
            pub const ALL: &'static [Kind] = &[$(Kind::$variant),*];

            pub fn tag(self) -> &'static str {
                match self {
                    $(Kind::$variant => $tag),*
                }
            }

            /// Parameters that must be present in [`Labeling::params`].
            pub fn required_params(self) -> &'static [&'static str] {
                match self {
                    $(Kind::$variant => &[$($param),*]),*
                }
            }
        }
    };
}

kinds! {
    Graceful => "graceful" [],
    SetOrderedGraceful => "set-ordered-graceful" [],
    StronglyGraceful => "strongly-graceful" [],
    SetOrderedStronglyGraceful => "set-ordered-strongly-graceful" [],
    OddGraceful => "odd-graceful" [],
    SetOrderedOddGraceful => "set-ordered-odd-graceful" [],
    StronglyOddGraceful => "strongly-odd-graceful" [],
    SetOrderedStronglyOddGraceful => "set-ordered-strongly-odd-graceful" [],
    EdgeMagicTotal => "edge-magic-total" [],
    SuperEdgeMagicTotal => "super-edge-magic-total" [],
    Felicitous => "felicitous" [],
    SuperFelicitous => "super-felicitous" [],
    OddElegant => "odd-elegant" [],
    KGraceful => "k-graceful" ["k"],
    EdgeMagicGraceful => "edge-magic-graceful" [],
    SuperEdgeMagicGraceful => "super-edge-magic-graceful" [],
    EdgeDifferenceTotal => "edge-difference-total" [],
    SuperEdgeDifferenceTotal => "super-edge-difference-total" [],
    PanEdgeMagicGraceful => "pan-edge-magic-graceful" [],
    PanEdgeDifferenceTotal => "pan-edge-difference-total" [],
    PanOddGraceful => "pan-odd-graceful" [],
    SixC => "6c" [],
    TotallyGraceful => "totally-graceful" [],
    SuperTotallyGraceful => "super-totally-graceful" [],
    SetOrderedTotallyGraceful => "set-ordered-totally-graceful" [],
    SuperSetOrderedTotallyGraceful => "super-set-ordered-totally-graceful" [],
    KdGraceful => "kd-graceful" ["k", "d"],
    KdArithmetic => "kd-arithmetic" ["k", "d"],
    KdEdgeAntimagicTotal => "kd-edge-antimagic-total" ["k", "d"],
    SuperKdEdgeAntimagicTotal => "super-kd-edge-antimagic-total" ["k", "d"],
    KdHarmonious => "kd-harmonious" ["k", "d"],
    KdElegant => "kd-elegant" ["k", "d"],
    KdOddGraceful => "kd-odd-graceful" ["k", "d"],
    KdOddElegant => "kd-odd-elegant" ["k", "d"],
    OddElegantColoring => "odd-elegant-coloring" [],
    KdOddElegantColoring => "kd-odd-elegant-coloring" ["k", "d"],
    KdEdgeMagicTotal => "kd-edge-magic-total" ["k", "d"],
    KdGracefulDifference => "kd-graceful-difference" ["k", "d"],
    KdFelicitousDifference => "kd-felicitous-difference" ["k", "d"],
    KdGracefullyTotal => "kd-gracefully-total" ["k", "d"],
    KdStronglyGracefullyTotal => "kd-strongly-gracefully-total" ["k", "d"],
    KdOddGracefullyTotal => "kd-odd-gracefully-total" ["k", "d"],
    KdStronglyOddGracefullyTotal => "kd-strongly-odd-gracefully-total" ["k", "d"],
    KdEdgeAntimagicTotalColoring => "kd-edge-antimagic-total-coloring" ["k", "d", "a"],
    KdHarmoniousTotal => "kd-harmonious-total" ["k", "d"],
    KdOddElegantTotal => "kd-odd-elegant-total" ["k", "d"],
    StronglyEdgeMagicKdTotal => "strongly-edge-magic-kd-total" ["k", "d"],
    EdgeMagicKdTotal => "edge-magic-kd-total" ["k", "d"],
    StronglyEdgeDifferenceKdTotal => "strongly-edge-difference-kd-total" ["k", "d"],
    EdgeDifferenceKdTotal => "edge-difference-kd-total" ["k", "d"],
    StronglyFelicitousDifferenceKdTotal => "strongly-felicitous-difference-kd-total" ["k", "d"],
    FelicitousDifferenceKdTotal => "felicitous-difference-kd-total" ["k", "d"],
    StronglyGracefulDifferenceKdTotal => "strongly-graceful-difference-kd-total" ["k", "d"],
    GracefulDifferenceKdTotal => "graceful-difference-kd-total" ["k", "d"],
    GracefullyTotalColoring => "gracefully-total-coloring" [],
    SetOrderedGracefullyTotalColoring => "set-ordered-gracefully-total-coloring" [],
    GracefullyTotalSequence => "gracefully-total-sequence" [],
    ProperGracefullyTotalSequence => "proper-gracefully-total-sequence" [],
    EdgeMagicTotalColoring => "edge-magic-total-coloring" [],
    GracefulDifferenceTotalColoring => "graceful-difference-total-coloring" [],
    EdgeDifferenceTotalColoring => "edge-difference-total-coloring" [],
    FelicitousDifferenceTotalColoring => "felicitous-difference-total-coloring" [],
    ParamEdgeMagic => "parameterized-edge-magic" ["a", "b", "c"],
    ParamEdgeDifference => "parameterized-edge-difference" ["a", "b", "c"],
    ParamFelicitousDifference => "parameterized-felicitous-difference" ["a", "b", "c"],
    ParamGracefulDifference => "parameterized-graceful-difference" ["a", "b", "c"],
    KlEdgeDifferenceMagically => "kl-edge-difference-magically" ["k", "lambda"],
    SuperKlEdgeDifferenceMagically => "super-kl-edge-difference-magically" ["k", "lambda"],
    KlMagicTotal => "kl-magic-total" ["k"],
    TotallyKdSequential => "totally-kd-sequential" ["k", "d"],
    KdEdgeDifferenceMagically => "kd-edge-difference-magically" ["k", "d", "kstar", "lambda"],
    KdGracefullyEImage => "kd-gracefully-e-image" ["k", "d"],
}

impl Kind {
    pub fn from_tag(tag: &str) -> Result<Kind, LabelingError> {
        Kind::ALL
            .iter()
            .copied()
            .find(|k| k.tag() == tag)
            .ok_or_else(|| LabelingError::UnknownKind(tag.to_string()))
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Kind {
    type Err = LabelingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::from_tag(s)
    }
}

impl Serialize for Kind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for Kind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let tag = String::deserialize(d)?;
        Kind::from_tag(&tag).map_err(serde::de::Error::custom)
    }
}

/// How an edge color is computed from its two end colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRule {
    AbsDifference,
    ModSum(i64),
    PlainSum,
    Gcd,
    /// `offset + (a + b - offset) mod modulus`
    OffsetModSum { offset: i64, modulus: i64 },
    /// `(a + b - shift) mod modulus`
    ShiftedModSum { shift: i64, modulus: i64 },
    /// `k - d + |a - b|`
    Sequential { k: i64, d: i64 },
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl EdgeRule {
    pub fn apply(self, a: i64, b: i64) -> i64 {
        match self {
            EdgeRule::AbsDifference => (a - b).abs(),
            EdgeRule::ModSum(m) => (a + b).rem_euclid(m.max(1)),
            EdgeRule::PlainSum => a + b,
            EdgeRule::Gcd => gcd(a, b),
            EdgeRule::OffsetModSum { offset, modulus } => {
                offset + (a + b - offset).rem_euclid(modulus.max(1))
            }
            EdgeRule::ShiftedModSum { shift, modulus } => (a + b - shift).rem_euclid(modulus.max(1)),
            EdgeRule::Sequential { k, d } => k - d + (a - b).abs(),
        }
    }
}

impl fmt::Display for EdgeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EdgeRule::AbsDifference => write!(f, "abs-difference"),
            EdgeRule::ModSum(m) => write!(f, "mod-sum:{m}"),
            EdgeRule::PlainSum => write!(f, "plain-sum"),
            EdgeRule::Gcd => write!(f, "gcd"),
            EdgeRule::OffsetModSum { offset, modulus } => {
                write!(f, "offset-mod-sum:{offset},{modulus}")
            }
            EdgeRule::ShiftedModSum { shift, modulus } => {
                write!(f, "shifted-mod-sum:{shift},{modulus}")
            }
            EdgeRule::Sequential { k, d } => write!(f, "sequential:{k},{d}"),
        }
    }
}

impl FromStr for EdgeRule {
    type Err = LabelingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LabelingError::InvalidParam("rule".into(), s.to_string());
        let pair = |rest: &str| -> Result<(i64, i64), LabelingError> {
            let (a, b) = rest.split_once(',').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        };
        match s {
            "abs-difference" => return Ok(EdgeRule::AbsDifference),
            "plain-sum" => return Ok(EdgeRule::PlainSum),
            "gcd" => return Ok(EdgeRule::Gcd),
            _ => {}
        }
        if let Some(m) = s.strip_prefix("mod-sum:") {
            let m: i64 = m.parse().map_err(|_| bad())?;
            if m < 1 {
                return Err(bad());
            }
            return Ok(EdgeRule::ModSum(m));
        }
        if let Some(rest) = s.strip_prefix("offset-mod-sum:") {
            let (offset, modulus) = pair(rest)?;
            if modulus < 1 {
                return Err(bad());
            }
            return Ok(EdgeRule::OffsetModSum { offset, modulus });
        }
        if let Some(rest) = s.strip_prefix("shifted-mod-sum:") {
            let (shift, modulus) = pair(rest)?;
            if modulus < 1 {
                return Err(bad());
            }
            return Ok(EdgeRule::ShiftedModSum { shift, modulus });
        }
        if let Some(rest) = s.strip_prefix("sequential:") {
            let (k, d) = pair(rest)?;
            return Ok(EdgeRule::Sequential { k, d });
        }
        Err(bad())
    }
}

/// Color every edge of `g` from its end colors.
pub fn induce_edge_colors(
    g: &Graph,
    vertex: &[Option<i64>],
    rule: EdgeRule,
) -> Result<Vec<i64>, LabelingError> {
    if vertex.len() != g.vertex_count() {
        return Err(LabelingError::VertexCount { expected: g.vertex_count(), got: vertex.len() });
    }
    if let Some(v) = vertex.iter().position(Option::is_none) {
        return Err(LabelingError::UncoloredVertex(v));
    }
    Ok(g.edges()
        .iter()
        .map(|&(u, v)| rule.apply(vertex[u].unwrap(), vertex[v].unwrap()))
        .collect())
}

/// A coloring of a graph tagged with the family it claims to belong to.
///
/// `bipartition[v]` is `true` for vertices on the `Y` side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub kind: Kind,
    pub params: Params,
    pub sequences: BTreeMap<String, Vec<i64>>,
    pub vertex: Vec<i64>,
    pub edges: Vec<(usize, usize, i64)>,
    pub bipartition: Option<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct LabelingJson {
    kind: String,
    #[serde(default)]
    params: Params,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    sequences: BTreeMap<String, Vec<i64>>,
    vertex: Vec<i64>,
    #[serde(default)]
    edges: Vec<(usize, usize, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bipartition: Option<Vec<bool>>,
}

impl TryFrom<LabelingJson> for Labeling {
    type Error = LabelingError;
    fn try_from(j: LabelingJson) -> Result<Self, Self::Error> {
        Ok(Labeling {
            kind: Kind::from_tag(&j.kind)?,
            params: j.params,
            sequences: j.sequences,
            vertex: j.vertex,
            edges: j.edges.into_iter().map(|(u, v, c)| (u.min(v), u.max(v), c)).collect(),
            bipartition: j.bipartition,
        })
    }
}

impl Serialize for Labeling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LabelingJson {
            kind: self.kind.tag().to_string(),
            params: self.params.clone(),
            sequences: self.sequences.clone(),
            vertex: self.vertex.clone(),
            edges: self.edges.clone(),
            bipartition: self.bipartition.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Labeling {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = LabelingJson::deserialize(d)?;
        Labeling::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl Labeling {
    pub fn new(kind: Kind, vertex: Vec<i64>) -> Self {
        Labeling {
            kind,
            params: Params::new(),
            sequences: BTreeMap::new(),
            vertex,
            edges: Vec::new(),
            bipartition: None,
        }
    }

    pub fn with_param(mut self, name: &str, value: i64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn with_params(mut self, params: &Params) -> Self {
        self.params.extend(params.iter().map(|(k, v)| (k.clone(), *v)));
        self
    }

    pub fn with_sequence(mut self, name: &str, values: Vec<i64>) -> Self {
        self.sequences.insert(name.to_string(), values);
        self
    }

    /// Attach edge colors given in the graph's edge order.
    pub fn with_edge_colors(mut self, g: &Graph, colors: &[i64]) -> Self {
        self.edges = g.edges().iter().zip(colors).map(|(&(u, v), &c)| (u, v, c)).collect();
        self
    }

    pub fn with_bipartition(mut self, sides: Vec<bool>) -> Self {
        self.bipartition = Some(sides);
        self
    }

    pub fn param(&self, name: &str) -> Option<i64> {
        self.params.get(name).copied()
    }

    pub fn from_json(text: &str) -> Result<Labeling, LabelingError> {
        let j: LabelingJson =
            serde_json::from_str(text).map_err(|e| LabelingError::Json(e.to_string()))?;
        Labeling::try_from(j)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("labeling serializes")
    }

    /// Stored edge colors aligned with `g.edges()`.
    pub fn edge_colors(&self, g: &Graph) -> Result<Vec<Option<i64>>, LabelingError> {
        let mut out = vec![None; g.edge_count()];
        for &(u, v, c) in &self.edges {
            let i = g.edge_index(u, v).ok_or(LabelingError::UnknownEdge(u, v))?;
            out[i] = Some(c);
        }
        Ok(out)
    }

    /// The kind's induced edge rule for a graph with `q` edges, if it has one.
    pub fn edge_rule(&self, q: usize) -> Option<EdgeRule> {
        verify::induced_rule(self.kind, self, q).ok().flatten()
    }

    /// Edge colors in edge order: stored ones, else those induced by the kind's rule.
    pub fn total_colors(&self, g: &Graph) -> Result<Vec<i64>, LabelingError> {
        self.check_shape(g)?;
        let stored = self.edge_colors(g)?;
        let rule = verify::induced_rule(self.kind, self, g.edge_count())?;
        stored
            .iter()
            .enumerate()
            .map(|(i, c)| match (c, rule) {
                (Some(c), _) => Ok(*c),
                (None, Some(r)) => {
                    let (u, v) = g.edges()[i];
                    Ok(r.apply(self.vertex[u], self.vertex[v]))
                }
                (None, None) => {
                    let (u, v) = g.edges()[i];
                    Err(LabelingError::UncoloredEdge(u, v))
                }
            })
            .collect()
    }

    pub(crate) fn check_shape(&self, g: &Graph) -> Result<(), LabelingError> {
        if self.vertex.len() != g.vertex_count() {
            return Err(LabelingError::VertexCount {
                expected: g.vertex_count(),
                got: self.vertex.len(),
            });
        }
        for &(u, v, _) in &self.edges {
            if !g.has_edge(u, v) {
                return Err(LabelingError::UnknownEdge(u, v));
            }
        }
        if let Some(b) = &self.bipartition {
            if b.len() != g.vertex_count() {
                return Err(LabelingError::InvalidParam(
                    "bipartition".into(),
                    format!("length {} for {} vertices", b.len(), g.vertex_count()),
                ));
            }
        }
        Ok(())
    }
}
