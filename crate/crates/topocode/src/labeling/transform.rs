use std::str::FromStr;

use serde::Serialize;

use super::verify::rule_for;
use super::{verify_as, Kind, Labeling, LabelingError, Params};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualScope {
    Vertex,
    Edge,
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetDualVariant {
    FDual,
    FStarDual,
    GSetXY,
    GStarSetXY,
    HSetX,
    HStarSetX,
    HSetY,
    HStarSetY,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReciprocalPart {
    X,
    Y,
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeTreatment {
    Keep,
    Complement,
    Recompute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinMode {
    Bridge,
    CoincideX,
    CoincideY,
    EdgeCoincide,
}

macro_rules! tagged {
    ($ty:ident { $($variant:ident => $tag:literal),* $(,)? }) => {
        impl $ty {
            pub const ALL: &'static [$ty] = &[$($ty::$variant),*];
            pub fn tag(self) -> &'static str {
                match self {
                    $($ty::$variant => $tag),*
                }
            }
        }

        impl FromStr for $ty {
            type Err = LabelingError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                $ty::ALL
                    .iter()
                    .copied()
                    .find(|v| v.tag() == s)
                    .ok_or_else(|| LabelingError::InvalidParam(stringify!($ty).into(), s.to_string()))
            }
        }
    };
}

tagged!(DualScope { Vertex => "vertex", Edge => "edge", Total => "total" });
tagged!(SetDualVariant {
    FDual => "f-dual",
    FStarDual => "f-star-dual",
    GSetXY => "g-set-xy",
    GStarSetXY => "g-star-set-xy",
    HSetX => "h-set-x",
    HStarSetX => "h-star-set-x",
    HSetY => "h-set-y",
    HStarSetY => "h-star-set-y",
});
tagged!(ReciprocalPart { X => "x", Y => "y", Total => "total" });
tagged!(EdgeTreatment { Keep => "keep", Complement => "complement", Recompute => "recompute" });
tagged!(JoinMode {
    Bridge => "bridge",
    CoincideX => "coincide-x",
    CoincideY => "coincide-y",
    EdgeCoincide => "edge-coincide",
});

fn mirror(values: &[i64]) -> impl Fn(i64) -> i64 {
    let hi = values.iter().copied().max().unwrap_or(0);
    let lo = values.iter().copied().min().unwrap_or(0);
    move |c| hi + lo - c
}

/// Replace each color in `scope` by `max + min - color` over that scope.
pub fn dual(g: &Graph, l: &Labeling, scope: DualScope) -> Result<Labeling, LabelingError> {
    l.check_shape(g)?;
    let mut out = l.clone();
    match scope {
        DualScope::Vertex => {
            let m = mirror(&l.vertex);
            out.vertex = l.vertex.iter().map(|&c| m(c)).collect();
        }
        DualScope::Edge => {
            let e = l.total_colors(g)?;
            let m = mirror(&e);
            let flipped: Vec<i64> = e.iter().map(|&c| m(c)).collect();
            out = out.with_edge_colors(g, &flipped);
        }
        DualScope::Total => {
            let e = l.total_colors(g)?;
            let all: Vec<i64> = l.vertex.iter().chain(&e).copied().collect();
            let m = mirror(&all);
            out.vertex = l.vertex.iter().map(|&c| m(c)).collect();
            let flipped: Vec<i64> = e.iter().map(|&c| m(c)).collect();
            out = out.with_edge_colors(g, &flipped);
        }
    }
    Ok(out)
}

/// A bipartition with every `X` color below every `Y` color, if one exists.
fn ordered_sides(g: &Graph, l: &Labeling) -> Option<Vec<bool>> {
    let sides = l.bipartition.clone().or_else(|| g.bipartition())?;
    if g.edges().iter().any(|&(u, v)| sides[u] == sides[v]) {
        return None;
    }
    let below = |s: &[bool]| {
        let max_x = (0..s.len()).filter(|&x| !s[x]).map(|x| l.vertex[x]).max();
        let min_y = (0..s.len()).filter(|&x| s[x]).map(|x| l.vertex[x]).min();
        match (max_x, min_y) {
            (Some(a), Some(b)) => a < b,
            _ => false,
        }
    };
    if below(&sides) {
        return Some(sides);
    }
    let flipped: Vec<bool> = sides.iter().map(|s| !s).collect();
    below(&flipped).then_some(flipped)
}

fn require(g: &Graph, l: &Labeling, kind: Kind) -> Result<(), LabelingError> {
    let r = verify_as(g, l, kind)?;
    if !r.accepted {
        let first = &r.violations[0];
        return Err(LabelingError::Precondition(format!(
            "input is not {kind}: {} at {}",
            first.clause, first.witness
        )));
    }
    Ok(())
}

fn checked(g: &Graph, l: Labeling) -> Result<Labeling, LabelingError> {
    require(g, &l, l.kind)?;
    Ok(l)
}

fn side_extremes(l: &Labeling, sides: &[bool], y: bool) -> (i64, i64) {
    let vals: Vec<i64> = (0..sides.len()).filter(|&x| sides[x] == y).map(|x| l.vertex[x]).collect();
    (*vals.iter().min().unwrap(), *vals.iter().max().unwrap())
}

/// Set-dual transforms of a set-ordered graceful labeling.
pub fn set_dual_transform(
    g: &Graph,
    l: &Labeling,
    variant: SetDualVariant,
) -> Result<Labeling, LabelingError> {
    require(g, l, Kind::SetOrderedGraceful)?;
    let sides = ordered_sides(g, l)
        .ok_or_else(|| LabelingError::Precondition("no set-ordered bipartition".into()))?;
    let q = g.edge_count() as i64;
    let e = l.total_colors(g)?;
    let (min_x, max_x) = side_extremes(l, &sides, false);
    let (min_y, max_y) = side_extremes(l, &sides, true);
    let map_vertices = |fx: &dyn Fn(i64) -> i64, fy: &dyn Fn(i64) -> i64| -> Vec<i64> {
        (0..sides.len()).map(|x| if sides[x] { fy(l.vertex[x]) } else { fx(l.vertex[x]) }).collect()
    };
    let complement: Vec<i64> = e.iter().map(|c| q + 1 - c).collect();
    let flipped: Vec<bool> = sides.iter().map(|s| !s).collect();
    let unit = |kind: Kind, vertex: Vec<i64>, edges: &[i64], sides: Vec<bool>| {
        Labeling::new(kind, vertex)
            .with_param("k", 1)
            .with_param("d", 1)
            .with_edge_colors(g, edges)
            .with_bipartition(sides)
    };
    let id = |c: i64| c;
    let out = match variant {
        SetDualVariant::FDual => {
            Labeling::new(Kind::SetOrderedGraceful, l.vertex.iter().map(|c| q - c).collect())
                .with_bipartition(flipped)
        }
        SetDualVariant::FStarDual => unit(
            Kind::StronglyEdgeDifferenceKdTotal,
            l.vertex.iter().map(|c| q - c).collect(),
            &complement,
            flipped,
        ),
        SetDualVariant::GSetXY => Labeling::new(
            Kind::SetOrderedGraceful,
            map_vertices(&|x| max_x + min_x - x, &|y| max_y + min_y - y),
        )
        .with_bipartition(sides.clone()),
        SetDualVariant::GStarSetXY => unit(
            Kind::StronglyGracefulDifferenceKdTotal,
            map_vertices(&|x| max_x + min_x - x, &|y| max_y + min_y - y),
            &complement,
            sides.clone(),
        ),
        SetDualVariant::HSetX => unit(
            Kind::StronglyFelicitousDifferenceKdTotal,
            map_vertices(&|x| max_x + min_x - x, &id),
            &e,
            sides.clone(),
        ),
        SetDualVariant::HStarSetX => unit(
            Kind::StronglyEdgeMagicKdTotal,
            map_vertices(&|x| max_x + min_x - x, &id),
            &complement,
            sides.clone(),
        ),
        SetDualVariant::HSetY => unit(
            Kind::StronglyEdgeMagicKdTotal,
            map_vertices(&id, &|y| max_y + min_y - y),
            &e,
            sides.clone(),
        ),
        SetDualVariant::HStarSetY => unit(
            Kind::StronglyFelicitousDifferenceKdTotal,
            map_vertices(&id, &|y| max_y + min_y - y),
            &complement,
            sides.clone(),
        ),
    };
    checked(g, out)
}

/// Reverse the order of vertex colors within `X`, within `Y` or overall.
pub fn reciprocal_transform(
    g: &Graph,
    l: &Labeling,
    part: ReciprocalPart,
    edges: EdgeTreatment,
) -> Result<Labeling, LabelingError> {
    l.check_shape(g)?;
    let mut seen = std::collections::BTreeSet::new();
    if !l.vertex.iter().all(|c| seen.insert(*c)) {
        return Err(LabelingError::Precondition("vertex colors must be distinct".into()));
    }
    let sides = ordered_sides(g, l)
        .ok_or_else(|| LabelingError::Precondition("no set-ordered bipartition".into()))?;
    let in_part = |x: usize| match part {
        ReciprocalPart::X => !sides[x],
        ReciprocalPart::Y => sides[x],
        ReciprocalPart::Total => true,
    };
    let members: Vec<usize> = (0..l.vertex.len()).filter(|&x| in_part(x)).collect();
    let mut sorted: Vec<i64> = members.iter().map(|&x| l.vertex[x]).collect();
    sorted.sort_unstable();
    let mut vertex = l.vertex.clone();
    for &x in &members {
        let rank = sorted.binary_search(&l.vertex[x]).unwrap();
        vertex[x] = sorted[sorted.len() - 1 - rank];
    }
    let mut out = Labeling { vertex, bipartition: Some(sides), ..l.clone() };
    out.edges.clear();
    match edges {
        EdgeTreatment::Keep => out = out.with_edge_colors(g, &l.total_colors(g)?),
        EdgeTreatment::Complement => {
            let e = l.total_colors(g)?;
            let m = mirror(&e);
            out = out.with_edge_colors(g, &e.iter().map(|&c| m(c)).collect::<Vec<_>>());
        }
        EdgeTreatment::Recompute => {
            let p = super::verify::resolve(l.kind, &l.params)?;
            let rule = rule_for(l.kind, &p, g.edge_count()).ok_or_else(|| {
                LabelingError::Precondition(format!("`{}` has no induced edge rule", l.kind))
            })?;
            let e: Vec<i64> =
                g.edges().iter().map(|&(u, v)| rule.apply(out.vertex[u], out.vertex[v])).collect();
            out = out.with_edge_colors(g, &e);
        }
    }
    Ok(out)
}

/// Targets reachable from a set-ordered graceful tree labeling.
pub const EQUIVALENCE_TARGETS: &[Kind] = &[
    Kind::KdGraceful,
    Kind::OddElegant,
    Kind::KdElegant,
    Kind::KdEdgeMagicTotal,
    Kind::KdGracefulDifference,
    Kind::KdFelicitousDifference,
    Kind::SuperEdgeMagicTotal,
];

/// Convert a set-ordered graceful tree labeling into `target`.
pub fn equivalent_labeling(
    t: &Graph,
    f: &Labeling,
    target: Kind,
    params: &Params,
) -> Result<Labeling, LabelingError> {
    if !EQUIVALENCE_TARGETS.contains(&target) {
        return Err(LabelingError::Unsupported(format!("equivalence target `{target}`")));
    }
    if !t.is_tree().is_tree {
        return Err(LabelingError::Precondition("graph is not a tree".into()));
    }
    require(t, f, Kind::SetOrderedGraceful)?;
    let sides = ordered_sides(t, f)
        .ok_or_else(|| LabelingError::Precondition("no set-ordered bipartition".into()))?;
    let base = Labeling::new(target, Vec::new()).with_params(params);
    let p = super::verify::resolve(target, &base.params)?;
    let (k, d) = (p.k, p.d);
    let (pv, q) = (t.vertex_count() as i64, t.edge_count() as i64);
    let (_, max_x) = side_extremes(f, &sides, false);
    let (min_y, _) = side_extremes(f, &sides, true);
    let s = max_x + 1;
    let map = |fx: &dyn Fn(i64) -> i64, fy: &dyn Fn(i64) -> i64| -> Vec<i64> {
        (0..sides.len()).map(|x| if sides[x] { fy(f.vertex[x]) } else { fx(f.vertex[x]) }).collect()
    };
    let e = f.total_colors(t)?;
    let edges_by = |h: &dyn Fn(i64) -> i64| -> Vec<i64> { e.iter().map(|&c| h(c)).collect() };
    let mut out = Labeling { bipartition: Some(sides.clone()), ..base };
    match target {
        Kind::KdGraceful => out.vertex = map(&|x| d * x, &|y| k + d * (y - 1)),
        Kind::OddElegant => out.vertex = map(&|x| 2 * (max_x - x), &|y| 2 * y - 1),
        Kind::KdElegant => out.vertex = map(&|x| d * (max_x - x), &|y| k + d * (y - 1)),
        Kind::KdEdgeMagicTotal => {
            out.vertex = map(&|x| d * (max_x - x), &|y| k + d * (y - 1));
            out = out.with_edge_colors(t, &edges_by(&|c| k + d * (q - c)));
        }
        Kind::KdGracefulDifference => {
            out.vertex = map(&|x| d * (max_x - x), &|y| k + d * (q - 1 + min_y - y));
            out = out.with_edge_colors(t, &edges_by(&|c| k + d * (q - c))).with_param("magic", 0);
        }
        Kind::KdFelicitousDifference => {
            out.vertex = map(&|x| d * (max_x - x), &|y| k + d * (y - 1));
            out = out.with_edge_colors(t, &edges_by(&|c| k + d * (c - 1))).with_param("magic", d * max_x);
        }
        Kind::SuperEdgeMagicTotal => {
            out.vertex = map(&|x| max_x - x + 1, &|y| y + 1);
            out = out
                .with_edge_colors(t, &edges_by(&|c| pv + q + 1 - c))
                .with_param("magic", s + 2 * pv + 1);
        }
        _ => unreachable!("checked against EQUIVALENCE_TARGETS"),
    }
    checked(t, out)
}

/// Join a set-ordered graceful `(G, f)` with a graceful `(T, g)` into one graceful graph.
///
/// Vertices of `T` follow those of `G` in the combined graph before any coincidence.
pub fn graceful_join(
    gg: &Graph,
    f: &Labeling,
    t: &Graph,
    g: &Labeling,
    mode: JoinMode,
) -> Result<(Graph, Labeling), LabelingError> {
    require(gg, f, Kind::SetOrderedGraceful)?;
    require(t, g, Kind::Graceful)?;
    let sides = ordered_sides(gg, f)
        .ok_or_else(|| LabelingError::Precondition("no set-ordered bipartition".into()))?;
    let pg = gg.vertex_count();
    let m = t.edge_count() as i64;
    let (_, max_x) = side_extremes(f, &sides, false);
    let (min_y, _) = side_extremes(f, &sides, true);
    let find = |l: &Labeling, pick: &dyn Fn(usize) -> bool, c: i64| {
        (0..l.vertex.len()).find(|&x| pick(x) && l.vertex[x] == c)
    };
    let xs = find(f, &|x| !sides[x], max_x).unwrap();
    let y1 = find(f, &|x| sides[x], min_y).unwrap();
    let anchor = |c: i64| {
        find(g, &|_| true, c)
            .map(|x| x + pg)
            .ok_or_else(|| LabelingError::Precondition(format!("T has no vertex colored {c}")))
    };
    let (w1, wp) = (anchor(0)?, anchor(m)?);
    let (shift_t, shift_y) = match mode {
        JoinMode::Bridge => (max_x + 1, m + 1),
        JoinMode::CoincideX => (max_x, m),
        JoinMode::CoincideY => (max_x + 1, m),
        JoinMode::EdgeCoincide => {
            if m < 1 {
                return Err(LabelingError::Precondition("edge coincidence needs an edge in T".into()));
            }
            (max_x, m - 1)
        }
    };
    let union = gg.disjoint_union(t);
    let mut h: Vec<i64> = (0..pg)
        .map(|x| if sides[x] { f.vertex[x] + shift_y } else { f.vertex[x] })
        .collect();
    h.extend(g.vertex.iter().map(|c| c + shift_t));
    let (graph, remap) = match mode {
        JoinMode::Bridge => {
            let mut edges = union.edges().to_vec();
            edges.push((xs, wp));
            (Graph::new(union.vertex_count(), edges)?, (0..union.vertex_count()).collect())
        }
        JoinMode::CoincideX => {
            let r = union.vertex_coincide(xs, w1)?;
            (r.graph, r.remap)
        }
        JoinMode::CoincideY => {
            let r = union.vertex_coincide(y1, wp)?;
            (r.graph, r.remap)
        }
        JoinMode::EdgeCoincide => {
            let r = union.edge_coincide((xs, y1), (w1, wp))?;
            (r.graph, r.remap)
        }
    };
    let mut colors = vec![0; graph.vertex_count()];
    for (old, &new) in remap.iter().enumerate() {
        colors[new] = h[old];
    }
    let out = checked(&graph, Labeling::new(Kind::Graceful, colors))?;
    Ok((graph, out))
}

/// Totally `(k,d)`-sequential labeling of a tree from a set-ordered graceful one:
/// vertices `k + 2d f(v)`, edges `k + (2f(e) - 1)d`.
pub fn totally_kd_sequential(
    t: &Graph,
    f: &Labeling,
    k: i64,
    d: i64,
) -> Result<Labeling, LabelingError> {
    if k < 1 || d < 1 {
        return Err(LabelingError::InvalidParam("k/d".into(), "must be at least 1".into()));
    }
    if !t.is_tree().is_tree {
        return Err(LabelingError::Precondition("graph is not a tree".into()));
    }
    require(t, f, Kind::SetOrderedGraceful)?;
    let e = f.total_colors(t)?;
    let out = Labeling::new(Kind::TotallyKdSequential, f.vertex.iter().map(|c| k + 2 * d * c).collect())
        .with_param("k", k)
        .with_param("d", d)
        .with_edge_colors(t, &e.iter().map(|c| k + (2 * c - 1) * d).collect::<Vec<_>>());
    checked(t, out)
}

/// Each element colored by the tuple of its colors across layers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiColoring {
    pub vertex: Vec<Vec<i64>>,
    pub edges: Vec<Vec<i64>>,
}

impl MultiColoring {
    pub fn dimension(&self) -> usize {
        self.vertex.first().or(self.edges.first()).map_or(0, Vec::len)
    }

    /// Layer `i` as a plain total labeling of `kind`.
    pub fn layer(&self, g: &Graph, i: usize, kind: Kind) -> Labeling {
        let e: Vec<i64> = self.edges.iter().map(|t| t[i]).collect();
        Labeling::new(kind, self.vertex.iter().map(|t| t[i]).collect()).with_edge_colors(g, &e)
    }

    /// Digit-string rendering of one element: layer colors joined by `sep`.
    pub fn render(tuple: &[i64], sep: &str) -> String {
        tuple.iter().map(i64::to_string).collect::<Vec<_>>().join(sep)
    }
}

pub fn multi_dimension_compose(g: &Graph, layers: &[Labeling]) -> Result<MultiColoring, LabelingError> {
    if layers.len() < 2 {
        return Err(LabelingError::Precondition("need at least two layers".into()));
    }
    let totals = layers.iter().map(|l| l.total_colors(g)).collect::<Result<Vec<_>, _>>()?;
    let vertex = (0..g.vertex_count()).map(|x| layers.iter().map(|l| l.vertex[x]).collect()).collect();
    let edges = (0..g.edge_count()).map(|i| totals.iter().map(|e| e[i]).collect()).collect();
    Ok(MultiColoring { vertex, edges })
}
