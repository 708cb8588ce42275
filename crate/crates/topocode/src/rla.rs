//! Leaf-adding extensions of labelings and the leaf-addition counting formulas.
//!
//! Each algorithm takes a graph with a verified labeling, attaches new leaves
//! according to a [`LeafPlan`] and colors the result so that it passes the
//! verifier of the target family again.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::labeling::{verify_as, verify_matching, Kind, Labeling, LabelingError, MatchKind};

/// Search nodes allowed when placing harmonious leaf colors.
pub const HARMONIOUS_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RlaError {
    #[error("the plan adds no leaves")]
    EmptyPlan,
    #[error("plan has {got} counts but the graph has {expected} vertices")]
    PlanLength { expected: usize, got: usize },
    #[error("expected a `{expected}` labeling, got `{got}`")]
    WrongKind { expected: Kind, got: Kind },
    #[error("input is not a valid `{0}` labeling")]
    Rejected(Kind),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("edge order is not a permutation of the {0} added edges")]
    NotPermutation(usize),
    #[error("original edge colors collide under the enlarged modulus")]
    Collision,
    #[error("no leaf coloring found within the search budget")]
    NoAssignment,
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Number of new leaves hung on each vertex of the input graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafPlan {
    pub counts: Vec<usize>,
}

impl LeafPlan {
    pub fn new(counts: Vec<usize>) -> Self {
        LeafPlan { counts }
    }

    /// `m` leaves placed on uniformly random vertices of a `p`-vertex graph.
    pub fn random(p: usize, m: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = vec![0; p];
        if p > 0 {
            for _ in 0..m {
                counts[rng.gen_range(0..p)] += 1;
            }
        }
        LeafPlan { counts }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    fn check(&self, g: &Graph) -> Result<(), RlaError> {
        if self.counts.len() != g.vertex_count() {
            return Err(RlaError::PlanLength { expected: g.vertex_count(), got: self.counts.len() });
        }
        if self.total() == 0 {
            return Err(RlaError::EmptyPlan);
        }
        Ok(())
    }
}

/// A leaf-extended graph with its new labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub graph: Graph,
    pub labeling: Labeling,
}

/// Output of [`rla_e_image`]: a gracefully total coloring and its e-image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EImagePair {
    pub graph: Graph,
    pub g: Labeling,
    pub h: Labeling,
    /// Common value of `g(e) + h(e)` over all edges.
    pub constant: i64,
}

/// Output of [`rla_strongly_edge_magic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagicExtension {
    pub graph: Graph,
    pub labeling: Labeling,
    pub constant: i64,
}

/// The input graph grown by a plan, with each added leaf's center.
struct Grown {
    graph: Graph,
    p: usize,
    centers: Vec<usize>,
}

fn grow(g: &Graph, plan: &LeafPlan) -> Result<Grown, RlaError> {
    plan.check(g)?;
    let pairs: Vec<(usize, usize)> = plan.counts.iter().copied().enumerate().collect();
    let graph = g.add_leaves(&pairs)?;
    let centers = pairs.iter().flat_map(|&(v, c)| std::iter::repeat_n(v, c)).collect();
    Ok(Grown { graph, p: g.vertex_count(), centers })
}

fn expect_kind(l: &Labeling, allowed: &[Kind]) -> Result<(), RlaError> {
    if allowed.contains(&l.kind) {
        Ok(())
    } else {
        Err(RlaError::WrongKind { expected: allowed[0], got: l.kind })
    }
}

/// Sides (`false` = X) under which `l` passes as `kind`.
fn oriented(g: &Graph, l: &Labeling, kind: Kind) -> Result<Vec<bool>, RlaError> {
    let candidates = match &l.bipartition {
        Some(s) => vec![s.clone()],
        None => {
            let s = g.bipartition().ok_or(RlaError::NotBipartite)?;
            let flipped = s.iter().map(|b| !b).collect();
            vec![s, flipped]
        }
    };
    for sides in candidates {
        if verify_as(g, &l.clone().with_bipartition(sides.clone()), kind)?.accepted {
            return Ok(sides);
        }
    }
    Err(RlaError::Rejected(kind))
}

fn kd(l: &Labeling) -> (i64, i64) {
    (l.param("k").unwrap_or(0), l.param("d").unwrap_or(1))
}

/// Vertices of one side sorted by color, ties by index.
fn side_by_color(colors: &[i64], sides: &[bool], side: bool) -> Vec<usize> {
    let mut v: Vec<usize> = (0..sides.len()).filter(|&v| sides[v] == side).collect();
    v.sort_by_key(|&v| (colors[v], v));
    v
}

/// Added leaf indices grouped by center, centers taken in the given order.
fn leaves_of(grown: &Grown, order: &[usize]) -> Vec<usize> {
    order
        .iter()
        .flat_map(|&c| (0..grown.centers.len()).filter(move |&i| grown.centers[i] == c))
        .collect()
}

fn extended_sides(sides: &[bool], grown: &Grown) -> Vec<bool> {
    sides.iter().copied().chain(grown.centers.iter().map(|&c| !sides[c])).collect()
}

fn finish(g: &Graph, l: Labeling, kind: Kind) -> Result<Labeling, RlaError> {
    if verify_as(g, &l, kind)?.accepted {
        Ok(l)
    } else {
        Err(RlaError::Rejected(kind))
    }
}

/// Extend a set-ordered odd-graceful labeling to an odd-graceful labeling.
///
/// X colors are kept, Y colors move up by `2m`. Leaves on X get the odd edge
/// colors `1, 3, .., 2A-1` in increasing order of their centers; leaves on Y get
/// `2A+1, .., 2m-1` starting from the largest Y color.
pub fn rla_odd_graceful(g: &Graph, f: &Labeling, plan: &LeafPlan) -> Result<Extension, RlaError> {
    expect_kind(f, &[Kind::SetOrderedOddGraceful, Kind::OddGraceful])?;
    let sides = oriented(g, f, Kind::SetOrderedOddGraceful)?;
    let grown = grow(g, plan)?;
    let m = grown.centers.len() as i64;
    let mut color = f.vertex.clone();
    for (v, c) in color.iter_mut().enumerate() {
        if sides[v] {
            *c += 2 * m;
        }
    }
    color.resize(grown.graph.vertex_count(), 0);
    let xs = side_by_color(&f.vertex, &sides, false);
    let mut ys = side_by_color(&f.vertex, &sides, true);
    ys.reverse();
    let mut edge = 1;
    for i in leaves_of(&grown, &xs).into_iter().chain(leaves_of(&grown, &ys)) {
        let c = grown.centers[i];
        color[grown.p + i] = if sides[c] { color[c] - edge } else { color[c] + edge };
        edge += 2;
    }
    let out = Labeling::new(Kind::OddGraceful, color).with_bipartition(extended_sides(&sides, &grown));
    let labeling = finish(&grown.graph, out, Kind::OddGraceful)?;
    Ok(Extension { graph: grown.graph, labeling })
}

/// Edge residues (as multiples of `step`) of the original edges, which must stay distinct.
fn used_residues(
    g: &Graph,
    color: &[i64],
    k: i64,
    step: i64,
    modulus: i64,
) -> Result<BTreeSet<i64>, RlaError> {
    let mut used = BTreeSet::new();
    for &(u, v) in g.edges() {
        let r = (color[u] + color[v] - k).rem_euclid(modulus);
        if r % step != 0 || !used.insert(r / step) {
            return Err(RlaError::Collision);
        }
    }
    Ok(used)
}

/// Center order for the residue-filling extensions: Y by decreasing color, then X likewise.
fn descending_centers(colors: &[i64], sides: &[bool]) -> Vec<usize> {
    let mut ys = side_by_color(colors, sides, true);
    let mut xs = side_by_color(colors, sides, false);
    ys.reverse();
    xs.reverse();
    ys.into_iter().chain(xs).collect()
}

/// Extend a (k,d)-harmonious labeling.
///
/// The side holding the smallest color keeps its colors and the other side moves
/// up by `md`. New edges take the edge residues left free under modulus `(q+m)d`;
/// leaf colors are then solved from the residue equation, backtracking when two
/// leaves would share a color. If that fails, other shifts of the two sides are
/// tried in turn.
pub fn rla_kd_harmonious(g: &Graph, f: &Labeling, plan: &LeafPlan) -> Result<Extension, RlaError> {
    expect_kind(f, &[Kind::KdHarmonious])?;
    if !verify_as(g, f, Kind::KdHarmonious)?.accepted {
        return Err(RlaError::Rejected(Kind::KdHarmonious));
    }
    let (k, d) = kd(f);
    let mut sides = g.bipartition().ok_or(RlaError::NotBipartite)?;
    if let Some(low) = (0..sides.len()).min_by_key(|&v| (f.vertex[v], v)) {
        if sides[low] {
            sides.iter_mut().for_each(|s| *s = !*s);
        }
    }
    let grown = grow(g, plan)?;
    let m = grown.centers.len() as i64;
    let q2 = (g.edge_count() as i64) + m;
    let modulus = q2 * d;
    let top = k + (q2 - 1) * d;
    let order = leaves_of(&grown, &descending_centers(&f.vertex, &sides));
    let mut nodes = 0;
    let mut found = None;
    let mut collided = false;
    // Y up by md first, then every other pair of side shifts that stays in range.
    let room = |side: bool| {
        let high = f.vertex.iter().zip(&sides).filter(|&(_, &y)| y == side).map(|(&c, _)| c).max();
        (top - high.unwrap_or(top)) / d
    };
    let mut shifts = vec![(0, m)];
    for sx in 0..=room(false) {
        shifts.extend((0..=room(true)).map(|sy| (sx, sy)).filter(|&p| p != (0, m)));
    }
    for (sx, sy) in shifts {
        let color: Vec<i64> =
            f.vertex.iter().zip(&sides).map(|(&c, &y)| c + if y { sy } else { sx } * d).collect();
        let taken: BTreeSet<i64> = color.iter().copied().collect();
        if taken.len() != color.len() {
            continue;
        }
        let Ok(used) = used_residues(g, &color, k, d, modulus) else {
            collided = true;
            continue;
        };
        let free: Vec<i64> = (0..q2).filter(|r| !used.contains(r)).collect();
        let centers: Vec<i64> = order.iter().map(|&i| color[grown.centers[i]]).collect();
        let mut search = Harmonious {
            k,
            d,
            modulus,
            top,
            free: &free,
            centers: &centers,
            left: vec![true; free.len()],
            taken,
            picked: Vec::new(),
            nodes,
        };
        let ok = search.run();
        nodes = search.nodes;
        if ok {
            found = Some((color, search.picked));
            break;
        }
        if nodes > HARMONIOUS_BUDGET {
            break;
        }
    }
    let Some((mut color, picked)) = found else {
        return Err(if collided { RlaError::Collision } else { RlaError::NoAssignment });
    };
    color.resize(grown.graph.vertex_count(), 0);
    for (slot, &i) in order.iter().enumerate() {
        color[grown.p + i] = picked[slot];
    }
    let out = Labeling::new(Kind::KdHarmonious, color).with_params(&f.params);
    let labeling = finish(&grown.graph, out, Kind::KdHarmonious)?;
    Ok(Extension { graph: grown.graph, labeling })
}

struct Harmonious<'a> {
    k: i64,
    d: i64,
    modulus: i64,
    top: i64,
    free: &'a [i64],
    centers: &'a [i64],
    left: Vec<bool>,
    taken: BTreeSet<i64>,
    picked: Vec<i64>,
    nodes: u64,
}

impl Harmonious<'_> {
    fn run(&mut self) -> bool {
        let slot = self.picked.len();
        if slot == self.centers.len() {
            return true;
        }
        for j in 0..self.free.len() {
            if !self.left[j] {
                continue;
            }
            let base = (self.free[j] * self.d + self.k - self.centers[slot]).rem_euclid(self.modulus);
            for leaf in [base, base + self.modulus] {
                self.nodes += 1;
                if self.nodes > HARMONIOUS_BUDGET {
                    return false;
                }
                if leaf > self.top || self.taken.contains(&leaf) {
                    continue;
                }
                self.left[j] = false;
                self.taken.insert(leaf);
                self.picked.push(leaf);
                if self.run() {
                    return true;
                }
                self.picked.pop();
                self.taken.remove(&leaf);
                self.left[j] = true;
            }
        }
        false
    }
}

/// Extend a (k,d)-elegant labeling.
///
/// All colors are kept. Writing X colors as `i*d` and Y colors as `k + j*d`, the
/// free indices of `i + j (mod q+m)` go to the new edges, Y centers first.
pub fn rla_kd_elegant(g: &Graph, f: &Labeling, plan: &LeafPlan) -> Result<Extension, RlaError> {
    expect_kind(f, &[Kind::KdElegant])?;
    let sides = oriented(g, f, Kind::KdElegant)?;
    let (k, d) = kd(f);
    let grown = grow(g, plan)?;
    let q2 = (g.edge_count() + grown.centers.len()) as i64;
    let index = |v: usize| if sides[v] { (f.vertex[v] - k) / d } else { f.vertex[v] / d };
    let indices: Vec<i64> = (0..sides.len()).map(index).collect();
    let used = used_residues(g, &indices, 0, 1, q2)?;
    let free = (0..q2).filter(|r| !used.contains(r));
    let order = leaves_of(&grown, &descending_centers(&f.vertex, &sides));
    let mut color = f.vertex.clone();
    color.resize(grown.graph.vertex_count(), 0);
    for (&i, r) in order.iter().zip(free) {
        let c = grown.centers[i];
        let leaf = (r - indices[c]).rem_euclid(q2);
        color[grown.p + i] = if sides[c] { leaf * d } else { k + leaf * d };
    }
    let out = Labeling::new(Kind::KdElegant, color)
        .with_params(&f.params)
        .with_bipartition(extended_sides(&sides, &grown));
    let labeling = finish(&grown.graph, out, Kind::KdElegant)?;
    Ok(Extension { graph: grown.graph, labeling })
}

/// Extend a (k,d)-gracefully total coloring.
///
/// Y colors and original edge colors move up by `md`. The added edges, numbered
/// in leaf order, receive `k, k+d, .., k+(m-1)d` in the order given by `perm`;
/// `None` keeps leaf order.
pub fn rla_kd_graceful_total(
    g: &Graph,
    h: &Labeling,
    plan: &LeafPlan,
    perm: Option<&[usize]>,
) -> Result<Extension, RlaError> {
    expect_kind(h, &[Kind::KdGracefullyTotal])?;
    let (sides, grown, color) = graceful_total(g, h, plan, perm)?;
    let out = Labeling::new(Kind::KdGracefullyTotal, color).with_params(&h.params).with_bipartition(sides);
    let labeling = finish(&grown.graph, out, Kind::KdGracefullyTotal)?;
    Ok(Extension { graph: grown.graph, labeling })
}

fn graceful_total(
    g: &Graph,
    h: &Labeling,
    plan: &LeafPlan,
    perm: Option<&[usize]>,
) -> Result<(Vec<bool>, Grown, Vec<i64>), RlaError> {
    let sides = oriented(g, h, Kind::KdGracefullyTotal)?;
    let (k, d) = kd(h);
    let grown = grow(g, plan)?;
    let m = grown.centers.len();
    let rank: Vec<usize> = match perm {
        None => (0..m).collect(),
        Some(p) => {
            let mut rank = vec![usize::MAX; m];
            if p.len() != m {
                return Err(RlaError::NotPermutation(m));
            }
            for (r, &e) in p.iter().enumerate() {
                if e >= m || rank[e] != usize::MAX {
                    return Err(RlaError::NotPermutation(m));
                }
                rank[e] = r;
            }
            rank
        }
    };
    let mut color: Vec<i64> = h
        .vertex
        .iter()
        .zip(&sides)
        .map(|(&c, &y)| if y { c + m as i64 * d } else { c })
        .collect();
    color.resize(grown.graph.vertex_count(), 0);
    for (i, &c) in grown.centers.iter().enumerate() {
        let edge = k + rank[i] as i64 * d;
        color[grown.p + i] = if sides[c] { color[c] - edge } else { color[c] + edge };
    }
    Ok((extended_sides(&sides, &grown), grown, color))
}

fn spread(color: &[i64], sides: &[bool], side: bool) -> i64 {
    let vals = color.iter().zip(sides).filter(|&(_, &s)| s == side).map(|(&c, _)| c);
    vals.clone().max().unwrap_or(0) + vals.min().unwrap_or(0)
}

/// Extend a (k,d)-gracefully total coloring and pair it with its e-image `h`,
/// where `h` reflects each side about its own color range.
pub fn rla_e_image(g: &Graph, g0: &Labeling, plan: &LeafPlan) -> Result<EImagePair, RlaError> {
    let ext = rla_kd_graceful_total(g, g0, plan, None)?;
    let sides = ext.labeling.bipartition.clone().unwrap_or_default();
    let color = &ext.labeling.vertex;
    let (sx, sy) = (spread(color, &sides, false), spread(color, &sides, true));
    let image: Vec<i64> =
        color.iter().zip(&sides).map(|(&c, &y)| if y { sy - c } else { sx - c }).collect();
    let edges: Vec<i64> = ext.graph.edges().iter().map(|&(u, v)| {
        let (x, y) = if sides[u] { (v, u) } else { (u, v) };
        image[y] - image[x]
    }).collect();
    let h = Labeling::new(Kind::KdGracefullyEImage, image)
        .with_params(&g0.params)
        .with_bipartition(sides)
        .with_edge_colors(&ext.graph, &edges);
    let constant = sy - sx;
    let report = verify_matching(&ext.graph, &ext.labeling, &ext.graph, &h, MatchKind::EImage(Some(constant)))?;
    if !report.accepted {
        return Err(RlaError::Rejected(Kind::KdGracefullyEImage));
    }
    Ok(EImagePair { graph: ext.graph, g: ext.labeling, h, constant })
}

/// Extend a (k,d)-gracefully total coloring into a strongly edge-magic
/// (k,d)-total coloring by reflecting the X colors and the edge colors.
pub fn rla_strongly_edge_magic(
    g: &Graph,
    g0: &Labeling,
    plan: &LeafPlan,
) -> Result<MagicExtension, RlaError> {
    let ext = rla_kd_graceful_total(g, g0, plan, None)?;
    let sides = ext.labeling.bipartition.clone().unwrap_or_default();
    let total = ext.labeling.total_colors(&ext.graph)?;
    let sx = spread(&ext.labeling.vertex, &sides, false);
    let se = total.iter().max().unwrap_or(&0) + total.iter().min().unwrap_or(&0);
    let alpha: Vec<i64> =
        ext.labeling.vertex.iter().zip(&sides).map(|(&c, &y)| if y { c } else { sx - c }).collect();
    let edges: Vec<i64> = total.iter().map(|&e| se - e).collect();
    let constant = sx + se;
    let out = Labeling::new(Kind::StronglyEdgeMagicKdTotal, alpha)
        .with_params(&g0.params)
        .with_param("magic", constant)
        .with_bipartition(sides)
        .with_edge_colors(&ext.graph, &edges);
    let labeling = finish(&ext.graph, out, Kind::StronglyEdgeMagicKdTotal)?;
    Ok(MagicExtension { graph: ext.graph, labeling, constant })
}

/// Partitions of `m` into parts of size at most `k`.
pub fn partition_count(m: usize, k: usize) -> BigUint {
    // table[j] holds A(j, parts) while parts grows to k.
    let mut table = vec![BigUint::zero(); m + 1];
    table[0] = BigUint::one();
    for part in 1..=k.min(m) {
        for j in part..=m {
            let add = table[j - part].clone();
            table[j] += add;
        }
    }
    table[m].clone()
}

/// Partitions of `m` into exactly `k` parts.
pub fn exact_partition_count(m: usize, k: usize) -> BigUint {
    if k == 0 {
        return if m == 0 { BigUint::one() } else { BigUint::zero() };
    }
    partition_count(m, k) - partition_count(m, k - 1)
}

/// `sum_{k=1}^{m} p!/(p-k)! * P(m,k) * k!`, with terms for `k > p` taken as 0.
pub fn leaf_addition_count(p: usize, m: usize) -> BigUint {
    let mut total = BigUint::zero();
    let mut falling = BigUint::one();
    let mut fact = BigUint::one();
    for k in 1..=m {
        if k > p {
            break;
        }
        falling *= BigUint::from(p - k + 1);
        fact *= BigUint::from(k);
        total += &falling * exact_partition_count(m, k) * &fact;
    }
    total
}
