//! Self-similar trees grown by replacing leaves with copies of a tree.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Largest tree any construction here may produce.
pub const SIZE_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("base graph is not a tree")]
    NotTree,
    #[error("base tree needs at least {0} vertices")]
    TooSmall(usize),
    #[error("root {0} is not a vertex of the base")]
    Root(usize),
    #[error("the base has no leaf other than the root")]
    NoLeaves,
    #[error("at least one iteration is required")]
    NoIterations,
    #[error("result would exceed {cap} vertices", cap = SIZE_CAP)]
    SizeCap,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfSimilarSpec {
    pub base: Graph,
    /// Root vertex, used by algorithm A only.
    pub root: Option<usize>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeCounts {
    pub vertices: usize,
    pub edges: usize,
    /// Closed-form vertex count, where one exists.
    pub closed_form: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfSimilar {
    pub graph: Graph,
    /// Image of the root in the final tree (algorithm A).
    pub root: Option<usize>,
    pub counts: SizeCounts,
}

fn leaves(g: &Graph) -> Vec<usize> {
    (0..g.vertex_count()).filter(|&v| g.degree(v) == 1).collect()
}

fn check_tree(g: &Graph, min: usize) -> Result<(), NetworkError> {
    if g.vertex_count() < min {
        return Err(NetworkError::TooSmall(min));
    }
    if !g.is_tree().is_tree {
        return Err(NetworkError::NotTree);
    }
    Ok(())
}

/// `v m^t + (v - 2m) (1 + m + .. + m^(t-1))`, or `None` on overflow or a negative value.
pub fn closed_form_vertices(v: usize, m: usize, t: usize) -> Option<u128> {
    let (v, m) = (v as i128, m as i128);
    let mut power: i128 = 1;
    let mut geometric: i128 = 0;
    for _ in 0..t {
        geometric = geometric.checked_add(power)?;
        power = power.checked_mul(m)?;
    }
    let total = v.checked_mul(power)?.checked_add((v - 2 * m).checked_mul(geometric)?)?;
    u128::try_from(total).ok()
}

/// Delete `removed` leaves of `base` and glue one copy of `piece` at each leaf's
/// neighbor, identifying `anchor` of the copy with that neighbor. Returns the new
/// tree and the positions of the kept base vertices.
fn replace_leaves(base: &Graph, removed: &[usize], piece: &Graph, anchor: usize) -> (Graph, Vec<Option<usize>>) {
    let mut gone = vec![false; base.vertex_count()];
    for &y in removed {
        gone[y] = true;
    }
    let mut remap = vec![None; base.vertex_count()];
    let mut next = 0;
    for v in 0..base.vertex_count() {
        if !gone[v] {
            remap[v] = Some(next);
            next += 1;
        }
    }
    let mut edges: Vec<(usize, usize)> = base
        .edges()
        .iter()
        .filter_map(|&(u, v)| Some((remap[u]?, remap[v]?)))
        .collect();
    for &y in removed {
        let at = remap[base.neighbors(y)[0]].expect("a removed leaf's neighbor is kept");
        let offset = next;
        let place = |w: usize| match w.cmp(&anchor) {
            std::cmp::Ordering::Equal => at,
            std::cmp::Ordering::Less => offset + w,
            std::cmp::Ordering::Greater => offset + w - 1,
        };
        edges.extend(piece.edges().iter().map(|&(u, v)| (place(u), place(v))));
        next += piece.vertex_count() - 1;
    }
    (Graph::new(next, edges).expect("gluing trees at single vertices"), remap)
}

fn guard(v: Option<u128>) -> Result<u128, NetworkError> {
    match v {
        Some(v) if v <= SIZE_CAP as u128 => Ok(v),
        _ => Err(NetworkError::SizeCap),
    }
}

fn counts(g: &Graph, closed_form: Option<u128>) -> SizeCounts {
    SizeCounts { vertices: g.vertex_count(), edges: g.edge_count(), closed_form }
}

/// Rooted growth: every non-root leaf of the base is deleted and a copy of the
/// previous tree is hung by its root on that leaf's neighbor.
pub fn leaf_algo_a(spec: &SelfSimilarSpec) -> Result<SelfSimilar, NetworkError> {
    let base = &spec.base;
    check_tree(base, 2)?;
    let root = spec.root.unwrap_or(0);
    if root >= base.vertex_count() {
        return Err(NetworkError::Root(root));
    }
    if spec.iterations == 0 {
        return Err(NetworkError::NoIterations);
    }
    let removed: Vec<usize> = leaves(base).into_iter().filter(|&v| v != root).collect();
    if removed.is_empty() {
        return Err(NetworkError::NoLeaves);
    }
    let expected = guard(closed_form_vertices(base.vertex_count(), removed.len(), spec.iterations))?;
    let (mut tree, mut tree_root) = (base.clone(), root);
    for _ in 0..spec.iterations {
        let (next, remap) = replace_leaves(base, &removed, &tree, tree_root);
        tree = next;
        tree_root = remap[root].expect("root is kept");
    }
    Ok(SelfSimilar { counts: counts(&tree, Some(expected)), graph: tree, root: Some(tree_root) })
}

/// Unrooted growth: every leaf of the base is deleted and a copy of the previous
/// tree is glued at its vertex 0 to that leaf's neighbor.
pub fn leaf_algo_b(spec: &SelfSimilarSpec) -> Result<SelfSimilar, NetworkError> {
    let base = &spec.base;
    check_tree(base, 3)?;
    if spec.iterations == 0 {
        return Err(NetworkError::NoIterations);
    }
    let removed = leaves(base);
    let expected = guard(closed_form_vertices(base.vertex_count(), removed.len(), spec.iterations))?;
    let mut tree = base.clone();
    for _ in 0..spec.iterations {
        tree = replace_leaves(base, &removed, &tree, 0).0;
    }
    Ok(SelfSimilar { counts: counts(&tree, Some(expected)), graph: tree, root: None })
}

/// Evolving growth: each step replaces every leaf of the current tree with a copy
/// of the current tree glued at its vertex 0.
pub fn leaf_algo_c(spec: &SelfSimilarSpec) -> Result<SelfSimilar, NetworkError> {
    check_tree(&spec.base, 3)?;
    if spec.iterations == 0 {
        return Err(NetworkError::NoIterations);
    }
    let mut tree = spec.base.clone();
    for _ in 0..spec.iterations {
        let removed = leaves(&tree);
        guard(closed_form_vertices(tree.vertex_count(), removed.len(), 1))?;
        tree = replace_leaves(&tree, &removed, &tree, 0).0;
    }
    Ok(SelfSimilar { counts: counts(&tree, None), graph: tree, root: None })
}
