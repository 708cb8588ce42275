//! Every-zero graphic groups: shifted colorings of one host graph under
//! `f_i + f_j - f_k = f_(i+j-k)`, and the shift orbits of colored spanning trees of `K_n`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{DegreeSequence, Graph, GraphError};
use crate::labeling::{EdgeRule, VerificationReport, Violation, Witness};
use crate::topcode::{TopcodeError, TopcodeMatrix};

/// Largest `n` accepted by [`classify_spanning_tree_groups`].
pub const CLASSIFY_MAX_N: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("modulus must be at least 1, got {0}")]
    Modulus(i64),
    #[error("base coloring has {got} colors but the graph has {expected} vertices")]
    VertexCount { expected: usize, got: usize },
    #[error("element index {index} is outside 0..{size}")]
    Index { index: usize, size: usize },
    #[error("n = {0} is outside 1..={max}", max = CLASSIFY_MAX_N)]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Topcode(#[from] TopcodeError),
}

/// Shift `c` by `r` inside the color range `1..=m`.
pub fn shift_color(c: i64, r: i64, m: i64) -> i64 {
    (c - 1 + r).rem_euclid(m) + 1
}

/// One group element: the host graph recolored by a shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Element {
    pub shift: usize,
    pub vertex: Vec<i64>,
    pub edges: Vec<i64>,
}

impl Element {
    /// Colored edges as sorted color pairs, the identity of the colored graph.
    pub fn colored_edges(&self, g: &Graph) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (self.vertex[u], self.vertex[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphicGroup {
    pub host: Graph,
    pub base: Vec<i64>,
    pub modulus: i64,
    pub rule: EdgeRule,
    elements: Vec<Element>,
}

pub fn build_group(g: &Graph, f1: &[i64], modulus: i64, rule: EdgeRule) -> Result<GraphicGroup, GroupError> {
    if modulus < 1 {
        return Err(GroupError::Modulus(modulus));
    }
    if f1.len() != g.vertex_count() {
        return Err(GroupError::VertexCount { expected: g.vertex_count(), got: f1.len() });
    }
    let elements = (0..modulus)
        .map(|r| {
            let vertex: Vec<i64> = f1.iter().map(|&c| shift_color(c, r, modulus)).collect();
            let edges = g.edges().iter().map(|&(u, v)| rule.apply(vertex[u], vertex[v])).collect();
            Element { shift: r as usize, vertex, edges }
        })
        .collect();
    Ok(GraphicGroup { host: g.clone(), base: f1.to_vec(), modulus, rule, elements })
}

impl GraphicGroup {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> Result<&Element, GroupError> {
        self.elements.get(index).ok_or(GroupError::Index { index, size: self.size() })
    }

    /// Topcode-matrix of an element, one column `(f(u), f(uv), f(v))` per host edge.
    pub fn matrix(&self, index: usize) -> Result<TopcodeMatrix, GroupError> {
        let el = self.element(index)?;
        let cols: Vec<_> = self
            .host
            .edges()
            .iter()
            .zip(&el.edges)
            .map(|(&(u, v), &e)| (el.vertex[u], e, el.vertex[v]))
            .collect();
        Ok(TopcodeMatrix::from_columns(&cols)?.with_rule(self.rule)?)
    }

    /// `i + j - k (mod M)`, with `k` acting as the zero.
    pub fn add(&self, i: usize, j: usize, zero: usize) -> Result<usize, GroupError> {
        for x in [i, j, zero] {
            self.element(x)?;
        }
        let m = self.modulus;
        Ok((i as i64 + j as i64 - zero as i64).rem_euclid(m) as usize)
    }

    /// The element whose vertex colors are `f_i + f_j - f_k` at every vertex, if exactly one is.
    pub fn add_elementwise(&self, i: usize, j: usize, zero: usize) -> Result<Option<usize>, GroupError> {
        let (a, b, z) = (self.element(i)?, self.element(j)?, self.element(zero)?);
        let m = self.modulus;
        let target: Vec<i64> =
            (0..a.vertex.len()).map(|x| shift_color(a.vertex[x] + b.vertex[x] - z.vertex[x], 0, m)).collect();
        let mut hits = self.elements.iter().filter(|e| e.vertex == target);
        let first = hits.next().map(|e| e.shift);
        Ok(if hits.next().is_some() { None } else { first })
    }

    /// Check zero, inverse, closure with uniqueness and associativity for every
    /// choice of zero, all through the elementwise sum.
    pub fn verify_group_laws(&self) -> VerificationReport {
        let n = self.size();
        let mut violations = Vec::new();
        let mut fail = |clause: &str, value: usize| {
            violations.push(Violation { clause: clause.into(), witness: Witness::Value(value as i64) })
        };
        for k in 0..n {
            let mut table = vec![vec![None; n]; n];
            for i in 0..n {
                for j in 0..n {
                    table[i][j] = self.add_elementwise(i, j, k).ok().flatten();
                    if table[i][j].is_none() {
                        fail("closure", i);
                    }
                }
            }
            for i in 0..n {
                if table[i][k] != Some(i) || table[k][i] != Some(i) {
                    fail("zero", i);
                }
                if !(0..n).any(|j| table[i][j] == Some(k)) {
                    fail("inverse", i);
                }
            }
            for i in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let left = table[i][j].and_then(|ij| table[ij][l]);
                        let right = table[j][l].and_then(|jl| table[i][jl]);
                        if left.is_none() || left != right {
                            fail("associative", i);
                        }
                    }
                }
            }
        }
        VerificationReport { accepted: violations.is_empty(), violations }
    }
}

/// One shift orbit of colored spanning trees of `K_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeOrbit {
    /// Degree sequence of the trees in the orbit.
    pub shape: DegreeSequence,
    /// Distinct colored trees, as edge lists over colors `1..=n`, smallest first.
    pub members: Vec<Vec<(i64, i64)>>,
    /// Member index reached by each shift `r = 0..n` of the first member.
    pub family: Vec<usize>,
}

impl TreeOrbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Spanning trees of `K_n` with vertex `i` colored `i + 1`, grouped into orbits
/// under adding `r (mod n)` to every color.
pub fn classify_spanning_tree_groups(n: usize) -> Result<Vec<TreeOrbit>, GroupError> {
    if n == 0 || n > CLASSIFY_MAX_N {
        return Err(GroupError::TooLarge(n));
    }
    let m = n as i64;
    let colors: Vec<i64> = (1..=m).collect();
    let trees: BTreeSet<Vec<(i64, i64)>> = Graph::complete(n)
        .spanning_tree_enumerate()?
        .iter()
        .map(|t| Element { shift: 0, vertex: colors.clone(), edges: Vec::new() }.colored_edges(t))
        .collect();
    let shifted = |tree: &[(i64, i64)], r: i64| {
        let mut out: Vec<(i64, i64)> = tree
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (shift_color(a, r, m), shift_color(b, r, m));
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    };
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for tree in &trees {
        if seen.contains(tree) {
            continue;
        }
        let images: Vec<Vec<(i64, i64)>> = (0..m).map(|r| shifted(tree, r)).collect();
        let members: Vec<Vec<(i64, i64)>> = images.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let position: BTreeMap<&Vec<(i64, i64)>, usize> = members.iter().zip(0..).collect();
        let family = images.iter().map(|t| position[t]).collect();
        let mut degrees = vec![0; n];
        for &(a, b) in tree {
            degrees[(a - 1) as usize] += 1;
            degrees[(b - 1) as usize] += 1;
        }
        seen.extend(members.iter().cloned());
        orbits.push(TreeOrbit { shape: DegreeSequence::new(degrees), members, family });
    }
    Ok(orbits)
}
