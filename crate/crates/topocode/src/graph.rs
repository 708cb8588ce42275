//! Simple undirected graphs and the structural operations on them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const ISOMORPHISM_LIMIT: usize = 10;
pub const ENUMERATION_LIMIT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(usize, usize),
    #[error("vertex {0} has degree {1}, at least 2 required")]
    DegreeTooSmall(usize, usize),
    #[error("invalid neighbour partition: {0}")]
    BadPartition(String),
    #[error("vertices {0} and {1} cannot be coincided: {2}")]
    CannotCoincide(usize, usize, String),
    #[error("graph has {0} vertices, limit is {1}")]
    TooLarge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Finite simple undirected graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    names: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    p: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            p: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            names: self.names.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let g = Graph::new(raw.p, raw.edges.iter().map(|e| (e[0], e[1])))
            .map_err(serde::de::Error::custom)?;
        match raw.names {
            Some(names) => g.with_names(names).map_err(serde::de::Error::custom),
            None => Ok(g),
        }
    }
}

/// Degrees sorted non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(degrees)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Result of an operation that changes the vertex set.
///
/// `remap[old]` is the index of the old vertex in the new graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Remapped {
    pub graph: Graph,
    pub remap: Vec<usize>,
}

/// Report from [`Graph::is_tree`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeReport {
    pub is_tree: bool,
    pub connected: bool,
    pub leaves: usize,
    /// `2 + sum over d >= 3 of (d - 2) * n_d`
    pub leaf_formula: i64,
    pub leaf_identity_holds: bool,
    pub order_identity_holds: bool,
}

fn canonical(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::VertexOutOfRange(w));
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = canonical(u, v);
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Graph { vertex_count, edges: set.into_iter().collect(), names: None })
    }

    pub fn empty(n: usize) -> Self {
        Graph { vertex_count: n, edges: Vec::new(), names: None }
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    /// Star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v)));
        Graph::new(a + b, edges).expect("complete bipartite graph is simple")
    }

    /// Disjoint union; vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.vertex_count;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::new(off + other.vertex_count, edges).expect("union of simple graphs")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GraphError> {
        if names.len() != self.vertex_count {
            return Err(GraphError::Parse(format!(
                "{} names for {} vertices",
                names.len(),
                self.vertex_count
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted pairs in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&canonical(u, v)).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&canonical(u, v)).ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new(self.degrees())
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count <= 1 || self.components().len() == 1
    }

    /// Two-colouring of a bipartite graph, `None` when an odd cycle exists.
    /// Each component's smallest vertex gets side `false`.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let adj = self.adjacency();
        let mut side: Vec<Option<bool>> = vec![None; self.vertex_count];
        for start in 0..self.vertex_count {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for &w in &adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            stack.push(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v))
        }
    }

    /// Replace `v` by two vertices: `v` keeps `part_a`, a new last vertex takes the rest.
    pub fn vertex_split(&self, v: usize, part_a: &[usize]) -> Result<Remapped, GraphError> {
        self.check_vertex(v)?;
        let nb = self.neighbors(v);
        if nb.len() < 2 {
            return Err(GraphError::DegreeTooSmall(v, nb.len()));
        }
        let a: BTreeSet<usize> = part_a.iter().copied().collect();
        if a.len() != part_a.len() {
            return Err(GraphError::BadPartition("repeated neighbour".into()));
        }
        if let Some(w) = a.iter().find(|w| !nb.contains(w)) {
            return Err(GraphError::BadPartition(format!("{w} is not a neighbour of {v}")));
        }
        if a.is_empty() || a.len() == nb.len() {
            return Err(GraphError::BadPartition("part must be a nonempty proper subset".into()));
        }
        let fresh = self.vertex_count;
        let edges = self.edges.iter().map(|&(x, y)| {
            if x == v && !a.contains(&y) {
                (fresh, y)
            } else if y == v && !a.contains(&x) {
                (x, fresh)
            } else {
                (x, y)
            }
        });
        let graph = Graph::new(fresh + 1, edges)?;
        Ok(Remapped { graph, remap: (0..self.vertex_count).collect() })
    }

    /// Merge `u` and `v` into one vertex at index `min(u, v)`; later indices shift down.
    pub fn vertex_coincide(&self, u: usize, v: usize) -> Result<Remapped, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::CannotCoincide(u, v, "same vertex".into()));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::CannotCoincide(u, v, "adjacent".into()));
        }
        let nu = self.neighbors(u);
        if self.neighbors(v).iter().any(|w| nu.contains(w)) {
            return Err(GraphError::CannotCoincide(u, v, "common neighbour".into()));
        }
        let (keep, drop) = (u.min(v), u.max(v));
        let remap = merge_remap(self.vertex_count, keep, drop);
        let edges = self.edges.iter().map(|&(x, y)| (remap[x], remap[y]));
        let graph = Graph::new(self.vertex_count - 1, edges)?;
        Ok(Remapped { graph, remap })
    }

    /// Remove `uv`, split `u` by `part_u` and `v` by `part_v`, then join the two copies.
    ///
    /// `u` keeps `part_u` and `v` keeps `part_v`; new vertices `u''` and `v''` are
    /// appended in that order and receive the remaining neighbours. The new edges
    /// are `u v` and `u'' v''`. With `leaf_split` a part may be empty or full,
    /// leaving one copy as a leaf of the new edge.
    pub fn edge_split(
        &self,
        u: usize,
        v: usize,
        part_u: &[usize],
        part_v: &[usize],
        leaf_split: bool,
    ) -> Result<Remapped, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let nu: Vec<usize> = self.neighbors(u).into_iter().filter(|&w| w != v).collect();
        let nv: Vec<usize> = self.neighbors(v).into_iter().filter(|&w| w != u).collect();
        for (x, nx) in [(u, &nu), (v, &nv)] {
            if nx.is_empty() {
                return Err(GraphError::DegreeTooSmall(x, 1));
            }
        }
        let pu = neighbour_part(u, &nu, part_u, leaf_split)?;
        let pv = neighbour_part(v, &nv, part_v, leaf_split)?;
        let (u2, v2) = (self.vertex_count, self.vertex_count + 1);
        let mut edges = Vec::new();
        for &(x, y) in &self.edges {
            if canonical(x, y) == canonical(u, v) {
                continue;
            }
            let map = |a: usize, b: usize| -> usize {
                if a == u && !pu.contains(&b) {
                    u2
                } else if a == v && !pv.contains(&b) {
                    v2
                } else {
                    a
                }
            };
            edges.push((map(x, y), map(y, x)));
        }
        edges.push((u, v));
        edges.push((u2, v2));
        let graph = Graph::new(self.vertex_count + 2, edges)?;
        Ok(Remapped { graph, remap: (0..self.vertex_count).collect() })
    }

    /// Merge edge `e1 = (a, b)` with `e2 = (c, d)` by coinciding `a` with `c` and `b` with `d`.
    pub fn edge_coincide(
        &self,
        e1: (usize, usize),
        e2: (usize, usize),
    ) -> Result<Remapped, GraphError> {
        let ((a, b), (c, d)) = (e1, e2);
        for &(x, y) in &[e1, e2] {
            if !self.has_edge(x, y) {
                return Err(GraphError::MissingEdge(x, y));
            }
        }
        let ends: BTreeSet<usize> = [a, b, c, d].into_iter().collect();
        if ends.len() != 4 {
            return Err(GraphError::CannotCoincide(a, c, "edges share an endpoint".into()));
        }
        let na: BTreeSet<usize> = self.neighbors(a).into_iter().filter(|&w| w != b).collect();
        let nb: BTreeSet<usize> = self.neighbors(b).into_iter().filter(|&w| w != a).collect();
        let nc: BTreeSet<usize> = self.neighbors(c).into_iter().filter(|&w| w != d).collect();
        let nd: BTreeSet<usize> = self.neighbors(d).into_iter().filter(|&w| w != c).collect();
        for (x, y, nx, ny) in [(a, c, &na, &nc), (b, d, &nb, &nd)] {
            if self.has_edge(x, y) {
                return Err(GraphError::CannotCoincide(x, y, "adjacent".into()));
            }
            if nx.intersection(ny).next().is_some() {
                return Err(GraphError::CannotCoincide(x, y, "common neighbour".into()));
            }
        }
        let n = self.vertex_count;
        // first merge c into a, then d into b, composing the remaps
        let r1 = merge_remap(n, a.min(c), a.max(c));
        let (b1, d1) = (r1[b], r1[d]);
        let r2 = merge_remap(n - 1, b1.min(d1), b1.max(d1));
        let remap: Vec<usize> = (0..n).map(|x| r2[r1[x]]).collect();
        let mut set = BTreeSet::new();
        for &(x, y) in &self.edges {
            let (p, q) = canonical(remap[x], remap[y]);
            if p == q {
                return Err(GraphError::CannotCoincide(a, c, "would create a loop".into()));
            }
            set.insert((p, q));
        }
        if set.len() + 1 != self.edges.len() {
            return Err(GraphError::CannotCoincide(a, c, "would create a multi-edge".into()));
        }
        let graph = Graph::new(n - 2, set)?;
        Ok(Remapped { graph, remap })
    }

    /// Attach leaves; new vertices are appended in plan order.
    pub fn add_leaves(&self, plan: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut edges = self.edges.clone();
        let mut next = self.vertex_count;
        for &(v, count) in plan {
            self.check_vertex(v)?;
            for _ in 0..count {
                edges.push((v, next));
                next += 1;
            }
        }
        Graph::new(next, edges)
    }

    /// `G - remove + add`.
    pub fn edge_swap(&self, remove: (usize, usize), add: (usize, usize)) -> Result<Graph, GraphError> {
        if !self.has_edge(remove.0, remove.1) {
            return Err(GraphError::MissingEdge(remove.0, remove.1));
        }
        self.check_vertex(add.0)?;
        self.check_vertex(add.1)?;
        if add.0 == add.1 {
            return Err(GraphError::SelfLoop(add.0));
        }
        if canonical(add.0, add.1) == canonical(remove.0, remove.1) || self.has_edge(add.0, add.1) {
            let (p, q) = canonical(add.0, add.1);
            return Err(GraphError::DuplicateEdge(p, q));
        }
        let removed = canonical(remove.0, remove.1);
        let edges = self.edges.iter().copied().filter(|&e| e != removed).chain([add]);
        Graph::new(self.vertex_count, edges)
    }

    pub fn is_tree(&self) -> TreeReport {
        let connected = self.vertex_count > 0 && self.is_connected();
        let deg = self.degrees();
        let leaves = deg.iter().filter(|&&d| d == 1).count();
        let leaf_formula =
            2 + deg.iter().filter(|&&d| d >= 3).map(|&d| d as i64 - 2).sum::<i64>();
        let order_identity_holds = self.vertex_count == self.edges.len() + 1;
        TreeReport {
            is_tree: connected && order_identity_holds,
            connected,
            leaves,
            leaf_formula,
            leaf_identity_holds: leaves as i64 == leaf_formula,
            order_identity_holds,
        }
    }

    /// Relabel vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.vertex_count {
            return Err(GraphError::Parse("permutation length mismatch".into()));
        }
        Graph::new(self.vertex_count, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    pub fn isomorphic(&self, other: &Graph) -> Result<bool, GraphError> {
        Ok(self.find_isomorphism(other)?.is_some())
    }

    /// A bijection `phi` with `uv` an edge iff `phi[u] phi[v]` is an edge of `other`.
    pub fn find_isomorphism(&self, other: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
        for g in [self, other] {
            if g.vertex_count > ISOMORPHISM_LIMIT {
                return Err(GraphError::TooLarge(g.vertex_count, ISOMORPHISM_LIMIT));
            }
        }
        if self.vertex_count != other.vertex_count
            || self.edges.len() != other.edges.len()
            || self.degree_sequence() != other.degree_sequence()
        {
            return Ok(None);
        }
        let n = self.vertex_count;
        let a = adjacency_matrix(self);
        let b = adjacency_matrix(other);
        let da = self.degrees();
        let db = other.degrees();
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn extend(
            i: usize,
            n: usize,
            a: &[Vec<bool>],
            b: &[Vec<bool>],
            da: &[usize],
            db: &[usize],
            phi: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if i == n {
                return true;
            }
            for t in 0..n {
                if used[t] || da[i] != db[t] {
                    continue;
                }
                if (0..i).all(|j| a[i][j] == b[t][phi[j]]) {
                    phi[i] = t;
                    used[t] = true;
                    if extend(i + 1, n, a, b, da, db, phi, used) {
                        return true;
                    }
                    used[t] = false;
                }
            }
            false
        }
        Ok(extend(0, n, &a, &b, &da, &db, &mut phi, &mut used).then_some(phi))
    }

    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count;
        let mut l = vec![vec![0i64; n]; n];
        for &(u, v) in &self.edges {
            l[u][u] += 1;
            l[v][v] += 1;
            l[u][v] -= 1;
            l[v][u] -= 1;
        }
        l
    }

    /// Number of spanning trees, by an exact determinant of a Laplacian minor.
    pub fn spanning_tree_count(&self) -> Result<BigInt, GraphError> {
        if self.vertex_count == 0 || !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let l = self.laplacian();
        let minor: Vec<Vec<BigInt>> = l[1..]
            .iter()
            .map(|row| row[1..].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Ok(bareiss_determinant(minor))
    }

    pub fn spanning_tree_enumerate(&self) -> Result<Vec<Graph>, GraphError> {
        if self.vertex_count > ENUMERATION_LIMIT {
            return Err(GraphError::TooLarge(self.vertex_count, ENUMERATION_LIMIT));
        }
        if self.vertex_count == 0 || !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = self.vertex_count;
        let q = self.edges.len();
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(n - 1);
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            r
        }
        fn rec(
            g: &Graph,
            start: usize,
            q: usize,
            n: usize,
            chosen: &mut Vec<usize>,
            out: &mut Vec<Graph>,
        ) {
            if chosen.len() == n - 1 {
                let mut parent: Vec<usize> = (0..n).collect();
                for &i in chosen.iter() {
                    let (u, v) = g.edges[i];
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru == rv {
                        return;
                    }
                    parent[ru] = rv;
                }
                let edges = chosen.iter().map(|&i| g.edges[i]);
                out.push(Graph::new(n, edges).expect("subgraph of a simple graph"));
                return;
            }
            let need = n - 1 - chosen.len();
            for i in start..q {
                if q - i < need {
                    break;
                }
                chosen.push(i);
                rec(g, i + 1, q, n, chosen, out);
                chosen.pop();
            }
        }
        rec(self, 0, q, n, &mut chosen, &mut out);
        Ok(out)
    }

    /// Text form: `p q` then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.vertex_count, self.edges.len());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| GraphError::Parse("empty input".into()))?;
        let nums = parse_numbers(header)?;
        if nums.len() != 2 {
            return Err(GraphError::Parse(format!("bad header {header:?}")));
        }
        let (p, q) = (nums[0], nums[1]);
        let mut edges = Vec::with_capacity(q);
        for line in lines {
            let pair = parse_numbers(line)?;
            if pair.len() != 2 {
                return Err(GraphError::Parse(format!("bad edge line {line:?}")));
            }
            edges.push((pair[0], pair[1]));
        }
        if edges.len() != q {
            return Err(GraphError::Parse(format!("header says {q} edges, found {}", edges.len())));
        }
        Graph::new(p, edges)
    }

    /// Accepts either the JSON form or the text form.
    pub fn parse_any(input: &str) -> Result<Graph, GraphError> {
        if input.trim_start().starts_with('{') {
            serde_json::from_str(input).map_err(|e| GraphError::Parse(e.to_string()))
        } else {
            Graph::from_text(input)
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.vertex_count {
            match &self.names {
                Some(names) => s.push_str(&format!("  {v} [label=\"{}\"];\n", names[v])),
                None => s.push_str(&format!("  {v};\n")),
            }
        }
        for &(u, v) in &self.edges {
            s.push_str(&format!("  {u} -- {v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Graph {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::parse_any(s)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<usize>, GraphError> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| GraphError::Parse(format!("bad integer {t:?}"))))
        .collect()
}

fn merge_remap(n: usize, keep: usize, drop: usize) -> Vec<usize> {
    (0..n)
        .map(|x| match x.cmp(&drop) {
            std::cmp::Ordering::Less => x,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => x - 1,
        })
        .collect()
}

fn neighbour_part(
    v: usize,
    nb: &[usize],
    part: &[usize],
    allow_trivial: bool,
) -> Result<BTreeSet<usize>, GraphError> {
    let set: BTreeSet<usize> = part.iter().copied().collect();
    if set.len() != part.len() {
        return Err(GraphError::BadPartition("repeated neighbour".into()));
    }
    if let Some(w) = set.iter().find(|w| !nb.contains(w)) {
        return Err(GraphError::BadPartition(format!("{w} is not a neighbour of {v}")));
    }
    if !allow_trivial && (set.is_empty() || set.len() == nb.len()) {
        return Err(GraphError::BadPartition(format!(
            "part for {v} must be a nonempty proper subset"
        )));
    }
    Ok(set)
}

fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut m = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_edges() {
        let g = Graph::new(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(Graph::new(2, [(0, 0)]).is_err());
        assert!(Graph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn bareiss_small() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(-1)],
            vec![BigInt::from(-1), BigInt::from(2)],
        ];
        assert_eq!(bareiss_determinant(m), BigInt::from(3));
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::cycle(4);
        assert_eq!(Graph::from_text(&g.to_text()).unwrap(), g);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"p":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        assert_eq!(Graph::parse_any(&json).unwrap(), g);
    }
}
