//! Key bundles and their verification: a public and a private bundle match
//! when their graphs are related, a per-part affine map carries one
//! Topcode-matrix onto the other, and both strings regenerate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::labeling::{verify_as, verify_matching, Labeling, LabelingError, MatchKind, VerificationReport, Violation, Witness};
use crate::strings::{vo_string, NumberString, StringError, Traversal};
use crate::topcode::{Column, TopcodeError, TopcodeMatrix};

/// Largest graph for the isomorphism search used when colors do not fix the map.
pub const ISOMORPHISM_SEARCH_LIMIT: usize = 32;

/// Largest source graph for the brute-force homomorphism check.
pub const HOMOMORPHISM_LIMIT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuthError {
    #[error("labeling is not a valid {0} labeling")]
    Unverified(String),
    #[error("affine map `{0}` has zero slope")]
    DegenerateMap(Affine),
    #[error("cannot parse affine map `{0}`")]
    Parse(String),
    #[error("homomorphism check needs at most {limit} source vertices, got {0}", limit = HOMOMORPHISM_LIMIT)]
    TooLarge(usize),
    #[error("key vector is empty")]
    Empty,
    #[error("expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error(transparent)]
    Topcode(#[from] TopcodeError),
    #[error(transparent)]
    String(#[from] StringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The public or private half of an authentication: a colored graph, its
/// Topcode-matrix and the string read off the matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyBundle {
    pub string: NumberString,
    pub matrix: TopcodeMatrix,
    pub graph: Graph,
    pub labeling: Labeling,
    pub vo_algo: Traversal,
}

#[derive(Serialize, Deserialize)]
struct BundleJson {
    graph: Graph,
    labeling: Labeling,
    matrix: TopcodeMatrix,
    string: Vec<u64>,
    vo_algo: String,
}

impl Serialize for KeyBundle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BundleJson {
            graph: self.graph.clone(),
            labeling: self.labeling.clone(),
            matrix: self.matrix.clone(),
            string: self.string.tokens().to_vec(),
            vo_algo: self.vo_algo.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KeyBundle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = BundleJson::deserialize(d)?;
        Ok(KeyBundle {
            string: NumberString::from_tokens(j.string),
            matrix: j.matrix,
            graph: j.graph,
            labeling: j.labeling,
            vo_algo: j.vo_algo.parse().map_err(serde::de::Error::custom)?,
        })
    }
}

/// Verify `l`, build its Topcode-matrix and read the string with `vo_algo`.
pub fn derive_bundle(g: &Graph, l: &Labeling, vo_algo: Traversal) -> Result<KeyBundle, AuthError> {
    if !verify_as(g, l, l.kind)?.accepted {
        return Err(AuthError::Unverified(l.kind.tag().into()));
    }
    let matrix = TopcodeMatrix::from_colored_graph(g, l)?;
    let string = vo_string(&matrix, vo_algo)?;
    Ok(KeyBundle { string, matrix, graph: g.clone(), labeling: l.clone(), vo_algo })
}

impl KeyBundle {
    /// Internal consistency; clauses are prefixed with `side`.
    fn check(&self, side: &str) -> Vec<Violation> {
        let mut out = Vec::new();
        let violation = |what: &str, witness| Violation { clause: format!("c:{side}-{what}"), witness };
        match verify_as(&self.graph, &self.labeling, self.labeling.kind) {
            Ok(r) if r.accepted => {}
            _ => out.push(violation("labeling", Witness::Graph)),
        }
        match TopcodeMatrix::from_colored_graph(&self.graph, &self.labeling) {
            Ok(m) if m.rows() == self.matrix.rows() => {}
            _ => out.push(violation("matrix", Witness::Graph)),
        }
        match vo_string(&self.matrix, self.vo_algo) {
            Ok(s) => {
                let (want, got) = (s.tokens(), self.string.tokens());
                let first = (0..want.len().max(got.len())).find(|&i| want.get(i) != got.get(i));
                if let Some(i) = first {
                    out.push(violation("string", Witness::Value(i as i64)));
                }
            }
            Err(_) => out.push(violation("string", Witness::Graph)),
        }
        out
    }
}

/// `w -> a*w + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Affine {
    pub a: i64,
    pub b: i64,
}

impl Affine {
    pub const IDENTITY: Affine = Affine { a: 1, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        Affine { a, b }
    }

    pub fn apply(self, w: i64) -> Option<i64> {
        self.a.checked_mul(w)?.checked_add(self.b)
    }

    /// The inverse map, when it has integer coefficients.
    pub fn inverse(self) -> Option<Affine> {
        match self.a {
            1 => Some(Affine::new(1, self.b.checked_neg()?)),
            -1 => Some(Affine::new(-1, self.b)),
            _ => None,
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.a {
            1 => write!(f, "w")?,
            -1 => write!(f, "-w")?,
            a => write!(f, "{a}w")?,
        }
        match self.b {
            0 => Ok(()),
            b if b > 0 => write!(f, "+{b}"),
            b => write!(f, "{b}"),
        }
    }
}

impl FromStr for Affine {
    type Err = AuthError;
    /// `2x+1`, `-w`, `y - 3`, `x`: one variable letter with an optional integer
    /// slope before it and an optional signed constant after it.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AuthError::Parse(s.into());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let at = t.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
        let (slope, rest) = (&t[..at], &t[at + 1..]);
        let a = match slope {
            "" | "+" => 1,
            "-" => -1,
            n => n.strip_suffix('*').unwrap_or(n).parse().map_err(|_| bad())?,
        };
        let b = match rest {
            "" => 0,
            r if r.starts_with('+') || r.starts_with('-') => r.parse().map_err(|_| bad())?,
            _ => return Err(bad()),
        };
        Ok(Affine { a, b })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphRelation {
    /// Same vertex count and edge list.
    Identity,
    Isomorphism,
    /// A vertex map from the public graph into the private one sending edges to edges.
    Homomorphism,
}

/// Per-part affine maps on Topcode-matrix rows together with a graph relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformSpec {
    pub x: Affine,
    pub e: Affine,
    pub y: Affine,
    pub relation: GraphRelation,
}

impl TransformSpec {
    pub fn identity() -> Self {
        TransformSpec { x: Affine::IDENTITY, e: Affine::IDENTITY, y: Affine::IDENTITY, relation: GraphRelation::Identity }
    }

    pub fn isomorphism(x: Affine, e: Affine, y: Affine) -> Self {
        TransformSpec { x, e, y, relation: GraphRelation::Isomorphism }
    }

    /// The inverse spec when every part inverts over the integers. Homomorphism
    /// is not symmetric and has no inverse.
    pub fn inverse(&self) -> Option<Self> {
        if self.relation == GraphRelation::Homomorphism {
            return None;
        }
        Some(TransformSpec { x: self.x.inverse()?, e: self.e.inverse()?, y: self.y.inverse()?, relation: self.relation })
    }

    fn check(&self) -> Result<(), AuthError> {
        for m in [self.x, self.e, self.y] {
            if m.a == 0 {
                return Err(AuthError::DegenerateMap(m));
            }
        }
        Ok(())
    }

    fn column(&self, (x, e, y): Column) -> Option<Column> {
        Some((self.x.apply(x)?, self.e.apply(e)?, self.y.apply(y)?))
    }
}

/// Vertex map sending each public vertex to the private vertex carrying the
/// transformed color, if that is a well-defined bijection.
fn color_map(public: &KeyBundle, private: &KeyBundle, spec: &TransformSpec) -> Option<Vec<usize>> {
    let (m, colors) = (&public.matrix, &public.labeling.vertex);
    let mut image = vec![None; colors.len()];
    for (v, &c) in colors.iter().enumerate() {
        let as_x = m.x().contains(&c).then(|| spec.x.apply(c)).flatten();
        let as_y = m.y().contains(&c).then(|| spec.y.apply(c)).flatten();
        image[v] = match (as_x, as_y) {
            (Some(a), Some(b)) if a != b => return None,
            (Some(a), _) | (None, Some(a)) => Some(a),
            (None, None) => None,
        };
    }
    let mut at = BTreeMap::new();
    for (v, &c) in private.labeling.vertex.iter().enumerate() {
        if at.insert(c, v).is_some() {
            return None;
        }
    }
    let map: Vec<usize> = image.iter().map(|c| c.and_then(|c| at.get(&c).copied())).collect::<Option<_>>()?;
    let mut hit = vec![false; private.graph.vertex_count()];
    for &w in &map {
        if std::mem::replace(&mut hit[w], true) {
            return None;
        }
    }
    Some(map)
}

fn preserves_edges(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    g.edges().iter().all(|&(u, v)| h.has_edge(map[u], map[v]))
}

/// Backtracking isomorphism test pruned by degree and neighbor-degree signatures.
fn isomorphic_search(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let signatures = |x: &Graph| -> Vec<(usize, Vec<usize>)> {
        let adj = x.adjacency();
        adj.iter()
            .map(|ns| {
                let mut d: Vec<usize> = ns.iter().map(|&w| adj[w].len()).collect();
                d.sort_unstable();
                (ns.len(), d)
            })
            .collect()
    };
    let (sg, sh) = (signatures(g), signatures(h));
    let (mut a, mut b) = (sg.clone(), sh.clone());
    a.sort();
    b.sort();
    if a != b {
        return false;
    }
    let adj = g.adjacency();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if !std::mem::replace(&mut seen[w], true) {
                    queue.push_back(w);
                }
            }
        }
    }
    struct Search<'a> {
        g: &'a Graph,
        h: &'a Graph,
        sg: &'a [(usize, Vec<usize>)],
        sh: &'a [(usize, Vec<usize>)],
        order: &'a [usize],
        map: Vec<usize>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn run(&mut self, i: usize) -> bool {
            let Some(&v) = self.order.get(i) else { return true };
            for w in 0..self.h.vertex_count() {
                if self.used[w] || self.sg[v] != self.sh[w] {
                    continue;
                }
                let fits = self.order[..i].iter().all(|&u| self.g.has_edge(u, v) == self.h.has_edge(self.map[u], w));
                if fits {
                    self.map[v] = w;
                    self.used[w] = true;
                    if self.run(i + 1) {
                        return true;
                    }
                    self.used[w] = false;
                }
            }
            false
        }
    }
    Search { g, h, sg: &sg, sh: &sh, order: &order, map: vec![0; n], used: vec![false; n] }.run(0)
}

fn homomorphism_exists(g: &Graph, h: &Graph) -> bool {
    fn extend(adj: &[Vec<usize>], h: &Graph, map: &mut Vec<usize>) -> bool {
        let v = map.len();
        if v == adj.len() {
            return true;
        }
        for w in 0..h.vertex_count() {
            if adj[v].iter().filter(|&&u| u < v).all(|&u| h.has_edge(w, map[u])) {
                map.push(w);
                if extend(adj, h, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    extend(&g.adjacency(), h, &mut Vec::with_capacity(g.vertex_count()))
}

fn relation_holds(public: &KeyBundle, private: &KeyBundle, spec: &TransformSpec) -> Result<bool, AuthError> {
    let (g, h) = (&public.graph, &private.graph);
    Ok(match spec.relation {
        GraphRelation::Identity => g.vertex_count() == h.vertex_count() && g.edges() == h.edges(),
        GraphRelation::Isomorphism => {
            if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
                false
            } else if color_map(public, private, spec).is_some_and(|m| preserves_edges(g, h, &m)) {
                true
            } else if g.vertex_count() > ISOMORPHISM_SEARCH_LIMIT {
                return Err(AuthError::Graph(GraphError::TooLarge(g.vertex_count(), ISOMORPHISM_SEARCH_LIMIT)));
            } else {
                isomorphic_search(g, h)
            }
        }
        GraphRelation::Homomorphism => homomorphism_exists(g, h),
    })
}

/// Leg (a): the graph relation. Leg (b): the mapped public columns equal the
/// private columns as multisets. Leg (c): both bundles are internally consistent,
/// including string regeneration. Clauses start with the leg letter.
pub fn authenticate(public: &KeyBundle, private: &KeyBundle, spec: &TransformSpec) -> Result<VerificationReport, AuthError> {
    spec.check()?;
    if spec.relation == GraphRelation::Homomorphism && public.graph.vertex_count() > HOMOMORPHISM_LIMIT {
        return Err(AuthError::TooLarge(public.graph.vertex_count()));
    }
    let mut violations = Vec::new();
    if !relation_holds(public, private, spec)? {
        violations.push(Violation { clause: "a:relation".into(), witness: Witness::Graph });
    }

    let mut pending: BTreeMap<Column, usize> = BTreeMap::new();
    for c in private.matrix.columns() {
        *pending.entry(c).or_default() += 1;
    }
    for (i, c) in public.matrix.columns().into_iter().enumerate() {
        let hit = spec.column(c).and_then(|m| pending.get_mut(&m).filter(|n| **n > 0));
        match hit {
            Some(n) => *n -= 1,
            None => violations.push(Violation { clause: "b:transform".into(), witness: Witness::Value(i as i64) }),
        }
    }
    if public.matrix.q() != private.matrix.q() {
        violations.push(Violation { clause: "b:transform".into(), witness: Witness::Graph });
    }

    violations.extend(public.check("pub"));
    violations.extend(private.check("priv"));
    Ok(VerificationReport { accepted: violations.is_empty(), violations })
}

/// Serializable form of [`MatchKind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "match", rename_all = "kebab-case")]
pub enum MatchOp {
    TwinOddGraceful,
    VImage { constant: Option<i64> },
    EImage { constant: Option<i64> },
    KdHarmoniousImage { k: i64, d: i64 },
    #[serde(rename = "6c-complementary")]
    SixCComplementary,
    ReciprocalInverse,
}

impl From<MatchOp> for MatchKind {
    fn from(m: MatchOp) -> Self {
        match m {
            MatchOp::TwinOddGraceful => MatchKind::TwinOddGraceful,
            MatchOp::VImage { constant } => MatchKind::VImage(constant),
            MatchOp::EImage { constant } => MatchKind::EImage(constant),
            MatchOp::KdHarmoniousImage { k, d } => MatchKind::KdHarmoniousImage { k, d },
            MatchOp::SixCComplementary => MatchKind::SixCComplementary,
            MatchOp::ReciprocalInverse => MatchKind::ReciprocalInverse,
        }
    }
}

/// How one leg of a key vector is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LegOp {
    Transform(TransformSpec),
    Matching(MatchOp),
}

fn leg(public: &KeyBundle, private: &KeyBundle, op: &LegOp) -> Result<VerificationReport, AuthError> {
    match op {
        LegOp::Transform(spec) => authenticate(public, private, spec),
        LegOp::Matching(m) => {
            let r = verify_matching(&public.graph, &public.labeling, &private.graph, &private.labeling, (*m).into())?;
            let mut violations: Vec<Violation> = r
                .violations
                .into_iter()
                .map(|v| Violation { clause: format!("b:{}", v.clause), witness: v.witness })
                .collect();
            violations.extend(public.check("pub"));
            violations.extend(private.check("priv"));
            Ok(VerificationReport { accepted: violations.is_empty(), violations })
        }
    }
}

fn combine(reports: Vec<VerificationReport>) -> VerificationReport {
    let violations: Vec<Violation> = reports
        .into_iter()
        .enumerate()
        .flat_map(|(i, r)| {
            r.violations.into_iter().map(move |v| Violation { clause: format!("leg{i}/{}", v.clause), witness: v.witness })
        })
        .collect();
    VerificationReport { accepted: violations.is_empty(), violations }
}

/// Check `pubs[i]` against `privs[i]` with `ops[i]` for every `i`. Clauses are
/// prefixed with `leg<i>/`.
pub fn authenticate_vector(pubs: &[KeyBundle], privs: &[KeyBundle], ops: &[LegOp]) -> Result<VerificationReport, AuthError> {
    if pubs.is_empty() {
        return Err(AuthError::Empty);
    }
    for len in [privs.len(), ops.len()] {
        if len != pubs.len() {
            return Err(AuthError::Length { expected: pubs.len(), got: len });
        }
    }
    let reports = pubs.iter().zip(privs).zip(ops).map(|((a, b), op)| leg(a, b, op)).collect::<Result<_, _>>()?;
    Ok(combine(reports))
}

/// Chain mode: `keys[i]` is the private key of leg `i - 1` and the public key of leg `i`.
pub fn authenticate_chain(keys: &[KeyBundle], ops: &[LegOp]) -> Result<VerificationReport, AuthError> {
    if keys.len() < 2 {
        return Err(AuthError::Empty);
    }
    if ops.len() != keys.len() - 1 {
        return Err(AuthError::Length { expected: keys.len() - 1, got: ops.len() });
    }
    let reports = keys.windows(2).zip(ops).map(|(w, op)| leg(&w[0], &w[1], op)).collect::<Result<_, _>>()?;
    Ok(combine(reports))
}
