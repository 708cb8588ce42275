use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{EdgeRule, Kind, Labeling, LabelingError};
use crate::graph::Graph;

/// Element of the host graph that witnesses a failed clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    Vertex(usize),
    Edge(usize, usize),
    Value(i64),
    Graph,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Vertex(v) => write!(f, "vertex {v}"),
            Witness::Edge(u, v) => write!(f, "edge ({u}, {v})"),
            Witness::Value(c) => write!(f, "color {c}"),
            Witness::Graph => f.write_str("graph"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: String,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub accepted: bool,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        VerificationReport { accepted: violations.is_empty(), violations }
    }

    pub fn has_clause(&self, prefix: &str) -> bool {
        self.violations.iter().any(|v| v.clause.starts_with(prefix))
    }
}

/// Resolved numeric parameters with defaults filled in.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct P {
    pub k: i64,
    pub d: i64,
    pub lambda: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub kstar: i64,
    pub magic: Option<i64>,
}

pub(crate) fn resolve(kind: Kind, params: &BTreeMap<String, i64>) -> Result<P, LabelingError> {
    let req = kind.required_params();
    for &name in req {
        if !params.contains_key(name) {
            return Err(LabelingError::MissingParam { kind: kind.tag(), param: name });
        }
    }
    let get = |n: &str, def: i64| params.get(n).copied().unwrap_or(def);
    let p = P {
        k: get("k", 0),
        d: get("d", 1),
        lambda: get("lambda", 1),
        a: get("a", 0),
        b: get("b", 0),
        c: get("c", 0),
        kstar: get("kstar", 0),
        magic: params.get("magic").copied(),
    };
    let bad = |n: &str, why: &str| Err(LabelingError::InvalidParam(n.into(), why.into()));
    if req.contains(&"d") && p.d < 1 {
        return bad("d", "must be at least 1");
    }
    if req.contains(&"k") && p.k < 0 {
        return bad("k", "must be non-negative");
    }
    if kind == Kind::TotallyKdSequential && p.k < 1 {
        return bad("k", "must be at least 1");
    }
    if p.lambda == 0 {
        return bad("lambda", "must be nonzero");
    }
    if p.a < 0 || p.b < 0 || p.c < 0 || p.kstar < 0 {
        return bad("a/b/c/kstar", "must be non-negative");
    }
    Ok(p)
}

pub(crate) fn rule_for(kind: Kind, p: &P, q: usize) -> Option<EdgeRule> {
    use Kind::*;
    let q = q as i64;
    Some(match kind {
        Graceful | SetOrderedGraceful | StronglyGraceful | SetOrderedStronglyGraceful
        | OddGraceful | SetOrderedOddGraceful | StronglyOddGraceful
        | SetOrderedStronglyOddGraceful | KGraceful | PanOddGraceful | TotallyGraceful
        | SuperTotallyGraceful | SetOrderedTotallyGraceful | SuperSetOrderedTotallyGraceful
        | KdGraceful | KdOddGraceful | KdGracefullyTotal | KdStronglyGracefullyTotal
        | KdOddGracefullyTotal | KdStronglyOddGracefullyTotal | GracefullyTotalColoring
        | SetOrderedGracefullyTotalColoring | GracefullyTotalSequence
        | ProperGracefullyTotalSequence => EdgeRule::AbsDifference,
        Felicitous | SuperFelicitous => EdgeRule::ModSum(q),
        OddElegant | OddElegantColoring => EdgeRule::ModSum(2 * q),
        KdArithmetic => EdgeRule::PlainSum,
        KdHarmonious | KdElegant | KdHarmoniousTotal => {
            EdgeRule::OffsetModSum { offset: p.k, modulus: q * p.d }
        }
        KdOddElegantTotal => EdgeRule::OffsetModSum { offset: p.k, modulus: 2 * q * p.d },
        KdOddElegant | KdOddElegantColoring => {
            EdgeRule::ShiftedModSum { shift: p.k, modulus: 2 * q * p.d }
        }
        TotallyKdSequential => EdgeRule::Sequential { k: p.k, d: p.d },
        _ => return None,
    })
}

pub(crate) fn induced_rule(
    kind: Kind,
    l: &Labeling,
    q: usize,
) -> Result<Option<EdgeRule>, LabelingError> {
    let p = resolve(kind, &l.params)?;
    Ok(rule_for(kind, &p, q))
}

fn needs_sides(kind: Kind) -> bool {
    use Kind::*;
    matches!(
        kind,
        SetOrderedGraceful
            | SetOrderedStronglyGraceful
            | SetOrderedOddGraceful
            | SetOrderedStronglyOddGraceful
            | SetOrderedTotallyGraceful
            | SuperSetOrderedTotallyGraceful
            | SetOrderedGracefullyTotalColoring
            | SixC
            | KdElegant
            | KdGracefulDifference
            | KdFelicitousDifference
            | KdGracefullyTotal
            | KdStronglyGracefullyTotal
            | KdOddGracefullyTotal
            | KdStronglyOddGracefullyTotal
            | KdEdgeAntimagicTotalColoring
            | KdHarmoniousTotal
            | KdOddElegantTotal
            | StronglyEdgeMagicKdTotal
            | EdgeMagicKdTotal
            | StronglyEdgeDifferenceKdTotal
            | EdgeDifferenceKdTotal
            | StronglyFelicitousDifferenceKdTotal
            | FelicitousDifferenceKdTotal
            | StronglyGracefulDifferenceKdTotal
            | GracefulDifferenceKdTotal
            | ParamEdgeMagic
            | ParamEdgeDifference
            | ParamFelicitousDifference
            | ParamGracefulDifference
            | KdEdgeDifferenceMagically
            | KdGracefullyEImage
    )
}

/// Check `l` against the definition of its own kind.
pub fn verify(g: &Graph, l: &Labeling) -> Result<VerificationReport, LabelingError> {
    verify_as(g, l, l.kind)
}

/// Check `l` against the definition of `kind`, ignoring the stored tag.
pub fn verify_as(g: &Graph, l: &Labeling, kind: Kind) -> Result<VerificationReport, LabelingError> {
    l.check_shape(g)?;
    let p = resolve(kind, &l.params)?;
    let q = g.edge_count();
    let stored = l.edge_colors(g)?;
    let mut pre = Vec::new();
    let edges: Vec<i64> = match rule_for(kind, &p, q) {
        Some(rule) => g
            .edges()
            .iter()
            .zip(&stored)
            .map(|(&(u, v), s)| {
                let induced = rule.apply(l.vertex[u], l.vertex[v]);
                match s {
                    Some(c) if kind == Kind::PanOddGraceful => *c,
                    Some(c) => {
                        if *c != induced {
                            pre.push(Violation {
                                clause: "induced-edge-rule".into(),
                                witness: Witness::Edge(u, v),
                            });
                        }
                        *c
                    }
                    None => induced,
                }
            })
            .collect(),
        None => stored
            .iter()
            .zip(g.edges())
            .map(|(c, &(u, v))| c.ok_or(LabelingError::UncoloredEdge(u, v)))
            .collect::<Result<_, _>>()?,
    };
    let seq = if matches!(kind, Kind::GracefullyTotalSequence | Kind::ProperGracefullyTotalSequence)
    {
        Some(sequences(l, g)?)
    } else {
        None
    };
    let run = |side: Option<&[bool]>| {
        let mut ctx = Ctx { g, p: g.vertex_count(), q, v: &l.vertex, e: &edges, side, out: pre.clone() };
        check(kind, &p, seq.as_ref(), &mut ctx);
        ctx.out
    };
    if !needs_sides(kind) {
        return Ok(VerificationReport::from_violations(run(None)));
    }
    if let Some(sides) = &l.bipartition {
        if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| sides[u] == sides[v]) {
            let mut out = pre;
            out.push(Violation { clause: "bipartition".into(), witness: Witness::Edge(u, v) });
            return Ok(VerificationReport::from_violations(out));
        }
        return Ok(VerificationReport::from_violations(run(Some(sides))));
    }
    let Some(sides) = g.bipartition() else {
        let mut out = pre;
        out.push(Violation { clause: "bipartite".into(), witness: Witness::Graph });
        return Ok(VerificationReport::from_violations(out));
    };
    let first = run(Some(&sides));
    if first.is_empty() {
        return Ok(VerificationReport::from_violations(first));
    }
    let flipped: Vec<bool> = sides.iter().map(|s| !s).collect();
    let second = run(Some(&flipped));
    if second.is_empty() {
        return Ok(VerificationReport::from_violations(second));
    }
    Ok(VerificationReport::from_violations(first))
}

type Seqs = (BTreeSet<i64>, BTreeSet<i64>);

fn sequences(l: &Labeling, g: &Graph) -> Result<Seqs, LabelingError> {
    let get = |name: &'static str| {
        l.sequences.get(name).ok_or(LabelingError::MissingParam { kind: l.kind.tag(), param: name })
    };
    let (a, b) = (get("A")?, get("B")?);
    let pre = |why: &str| Err(LabelingError::Precondition(why.to_string()));
    if a.windows(2).any(|w| w[0] >= w[1]) || a.first().is_some_and(|&x| x < 0) {
        return pre("A must be strictly increasing and non-negative");
    }
    if a.len() < g.vertex_count() {
        return pre("A must have at least p terms");
    }
    if b.windows(2).any(|w| w[0] >= w[1]) || b.first().is_some_and(|&x| x < 1) {
        return pre("B must be strictly increasing and positive");
    }
    if b.len() != g.edge_count() {
        return pre("B must have exactly q terms");
    }
    let aset: BTreeSet<i64> = a.iter().copied().collect();
    for &bj in b {
        if !a.iter().any(|&ai| aset.contains(&(ai + bj))) {
            return pre(&format!("{bj} in B is not a difference of two terms of A"));
        }
    }
    Ok((aset, b.iter().copied().collect()))
}

struct Ctx<'a> {
    g: &'a Graph,
    p: usize,
    q: usize,
    v: &'a [i64],
    e: &'a [i64],
    side: Option<&'a [bool]>,
    out: Vec<Violation>,
}

fn range(lo: i64, hi: i64) -> BTreeSet<i64> {
    (lo..=hi).collect()
}

fn progression(k: i64, d: i64, n: usize) -> BTreeSet<i64> {
    (0..n as i64).map(|i| k + i * d).collect()
}

fn odd_progression(k: i64, d: i64, n: usize) -> BTreeSet<i64> {
    (0..n as i64).map(|i| k + (2 * i + 1) * d).collect()
}

impl Ctx<'_> {
    fn fail(&mut self, clause: &str, witness: Witness) {
        self.out.push(Violation { clause: clause.to_string(), witness });
    }

    fn edge_w(&self, i: usize) -> Witness {
        let (u, v) = self.g.edges()[i];
        Witness::Edge(u, v)
    }

    fn ends(&self, i: usize) -> (i64, i64) {
        let (u, v) = self.g.edges()[i];
        (self.v[u], self.v[v])
    }

    /// End colors ordered as (X end, Y end).
    fn xy_ends(&self, i: usize) -> (i64, i64) {
        let (u, v) = self.g.edges()[i];
        let side = self.side.expect("sided kind");
        if side[u] {
            (self.v[v], self.v[u])
        } else {
            (self.v[u], self.v[v])
        }
    }

    fn diff(&self, i: usize) -> i64 {
        let (a, b) = self.ends(i);
        (a - b).abs()
    }

    fn per_edge(&self, f: impl Fn(&Self, usize) -> i64) -> Vec<i64> {
        (0..self.q).map(|i| f(self, i)).collect()
    }

    fn injective(&mut self, clause: &str) {
        let mut seen = BTreeMap::new();
        for (x, &c) in self.v.iter().enumerate() {
            if seen.insert(c, x).is_some() {
                self.fail(clause, Witness::Vertex(x));
                return;
            }
        }
    }

    fn vertices_in(&mut self, clause: &str, ok: impl Fn(i64) -> bool) {
        if let Some(x) = self.v.iter().position(|&c| !ok(c)) {
            self.fail(clause, Witness::Vertex(x));
        }
    }

    fn edges_in(&mut self, clause: &str, ok: impl Fn(i64) -> bool) {
        if let Some(i) = self.e.iter().position(|&c| !ok(c)) {
            let w = self.edge_w(i);
            self.fail(clause, w);
        }
    }

    fn side_in(&mut self, clause: &str, y_side: bool, ok: impl Fn(i64) -> bool) {
        let side = self.side.expect("sided kind");
        if let Some(x) = (0..self.p).find(|&x| side[x] == y_side && !ok(self.v[x])) {
            self.fail(clause, Witness::Vertex(x));
        }
    }

    fn vertex_set_is(&mut self, clause: &str, target: &BTreeSet<i64>) {
        let got: BTreeSet<i64> = self.v.iter().copied().collect();
        if let Some(x) = self.v.iter().position(|c| !target.contains(c)) {
            self.fail(clause, Witness::Vertex(x));
        } else if let Some(m) = target.difference(&got).next() {
            self.fail(clause, Witness::Value(*m));
        }
    }

    /// The per-edge `values` must be distinct and form exactly `target`.
    fn values_are(&mut self, clause: &str, values: &[i64], target: &BTreeSet<i64>) {
        let mut seen = BTreeSet::new();
        for (i, &c) in values.iter().enumerate() {
            if !target.contains(&c) || !seen.insert(c) {
                let w = self.edge_w(i);
                self.fail(clause, w);
                return;
            }
        }
        if let Some(m) = target.difference(&seen).next() {
            self.fail(clause, Witness::Value(*m));
        }
    }

    fn edge_set_is(&mut self, clause: &str, target: &BTreeSet<i64>) {
        let e = self.e;
        self.values_are(clause, e, target);
    }

    fn edges_distinct(&mut self, clause: &str, values: &[i64]) {
        let mut seen = BTreeSet::new();
        if let Some(i) = values.iter().position(|c| !seen.insert(*c)) {
            let w = self.edge_w(i);
            self.fail(clause, w);
        }
    }

    /// Vertex and edge colors together form a bijection onto `[lo, hi]`.
    fn total_bijection(&mut self, clause: &str, lo: i64, hi: i64) {
        self.total_onto(clause, &range(lo, hi));
    }

    fn total_onto(&mut self, clause: &str, target: &BTreeSet<i64>) {
        let mut seen = BTreeSet::new();
        for (x, &c) in self.v.iter().enumerate() {
            if !target.contains(&c) || !seen.insert(c) {
                self.fail(clause, Witness::Vertex(x));
                return;
            }
        }
        for i in 0..self.q {
            let c = self.e[i];
            if !target.contains(&c) || !seen.insert(c) {
                let w = self.edge_w(i);
                self.fail(clause, w);
                return;
            }
        }
        if let Some(m) = target.difference(&seen).next() {
            self.fail(clause, Witness::Value(*m));
        }
    }

    fn constant(&mut self, clause: &str, values: &[i64], expect: Option<i64>) -> Option<i64> {
        let target = expect.or_else(|| values.first().copied())?;
        if let Some(i) = values.iter().position(|&c| c != target) {
            let w = self.edge_w(i);
            self.fail(clause, w);
            return None;
        }
        Some(target)
    }

    fn set_ordered(&mut self, clause: &str) {
        let side = self.side.expect("sided kind");
        let max_x = (0..self.p).filter(|&x| !side[x]).map(|x| self.v[x]).max();
        let min_y = (0..self.p).filter(|&x| side[x]).map(|x| self.v[x]).min();
        if let (Some(a), Some(b)) = (max_x, min_y) {
            if a >= b {
                let w = (0..self.p).find(|&x| !side[x] && self.v[x] == a).unwrap();
                self.fail(clause, Witness::Vertex(w));
            }
        }
    }

    fn matching_with_sum(&mut self, clause: &str, sum: i64, tree_required: bool) {
        if tree_required && !self.g.is_tree().is_tree {
            self.fail(clause, Witness::Graph);
            return;
        }
        let allowed: Vec<bool> = (0..self.q)
            .map(|i| {
                let (a, b) = self.ends(i);
                a + b == sum
            })
            .collect();
        if let Err(x) = perfect_matching(self.g, &allowed) {
            self.fail(clause, Witness::Vertex(x));
        }
    }

    fn repeated_nonadjacent(&mut self, clause: &str) {
        let found = (0..self.p).any(|x| {
            (x + 1..self.p).any(|y| self.v[x] == self.v[y] && !self.g.has_edge(x, y))
        });
        if !found {
            self.fail(clause, Witness::Graph);
        }
    }

    /// X colors are multiples of `d`, Y and edge colors lie in `k + dN`.
    fn frame(&mut self, k: i64, d: i64) {
        self.side_in("frame-x", false, |c| c >= 0 && c % d == 0);
        self.side_in("frame-y", true, |c| c >= k && (c - k) % d == 0);
        self.edges_in("frame-edge", |c| c >= k && (c - k) % d == 0);
    }

    fn proper_total(&mut self, clause: &str) {
        let edges = self.g.edges();
        if let Some(i) = (0..self.q).find(|&i| {
            let (a, b) = self.ends(i);
            a == b || self.e[i] == a || self.e[i] == b
        }) {
            let w = self.edge_w(i);
            self.fail(clause, w);
            return;
        }
        for i in 0..self.q {
            for j in i + 1..self.q {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if (a == c || a == d || b == c || b == d) && self.e[i] == self.e[j] {
                    let w = self.edge_w(j);
                    self.fail(clause, w);
                    return;
                }
            }
        }
    }
}

/// Kuhn matching restricted to `allowed` edges; `Err` names an unmatched vertex.
fn perfect_matching(g: &Graph, allowed: &[bool]) -> Result<(), usize> {
    let n = g.vertex_count();
    let Some(side) = g.bipartition() else { return Err(0) };
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if allowed[i] {
            let (l, r) = if side[u] { (v, u) } else { (u, v) };
            adj[l].push(r);
        }
    }
    let mut mate: Vec<Option<usize>> = vec![None; n];
    fn augment(l: usize, adj: &[Vec<usize>], mate: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &r in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if mate[r].is_none_or(|l2| augment(l2, adj, mate, seen)) {
                mate[r] = Some(l);
                return true;
            }
        }
        false
    }
    for l in (0..n).filter(|&x| !side[x]) {
        let mut seen = vec![false; n];
        if !augment(l, &adj, &mut mate, &mut seen) {
            return Err(l);
        }
    }
    if let Some(r) = (0..n).find(|&x| side[x] && mate[x].is_none()) {
        return Err(r);
    }
    Ok(())
}

fn check(kind: Kind, p: &P, seq: Option<&Seqs>, c: &mut Ctx) {
    use Kind::*;
    let (pv, q) = (c.p as i64, c.q as i64);
    let (k, d) = (p.k, p.d);
    let n = pv + q;
    match kind {
        Graceful | SetOrderedGraceful | StronglyGraceful | SetOrderedStronglyGraceful => {
            c.injective("B-1 injective");
            c.vertices_in("B-2 vertex-range", |x| (0..=q).contains(&x));
            c.edge_set_is("B-4 edge-color-set", &range(1, q));
            if matches!(kind, SetOrderedGraceful | SetOrderedStronglyGraceful) {
                c.set_ordered("B-6 set-ordered");
            }
            if matches!(kind, StronglyGraceful | SetOrderedStronglyGraceful) {
                c.matching_with_sum("B-7 matching", q, true);
            }
        }
        OddGraceful | SetOrderedOddGraceful | StronglyOddGraceful | SetOrderedStronglyOddGraceful => {
            c.injective("B-1 injective");
            c.vertices_in("B-3 vertex-range", |x| (0..=2 * q - 1).contains(&x));
            c.edge_set_is("B-5 edge-color-set", &odd_progression(0, 1, c.q));
            if matches!(kind, SetOrderedOddGraceful | SetOrderedStronglyOddGraceful) {
                c.set_ordered("B-6 set-ordered");
            }
            if matches!(kind, StronglyOddGraceful | SetOrderedStronglyOddGraceful) {
                c.matching_with_sum("B-8 matching", 2 * q - 1, true);
            }
        }
        EdgeMagicTotal | SuperEdgeMagicTotal => {
            c.total_bijection("bijection", 1, n);
            let sums = c.per_edge(|c, i| c.ends(i).0 + c.ends(i).1 + c.e[i]);
            c.constant("magic-constant", &sums, p.magic);
            if kind == SuperEdgeMagicTotal {
                c.vertex_set_is("super-vertex-set", &range(1, pv));
            }
        }
        Felicitous | SuperFelicitous => {
            c.injective("injective");
            c.vertices_in("vertex-range", |x| (0..=q).contains(&x));
            let e = c.e;
            c.edges_distinct("edge-distinct", e);
            if kind == SuperFelicitous {
                c.vertex_set_is("super-vertex-set", &range(1, pv));
            }
        }
        OddElegant => {
            c.injective("injective");
            c.vertices_in("vertex-range", |x| (0..=2 * q - 1).contains(&x));
            c.edge_set_is("edge-color-set", &odd_progression(0, 1, c.q));
        }
        KGraceful => {
            c.injective("injective");
            c.vertices_in("vertex-range", |x| (0..=q + k - 1).contains(&x));
            c.edge_set_is("edge-color-set", &range(k, q + k - 1));
        }
        EdgeMagicGraceful | SuperEdgeMagicGraceful => {
            c.total_bijection("bijection", 1, n);
            let vals = c.per_edge(|c, i| (c.ends(i).0 + c.ends(i).1 - c.e[i]).abs());
            c.constant("magic-constant", &vals, p.magic);
            if kind == SuperEdgeMagicGraceful {
                c.vertex_set_is("super-vertex-set", &range(1, pv));
            }
        }
        EdgeDifferenceTotal | SuperEdgeDifferenceTotal => {
            c.total_bijection("bijection", 1, n);
            let vals = c.per_edge(|c, i| c.e[i] + c.diff(i));
            c.constant("magic-constant", &vals, p.magic);
            if kind == SuperEdgeDifferenceTotal && c.q > 0 && c.p > 0 {
                let (vmin, vmax) = (*c.v.iter().min().unwrap(), *c.v.iter().max().unwrap());
                let (emin, emax) = (*c.e.iter().min().unwrap(), *c.e.iter().max().unwrap());
                if !(emax < vmin || vmax < emin) {
                    c.fail("super-separated", Witness::Graph);
                }
            }
        }
        PanEdgeMagicGraceful => {
            c.total_bijection("bijection", 1, n);
            let vals = c.per_edge(|c, i| (c.ends(i).0 + c.ends(i).1 - c.e[i]).abs());
            pan_constant(c, &vals, &vals.iter().map(|a| n - a).collect::<Vec<_>>(), p.magic);
        }
        PanEdgeDifferenceTotal => {
            c.total_bijection("bijection", 1, n);
            let first = c.per_edge(|c, i| c.e[i] + c.diff(i));
            let second = c.per_edge(|c, i| c.e[i] + n - c.diff(i));
            pan_constant(c, &first, &second, p.magic);
        }
        PanOddGraceful => {
            c.injective("B-1 injective");
            c.vertices_in("B-3 vertex-range", |x| (0..=2 * q - 1).contains(&x));
            if let Some(i) = (0..c.q).find(|&i| c.e[i] != c.diff(i) && c.e[i] != 2 * q - 1 - c.diff(i)) {
                let w = c.edge_w(i);
                c.fail("pan-edge-rule", w);
            }
            c.edge_set_is("B-5 edge-color-set", &odd_progression(0, 1, c.q));
        }
        SixC => six_c(c),
        TotallyGraceful | SuperTotallyGraceful | SetOrderedTotallyGraceful
        | SuperSetOrderedTotallyGraceful => {
            c.total_bijection("bijection", 1, n);
            if matches!(kind, SuperTotallyGraceful | SuperSetOrderedTotallyGraceful) {
                c.edge_set_is("super-edge-set", &range(1, q));
            }
            if matches!(kind, SetOrderedTotallyGraceful | SuperSetOrderedTotallyGraceful) {
                c.set_ordered("set-ordered");
            }
        }
        KdGraceful | KdArithmetic | KdHarmonious => {
            c.vertices_in("vertex-range", |x| (0..=k + (q - 1) * d).contains(&x));
            c.injective("injective");
            c.edge_set_is("edge-color-set", &progression(k, d, c.q));
        }
        KdEdgeAntimagicTotal | SuperKdEdgeAntimagicTotal => {
            c.total_bijection("bijection", 1, n);
            let sums = c.per_edge(|c, i| c.ends(i).0 + c.ends(i).1 + c.e[i]);
            c.values_are("edge-sum-set", &sums, &progression(k, d, c.q));
            if kind == SuperKdEdgeAntimagicTotal {
                c.vertex_set_is("super-vertex-set", &range(1, pv));
            }
        }
        KdElegant => {
            c.side_in("x-range", false, |x| x >= 0 && x % d == 0 && x <= (q - 1) * d);
            c.side_in("y-range", true, |y| y >= k && (y - k) % d == 0 && y <= k + (q - 1) * d);
            c.edge_set_is("edge-color-set", &progression(k, d, c.q));
        }
        KdOddGraceful => {
            c.vertices_in("vertex-range", |x| (0..=k + (2 * q - 1) * d).contains(&x));
            c.injective("injective");
            c.edge_set_is("edge-color-set", &odd_progression(k, d, c.q));
        }
        KdOddElegant => {
            c.vertices_in("vertex-range", |x| (0..=k + (2 * q - 1) * d).contains(&x));
            c.injective("injective");
            c.edge_set_is("edge-color-set", &odd_progression(0, d, c.q));
        }
        OddElegantColoring => {
            c.vertices_in("vertex-range", |x| (0..=2 * q - 1).contains(&x));
            c.edge_set_is("edge-color-set", &odd_progression(0, 1, c.q));
            c.repeated_nonadjacent("repeated-color");
        }
        KdOddElegantColoring => {
            c.vertices_in("vertex-range", |x| (0..=k + (2 * q - 1) * d).contains(&x));
            let mut target = odd_progression(0, d, c.q.saturating_sub(1));
            target.insert(0);
            c.edge_set_is("edge-color-set", &target);
            c.repeated_nonadjacent("repeated-color");
        }
        KdEdgeMagicTotal => {
            let top = k + (2 * q - 1) * d;
            c.vertices_in("color-range", |x| (0..=top).contains(&x));
            c.edges_in("color-range", |x| (0..=top).contains(&x));
            c.injective("injective");
            let sums = c.per_edge(|c, i| c.ends(i).0 + c.ends(i).1 + c.e[i]);
            c.constant("magic-constant", &sums, p.magic);
        }
        KdGracefulDifference => {
            c.frame(k, d);
            c.injective("injective");
            let vals = c.per_edge(|c, i| (c.diff(i) - c.e[i]).abs());
            c.constant("magic-constant", &vals, p.magic);
        }
        KdFelicitousDifference => {
            c.frame(k, d);
            c.injective("injective");
            let vals = c.per_edge(|c, i| (c.ends(i).0 + c.ends(i).1 - c.e[i]).abs());
            c.constant("magic-constant", &vals, p.magic);
        }
        KdGracefullyTotal | KdStronglyGracefullyTotal => {
            c.frame(k, d);
            c.side_in("frame-y", true, |y| y <= k + (q - 1) * d);
            c.edge_set_is("edge-color-set", &progression(k, d, c.q));
            if kind == KdStronglyGracefullyTotal {
                c.matching_with_sum("strong-matching", k + (q - 1) * d, false);
            }
        }
        KdOddGracefullyTotal | KdStronglyOddGracefullyTotal => {
            c.frame(k, d);
            c.side_in("frame-y", true, |y| y <= k + (2 * q - 1) * d);
            c.edge_set_is("edge-color-set", &odd_progression(k, d, c.q));
            if kind == KdStronglyOddGracefullyTotal {
                c.matching_with_sum("strong-matching", k + (2 * q - 1) * d, false);
            }
        }
        KdEdgeAntimagicTotalColoring => {
            let a = p.a;
            c.side_in("frame-x", false, |x| x >= 0 && x % d == 0);
            let band = progression(k + a * d, d, (2 * (a + q - 1) + 1) as usize);
            c.side_in("frame-y", true, |y| band.contains(&y));
            c.edges_in("frame-edge", |e| band.contains(&e));
            let sums = c.per_edge(|c, i| c.ends(i).0 + c.ends(i).1 + c.e[i]);
            c.values_are("edge-sum-set", &sums, &progression(2 * k + 2 * a * d, 2 * d, c.q));
        }
        KdHarmoniousTotal => {
            c.frame(k, d);
            c.edge_set_is("edge-color-set", &progression(k, d, c.q));
        }
        KdOddElegantTotal => {
            c.frame(k, d);
            c.edge_set_is("edge-color-set", &odd_progression(k, d, c.q));
        }
        StronglyEdgeMagicKdTotal | EdgeMagicKdTotal => {
            c.frame(k, d);
            let sums = c.per_edge(|c, i| c.ends(i).0 + c.ends(i).1 + c.e[i]);
            c.constant("magic-constant", &sums, p.magic);
            if kind == StronglyEdgeMagicKdTotal {
                c.side_in("frame-y", true, |y| y <= k + (q - 1) * d);
                c.edge_set_is("edge-color-set", &progression(k, d, c.q));
            }
        }
        StronglyEdgeDifferenceKdTotal | EdgeDifferenceKdTotal => {
            c.frame(k, d);
            let vals = c.per_edge(|c, i| c.e[i] + c.diff(i));
            c.constant("magic-constant", &vals, p.magic);
            if kind == StronglyEdgeDifferenceKdTotal {
                c.edge_set_is("edge-color-set", &progression(k, d, c.q));
            }
        }
        StronglyFelicitousDifferenceKdTotal | FelicitousDifferenceKdTotal => {
            c.frame(k, d);
            let vals = c.per_edge(|c, i| (c.ends(i).0 + c.ends(i).1 - c.e[i]).abs());
            c.constant("magic-constant", &vals, p.magic);
            if kind == StronglyFelicitousDifferenceKdTotal {
                c.edge_set_is("edge-color-set", &progression(k, d, c.q));
            }
        }
        StronglyGracefulDifferenceKdTotal | GracefulDifferenceKdTotal => {
            c.frame(k, d);
            let vals = c.per_edge(|c, i| (c.diff(i) - c.e[i]).abs());
            c.constant("magic-constant", &vals, p.magic);
            if kind == StronglyGracefulDifferenceKdTotal {
                c.edge_set_is("edge-color-set", &progression(k, d, c.q));
            }
        }
        GracefullyTotalColoring | SetOrderedGracefullyTotalColoring => {
            if c.p >= 2 && c.q == c.p * (c.p - 1) / 2 {
                c.fail("not-complete", Witness::Graph);
            }
            c.vertices_in("color-range", |x| x >= 1);
            let distinct: BTreeSet<i64> = c.v.iter().copied().collect();
            if distinct.len() >= c.p {
                c.fail("repeated-vertex-color", Witness::Graph);
            }
            c.edge_set_is("edge-color-set", &range(1, q));
            if kind == SetOrderedGracefullyTotalColoring {
                c.set_ordered("set-ordered");
            }
        }
        GracefullyTotalSequence | ProperGracefullyTotalSequence => {
            let (a_set, b_set) = seq.expect("sequences resolved");
            c.vertices_in("vertex-in-A", |x| a_set.contains(&x));
            if let Some(i) = (0..c.q).find(|&i| c.diff(i) == 0) {
                let w = c.edge_w(i);
                c.fail("proper-vertices", w);
            }
            c.edge_set_is("edge-color-set", b_set);
            if kind == ProperGracefullyTotalSequence {
                if let Some(i) = (0..c.q).find(|&i| {
                    let (a, b) = c.ends(i);
                    c.e[i] == a || c.e[i] == b
                }) {
                    let w = c.edge_w(i);
                    c.fail("proper-edges", w);
                }
            }
        }
        EdgeMagicTotalColoring | GracefulDifferenceTotalColoring | EdgeDifferenceTotalColoring
        | FelicitousDifferenceTotalColoring => {
            c.vertices_in("color-range", |x| x >= 1);
            c.edges_in("color-range", |x| x >= 1);
            let vals = match kind {
                EdgeMagicTotalColoring => c.per_edge(|c, i| c.ends(i).0 + c.ends(i).1 + c.e[i]),
                GracefulDifferenceTotalColoring => c.per_edge(|c, i| (c.diff(i) - c.e[i]).abs()),
                EdgeDifferenceTotalColoring => c.per_edge(|c, i| c.e[i] + c.diff(i)),
                _ => c.per_edge(|c, i| (c.ends(i).0 + c.ends(i).1 - c.e[i]).abs()),
            };
            c.constant("magic-constant", &vals, p.magic);
        }
        ParamEdgeMagic | ParamEdgeDifference | ParamFelicitousDifference | ParamGracefulDifference => {
            c.vertices_in("color-range", |x| x >= 1);
            c.edges_in("color-range", |x| x >= 1);
            c.proper_total("proper");
            let (a, b, cc) = (p.a, p.b, p.c);
            let vals = c.per_edge(|c, i| {
                let (x, y) = c.xy_ends(i);
                let e = c.e[i];
                match kind {
                    ParamEdgeMagic => a * x + b * y + cc * e,
                    ParamEdgeDifference => cc * e + (a * x - b * y).abs(),
                    ParamFelicitousDifference => (a * x + b * y - cc * e).abs(),
                    _ => ((a * x - b * y).abs() - cc * e).abs(),
                }
            });
            c.constant("magic-constant", &vals, p.magic);
        }
        KlEdgeDifferenceMagically | SuperKlEdgeDifferenceMagically => {
            c.total_bijection("bijection", 1, n);
            if let Some(i) = (0..c.q).find(|&i| c.diff(i) != k + p.lambda * c.e[i]) {
                let w = c.edge_w(i);
                c.fail("magic-identity", w);
            }
            if kind == SuperKlEdgeDifferenceMagically {
                c.vertex_set_is("super-vertex-set", &range(1, pv));
            }
        }
        KlMagicTotal => {
            c.total_bijection("bijection", 1, n);
            if let Some(i) = (0..c.q).find(|&i| c.ends(i).0 + c.ends(i).1 != k + p.lambda * c.e[i]) {
                let w = c.edge_w(i);
                c.fail("magic-identity", w);
            }
        }
        TotallyKdSequential => {
            c.total_onto("total-color-set", &progression(k, d, c.p + c.q ));
        }
        KdEdgeDifferenceMagically => {
            c.side_in("x-range", false, |x| x >= 0 && x % d == 0);
            let ys = progression(k, d, c.q);
            c.side_in("y-range", true, |y| ys.contains(&y));
            if let Some(i) = (0..c.q).find(|&i| {
                let (x, y) = c.xy_ends(i);
                (y - x).abs() != p.kstar + p.lambda * c.e[i]
            }) {
                let w = c.edge_w(i);
                c.fail("magic-identity", w);
            }
        }
        KdGracefullyEImage => {
            c.side_in("x-range", false, |x| x >= 0 && x % d == 0);
            let ys = progression(k, d, c.q);
            c.side_in("y-range", true, |y| ys.contains(&y));
            let mut band = progression(k, d, c.q);
            band.extend(progression(k, -d, c.q));
            c.edges_in("edge-range", |e| band.contains(&e));
            let e = c.e;
            c.edges_distinct("edge-distinct", e);
        }
    }
}

/// Each edge may satisfy either branch; one constant must serve all edges.
fn pan_constant(c: &mut Ctx, first: &[i64], second: &[i64], expect: Option<i64>) {
    if first.is_empty() {
        return;
    }
    let candidates = match expect {
        Some(k) => vec![k],
        None => vec![first[0], second[0]],
    };
    let fits = |k: i64| (0..first.len()).find(|&i| first[i] != k && second[i] != k);
    if candidates.iter().any(|&k| fits(k).is_none()) {
        return;
    }
    let i = fits(candidates[0]).unwrap();
    let w = c.edge_w(i);
    c.fail("pan-magic-constant", w);
}

fn six_c(c: &mut Ctx) {
    let n = (c.p + c.q) as i64;
    c.total_bijection("6C bijection", 1, n);
    let vals = c.per_edge(|c, i| c.e[i] + c.diff(i));
    c.constant("6C-i e-magic", &vals, None);
    let diffs = c.per_edge(|c, i| c.diff(i));
    for i in 0..c.q {
        let ok = diffs.iter().any(|&dj| c.e[i] == dj || c.e[i] == 2 * n - dj);
        if !ok {
            let w = c.edge_w(i);
            c.fail("6C-ii ee-difference", w);
        }
    }
    let s: Vec<i64> = (0..c.q).map(|i| diffs[i] - c.e[i]).collect();
    if !s.is_empty() {
        let unmatched = |kp: i64| -> Vec<usize> {
            (0..s.len())
                .filter(|&i| !s.iter().any(|&sj| s[i] + sj == kp || 2 * n + s[i] + sj == kp))
                .collect()
        };
        let mut best: Option<Vec<usize>> = None;
        for &sj in &s {
            for kp in [s[0] + sj, 2 * n + s[0] + sj] {
                let u = unmatched(kp);
                if best.as_ref().is_none_or(|b| u.len() < b.len()) {
                    best = Some(u);
                }
            }
        }
        for i in best.unwrap_or_default() {
            let w = c.edge_w(i);
            c.fail("6C-iii ee-balanced", w);
        }
    }
    let vs: BTreeSet<i64> = c.v.iter().copied().collect();
    let es: BTreeSet<i64> = c.e.iter().copied().collect();
    let ordered = (c.q == 0 || c.p == 0)
        || vs.first() > es.last()
        || vs.last() < es.first()
        || vs.is_subset(&es)
        || es.is_subset(&vs)
        || (vs.iter().all(|x| x % 2 != 0) && es.iter().all(|x| x % 2 == 0));
    if !ordered {
        c.fail("6C-iv ev-ordered", Witness::Graph);
    }
    let singular = (n + 1) / 2;
    if c.q > 0 {
        let unmatched = |kpp: i64| -> Vec<Witness> {
            let mut out = Vec::new();
            for i in 0..c.q {
                if !c.v.iter().any(|&w| c.e[i] + w == kpp) {
                    out.push(c.edge_w(i));
                }
            }
            for (z, &fz) in c.v.iter().enumerate() {
                if fz != singular && !c.e.iter().any(|&e| fz + e == kpp) {
                    out.push(Witness::Vertex(z));
                }
            }
            out
        };
        let mut best: Option<Vec<Witness>> = None;
        for &w in c.v {
            let u = unmatched(c.e[0] + w);
            if best.as_ref().is_none_or(|b| u.len() < b.len()) {
                best = Some(u);
            }
        }
        for w in best.unwrap_or_default() {
            c.fail("6C-v ve-matching", w);
        }
    }
    let side = c.side.expect("sided kind");
    let xs: Vec<i64> = (0..c.p).filter(|&x| !side[x]).map(|x| c.v[x]).collect();
    let ys: Vec<i64> = (0..c.p).filter(|&x| side[x]).map(|x| c.v[x]).collect();
    if !xs.is_empty() && !ys.is_empty() {
        let (xmax, xmin) = (*xs.iter().max().unwrap(), *xs.iter().min().unwrap());
        let (ymax, ymin) = (*ys.iter().max().unwrap(), *ys.iter().min().unwrap());
        if !(xmax < ymin || xmin > ymax) {
            c.fail("6C-vi set-ordered", Witness::Graph);
        }
    }
}

/// Relations between two labelings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchKind {
    TwinOddGraceful,
    VImage(Option<i64>),
    EImage(Option<i64>),
    KdHarmoniousImage { k: i64, d: i64 },
    SixCComplementary,
    ReciprocalInverse,
}

impl FromStr for MatchKind {
    type Err = LabelingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LabelingError::InvalidParam("matching".into(), s.to_string());
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let num = |a: &str| a.trim().parse::<i64>().map_err(|_| bad());
        Ok(match (head, arg) {
            ("twin-odd-graceful", None) => MatchKind::TwinOddGraceful,
            ("v-image", a) => MatchKind::VImage(a.map(num).transpose()?),
            ("e-image", a) => MatchKind::EImage(a.map(num).transpose()?),
            ("kd-harmonious-image", Some(a)) => {
                let (k, d) = a.split_once(',').ok_or_else(bad)?;
                MatchKind::KdHarmoniousImage { k: num(k)?, d: num(d)? }
            }
            ("6c-complementary", None) => MatchKind::SixCComplementary,
            ("reciprocal-inverse", None) => MatchKind::ReciprocalInverse,
            _ => return Err(bad()),
        })
    }
}

fn same_graph(a: &Graph, b: &Graph) -> Result<(), LabelingError> {
    if a.vertex_count() != b.vertex_count() || a.edges() != b.edges() {
        return Err(LabelingError::Precondition("image matchings need the same graph".into()));
    }
    Ok(())
}

/// Check a pair of labelings against a matching definition.
pub fn verify_matching(
    ga: &Graph,
    la: &Labeling,
    gb: &Graph,
    lb: &Labeling,
    kind: MatchKind,
) -> Result<VerificationReport, LabelingError> {
    la.check_shape(ga)?;
    lb.check_shape(gb)?;
    let mut out = Vec::new();
    let fail = |out: &mut Vec<Violation>, clause: &str, w: Witness| {
        out.push(Violation { clause: clause.to_string(), witness: w })
    };
    match kind {
        MatchKind::TwinOddGraceful => {
            if ga.edge_count() != gb.edge_count() {
                return Err(LabelingError::Precondition("twin graphs need equal edge counts".into()));
            }
            let q = ga.edge_count() as i64;
            let first = verify_as(ga, la, Kind::OddGraceful)?;
            out.extend(first.violations.into_iter().map(|v| Violation { clause: format!("i {}", v.clause), ..v }));
            let eb: Vec<i64> = gb.edges().iter().map(|&(u, v)| (lb.vertex[u] - lb.vertex[v]).abs()).collect();
            let got: BTreeSet<i64> = eb.iter().copied().collect();
            let target = odd_progression(0, 1, gb.edge_count());
            if got != target || got.len() != eb.len() {
                fail(&mut out, "ii edge-color-set", Witness::Graph);
            }
            for (x, &c) in la.vertex.iter().chain(&lb.vertex).enumerate() {
                if !(0..=2 * q - 1).contains(&c) {
                    let w = if x < la.vertex.len() { x } else { x - la.vertex.len() };
                    fail(&mut out, "iii vertex-union-range", Witness::Vertex(w));
                    break;
                }
            }
        }
        MatchKind::VImage(expect) => {
            same_graph(ga, gb)?;
            let sums: Vec<i64> = la.vertex.iter().zip(&lb.vertex).map(|(a, b)| a + b).collect();
            if let Some(target) = expect.or_else(|| sums.first().copied()) {
                for (x, &s) in sums.iter().enumerate() {
                    if s != target {
                        fail(&mut out, "v-image coefficient", Witness::Vertex(x));
                    }
                }
            }
        }
        MatchKind::EImage(expect) => {
            same_graph(ga, gb)?;
            let (ea, eb) = (la.total_colors(ga)?, lb.total_colors(gb)?);
            let sums: Vec<i64> = ea.iter().zip(&eb).map(|(a, b)| a + b).collect();
            if let Some(target) = expect.or_else(|| sums.first().copied()) {
                for (i, &s) in sums.iter().enumerate() {
                    if s != target {
                        let (u, v) = ga.edges()[i];
                        fail(&mut out, "e-image coefficient", Witness::Edge(u, v));
                    }
                }
            }
        }
        MatchKind::KdHarmoniousImage { k, d } => {
            same_graph(ga, gb)?;
            let (ea, eb) = (la.total_colors(ga)?, lb.total_colors(gb)?);
            let target = 2 * k + (ga.edge_count() as i64 - 1) * d;
            for i in 0..ea.len() {
                if ea[i] + eb[i] != target {
                    let (u, v) = ga.edges()[i];
                    fail(&mut out, "harmonious-image sum", Witness::Edge(u, v));
                }
            }
        }
        MatchKind::SixCComplementary | MatchKind::ReciprocalInverse => {
            let (ea, eb) = (la.total_colors(ga)?, lb.total_colors(gb)?);
            let va: BTreeSet<i64> = la.vertex.iter().copied().collect();
            let vb: BTreeSet<i64> = lb.vertex.iter().copied().collect();
            let sa: BTreeSet<i64> = ea.iter().copied().collect();
            let sb: BTreeSet<i64> = eb.iter().copied().collect();
            let star: BTreeSet<i64> = va.intersection(&vb).copied().collect();
            if kind == MatchKind::SixCComplementary {
                if ga.vertex_count() != gb.vertex_count() || ga.edge_count() != gb.edge_count() {
                    return Err(LabelingError::Precondition("trees need equal order and size".into()));
                }
                for (tag, g, l) in [("A", ga, la), ("B", gb, lb)] {
                    let r = verify_as(g, l, Kind::SixC)?;
                    out.extend(r.violations.into_iter().map(|v| Violation { clause: format!("{tag}: {}", v.clause), ..v }));
                }
                let z0 = (ga.vertex_count() + ga.edge_count() + 1) as i64 / 2;
                if star != BTreeSet::from([z0]) {
                    fail(&mut out, "common-vertex-color", Witness::Value(z0));
                }
            } else {
                if ga.vertex_count() != gb.edge_count() || ga.edge_count() != gb.vertex_count() {
                    return Err(LabelingError::Precondition("need a (p,q)-graph and a (q,p)-graph".into()));
                }
                if star.is_empty() {
                    fail(&mut out, "common-vertex-color", Witness::Graph);
                }
            }
            let vb_rest: BTreeSet<i64> = vb.difference(&star).copied().collect();
            let va_rest: BTreeSet<i64> = va.difference(&star).copied().collect();
            if let Some(c) = sa.symmetric_difference(&vb_rest).next() {
                fail(&mut out, "edges-vs-vertices", Witness::Value(*c));
            }
            if let Some(c) = va_rest.symmetric_difference(&sb).next() {
                fail(&mut out, "vertices-vs-edges", Witness::Value(*c));
            }
        }
    }
    Ok(VerificationReport::from_violations(out))
}
