//! Degree-sequence realizability, the degree-sequence operation algebra,
//! colored degree-sequence groups and degree-sequence lattices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub const REALIZE_LIMIT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegSeqError {
    #[error("sequence of length {0} exceeds the brute-force limit {1}")]
    TooLong(usize, usize),
    #[error("index {0} out of range for length {1}")]
    Index(usize, usize),
    #[error("invalid operation arguments: {0}")]
    Args(String),
    #[error("modulus must be at least 1")]
    Modulus,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Erdős–Gallai test; the input order is irrelevant.
pub fn erdos_gallai(d: &[usize]) -> bool {
    let mut s = d.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    let n = s.len();
    let total: usize = s.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let mut prefix = 0usize;
    for k in 1..=n {
        prefix += s[k - 1];
        let tail: usize = s[k..].iter().map(|&x| x.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

fn check_len(d: &[usize]) -> Result<(), DegSeqError> {
    if d.len() > REALIZE_LIMIT {
        Err(DegSeqError::TooLong(d.len(), REALIZE_LIMIT))
    } else {
        Ok(())
    }
}

/// Some simple graph whose vertex `i` has degree `d[i]`.
pub fn realize_brute(d: &[usize]) -> Result<Option<Graph>, DegSeqError> {
    check_len(d)?;
    let mut found = None;
    search_realizations(d, &mut |edges| {
        found = Some(Graph::new(d.len(), edges.iter().copied()).expect("simple by construction"));
        false
    });
    Ok(found)
}

/// Every labeled simple graph whose vertex `i` has degree `d[i]`.
pub fn realize_all(d: &[usize]) -> Result<Vec<Graph>, DegSeqError> {
    check_len(d)?;
    let mut out = Vec::new();
    search_realizations(d, &mut |edges| {
        out.push(Graph::new(d.len(), edges.iter().copied()).expect("simple by construction"));
        true
    });
    Ok(out)
}

/// Realizations counted up to isomorphism.
pub fn realize_unlabeled(d: &[usize]) -> Result<Vec<Graph>, DegSeqError> {
    let mut classes: Vec<Graph> = Vec::new();
    for g in realize_all(d)? {
        let fresh = classes.iter().all(|h| !h.isomorphic(&g).expect("within bound"));
        if fresh {
            classes.push(g);
        }
    }
    Ok(classes)
}

/// Vertex by vertex, pick the neighbours among later vertices.
/// The callback returns `false` to stop.
fn search_realizations(d: &[usize], visit: &mut dyn FnMut(&[(usize, usize)]) -> bool) {
    let n = d.len();
    let mut residual = d.to_vec();
    let mut edges = Vec::new();
    fn pick(
        v: usize,
        start: usize,
        n: usize,
        residual: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize)>,
        visit: &mut dyn FnMut(&[(usize, usize)]) -> bool,
    ) -> bool {
        if v == n {
            return visit(edges);
        }
        if residual[v] == 0 {
            return pick(v + 1, v + 2, n, residual, edges, visit);
        }
        let available = (start..n).filter(|&w| residual[w] > 0).count();
        if available < residual[v] {
            return true;
        }
        for w in start..n {
            if residual[w] == 0 {
                continue;
            }
            residual[v] -= 1;
            residual[w] -= 1;
            edges.push((v, w));
            let cont = pick(v, w + 1, n, residual, edges, visit);
            edges.pop();
            residual[v] += 1;
            residual[w] += 1;
            if !cont {
                return false;
            }
        }
        true
    }
    if d.iter().any(|&x| x >= n.max(1)) && n > 0 {
        return;
    }
    pick(0, 1, n, &mut residual, &mut edges, visit);
}

/// Output of a sequence operation: the sequence in construction order, its
/// non-increasing rearrangement, and `sorted[k] == raw[positions[k]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsResult {
    pub raw: Vec<usize>,
    pub sorted: Vec<usize>,
    pub positions: Vec<usize>,
    pub graphical: bool,
}

impl DsResult {
    pub fn from_raw(raw: Vec<usize>) -> Self {
        let mut positions: Vec<usize> = (0..raw.len()).collect();
        positions.sort_by(|&a, &b| raw[b].cmp(&raw[a]).then(a.cmp(&b)));
        let sorted = positions.iter().map(|&i| raw[i]).collect();
        let graphical = erdos_gallai(&raw);
        DsResult { raw, sorted, positions, graphical }
    }
}

/// The degree-sequence operations. Component indices are 0-based positions
/// in the sequences as given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum DsOp {
    /// Append component `k` and add one to `k` existing components
    /// (the named ones, or the `k` largest).
    Increase { k: usize, positions: Option<Vec<usize>> },
    /// Remove component `index` and subtract one from that many others.
    Decrease { index: usize, positions: Option<Vec<usize>> },
    Union,
    /// Multiset difference `d - d'`.
    Subtract,
    /// `d ⊙_s d'`: pair components and add them; default pairs the first `s` of each.
    ComponentCoincide { s: usize, pairs: Option<Vec<(usize, usize)>> },
    /// `d ⊙_m d'` with positional pairing, `m = len(d')`.
    DirectSum,
    /// Replace the named components by the given parts.
    Decompose { parts: Vec<(usize, Vec<usize>)> },
    /// Replace each group of components by its sum.
    Compound { groups: Vec<Vec<usize>> },
    /// `a1 + a2` replaces the first two components.
    SelfContraction,
    /// Coincide `d[i]` with `d'[j]`.
    DegreeCoincide { i: usize, j: usize },
    /// Join `d[i]` and `d'[j]` by a new edge.
    DegreeJoin { i: usize, j: usize },
    Complement,
}

impl DsOp {
    pub fn is_binary(&self) -> bool {
        matches!(
            self,
            DsOp::Union
                | DsOp::Subtract
                | DsOp::ComponentCoincide { .. }
                | DsOp::DirectSum
                | DsOp::DegreeCoincide { .. }
                | DsOp::DegreeJoin { .. }
        )
    }
}

fn index(i: usize, len: usize) -> Result<usize, DegSeqError> {
    if i < len {
        Ok(i)
    } else {
        Err(DegSeqError::Index(i, len))
    }
}

fn distinct(ix: &[usize], len: usize) -> Result<(), DegSeqError> {
    let mut seen = vec![false; len];
    for &i in ix {
        index(i, len)?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(DegSeqError::Args(format!("component {i} named twice")));
        }
    }
    Ok(())
}

/// Indices of the `k` largest components, earliest first among ties.
fn largest(d: &[usize], k: usize, skip: Option<usize>) -> Vec<usize> {
    let mut ix: Vec<usize> = (0..d.len()).filter(|&i| Some(i) != skip).collect();
    ix.sort_by(|&a, &b| d[b].cmp(&d[a]).then(a.cmp(&b)));
    ix.truncate(k);
    ix
}

pub fn ds_transform(d: &[usize], other: Option<&[usize]>, op: &DsOp) -> Result<DsResult, DegSeqError> {
    let second = || -> Result<&[usize], DegSeqError> {
        other.ok_or_else(|| DegSeqError::Args("operation needs a second sequence".into()))
    };
    if !op.is_binary() && other.is_some() {
        return Err(DegSeqError::Args("operation takes one sequence".into()));
    }
    let raw = match op {
        DsOp::Increase { k, positions } => {
            if *k > d.len() {
                return Err(DegSeqError::Args(format!("k = {k} exceeds length {}", d.len())));
            }
            let pos = match positions {
                Some(p) => {
                    if p.len() != *k {
                        return Err(DegSeqError::Args(format!("need {k} positions")));
                    }
                    distinct(p, d.len())?;
                    p.clone()
                }
                None => largest(d, *k, None),
            };
            let mut out = d.to_vec();
            for i in pos {
                out[i] += 1;
            }
            out.push(*k);
            out
        }
        DsOp::Decrease { index: at, positions } => {
            index(*at, d.len())?;
            let k = d[*at];
            let pos = match positions {
                Some(p) => {
                    if p.len() != k || p.contains(at) {
                        return Err(DegSeqError::Args(format!("need {k} positions other than {at}")));
                    }
                    distinct(p, d.len())?;
                    p.clone()
                }
                None => {
                    if k > d.len() - 1 {
                        return Err(DegSeqError::Args("too few components to decrease".into()));
                    }
                    largest(d, k, Some(*at))
                }
            };
            let mut out = d.to_vec();
            for &i in &pos {
                if out[i] == 0 {
                    return Err(DegSeqError::Args(format!("component {i} is already 0")));
                }
                out[i] -= 1;
            }
            out.remove(*at);
            out
        }
        DsOp::Union => d.iter().chain(second()?).copied().collect(),
        DsOp::Subtract => {
            let mut rest = second()?.to_vec();
            let mut out = Vec::new();
            for &a in d {
                match rest.iter().position(|&b| b == a) {
                    Some(p) => {
                        rest.swap_remove(p);
                    }
                    None => out.push(a),
                }
            }
            out
        }
        DsOp::ComponentCoincide { s, pairs } => {
            let e = second()?;
            if *s < 1 || *s > d.len().min(e.len()) {
                return Err(DegSeqError::Args(format!("s = {s} outside [1, min lengths]")));
            }
            let pairs = match pairs {
                Some(p) => {
                    if p.len() != *s {
                        return Err(DegSeqError::Args(format!("need {s} pairs")));
                    }
                    p.clone()
                }
                None => (0..*s).map(|i| (i, i)).collect(),
            };
            coincide_pairs(d, e, &pairs)?
        }
        DsOp::DirectSum => {
            let e = second()?;
            if e.len() > d.len() || e.is_empty() {
                return Err(DegSeqError::Args("direct sum needs 1 <= len(d') <= len(d)".into()));
            }
            let pairs: Vec<(usize, usize)> = (0..e.len()).map(|i| (i, i)).collect();
            let sums: Vec<usize> = pairs.iter().map(|&(i, j)| d[i] + e[j]).collect();
            sums.into_iter().chain(d[e.len()..].iter().copied()).collect()
        }
        DsOp::Decompose { parts } => {
            let ix: Vec<usize> = parts.iter().map(|p| p.0).collect();
            distinct(&ix, d.len())?;
            for (i, ps) in parts {
                if ps.iter().sum::<usize>() != d[*i] || ps.is_empty() {
                    return Err(DegSeqError::Args(format!("parts of component {i} must sum to {}", d[*i])));
                }
            }
            let mut out: Vec<usize> =
                (0..d.len()).filter(|i| !ix.contains(i)).map(|i| d[i]).collect();
            for (_, ps) in parts {
                out.extend(ps);
            }
            out
        }
        DsOp::Compound { groups } => {
            let all: Vec<usize> = groups.iter().flatten().copied().collect();
            distinct(&all, d.len())?;
            if groups.iter().any(Vec::is_empty) {
                return Err(DegSeqError::Args("empty group".into()));
            }
            let mut out: Vec<usize> = groups.iter().map(|g| g.iter().map(|&i| d[i]).sum()).collect();
            out.extend((0..d.len()).filter(|i| !all.contains(i)).map(|i| d[i]));
            out
        }
        DsOp::SelfContraction => {
            if d.len() < 2 {
                return Err(DegSeqError::Args("self-contraction needs length >= 2".into()));
            }
            std::iter::once(d[0] + d[1]).chain(d[2..].iter().copied()).collect()
        }
        DsOp::DegreeCoincide { i, j } => {
            let e = second()?;
            index(*i, d.len())?;
            index(*j, e.len())?;
            let mut out: Vec<usize> = d.iter().enumerate().filter(|(k, _)| k != i).map(|(_, &a)| a).collect();
            out.extend(e.iter().enumerate().filter(|(k, _)| k != j).map(|(_, &c)| c));
            out.push(d[*i] + e[*j]);
            out
        }
        DsOp::DegreeJoin { i, j } => {
            let e = second()?;
            index(*i, d.len())?;
            index(*j, e.len())?;
            let mut out = d.to_vec();
            out[*i] += 1;
            let mut tail = e.to_vec();
            tail[*j] += 1;
            out.extend(tail);
            out
        }
        DsOp::Complement => {
            let n = d.len();
            if d.iter().any(|&a| a + 1 > n) {
                return Err(DegSeqError::Args("component exceeds n - 1".into()));
            }
            d.iter().map(|&a| n - 1 - a).collect()
        }
    };
    Ok(DsResult::from_raw(raw))
}

fn coincide_pairs(d: &[usize], e: &[usize], pairs: &[(usize, usize)]) -> Result<Vec<usize>, DegSeqError> {
    let left: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let right: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    distinct(&left, d.len())?;
    distinct(&right, e.len())?;
    let mut out: Vec<usize> = pairs.iter().map(|&(i, j)| d[i] + e[j]).collect();
    out.extend((0..d.len()).filter(|i| !left.contains(i)).map(|i| d[i]));
    out.extend((0..e.len()).filter(|j| !right.contains(j)).map(|j| e[j]));
    Ok(out)
}

/// Degree sequence paired with a color per component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdsMatrix {
    pub degrees: Vec<usize>,
    pub colors: Vec<i64>,
}

impl CdsMatrix {
    pub fn new(degrees: Vec<usize>, colors: Vec<i64>) -> Result<Self, DegSeqError> {
        if degrees.len() != colors.len() {
            return Err(DegSeqError::Args("degrees and colors differ in length".into()));
        }
        Ok(CdsMatrix { degrees, colors })
    }
}

/// Shifted colorings `f_r(a) = ((f(a) - 1 + r) mod M) + 1` for `r` in `0..M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdsGroup {
    pub base: CdsMatrix,
    pub modulus: i64,
}

pub fn shift_color(c: i64, r: i64, m: i64) -> i64 {
    (c - 1 + r).rem_euclid(m) + 1
}

/// Group on the shifts of `base`; the modulus defaults to the largest degree.
pub fn cds_group(base: CdsMatrix, modulus: Option<i64>) -> Result<CdsGroup, DegSeqError> {
    let m = modulus.unwrap_or_else(|| base.degrees.iter().copied().max().unwrap_or(0) as i64);
    if m < 1 {
        return Err(DegSeqError::Modulus);
    }
    Ok(CdsGroup { base, modulus: m })
}

impl CdsGroup {
    pub fn element(&self, r: usize) -> Result<Vec<i64>, DegSeqError> {
        self.check(r)?;
        Ok(self.base.colors.iter().map(|&c| shift_color(c, r as i64, self.modulus)).collect())
    }

    fn check(&self, r: usize) -> Result<(), DegSeqError> {
        if (r as i64) < self.modulus {
            Ok(())
        } else {
            Err(DegSeqError::Index(r, self.modulus as usize))
        }
    }

    /// `λ = i + j - k (mod M)` under the zero `k`.
    pub fn add(&self, i: usize, j: usize, zero: usize) -> Result<usize, DegSeqError> {
        self.check(i)?;
        self.check(j)?;
        self.check(zero)?;
        Ok((i as i64 + j as i64 - zero as i64).rem_euclid(self.modulus) as usize)
    }

    /// Componentwise identity `f_i + f_j - f_k ≡ f_λ (mod M)`.
    pub fn color_identity_holds(&self, i: usize, j: usize, zero: usize) -> Result<bool, DegSeqError> {
        let l = self.add(i, j, zero)?;
        let (fi, fj, fk, fl) = (self.element(i)?, self.element(j)?, self.element(zero)?, self.element(l)?);
        Ok((0..fi.len()).all(|s| (fi[s] + fj[s] - fk[s] - fl[s]).rem_euclid(self.modulus) == 0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeOp {
    LinearSum,
    DegreeCoincide,
    DegreeJoin,
}

/// One lattice element built from `coeffs[k]` copies of `base[k]`.
///
/// Linear sums are componentwise. Coincide and join chain the copies in order,
/// each step acting on the smallest component of the running sequence and the
/// smallest component of the next copy.
pub fn ds_lattice_sample(base: &[Vec<usize>], coeffs: &[usize], op: LatticeOp) -> Result<DsResult, DegSeqError> {
    if base.is_empty() {
        return Err(DegSeqError::Args("empty base".into()));
    }
    if coeffs.len() != base.len() {
        return Err(DegSeqError::Args("one coefficient per base sequence".into()));
    }
    if coeffs.iter().sum::<usize>() == 0 {
        return Err(DegSeqError::Args("all coefficients are zero".into()));
    }
    match op {
        LatticeOp::LinearSum => {
            let n = base[0].len();
            if base.iter().any(|b| b.len() != n) {
                return Err(DegSeqError::Args("linear sum needs equal lengths".into()));
            }
            let raw = (0..n).map(|j| base.iter().zip(coeffs).map(|(b, &c)| c * b[j]).sum()).collect();
            Ok(DsResult::from_raw(raw))
        }
        LatticeOp::DegreeCoincide | LatticeOp::DegreeJoin => {
            let copies: Vec<&Vec<usize>> =
                base.iter().zip(coeffs).flat_map(|(b, &c)| std::iter::repeat_n(b, c)).collect();
            if copies.iter().any(|c| c.is_empty()) {
                return Err(DegSeqError::Args("empty base sequence".into()));
            }
            let mut acc = DsResult::from_raw(copies[0].clone());
            for next in &copies[1..] {
                let i = *acc.positions.last().unwrap();
                let j = largest(next, next.len(), None).pop().unwrap();
                let step = if op == LatticeOp::DegreeCoincide {
                    DsOp::DegreeCoincide { i, j }
                } else {
                    DsOp::DegreeJoin { i, j }
                };
                acc = ds_transform(&acc.raw, Some(next), &step)?;
            }
            Ok(acc)
        }
    }
}

pub fn parse_sequence(s: &str) -> Result<Vec<usize>, DegSeqError> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| DegSeqError::Parse(format!("bad component {t:?}"))))
        .collect()
}

pub fn format_sequence(d: &[usize]) -> String {
    d.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}
