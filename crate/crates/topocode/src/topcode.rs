//! Topcode-matrices: three rows `X`, `E`, `Y` of equal length, one column per edge.
//!
//! Columns are treated as a multiset by the set-like operations. Results keep the
//! column order of the left operand.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degseq::erdos_gallai;
use crate::graph::{DegreeSequence, Graph};
use crate::labeling::{EdgeRule, Labeling, LabelingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopcodeError {
    #[error("a Topcode-matrix needs at least one column")]
    Empty,
    #[error("rows have different lengths: x={x}, e={e}, y={y}")]
    RowLength { x: usize, e: usize, y: usize },
    #[error("column {0} out of range")]
    Index(usize),
    #[error("column {0} has x = y")]
    Loop(usize),
    #[error("column {0} repeats an earlier edge")]
    MultiEdge(usize),
    #[error("matrix is not a sub-matrix of the other operand")]
    NotSubMatrix,
    #[error("shape mismatch: {left} vs {right} columns")]
    Shape { left: usize, right: usize },
    #[error("merge conflict at row {row}, column {column}")]
    MergeConflict { row: char, column: usize },
    #[error("recomputing edge colors needs a valued matrix")]
    NoRule,
    #[error("cannot parse matrix: {0}")]
    Parse(String),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
}

pub type Column = (i64, i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopcodeMatrix {
    x: Vec<i64>,
    e: Vec<i64>,
    y: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rule_text")]
    rule: Option<EdgeRule>,
}

mod rule_text {
    use super::EdgeRule;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<EdgeRule>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<EdgeRule>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// How [`TopcodeMatrix::dual`] obtains the new edge colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualEdges {
    /// Apply the matrix's valued rule to the dual end colors.
    Recompute,
    /// `max(E) + min(E) - e`
    Complement,
}

impl FromStr for DualEdges {
    type Err = TopcodeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "recompute" => Ok(DualEdges::Recompute),
            "complement" => Ok(DualEdges::Complement),
            _ => Err(TopcodeError::Parse(format!("unknown edge rule `{s}`"))),
        }
    }
}

/// A simple graph whose vertex `i` carries color `values[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub graph: Graph,
    pub values: Vec<i64>,
}

fn counts(cols: &[Column]) -> BTreeMap<Column, usize> {
    let mut m = BTreeMap::new();
    for &c in cols {
        *m.entry(c).or_insert(0) += 1;
    }
    m
}

impl TopcodeMatrix {
    pub fn new(x: Vec<i64>, e: Vec<i64>, y: Vec<i64>) -> Result<Self, TopcodeError> {
        if x.len() != e.len() || e.len() != y.len() {
            return Err(TopcodeError::RowLength { x: x.len(), e: e.len(), y: y.len() });
        }
        if x.is_empty() {
            return Err(TopcodeError::Empty);
        }
        Ok(TopcodeMatrix { x, e, y, rule: None })
    }

    pub fn from_columns(cols: &[Column]) -> Result<Self, TopcodeError> {
        if cols.is_empty() {
            return Err(TopcodeError::Empty);
        }
        Ok(Self::columns_unchecked(cols, None))
    }

    fn columns_unchecked(cols: &[Column], rule: Option<EdgeRule>) -> Self {
        TopcodeMatrix {
            x: cols.iter().map(|c| c.0).collect(),
            e: cols.iter().map(|c| c.1).collect(),
            y: cols.iter().map(|c| c.2).collect(),
            rule,
        }
        .checked_rule()
    }

    /// Marks the matrix as valued with `rule`; fails if some column disagrees.
    pub fn with_rule(mut self, rule: EdgeRule) -> Result<Self, TopcodeError> {
        if let Some(i) = self.columns().iter().position(|&(x, e, y)| rule.apply(x, y) != e) {
            return Err(TopcodeError::Labeling(LabelingError::InvalidParam(
                "rule".into(),
                format!("{rule} does not hold at column {i}"),
            )));
        }
        self.rule = Some(rule);
        Ok(self)
    }

    fn checked_rule(mut self) -> Self {
        if let Some(r) = self.rule {
            if self.columns().iter().any(|&(x, e, y)| r.apply(x, y) != e) {
                self.rule = None;
            }
        }
        self
    }

    /// One column per edge in edge order, the smaller end color in `X`.
    pub fn from_colored_graph(g: &Graph, l: &Labeling) -> Result<Self, TopcodeError> {
        let edges = l.total_colors(g)?;
        let cols: Vec<Column> = g
            .edges()
            .iter()
            .zip(&edges)
            .map(|(&(u, v), &c)| {
                let (a, b) = (l.vertex[u], l.vertex[v]);
                (a.min(b), c, a.max(b))
            })
            .collect();
        if cols.is_empty() {
            return Err(TopcodeError::Empty);
        }
        Ok(Self::columns_unchecked(&cols, l.edge_rule(g.edge_count())))
    }

    pub fn x(&self) -> &[i64] {
        &self.x
    }

    pub fn e(&self) -> &[i64] {
        &self.e
    }

    pub fn y(&self) -> &[i64] {
        &self.y
    }

    pub fn rule(&self) -> Option<EdgeRule> {
        self.rule
    }

    pub fn q(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn columns(&self) -> Vec<Column> {
        (0..self.q()).map(|i| (self.x[i], self.e[i], self.y[i])).collect()
    }

    pub fn rows(&self) -> [&[i64]; 3] {
        [&self.x, &self.e, &self.y]
    }

    /// Column multiset equality.
    pub fn same_columns(&self, other: &TopcodeMatrix) -> bool {
        counts(&self.columns()) == counts(&other.columns())
    }

    /// Occurrence count of every value of `X ∪ Y`.
    pub fn value_degrees(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &v in self.x.iter().chain(&self.y) {
            *m.entry(v).or_insert(0) += 1;
        }
        m
    }

    pub fn tm_degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new(self.value_degrees().into_values().collect())
    }

    pub fn is_graphicable(&self) -> bool {
        erdos_gallai(self.tm_degree_sequence().as_slice())
    }

    /// Graph on the distinct values of `X ∪ Y` with one edge per column.
    pub fn realize(&self) -> Result<Realization, TopcodeError> {
        let values: Vec<i64> = self.value_degrees().into_keys().collect();
        let index: BTreeMap<i64, usize> = values.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::with_capacity(self.q());
        for (i, (x, _, y)) in self.columns().into_iter().enumerate() {
            if x == y {
                return Err(TopcodeError::Loop(i));
            }
            let (a, b) = (index[&x], index[&y]);
            let e = (a.min(b), a.max(b));
            if edges.contains(&e) {
                return Err(TopcodeError::MultiEdge(i));
            }
            edges.push(e);
        }
        let graph = Graph::new(values.len(), edges).map_err(LabelingError::from)?;
        Ok(Realization { graph, values })
    }

    fn shared_rule(&self, other: &TopcodeMatrix) -> Option<EdgeRule> {
        if self.rule == other.rule {
            self.rule
        } else {
            None
        }
    }

    /// `self ⊎ other`: the columns of both, `self` first.
    pub fn union_sum(&self, other: &TopcodeMatrix) -> TopcodeMatrix {
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::columns_unchecked(&cols, self.shared_rule(other))
    }

    /// Removes one occurrence of every column of `sub`, which must be a sub-multiset.
    pub fn subtract(&self, sub: &TopcodeMatrix) -> Result<TopcodeMatrix, TopcodeError> {
        let mut need = counts(&sub.columns());
        let mut cols = Vec::new();
        for c in self.columns() {
            match need.get_mut(&c) {
                Some(n) if *n > 0 => *n -= 1,
                _ => cols.push(c),
            }
        }
        if need.values().any(|&n| n > 0) {
            return Err(TopcodeError::NotSubMatrix);
        }
        Ok(Self::columns_unchecked(&cols, self.rule))
    }

    /// Largest common column sub-multiset, in `self`'s column order.
    pub fn intersect(&self, other: &TopcodeMatrix) -> TopcodeMatrix {
        let mut avail = counts(&other.columns());
        let cols: Vec<Column> = self
            .columns()
            .into_iter()
            .filter(|c| match avail.get_mut(c) {
                Some(n) if *n > 0 => {
                    *n -= 1;
                    true
                }
                _ => false,
            })
            .collect();
        Self::columns_unchecked(&cols, self.shared_rule(other))
    }

    /// `self ∖ (self ∩ other)`: defined for any two matrices.
    pub fn difference(&self, other: &TopcodeMatrix) -> TopcodeMatrix {
        self.subtract(&self.intersect(other)).expect("intersection is a sub-multiset")
    }

    /// `self ⊎ (other ∖ (self ∩ other))`.
    pub fn union(&self, other: &TopcodeMatrix) -> TopcodeMatrix {
        self.union_sum(&other.difference(self))
    }

    /// `(self ∖ h) ⊎ h ⊎ (other ∖ h)` for a common sub-matrix `h`.
    pub fn coincide(
        &self,
        other: &TopcodeMatrix,
        h: &TopcodeMatrix,
    ) -> Result<TopcodeMatrix, TopcodeError> {
        let left = self.subtract(h)?;
        let right = other.subtract(h)?;
        Ok(left.union_sum(h).union_sum(&right))
    }

    /// Splits along `h`: the columns of `self ∖ h` at positions `left` go with one copy
    /// of `h` into the first part, the rest with another copy into the second.
    pub fn split(
        &self,
        h: &TopcodeMatrix,
        left: &[usize],
    ) -> Result<(TopcodeMatrix, TopcodeMatrix), TopcodeError> {
        let rest = self.subtract(h)?.columns();
        if let Some(&i) = left.iter().find(|&&i| i >= rest.len()) {
            return Err(TopcodeError::Index(i));
        }
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, c) in rest.into_iter().enumerate() {
            if left.contains(&i) {
                a.push(c);
            } else {
                b.push(c);
            }
        }
        let hc = h.columns();
        a.extend(&hc);
        b.extend(&hc);
        Ok((Self::columns_unchecked(&a, self.rule), Self::columns_unchecked(&b, self.rule)))
    }

    fn check(&self, i: usize) -> Result<(), TopcodeError> {
        if i >= self.q() {
            return Err(TopcodeError::Index(i));
        }
        Ok(())
    }

    pub fn column_exchange(&self, i: usize, j: usize) -> Result<TopcodeMatrix, TopcodeError> {
        self.check(i)?;
        self.check(j)?;
        let mut m = self.clone();
        for row in [&mut m.x, &mut m.e, &mut m.y] {
            row.swap(i, j);
        }
        Ok(m)
    }

    pub fn xy_exchange(&self, i: usize) -> Result<TopcodeMatrix, TopcodeError> {
        self.check(i)?;
        let mut m = self.clone();
        std::mem::swap(&mut m.x[i], &mut m.y[i]);
        Ok(m.checked_rule())
    }

    /// Columns with `x < y`, sorted by `e`, then `x`, then `y`.
    pub fn standard_form(&self) -> Result<TopcodeMatrix, TopcodeError> {
        let mut cols = self.columns();
        for (i, c) in cols.iter_mut().enumerate() {
            if c.0 == c.2 {
                return Err(TopcodeError::Loop(i));
            }
            if c.0 > c.2 {
                *c = (c.2, c.1, c.0);
            }
        }
        cols.sort_by_key(|&(x, e, y)| (e, x, y));
        Ok(Self::columns_unchecked(&cols, self.rule))
    }

    /// Columns in reverse order.
    pub fn reciprocal(&self) -> TopcodeMatrix {
        let mut cols = self.columns();
        cols.reverse();
        Self::columns_unchecked(&cols, self.rule)
    }

    /// Replaces each vertex color `v` by `max + min - v` over `X ∪ Y`.
    pub fn dual(&self, edges: DualEdges) -> Result<TopcodeMatrix, TopcodeError> {
        if self.is_empty() {
            return Err(TopcodeError::Empty);
        }
        let vals = self.x.iter().chain(&self.y);
        let (lo, hi) = (*vals.clone().min().unwrap(), *vals.max().unwrap());
        let flip = |r: &[i64]| r.iter().map(|v| hi + lo - v).collect::<Vec<_>>();
        let (x, y) = (flip(&self.x), flip(&self.y));
        let (e, rule) = match edges {
            DualEdges::Recompute => {
                let r = self.rule.ok_or(TopcodeError::NoRule)?;
                (x.iter().zip(&y).map(|(&a, &b)| r.apply(a, b)).collect(), Some(r))
            }
            DualEdges::Complement => {
                let (elo, ehi) = (*self.e.iter().min().unwrap(), *self.e.iter().max().unwrap());
                (self.e.iter().map(|v| ehi + elo - v).collect(), self.rule)
            }
        };
        Ok(TopcodeMatrix { x, e, y, rule }.checked_rule())
    }

    pub fn scale(&self, a: i64) -> TopcodeMatrix {
        let s = |r: &[i64]| r.iter().map(|v| a * v).collect();
        TopcodeMatrix { x: s(&self.x), e: s(&self.e), y: s(&self.y), rule: None }
    }

    /// Elementwise `a1·m1 + a2·m2`.
    pub fn scale_add(
        a1: i64,
        m1: &TopcodeMatrix,
        a2: i64,
        m2: &TopcodeMatrix,
    ) -> Result<TopcodeMatrix, TopcodeError> {
        if m1.q() != m2.q() {
            return Err(TopcodeError::Shape { left: m1.q(), right: m2.q() });
        }
        let s = |r1: &[i64], r2: &[i64]| r1.iter().zip(r2).map(|(u, v)| a1 * u + a2 * v).collect();
        Ok(TopcodeMatrix { x: s(&m1.x, &m2.x), e: s(&m1.e, &m2.e), y: s(&m1.y, &m2.y), rule: None })
    }

    /// Fills each cell from the single matrix that is nonzero there.
    pub fn merge(list: &[TopcodeMatrix]) -> Result<TopcodeMatrix, TopcodeError> {
        let first = list.first().ok_or(TopcodeError::Empty)?;
        let q = first.q();
        if let Some(m) = list.iter().find(|m| m.q() != q) {
            return Err(TopcodeError::Shape { left: q, right: m.q() });
        }
        let mut out = [vec![0; q], vec![0; q], vec![0; q]];
        for (r, name) in ['x', 'e', 'y'].into_iter().enumerate() {
            for column in 0..q {
                let mut nonzero = list.iter().map(|m| m.rows()[r][column]).filter(|&v| v != 0);
                if let Some(v) = nonzero.next() {
                    if nonzero.next().is_some() {
                        return Err(TopcodeError::MergeConflict { row: name, column });
                    }
                    out[r][column] = v;
                }
            }
        }
        let [x, e, y] = out;
        Ok(TopcodeMatrix { x, e, y, rule: None })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serializes")
    }

    /// Three whitespace-separated rows.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self, TopcodeError> {
        let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        if rows.len() != 3 {
            return Err(TopcodeError::Parse(format!("expected 3 rows, found {}", rows.len())));
        }
        let parse = |line: &str| -> Result<Vec<i64>, TopcodeError> {
            line.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| TopcodeError::Parse(format!("bad entry `{t}`"))))
                .collect()
        };
        Self::new(parse(rows[0])?, parse(rows[1])?, parse(rows[2])?)
    }

    /// JSON object, JSON `[[x..],[e..],[y..]]`, or the three-row text form.
    pub fn parse_any(text: &str) -> Result<Self, TopcodeError> {
        let t = text.trim_start();
        if t.starts_with('{') {
            let m: TopcodeMatrix =
                serde_json::from_str(t).map_err(|e| TopcodeError::Parse(e.to_string()))?;
            let rule = m.rule;
            let m = Self::new(m.x, m.e, m.y)?;
            return match rule {
                Some(r) => m.with_rule(r),
                None => Ok(m),
            };
        }
        if t.starts_with('[') {
            let rows: [Vec<i64>; 3] =
                serde_json::from_str(t).map_err(|e| TopcodeError::Parse(e.to_string()))?;
            let [x, e, y] = rows;
            return Self::new(x, e, y);
        }
        Self::from_text(text)
    }
}

impl fmt::Display for TopcodeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
