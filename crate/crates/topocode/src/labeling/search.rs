use std::collections::BTreeSet;

use super::verify::{resolve, rule_for, P};
use super::{verify, Kind, Labeling, LabelingError, Params};
use crate::graph::Graph;

/// Kinds accepted by [`search_labeling`].
pub const SEARCHABLE: &[Kind] = &[
    Kind::Graceful,
    Kind::SetOrderedGraceful,
    Kind::StronglyGraceful,
    Kind::OddGraceful,
    Kind::SetOrderedOddGraceful,
    Kind::Felicitous,
    Kind::SuperFelicitous,
    Kind::OddElegant,
    Kind::KGraceful,
    Kind::KdGraceful,
    Kind::KdOddGraceful,
    Kind::KdHarmonious,
    Kind::EdgeMagicTotal,
    Kind::SuperEdgeMagicTotal,
    Kind::EdgeDifferenceTotal,
    Kind::TotallyGraceful,
    Kind::SuperTotallyGraceful,
    Kind::KlMagicTotal,
    Kind::KlEdgeDifferenceMagically,
    Kind::TotallyKdSequential,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Labeling),
    Exhausted,
    BudgetExceeded { nodes: u64 },
}

/// How edge colors of a total kind are obtained once all vertices are colored.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Edges {
    Induced,
    MagicSum,
    DifferenceSum,
    KlMagic,
    KlDifference,
}

struct Search<'a> {
    g: &'a Graph,
    kind: Kind,
    params: &'a Params,
    p: P,
    domain: Vec<i64>,
    edge_target: Option<BTreeSet<i64>>,
    edges: Edges,
    earlier: Vec<Vec<usize>>,
    colors: Vec<i64>,
    used_v: BTreeSet<i64>,
    used_e: BTreeSet<i64>,
    nodes: u64,
    budget: u64,
}

enum Stop {
    Found(Labeling),
    Budget,
}

/// Depth-first search for a labeling of `kind`, trying colors in increasing order
/// vertex by vertex. `budget` caps the number of search nodes.
pub fn search_labeling(
    g: &Graph,
    kind: Kind,
    params: &Params,
    budget: u64,
) -> Result<SearchOutcome, LabelingError> {
    if !SEARCHABLE.contains(&kind) {
        return Err(LabelingError::Unsupported(format!("search for `{kind}`")));
    }
    let p = resolve(kind, params)?;
    let (pv, q) = (g.vertex_count() as i64, g.edge_count() as i64);
    let n = pv + q;
    let (k, d) = (p.k, p.d);
    let progression = |lo: i64, step: i64, len: i64| -> BTreeSet<i64> {
        (0..len).map(|i| lo + i * step).collect()
    };
    use Kind::*;
    let (domain, edge_target, edges): (Vec<i64>, Option<BTreeSet<i64>>, Edges) = match kind {
        Graceful | SetOrderedGraceful | StronglyGraceful => {
            ((0..=q).collect(), Some((1..=q).collect()), Edges::Induced)
        }
        OddGraceful | SetOrderedOddGraceful | OddElegant => {
            ((0..2 * q).collect(), Some(progression(1, 2, q)), Edges::Induced)
        }
        Felicitous => ((0..=q).collect(), None, Edges::Induced),
        SuperFelicitous => ((1..=pv).collect(), None, Edges::Induced),
        KGraceful => ((0..q + k).collect(), Some((k..q + k).collect()), Edges::Induced),
        KdGraceful | KdHarmonious => {
            ((0..=k + (q - 1) * d).collect(), Some(progression(k, d, q)), Edges::Induced)
        }
        KdOddGraceful => {
            ((0..=k + (2 * q - 1) * d).collect(), Some(progression(k + d, 2 * d, q)), Edges::Induced)
        }
        TotallyGraceful => ((1..=n).collect(), None, Edges::Induced),
        SuperTotallyGraceful => ((q + 1..=n).collect(), Some((1..=q).collect()), Edges::Induced),
        TotallyKdSequential => (progression(k, d, n).into_iter().collect(), None, Edges::Induced),
        EdgeMagicTotal => ((1..=n).collect(), None, Edges::MagicSum),
        SuperEdgeMagicTotal => ((1..=pv).collect(), None, Edges::MagicSum),
        EdgeDifferenceTotal => ((1..=n).collect(), None, Edges::DifferenceSum),
        KlMagicTotal => ((1..=n).collect(), None, Edges::KlMagic),
        KlEdgeDifferenceMagically => ((1..=n).collect(), None, Edges::KlDifference),
        _ => unreachable!("checked against SEARCHABLE"),
    };
    let mut earlier = vec![Vec::new(); g.vertex_count()];
    for &(u, v) in g.edges() {
        earlier[v].push(u);
    }
    let mut s = Search {
        g,
        kind,
        params,
        p,
        domain,
        edge_target,
        edges,
        earlier,
        colors: Vec::new(),
        used_v: BTreeSet::new(),
        used_e: BTreeSet::new(),
        nodes: 0,
        budget,
    };
    Ok(match s.extend() {
        Err(Stop::Found(l)) => SearchOutcome::Found(l),
        Err(Stop::Budget) => SearchOutcome::BudgetExceeded { nodes: s.nodes },
        Ok(()) => SearchOutcome::Exhausted,
    })
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), Stop> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Stop::Budget);
        }
        Ok(())
    }

    fn extend(&mut self) -> Result<(), Stop> {
        let x = self.colors.len();
        if x == self.g.vertex_count() {
            return self.finish();
        }
        let rule = if self.edges == Edges::Induced {
            rule_for(self.kind, &self.p, self.g.edge_count())
        } else {
            None
        };
        for i in 0..self.domain.len() {
            let c = self.domain[i];
            if self.used_v.contains(&c) {
                continue;
            }
            self.tick()?;
            let mut new_edges = Vec::new();
            if let Some(rule) = rule {
                let mut ok = true;
                for &u in &self.earlier[x] {
                    let e = rule.apply(self.colors[u], c);
                    let fits = self.edge_target.as_ref().is_none_or(|t| t.contains(&e));
                    if !fits || self.used_e.contains(&e) || new_edges.contains(&e) {
                        ok = false;
                        break;
                    }
                    new_edges.push(e);
                }
                if !ok {
                    continue;
                }
            }
            self.colors.push(c);
            self.used_v.insert(c);
            self.used_e.extend(new_edges.iter().copied());
            let r = self.extend();
            self.colors.pop();
            self.used_v.remove(&c);
            for e in &new_edges {
                self.used_e.remove(e);
            }
            r?;
        }
        Ok(())
    }

    fn candidate(&self, edge_colors: Option<Vec<i64>>) -> Result<(), Stop> {
        let mut l = Labeling::new(self.kind, self.colors.clone()).with_params(self.params);
        if let Some(e) = edge_colors {
            l = l.with_edge_colors(self.g, &e);
        }
        match verify(self.g, &l) {
            Ok(r) if r.accepted => Err(Stop::Found(l)),
            _ => Ok(()),
        }
    }

    fn finish(&mut self) -> Result<(), Stop> {
        let g = self.g;
        let n = (g.vertex_count() + g.edge_count()) as i64;
        let ends: Vec<(i64, i64)> =
            g.edges().iter().map(|&(u, v)| (self.colors[u], self.colors[v])).collect();
        let (k, lambda) = (self.p.k, self.p.lambda);
        match self.edges {
            Edges::Induced => self.candidate(None),
            Edges::MagicSum | Edges::DifferenceSum => {
                for c in 1..=3 * n {
                    self.tick()?;
                    let e: Vec<i64> = ends
                        .iter()
                        .map(|&(a, b)| match self.edges {
                            Edges::MagicSum => c - a - b,
                            _ => c - (a - b).abs(),
                        })
                        .collect();
                    if e.iter().all(|x| (1..=n).contains(x) && !self.used_v.contains(x)) {
                        self.candidate(Some(e))?;
                    }
                }
                Ok(())
            }
            Edges::KlMagic | Edges::KlDifference => {
                self.tick()?;
                let mut e = Vec::with_capacity(ends.len());
                for &(a, b) in &ends {
                    let num = match self.edges {
                        Edges::KlMagic => a + b - k,
                        _ => (a - b).abs() - k,
                    };
                    if num % lambda != 0 {
                        return Ok(());
                    }
                    e.push(num / lambda);
                }
                self.candidate(Some(e))
            }
        }
    }
}
