use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topocode::graph::Graph;
use topocode::labeling::*;

fn lab(kind: Kind, v: &[i64]) -> Labeling {
    Labeling::new(kind, v.to_vec())
}

fn accepted(g: &Graph, l: &Labeling) -> bool {
    verify(g, l).unwrap().accepted
}

fn set(v: impl IntoIterator<Item = i64>) -> BTreeSet<i64> {
    v.into_iter().collect()
}

// ---------- independent oracles ----------

fn distinct(v: &[i64]) -> bool {
    set(v.iter().copied()).len() == v.len()
}

fn oracle_graceful(g: &Graph, v: &[i64]) -> bool {
    let q = g.edge_count() as i64;
    let e: Vec<i64> = g.edges().iter().map(|&(a, b)| (v[a] - v[b]).abs()).collect();
    distinct(v) && v.iter().all(|&c| (0..=q).contains(&c)) && set(e) == set(1..=q)
}

fn oracle_odd_graceful(g: &Graph, v: &[i64]) -> bool {
    let q = g.edge_count() as i64;
    let e: Vec<i64> = g.edges().iter().map(|&(a, b)| (v[a] - v[b]).abs()).collect();
    distinct(v)
        && v.iter().all(|&c| (0..2 * q).contains(&c))
        && set(e.clone()) == set((0..q).map(|i| 2 * i + 1))
        && distinct(&e)
}

fn oracle_set_ordered(g: &Graph, v: &[i64]) -> bool {
    let Some(side) = g.bipartition() else { return false };
    let split = |flip: bool| {
        let x = (0..v.len()).filter(|&i| side[i] == flip).map(|i| v[i]).max();
        let y = (0..v.len()).filter(|&i| side[i] != flip).map(|i| v[i]).min();
        matches!((x, y), (Some(a), Some(b)) if a < b)
    };
    split(false) || split(true)
}

fn oracle_edge_magic(g: &Graph, v: &[i64], e: &[i64]) -> bool {
    let n = (g.vertex_count() + g.edge_count()) as i64;
    let all: Vec<i64> = v.iter().chain(e).copied().collect();
    let sums: BTreeSet<i64> =
        g.edges().iter().zip(e).map(|(&(a, b), &c)| v[a] + v[b] + c).collect();
    set(all.clone()) == set(1..=n) && all.len() as i64 == n && sums.len() <= 1
}

fn oracle_kl_magic(g: &Graph, v: &[i64], e: &[i64], k: i64) -> bool {
    let n = (g.vertex_count() + g.edge_count()) as i64;
    let all: Vec<i64> = v.iter().chain(e).copied().collect();
    distinct(&all)
        && set(all) == set(1..=n)
        && g.edges().iter().zip(e).all(|(&(a, b), &c)| v[a] + v[b] == k + c)
}

/// Lexicographically first graceful vertex coloring by plain enumeration.
fn first_graceful(g: &Graph) -> Option<Vec<i64>> {
    let p = g.vertex_count();
    let q = g.edge_count() as i64;
    let mut v = vec![0i64; p];
    loop {
        if oracle_graceful(g, &v) {
            return Some(v);
        }
        let mut i = p;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if v[i] < q {
                v[i] += 1;
                for w in v.iter_mut().skip(i + 1) {
                    *w = 0;
                }
                break;
            }
        }
    }
}

// ---------- tree generation with AHU canonical forms ----------

fn ahu(g: &Graph, root: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> = g
        .neighbors(root)
        .into_iter()
        .filter(|&w| Some(w) != parent)
        .map(|w| ahu(g, w, Some(root)))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn canonical_tree(g: &Graph) -> String {
    (0..g.vertex_count()).map(|r| ahu(g, r, None)).min().unwrap()
}

/// All trees on `2..=max_n` vertices up to isomorphism.
fn all_trees(max_n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::path(2)];
    let mut out = level.clone();
    for _ in 3..=max_n {
        let mut seen = BTreeMap::new();
        for t in &level {
            for v in 0..t.vertex_count() {
                let bigger = t.add_leaves(&[(v, 1)]).unwrap();
                seen.entry(canonical_tree(&bigger)).or_insert(bigger);
            }
        }
        level = seen.into_values().collect();
        out.extend(level.iter().cloned());
    }
    out
}

fn set_ordered_graceful(g: &Graph) -> Option<Labeling> {
    match search_labeling(g, Kind::SetOrderedGraceful, &Params::new(), 50_000_000).unwrap() {
        SearchOutcome::Found(l) => Some(l),
        _ => None,
    }
}

fn small_trees_with_labels() -> Vec<(Graph, Labeling)> {
    all_trees(9)
        .into_iter()
        .filter_map(|t| set_ordered_graceful(&t).map(|l| (t, l)))
        .collect()
}

fn caterpillar(rng: &mut ChaCha8Rng) -> Graph {
    let spine = rng.gen_range(1..=4);
    let base = Graph::path(spine);
    let plan: Vec<(usize, usize)> = (0..spine).map(|v| (v, rng.gen_range(0..=2))).collect();
    let g = base.add_leaves(&plan).unwrap();
    if g.vertex_count() < 2 {
        Graph::path(2)
    } else {
        g
    }
}

fn p4() -> (Graph, Labeling) {
    (Graph::path(4), lab(Kind::SetOrderedGraceful, &[0, 3, 1, 2]))
}

// ---------- induce_edge_colors ----------

#[test]
fn induced_edges() {
    let p4 = Graph::path(4);
    let vc: Vec<Option<i64>> = [0, 3, 1, 2].into_iter().map(Some).collect();
    assert_eq!(induce_edge_colors(&p4, &vc, EdgeRule::AbsDifference).unwrap(), vec![3, 2, 1]);
    let s = Graph::star(3);
    let vc: Vec<Option<i64>> = [1, 2, 3, 4].into_iter().map(Some).collect();
    assert_eq!(induce_edge_colors(&s, &vc, EdgeRule::PlainSum).unwrap(), vec![3, 4, 5]);
    let zeros = vec![Some(0); 5];
    let c5 = Graph::cycle(5);
    assert!(induce_edge_colors(&c5, &zeros, EdgeRule::AbsDifference).unwrap().iter().all(|&c| c == 0));
    let holes = vec![Some(1), None, Some(2)];
    assert_eq!(
        induce_edge_colors(&Graph::path(3), &holes, EdgeRule::AbsDifference),
        Err(LabelingError::UncoloredVertex(1))
    );
    assert_eq!("mod-sum:4".parse::<EdgeRule>().unwrap(), EdgeRule::ModSum(4));
    assert!("mod-sum:0".parse::<EdgeRule>().is_err());
}

// ---------- verify ----------

#[test]
fn graceful_basics() {
    assert!(accepted(&Graph::path(2), &lab(Kind::Graceful, &[0, 1])));
    let r = verify(&Graph::path(3), &lab(Kind::Graceful, &[0, 1, 2])).unwrap();
    assert!(!r.accepted);
    assert!(r.has_clause("B-4"));
    let (g, f) = p4();
    let sides = vec![false, true, false, true];
    assert!(accepted(&g, &f.clone().with_bipartition(sides)));
    let wrong = verify(&g, &f.with_bipartition(vec![true, false, true, false])).unwrap();
    assert!(wrong.has_clause("B-6"));
}

#[test]
fn violations_name_witnesses() {
    let r = verify(&Graph::path(3), &lab(Kind::Graceful, &[0, 0, 2])).unwrap();
    assert_eq!(r.violations[0], Violation { clause: "B-1 injective".into(), witness: Witness::Vertex(1) });
    let stored = lab(Kind::Graceful, &[0, 1]).with_edge_colors(&Graph::path(2), &[5]);
    let r = verify(&Graph::path(2), &stored).unwrap();
    assert!(r.has_clause("induced-edge-rule"));
    let odd = verify(&Graph::cycle(3), &lab(Kind::SetOrderedGraceful, &[0, 1, 3])).unwrap();
    assert!(odd.has_clause("bipartite"));
}

#[test]
fn shape_and_param_errors() {
    let g = Graph::path(3);
    assert!(matches!(
        verify(&g, &lab(Kind::Graceful, &[0, 1])),
        Err(LabelingError::VertexCount { expected: 3, got: 2 })
    ));
    assert!(matches!(
        verify(&g, &lab(Kind::KdGraceful, &[0, 1, 2]).with_param("k", 1)),
        Err(LabelingError::MissingParam { param: "d", .. })
    ));
    assert!(matches!(
        verify(&g, &lab(Kind::EdgeMagicTotal, &[1, 2, 3])),
        Err(LabelingError::UncoloredEdge(0, 1))
    ));
    let mut bad = lab(Kind::Graceful, &[0, 1, 2]);
    bad.edges.push((0, 2, 1));
    assert!(matches!(verify(&g, &bad), Err(LabelingError::UnknownEdge(0, 2))));
    assert!(matches!(Kind::from_tag("harmonic"), Err(LabelingError::UnknownKind(_))));
}

const P7_TABLES: [(i64, [i64; 7], [i64; 6]); 11] = [
    (2, [1, 3, 9, 6, 8, 5, 4], [2, 10, 13, 12, 11, 7]),
    (3, [5, 1, 4, 9, 7, 8, 6], [3, 2, 10, 13, 12, 11]),
    (4, [7, 9, 8, 2, 3, 5, 10], [12, 13, 6, 1, 4, 11]),
    (5, [1, 9, 7, 10, 8, 3, 4], [5, 11, 12, 13, 6, 2]),
    (6, [3, 5, 8, 10, 9, 1, 11], [2, 7, 12, 13, 4, 6]),
    (7, [3, 10, 9, 2, 13, 1, 11], [6, 12, 4, 8, 7, 5]),
    (8, [4, 12, 3, 10, 9, 1, 13], [8, 7, 5, 11, 2, 6]),
    (9, [6, 10, 8, 13, 1, 11, 2], [7, 9, 12, 5, 3, 4]),
    (10, [2, 13, 1, 12, 6, 11, 9], [5, 4, 3, 8, 7, 10]),
    (11, [4, 12, 1, 13, 9, 8, 10], [5, 2, 3, 11, 6, 7]),
    (12, [4, 11, 13, 8, 6, 7, 10], [3, 12, 9, 2, 1, 5]),
];

#[test]
fn path_magic_tables() {
    let g = Graph::path(7);
    for (k, v, e) in P7_TABLES {
        assert!(oracle_kl_magic(&g, &v, &e, k), "oracle k={k}");
        let l = lab(Kind::KlMagicTotal, &v).with_param("k", k).with_edge_colors(&g, &e);
        assert!(accepted(&g, &l), "k={k}");
        let wrong = l.clone().with_param("k", k + 1);
        assert!(!accepted(&g, &wrong));
        let explicit = l.with_param("lambda", 1);
        assert!(accepted(&g, &explicit));
    }
}

#[test]
fn edge_magic_family_examples() {
    let g = Graph::path(3);
    let v = [1, 3, 2];
    let e = [5, 4];
    assert!(oracle_edge_magic(&g, &v, &e));
    let l = lab(Kind::EdgeMagicTotal, &v).with_edge_colors(&g, &e);
    assert!(accepted(&g, &l));
    assert!(accepted(&g, &Labeling { kind: Kind::SuperEdgeMagicTotal, ..l.clone() }));
    assert!(!accepted(&g, &l.clone().with_param("magic", 10)));
    let swapped = lab(Kind::EdgeMagicTotal, &v).with_edge_colors(&g, &[4, 5]);
    assert!(verify(&g, &swapped).unwrap().has_clause("magic-constant"));
}

#[test]
fn felicitous_and_odd_elegant() {
    let g = Graph::path(3);
    assert!(accepted(&g, &lab(Kind::Felicitous, &[0, 2, 1])));
    assert!(!accepted(&g, &lab(Kind::Felicitous, &[0, 1, 2])));
    assert!(!accepted(&g, &lab(Kind::SuperFelicitous, &[0, 2, 1])));
    assert!(accepted(&Graph::cycle(3), &lab(Kind::SuperFelicitous, &[1, 2, 3])));
    let p4 = Graph::path(4);
    assert!(accepted(&p4, &lab(Kind::OddElegant, &[0, 1, 2, 3])));
    assert!(!accepted(&p4, &lab(Kind::OddElegant, &[0, 1, 3, 2])));
}

#[test]
fn odd_graceful_variants() {
    let p3 = Graph::path(3);
    assert!(!accepted(&p3, &lab(Kind::OddGraceful, &[0, 1, 3])));
    assert!(accepted(&p3, &lab(Kind::OddGraceful, &[0, 3, 2])));
    assert!(accepted(&p3, &lab(Kind::SetOrderedOddGraceful, &[0, 3, 2])));
    let p2 = Graph::path(2);
    assert!(accepted(&p2, &lab(Kind::StronglyOddGraceful, &[0, 1])));
    assert!(accepted(&p2, &lab(Kind::StronglyGraceful, &[0, 1])));
    let p4 = Graph::path(4);
    assert!(accepted(&p4, &lab(Kind::StronglyGraceful, &[0, 3, 1, 2])));
    let star = verify(&Graph::star(3), &lab(Kind::StronglyGraceful, &[0, 1, 2, 3])).unwrap();
    assert!(star.has_clause("B-7"));
    let pan = lab(Kind::PanOddGraceful, &[0, 3, 2]).with_edge_colors(&p3, &[3, 4]);
    assert!(!accepted(&p3, &pan));
    let pan = lab(Kind::PanOddGraceful, &[1, 3, 0]).with_edge_colors(&p3, &[1, 3]);
    assert!(!accepted(&p3, &lab(Kind::OddGraceful, &[1, 3, 0])));
    assert!(accepted(&p3, &pan), "{:?}", verify(&p3, &pan));
}

#[test]
fn kd_vertex_labelings() {
    let p4 = Graph::path(4);
    let kd = lab(Kind::KdGraceful, &[0, 5, 2, 3]).with_param("k", 1).with_param("d", 2);
    assert!(accepted(&p4, &kd));
    assert_eq!(kd.total_colors(&p4).unwrap(), vec![5, 3, 1]);
    let arith = lab(Kind::KdArithmetic, &[0, 1, 2]).with_param("k", 1).with_param("d", 2);
    assert!(accepted(&Graph::path(3), &arith));
    let kgr = lab(Kind::KGraceful, &[0, 2, 1]).with_param("k", 1);
    assert!(accepted(&Graph::path(3), &kgr));
    assert!(!accepted(&Graph::path(3), &lab(Kind::KGraceful, &[0, 1, 2]).with_param("k", 1)));
    let kgr = lab(Kind::KGraceful, &[0, 3, 1]).with_param("k", 2);
    assert!(accepted(&Graph::path(3), &kgr));
}

#[test]
fn total_bijection_families() {
    let p2 = Graph::path(2);
    let tg = lab(Kind::TotallyGraceful, &[1, 3]);
    assert!(accepted(&p2, &tg));
    assert!(!accepted(&p2, &lab(Kind::TotallyGraceful, &[1, 2])));
    let seq = lab(Kind::TotallyKdSequential, &[1, 3]).with_param("k", 1).with_param("d", 1);
    assert!(accepted(&p2, &seq));
    let kl = lab(Kind::KlEdgeDifferenceMagically, &[1, 3])
        .with_param("k", 0)
        .with_param("lambda", 1)
        .with_edge_colors(&p2, &[2]);
    assert!(accepted(&p2, &kl));
    let edm = lab(Kind::EdgeDifferenceTotal, &[1, 3]).with_edge_colors(&p2, &[2]);
    assert!(accepted(&p2, &edm));
}

#[test]
fn ptol_family() {
    let p2 = Graph::path(2);
    let gt = lab(Kind::KdGracefullyTotal, &[0, 1]).with_param("k", 1).with_param("d", 1);
    assert!(accepted(&p2, &gt));
    let strong = Labeling { kind: Kind::KdStronglyGracefullyTotal, ..gt.clone() };
    assert!(accepted(&p2, &strong));
    let em = lab(Kind::StronglyEdgeMagicKdTotal, &[0, 1])
        .with_param("k", 1)
        .with_param("d", 1)
        .with_edge_colors(&p2, &[1]);
    assert!(accepted(&p2, &em));
    let out_of_frame = lab(Kind::EdgeMagicKdTotal, &[1, 2])
        .with_param("k", 2)
        .with_param("d", 2)
        .with_edge_colors(&p2, &[2]);
    assert!(!accepted(&p2, &out_of_frame));
}

#[test]
fn colorings_with_repeats() {
    let p4 = Graph::path(4);
    let gtc = lab(Kind::GracefullyTotalColoring, &[1, 4, 1, 3]).with_edge_colors(&p4, &[3, 3, 2]);
    assert!(!accepted(&p4, &gtc));
    let p5 = Graph::path(5);
    let c = lab(Kind::GracefullyTotalColoring, &[1, 5, 2, 4, 1]);
    assert!(!accepted(&p5, &c));
    let c = lab(Kind::GracefullyTotalColoring, &[1, 5, 2, 3, 5]);
    assert!(accepted(&p5, &c), "{:?}", verify(&p5, &c));
    let distinct_colors = lab(Kind::GracefullyTotalColoring, &[1, 5, 2, 4, 3]);
    assert!(verify(&p5, &distinct_colors).unwrap().has_clause("repeated-vertex-color"));
}

#[test]
fn sequence_coloring_preconditions() {
    let p3 = Graph::path(3);
    let l = lab(Kind::GracefullyTotalSequence, &[0, 2, 1])
        .with_sequence("A", vec![0, 1, 2])
        .with_sequence("B", vec![1, 2]);
    assert!(accepted(&p3, &l));
    let proper = Labeling { kind: Kind::ProperGracefullyTotalSequence, ..l.clone() };
    assert!(!accepted(&p3, &proper));
    let missing = lab(Kind::GracefullyTotalSequence, &[0, 2, 1]);
    assert!(matches!(verify(&p3, &missing), Err(LabelingError::MissingParam { param: "A", .. })));
    let unsorted = l.clone().with_sequence("B", vec![2, 1]);
    assert!(matches!(verify(&p3, &unsorted), Err(LabelingError::Precondition(_))));
    let unreachable = l.with_sequence("B", vec![1, 7]);
    assert!(matches!(verify(&p3, &unreachable), Err(LabelingError::Precondition(_))));
}

#[test]
fn parameterized_family() {
    let p3 = Graph::path(3);
    // X = {0, 2}, Y = {1}; a*u + b*v + c*e with a=b=c=1
    let l = lab(Kind::ParamEdgeMagic, &[1, 3, 2])
        .with_param("a", 1)
        .with_param("b", 1)
        .with_param("c", 1)
        .with_edge_colors(&p3, &[4, 5]);
    assert!(!accepted(&p3, &l));
    let l = l.with_edge_colors(&p3, &[5, 4]);
    assert!(accepted(&p3, &l), "{:?}", verify(&p3, &l));
    let improper = lab(Kind::ParamEdgeMagic, &[1, 3, 1])
        .with_param("a", 1)
        .with_param("b", 1)
        .with_param("c", 1)
        .with_edge_colors(&p3, &[2, 2]);
    assert!(verify(&p3, &improper).unwrap().has_clause("proper"));
}

#[test]
fn json_roundtrip() {
    let g = Graph::path(3);
    let l = lab(Kind::KdGraceful, &[0, 5, 2])
        .with_param("k", 1)
        .with_param("d", 2)
        .with_edge_colors(&g, &[5, 3])
        .with_bipartition(vec![false, true, false]);
    let back = Labeling::from_json(&l.to_json()).unwrap();
    assert_eq!(back, l);
    let parsed =
        Labeling::from_json(r#"{"kind":"graceful","vertex":[0,2,1],"edges":[[1,0,2]]}"#).unwrap();
    assert_eq!(parsed.edges, vec![(0, 1, 2)]);
    assert!(Labeling::from_json(r#"{"kind":"nope","vertex":[]}"#).is_err());
}

fn six_c_oracle(g: &Graph, v: &[i64], e: &[i64]) -> bool {
    let n = (g.vertex_count() + g.edge_count()) as i64;
    let all: Vec<i64> = v.iter().chain(e).copied().collect();
    if set(all.clone()) != set(1..=n) || all.len() as i64 != n {
        return false;
    }
    let d: Vec<i64> = g.edges().iter().map(|&(a, b)| (v[a] - v[b]).abs()).collect();
    let m = e.len();
    let c1 = (0..m).all(|i| e[i] + d[i] == e[0] + d[0]);
    let c2 = (0..m).all(|i| (0..m).any(|j| e[i] == d[j] || e[i] == 2 * n - d[j]));
    let s: Vec<i64> = (0..m).map(|i| d[i] - e[i]).collect();
    let c3 = (-4 * n..=4 * n).any(|kp| {
        (0..m).all(|i| (0..m).any(|j| s[i] + s[j] == kp || 2 * n + s[i] + s[j] == kp))
    });
    let (vs, es) = (set(v.iter().copied()), set(e.iter().copied()));
    let c4 = vs.first() > es.last()
        || vs.last() < es.first()
        || vs.is_subset(&es)
        || es.is_subset(&vs)
        || (vs.iter().all(|x| x % 2 == 1) && es.iter().all(|x| x % 2 == 0));
    let z0 = (n + 1) / 2;
    let c5 = (0..=2 * n).any(|kpp| {
        e.iter().all(|&x| v.iter().any(|&w| x + w == kpp))
            && v.iter().all(|&z| z == z0 || e.iter().any(|&x| z + x == kpp))
    });
    c1 && c2 && c3 && c4 && c5 && oracle_set_ordered(g, v)
}

fn permutations(n: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n as i64);
            out.push(q);
        }
    }
    out
}

#[test]
fn six_c_agrees_with_oracle_on_small_trees() {
    for g in [Graph::path(3), Graph::path(4), Graph::star(3)] {
        let (p, q) = (g.vertex_count(), g.edge_count());
        let mut hits = 0;
        for perm in permutations(p + q) {
            let (v, e) = perm.split_at(p);
            let l = lab(Kind::SixC, v).with_edge_colors(&g, e);
            let got = accepted(&g, &l);
            assert_eq!(got, six_c_oracle(&g, v, e), "{v:?} {e:?}");
            hits += got as usize;
        }
        assert!(hits > 0 || g.vertex_count() == 3, "no 6C labeling of {g:?}");
    }
}

// ---------- search ----------

#[test]
fn search_examples() {
    let found = |g: &Graph, kind: Kind| match search_labeling(g, kind, &Params::new(), 1_000_000).unwrap() {
        SearchOutcome::Found(l) => l,
        other => panic!("{other:?}"),
    };
    assert_eq!(found(&Graph::path(4), Kind::Graceful).vertex, vec![0, 3, 1, 2]);
    assert_eq!(Some(vec![0, 3, 1, 2]), first_graceful(&Graph::path(4)));
    assert_eq!(found(&Graph::cycle(3), Kind::Graceful).vertex, vec![0, 1, 3]);
    let c4 = Graph::cycle(4);
    let odd = found(&c4, Kind::OddGraceful);
    assert!(oracle_odd_graceful(&c4, &odd.vertex));
    assert!(matches!(
        search_labeling(&Graph::complete(5), Kind::Graceful, &Params::new(), 10_000_000).unwrap(),
        SearchOutcome::Exhausted
    ));
    assert_eq!(first_graceful(&Graph::complete(5)), None);
    assert!(matches!(
        search_labeling(&Graph::path(8), Kind::Graceful, &Params::new(), 3).unwrap(),
        SearchOutcome::BudgetExceeded { nodes: 4 }
    ));
    assert!(matches!(
        search_labeling(&Graph::path(3), Kind::SixC, &Params::new(), 10),
        Err(LabelingError::Unsupported(_))
    ));
}

#[test]
fn search_total_kinds() {
    let p7 = Graph::path(7);
    let params: Params = [("k".to_string(), 2)].into_iter().collect();
    let SearchOutcome::Found(l) = search_labeling(&p7, Kind::KlMagicTotal, &params, 10_000_000).unwrap() else {
        panic!("no (2,1)-magic total labeling of P7")
    };
    let e = l.total_colors(&p7).unwrap();
    assert!(oracle_kl_magic(&p7, &l.vertex, &e, 2));
    let p4 = Graph::path(4);
    let SearchOutcome::Found(em) = search_labeling(&p4, Kind::EdgeMagicTotal, &Params::new(), 1_000_000).unwrap() else {
        panic!()
    };
    assert!(oracle_edge_magic(&p4, &em.vertex, &em.total_colors(&p4).unwrap()));
}

fn arb_small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=5).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().zip(&mask).filter(|(_, &b)| b).map(|(&e, _)| e).collect();
            let edges = if edges.is_empty() { vec![(0, 1)] } else { edges };
            Graph::new(n, edges).unwrap()
        })
    })
}

fn default_params(kind: Kind) -> Params {
    kind.required_params().iter().map(|&p| (p.to_string(), if p == "d" { 2 } else { 1 })).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn search_results_verify(g in arb_small_graph(), pick in 0usize..SEARCHABLE.len()) {
        let kind = SEARCHABLE[pick];
        let params = default_params(kind);
        if let SearchOutcome::Found(l) = search_labeling(&g, kind, &params, 200_000).unwrap() {
            prop_assert!(verify(&g, &l).unwrap().accepted);
            if kind == Kind::Graceful {
                prop_assert!(oracle_graceful(&g, &l.vertex));
            }
        }
    }

    #[test]
    fn graceful_search_matches_enumeration(g in arb_small_graph()) {
        let got = search_labeling(&g, Kind::Graceful, &Params::new(), 10_000_000).unwrap();
        match got {
            SearchOutcome::Found(l) => prop_assert_eq!(Some(l.vertex), first_graceful(&g)),
            SearchOutcome::Exhausted => prop_assert_eq!(first_graceful(&g), None),
            SearchOutcome::BudgetExceeded { .. } => prop_assert!(false),
        }
    }

    #[test]
    fn verifier_agrees_with_oracles(g in arb_small_graph(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = g.edge_count() as i64;
        let v: Vec<i64> = (0..g.vertex_count()).map(|_| rng.gen_range(0..=2 * q)).collect();
        prop_assert_eq!(accepted(&g, &lab(Kind::Graceful, &v)), oracle_graceful(&g, &v));
        prop_assert_eq!(accepted(&g, &lab(Kind::OddGraceful, &v)), oracle_odd_graceful(&g, &v));
        prop_assert_eq!(
            accepted(&g, &lab(Kind::SetOrderedGraceful, &v)),
            oracle_graceful(&g, &v) && oracle_set_ordered(&g, &v)
        );
        let n = g.vertex_count() + g.edge_count();
        let mut perm: Vec<i64> = (1..=n as i64).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let (vv, ee) = perm.split_at(g.vertex_count());
        let l = lab(Kind::EdgeMagicTotal, vv).with_edge_colors(&g, ee);
        prop_assert_eq!(accepted(&g, &l), oracle_edge_magic(&g, vv, ee));
    }

    #[test]
    fn vertex_dual_is_involution(v in proptest::collection::vec(-20i64..20, 1..8)) {
        let g = Graph::empty(v.len());
        let l = lab(Kind::Graceful, &v);
        let twice = dual(&g, &dual(&g, &l, DualScope::Vertex).unwrap(), DualScope::Vertex).unwrap();
        prop_assert_eq!(twice, l);
    }
}

// ---------- transforms ----------

#[test]
fn dual_examples() {
    let (g, f) = p4();
    assert_eq!(dual(&g, &f, DualScope::Vertex).unwrap().vertex, vec![3, 0, 2, 1]);
    let single = lab(Kind::Graceful, &[5]);
    assert_eq!(dual(&Graph::empty(1), &single, DualScope::Vertex).unwrap().vertex, vec![5]);
    let e = dual(&g, &f, DualScope::Edge).unwrap();
    assert_eq!(e.total_colors(&g).unwrap(), vec![1, 2, 3]);
    let t = dual(&g, &f, DualScope::Total).unwrap();
    assert_eq!(dual(&g, &t, DualScope::Total).unwrap().total_colors(&g).unwrap(), vec![3, 2, 1]);
}

#[test]
fn set_dual_examples() {
    let (g, f) = p4();
    let fd = set_dual_transform(&g, &f, SetDualVariant::FDual).unwrap();
    assert_eq!(fd.vertex, vec![3, 0, 2, 1]);
    assert_eq!(fd.kind, Kind::SetOrderedGraceful);
    let hs = set_dual_transform(&g, &f, SetDualVariant::HStarSetX).unwrap();
    assert_eq!(hs.kind, Kind::StronglyEdgeMagicKdTotal);
    let e = hs.total_colors(&g).unwrap();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        assert_eq!(hs.vertex[u] + hs.vertex[v] + e[i], 5);
    }
    let p5 = Graph::path(5);
    let not_ordered = (0..5i64.pow(5))
        .map(|code| (0..5).map(|i| code / 5i64.pow(i) % 5).collect::<Vec<i64>>())
        .find(|v| oracle_graceful(&p5, v) && !oracle_set_ordered(&p5, v))
        .unwrap();
    let l = lab(Kind::Graceful, &not_ordered);
    assert!(matches!(
        set_dual_transform(&p5, &l, SetDualVariant::FDual),
        Err(LabelingError::Precondition(_))
    ));
}

#[test]
fn image_matching_with_f_star_dual() {
    let (g, f) = p4();
    let star = set_dual_transform(&g, &f, SetDualVariant::FStarDual).unwrap();
    let r = verify_matching(&g, &f, &g, &star, MatchKind::EImage(Some(4))).unwrap();
    assert!(r.accepted, "{r:?}");
    let r = verify_matching(&g, &f, &g, &star, MatchKind::EImage(Some(5))).unwrap();
    assert!(!r.accepted);
}

#[test]
fn other_matchings() {
    let p2 = Graph::path(2);
    let og = lab(Kind::OddGraceful, &[0, 1]);
    assert!(verify_matching(&p2, &og, &p2, &og, MatchKind::TwinOddGraceful).unwrap().accepted);
    assert!(verify_matching(&p2, &og, &Graph::path(3), &lab(Kind::OddGraceful, &[0, 1, 2]), MatchKind::TwinOddGraceful).is_err());
    let p3 = Graph::path(3);
    let a = lab(Kind::Graceful, &[0, 2, 1]);
    let b = lab(Kind::Graceful, &[2, 0, 2]);
    let r = verify_matching(&p3, &a, &p3, &b, MatchKind::VImage(None)).unwrap();
    assert!(!r.accepted);
    assert_eq!(r.violations[0].witness, Witness::Vertex(2));
    let b = lab(Kind::Graceful, &[2, 0, 1]);
    assert!(verify_matching(&p3, &a, &p3, &b, MatchKind::VImage(Some(2))).unwrap().accepted);
    assert!(verify_matching(&p3, &a, &p2, &og, MatchKind::VImage(None)).is_err());
    assert_eq!("kd-harmonious-image:1,2".parse::<MatchKind>().unwrap(), MatchKind::KdHarmoniousImage { k: 1, d: 2 });
    assert!("twin".parse::<MatchKind>().is_err());
}

#[test]
fn reciprocal_examples() {
    let (g, f) = p4();
    let rx = reciprocal_transform(&g, &f, ReciprocalPart::X, EdgeTreatment::Keep).unwrap();
    assert_eq!(rx.vertex, vec![1, 3, 0, 2]);
    assert_eq!(rx.total_colors(&g).unwrap(), vec![3, 2, 1]);
    let t = reciprocal_transform(&g, &f, ReciprocalPart::Total, EdgeTreatment::Keep).unwrap();
    let back = reciprocal_transform(&g, &t, ReciprocalPart::Total, EdgeTreatment::Keep).unwrap();
    assert_eq!(back.vertex, f.vertex);
    let c = reciprocal_transform(&g, &f, ReciprocalPart::Y, EdgeTreatment::Complement).unwrap();
    let e = c.total_colors(&g).unwrap();
    assert_eq!(e, vec![1, 2, 3]);
    assert_eq!(set(e), set(1..=3));
    let rec = reciprocal_transform(&g, &f, ReciprocalPart::X, EdgeTreatment::Recompute).unwrap();
    assert_eq!(rec.total_colors(&g).unwrap(), vec![2, 3, 2]);
    assert!(reciprocal_transform(&g, &lab(Kind::Graceful, &[0, 0, 1, 2]), ReciprocalPart::X, EdgeTreatment::Keep).is_err());
}

#[test]
fn equivalent_examples() {
    let (g, f) = p4();
    let params: Params = [("k".to_string(), 1), ("d".to_string(), 2)].into_iter().collect();
    let kd = equivalent_labeling(&g, &f, Kind::KdGraceful, &params).unwrap();
    assert_eq!(kd.vertex, vec![0, 5, 2, 3]);
    assert_eq!(set(kd.total_colors(&g).unwrap()), set([1, 3, 5]));
    let oe = equivalent_labeling(&g, &f, Kind::OddElegant, &Params::new()).unwrap();
    assert!(accepted(&g, &oe));
    assert!(matches!(
        equivalent_labeling(&g, &f, Kind::KdHarmonious, &params),
        Err(LabelingError::Unsupported(_))
    ));
    let sem = equivalent_labeling(&g, &f, Kind::SuperEdgeMagicTotal, &Params::new()).unwrap();
    assert_eq!(sem.param("magic"), Some(2 + 2 * 4 + 1));
}

#[test]
fn totally_sequential_examples() {
    let p2 = Graph::path(2);
    let l = totally_kd_sequential(&p2, &lab(Kind::SetOrderedGraceful, &[0, 1]), 1, 1).unwrap();
    assert_eq!(l.vertex, vec![1, 3]);
    assert_eq!(l.total_colors(&p2).unwrap(), vec![2]);
    let (g, f) = p4();
    let l = totally_kd_sequential(&g, &f, 1, 1).unwrap();
    let all: Vec<i64> = l.vertex.iter().copied().chain(l.total_colors(&g).unwrap()).collect();
    assert_eq!(set(all), set(1..=7));
    assert!(totally_kd_sequential(&g, &f, 0, 1).is_err());
    assert!(totally_kd_sequential(&Graph::cycle(4), &lab(Kind::Graceful, &[0, 4, 1, 3]), 1, 1).is_err());
}

#[test]
fn join_examples() {
    let k2 = Graph::path(2);
    let f = lab(Kind::SetOrderedGraceful, &[0, 1]);
    let g = lab(Kind::Graceful, &[0, 1]);
    let (h, l) = graceful_join(&k2, &f, &k2, &g, JoinMode::Bridge).unwrap();
    assert_eq!((h.vertex_count(), h.edge_count()), (4, 3));
    assert!(h.is_tree().is_tree);
    assert_eq!(set(l.total_colors(&h).unwrap()), set([1, 2, 3]));
    let (h, l) = graceful_join(&k2, &f, &k2, &g, JoinMode::CoincideX).unwrap();
    assert!(h.isomorphic(&Graph::path(3)).unwrap());
    assert_eq!(set(l.total_colors(&h).unwrap()), set([1, 2]));
    let bad = lab(Kind::Graceful, &[0, 0]);
    assert!(graceful_join(&k2, &f, &k2, &bad, JoinMode::Bridge).is_err());
}

#[test]
fn join_random_caterpillars() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cache: BTreeMap<String, Labeling> = BTreeMap::new();
    let mut label = |g: &Graph| -> Labeling {
        let key = format!("{:?}", g.edges());
        cache.entry(key).or_insert_with(|| set_ordered_graceful(g).expect("caterpillars are graceful")).clone()
    };
    for _ in 0..200 {
        let (a, b) = (caterpillar(&mut rng), caterpillar(&mut rng));
        let (fa, fb) = (label(&a), label(&b));
        let gb = Labeling { kind: Kind::Graceful, ..fb };
        let (qa, qb) = (a.edge_count(), b.edge_count());
        for (mode, q) in [
            (JoinMode::Bridge, qa + qb + 1),
            (JoinMode::CoincideX, qa + qb),
            (JoinMode::CoincideY, qa + qb),
            (JoinMode::EdgeCoincide, qa + qb - 1),
        ] {
            let (h, l) = graceful_join(&a, &fa, &b, &gb, mode).unwrap();
            assert_eq!(h.edge_count(), q);
            assert!(oracle_graceful(&h, &l.vertex), "{mode:?} {a:?} {b:?}");
        }
    }
}

#[test]
fn multi_dimension_examples() {
    let k2 = Graph::path(2);
    let m = multi_dimension_compose(&k2, &[lab(Kind::Graceful, &[0, 1]), lab(Kind::Graceful, &[1, 0])]).unwrap();
    assert_eq!(m.vertex, vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(m.dimension(), 2);
    let (g, f) = p4();
    let d = dual(&g, &f, DualScope::Vertex).unwrap();
    let m = multi_dimension_compose(&g, &[f.clone(), d.clone()]).unwrap();
    assert!(accepted(&g, &m.layer(&g, 0, Kind::Graceful)));
    assert!(accepted(&g, &m.layer(&g, 1, Kind::Graceful)));
    let same = multi_dimension_compose(&g, &[f.clone(), f.clone()]).unwrap();
    assert!(same.vertex.iter().all(|t| t[0] == t[1]));
    assert_eq!(MultiColoring::render(&[1, 12], "."), "1.12");
    assert!(multi_dimension_compose(&g, &[f]).is_err());
}

#[test]
fn small_tree_census() {
    let counts: Vec<usize> = (2..=9).map(|n| all_trees(9).iter().filter(|t| t.vertex_count() == n).count()).collect();
    assert_eq!(counts, vec![1, 1, 2, 3, 6, 11, 23, 47]);
}

#[test]
fn transforms_on_all_small_trees() {
    let trees = small_trees_with_labels();
    assert!(trees.len() > 80);
    for (t, f) in &trees {
        for &variant in SetDualVariant::ALL {
            let out = set_dual_transform(t, f, variant).unwrap();
            assert!(accepted(t, &out), "{variant:?} on {t:?}");
        }
        for &target in EQUIVALENCE_TARGETS {
            for k in 1..=3 {
                for d in 1..=3 {
                    let params: Params = [("k".to_string(), k), ("d".to_string(), d)].into_iter().collect();
                    let out = equivalent_labeling(t, f, target, &params).unwrap();
                    assert!(accepted(t, &out), "{target} k={k} d={d} on {t:?}");
                }
            }
        }
        for k in 1..=3 {
            for d in 1..=3 {
                let out = totally_kd_sequential(t, f, k, d).unwrap();
                assert!(accepted(t, &out));
            }
        }
        for &part in ReciprocalPart::ALL {
            let once = reciprocal_transform(t, f, part, EdgeTreatment::Keep).unwrap();
            let twice = reciprocal_transform(t, &once, part, EdgeTreatment::Keep).unwrap();
            assert_eq!(twice.vertex, f.vertex);
        }
    }
}
