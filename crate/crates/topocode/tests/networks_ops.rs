use proptest::prelude::*;
use topocode::networks::*;
use topocode::Graph;

fn spec(base: Graph, root: Option<usize>, iterations: usize) -> SelfSimilarSpec {
    SelfSimilarSpec { base, root, iterations }
}

fn caterpillar(leaves: &[usize]) -> Graph {
    let n = leaves.len();
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let mut next = n;
    for (i, &c) in leaves.iter().enumerate() {
        for _ in 0..c {
            edges.push((i, next));
            next += 1;
        }
    }
    Graph::new(next, edges).unwrap()
}

/// `v_t = v - 2m + m v_(t-1)` from `v_0 = v`.
fn recurrence(v: usize, m: usize, t: usize) -> i128 {
    let mut cur = v as i128;
    for _ in 0..t {
        cur = v as i128 - 2 * m as i128 + m as i128 * cur;
    }
    cur
}

#[test]
fn algorithm_a_on_paths() {
    let end = leaf_algo_a(&spec(Graph::path(3), Some(0), 1)).unwrap();
    assert_eq!(end.counts.vertices, 4);
    assert_eq!(end.counts.closed_form, Some(4));
    assert!(end.graph.isomorphic(&Graph::path(4)).unwrap());

    let mid = leaf_algo_a(&spec(Graph::path(3), Some(1), 1)).unwrap();
    assert_eq!(mid.counts.vertices, 5);
    assert_eq!(mid.counts.closed_form, Some(5));
    assert!(mid.graph.isomorphic(&Graph::star(4)).unwrap());
    assert_eq!(mid.graph.degree(mid.root.unwrap()), 4);
}

#[test]
fn algorithm_a_root_stays_put() {
    let out = leaf_algo_a(&spec(caterpillar(&[1, 0, 2]), Some(3), 2)).unwrap();
    assert_eq!(out.graph.degree(out.root.unwrap()), 1);
}

#[test]
fn algorithm_b_on_star() {
    let out = leaf_algo_b(&spec(Graph::star(2), None, 1)).unwrap();
    assert_eq!(out.counts.closed_form, Some(out.counts.vertices as u128));
    assert_eq!(out.counts.vertices, 5);
    assert!(out.graph.is_tree().is_tree);
}

#[test]
fn algorithm_c_keeps_trees() {
    for base in [Graph::path(3), Graph::star(3), caterpillar(&[2, 1])] {
        for t in 1..=3 {
            let out = leaf_algo_c(&spec(base.clone(), None, t)).unwrap();
            assert!(out.graph.is_connected());
            assert_eq!(out.counts.edges + 1, out.counts.vertices);
            assert_eq!(out.counts.closed_form, None);
        }
    }
}

#[test]
fn invalid_specs() {
    assert_eq!(leaf_algo_a(&spec(Graph::path(3), Some(0), 0)), Err(NetworkError::NoIterations));
    assert_eq!(leaf_algo_a(&spec(Graph::path(3), Some(7), 1)), Err(NetworkError::Root(7)));
    assert_eq!(leaf_algo_b(&spec(Graph::cycle(4), None, 1)), Err(NetworkError::NotTree));
    assert_eq!(leaf_algo_b(&spec(Graph::path(2), None, 1)), Err(NetworkError::TooSmall(3)));
    assert_eq!(leaf_algo_a(&spec(Graph::star(30), Some(0), 5)), Err(NetworkError::SizeCap));
    assert_eq!(leaf_algo_c(&spec(Graph::star(1000), None, 1)), Err(NetworkError::SizeCap));
}

#[test]
fn algorithm_a_growth() {
    // One non-root leaf: linear growth.
    let sizes: Vec<usize> =
        (1..=3).map(|t| leaf_algo_a(&spec(Graph::path(4), Some(0), t)).unwrap().counts.vertices).collect();
    assert_eq!(sizes[1] - sizes[0], sizes[2] - sizes[1]);
    // Two or more: each step multiplies the size by about m.
    let base = caterpillar(&[2, 0, 1]);
    let sizes: Vec<f64> =
        (1..=3).map(|t| leaf_algo_a(&spec(base.clone(), Some(1), t)).unwrap().counts.vertices as f64).collect();
    let m = 3.0;
    for w in sizes.windows(2) {
        let ratio = w[1] / w[0];
        assert!((ratio - m).abs() < 1.0, "ratio {ratio}");
    }
}

#[test]
fn closed_form_matches_recurrence() {
    for v in 2..12 {
        for m in 1..6 {
            for t in 0..5 {
                assert_eq!(closed_form_vertices(v, m, t).map(|x| x as i128), Some(recurrence(v, m, t)).filter(|&x| x >= 0));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn measured_sizes_match_closed_forms(
        leaves in prop::collection::vec(0usize..=2, 2..=4),
        root_pick in any::<usize>(),
        t in 1usize..=3,
    ) {
        let base = caterpillar(&leaves);
        prop_assume!(base.vertex_count() >= 3);
        let root = root_pick % base.vertex_count();
        let a = leaf_algo_a(&spec(base.clone(), Some(root), t)).unwrap();
        prop_assert!(a.graph.is_tree().is_tree);
        prop_assert_eq!(a.counts.closed_form, Some(a.counts.vertices as u128));
        let m = (0..base.vertex_count()).filter(|&v| v != root && base.degree(v) == 1).count();
        prop_assert_eq!(a.counts.vertices as i128, recurrence(base.vertex_count(), m, t));

        let b = leaf_algo_b(&spec(base.clone(), None, t)).unwrap();
        prop_assert!(b.graph.is_tree().is_tree);
        prop_assert_eq!(b.counts.closed_form, Some(b.counts.vertices as u128));
    }
}
