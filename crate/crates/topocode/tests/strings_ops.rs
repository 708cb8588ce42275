use std::collections::BTreeSet;

use proptest::prelude::*;
use topocode::strings::{
    pnbspp_solve, string_group_add, string_op, tb_string, vo_positions, vo_string, mix_with,
    NumberString, PnbsppMode, Rendering, StringError, StringGroup, StringOp, Traversal, Variant,
    Way, PNBSPP_DEFAULT_BOUND,
};
use topocode::topcode::TopcodeMatrix;

fn tm(x: &[i64], e: &[i64], y: &[i64]) -> TopcodeMatrix {
    TopcodeMatrix::new(x.to_vec(), e.to_vec(), y.to_vec()).unwrap()
}

fn star_s1() -> TopcodeMatrix {
    tm(&[1, 1, 1], &[3, 4, 5], &[2, 3, 4])
}

fn h3164() -> TopcodeMatrix {
    let e: Vec<i64> = (1..=15).collect();
    tm(
        &[8, 8, 8, 8, 7, 6, 5, 6, 5, 4, 3, 1, 0, 1, 0],
        &e,
        &[9, 10, 11, 12, 12, 12, 12, 14, 14, 14, 14, 13, 13, 15, 15],
    )
}

fn t(s: &str) -> Traversal {
    s.parse().unwrap()
}

fn ns(s: &str) -> NumberString {
    NumberString::from_digits(s).unwrap()
}

fn digits(m: &TopcodeMatrix, algo: &str) -> String {
    vo_string(m, t(algo)).unwrap().render(Rendering::Digits)
}

#[test]
fn vo_examples_on_star() {
    let s = star_s1();
    assert_eq!(vo_string(&s, t("vo1")).unwrap().tokens(), &[1, 1, 1, 5, 4, 3, 2, 3, 4]);
    assert_eq!(digits(&s, "vo1"), "111543234");
    assert_eq!(digits(&s, "vo1-r"), "234543111");
    assert_eq!(digits(&s, "vo1i"), "111345432");
    assert_eq!(digits(&s, "vo4"), "132143154");
}

#[test]
fn traversal_names() {
    assert_eq!(t("vo1r"), Traversal::new(Way::One, Variant::Reciprocal));
    assert_eq!(t("VoIII-i"), Traversal::new(Way::Three, Variant::Inverse));
    assert_eq!(t("voii"), Traversal::new(Way::Two, Variant::Plain));
    assert_eq!(t("voIV"), Traversal::new(Way::Four, Variant::Plain));
    for tr in Traversal::ALL {
        assert_eq!(t(&tr.to_string()), tr);
    }
    assert!("vo5".parse::<Traversal>().is_err());
    assert!("v1".parse::<Traversal>().is_err());
    assert!("vo1-x".parse::<Traversal>().is_err());
}

/// Token sequences transcribed directly from the traversal formulas.
fn formula(m: &TopcodeMatrix, tr: &str) -> Vec<i64> {
    let (x, e, y) = (m.x(), m.e(), m.y());
    let q = m.q();
    let fwd = |r: &[i64]| r.to_vec();
    let rev = |r: &[i64]| r.iter().rev().copied().collect::<Vec<_>>();
    let col = |i: usize, down: bool| if down { vec![x[i], e[i], y[i]] } else { vec![y[i], e[i], x[i]] };
    match tr {
        "vo1" => [fwd(x), rev(e), fwd(y)].concat(),
        "vo1-r" => [fwd(y), rev(e), fwd(x)].concat(),
        "vo1-i" => [rev(x), fwd(e), rev(y)].concat(),
        "vo2" => (0..q).flat_map(|i| col(i, i % 2 == 0)).collect(),
        "vo2-r" => (0..q).flat_map(|i| col(i, i % 2 == 1)).collect(),
        "vo2-i" => (0..q).rev().flat_map(|i| col(i, (q - 1 - i).is_multiple_of(2))).collect(),
        "vo4" => (0..q).flat_map(|i| col(i, true)).collect(),
        "vo4-r" => (0..q).flat_map(|i| col(i, false)).collect(),
        "vo4-i" => (0..q).rev().flat_map(|i| col(i, true)).collect(),
        _ => unreachable!(),
    }
}

#[test]
fn vo_matches_formulas() {
    let mats = [
        star_s1(),
        h3164(),
        tm(&[1, 2], &[3, 4], &[5, 6]),
        tm(&[1, 2, 3, 4], &[5, 6, 7, 8], &[9, 10, 11, 12]),
        tm(&[7], &[8], &[9]),
    ];
    for m in &mats {
        for tr in ["vo1", "vo1-r", "vo1-i", "vo2", "vo2-r", "vo2-i", "vo4", "vo4-r", "vo4-i"] {
            let got: Vec<i64> = vo_string(m, t(tr)).unwrap().tokens().iter().map(|&v| v as i64).collect();
            assert_eq!(got, formula(m, tr), "{tr} on q={}", m.q());
        }
    }
}

#[test]
fn vo2_parity_endings() {
    let odd = star_s1();
    let v = vo_string(&odd, t("vo2")).unwrap();
    // odd q ends x_q e_q y_q
    assert_eq!(&v.tokens()[6..], &[1, 5, 4]);
    let even = tm(&[1, 2], &[3, 4], &[5, 6]);
    assert_eq!(vo_string(&even, t("vo2")).unwrap().tokens(), &[1, 3, 5, 6, 4, 2]);
    assert_eq!(vo_string(&even, t("vo2-i")).unwrap().tokens(), &[2, 4, 6, 5, 3, 1]);
}

#[test]
fn vo3_follows_block_pattern() {
    // x_i = i, e_i = 10 + i, y_i = 20 + i
    let m = |q: i64| {
        let r: Vec<i64> = (1..=q).collect();
        tm(&r, &r.iter().map(|v| 10 + v).collect::<Vec<_>>(), &r.iter().map(|v| 20 + v).collect::<Vec<_>>())
    };
    let toks = |q: i64, s: &str| vo_string(&m(q), t(s)).unwrap().tokens().to_vec();
    assert_eq!(toks(4, "vo3"), vec![22, 21, 11, 1, 12, 23, 24, 13, 2, 3, 4, 14]);
    assert_eq!(toks(4, "vo3-r"), vec![2, 1, 11, 21, 12, 3, 4, 13, 22, 23, 24, 14]);
    assert_eq!(toks(4, "vo3-i"), vec![23, 24, 14, 4, 13, 22, 21, 12, 3, 2, 1, 11]);
    assert_eq!(toks(1, "vo3"), vec![21, 11, 1]);
    assert_eq!(toks(3, "vo3"), vec![22, 21, 11, 1, 12, 23, 13, 2, 3]);
    assert_eq!(
        toks(6, "vo3"),
        vec![22, 21, 11, 1, 12, 23, 24, 13, 2, 3, 14, 25, 26, 15, 4, 5, 6, 16]
    );
}

#[test]
fn vo3_golden_on_h3164() {
    let s = vo_string(&h3164(), t("vo3")).unwrap();
    assert_eq!(
        s.render(Rendering::Tokens),
        "10,9,1,8,2,11,12,3,8,8,4,12,12,5,8,7,6,12,14,7,6,5,8,14,14,9,6,5,10,14,13,11,4,3,12,13,15,13,1,0,14,15,15,1,0"
    );
}

#[test]
fn segment_fixture_matches_h3164_entries() {
    let segments: [u64; 45] = [
        9, 1, 10, 11, 2, 8, 8, 3, 12, 12, 4, 8, 8, 5, 12, 12, 6, 7, 6, 7, 14, 14, 8, 5, 6, 9, 14,
        14, 10, 5, 4, 11, 13, 13, 12, 3, 1, 13, 15, 15, 14, 0, 1, 15, 0,
    ];
    let s = NumberString::from_tokens(segments.to_vec());
    assert_eq!(
        s.render(Rendering::Digits),
        "91101128831212488512126767141485691414105411131312311315151401150"
    );
    assert_eq!(s.render(Rendering::Digits).len(), 65);
    let m = h3164();
    for tr in Traversal::ALL {
        assert_eq!(vo_string(&m, tr).unwrap().token_counts(), s.token_counts(), "{tr}");
    }
}

#[test]
fn tb_examples() {
    let a = vec![vec![1, 2], vec![3, 4]];
    let d = |s: &str| tb_string(&a, t(s)).unwrap().render(Rendering::Digits);
    assert_eq!(d("voI"), "1243");
    assert_eq!(d("voI-i"), "2134");
    assert_eq!(d("voIV"), "1324");
    assert_eq!(d("voI-r"), "3421");
    assert_eq!(d("voII"), "1342");
    assert!(matches!(tb_string(&[vec![1, 2]], t("voI")), Err(StringError::Shape(_))));
    assert_eq!(tb_string(&[vec![5, 6]], t("voIV")).unwrap().render(Rendering::Digits), "56");
    assert!(tb_string(&[vec![1, 2], vec![3]], t("voIV")).is_err());
    assert_eq!(tb_string(&[vec![1, -2], vec![3, 4]], t("voI")), Err(StringError::Negative(-2)));
}

#[test]
fn tb_zigzag_starts_bottom_left() {
    // 3x3 with value 10*row + col (1-based)
    let a: Vec<Vec<i64>> = (1..=3).map(|i| (1..=3).map(|j| 10 * i + j).collect()).collect();
    let s = tb_string(&a, t("voIII")).unwrap();
    assert_eq!(s.tokens(), &[31, 21, 32, 33, 22, 11, 12, 23, 13]);
    let r = tb_string(&a, t("voIII-r")).unwrap();
    assert_eq!(&r.tokens()[..3], &[11, 21, 12]);
    let i = tb_string(&a, t("voIII-i")).unwrap();
    assert_eq!(&i.tokens()[..3], &[33, 23, 32]);
    assert_eq!(*i.tokens().last().unwrap(), 11);
}

#[test]
fn topcode_traversals_agree_with_tb_where_shared() {
    let m = h3164();
    let rows: Vec<Vec<i64>> = m.rows().iter().map(|r| r.to_vec()).collect();
    for (vo, tb) in [("vo1", "voI"), ("vo2", "voII"), ("vo4", "voIV"), ("vo1-i", "voI-i"), ("vo4-r", "voIV-r")] {
        assert_eq!(vo_string(&m, t(vo)).unwrap(), tb_string(&rows, t(tb)).unwrap(), "{vo}");
    }
}

#[test]
fn string_operations() {
    let (a, b) = (ns("12"), ns("34"));
    let op = |o: StringOp| string_op(&a, &b, o, None, None).unwrap();
    assert_eq!(op(StringOp::Plus).tokens(), &[4, 6]);
    assert_eq!(op(StringOp::Plus).to_string(), "46");
    assert_eq!(op(StringOp::Interleave).to_string(), "1324");
    assert_eq!(op(StringOp::Times).tokens(), &[3, 8]);
    assert_eq!(op(StringOp::Minus).tokens(), &[2, 2]);
    assert_eq!(op(StringOp::Mix).tokens(), &[1, 4]);
    let s = ns("5071");
    assert_eq!(string_op(&s, &s, StringOp::Minus, None, None).unwrap().tokens(), &[0, 0, 0, 0]);
    let p = string_op(&a, &b, StringOp::Plus, Some(&[1, 0]), None).unwrap();
    assert_eq!(p.tokens(), &[5, 5]);
    let hyper = string_op(&ns("99"), &ns("99"), StringOp::Times, None, None).unwrap();
    assert_eq!(hyper.to_string(), "81,81");
    assert_eq!(hyper.render(Rendering::Digits), "8181");
    assert_eq!(
        string_op(&a, &ns("123"), StringOp::Plus, None, None),
        Err(StringError::Length { left: 2, right: 3 })
    );
    assert_eq!(
        string_op(&a, &b, StringOp::Plus, Some(&[0, 0]), None),
        Err(StringError::Permutation(2))
    );
    assert_eq!(mix_with(&a, &b, &[true, true]), Err(StringError::MixCondition));
    assert_eq!(mix_with(&a, &b, &[false, true]).unwrap().tokens(), &[3, 2]);
}

#[test]
fn reciprocal_and_digit_dual() {
    let s = ns("0192");
    assert_eq!(s.reciprocal().to_string(), "2910");
    assert_eq!(s.digit_dual().unwrap().to_string(), "9807");
    assert_eq!(s.digit_dual().unwrap().digit_dual().unwrap(), s);
    let t = NumberString::from_tokens(vec![12, 3]);
    assert_eq!(t.digit_dual(), Err(StringError::NotDigit(12)));
    assert_eq!(t.to_digit_form().tokens(), &[1, 2, 3]);
    assert_eq!("12,3".parse::<NumberString>().unwrap(), t);
    assert_eq!("0192".parse::<NumberString>().unwrap(), s);
}

#[test]
fn every_zero_string_family() {
    let g = StringGroup::new(ns("123"), 4).unwrap();
    assert_eq!(string_group_add(&g, 2, 3, 1).unwrap(), 4);
    for i in 1..=4 {
        for j in 1..=4 {
            for k in 1..=4 {
                assert_eq!(g.add(i, k, k).unwrap(), i);
                assert_eq!(g.add(i, j, k).unwrap(), g.add(j, i, k).unwrap());
                assert!(g.identity_holds(i, j, k).unwrap());
            }
        }
    }
    assert_eq!(g.element(1).unwrap().tokens(), &[2, 3, 0]);
    assert_eq!(g.add(5, 1, 1), Err(StringError::Index { index: 5, modulus: 4 }));
    assert_eq!(StringGroup::new(ns("1"), 0), Err(StringError::Modulus));
}

fn column_triples() -> Traversal {
    t("vo4")
}

#[test]
fn pnbspp_small_example() {
    let r = pnbspp_solve(&ns("011132"), 2, &PnbsppMode::GraphicableAny, column_triples(), PNBSPP_DEFAULT_BOUND)
        .unwrap();
    let p3 = tm(&[0, 1], &[1, 3], &[1, 2]);
    assert!(r.matrices.contains(&p3));
    assert_eq!(r.target_found, None);
    let real = p3.realize().unwrap();
    assert_eq!(real.graph.edge_count(), 2);
    assert_eq!(real.graph.degree_sequence().as_slice(), &[2, 1, 1]);
    assert_eq!(
        pnbspp_solve(&ns("011132"), 6, &PnbsppMode::GraphicableAny, column_triples(), 10),
        Err(StringError::QTooLarge(6))
    );
    let m = pnbspp_solve(&ns("011132"), 2, &PnbsppMode::MatchTarget(p3.xy_exchange(0).unwrap()), column_triples(), 100)
        .unwrap();
    assert_eq!(m.target_found, Some(true));
}

#[test]
fn pnbspp_bound_is_enforced() {
    let s = ns("123456789123456789");
    assert_eq!(
        pnbspp_solve(&s, 2, &PnbsppMode::GraphicableAny, column_triples(), 5),
        Err(StringError::BoundExceeded(5))
    );
}

/// All assemblies of `digits` into 3q segments, by enumerating cut subsets.
fn brute_assemblies(digits: &str, q: usize, tr: Traversal) -> BTreeSet<Vec<i64>> {
    let n = digits.len();
    let parts = 3 * q;
    let mut out = BTreeSet::new();
    if n < parts {
        return out;
    }
    let pos = vo_positions(q, tr);
    for mask in 0u32..(1 << (n - 1)) {
        if mask.count_ones() as usize != parts - 1 {
            continue;
        }
        let mut segs = Vec::new();
        let mut start = 0;
        for i in 0..n {
            if i == n - 1 || mask & (1 << i) != 0 {
                segs.push(&digits[start..=i]);
                start = i + 1;
            }
        }
        if segs.iter().any(|s| s.len() > 1 && s.starts_with('0')) {
            continue;
        }
        let mut cells = vec![0i64; parts];
        for (&(r, c), s) in pos.iter().zip(&segs) {
            cells[r * q + c] = s.parse().unwrap();
        }
        out.insert(cells);
    }
    out
}

fn flat(m: &TopcodeMatrix) -> Vec<i64> {
    m.rows().concat()
}

proptest! {
    #[test]
    fn vo_preserves_entry_multiset(
        cols in prop::collection::vec((0i64..30, 0i64..30, 0i64..30), 1..10),
        way in 0usize..12,
    ) {
        let m = TopcodeMatrix::from_columns(&cols).unwrap();
        let tr = Traversal::ALL[way];
        let s = vo_string(&m, tr).unwrap();
        prop_assert_eq!(s.len(), 3 * m.q());
        let mut a: Vec<u64> = s.tokens().to_vec();
        let mut b: Vec<u64> = m.rows().concat().into_iter().map(|v| v as u64).collect();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
        let mut cells = vo_positions(m.q(), tr);
        cells.sort_unstable();
        cells.dedup();
        prop_assert_eq!(cells.len(), 3 * m.q());
    }

    #[test]
    fn tb_visits_every_cell_once(m in 2usize..7, n in 2usize..7, way in 0usize..12) {
        let a: Vec<Vec<i64>> = (0..m).map(|i| (0..n).map(|j| (i * n + j) as i64).collect()).collect();
        let s = tb_string(&a, Traversal::ALL[way]).unwrap();
        let mut toks = s.tokens().to_vec();
        toks.sort_unstable();
        prop_assert_eq!(toks, (0..(m * n) as u64).collect::<Vec<_>>());
    }

    #[test]
    fn pnbspp_recovers_vo1_source(
        cols in prop::collection::vec((0i64..=9, 0i64..=9, 0i64..=9), 1..=4),
    ) {
        let m = TopcodeMatrix::from_columns(&cols).unwrap();
        let s = vo_string(&m, t("vo1")).unwrap();
        let r = pnbspp_solve(&s, m.q(), &PnbsppMode::MatchTarget(m.clone()), t("vo1"), PNBSPP_DEFAULT_BOUND).unwrap();
        prop_assert_eq!(r.target_found, Some(true));
        prop_assert!(r.matrices.contains(&m));
    }

    #[test]
    fn pnbspp_agrees_with_brute_force(digits in "[0-9]{3,11}", q in 1usize..=3, way in 0usize..12) {
        let tr = Traversal::ALL[way];
        let s = ns(&digits);
        let got: BTreeSet<Vec<i64>> = pnbspp_solve(&s, q, &PnbsppMode::GraphicableAny, tr, PNBSPP_DEFAULT_BOUND)
            .unwrap()
            .matrices
            .iter()
            .map(flat)
            .collect();
        let want: BTreeSet<Vec<i64>> = brute_assemblies(&digits, q, tr)
            .into_iter()
            .filter(|cells| {
                let m = TopcodeMatrix::new(cells[..q].to_vec(), cells[q..2 * q].to_vec(), cells[2 * q..].to_vec()).unwrap();
                m.is_graphicable()
            })
            .collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn digit_dual_is_an_involution(digits in "[0-9]{0,20}") {
        let s = ns(&digits);
        prop_assert_eq!(s.digit_dual().unwrap().digit_dual().unwrap(), s.clone());
        prop_assert_eq!(s.reciprocal().reciprocal(), s);
    }
}
