mod common;

use std::collections::BTreeSet;

use common::{rational, subsets};
use proptest::prelude::*;
use zigzag::graded::{det, ungraded_cartan};
use zigzag::graph::{build_named, connected_graphs, Family, Graph};
use zigzag::intmat::IntMatrix;
use zigzag::structure::classify::classify;
use zigzag::structure::qh::quotient_matches;
use zigzag::structure::{
    build_cell_datum, build_hereditary_chain, decomp_search, verify_cell_datum, verify_hereditary_chain,
};

fn isqrt(v: i128) -> i128 {
    (0..=v).take_while(|r| r * r <= v).last().unwrap_or(0)
}

/// Every `D` with at most `max_rows` rows, enumerated entry by entry and
/// normalized like the search output.
fn brute_decomp(c: &IntMatrix, max_rows: usize) -> BTreeSet<Vec<Vec<i128>>> {
    let n = c.rows();
    let bound: Vec<i128> = (0..n).map(|j| isqrt(c.get(j, j))).collect();
    let mut out = BTreeSet::new();
    for m in n..=max_rows {
        let cells: Vec<(usize, usize)> =
            (0..m).flat_map(|r| (0..n).map(move |k| (r, k))).filter(|&(r, k)| r != k).collect();
        let mut d = vec![vec![0i128; n]; m];
        for (j, row) in d.iter_mut().enumerate().take(n) {
            row[j] = 1;
        }
        let mut idx = vec![0i128; cells.len()];
        loop {
            for (k, &(r, col)) in cells.iter().enumerate() {
                d[r][col] = idx[k];
            }
            let extra_nonzero = d[n..].iter().all(|row| row.iter().any(|&v| v != 0));
            let ok = extra_nonzero
                && (0..n).all(|i| (0..n).all(|j| (0..m).map(|r| d[r][i] * d[r][j]).sum::<i128>() == c.get(i, j)));
            if ok {
                let mut norm = d.clone();
                norm[n..].sort_by(|a, b| b.cmp(a));
                out.insert(norm);
            }
            // odometer over the free cells
            let mut k = 0;
            while k < cells.len() {
                idx[k] += 1;
                if idx[k] <= bound[cells[k].1] {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == cells.len() {
                break;
            }
        }
    }
    out
}

fn small_symmetric() -> impl Strategy<Value = IntMatrix> {
    (2usize..=3).prop_flat_map(|n| {
        (Just(n), proptest::collection::vec(1i64..=3, n), proptest::collection::vec(0i64..=2, n * (n - 1) / 2))
    })
    .prop_map(|(n, diag, off)| {
        let mut m = IntMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            m.set(i, i, diag[i] as i128);
            for j in i + 1..n {
                m.set(i, j, off[k] as i128);
                m.set(j, i, off[k] as i128);
                k += 1;
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn decomp_matches_brute_force(c in small_symmetric()) {
        let trace: i128 = (0..c.rows()).map(|i| c.get(i, i)).sum();
        let max_rows = (trace as usize).min(c.rows() + 2);
        let got: BTreeSet<Vec<Vec<i128>>> =
            decomp_search(&c, Some(max_rows)).unwrap().into_iter().map(|s| s.d.to_rows()).collect();
        prop_assert_eq!(got, brute_decomp(&c, max_rows));
    }
}

#[test]
fn decompositions_factor() {
    for n in 1..=5 {
        for g in connected_graphs(n) {
            for c in subsets(n) {
                let m = ungraded_cartan(&g, &c);
                for s in decomp_search(&m, None).unwrap() {
                    assert_eq!(s.d.transpose().mul(&s.d).unwrap(), m);
                    if let Some(order) = &s.order {
                        for (pos, &r) in order.iter().enumerate() {
                            for &later in &order[pos + 1..] {
                                assert_eq!(s.d.get(r, later), 0, "order {order:?}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn type_a_has_triangular_factorizations() {
    for n in 1..=6 {
        let sols = decomp_search(&ungraded_cartan(&build_named(Family::A, n).unwrap(), &[]), None).unwrap();
        assert!(!sols.is_empty(), "A{n}");
        assert!(sols.iter().any(|s| s.triangularizable), "A{n}");
    }
}

/// Two circulants, plus `I` with an extra all-ones row. The latter shows up
/// once for each top-block position the all-ones row can take.
#[test]
fn triangle_factorizations() {
    let sols = decomp_search(&ungraded_cartan(&build_named(Family::AffineA, 2).unwrap(), &[]), None).unwrap();
    let (square, tall): (Vec<_>, Vec<_>) = sols.iter().partition(|s| s.d.rows() == 3);
    assert_eq!(square.len(), 2);
    assert!(square.iter().all(|s| !s.triangularizable));
    assert_eq!(tall.len(), 4);
    let rows = |m: &IntMatrix| -> BTreeSet<Vec<i128>> { m.to_rows().into_iter().collect() };
    let want: BTreeSet<Vec<i128>> = [vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]].into();
    assert!(tall.iter().all(|s| s.triangularizable && rows(&s.d) == want));
}

#[test]
fn square_has_two_factorizations() {
    let sols = decomp_search(&ungraded_cartan(&build_named(Family::AffineA, 3).unwrap(), &[]), None).unwrap();
    assert_eq!(sols.len(), 2);
    assert!(sols.iter().all(|s| s.d.rows() == 4 && !s.triangularizable));
}

#[test]
fn cellular_witnesses_verify() {
    for n in 1..=5 {
        for g in connected_graphs(n) {
            for c in subsets(n) {
                let r = classify(&g, &c).unwrap();
                let a = rational(&g, &c);
                if r.cellular.holds || r.relative_cellular.holds {
                    if let Some(d) = build_cell_datum(&a) {
                        assert!(verify_cell_datum(&a, &d).passes(), "{:?} C={c:?}", g.edges());
                    } else {
                        assert!(n == 1 && c.is_empty());
                    }
                }
                if r.quasi_hereditary.holds {
                    let ch = build_hereditary_chain(&a).expect("chain");
                    assert!(verify_hereditary_chain(&a, &ch).passes());
                }
            }
        }
    }
}

#[test]
fn witnesses_up_to_eight() {
    for n in 1..=8 {
        let g = build_named(Family::A, n).unwrap();
        for c in [vec![], vec![0], vec![n - 1]] {
            let a = rational(&g, &c);
            match build_cell_datum(&a) {
                Some(d) => assert!(verify_cell_datum(&a, &d).passes(), "A{n} C={c:?}"),
                None => assert_eq!((n, c.len()), (1, 0)),
            }
            if !c.is_empty() {
                let ch = build_hereditary_chain(&a).unwrap();
                assert!(verify_hereditary_chain(&a, &ch).passes(), "A{n} C={c:?}");
            }
        }
    }
}

/// Along a leaf chain each quotient is the leaf-condition algebra on the
/// remaining path, and its Cartan determinant is 1.
#[test]
fn chain_quotients_are_smaller_type_a() {
    for n in 2..=7 {
        for leaf in [0, n - 1] {
            let a = rational(&build_named(Family::A, n).unwrap(), &[leaf]);
            let ch = build_hereditary_chain(&a).unwrap();
            for l in 1..n {
                let killed: BTreeSet<usize> = ch.sets[l - 1].iter().copied().collect();
                let kept: Vec<usize> = (0..n).filter(|v| !killed.contains(v)).collect();
                let edges: Vec<(usize, usize)> = (0..kept.len() - 1).map(|k| (k, k + 1)).collect();
                let small_graph = Graph::from_edges(kept.len(), &edges).unwrap();
                let map: Vec<Option<usize>> = (0..n).map(|v| kept.iter().position(|&k| k == v)).collect();
                let new_leaf = if leaf == 0 { 0 } else { kept.len() - 1 };
                let small = rational(&small_graph, &[new_leaf]);
                assert!(quotient_matches(&a, &ch.ideals[l - 1], &small, &map), "A{n} leaf {leaf} l={l}");
                assert!(det(&small.graded_cartan()).coeffs() == [1.into()]);
            }
        }
    }
}
