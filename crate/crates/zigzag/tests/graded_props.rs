mod common;

use common::{connected_graph, graph_with_condition, rational, subsets};
use num_bigint::BigInt;
use proptest::prelude::*;
use zigzag::graded::{
    cartan_of, cofactor_matrix, det, det_recursion_check, series_inverse, ungraded_cartan, QPoly, QPolyMatrix,
    TruncatedSeries,
};
use zigzag::graph::connected_graphs;

fn qpoly() -> impl Strategy<Value = QPoly> {
    proptest::collection::vec(-4i64..=4, 0..6).prop_map(|c| QPoly::from_coeffs(&c))
}

fn qmatrix(n: usize) -> impl Strategy<Value = QPolyMatrix> {
    proptest::collection::vec(qpoly(), n * n).prop_map(move |es| QPolyMatrix::from_fn(n, |i, j| es[i * n + j].clone()))
}

/// Leibniz expansion, independent of the elimination in `det`.
fn leibniz(m: &QPolyMatrix) -> QPoly {
    fn go(m: &QPolyMatrix, row: usize, used: &mut Vec<bool>, sign: i64, acc: QPoly, out: &mut QPoly) {
        let n = m.size();
        if row == n {
            *out = out.add(&acc.scale(&BigInt::from(sign)));
            return;
        }
        let mut s = sign;
        for c in 0..n {
            if used[c] {
                continue;
            }
            used[c] = true;
            go(m, row + 1, used, s, acc.mul(m.get(row, c)), out);
            used[c] = false;
            s = -s;
        }
    }
    let mut out = QPoly::zero();
    go(m, 0, &mut vec![false; m.size()], 1, QPoly::one(), &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_matches_leibniz(m in (1usize..=4).prop_flat_map(qmatrix)) {
        prop_assert_eq!(det(&m), leibniz(&m));
    }

    #[test]
    fn det_is_multiplicative(m in qmatrix(3), k in qmatrix(3)) {
        prop_assert_eq!(det(&m.mul(&k)), det(&m).mul(&det(&k)));
    }

    #[test]
    fn det_of_direct_sum(m in qmatrix(2), k in qmatrix(3)) {
        prop_assert_eq!(det(&m.direct_sum(&k)), det(&m).mul(&det(&k)));
    }

    #[test]
    fn cofactor_identity(m in (1usize..=4).prop_flat_map(qmatrix)) {
        let n = m.size();
        let prod = m.mul(&cofactor_matrix(&m));
        let d = det(&m);
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { d.clone() } else { QPoly::zero() };
                prop_assert_eq!(prod.get(i, j), &want);
            }
        }
    }

    #[test]
    fn series_inverse_identity(mut p in qpoly(), order in 1usize..60) {
        if p.coeff(0) == BigInt::from(0) {
            p = p.add(&QPoly::one());
        }
        if p.coeff(0).magnitude() == &num_bigint::BigUint::from(1u8) {
            let inv = series_inverse(&p, order).unwrap();
            prop_assert!(inv.mul(&TruncatedSeries::from_poly(&p, order)).is_one());
        } else {
            prop_assert!(series_inverse(&p, order).is_err());
        }
    }

    #[test]
    fn graded_cartan_specializes((g, c) in graph_with_condition(6)) {
        let graded = cartan_of(&g, &c);
        let plain = ungraded_cartan(&g, &c);
        prop_assert_eq!(det(&graded).eval(1), BigInt::from(zigzag_int_det(&plain)));
        let a = rational(&g, &c);
        prop_assert_eq!(&a.cartan_from_modules(), &graded);
    }

    #[test]
    fn cartan_is_symmetric(g in connected_graph(6)) {
        let m = cartan_of(&g, &[]);
        for i in 0..m.size() {
            for j in 0..m.size() {
                prop_assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
    }
}

fn zigzag_int_det(m: &zigzag::intmat::IntMatrix) -> i128 {
    let n = m.rows();
    let q = QPolyMatrix::from_fn(n, |i, j| QPoly::constant(m.get(i, j) as i64));
    let d = leibniz(&q).coeff(0);
    i128::try_from(d).unwrap()
}

/// The corrected recursion holds for every graph up to six vertices, every
/// condition and every vertex removed from it.
#[test]
fn det_recursion_exhaustive() {
    let mut checked = 0;
    for n in 1..=6 {
        for g in connected_graphs(n) {
            for c in subsets(n) {
                for &v in &c {
                    let r = det_recursion_check(&g, &c, v).unwrap();
                    assert!(r.equal_corrected, "{:?} C={c:?} v={v}", g.edges());
                    assert!(r.equal_literal_at_q1);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 10_000);
}
