mod common;

use common::graph_with_condition;
use proptest::prelude::*;
use zigzag::chebyshev::{
    all_singleton_inflows, cheb_column, cheb_matrix_comp, cheb_matrix_mono, cheb_matrix_rec, cheb_sequence,
    cheb_u, cheb_u_closed, count_paths_no_chosen_zigzag, walks_from,
};
use zigzag::graph::{adjacency, build_named, Family};
use zigzag::intmat::IntMatrix;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_evaluations_agree((g, c) in graph_with_condition(6), t in 0i64..=9) {
        let rec = cheb_matrix_rec(&g, &c, t).unwrap();
        prop_assert_eq!(&rec, &cheb_matrix_comp(&g, &c, t).unwrap());
        prop_assert_eq!(&rec, &cheb_matrix_mono(&g, &c, t).unwrap());
    }

    #[test]
    fn columns_match_sequence((g, c) in graph_with_condition(6)) {
        let seq = cheb_sequence(&g, &c, 10).unwrap();
        for i in 0..g.vertex_count() {
            let cols = cheb_column(&g, &c, i, 10).unwrap();
            for (k, m) in seq.iter().enumerate() {
                prop_assert_eq!(&cols[k], &m.column(i));
            }
        }
    }

    #[test]
    fn inflow_choice_is_irrelevant((g, c) in graph_with_condition(6), t in 0usize..=6) {
        let inflows = all_singleton_inflows(&g, &c);
        let n = g.vertex_count();
        if let Some(first) = inflows.first() {
            let want = cheb_matrix_rec(&g, &c, t as i64).unwrap();
            for inflow in &inflows {
                prop_assert!(inflow.is_valid(&g, &c));
                for i in 0..n {
                    for j in 0..n {
                        let p = count_paths_no_chosen_zigzag(&g, inflow, t, i, j);
                        prop_assert_eq!(p, count_paths_no_chosen_zigzag(&g, first, t, i, j));
                        prop_assert_eq!(p as i128, want.get(i, j));
                    }
                }
            }
        }
    }

    /// `U_t(A) = A·U_{t−1}(A) − U_{t−2}(A)` with no condition.
    #[test]
    fn unconditioned_recurrence((g, _) in graph_with_condition(6), t in 1i64..=12) {
        let a = adjacency(&g);
        let lhs = cheb_matrix_rec(&g, &[], t).unwrap();
        let rhs = a.mul(&cheb_matrix_rec(&g, &[], t - 1).unwrap()).unwrap()
            .sub(&cheb_matrix_rec(&g, &[], t - 2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn polynomial_forms_agree() {
    for t in -1..=25 {
        assert_eq!(cheb_u(t).unwrap(), cheb_u_closed(t).unwrap(), "t={t}");
    }
}

/// Without chosen zigzags to forbid, walk counts are plain powers of `A`.
#[test]
fn walks_count_powers() {
    let g = build_named(Family::D, 5).unwrap();
    let a = adjacency(&g);
    let mut p = IntMatrix::identity(5);
    for t in 0..6 {
        for j in 0..5 {
            let walks = walks_from(&g, j, t);
            for i in 0..5 {
                let ends = walks.iter().filter(|w| *w.last().unwrap() == i).count() as i128;
                assert_eq!(ends, p.get(j, i));
            }
        }
        p = p.mul(&a).unwrap();
    }
}
