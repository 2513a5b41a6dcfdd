mod common;

use common::graph_with_condition;
use proptest::prelude::*;
use zigzag::algebra::{Algebra, AlgebraElement};
use zigzag::field::Field;
use zigzag::graph::{build_named, find_isomorphism, recognize, spectral_class, Family, Graph};

fn element(alg: &Algebra, coeffs: &[i64]) -> AlgebraElement {
    let f = alg.field();
    let v: Vec<_> = (0..alg.dim()).map(|k| f.from_i64(coeffs[k % coeffs.len()])).collect();
    alg.from_coordinates(&v)
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, 1..40)
}

fn algebra() -> impl Strategy<Value = Algebra> {
    (graph_with_condition(5), prop_oneof![Just(None), Just(Some(3u64)), Just(Some(7u64))]).prop_map(|((g, c), p)| {
        let f = p.map_or(Field::Rational, |p| Field::prime(p).unwrap());
        Algebra::new(g, &c, f).unwrap()
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    Graph::from_edges(g.vertex_count(), &edges).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associative(a in algebra(), x in coeffs(), y in coeffs(), z in coeffs()) {
        let (x, y, z) = (element(&a, &x), element(&a, &y), element(&a, &z.iter().rev().copied().collect::<Vec<_>>()));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
    }

    #[test]
    fn unit_and_distributivity(a in algebra(), x in coeffs(), y in coeffs(), z in coeffs()) {
        let f = *a.field();
        let (x, y, z) = (element(&a, &x), element(&a, &y), element(&a, &z));
        prop_assert_eq!(a.mul(&a.one(), &x), x.clone());
        prop_assert_eq!(a.mul(&x, &a.one()), x.clone());
        prop_assert_eq!(a.mul(&x, &y.add(&z, &f)), a.mul(&x, &y).add(&a.mul(&x, &z), &f));
    }

    #[test]
    fn star_is_an_anti_involution(a in algebra(), x in coeffs(), y in coeffs()) {
        let (x, y) = (element(&a, &x), element(&a, &y));
        prop_assert_eq!(a.star(&a.star(&x)), x.clone());
        prop_assert_eq!(a.star(&a.mul(&x, &y)), a.mul(&a.star(&y), &a.star(&x)));
    }

    #[test]
    fn products_are_graded(a in algebra()) {
        for &p in a.basis() {
            for &q in a.basis() {
                if let Some(r) = a.mul_basis(p, q) {
                    prop_assert_eq!(r.degree(), p.degree() + q.degree());
                    prop_assert!(a.is_legal(&r));
                }
            }
        }
    }

    /// Without a condition the trace form pairs degree 0 with degree 2
    /// perfectly, so it is symmetric in `x·y` vs `y·x`.
    #[test]
    fn trace_is_symmetric_without_condition(g in common::connected_graph(5), x in coeffs(), y in coeffs()) {
        let a = Algebra::zigzag(g);
        let (x, y) = (element(&a, &x), element(&a, &y));
        prop_assert_eq!(a.trace(&a.mul(&x, &y)), a.trace(&a.mul(&y, &x)));
    }

    #[test]
    fn recognition_ignores_labels(fam_n in family_member(), seed in any::<u64>()) {
        let (fam, n) = fam_n;
        let g = build_named(fam, n).unwrap();
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        // Fisher–Yates from the seed keeps the strategy simple
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = relabel(&g, &perm);
        let rg = recognize(&g).unwrap();
        let rh = recognize(&h).unwrap();
        prop_assert_eq!(rg.ty, rh.ty);
        let map = rh.relabel.unwrap();
        for &(a, b) in h.edges() {
            prop_assert!(g.has_edge(map[a], map[b]));
        }
    }

    #[test]
    fn recognition_of_random_graphs((g, _) in graph_with_condition(7), perm in permutation(7)) {
        let n = g.vertex_count();
        let perm: Vec<usize> = perm.into_iter().filter(|&v| v < n).collect();
        let h = relabel(&g, &perm);
        prop_assert_eq!(recognize(&g).unwrap().ty, recognize(&h).unwrap().ty);
        prop_assert_eq!(spectral_class(&g), spectral_class(&h));
        prop_assert!(find_isomorphism(&h, &g).is_some());
    }
}

fn family_member() -> impl Strategy<Value = (Family, usize)> {
    prop_oneof![
        (1usize..=9).prop_map(|n| (Family::A, n)),
        (4usize..=9).prop_map(|n| (Family::D, n)),
        (6usize..=8).prop_map(|n| (Family::E, n)),
        (2usize..=9).prop_map(|n| (Family::AffineA, n)),
        (4usize..=9).prop_map(|n| (Family::AffineD, n)),
        (6usize..=8).prop_map(|n| (Family::AffineE, n)),
    ]
}
