#![allow(dead_code)]

use proptest::prelude::*;
use zigzag::algebra::Algebra;
use zigzag::field::Field;
use zigzag::graph::Graph;

/// A connected graph on `1..=max_n` vertices: a random spanning tree plus
/// random extra edges.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
            (Just(n), parents, proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2))
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(k, &p)| (p, k + 1)).collect();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if extra[k] && !edges.contains(&(a, b)) {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).expect("simple graph")
        })
}

/// A graph together with a vertex condition.
pub fn graph_with_condition(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    connected_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), proptest::collection::vec(any::<bool>(), n))
            .prop_map(|(g, mask)| {
                let c = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
                (g, c)
            })
    })
}

pub fn rational(g: &Graph, c: &[usize]) -> Algebra {
    Algebra::new(g.clone(), c, Field::Rational).expect("valid condition")
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1u32 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}
