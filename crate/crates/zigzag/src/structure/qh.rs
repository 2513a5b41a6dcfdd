//! Hereditary chains of idempotent ideals.
//!
//! Every ideal here is `R·e·R` for a sum of vertex idempotents, which is
//! spanned by the basis paths through a chosen vertex. Quotients by such
//! ideals therefore have the complementary basis paths as basis.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, BasisElem};
use crate::graph::{recognize, GraphType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HereditaryChain {
    /// Cumulative vertex sets: `J_l = R·(Σ_{v ∈ sets[l]} e_v)·R`.
    pub sets: Vec<Vec<usize>>,
    pub ideals: Vec<BTreeSet<BasisElem>>,
}

impl HereditaryChain {
    pub fn to_json(&self, alg: &Algebra) -> Value {
        let g = alg.graph();
        json!(self
            .sets
            .iter()
            .zip(&self.ideals)
            .map(|(s, j)| json!({
                "idempotent": s.iter().map(|&v| format!("e{}", g.label(v))).collect::<Vec<_>>(),
                "dim": j.len(),
            }))
            .collect::<Vec<_>>())
    }
}

/// Basis paths of `R·(Σ_{v ∈ vs} e_v)·R`.
pub fn idempotent_ideal(alg: &Algebra, vs: &[usize]) -> BTreeSet<BasisElem> {
    let mut out = BTreeSet::new();
    for &v in vs {
        let e = BasisElem::Idem(v);
        for &a in alg.basis() {
            let Some(ae) = alg.mul_basis(a, e) else { continue };
            for &b in alg.basis() {
                if let Some(p) = alg.mul_basis(ae, b) {
                    out.insert(p);
                }
            }
        }
    }
    out
}

pub fn chain_from_sets(alg: &Algebra, sets: Vec<Vec<usize>>) -> HereditaryChain {
    let ideals = sets.iter().map(|s| idempotent_ideal(alg, s)).collect();
    HereditaryChain { sets, ideals }
}

/// For finite type A with the condition on one leaf: `J_l` generated by the
/// first `l` vertices counted from that leaf.
pub fn build_hereditary_chain(alg: &Algebra) -> Option<HereditaryChain> {
    let g = alg.graph();
    let rec = recognize(g).ok()?;
    let GraphType::FiniteA(n) = rec.ty else { return None };
    let relabel = rec.relabel?;
    let mut p = vec![0; n];
    for (v, &c) in relabel.iter().enumerate() {
        p[c] = v;
    }
    match alg.condition().as_slice() {
        [c] if *c == p[0] => {}
        [c] if *c == p[n - 1] => p.reverse(),
        _ => return None,
    }
    Some(chain_from_sets(alg, (1..=n).map(|l| p[..l].to_vec()).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct LinkReport {
    pub idempotent_square: bool,
    pub radical_zero: bool,
    pub projective: bool,
    pub dim: usize,
    pub tensor_dim: usize,
}

impl LinkReport {
    pub fn passes(&self) -> bool {
        self.idempotent_square && self.radical_zero && self.projective
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct ChainReport {
    pub well_formed: bool,
    pub links: Vec<LinkReport>,
    pub failures: Vec<String>,
}

impl ChainReport {
    pub fn passes(&self) -> bool {
        self.well_formed && self.links.iter().all(LinkReport::passes)
    }
}

/// Checks each link `J = J_l/J_{l−1}` inside `R_l = R/J_{l−1}`.
pub fn verify_hereditary_chain(alg: &Algebra, ch: &HereditaryChain) -> ChainReport {
    let mut rep = ChainReport { well_formed: true, ..Default::default() };
    let all: BTreeSet<BasisElem> = alg.basis().iter().copied().collect();
    if ch.sets.len() != ch.ideals.len() || ch.ideals.is_empty() {
        rep.well_formed = false;
        rep.failures.push("chain is empty or sets and ideals differ in length".into());
        return rep;
    }
    for (l, j) in ch.ideals.iter().enumerate() {
        if j.iter().any(|b| !alg.is_legal(b)) {
            rep.well_formed = false;
            rep.failures.push(format!("J_{} contains elements outside the algebra", l + 1));
            return rep;
        }
        if j.iter().any(|b| !j.contains(&b.star())) {
            rep.well_formed = false;
            rep.failures.push(format!("J_{} is not star-stable", l + 1));
        }
        if l > 0 && !(ch.ideals[l - 1].is_subset(j) && ch.ideals[l - 1].len() < j.len()) {
            rep.well_formed = false;
            rep.failures.push(format!("J_{} does not strictly contain J_{}", l + 1, l));
        }
        if l > 0 && !ch.sets[l - 1].iter().all(|v| ch.sets[l].contains(v)) {
            rep.well_formed = false;
            rep.failures.push(format!("idempotent of J_{} does not contain that of J_{}", l + 1, l));
        }
    }
    if ch.ideals.last() != Some(&all) {
        rep.well_formed = false;
        rep.failures.push("last ideal is not the whole algebra".into());
    }
    let empty = BTreeSet::new();
    for l in 0..ch.ideals.len() {
        let prev = if l == 0 { &empty } else { &ch.ideals[l - 1] };
        let quotient: Vec<BasisElem> = all.difference(prev).copied().collect();
        let j: Vec<BasisElem> = ch.ideals[l].difference(prev).copied().collect();
        let mul = |a: BasisElem, b: BasisElem| alg.mul_basis(a, b).filter(|p| !prev.contains(p));
        let mut link = LinkReport { dim: j.len(), ..Default::default() };

        let squares: BTreeSet<BasisElem> =
            j.iter().flat_map(|&a| j.iter().filter_map(move |&b| mul(a, b))).collect();
        link.idempotent_square = squares == j.iter().copied().collect();
        if !link.idempotent_square {
            rep.failures.push(format!("link {}: J·J differs from J", l + 1));
        }

        let rad: Vec<BasisElem> = quotient.iter().copied().filter(|b| b.degree() > 0).collect();
        let witness = j.iter().find_map(|&a| {
            rad.iter().find_map(|&r| {
                let ar = mul(a, r)?;
                j.iter().find_map(|&b| mul(ar, b))
            })
        });
        link.radical_zero = witness.is_none();
        if let Some(w) = witness {
            rep.failures.push(format!("link {}: {} lies in J·rad·J", l + 1, w.show(alg.graph())));
        }

        let new: Vec<usize> = ch.sets[l].iter().copied().filter(|v| l == 0 || !ch.sets[l - 1].contains(v)).collect();
        let mut generated = BTreeSet::new();
        for &v in &new {
            for &a in &quotient {
                let Some(ae) = mul(a, BasisElem::Idem(v)) else { continue };
                generated.extend(quotient.iter().filter_map(|&b| mul(ae, b)));
            }
        }
        let corner_rad = rad.iter().any(|r| new.contains(&r.source()) && new.contains(&r.target()));
        link.tensor_dim = new
            .iter()
            .map(|&v| {
                let left = quotient.iter().filter(|b| b.target() == v).count();
                let right = quotient.iter().filter(|b| b.source() == v).count();
                left * right
            })
            .sum();
        link.projective = generated == j.iter().copied().collect() && !corner_rad && link.tensor_dim == link.dim;
        if !link.projective {
            rep.failures.push(format!(
                "link {}: not projective (dim {} vs tensor dim {}{})",
                l + 1,
                link.dim,
                link.tensor_dim,
                if corner_rad { ", e·rad·e ≠ 0" } else { "" }
            ));
        }
        rep.links.push(link);
    }
    rep
}

/// Whether `alg/ideal` has the multiplication table of `target` under the
/// vertex map (`None` for vertices killed by the ideal).
pub fn quotient_matches(alg: &Algebra, ideal: &BTreeSet<BasisElem>, target: &Algebra, vertex_map: &[Option<usize>]) -> bool {
    let map_elem = |b: BasisElem| -> Option<BasisElem> {
        Some(match b {
            BasisElem::Idem(i) => BasisElem::Idem(vertex_map[i]?),
            BasisElem::Arrow(i, j) => BasisElem::Arrow(vertex_map[i]?, vertex_map[j]?),
            BasisElem::Vol(i) => BasisElem::Vol(vertex_map[i]?),
        })
    };
    let quotient: Vec<BasisElem> = alg.basis().iter().copied().filter(|b| !ideal.contains(b)).collect();
    let images: Option<Vec<BasisElem>> = quotient.iter().map(|&b| map_elem(b)).collect();
    let Some(images) = images else { return false };
    let distinct: BTreeSet<BasisElem> = images.iter().copied().collect();
    if distinct.len() != images.len()
        || images.len() != target.dim()
        || images.iter().any(|b| !target.is_legal(b))
    {
        return false;
    }
    quotient.iter().zip(&images).all(|(&a, &ia)| {
        quotient.iter().zip(&images).all(|(&b, &ib)| {
            let here = alg.mul_basis(a, b).filter(|p| !ideal.contains(p)).and_then(map_elem);
            here == target.mul_basis(ia, ib)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::graph::{build_named, Family};

    fn alg(fam: Family, n: usize, c: &[usize]) -> Algebra {
        Algebra::new(build_named(fam, n).unwrap(), c, Field::Rational).unwrap()
    }

    #[test]
    fn a3_leaf_chain() {
        let a = alg(Family::A, 3, &[0]);
        let ch = build_hereditary_chain(&a).unwrap();
        use BasisElem::*;
        let j1: BTreeSet<BasisElem> = [Idem(0), Arrow(1, 0), Arrow(0, 1), Vol(1)].into_iter().collect();
        assert_eq!(ch.ideals[0], j1);
        assert_eq!(ch.ideals[1].len(), 8);
        let rep = verify_hereditary_chain(&a, &ch);
        assert!(rep.passes(), "{:?}", rep.failures);
        assert_eq!(rep.links[0].tensor_dim, 4);
    }

    #[test]
    fn negative_fixtures() {
        let a = alg(Family::A, 2, &[]);
        let ch = chain_from_sets(&a, vec![vec![0], vec![0, 1]]);
        let rep = verify_hereditary_chain(&a, &ch);
        assert!(!rep.links[0].radical_zero);

        let a = alg(Family::AffineA, 2, &[0]);
        let ch = chain_from_sets(&a, vec![vec![0], vec![0, 1, 2]]);
        let rep = verify_hereditary_chain(&a, &ch);
        assert!(!rep.links[0].projective);
        assert_eq!((rep.links[0].dim, rep.links[0].tensor_dim), (7, 9));
    }

    #[test]
    fn no_chain_elsewhere() {
        assert!(build_hereditary_chain(&alg(Family::A, 3, &[])).is_none());
        assert!(build_hereditary_chain(&alg(Family::A, 3, &[1])).is_none());
    }

    #[test]
    fn quotients_along_chain() {
        let n = 5;
        let a = alg(Family::A, n, &[0]);
        let ch = build_hereditary_chain(&a).unwrap();
        for l in 1..n {
            let small = alg(Family::A, n - l, &[0]);
            let map: Vec<Option<usize>> = (0..n).map(|v| v.checked_sub(l)).collect();
            assert!(quotient_matches(&a, &ch.ideals[l - 1], &small, &map));
        }
    }
}
