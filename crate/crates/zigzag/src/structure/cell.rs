//! (Relative) cell data and their exhaustive verification.

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, AlgebraElement, BasisElem};
use crate::field::Scalar;
use crate::graph::{recognize, GraphType};
use crate::structure::Subspace;

/// Cells `M(λ)` with `c_{S,T} = S·star(T)`, idempotents `E` with one order
/// each, and the map `ε` from cell elements to `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct CellDatum {
    pub names: Vec<String>,
    pub cells: Vec<Vec<AlgebraElement>>,
    pub idempotents: Vec<AlgebraElement>,
    /// `below[e][λ][μ]`: `μ` lies strictly below `λ` in the order of the
    /// `e`-th idempotent.
    pub below: Vec<Vec<Vec<bool>>>,
    /// `epsilon[λ][s]` indexes the idempotent of the `s`-th element of `M(λ)`.
    pub epsilon: Vec<Vec<usize>>,
}

impl CellDatum {
    pub fn pair_count(&self) -> usize {
        self.cells.iter().map(|m| m.len() * m.len()).sum()
    }

    pub fn to_json(&self, alg: &Algebra) -> Value {
        let g = alg.graph();
        json!({
            "index": self.names,
            "cells": self.cells.iter().map(|m| m.iter().map(|x| x.show(g)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "idempotents": self.idempotents.iter().map(|x| x.show(g)).collect::<Vec<_>>(),
        })
    }
}

/// Strict total order listing `seq` from bottom to top.
pub fn total_order(seq: &[usize]) -> Vec<Vec<bool>> {
    let n = seq.len();
    let mut rank = vec![0; n];
    for (r, &x) in seq.iter().enumerate() {
        rank[x] = r;
    }
    (0..n).map(|l| (0..n).map(|m| rank[m] < rank[l]).collect()).collect()
}

fn idem_sum(vs: impl IntoIterator<Item = usize>) -> AlgebraElement {
    let mut x = AlgebraElement::zero();
    for v in vs {
        x = x.add(&AlgebraElement::basis(BasisElem::Idem(v)), &crate::field::Field::Rational);
    }
    x
}

/// Datum along the path `p` (vertices in chain order): `M(i_k) = {e_k,
/// a_{k+1→k}}`, `M(i_n) = {e_n}`, plus the dummy `M(i_0) = {a_{1→2}}` when
/// requested.
pub fn chain_datum(alg: &Algebra, p: &[usize], dummy: bool) -> CellDatum {
    let n = p.len();
    let mut names = Vec::new();
    let mut cells = Vec::new();
    if dummy {
        names.push("i0".to_string());
        cells.push(vec![AlgebraElement::basis(BasisElem::Arrow(p[0], p[1]))]);
    }
    for k in 0..n {
        names.push(format!("i{}", alg.graph().label(p[k])));
        let mut m = vec![AlgebraElement::basis(BasisElem::Idem(p[k]))];
        if k + 1 < n {
            m.push(AlgebraElement::basis(BasisElem::Arrow(p[k + 1], p[k])));
        }
        cells.push(m);
    }
    let x = cells.len();
    CellDatum {
        names,
        epsilon: cells.iter().map(|m| vec![0; m.len()]).collect(),
        cells,
        idempotents: vec![alg.one()],
        below: vec![total_order(&(0..x).collect::<Vec<_>>())],
    }
}

/// Relative datum on a cycle `p`: all cells `{e_k, a_{k+1→k}}` (cyclic),
/// `E = {e_{p_0}, ε = Σ_{k>0} e_{p_k}}`. The order for `ε` is the chain
/// order, the one for `e_{p_0}` its opposite.
pub fn cycle_datum(alg: &Algebra, p: &[usize]) -> CellDatum {
    let n = p.len();
    let names = p.iter().map(|&v| format!("i{}", alg.graph().label(v))).collect();
    let cells: Vec<Vec<AlgebraElement>> = (0..n)
        .map(|k| {
            vec![
                AlgebraElement::basis(BasisElem::Idem(p[k])),
                AlgebraElement::basis(BasisElem::Arrow(p[(k + 1) % n], p[k])),
            ]
        })
        .collect();
    let which = |v: usize| usize::from(v != p[0]);
    let epsilon = (0..n).map(|k| vec![which(p[k]), which(p[(k + 1) % n])]).collect();
    let up: Vec<usize> = (0..n).collect();
    let down: Vec<usize> = (0..n).rev().collect();
    CellDatum {
        names,
        cells,
        idempotents: vec![idem_sum([p[0]]), idem_sum(p[1..].iter().copied())],
        below: vec![total_order(&down), total_order(&up)],
        epsilon,
    }
}

/// Cell datum for finite type A (with dummy), affine type A, and finite type
/// A with the condition on one leaf (without dummy). `None` otherwise, and
/// for `A_1` without condition, where no `S·star(T)` datum exists.
pub fn build_cell_datum(alg: &Algebra) -> Option<CellDatum> {
    let g = alg.graph();
    let rec = recognize(g).ok()?;
    let n = g.vertex_count();
    let canonical = |relabel: &[usize]| {
        let mut p = vec![0; n];
        for (v, &c) in relabel.iter().enumerate() {
            p[c] = v;
        }
        p
    };
    let cond = alg.condition();
    match rec.ty {
        GraphType::FiniteA(_) => {
            let p = canonical(rec.relabel.as_ref()?);
            match cond.as_slice() {
                [] if n >= 2 => Some(chain_datum(alg, &p, true)),
                [c] if *c == p[0] => Some(chain_datum(alg, &p, false)),
                [c] if *c == p[n - 1] => {
                    let r: Vec<usize> = p.into_iter().rev().collect();
                    Some(chain_datum(alg, &r, false))
                }
                _ => None,
            }
        }
        GraphType::AffineA(_) if cond.is_empty() => Some(cycle_datum(alg, &canonical(rec.relabel.as_ref()?))),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct CellReport {
    pub a_basis: bool,
    pub b_anti_involution: bool,
    pub c_idempotents: bool,
    pub c_idem_props_1: bool,
    pub c_idem_props_2: bool,
    pub d_multiplication: bool,
    pub failures: Vec<String>,
}

impl CellReport {
    pub fn passes(&self) -> bool {
        self.a_basis
            && self.b_anti_involution
            && self.c_idempotents
            && self.c_idem_props_1
            && self.c_idem_props_2
            && self.d_multiplication
    }
}

fn malformed(msg: String) -> CellReport {
    CellReport { failures: vec![format!("malformed datum: {msg}")], ..Default::default() }
}

fn check_shape(alg: &Algebra, d: &CellDatum) -> Result<(), String> {
    let x = d.cells.len();
    if d.names.len() != x || d.epsilon.len() != x {
        return Err("index, cell and ε lists differ in length".into());
    }
    if d.below.len() != d.idempotents.len() {
        return Err("one order per idempotent is required".into());
    }
    for o in &d.below {
        if o.len() != x || o.iter().any(|r| r.len() != x) {
            return Err("order has the wrong size".into());
        }
        for l in 0..x {
            if o[l][l] {
                return Err("order is not irreflexive".into());
            }
            for m in 0..x {
                if o[l][m] && (0..x).any(|k| o[m][k] && !o[l][k]) {
                    return Err("order is not transitive".into());
                }
            }
        }
    }
    for (m, eps) in d.cells.iter().zip(&d.epsilon) {
        if m.len() != eps.len() || eps.iter().any(|&e| e >= d.idempotents.len()) {
            return Err("ε is not defined on every cell element".into());
        }
    }
    for x in d.cells.iter().flatten().chain(&d.idempotents) {
        if let Some((b, _)) = x.terms().find(|(b, _)| !alg.is_legal(b)) {
            return Err(format!("{} is not an element of the algebra", b.show(alg.graph())));
        }
    }
    Ok(())
}

/// Checks the four axioms exhaustively over the basis.
pub fn verify_cell_datum(alg: &Algebra, d: &CellDatum) -> CellReport {
    if let Err(msg) = check_shape(alg, d) {
        return malformed(msg);
    }
    let f = *alg.field();
    let g = alg.graph();
    let mut rep = CellReport::default();
    let x = d.cells.len();
    // c[λ][s][t]
    let c: Vec<Vec<Vec<AlgebraElement>>> = d
        .cells
        .iter()
        .map(|m| m.iter().map(|s| m.iter().map(|t| alg.mul(s, &alg.star(t))).collect()).collect())
        .collect();
    let coords = |e: &AlgebraElement| alg.coordinates(e);

    // (a)
    let all: Vec<Vec<Scalar>> = c.iter().flatten().flatten().map(coords).collect();
    let rank = Subspace::new(f, all.iter().cloned()).dim();
    rep.a_basis = all.len() == alg.dim() && rank == alg.dim();
    if !rep.a_basis {
        rep.failures.push(format!("(a) {} cell pairs of rank {rank} vs dimension {}", all.len(), alg.dim()));
    }

    // (b): star is an anti-involution and swaps S and T
    let basis = alg.basis();
    let anti = basis.iter().all(|&a| {
        basis.iter().all(|&b| {
            let (ea, eb) = (AlgebraElement::basis(a), AlgebraElement::basis(b));
            alg.star(&alg.mul(&ea, &eb)) == alg.mul(&alg.star(&eb), &alg.star(&ea))
        })
    }) && basis.iter().all(|&a| {
        let e = AlgebraElement::basis(a);
        alg.star(&alg.star(&e)) == e
    });
    let swaps = (0..x).all(|l| {
        let m = d.cells[l].len();
        (0..m).all(|s| (0..m).all(|t| alg.star(&c[l][s][t]) == c[l][t][s]))
    });
    rep.b_anti_involution = anti && swaps;
    if !rep.b_anti_involution {
        rep.failures.push("(b) star(c_{S,T}) differs from c_{T,S}".into());
    }

    // (c) idempotents
    let es = &d.idempotents;
    let mut idem_ok = true;
    for (i, e) in es.iter().enumerate() {
        if e.is_zero() || alg.star(e) != *e || alg.mul(e, e) != *e {
            idem_ok = false;
            rep.failures.push(format!("(c) {} is not a nonzero star-fixed idempotent", e.show(g)));
        }
        for e2 in &es[i + 1..] {
            if !alg.mul(e, e2).is_zero() || !alg.mul(e2, e).is_zero() {
                idem_ok = false;
                rep.failures.push(format!("(c) {} and {} are not orthogonal", e.show(g), e2.show(g)));
            }
        }
    }
    rep.c_idempotents = idem_ok;

    // span of c^μ over a set of indices
    let span = |pick: &dyn Fn(usize) -> bool| {
        Subspace::new(f, (0..x).filter(|&m| pick(m)).flat_map(|m| c[m].iter().flatten().map(coords).collect::<Vec<_>>()))
    };

    rep.c_idem_props_1 = true;
    'props1: for (ei, e) in es.iter().enumerate() {
        let corner: Vec<AlgebraElement> = basis
            .iter()
            .map(|&b| alg.mul(&alg.mul(e, &AlgebraElement::basis(b)), e))
            .filter(|y| !y.is_zero())
            .collect();
        for l in 0..x {
            let lower = span(&|m| m == l || d.below[ei][l][m]);
            for y in &corner {
                for ct in c[l].iter().flatten() {
                    if !lower.contains(&coords(&alg.mul(y, ct))) {
                        rep.c_idem_props_1 = false;
                        rep.failures.push(format!("(c) εRε·c not below {} for ε = {}", d.names[l], e.show(g)));
                        break 'props1;
                    }
                }
            }
        }
    }

    rep.c_idem_props_2 = true;
    'props2: for (ei, e) in es.iter().enumerate() {
        for l in 0..x {
            for (s, row) in c[l].iter().enumerate() {
                for ct in row {
                    let lhs = alg.mul(e, ct);
                    let ok = if d.epsilon[l][s] == ei { lhs == *ct } else { lhs.is_zero() };
                    if !ok {
                        rep.c_idem_props_2 = false;
                        rep.failures.push(format!("(c) ε·c_{{S,T}} wrong in cell {}", d.names[l]));
                        break 'props2;
                    }
                }
            }
        }
    }

    // (d): solve r_a(S', S) from the first T, re-verify on every other T
    rep.d_multiplication = true;
    'd: for l in 0..x {
        let m = d.cells[l].len();
        // W_T = span{c^μ ε_T : μ strictly below λ in the order of ε_T}
        let w: Vec<Subspace> = (0..m)
            .map(|t| {
                let ei = d.epsilon[l][t];
                let gens = (0..x)
                    .filter(|&mu| d.below[ei][l][mu])
                    .flat_map(|mu| c[mu].iter().flatten().map(|y| coords(&alg.mul(y, &es[ei]))).collect::<Vec<_>>());
                Subspace::new(f, gens)
            })
            .collect();
        for &a in basis {
            let a = AlgebraElement::basis(a);
            for s in 0..m {
                let target = |t: usize| w[t].reduce(coords(&alg.mul(&a, &c[l][s][t])));
                let cols = |t: usize| (0..m).map(|s2| w[t].reduce(coords(&c[l][s2][t]))).collect::<Vec<_>>();
                let cols0 = cols(0);
                let mat: Vec<Vec<Scalar>> = (0..alg.dim()).map(|k| cols0.iter().map(|v| v[k].clone()).collect()).collect();
                let Some(r) = f.solve(&mat, m, &target(0)) else {
                    rep.d_multiplication = false;
                    rep.failures.push(format!("(d) a·c_{{S,T}} not in the cell span for {}", d.names[l]));
                    break 'd;
                };
                for t in 1..m {
                    let mut res = target(t);
                    for (s2, v) in cols(t).iter().enumerate() {
                        for (x, y) in res.iter_mut().zip(v) {
                            *x = f.sub(x, &f.mul(&r[s2], y));
                        }
                    }
                    if !res.iter().all(Zero::is_zero) {
                        rep.d_multiplication = false;
                        rep.failures.push(format!("(d) coefficients depend on T in cell {}", d.names[l]));
                        break 'd;
                    }
                }
            }
        }
    }
    rep
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
    fn a3_datum() {
        let a = alg(Family::A, 3, &[]);
        let d = build_cell_datum(&a).unwrap();
        let sizes: Vec<usize> = d.cells.iter().map(|m| m.len() * m.len()).collect();
        assert_eq!(sizes, vec![1, 4, 4, 1]);
        let rep = verify_cell_datum(&a, &d);
        assert!(rep.passes(), "{:?}", rep.failures);
    }

    #[test]
    fn missing_dummy_fails_a() {
        let a = alg(Family::A, 3, &[]);
        let mut d = build_cell_datum(&a).unwrap();
        d.cells.remove(0);
        d.names.remove(0);
        d.epsilon.remove(0);
        d.below = vec![total_order(&[0, 1, 2])];
        let rep = verify_cell_datum(&a, &d);
        assert!(!rep.a_basis);
        assert!(rep.failures[0].contains("9 cell pairs"));
    }

    #[test]
    fn affine_a2_datum() {
        let a = alg(Family::AffineA, 2, &[]);
        let d = build_cell_datum(&a).unwrap();
        assert_eq!(d.idempotents.len(), 2);
        let rep = verify_cell_datum(&a, &d);
        assert!(rep.passes(), "{:?}", rep.failures);
    }

    #[test]
    fn leaf_condition() {
        for c in [0, 3] {
            let a = alg(Family::A, 4, &[c]);
            let d = build_cell_datum(&a).unwrap();
            assert!(verify_cell_datum(&a, &d).passes());
        }
        assert!(build_cell_datum(&alg(Family::A, 4, &[1])).is_none());
        assert!(build_cell_datum(&alg(Family::D, 4, &[])).is_none());
    }
}
