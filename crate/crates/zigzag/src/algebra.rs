//! Normal-form basis and multiplication for `Z^C(Γ)`.
//!
//! Products are concatenations: `a·b` means "follow `a`, then `b`". The
//! structure constants are all 0 or 1, so basis products are computed
//! without any scalars at all.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{param, Result};
use crate::field::{Field, Scalar};
use crate::graded::{QPoly, QPolyMatrix};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BasisElem {
    Idem(usize),
    /// Arrow from the first vertex to the second.
    Arrow(usize, usize),
    Vol(usize),
}

impl BasisElem {
    pub fn degree(&self) -> u32 {
        match self {
            BasisElem::Idem(_) => 0,
            BasisElem::Arrow(..) => 1,
            BasisElem::Vol(_) => 2,
        }
    }

    pub fn source(&self) -> usize {
        match *self {
            BasisElem::Idem(i) | BasisElem::Vol(i) | BasisElem::Arrow(i, _) => i,
        }
    }

    pub fn target(&self) -> usize {
        match *self {
            BasisElem::Idem(i) | BasisElem::Vol(i) | BasisElem::Arrow(_, i) => i,
        }
    }

    pub fn star(&self) -> BasisElem {
        match *self {
            BasisElem::Arrow(i, j) => BasisElem::Arrow(j, i),
            b => b,
        }
    }

    /// Human-readable form using the graph's display labels.
    pub fn show(&self, g: &Graph) -> String {
        match *self {
            BasisElem::Idem(i) => format!("e{}", g.label(i)),
            BasisElem::Arrow(i, j) => format!("a{}>{}", g.label(i), g.label(j)),
            BasisElem::Vol(i) => format!("x{}", g.label(i)),
        }
    }
}

/// Sparse linear combination of basis elements. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<BasisElem, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: BasisElem) -> Self {
        Self::term(b, Scalar::one())
    }

    pub fn term(b: BasisElem, c: Scalar) -> Self {
        let mut x = Self::zero();
        if !c.is_zero() {
            x.terms.insert(b, c);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElem, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &BasisElem) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, b: BasisElem, c: &Scalar, field: &Field) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.get(&b) {
            Some(old) => field.add(old, c),
            None => c.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&b);
        } else {
            self.terms.insert(b, v);
        }
    }

    pub fn add(&self, other: &Self, field: &Field) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c, field);
        }
        out
    }

    pub fn scale(&self, k: &Scalar, field: &Field) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out.add_term(*b, &field.mul(c, k), field);
        }
        out
    }

    /// Degree if all terms share one, `None` for zero or mixed elements.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|b| b.degree());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn component(&self, degree: u32) -> Self {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == degree)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    pub fn show(&self, g: &Graph) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(b, c)| {
                if c.is_one() {
                    b.show(g)
                } else {
                    format!("{}*{}", crate::field::render(c), b.show(g))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Clone, Debug)]
pub struct Algebra {
    graph: Graph,
    condition: Vec<bool>,
    field: Field,
    basis: Vec<BasisElem>,
    index: HashMap<BasisElem, usize>,
}

/// Gram matrix of `(a, b) ↦ tr(a·b)` on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceForm {
    pub gram: Vec<Vec<Scalar>>,
    pub nondegenerate: bool,
}

/// `q^s P_i`: paths ending at `i`, with the left action tabulated on the
/// algebra generators (idempotents and arrows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveModule {
    pub vertex: usize,
    pub shift: i32,
    pub basis: Vec<BasisElem>,
    /// `(generator, basis index) -> basis index` for nonzero actions.
    pub action: BTreeMap<(BasisElem, usize), usize>,
}

impl ProjectiveModule {
    pub fn degrees(&self) -> Vec<i32> {
        self.basis.iter().map(|b| self.shift + b.degree() as i32).collect()
    }

    /// Left action `z ⊳ p` of a generator on a basis vector.
    pub fn act(&self, z: BasisElem, p: usize) -> Option<usize> {
        self.action.get(&(z, p)).copied()
    }
}

impl Algebra {
    /// `boundary` lists stored (0-based) vertex indices.
    pub fn new(graph: Graph, boundary: &[usize], field: Field) -> Result<Algebra> {
        let n = graph.vertex_count();
        let mut condition = vec![false; n];
        for &c in boundary {
            if c >= n {
                return param(format!("boundary vertex {c} out of range"));
            }
            condition[c] = true;
        }
        let mut basis: Vec<BasisElem> = (0..n).map(BasisElem::Idem).collect();
        for i in 0..n {
            for &j in graph.neighbors(i) {
                basis.push(BasisElem::Arrow(i, j));
            }
        }
        basis.extend((0..n).filter(|&i| !condition[i]).map(BasisElem::Vol));
        basis.sort();
        let index = basis.iter().enumerate().map(|(k, b)| (*b, k)).collect();
        Ok(Algebra { graph, condition, field, basis, index })
    }

    /// `Z(Γ)` over ℚ.
    pub fn zigzag(graph: Graph) -> Algebra {
        Self::new(graph, &[], Field::Rational).expect("empty boundary")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn in_condition(&self, i: usize) -> bool {
        self.condition[i]
    }

    pub fn condition(&self) -> Vec<usize> {
        (0..self.condition.len()).filter(|&i| self.condition[i]).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn index_of(&self, b: &BasisElem) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn is_legal(&self, b: &BasisElem) -> bool {
        self.index.contains_key(b)
    }

    /// Product of two basis elements, `None` meaning zero. Both must be
    /// legal.
    pub fn mul_basis(&self, a: BasisElem, b: BasisElem) -> Option<BasisElem> {
        use BasisElem::*;
        if a.target() != b.source() || a.degree() + b.degree() > 2 {
            return None;
        }
        match (a, b) {
            (Idem(_), x) | (x, Idem(_)) => Some(x),
            (Arrow(i, _), Arrow(_, k)) => (i == k && !self.condition[i]).then_some(Vol(i)),
            _ => None,
        }
    }

    pub fn multiply(&self, a: BasisElem, b: BasisElem) -> Result<AlgebraElement> {
        for x in [a, b] {
            if !self.is_legal(&x) {
                return param(format!("{x:?} is not a basis element of this algebra"));
            }
        }
        Ok(self.mul_basis(a, b).map(AlgebraElement::basis).unwrap_or_default())
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                if let Some(p) = self.mul_basis(*a, *b) {
                    out.add_term(p, &self.field.mul(c, d), &self.field);
                }
            }
        }
        out
    }

    pub fn star(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (b, c) in x.terms() {
            out.add_term(b.star(), c, &self.field);
        }
        out
    }

    pub fn one(&self) -> AlgebraElement {
        let mut x = AlgebraElement::zero();
        for i in 0..self.vertex_count() {
            x.add_term(BasisElem::Idem(i), &Scalar::one(), &self.field);
        }
        x
    }

    /// Coordinates in the basis order.
    pub fn coordinates(&self, x: &AlgebraElement) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (b, c) in x.terms() {
            v[self.index[b]] = c.clone();
        }
        v
    }

    pub fn from_coordinates(&self, v: &[Scalar]) -> AlgebraElement {
        let mut x = AlgebraElement::zero();
        for (k, c) in v.iter().enumerate() {
            x.add_term(self.basis[k], c, &self.field);
        }
        x
    }

    /// Graded dimension of `Hom(P_i, P_j) = e_i Z e_j`.
    pub fn hom_qdim(&self, i: usize, j: usize) -> QPoly {
        let mut coeffs = vec![0i64; 3];
        for b in &self.basis {
            if b.source() == i && b.target() == j {
                coeffs[b.degree() as usize] += 1;
            }
        }
        QPoly::from_coeffs(&coeffs)
    }

    pub fn trace(&self, x: &AlgebraElement) -> Scalar {
        let mut t = Scalar::zero();
        for (b, c) in x.terms() {
            if matches!(b, BasisElem::Vol(_)) {
                t = self.field.add(&t, c);
            }
        }
        t
    }

    pub fn trace_form(&self) -> TraceForm {
        let d = self.dim();
        let mut gram = vec![vec![Scalar::zero(); d]; d];
        for (i, &a) in self.basis.iter().enumerate() {
            for (j, &b) in self.basis.iter().enumerate() {
                if let Some(BasisElem::Vol(_)) = self.mul_basis(a, b) {
                    gram[i][j] = Scalar::one();
                }
            }
        }
        let nondegenerate = self.field.rank(&gram) == d;
        TraceForm { gram, nondegenerate }
    }

    /// `(1+q²)I + qA − q²E_C`.
    pub fn graded_cartan(&self) -> QPolyMatrix {
        let n = self.vertex_count();
        QPolyMatrix::from_fn(n, |i, j| {
            if i == j {
                if self.condition[i] {
                    QPoly::one()
                } else {
                    QPoly::from_coeffs(&[1, 0, 1])
                }
            } else if self.graph.has_edge(i, j) {
                QPoly::monomial(1, 1)
            } else {
                QPoly::zero()
            }
        })
    }

    /// Graded composition multiplicities read off the projective bases:
    /// entry `(i, j)` counts basis vectors of `P_j` whose head is `S_i`.
    pub fn cartan_from_modules(&self) -> QPolyMatrix {
        let n = self.vertex_count();
        let mut counts = vec![vec![vec![0i64; 3]; n]; n];
        for j in 0..n {
            let p = self.projective(j, 0);
            for (b, d) in p.basis.iter().zip(p.degrees()) {
                counts[b.source()][j][d as usize] += 1;
            }
        }
        QPolyMatrix::from_fn(n, |i, j| QPoly::from_coeffs(&counts[i][j]))
    }

    pub fn projective(&self, i: usize, shift: i32) -> ProjectiveModule {
        let basis: Vec<BasisElem> = self.basis.iter().copied().filter(|b| b.target() == i).collect();
        let mut action = BTreeMap::new();
        let generators = self.basis.iter().copied().filter(|b| b.degree() <= 1);
        for z in generators {
            for (k, &p) in basis.iter().enumerate() {
                if let Some(r) = self.mul_basis(z, p) {
                    let pos = basis.iter().position(|&b| b == r).expect("closed under action");
                    action.insert((z, k), pos);
                }
            }
        }
        ProjectiveModule { vertex: i, shift, basis, action }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.condition().iter().map(|&i| self.graph.label(i).to_string()).collect();
        if c.is_empty() {
            write!(f, "Z({})", self.graph)
        } else {
            write!(f, "Z^{{{}}}({})", c.join(","), self.graph)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_named, Family};
    use BasisElem::*;

    fn alg(fam: Family, n: usize, c: &[usize]) -> Algebra {
        Algebra::new(build_named(fam, n).unwrap(), c, Field::Rational).unwrap()
    }

    #[test]
    fn zigzag_relation() {
        let a = alg(Family::A, 2, &[]);
        assert_eq!(a.multiply(Arrow(0, 1), Arrow(1, 0)).unwrap(), AlgebraElement::basis(Vol(0)));
        let a3 = alg(Family::A, 3, &[]);
        assert!(a3.multiply(Arrow(0, 1), Arrow(1, 2)).unwrap().is_zero());
        assert!(a3.multiply(Vol(0), Arrow(0, 1)).unwrap().is_zero());
        let c = alg(Family::A, 2, &[0]);
        assert!(c.multiply(Arrow(0, 1), Arrow(1, 0)).unwrap().is_zero());
        assert!(c.multiply(Vol(0), Idem(0)).is_err());
    }

    #[test]
    fn volume_times_arrow_via_relations() {
        // x_1 = a_{1→3}a_{3→1} in the triangle, so x_1 a_{1→2} = a_{1→3}(a_{3→1}a_{1→2}) and
        // the bracket is a path through three vertices
        let a = alg(Family::AffineA, 2, &[]);
        let lhs = a.mul(&AlgebraElement::basis(Vol(0)), &AlgebraElement::basis(Arrow(0, 1)));
        let inner = a.mul(&AlgebraElement::basis(Arrow(2, 0)), &AlgebraElement::basis(Arrow(0, 1)));
        let rhs = a.mul(&AlgebraElement::basis(Arrow(0, 2)), &inner);
        assert!(lhs.is_zero() && rhs.is_zero());
    }

    #[test]
    fn star_values() {
        let a = alg(Family::A, 2, &[]);
        assert_eq!(a.star(&AlgebraElement::basis(Arrow(0, 1))), AlgebraElement::basis(Arrow(1, 0)));
        assert_eq!(a.star(&AlgebraElement::basis(Idem(0))), AlgebraElement::basis(Idem(0)));
        let x = a.mul(&AlgebraElement::basis(Arrow(0, 1)), &AlgebraElement::basis(Arrow(1, 0)));
        let sx = a.mul(&a.star(&AlgebraElement::basis(Arrow(1, 0))), &a.star(&AlgebraElement::basis(Arrow(0, 1))));
        assert_eq!(a.star(&x), sx);
    }

    #[test]
    fn hom_dimensions() {
        let a = alg(Family::A, 2, &[]);
        assert_eq!(a.hom_qdim(0, 0), QPoly::from_coeffs(&[1, 0, 1]));
        assert_eq!(a.hom_qdim(0, 1), QPoly::monomial(1, 1));
        assert_eq!(alg(Family::A, 2, &[0]).hom_qdim(0, 0), QPoly::one());
    }

    #[test]
    fn trace_forms() {
        assert!(alg(Family::A, 2, &[]).trace_form().nondegenerate);
        assert!(!alg(Family::A, 2, &[0]).trace_form().nondegenerate);
        let t = alg(Family::A, 1, &[]).trace_form();
        let one = Scalar::one();
        let zero = Scalar::zero();
        assert_eq!(t.gram, vec![vec![zero.clone(), one.clone()], vec![one, zero]]);
    }

    #[test]
    fn cartan_matrices() {
        let a = alg(Family::A, 2, &[]);
        let c = a.graded_cartan();
        assert_eq!(c.get(0, 0), &QPoly::from_coeffs(&[1, 0, 1]));
        assert_eq!(c.get(0, 1), &QPoly::monomial(1, 1));
        let b = alg(Family::A, 3, &[0]);
        assert_eq!(b.graded_cartan().get(0, 0), &QPoly::one());
        assert_eq!(b.graded_cartan().get(1, 1), &QPoly::from_coeffs(&[1, 0, 1]));
        assert_eq!(alg(Family::A, 1, &[]).cartan_from_modules().get(0, 0), &QPoly::from_coeffs(&[1, 0, 1]));
        for (fam, n, c) in [(Family::D, 4, vec![]), (Family::A, 4, vec![0])] {
            let a = alg(fam, n, &c);
            assert_eq!(a.graded_cartan(), a.cartan_from_modules());
        }
    }

    #[test]
    fn projectives() {
        let a = alg(Family::A, 2, &[]);
        let p = a.projective(0, 0);
        assert_eq!(p.basis, vec![Idem(0), Arrow(1, 0), Vol(0)]);
        let k = p.act(Arrow(0, 1), 1).unwrap();
        assert_eq!(p.basis[k], Vol(0));
        let b = alg(Family::A, 2, &[0]);
        assert_eq!(b.projective(0, 0).basis, vec![Idem(0), Arrow(1, 0)]);
    }

    #[test]
    fn dimension_formula() {
        let a = alg(Family::D, 5, &[1, 3]);
        let n = 5;
        assert_eq!(a.dim(), n + 2 * 4 + (n - 2));
    }
}
