//! Exact arithmetic over ℤ[q]: polynomials, matrices, determinants,
//! cofactors, truncated power series and the gap analysis built on them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::algebra::Algebra;
use crate::error::{param, Result};
use crate::field::Field;
use crate::graph::{remove_vertex, Graph};
use crate::intmat::IntMatrix;

/// Polynomial in `q` with integer coefficients, lowest degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(&[c])
    }

    pub fn monomial(c: i64, deg: usize) -> Self {
        let mut v = vec![0; deg + 1];
        v[deg] = c;
        Self::from_coeffs(&v)
    }

    pub fn from_coeffs(c: &[i64]) -> Self {
        Self::from_big(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn from_big(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// `[a] = 1 + q² + ⋯ + q^{2a−2}`, the quantum number with `a` terms.
    pub fn quantum(a: usize) -> Self {
        let mut v = vec![0; (2 * a).saturating_sub(1)];
        for k in 0..a {
            v[2 * k] = 1;
        }
        Self::from_coeffs(&v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_big((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_big((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::from_big(v)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_big(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division. `None` if `d` does not divide `self` in ℤ[q].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lead = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return self.is_zero().then(Self::zero);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Self::from_big(quot))
    }

    pub fn eval(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    /// Content (gcd of the coefficients, nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(big_json).collect())
    }
}

pub(crate) fn big_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(c.to_string()),
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = if abs.is_one() && k > 0 { String::new() } else { abs.to_string() };
            match k {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{mag}q")?,
                _ => write!(f, "{mag}q^{k}")?,
            }
        }
        Ok(())
    }
}

/// Square matrix over ℤ[q].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPolyMatrix {
    n: usize,
    data: Vec<QPoly>,
}

impl QPolyMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> QPoly) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        QPolyMatrix { n, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { QPoly::one() } else { QPoly::zero() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &QPoly {
        &self.data[i * self.n + j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(QPoly::zero(), |acc, k| acc.add(&self.get(i, k).mul(o.get(k, j))))
        })
    }

    pub fn scale(&self, p: &QPoly) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j).mul(p))
    }

    /// Matrix with row `r` and column `c` deleted.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let keep_r: Vec<usize> = (0..self.n).filter(|&i| i != r).collect();
        let keep_c: Vec<usize> = (0..self.n).filter(|&j| j != c).collect();
        Self::from_fn(self.n - 1, |i, j| self.get(keep_r[i], keep_c[j]).clone())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let n = self.n + o.n;
        Self::from_fn(n, |i, j| match (i < self.n, j < self.n) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => o.get(i - self.n, j - self.n).clone(),
            _ => QPoly::zero(),
        })
    }

    /// Entrywise specialization at an integer.
    pub fn eval(&self, x: i64) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).eval(x)).collect()).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.n)
                .map(|i| Value::Array((0..self.n).map(|j| self.get(i, j).to_json()).collect()))
                .collect(),
        )
    }
}

impl fmt::Display for QPolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact in ℤ[q].
pub fn det(m: &QPolyMatrix) -> QPoly {
    let n = m.n;
    if n == 0 {
        return QPoly::one();
    }
    let mut a: Vec<Vec<QPoly>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut prev = QPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return QPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = QPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Adjugate `M*` with `M·M* = det(M)·I`.
pub fn cofactor_matrix(m: &QPolyMatrix) -> QPolyMatrix {
    let n = m.n;
    if n == 1 {
        return QPolyMatrix::identity(1);
    }
    QPolyMatrix::from_fn(n, |i, j| {
        let d = det(&m.minor(j, i));
        if (i + j) % 2 == 0 {
            d
        } else {
            d.neg()
        }
    })
}

/// Power series `c_0 + c_1 q + ⋯ + c_N q^N`, arithmetic modulo `q^{N+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn from_poly(p: &QPoly, order: usize) -> Self {
        TruncatedSeries { coeffs: (0..=order).map(|k| p.coeff(k)).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.order(), o.order());
        TruncatedSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.order(), o.order());
        let n = self.coeffs.len();
        let mut v = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..n - i].iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: v }
    }

    pub fn mul_poly(&self, p: &QPoly) -> Self {
        self.mul(&Self::from_poly(p, self.order()))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

/// `1/p` to order `N`; `p` must have constant term ±1.
pub fn series_inverse(p: &QPoly, order: usize) -> Result<TruncatedSeries> {
    let c0 = p.coeff(0);
    if !(c0.is_one() || (-&c0).is_one()) {
        return param(format!("constant term {c0} is not a unit"));
    }
    let mut b: Vec<BigInt> = Vec::with_capacity(order + 1);
    b.push(c0.clone());
    for k in 1..=order {
        let mut s = BigInt::zero();
        for i in 1..=k.min(p.coeffs.len().saturating_sub(1)) {
            s += &p.coeffs[i] * &b[k - i];
        }
        // b_k = -c0^{-1} s, and c0^{-1} = c0 for a unit
        b.push(-(s * &c0));
    }
    Ok(TruncatedSeries { coeffs: b })
}

/// Longest run of zero coefficients with indices in `0..=window`.
pub fn max_gap(s: &TruncatedSeries, window: usize) -> Result<usize> {
    if window > s.order() {
        return param(format!("window {window} exceeds truncation order {}", s.order()));
    }
    let (mut best, mut run) = (0, 0);
    for c in &s.coeffs[..=window] {
        if c.is_zero() {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    Ok(best)
}

pub const DEFAULT_ORDER: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KoszulAudit {
    pub alternating_columns: bool,
    /// `None` when the determinant is 1 and the inverse is a polynomial.
    pub gap: Option<usize>,
    pub gap_bound: usize,
    pub gap_bound_ok: bool,
    pub pass: bool,
    pub window: usize,
    pub details: String,
}

/// Necessary conditions for Koszulity read off `C_q⁻¹ = C_q*/det`: every
/// column sum alternates in sign with nonzero coefficients, and `1/det` has
/// no gap longer than `2n − 2`.
pub fn koszul_necessary_audit(alg: &Algebra, order: usize) -> Result<KoszulAudit> {
    let n = alg.vertex_count();
    let c = alg.graded_cartan();
    let d = det(&c);
    let gap_bound = 2 * n - 2;
    let c0 = d.coeff(0);
    if !(c0.is_one() || (-&c0).is_one()) {
        return Ok(KoszulAudit {
            alternating_columns: false,
            gap: None,
            gap_bound,
            gap_bound_ok: false,
            pass: false,
            window: 0,
            details: format!("determinant {d} has non-unit constant term"),
        });
    }
    let deg = d.degree().unwrap_or(0);
    if order < deg {
        return param(format!("order {order} below determinant degree {deg}"));
    }
    let window = order - deg;
    let inv = series_inverse(&d, order)?;
    let adj = cofactor_matrix(&c);
    let polynomial = d.degree() == Some(0);
    let mut alternating = true;
    let mut bad = None;
    for j in 0..n {
        let col = (0..n).fold(QPoly::zero(), |acc, i| acc.add(adj.get(i, j)));
        let s = inv.mul_poly(&col);
        for k in 0..=window {
            let signed = if k % 2 == 0 { s.coeff(k).clone() } else { -s.coeff(k) };
            let ok = if polynomial { !signed.is_negative() } else { signed >= BigInt::one() };
            if !ok {
                alternating = false;
                bad.get_or_insert((j, k));
            }
        }
    }
    let gap = if polynomial { None } else { Some(max_gap(&inv, window)?) };
    let gap_bound_ok = gap.is_none_or(|g| g <= gap_bound);
    let mut details = format!("det = {d}");
    if let Some(g) = gap {
        details.push_str(&format!("; gap of 1/det = {g} (bound {gap_bound})"));
    } else {
        details.push_str("; inverse is polynomial");
    }
    if let Some((j, k)) = bad {
        details.push_str(&format!(
            "; column {} breaks alternation at q^{k}",
            alg.graph().label(j)
        ));
    }
    Ok(KoszulAudit {
        alternating_columns: alternating,
        gap,
        gap_bound,
        gap_bound_ok,
        pass: alternating && gap_bound_ok,
        window,
        details,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetRecursion {
    pub lhs: QPoly,
    pub rhs_corrected: QPoly,
    pub rhs_literal: QPoly,
    pub equal_corrected: bool,
    pub equal_literal_at_q1: bool,
}

/// Graded Cartan matrix `(1+q²)I + qA − q²E_C` of a possibly disconnected
/// graph.
pub fn cartan_of(g: &Graph, condition: &[usize]) -> QPolyMatrix {
    let alg = Algebra::new(g.clone(), condition, Field::Rational).expect("valid condition");
    alg.graded_cartan()
}

/// Ungraded Cartan matrix `2I + A − E_C`.
pub fn ungraded_cartan(g: &Graph, condition: &[usize]) -> IntMatrix {
    let m = cartan_of(g, condition);
    let n = m.size();
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j).eval(1).to_i128().expect("small entry");
            out.set(i, j, v);
        }
    }
    out
}

/// Compares `det C^C(Γ)` against the recursion removing `c` from `C`:
/// `det C^{C−c}(Γ) − q²·det C^{C−c}(Γ−c)`, and against the same without the
/// `q²`.
pub fn det_recursion_check(g: &Graph, condition: &[usize], c: usize) -> Result<DetRecursion> {
    if !condition.contains(&c) {
        return param(format!("vertex {c} is not in the condition"));
    }
    let lhs = det(&cartan_of(g, condition));
    let rest: Vec<usize> = condition.iter().copied().filter(|&v| v != c).collect();
    let first = det(&cartan_of(g, &rest));
    let (h, map) = remove_vertex(g, c)?;
    let rest_h: Vec<usize> =
        rest.iter().map(|&v| map.iter().position(|&o| o == v).expect("kept vertex")).collect();
    let second = det(&cartan_of(&h, &rest_h));
    let rhs_corrected = first.sub(&QPoly::monomial(1, 2).mul(&second));
    let rhs_literal = first.sub(&second);
    Ok(DetRecursion {
        equal_corrected: lhs == rhs_corrected,
        equal_literal_at_q1: lhs.eval(1) == rhs_literal.eval(1),
        lhs,
        rhs_corrected,
        rhs_literal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_named, Family};

    fn cartan(fam: Family, n: usize) -> QPolyMatrix {
        Algebra::zigzag(build_named(fam, n).unwrap()).graded_cartan()
    }

    #[test]
    fn poly_basics() {
        let p = QPoly::from_coeffs(&[1, 0, 1]);
        assert_eq!(p.mul(&p), QPoly::from_coeffs(&[1, 0, 2, 0, 1]));
        assert_eq!(p.mul(&p).div_exact(&p), Some(p.clone()));
        assert_eq!(QPoly::from_coeffs(&[1, 1]).div_exact(&p), None);
        assert_eq!(QPoly::quantum(3), QPoly::from_coeffs(&[1, 0, 1, 0, 1]));
        assert_eq!(p.to_string(), "1 + q^2");
        assert_eq!(QPoly::from_coeffs(&[0, -1, 0, 2]).to_string(), "-q + 2q^3");
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det(&cartan(Family::A, 2)), QPoly::from_coeffs(&[1, 0, 1, 0, 1]));
        assert_eq!(det(&cartan(Family::AffineA, 2)), QPoly::from_coeffs(&[1, 0, 0, 2, 0, 0, 1]));
        let d4 = QPoly::from_coeffs(&[1, 0, 0, 0, 0, 0, 1]).mul(&QPoly::quantum(2));
        assert_eq!(det(&cartan(Family::D, 4)), d4);
        assert_eq!(det(&QPolyMatrix::identity(3)), QPoly::one());
    }

    #[test]
    fn d4_cofactors() {
        let c = cartan(Family::D, 4);
        let adj = cofactor_matrix(&c);
        let two = QPoly::quantum(2);
        let q = QPoly::monomial(1, 1);
        let q2 = QPoly::monomial(1, 2);
        let a = QPoly::from_coeffs(&[1, 0, 0, 0, 1]);
        let b = q.mul(&two).neg();
        let sq = two.mul(&two);
        let expect = [
            [&a, &b, &q2, &q2],
            [&b, &sq, &b, &b],
            [&q2, &b, &a, &q2],
            [&q2, &b, &q2, &a],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(adj.get(i, j), &expect[i][j].mul(&two), "entry {i},{j}");
            }
        }
        assert_eq!(c.mul(&adj), QPolyMatrix::identity(4).scale(&det(&c)));
        assert_eq!(cofactor_matrix(&QPolyMatrix::identity(1)), QPolyMatrix::identity(1));
    }

    #[test]
    fn inverses_and_gaps() {
        let d = det(&cartan(Family::A, 3));
        let s = series_inverse(&d, 40).unwrap();
        assert!(s.mul_poly(&d).is_one());
        assert_eq!(max_gap(&s, 30).unwrap(), 5);
        let e7 = det(&cartan(Family::E, 7));
        assert_eq!(max_gap(&series_inverse(&e7, 80).unwrap(), 60).unwrap(), 13);
        assert!(series_inverse(&QPoly::constant(2), 5).is_err());
        let ones = series_inverse(&QPoly::from_coeffs(&[1, -1]), 10).unwrap();
        assert_eq!(max_gap(&ones, 10).unwrap(), 0);
        assert!(max_gap(&ones, 11).is_err());
    }

    #[test]
    fn geometric_series() {
        let p = QPoly::from_coeffs(&[1, 0, 0, 0, 0, 0, 1]);
        let s = series_inverse(&p, 30).unwrap();
        for k in 0..=30 {
            let expect = if k % 6 == 0 { if (k / 6) % 2 == 0 { 1 } else { -1 } } else { 0 };
            assert_eq!(s.coeff(k), &BigInt::from(expect));
        }
    }

    #[test]
    fn recursion_on_a1() {
        let g = build_named(Family::A, 1).unwrap();
        let r = det_recursion_check(&g, &[0], 0).unwrap();
        assert_eq!(r.lhs, QPoly::one());
        assert!(r.equal_corrected);
        assert_eq!(r.rhs_literal, QPoly::monomial(1, 2));
        assert!(r.equal_literal_at_q1);
    }
}
