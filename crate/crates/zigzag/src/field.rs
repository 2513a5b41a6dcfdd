//! Scalar fields and the exact linear algebra built on them.
//!
//! Scalars are stored as [`BigRational`]. Over 𝔽_p every stored value is an
//! integer in `0..p`, so the same representation serves both fields and the
//! field descriptor does the reduction.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Scalar = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q` or `p:<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("p:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Parameter(format!("bad prime '{rest}'")))?;
            return Field::prime(p);
        }
        Err(Error::Parameter(format!("unknown field '{s}', expected q or p:<prime>")))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        // keep products of two residues inside u128 comfortably
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::Parameter(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    fn reduce_int(p: u64, v: &BigInt) -> BigInt {
        let m = BigInt::from(p);
        v.mod_floor(&m)
    }

    /// Maps an arbitrary rational into the field.
    pub fn normalize(&self, x: Scalar) -> Scalar {
        match self {
            Field::Rational => x,
            Field::Prime(p) => {
                let num = Self::reduce_int(*p, x.numer());
                let den = Self::reduce_int(*p, x.denom());
                let inv = mod_inverse(den.to_u64().unwrap_or(0), *p)
                    .expect("denominator divisible by the characteristic");
                let v = (num * BigInt::from(inv)).mod_floor(&BigInt::from(*p));
                Scalar::from_integer(v)
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.normalize(Scalar::from_integer(BigInt::from(v)))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a + b,
            Field::Prime(_) => self.normalize(a + b),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a - b,
            Field::Prime(_) => self.normalize(a - b),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a * b,
            Field::Prime(_) => self.normalize(a * b),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rational => -a,
            Field::Prime(_) => self.normalize(-a),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Rational => a.recip(),
            Field::Prime(p) => {
                let v = a.numer().to_u64().expect("residue out of range");
                Scalar::from_integer(BigInt::from(mod_inverse(v, *p).expect("zero residue")))
            }
        }
    }

    /// Reduced row echelon form in place. Returns the pivot columns.
    pub fn rref(&self, m: &mut [Vec<Scalar>]) -> Vec<usize> {
        rref_with(self, m).expect("exact arithmetic cannot overflow")
    }

    /// Rank and null space of a sparse matrix given as `(row, col, value)`
    /// triples (repeated positions are summed). Null vectors are returned
    /// sparse, keyed by their free column, in increasing column order.
    /// Uses machine-word arithmetic when every intermediate value fits.
    pub fn sparse_kernel(&self, rows: usize, cols: usize, entries: &[(usize, usize, &Scalar)]) -> SparseKernel {
        let fast = match self {
            Field::Rational => kernel_with(&SmallRational, rows, cols, entries, |z| {
                Some(Ratio::new_raw(z.numer().to_i64()?, z.denom().to_i64()?))
            }, |e| Scalar::new(BigInt::from(*e.numer()), BigInt::from(*e.denom()))),
            Field::Prime(p) => kernel_with(&ModP(*p), rows, cols, entries, |z| z.numer().to_u64(), |&e| {
                Scalar::from_integer(BigInt::from(e))
            }),
        };
        fast.unwrap_or_else(|| {
            kernel_with(self, rows, cols, entries, |z| Some(z.clone()), Clone::clone).expect("exact")
        })
    }

    pub fn rank(&self, m: &[Vec<Scalar>]) -> usize {
        let mut w = m.to_vec();
        self.rref(&mut w).len()
    }

    /// Basis of the right null space `{v : m v = 0}`, one vector per free
    /// column in increasing column order. Each vector has a 1 at its free
    /// column.
    pub fn nullspace(&self, m: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
        let mut w = m.to_vec();
        let pivots = self.rref(&mut w);
        let mut is_pivot = vec![false; cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                if !w[r][f].is_zero() {
                    v[p] = self.neg(&w[r][f]);
                }
            }
            out.push(v);
        }
        out
    }

    /// Solves `m x = b` for one solution, if any.
    pub fn solve(&self, m: &[Vec<Scalar>], cols: usize, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut w: Vec<Vec<Scalar>> = m
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut r = row.clone();
                r.push(bi.clone());
                r
            })
            .collect();
        let pivots = self.rref(&mut w);
        if pivots.last() == Some(&cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = w[r][cols].clone();
        }
        Some(x)
    }
}

/// Rank of the matrix and its null space, sparse.
pub type SparseKernel = (usize, Vec<(usize, Vec<(usize, Scalar)>)>);

/// Arithmetic used by the elimination routines. Operations return `None`
/// when a machine-word representation overflows.
pub trait Arith {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn add(&self, x: &Self::E, y: &Self::E) -> Option<Self::E>;
    /// `x − f·y`
    fn sub_mul(&self, x: &Self::E, f: &Self::E, y: &Self::E) -> Option<Self::E>;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Option<Self::E>;
    fn inv(&self, x: &Self::E) -> Option<Self::E>;
    fn neg(&self, x: &Self::E) -> Option<Self::E>;
}

impl Arith for Field {
    type E = Scalar;
    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn is_zero(&self, x: &Scalar) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Scalar, y: &Scalar) -> Option<Scalar> {
        Some(Field::add(self, x, y))
    }
    fn sub_mul(&self, x: &Scalar, f: &Scalar, y: &Scalar) -> Option<Scalar> {
        Some(self.sub(x, &Field::mul(self, f, y)))
    }
    fn mul(&self, x: &Scalar, y: &Scalar) -> Option<Scalar> {
        Some(Field::mul(self, x, y))
    }
    fn inv(&self, x: &Scalar) -> Option<Scalar> {
        Some(Field::inv(self, x))
    }
    fn neg(&self, x: &Scalar) -> Option<Scalar> {
        Some(Field::neg(self, x))
    }
}

/// Rationals with 64-bit numerator and denominator, checked.
pub struct SmallRational;

impl Arith for SmallRational {
    type E = Ratio<i64>;
    fn zero(&self) -> Ratio<i64> {
        Ratio::zero()
    }
    fn one(&self) -> Ratio<i64> {
        Ratio::one()
    }
    fn is_zero(&self, x: &Ratio<i64>) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Ratio<i64>, y: &Ratio<i64>) -> Option<Ratio<i64>> {
        x.checked_add(y)
    }
    fn sub_mul(&self, x: &Ratio<i64>, f: &Ratio<i64>, y: &Ratio<i64>) -> Option<Ratio<i64>> {
        x.checked_sub(&f.checked_mul(y)?)
    }
    fn mul(&self, x: &Ratio<i64>, y: &Ratio<i64>) -> Option<Ratio<i64>> {
        x.checked_mul(y)
    }
    fn inv(&self, x: &Ratio<i64>) -> Option<Ratio<i64>> {
        Ratio::one().checked_div(x)
    }
    fn neg(&self, x: &Ratio<i64>) -> Option<Ratio<i64>> {
        Ratio::zero().checked_sub(x)
    }
}

/// Residues modulo a prime below 2^32.
pub struct ModP(pub u64);

impl Arith for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, x: &u64, y: &u64) -> Option<u64> {
        Some((x + y) % self.0)
    }
    fn sub_mul(&self, x: &u64, f: &u64, y: &u64) -> Option<u64> {
        Some((x + self.0 - f * y % self.0) % self.0)
    }
    fn mul(&self, x: &u64, y: &u64) -> Option<u64> {
        Some(x * y % self.0)
    }
    fn inv(&self, x: &u64) -> Option<u64> {
        mod_inverse(*x, self.0)
    }
    fn neg(&self, x: &u64) -> Option<u64> {
        Some((self.0 - x) % self.0)
    }
}

/// Reduced row echelon form in place; `None` on overflow.
pub fn rref_with<A: Arith>(a: &A, m: &mut [Vec<A::E>]) -> Option<Vec<usize>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = a.inv(&m[r][c])?;
        for x in m[r][c..].iter_mut() {
            if !a.is_zero(x) {
                *x = a.mul(x, &inv)?;
            }
        }
        let (head, tail) = m.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if a.is_zero(&other[c]) {
                continue;
            }
            let f = other[c].clone();
            for (x, y) in other[c..].iter_mut().zip(pivot_row[c..].iter()) {
                if !a.is_zero(y) {
                    *x = a.sub_mul(x, &f, y)?;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Some(pivots)
}

fn kernel_with<A: Arith>(
    a: &A,
    rows: usize,
    cols: usize,
    entries: &[(usize, usize, &Scalar)],
    into: impl Fn(&Scalar) -> Option<A::E>,
    back: impl Fn(&A::E) -> Scalar,
) -> Option<SparseKernel> {
    let mut m = vec![vec![a.zero(); cols]; rows];
    for &(r, c, z) in entries {
        m[r][c] = a.add(&m[r][c], &into(z)?)?;
    }
    let pivots = rref_with(a, &mut m)?;
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![(free, Scalar::one())];
        for (r, &p) in pivots.iter().enumerate() {
            if !a.is_zero(&m[r][free]) {
                v.push((p, back(&a.neg(&m[r][free])?)));
            }
        }
        v.sort_by_key(|(c, _)| *c);
        out.push((free, v));
    }
    Some((pivots.len(), out))
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    if r1 == 0 {
        return None;
    }
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(p as i128) as u64)
}

/// Integer value of a scalar when it is one.
pub fn as_integer(x: &Scalar) -> Option<BigInt> {
    x.is_integer().then(|| x.numer().clone())
}

/// Renders a scalar the way edge labels and reports show it.
pub fn render(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_negative(x: &Scalar) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Scalar::from_integer(BigInt::from(v))
    }

    #[test]
    fn parse_fields() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("p:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("p:8".parse::<Field>().is_err());
        assert!("r".parse::<Field>().is_err());
    }

    #[test]
    fn prime_arithmetic() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-1), q(6));
        assert_eq!(f.inv(&q(3)), q(5));
        assert_eq!(f.mul(&q(3), &q(5)), q(1));
        let half = Scalar::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.normalize(half), q(4));
    }

    #[test]
    fn sparse_kernel_paths_agree() {
        let big = Scalar::from_integer(BigInt::from(i64::MAX)) * q(4);
        let vals = [q(1), q(-1), q(2), big];
        for f in [Field::Rational, Field::Prime(7)] {
            let vals: Vec<Scalar> = vals.iter().map(|v| f.normalize(v.clone())).collect();
            let entries = vec![(0, 0, &vals[0]), (0, 1, &vals[1]), (1, 1, &vals[2]), (1, 2, &vals[3]), (0, 3, &vals[0])];
            let (rank, ker) = f.sparse_kernel(2, 4, &entries);
            let mut dense = vec![vec![q(0); 4]; 2];
            for &(r, c, z) in &entries {
                dense[r][c] = z.clone();
            }
            let exact = f.nullspace(&dense, 4);
            assert_eq!(rank, 2);
            assert_eq!(ker.len(), exact.len());
            for ((free, v), e) in ker.iter().zip(&exact) {
                assert!(e[*free].is_one());
                for (c, z) in v {
                    assert_eq!(&e[*c], z);
                }
                assert_eq!(v.len(), e.iter().filter(|x| !x.is_zero()).count());
            }
        }
    }

    #[test]
    fn nullspace_of_row() {
        let f = Field::Rational;
        let m = vec![vec![q(1), q(1), q(1)]];
        let ns = f.nullspace(&m, 3);
        assert_eq!(ns, vec![vec![q(-1), q(1), q(0)], vec![q(-1), q(0), q(1)]]);
        assert_eq!(f.rank(&m), 1);
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = Field::Rational;
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(f.solve(&m, 2, &[q(1), q(3)]).is_none());
        let x = f.solve(&m, 2, &[q(1), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(0)]);
    }
}
