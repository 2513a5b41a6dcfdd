//! Chebyshev polynomials of the second kind and their matrix versions
//! `U_t^C(A)`, computed three independent ways, plus singleton inflows and
//! the walk-counting interpretation of the entries.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{param, Error, Result};
use crate::graph::{adjacency, Graph};
use crate::intmat::IntMatrix;

/// Cap for the two enumeration-based formulas, whose term counts grow
/// exponentially in `t`.
pub const ORACLE_MAX_T: i64 = 16;

/// Polynomial in `X`, lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    fn trimmed(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_coeffs(c: &[i64]) -> Self {
        Self::trimmed(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &IntMatrix) -> Result<IntMatrix> {
        let n = m.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            let c = c.to_i128().ok_or(Error::Overflow("chebyshev coefficient"))?;
            acc = acc.mul(m)?.add(&IntMatrix::identity(n).scale(c)?)?;
        }
        Ok(acc)
    }
}

/// `U_t` by `U_t = X·U_{t−1} − U_{t−2}`, `U_{−1} = 0`, `U_0 = 1`.
pub fn cheb_u(t: i64) -> Result<IntPoly> {
    if t < -1 {
        return param("t must be at least -1");
    }
    let (mut prev, mut cur) = (IntPoly::default(), IntPoly::from_coeffs(&[1]));
    if t == -1 {
        return Ok(prev);
    }
    for _ in 0..t {
        let mut next = vec![BigInt::zero(); cur.coeffs.len() + 1];
        for (k, c) in cur.coeffs.iter().enumerate() {
            next[k + 1] += c;
        }
        for (k, c) in prev.coeffs.iter().enumerate() {
            next[k] -= c;
        }
        prev = cur;
        cur = IntPoly::trimmed(next);
    }
    Ok(cur)
}

/// Closed form `Σ_k (−1)^k binom(t−k, k) X^{t−2k}`.
pub fn cheb_u_closed(t: i64) -> Result<IntPoly> {
    if t < -1 {
        return param("t must be at least -1");
    }
    if t == -1 {
        return Ok(IntPoly::default());
    }
    let t = t as usize;
    let mut c = vec![BigInt::zero(); t + 1];
    for k in 0..=t / 2 {
        let b = binomial(t - k, k);
        c[t - 2 * k] = if k % 2 == 0 { b } else { -b };
    }
    Ok(IntPoly::trimmed(c))
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn y_matrix(g: &Graph, condition: &[usize]) -> IntMatrix {
    let n = g.vertex_count();
    IntMatrix::identity(n).sub(&IntMatrix::diagonal_indicator(n, condition)).expect("0/1 entries")
}

/// `U_{−1}^C, U_0^C, …, U_{t_max}^C` by the matrix recursion
/// `U_t = A·U_{t−1} − (I − E_C)·U_{t−2}`.
pub fn cheb_sequence(g: &Graph, condition: &[usize], t_max: i64) -> Result<Vec<IntMatrix>> {
    if t_max < -1 {
        return param("t must be at least -1");
    }
    let n = g.vertex_count();
    let a = adjacency(g);
    let y = y_matrix(g, condition);
    let mut out = vec![IntMatrix::zeros(n, n)];
    if t_max >= 0 {
        out.push(IntMatrix::identity(n));
    }
    for _ in 1..=t_max {
        let k = out.len();
        let next = a.mul(&out[k - 1])?.sub(&y.mul(&out[k - 2])?)?;
        out.push(next);
    }
    Ok(out)
}

pub fn cheb_matrix_rec(g: &Graph, condition: &[usize], t: i64) -> Result<IntMatrix> {
    Ok(cheb_sequence(g, condition, t)?.pop().expect("nonempty"))
}

/// Column `i` of `U_t^C(A)` for every `t` in `−1..=t_max`, via the
/// column-wise recursion.
pub fn cheb_column(g: &Graph, condition: &[usize], i: usize, t_max: i64) -> Result<Vec<Vec<i128>>> {
    let seq = cheb_sequence(g, condition, t_max)?;
    Ok(seq.iter().map(|m| m.column(i)).collect())
}

/// Length-`k` tuples of nonnegative integers with sum `s`, lexicographic.
pub fn compositions(s: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(s: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            cur.push(s);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=s {
            cur.push(first);
            go(s - first, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        go(s, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Words in `X` (degree 1) and `Y` (degree 2) of total degree `t` with
/// exactly `k` letters `Y`, lexicographic with `X < Y`.
pub fn monomials(t: usize, k: usize) -> Vec<Vec<bool>> {
    fn go(rem: usize, ys: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if rem == 0 {
            if ys == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rem > 2 * ys {
            cur.push(false);
            go(rem - 1, ys, cur, out);
            cur.pop();
        }
        if ys > 0 && rem >= 2 {
            cur.push(true);
            go(rem - 2, ys - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if 2 * k <= t {
        go(t, k, &mut Vec::new(), &mut out);
    }
    out
}

fn check_oracle_t(t: i64) -> Result<()> {
    if !(0..=ORACLE_MAX_T).contains(&t) {
        return param(format!("t must be in 0..={ORACLE_MAX_T} for this formula"));
    }
    Ok(())
}

/// Composition formula: `Σ_k Σ U_{i_1}(A) E_C U_{i_2}(A) ⋯ E_C U_{i_k}(A)`
/// over tuples of length `k` summing to `t + 2 − 2k`.
pub fn cheb_matrix_comp(g: &Graph, condition: &[usize], t: i64) -> Result<IntMatrix> {
    check_oracle_t(t)?;
    let n = g.vertex_count();
    let a = adjacency(g);
    let e = IntMatrix::diagonal_indicator(n, condition);
    let t = t as usize;
    let scalar: Vec<IntMatrix> = (0..=t as i64)
        .map(|i| cheb_u(i)?.eval_matrix(&a))
        .collect::<Result<_>>()?;
    let mut total = IntMatrix::zeros(n, n);
    for k in 1..=t / 2 + 1 {
        for tuple in compositions(t + 2 - 2 * k, k) {
            let mut prod = scalar[tuple[0]].clone();
            for &i in &tuple[1..] {
                prod = prod.mul(&e)?.mul(&scalar[i])?;
            }
            total = total.add(&prod)?;
        }
    }
    Ok(total)
}

/// Monomial formula: `Σ_k (−1)^k Σ_{m ∈ M(t,k)} m(A, I − E_C)`. Each word is
/// evaluated explicitly; a depth-first walk shares prefix products.
pub fn cheb_matrix_mono(g: &Graph, condition: &[usize], t: i64) -> Result<IntMatrix> {
    check_oracle_t(t)?;
    let n = g.vertex_count();
    let a = adjacency(g);
    let y = y_matrix(g, condition);
    let mut total = IntMatrix::zeros(n, n);
    fn walk(
        prefix: &IntMatrix,
        rem: usize,
        ys: usize,
        a: &IntMatrix,
        y: &IntMatrix,
        total: &mut IntMatrix,
    ) -> Result<()> {
        if rem == 0 {
            let term = if ys.is_multiple_of(2) { prefix.clone() } else { prefix.neg() };
            *total = total.add(&term)?;
            return Ok(());
        }
        walk(&prefix.mul(a)?, rem - 1, ys, a, y, total)?;
        if rem >= 2 {
            walk(&prefix.mul(y)?, rem - 2, ys + 1, a, y, total)?;
        }
        Ok(())
    }
    walk(&IntMatrix::identity(n), t as usize, 0, &a, &y, &mut total)?;
    Ok(total)
}

/// Each vertex outside `C` picks one incident edge, no edge picked twice.
/// `choice[v]` is the other endpoint of the edge picked by `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingletonInflow {
    pub choice: Vec<Option<usize>>,
}

impl SingletonInflow {
    pub fn is_valid(&self, g: &Graph, condition: &[usize]) -> bool {
        let n = g.vertex_count();
        if self.choice.len() != n {
            return false;
        }
        let mut used = std::collections::HashSet::new();
        for v in 0..n {
            match self.choice[v] {
                None if condition.contains(&v) => {}
                Some(w) if !condition.contains(&v) && g.has_edge(v, w) => {
                    if !used.insert((v.min(w), v.max(w))) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Positions `ℓ` with `p_{ℓ−1} = p_{ℓ+1} = v` and `p_ℓ` the endpoint
    /// chosen by `v`.
    pub fn chosen_zigzags(&self, walk: &[usize]) -> Vec<usize> {
        (1..walk.len().saturating_sub(1))
            .filter(|&l| walk[l - 1] == walk[l + 1] && self.choice[walk[l + 1]] == Some(walk[l]))
            .collect()
    }
}

fn incident_edges(g: &Graph) -> (Vec<(usize, usize)>, HashMap<(usize, usize), usize>) {
    let edges = g.edges().to_vec();
    let index = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    (edges, index)
}

/// Existence by bipartite matching (vertices outside `C` against edges)
/// with augmenting paths.
pub fn find_singleton_inflow(g: &Graph, condition: &[usize]) -> Option<SingletonInflow> {
    let n = g.vertex_count();
    let (edges, index) = incident_edges(g);
    let mut owner: Vec<Option<usize>> = vec![None; edges.len()];
    let free: Vec<usize> = (0..n).filter(|v| !condition.contains(v)).collect();
    fn augment(
        v: usize,
        g: &Graph,
        index: &HashMap<(usize, usize), usize>,
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &w in g.neighbors(v) {
            let e = index[&(v.min(w), v.max(w))];
            if seen[e] {
                continue;
            }
            seen[e] = true;
            let prior = owner[e];
            if prior.is_none() || augment(prior.unwrap(), g, index, owner, seen) {
                owner[e] = Some(v);
                return true;
            }
        }
        false
    }
    for &v in &free {
        let mut seen = vec![false; edges.len()];
        if !augment(v, g, &index, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut choice = vec![None; n];
    for (e, o) in owner.iter().enumerate() {
        if let Some(v) = *o {
            let (a, b) = edges[e];
            choice[v] = Some(if a == v { b } else { a });
        }
    }
    Some(SingletonInflow { choice })
}

/// All singleton inflows, by backtracking over vertices in index order.
pub fn all_singleton_inflows(g: &Graph, condition: &[usize]) -> Vec<SingletonInflow> {
    let n = g.vertex_count();
    let free: Vec<usize> = (0..n).filter(|v| !condition.contains(v)).collect();
    let mut out = Vec::new();
    let mut choice = vec![None; n];
    let mut used = std::collections::HashSet::new();
    fn go(
        k: usize,
        free: &[usize],
        g: &Graph,
        choice: &mut Vec<Option<usize>>,
        used: &mut std::collections::HashSet<(usize, usize)>,
        out: &mut Vec<SingletonInflow>,
    ) {
        if k == free.len() {
            out.push(SingletonInflow { choice: choice.clone() });
            return;
        }
        let v = free[k];
        for &w in g.neighbors(v) {
            let e = (v.min(w), v.max(w));
            if used.insert(e) {
                choice[v] = Some(w);
                go(k + 1, free, g, choice, used, out);
                choice[v] = None;
                used.remove(&e);
            }
        }
    }
    go(0, &free, g, &mut choice, &mut used, &mut out);
    out
}

pub fn count_singleton_inflows(g: &Graph, condition: &[usize]) -> usize {
    all_singleton_inflows(g, condition).len()
}

/// Walks of length `t` from `j` to `i` containing no chosen zigzag, by
/// dynamic programming over (previous vertex, current vertex).
pub fn count_paths_no_chosen_zigzag(
    g: &Graph,
    inflow: &SingletonInflow,
    t: usize,
    i: usize,
    j: usize,
) -> u128 {
    if t == 0 {
        return u128::from(i == j);
    }
    // keyed by (previous vertex, current vertex)
    let mut counts: HashMap<(usize, usize), u128> = HashMap::new();
    for &w in g.neighbors(j) {
        counts.insert((j, w), 1);
    }
    for _ in 1..t {
        let mut next: HashMap<(usize, usize), u128> = HashMap::new();
        for (&(prev, cur), &c) in &counts {
            for &w in g.neighbors(cur) {
                if w == prev && inflow.choice[w] == Some(cur) {
                    continue;
                }
                *next.entry((cur, w)).or_default() += c;
            }
        }
        counts = next;
    }
    counts.iter().filter(|((_, cur), _)| *cur == i).map(|(_, &c)| c).sum()
}

/// All walks of length `t` starting at `j`; exponential, for small checks.
pub fn walks_from(g: &Graph, j: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![j]];
    for _ in 0..t {
        out = out
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                g.neighbors(last).iter().map(move |&x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                }).collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// First `t ≤ t_max` with `U_t(A) = 0` for the plain recursion.
pub fn first_vanishing(g: &Graph, t_max: i64) -> Result<Option<i64>> {
    let seq = cheb_sequence(g, &[], t_max)?;
    Ok(seq.iter().enumerate().skip(1).find(|(_, m)| m.is_zero()).map(|(k, _)| k as i64 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_named, Family};

    #[test]
    fn scalar_polys() {
        assert_eq!(cheb_u(0).unwrap(), IntPoly::from_coeffs(&[1]));
        assert_eq!(cheb_u(2).unwrap(), IntPoly::from_coeffs(&[-1, 0, 1]));
        assert_eq!(cheb_u(-1).unwrap(), IntPoly::default());
        for t in -1..20 {
            assert_eq!(cheb_u(t).unwrap(), cheb_u_closed(t).unwrap());
        }
    }

    #[test]
    fn u5_roots() {
        // U_5 = X(X²−1)(X²−3): exact roots 0, ±1 and sign changes around ±√3
        let u5 = cheb_u(5).unwrap();
        for x in [-1, 0, 1] {
            assert!(u5.eval(&BigInt::from(x)).is_zero());
        }
        let at = |x: i64| u5.eval(&BigInt::from(x));
        assert!(at(2) > BigInt::zero());
        let num = IntPoly::from_coeffs(&[-3, 0, 1]);
        assert!(num.eval(&BigInt::from(1)) < BigInt::zero() && num.eval(&BigInt::from(2)) > BigInt::zero());
    }

    #[test]
    fn enumerations() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(monomials(2, 1), vec![vec![true]]);
        assert_eq!(monomials(4, 1).len(), 3);
        assert!(monomials(3, 2).is_empty());
    }

    #[test]
    fn d4_vanishes_at_five() {
        let g = build_named(Family::D, 4).unwrap();
        assert!(cheb_matrix_rec(&g, &[], 5).unwrap().is_zero());
        assert_eq!(first_vanishing(&g, 40).unwrap(), Some(5));
    }

    #[test]
    fn low_degree_formulas() {
        let g = build_named(Family::AffineA, 3).unwrap();
        let c = [1usize];
        assert_eq!(cheb_matrix_comp(&g, &c, 1).unwrap(), adjacency(&g));
        let a = adjacency(&g);
        let y = y_matrix(&g, &c);
        assert_eq!(cheb_matrix_mono(&g, &c, 2).unwrap(), a.mul(&a).unwrap().sub(&y).unwrap());
        assert!(cheb_matrix_comp(&g, &c, 17).is_err());
    }

    #[test]
    fn inflow_examples() {
        let a4 = build_named(Family::A, 4).unwrap();
        assert!(find_singleton_inflow(&a4, &[]).is_none());
        assert_eq!(count_singleton_inflows(&a4, &[]), 0);
        let all = all_singleton_inflows(&a4, &[0]);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].choice, vec![None, Some(0), Some(1), Some(2)]);
        let tri = build_named(Family::AffineA, 4).unwrap();
        assert_eq!(count_singleton_inflows(&tri, &[]), 2);
        let found = find_singleton_inflow(&tri, &[]).unwrap();
        assert!(found.is_valid(&tri, &[]));
    }

    #[test]
    fn longest_free_walk_in_a4() {
        let g = build_named(Family::A, 4).unwrap();
        let inflow = find_singleton_inflow(&g, &[0]).unwrap();
        assert_eq!(count_paths_no_chosen_zigzag(&g, &inflow, 6, 0, 0), 1);
        assert_eq!(count_paths_no_chosen_zigzag(&g, &inflow, 0, 1, 1), 1);
        assert_eq!(count_paths_no_chosen_zigzag(&g, &inflow, 0, 1, 2), 0);
    }
}
