//! Factorizations `C = DᵀD` of a Cartan matrix by nonnegative integer
//! matrices whose top square block has unit diagonal.
//!
//! Rows below the top block are interchangeable, so solutions are reported
//! with those rows sorted and duplicates removed.

use std::collections::{BTreeSet, VecDeque};

use serde_json::{json, Value};

use crate::error::{param, Result};
use crate::intmat::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompSolution {
    pub d: IntMatrix,
    /// Whether a simultaneous renumbering of rows and columns makes the top
    /// block lower triangular.
    pub triangularizable: bool,
    /// Such a renumbering when it exists: `order[k]` is the index placed at
    /// position `k`.
    pub order: Option<Vec<usize>>,
}

impl DecompSolution {
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d.to_json(),
            "triangularizable": self.triangularizable,
            "order": self.order,
        })
    }
}

struct Search<'a> {
    c: &'a IntMatrix,
    n: usize,
    max_rows: usize,
    /// `cols[j][r]` = `D[r][j]` for the columns fixed so far.
    cols: Vec<Vec<i128>>,
    used_extra: usize,
    found: BTreeSet<Vec<Vec<i128>>>,
}

fn isqrt(v: i128) -> i128 {
    let mut r = 0;
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

impl Search<'_> {
    fn column(&mut self, j: usize) {
        if j == self.n {
            self.record();
            return;
        }
        let mut col = vec![0i128; self.max_rows];
        col[j] = 1;
        let ips: Vec<i128> = (0..j).map(|i| self.cols[i][j]).collect();
        let budget = self.c.get(j, j) - 1;
        self.entry(j, 0, &mut col, ips, budget);
    }

    /// Fills the old rows (top block and extra rows already in use) of
    /// column `j`, starting at row `r`.
    fn entry(&mut self, j: usize, r: usize, col: &mut Vec<i128>, ips: Vec<i128>, budget: i128) {
        let old = self.n + self.used_extra;
        if r == old {
            self.new_rows(j, old, i128::MAX, col, &ips, budget);
            return;
        }
        if r == j {
            self.entry(j, r + 1, col, ips, budget);
            return;
        }
        for v in 0..=isqrt(budget) {
            let mut next = ips.clone();
            let mut ok = true;
            for (i, ip) in next.iter_mut().enumerate() {
                *ip += v * self.cols[i][r];
                ok &= *ip <= self.c.get(i, j);
            }
            if !ok {
                break;
            }
            col[r] = v;
            self.entry(j, r + 1, col, next, budget - v * v);
        }
        col[r] = 0;
    }

    /// Opens fresh rows with nonincreasing positive entries; fresh rows meet
    /// no earlier column, so they do not change inner products.
    fn new_rows(&mut self, j: usize, r: usize, cap: i128, col: &mut Vec<i128>, ips: &[i128], budget: i128) {
        if budget == 0 {
            if (0..j).all(|i| ips[i] == self.c.get(i, j)) {
                let saved = self.used_extra;
                self.used_extra = r - self.n;
                self.cols.push(col.clone());
                self.column(j + 1);
                self.cols.pop();
                self.used_extra = saved;
            }
            return;
        }
        if r == self.max_rows {
            return;
        }
        for v in (1..=isqrt(budget).min(cap)).rev() {
            col[r] = v;
            self.new_rows(j, r + 1, v, col, ips, budget - v * v);
        }
        col[r] = 0;
    }

    fn record(&mut self) {
        let rows = self.n + self.used_extra;
        let mut d: Vec<Vec<i128>> = (0..rows).map(|r| self.cols.iter().map(|c| c[r]).collect()).collect();
        d[self.n..].sort_by(|a, b| b.cmp(a));
        self.found.insert(d);
    }
}

/// All `D ≥ 0` with `DᵀD = C`, `D[j][j] = 1` on the top block and at most
/// `max_rows` rows (default `trace(C)`).
pub fn decomp_search(c: &IntMatrix, max_rows: Option<usize>) -> Result<Vec<DecompSolution>> {
    let n = c.rows();
    if c.cols() != n || !c.is_symmetric() {
        return param("decomposition needs a symmetric square matrix");
    }
    if !c.is_nonnegative() {
        return Ok(Vec::new());
    }
    let trace: i128 = (0..n).map(|i| c.get(i, i)).sum();
    let max_rows = max_rows.unwrap_or(trace.max(0) as usize);
    if max_rows < n || (0..n).any(|i| c.get(i, i) < 1) {
        return Ok(Vec::new());
    }
    let mut s = Search { c, n, max_rows, cols: Vec::new(), used_extra: 0, found: BTreeSet::new() };
    s.column(0);
    Ok(s
        .found
        .into_iter()
        .map(|rows| {
            let mut d = IntMatrix::zeros(rows.len(), n);
            for (r, row) in rows.iter().enumerate() {
                for (k, &v) in row.iter().enumerate() {
                    d.set(r, k, v);
                }
            }
            let order = triangular_order(&d);
            DecompSolution { d, triangularizable: order.is_some(), order }
        })
        .collect())
}

/// A simultaneous permutation making the top square block of `d` lower
/// triangular, if any. Entry `(r, c)` forces `c` before `r`.
pub fn triangular_order(d: &IntMatrix) -> Option<Vec<usize>> {
    let n = d.cols();
    let mut indeg = vec![0; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for r in 0..n {
        for c in 0..n {
            if r != c && d.get(r, c) != 0 {
                out[c].push(r);
                indeg[r] += 1;
            }
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}
