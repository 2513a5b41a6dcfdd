//! Linear projective resolutions of simple modules.
//!
//! Level `t` of a resolution is a list of summands `P_k⟨t⟩`. A summand `u`
//! at level `t+1` maps to level `t` by `Σ z(u→s)·a_{k→label(s)}` acting by
//! right multiplication. Each new summand is a kernel vector: a weighting of
//! the level-`t` summands adjacent to its label, killed by the constraints
//! coming from level `t−1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, AlgebraElement, BasisElem};
use crate::error::{param, Result};
use crate::field::{render, Field, Scalar};
use crate::graph::Graph;
use crate::intmat::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ResolveStatus {
    /// The kernel at this level is zero.
    Finished(usize),
    /// The kernel needs generators outside the linear degree from this
    /// level on.
    StuckNonlinear(usize),
    Truncated(usize),
}

impl ResolveStatus {
    pub fn name(&self) -> String {
        match self {
            ResolveStatus::Finished(l) => format!("finished({l})"),
            ResolveStatus::StuckNonlinear(l) => format!("stuck_nonlinear({l})"),
            ResolveStatus::Truncated(l) => format!("truncated({l})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Move {
    /// Several predecessor summands, or a non-unit scalar.
    Fork,
    /// One new arrow with coefficient 1.
    Singleton,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionGraph {
    /// `levels[t][u]` is the Γ-vertex of summand `u` at level `t`.
    pub levels: Vec<Vec<usize>>,
    /// `edges[t][u]` lists `(s, z)` for level `t+1` summand `u` and level `t`
    /// summand `s`, sorted by `s`.
    pub edges: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl ResolutionGraph {
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Number of summands at level `t` per Γ-vertex.
    pub fn multiplicities(&self, t: usize, n: usize) -> Vec<usize> {
        let mut m = vec![0; n];
        for &k in &self.levels[t] {
            m[k] += 1;
        }
        m
    }

    pub fn move_kind(&self, t: usize, u: usize) -> Option<Move> {
        let e = self.edges.get(t.checked_sub(1)?)?.get(u)?;
        Some(if e.len() == 1 && e[0].1.is_one() { Move::Singleton } else { Move::Fork })
    }

    /// The weighting carried by summand `u` at level `t ≥ 1`.
    pub fn weighting(&self, t: usize, u: usize) -> Weighting {
        Weighting {
            level: t,
            label: self.levels[t][u],
            weights: self.edges[t - 1][u].clone(),
        }
    }

    pub fn total_summands(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .map(|lv| {
                let mut counts: BTreeMap<String, usize> = BTreeMap::new();
                for &k in lv {
                    *counts.entry(format!("P{}", g.label(k))).or_default() += 1;
                }
                json!(counts)
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(t, lv)| {
                lv.iter().enumerate().flat_map(move |(u, es)| {
                    es.iter().map(move |(s, z)| {
                        json!({"from": format!("v_{}_{}", t + 1, u), "to": format!("v_{t}_{s}"), "scalar": render(z)})
                    })
                })
            })
            .collect();
        json!({"levels": levels, "edges": edges})
    }
}

/// Scalars `b_s` on the level-`t−1` summands adjacent to `label`. Valid when
/// `Σ_s z(s→s')·b_s = 0` for every level-`t−2` summand `s'` labeled `label`.
#[derive(Clone, Debug, PartialEq)]
pub struct Weighting {
    pub level: usize,
    pub label: usize,
    pub weights: Vec<(usize, Scalar)>,
}

impl Weighting {
    pub fn is_valid(&self, r: &ResolutionGraph, alg: &Algebra) -> bool {
        let g = alg.graph();
        let f = alg.field();
        let t = self.level;
        if t == 0 || self.weights.iter().any(|(s, b)| b.is_zero() || !g.has_edge(r.levels[t - 1][*s], self.label)) {
            return false;
        }
        if t == 1 || alg.in_condition(self.label) {
            return true;
        }
        let mut sums: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (s, b) in &self.weights {
            for (s2, z) in &r.edges[t - 2][*s] {
                if r.levels[t - 2][*s2] == self.label {
                    let e = sums.entry(*s2).or_insert_with(Scalar::zero);
                    *e = f.add(e, &f.mul(z, b));
                }
            }
        }
        sums.values().all(Zero::is_zero)
    }
}

/// Terms `Q_t` as `(Γ-vertex, shift)` lists with differentials
/// `d_t : Q_t → Q_{t−1}` stored in `maps[t−1]`, keyed by
/// `(summand of Q_t, summand of Q_{t−1})`. Entries act by right
/// multiplication.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Complex {
    pub terms: Vec<Vec<(usize, i32)>>,
    pub maps: Vec<BTreeMap<(usize, usize), AlgebraElement>>,
    /// `Q_0 = P_v` followed by the projection onto `S_v`.
    pub augmented: Option<usize>,
    /// The complex ends with `0 → Q_last`, so exactness is checked there too.
    pub closed: bool,
}

impl Complex {
    pub fn from_resolution(r: &ResolutionGraph, status: ResolveStatus) -> Complex {
        let terms = r
            .levels
            .iter()
            .enumerate()
            .map(|(t, lv)| lv.iter().map(|&k| (k, t as i32)).collect())
            .collect();
        let maps = r
            .edges
            .iter()
            .enumerate()
            .map(|(t, lv)| {
                let mut m = BTreeMap::new();
                for (u, es) in lv.iter().enumerate() {
                    let k = r.levels[t + 1][u];
                    for (s, z) in es {
                        let entry = AlgebraElement::term(BasisElem::Arrow(k, r.levels[t][*s]), z.clone());
                        m.insert((u, *s), entry);
                    }
                }
                m
            })
            .collect();
        Complex {
            terms,
            maps,
            augmented: r.levels.first().and_then(|l| l.first().copied()),
            closed: matches!(status, ResolveStatus::Finished(_)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum KernelOrder {
    /// Free columns in increasing summand order.
    #[default]
    Forward,
    /// Columns reversed before elimination; gives a different kernel basis.
    Reverse,
}

/// Output of a resolution run. The module-level complex is built on demand.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub graph: ResolutionGraph,
    pub status: ResolveStatus,
}

impl Resolution {
    pub fn complex(&self) -> Complex {
        Complex::from_resolution(&self.graph, self.status)
    }
}

/// Resolves the simple `S_i` up to level `max_len`.
pub fn resolve_simple(alg: &Algebra, i: usize, max_len: usize) -> Result<Resolution> {
    resolve_simple_with(alg, i, max_len, KernelOrder::Forward)
}

pub fn resolve_simple_with(alg: &Algebra, i: usize, max_len: usize, order: KernelOrder) -> Result<Resolution> {
    let g = alg.graph();
    if i >= g.vertex_count() {
        return param(format!("vertex {i} out of range"));
    }
    let mut levels = vec![vec![i]];
    let mut edges: Vec<Vec<Vec<(usize, Scalar)>>> = Vec::new();
    let status = loop {
        let t = levels.len() - 1;
        let step = next_level(alg, &levels, &edges, order);
        log::trace!("level {} -> {:?}", t, step.as_ref().map(|(l, _)| l.len()));
        match step {
            None => {
                levels.truncate(t);
                edges.truncate(t.saturating_sub(1));
                break ResolveStatus::StuckNonlinear(t);
            }
            Some((new, _)) if new.is_empty() => {
                break if levels[t].iter().all(|&k| alg.in_condition(k)) {
                    ResolveStatus::Finished(t)
                } else {
                    ResolveStatus::StuckNonlinear(t + 1)
                };
            }
            Some(_) if t == max_len => break ResolveStatus::Truncated(max_len),
            Some((new, es)) => {
                levels.push(new);
                edges.push(es);
            }
        }
    };
    Ok(Resolution { graph: ResolutionGraph { levels, edges }, status })
}

type Level = (Vec<usize>, Vec<Vec<(usize, Scalar)>>);

/// Level `t+1` from levels `t−1` and `t`; `None` when some constraint row
/// from level `t−1` is not covered by level `t`.
fn next_level(alg: &Algebra, levels: &[Vec<usize>], edges: &[Vec<Vec<(usize, Scalar)>>], order: KernelOrder) -> Option<Level> {
    let g = alg.graph();
    let n = g.vertex_count();
    let t = levels.len() - 1;
    let cur = &levels[t];
    // position of each level-(t−1) summand among those with the same label
    let mut row_count = vec![0usize; n];
    let row_pos: Vec<usize> = match t {
        0 => Vec::new(),
        _ => levels[t - 1]
            .iter()
            .map(|&k| {
                row_count[k] += 1;
                row_count[k] - 1
            })
            .collect(),
    };
    let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (s, &l) in cur.iter().enumerate() {
        for &k in g.neighbors(l) {
            adjacent[k].push(s);
        }
    }
    let mut new_labels = Vec::new();
    let mut new_edges = Vec::new();
    for k in 0..n {
        let cols = &adjacent[k];
        let constrained = t > 0 && !alg.in_condition(k);
        if constrained && row_count[k] > 0 {
            let prev = &levels[t - 1];
            let mut vectors = kernel_for_label(alg.field(), k, prev, &row_pos, row_count[k], cols, &edges[t - 1], order)?;
            vectors.sort_by_key(|(key, _)| *key);
            for (_, v) in vectors {
                new_labels.push(k);
                new_edges.push(v);
            }
        } else {
            for &s in cols {
                new_labels.push(k);
                new_edges.push(vec![(s, Scalar::one())]);
            }
        }
    }
    Some((new_labels, new_edges))
}

/// Kernel of the constraint matrix for label `k`: rows are level-`t−1`
/// summands labeled `k`, columns the level-`t` summands in `cols`. Solved
/// per connected component of the row/column incidence. Each vector is
/// keyed by its free column's summand index.
#[allow(clippy::too_many_arguments)]
fn kernel_for_label(
    f: &Field,
    k: usize,
    prev: &[usize],
    row_pos: &[usize],
    nrows: usize,
    cols: &[usize],
    cur_edges: &[Vec<(usize, Scalar)>],
    order: KernelOrder,
) -> Option<Vec<(usize, Vec<(usize, Scalar)>)>> {
    let mut uf = UnionFind::new(nrows + cols.len());
    let mut entries: Vec<(usize, usize, &Scalar)> = Vec::new();
    for (c, &s) in cols.iter().enumerate() {
        for (s2, z) in &cur_edges[s] {
            if prev[*s2] == k {
                let r = row_pos[*s2];
                entries.push((r, c, z));
                uf.union(r, nrows + c);
            }
        }
    }
    // group rows, columns and entries by component
    let mut comp_of = vec![usize::MAX; nrows + cols.len()];
    let mut comps: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut local = vec![0usize; nrows + cols.len()];
    let mut visit = |x: usize, uf: &mut UnionFind, comps: &mut Vec<(Vec<usize>, Vec<usize>)>| {
        let root = uf.find(x);
        if comp_of[root] == usize::MAX {
            comp_of[root] = comps.len();
            comps.push(Default::default());
        }
        let comp = &mut comps[comp_of[root]];
        let list = if x < nrows { &mut comp.0 } else { &mut comp.1 };
        local[x] = list.len();
        list.push(x);
        comp_of[root]
    };
    let mut which = vec![0usize; nrows + cols.len()];
    for x in 0..nrows + cols.len() {
        which[x] = visit(x, &mut uf, &mut comps);
    }
    let mut comp_entries: Vec<Vec<(usize, usize, &Scalar)>> = vec![Vec::new(); comps.len()];
    for &(r, c, z) in &entries {
        let c_local = match order {
            KernelOrder::Forward => local[nrows + c],
            KernelOrder::Reverse => comps[which[r]].1.len() - 1 - local[nrows + c],
        };
        comp_entries[which[r]].push((local[r], c_local, z));
    }
    let mut out = Vec::new();
    for ((rows, comp_cols), es) in comps.iter().zip(&comp_entries) {
        if comp_cols.is_empty() {
            return None;
        }
        let summand = |j: usize| match order {
            KernelOrder::Forward => cols[comp_cols[j] - nrows],
            KernelOrder::Reverse => cols[comp_cols[comp_cols.len() - 1 - j] - nrows],
        };
        if rows.is_empty() {
            let s = summand(0);
            out.push((s, vec![(s, Scalar::one())]));
            continue;
        }
        let (rank, ker) = f.sparse_kernel(rows.len(), comp_cols.len(), es);
        if rank < rows.len() {
            return None;
        }
        for (free, v) in ker {
            let mut v: Vec<(usize, Scalar)> = v.into_iter().map(|(j, z)| (summand(j), z)).collect();
            v.sort_by_key(|(s, _)| *s);
            out.push((summand(free), v));
        }
    }
    Some(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct VerifyReport {
    pub dd_zero: bool,
    pub exact: bool,
    pub linear: bool,
    pub minimal: bool,
    /// Per position: (dimension of `Q_t`, kernel of `d_t`, image of
    /// `d_{t+1}`), summed over all blocks.
    pub dimensions: Vec<(usize, usize, usize)>,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn all_true(&self) -> bool {
        self.dd_zero && self.exact && self.linear && self.minimal
    }
}

/// A basis vector of a term: summand index and basis element of `P_k`.
type Slot = (usize, BasisElem);

fn summand_basis(alg: &Algebra, k: usize) -> impl Iterator<Item = BasisElem> + '_ {
    alg.basis().iter().copied().filter(move |b| b.target() == k)
}

/// Checks the complex numerically. Right multiplication preserves the
/// source vertex of a path, and degree-0 maps preserve degree, so ranks are
/// computed blockwise.
pub fn verify_complex(c: &Complex, alg: &Algebra) -> VerifyReport {
    let f = alg.field();
    let mut rep = VerifyReport { dd_zero: true, exact: true, linear: true, minimal: true, ..Default::default() };
    let len = c.terms.len();

    for (t, m) in c.maps.iter().enumerate() {
        for (&(u, s), e) in m {
            if e.homogeneous_degree() != Some(1) && !e.is_zero() {
                rep.linear = false;
                rep.failures.push(format!("d_{}[{u},{s}] is not of degree 1", t + 1));
            }
            if e.terms().any(|(b, _)| b.degree() == 0) {
                rep.minimal = false;
                rep.failures.push(format!("d_{}[{u},{s}] has an invertible component", t + 1));
            }
        }
    }

    let graded = c.maps.iter().enumerate().all(|(t, m)| {
        m.iter().all(|(&(u, s), e)| {
            e.is_zero()
                || e.homogeneous_degree().map(|d| d as i32) == Some(c.terms[t + 1][u].1 - c.terms[t][s].1)
        })
    });

    // dd = 0
    if let Some(v) = c.augmented {
        if let Some(d1) = c.maps.first() {
            if d1.values().any(|e| !e.coefficient(&BasisElem::Idem(v)).is_zero()) {
                rep.dd_zero = false;
                rep.failures.push("augmentation after d_1 is nonzero".into());
            }
        }
    }
    for t in 1..c.maps.len() {
        let (hi, lo) = (&c.maps[t], &c.maps[t - 1]);
        let mut comp: BTreeMap<(usize, usize), AlgebraElement> = BTreeMap::new();
        for (&(u, mid), e1) in hi {
            for (&(mid2, s), e2) in lo.range((mid, 0)..=(mid, usize::MAX)) {
                debug_assert_eq!(mid, mid2);
                let p = alg.mul(e1, e2);
                let entry = comp.entry((u, s)).or_default();
                *entry = entry.add(&p, f);
            }
        }
        if let Some(((u, s), _)) = comp.iter().find(|(_, e)| !e.is_zero()) {
            rep.dd_zero = false;
            rep.failures.push(format!("d_{} d_{} is nonzero at [{u},{s}]", t, t + 1));
        }
    }

    // exactness at each position, blockwise
    for t in 0..len {
        let check = (t > 0 || c.augmented.is_some()) && (t + 1 < len || c.closed);
        let (total, ker, img) = position_dims(c, alg, t, graded);
        rep.dimensions.push((total, ker.iter().sum(), img.iter().sum()));
        if check && ker != img {
            rep.exact = false;
            rep.failures.push(format!("not exact at position {t}"));
        }
    }
    rep
}

/// Block key: (degree when graded, source vertex).
type Block = (i32, usize);

fn block_of(slot: &Slot, shift: i32, graded: bool) -> Block {
    (if graded { slot.1.degree() as i32 + shift } else { 0 }, slot.1.source())
}

fn slots_by_block(c: &Complex, alg: &Algebra, t: usize, graded: bool) -> BTreeMap<Block, Vec<Slot>> {
    let mut out: BTreeMap<Block, Vec<Slot>> = BTreeMap::new();
    for (s, &(k, shift)) in c.terms[t].iter().enumerate() {
        for b in summand_basis(alg, k) {
            let slot = (s, b);
            out.entry(block_of(&slot, shift, graded)).or_default().push(slot);
        }
    }
    out
}

/// Image of one basis vector of `Q_t` in `Q_{t−1}` (or in the simple when
/// `t = 0` and augmented).
fn image(c: &Complex, alg: &Algebra, t: usize, slot: &Slot) -> Vec<(Slot, Scalar)> {
    let f = alg.field();
    if t == 0 {
        return match c.augmented {
            Some(v) if slot.1 == BasisElem::Idem(v) => vec![((0, slot.1), Scalar::one())],
            _ => vec![],
        };
    }
    let mut out: BTreeMap<Slot, Scalar> = BTreeMap::new();
    for (&(_, s), e) in c.maps[t - 1].range((slot.0, 0)..=(slot.0, usize::MAX)) {
        for (b, z) in e.terms() {
            if let Some(p) = alg.mul_basis(slot.1, *b) {
                let x = out.entry((s, p)).or_insert_with(Scalar::zero);
                *x = f.add(x, z);
            }
        }
    }
    out.into_iter().filter(|(_, z)| !z.is_zero()).collect()
}

/// Returns the dimension of `Q_t`, kernel dimensions of `d_t` per block and
/// image dimensions of `d_{t+1}` per block (same block order).
fn position_dims(c: &Complex, alg: &Algebra, t: usize, graded: bool) -> (usize, Vec<usize>, Vec<usize>) {
    let f = alg.field();
    let here = slots_by_block(c, alg, t, graded);
    let total = here.values().map(Vec::len).sum();
    let mut ker = Vec::new();
    let mut img = Vec::new();
    let above = (t + 1 < c.terms.len()).then(|| slots_by_block(c, alg, t + 1, graded));
    for (block, slots) in &here {
        // kernel of d_t on this block
        let images: Vec<Vec<(Slot, Scalar)>> = slots.iter().map(|s| image(c, alg, t, s)).collect();
        let targets: BTreeMap<Slot, usize> = images
            .iter()
            .flatten()
            .map(|(s, _)| *s)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut m = vec![vec![Scalar::zero(); slots.len()]; targets.len()];
        for (j, im) in images.iter().enumerate() {
            for (s, z) in im {
                m[targets[s]][j] = z.clone();
            }
        }
        ker.push(slots.len() - f.rank(&m));
        // image of d_{t+1} landing in this block
        let rank = match &above {
            None => 0,
            Some(above) => {
                let sources = above.get(block).map_or(&[][..], Vec::as_slice);
                let index: BTreeMap<&Slot, usize> = slots.iter().enumerate().map(|(i, s)| (s, i)).collect();
                let rows: Vec<Vec<Scalar>> = sources
                    .iter()
                    .map(|s| {
                        let mut row = vec![Scalar::zero(); slots.len()];
                        for (tgt, z) in image(c, alg, t + 1, s) {
                            if let Some(&i) = index.get(&tgt) {
                                row[i] = z;
                            }
                        }
                        row
                    })
                    .collect();
                f.rank(&rows)
            }
        };
        img.push(rank);
    }
    (total, ker, img)
}

/// `(a_t, b_t)` from `(a_0, b_0)` by the block formula
/// `a_t = U_t a_0 − U_{t−1} b_0`, `b_t = (I − E_C)(U_{t−1} a_0 − U_{t−2} b_0)`.
pub fn multiplicity_vectors(
    g: &Graph,
    condition: &[usize],
    a0: &[i128],
    b0: &[i128],
    t: usize,
) -> Result<(Vec<i128>, Vec<i128>)> {
    let n = g.vertex_count();
    if a0.len() != n || b0.len() != n {
        return param("vector length must equal the vertex count");
    }
    let seq = crate::chebyshev::cheb_sequence(g, condition, t as i64)?;
    // seq[k] = U_{k−1}
    let u = |k: i64| -> IntMatrix { if k < -1 { IntMatrix::zeros(n, n) } else { seq[(k + 1) as usize].clone() } };
    let t = t as i64;
    let sub = |x: Vec<i128>, y: Vec<i128>| -> Result<Vec<i128>> {
        x.iter()
            .zip(&y)
            .map(|(a, b)| a.checked_sub(*b).ok_or(crate::error::Error::Overflow("multiplicity vector")))
            .collect()
    };
    let a = sub(u(t).mul_vec(a0)?, u(t - 1).mul_vec(b0)?)?;
    let mut b = sub(u(t - 1).mul_vec(a0)?, u(t - 2).mul_vec(b0)?)?;
    for k in condition {
        b[*k] = 0;
    }
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProjDim {
    Finite(usize),
    Infinite,
    ExceedsBound,
}

pub fn projective_dimension(alg: &Algebra, i: usize, bound: usize) -> Result<ProjDim> {
    if bound == 0 {
        return param("bound must be at least 1");
    }
    let r = resolve_simple(alg, i, bound)?;
    Ok(match r.status {
        ResolveStatus::Finished(d) => ProjDim::Finite(d),
        // self-injective and not semisimple: nothing of finite dimension
        _ if alg.condition().is_empty() => ProjDim::Infinite,
        _ => ProjDim::ExceedsBound,
    })
}

pub fn global_dimension(alg: &Algebra, bound: usize) -> Result<ProjDim> {
    let mut best = ProjDim::Finite(0);
    for i in 0..alg.vertex_count() {
        match (projective_dimension(alg, i, bound)?, best) {
            (ProjDim::Infinite, _) => return Ok(ProjDim::Infinite),
            (ProjDim::ExceedsBound, _) => best = ProjDim::ExceedsBound,
            (ProjDim::Finite(d), ProjDim::Finite(b)) => best = ProjDim::Finite(d.max(b)),
            (ProjDim::Finite(_), _) => {}
        }
    }
    Ok(best)
}

/// DOT digraph of a resolution graph, one ranked cluster per level.
pub fn export_resolution_dot(r: &ResolutionGraph, g: &Graph) -> String {
    let mut out = String::from("digraph resolution {\n  rankdir=RL;\n");
    for (t, lv) in r.levels.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_level_{t} {{\n    label=\"Q_{t}\";\n    rank=same;");
        for (u, &k) in lv.iter().enumerate() {
            let _ = writeln!(out, "    v_{t}_{u} [label=\"{}\"];", g.label(k));
        }
        out.push_str("  }\n");
    }
    for (t, lv) in r.edges.iter().enumerate() {
        for (u, es) in lv.iter().enumerate() {
            for (s, z) in es {
                let _ = writeln!(out, "  v_{}_{u} -> v_{t}_{s} [label=\"{}\"];", t + 1, render(z));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_named, Family};

    fn alg(fam: Family, n: usize, c: &[usize]) -> Algebra {
        Algebra::new(build_named(fam, n).unwrap(), c, Field::Rational).unwrap()
    }

    fn mults(r: &Resolution, n: usize) -> Vec<Vec<usize>> {
        (0..r.graph.level_count()).map(|t| r.graph.multiplicities(t, n)).collect()
    }

    #[test]
    fn affine_a2() {
        let a = alg(Family::AffineA, 2, &[]);
        let r = resolve_simple(&a, 0, 3).unwrap();
        assert_eq!(mults(&r, 3), vec![vec![1, 0, 0], vec![0, 1, 1], vec![1, 1, 1], vec![2, 1, 1]]);
        assert_eq!(r.status, ResolveStatus::Truncated(3));
        assert!(verify_complex(&r.complex(), &a).all_true());
    }

    #[test]
    fn d4_gets_stuck() {
        let a = alg(Family::D, 4, &[]);
        let r = resolve_simple(&a, 0, 10).unwrap();
        assert_eq!(r.status, ResolveStatus::StuckNonlinear(5));
        let m = mults(&r, 4);
        assert_eq!(m, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 1], vec![0, 1, 0, 0], vec![1, 0, 0, 0]]);
        assert!(verify_complex(&r.complex(), &a).all_true());
    }

    #[test]
    fn a3_with_condition() {
        let a = alg(Family::A, 3, &[0]);
        let r = resolve_simple(&a, 2, 10).unwrap();
        assert_eq!(r.status, ResolveStatus::Finished(2));
        assert_eq!(r.graph.levels, vec![vec![2], vec![1], vec![0]]);
        assert!(verify_complex(&r.complex(), &a).all_true());
        let r = resolve_simple(&a, 1, 10).unwrap();
        assert_eq!(r.status, ResolveStatus::Finished(3));
        assert_eq!(mults(&r, 3), vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn identity_map_is_not_minimal() {
        let a = alg(Family::A, 1, &[]);
        let mut m = BTreeMap::new();
        m.insert((0, 0), AlgebraElement::basis(BasisElem::Idem(0)));
        let c = Complex { terms: vec![vec![(0, 0)], vec![(0, 0)]], maps: vec![m], augmented: None, closed: false };
        let rep = verify_complex(&c, &a);
        assert!(!rep.minimal);
        assert!(!rep.linear);
    }

    #[test]
    fn two_arrows_in_a3() {
        let a = alg(Family::A, 3, &[]);
        let mut d1 = BTreeMap::new();
        d1.insert((0, 0), AlgebraElement::basis(BasisElem::Arrow(1, 2)));
        let mut d2 = BTreeMap::new();
        d2.insert((0, 0), AlgebraElement::basis(BasisElem::Arrow(0, 1)));
        let c = Complex {
            terms: vec![vec![(2, 0)], vec![(1, 1)], vec![(0, 2)]],
            maps: vec![d1, d2],
            augmented: None,
            closed: true,
        };
        let rep = verify_complex(&c, &a);
        assert!(rep.dd_zero && rep.linear && rep.minimal);
        assert!(!rep.exact);
        assert_eq!(rep.failures, vec!["not exact at position 2".to_string()]);
    }

    #[test]
    fn multiplicity_block_formula() {
        let g = build_named(Family::A, 4).unwrap();
        let (a, b) = multiplicity_vectors(&g, &[0], &[0, 1, 0, 0], &[0; 4], 5).unwrap();
        assert_eq!(a, vec![1, 0, 0, 0]);
        assert_eq!(b.len(), 4);
        let (a, b) = multiplicity_vectors(&g, &[], &[0, 1, 0, 0], &[0; 4], 0).unwrap();
        assert_eq!((a, b), (vec![0, 1, 0, 0], vec![0; 4]));
    }

    #[test]
    fn dimensions() {
        assert_eq!(global_dimension(&alg(Family::A, 2, &[0]), 20).unwrap(), ProjDim::Finite(2));
        let a3 = alg(Family::A, 3, &[0]);
        let pds: Vec<_> = (0..3).map(|i| projective_dimension(&a3, i, 20).unwrap()).collect();
        assert_eq!(pds, vec![ProjDim::Finite(4), ProjDim::Finite(3), ProjDim::Finite(2)]);
        assert_eq!(global_dimension(&alg(Family::A, 3, &[]), 20).unwrap(), ProjDim::Infinite);
    }

    #[test]
    fn dot_output() {
        let a = alg(Family::AffineA, 2, &[]);
        let r = resolve_simple(&a, 0, 3).unwrap();
        let dot = export_resolution_dot(&r.graph, a.graph());
        assert_eq!(dot.matches(" [label=\"").count() - dot.matches(" -> ").count(), 10);
        let single = ResolutionGraph { levels: vec![vec![0]], edges: vec![] };
        assert!(export_resolution_dot(&single, a.graph()).contains("v_0_0 [label=\"0\"]"));
    }
}
