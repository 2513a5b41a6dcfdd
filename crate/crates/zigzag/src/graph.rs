//! Finite simple graphs and the (affine) ADE families.
//!
//! Vertices are stored 0-based. Each graph carries a display offset so that
//! finite families print as `1..=n` and affine families as `0..=n`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::field::{Field, Scalar};
use crate::intmat::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    offset: usize,
    name: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    D,
    E,
    AffineA,
    AffineD,
    AffineE,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GraphType {
    FiniteA(usize),
    FiniteD(usize),
    FiniteE(usize),
    AffineA(usize),
    AffineD(usize),
    AffineE(usize),
    Other,
}

impl GraphType {
    pub fn is_finite_ade(&self) -> bool {
        matches!(self, GraphType::FiniteA(_) | GraphType::FiniteD(_) | GraphType::FiniteE(_))
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, GraphType::AffineA(_) | GraphType::AffineD(_) | GraphType::AffineE(_))
    }

    pub fn family(&self) -> Option<(Family, usize)> {
        match *self {
            GraphType::FiniteA(n) => Some((Family::A, n)),
            GraphType::FiniteD(n) => Some((Family::D, n)),
            GraphType::FiniteE(n) => Some((Family::E, n)),
            GraphType::AffineA(n) => Some((Family::AffineA, n)),
            GraphType::AffineD(n) => Some((Family::AffineD, n)),
            GraphType::AffineE(n) => Some((Family::AffineE, n)),
            GraphType::Other => None,
        }
    }

    /// Coxeter number for the finite types.
    pub fn coxeter_number(&self) -> Option<usize> {
        match *self {
            GraphType::FiniteA(n) => Some(n + 1),
            GraphType::FiniteD(n) => Some(2 * n - 2),
            GraphType::FiniteE(6) => Some(12),
            GraphType::FiniteE(7) => Some(18),
            GraphType::FiniteE(8) => Some(30),
            _ => None,
        }
    }
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family() {
            Some((fam, n)) => write!(f, "{}", family_name(fam, n)),
            None => write!(f, "Other"),
        }
    }
}

fn family_name(fam: Family, n: usize) -> String {
    match fam {
        Family::A => format!("A{n}"),
        Family::D => format!("D{n}"),
        Family::E => format!("E{n}"),
        Family::AffineA => format!("~A{n}"),
        Family::AffineD => format!("~D{n}"),
        Family::AffineE => format!("~E{n}"),
    }
}

/// Result of [`recognize`]: the type plus, unless `Other`, the map sending
/// each vertex of the input to its index in the canonical family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognition {
    pub ty: GraphType,
    pub relabel: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpectralClass {
    AllInsideOpen2,
    AllInsideClosed2,
    Outside2,
}

impl Graph {
    /// Builds a simple graph from 0-based edges. Connectivity is not
    /// required here; parsers and `recognize` enforce it where needed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return param(format!("edge ({a},{b}) out of range for {n} vertices"));
            }
            if a == b {
                return param(format!("self-loop at {a}"));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return param(format!("repeated edge ({a},{b})"));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(Graph { n, edges, adj, offset: 1, name: None })
    }

    pub fn with_offset(mut self, offset: usize) -> Graph {
        self.offset = offset;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Graph {
        self.name = Some(name.into());
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Display label of a stored vertex.
    pub fn label(&self, v: usize) -> usize {
        v + self.offset
    }

    /// Stored index of a display label.
    pub fn index_of(&self, label: usize) -> Result<usize> {
        if label < self.offset || label - self.offset >= self.n {
            return param(format!(
                "vertex {label} not in {}..={}",
                self.offset,
                self.n + self.offset - 1
            ));
        }
        Ok(label - self.offset)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if color[s] != usize::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if color[w] == usize::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("graph(n={}, m={})", self.n, self.edges.len()))
    }

    /// Edge-list text: vertex count, then one 1-based `i j` per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &(a, b) in &self.edges {
            s.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        s
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_name())
    }
}

/// Canonical member of a family with the standard enumeration.
pub fn build_named(fam: Family, n: usize) -> Result<Graph> {
    let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    let (count, edges, offset) = match fam {
        Family::A => {
            if n < 1 {
                return param("type A needs n >= 1");
            }
            (n, chain(n), 1)
        }
        Family::D => {
            if n < 4 {
                return param("type D needs n >= 4");
            }
            let mut e = chain(n - 2);
            e.push((n - 3, n - 2));
            e.push((n - 3, n - 1));
            (n, e, 1)
        }
        Family::E => {
            if !(6..=8).contains(&n) {
                return param("type E needs n in 6..=8");
            }
            let mut e = chain(n - 1);
            e.push((2, n - 1));
            (n, e, 1)
        }
        Family::AffineA => {
            if n < 2 {
                return param("affine type A needs n >= 2");
            }
            let mut e = chain(n + 1);
            e.push((0, n));
            (n + 1, e, 0)
        }
        Family::AffineD => {
            if n < 4 {
                return param("affine type D needs n >= 4");
            }
            let mut e = vec![(0, 2), (1, 2)];
            e.extend((2..n - 2).map(|i| (i, i + 1)));
            e.push((n - 2, n - 1));
            e.push((n - 2, n));
            (n + 1, e, 0)
        }
        Family::AffineE => {
            let e = match n {
                6 => vec![(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 0)],
                7 => vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)],
                8 => vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0), (3, 8)],
                _ => return param("affine type E needs n in 6..=8"),
            };
            (n + 1, e, 0)
        }
    };
    Ok(Graph::from_edges(count, &edges)?.with_offset(offset).with_name(family_name(fam, n)))
}

pub fn adjacency(g: &Graph) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.n, g.n);
    for &(a, b) in &g.edges {
        m.set(a, b, 1);
        m.set(b, a, 1);
    }
    m
}

/// Structural type recognition: decides the candidate family from the
/// degree sequence and cycle structure, then confirms it with an explicit
/// isomorphism onto the canonical member.
pub fn recognize(g: &Graph) -> Result<Recognition> {
    if !g.is_connected() {
        return param("recognize needs a connected graph");
    }
    let other = Recognition { ty: GraphType::Other, relabel: None };
    let Some(ty) = candidate_type(g) else {
        return Ok(other);
    };
    let (fam, n) = ty.family().expect("candidate is a family member");
    let canon = build_named(fam, n)?;
    match find_isomorphism(&canon, g) {
        Some(phi) => {
            // phi: canonical index -> g vertex; report g vertex -> canonical
            let mut relabel = vec![0; g.n];
            for (c, &v) in phi.iter().enumerate() {
                relabel[v] = c;
            }
            Ok(Recognition { ty, relabel: Some(relabel) })
        }
        None => Ok(other),
    }
}

fn candidate_type(g: &Graph) -> Option<GraphType> {
    let n = g.n;
    let m = g.edges.len();
    let max_deg = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    if m == n && max_deg == 2 {
        return (n >= 3).then_some(GraphType::AffineA(n - 1));
    }
    if m + 1 != n {
        return None;
    }
    if max_deg <= 2 {
        return Some(GraphType::FiniteA(n));
    }
    let branch: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    match branch.as_slice() {
        [c] if g.degree(*c) == 4 => {
            let arms = arm_lengths(g, *c);
            (arms == [1, 1, 1, 1]).then_some(GraphType::AffineD(4))
        }
        [c] if g.degree(*c) == 3 => match arm_lengths(g, *c).as_slice() {
            [1, 1, r] => Some(GraphType::FiniteD(r + 3)),
            [1, 2, 2] => Some(GraphType::FiniteE(6)),
            [1, 2, 3] => Some(GraphType::FiniteE(7)),
            [1, 2, 4] => Some(GraphType::FiniteE(8)),
            [2, 2, 2] => Some(GraphType::AffineE(6)),
            [1, 3, 3] => Some(GraphType::AffineE(7)),
            [1, 2, 5] => Some(GraphType::AffineE(8)),
            _ => None,
        },
        [a, b] if g.degree(*a) == 3 && g.degree(*b) == 3 => {
            let leafy = |v: usize| g.neighbors(v).iter().filter(|&&w| g.degree(w) == 1).count();
            (leafy(*a) == 2 && leafy(*b) == 2).then_some(GraphType::AffineD(n - 1))
        }
        _ => None,
    }
}

/// Lengths of the paths hanging off a branch vertex, sorted; only
/// meaningful when every other vertex has degree at most two.
fn arm_lengths(g: &Graph, c: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for &start in g.neighbors(c) {
        let (mut prev, mut cur, mut len) = (c, start, 1);
        loop {
            let next: Vec<usize> = g.neighbors(cur).iter().copied().filter(|&w| w != prev).collect();
            match next.as_slice() {
                [] => break,
                [w] => {
                    prev = cur;
                    cur = *w;
                    len += 1;
                }
                _ => return Vec::new(),
            }
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// Isomorphism from `h` onto `g` as a vector `h-vertex -> g-vertex`.
/// Plain backtracking along a BFS order of `h`; fine for the sparse
/// families it is used on.
pub fn find_isomorphism(h: &Graph, g: &Graph) -> Option<Vec<usize>> {
    if h.n != g.n || h.edges.len() != g.edges.len() {
        return None;
    }
    let mut degs_h: Vec<usize> = (0..h.n).map(|v| h.degree(v)).collect();
    let mut degs_g: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
    degs_h.sort_unstable();
    degs_g.sort_unstable();
    if degs_h != degs_g {
        return None;
    }
    let mut order = Vec::with_capacity(h.n);
    let mut seen = vec![false; h.n];
    for s in 0..h.n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in h.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut phi = vec![usize::MAX; h.n];
    let mut used = vec![false; g.n];
    if extend_iso(h, g, &order, 0, &mut phi, &mut used) {
        Some(phi)
    } else {
        None
    }
}

fn extend_iso(
    h: &Graph,
    g: &Graph,
    order: &[usize],
    k: usize,
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    if k == order.len() {
        return true;
    }
    let v = order[k];
    let anchor = h.neighbors(v).iter().find(|&&w| phi[w] != usize::MAX).copied();
    let candidates: Vec<usize> = match anchor {
        Some(a) => g.neighbors(phi[a]).to_vec(),
        None => (0..g.n).collect(),
    };
    for c in candidates {
        if used[c] || g.degree(c) != h.degree(v) {
            continue;
        }
        let consistent = order[..k].iter().all(|&w| h.has_edge(v, w) == g.has_edge(c, phi[w]));
        if !consistent {
            continue;
        }
        phi[v] = c;
        used[c] = true;
        if extend_iso(h, g, order, k + 1, phi, used) {
            return true;
        }
        phi[v] = usize::MAX;
        used[c] = false;
    }
    false
}

/// Exact test of where the adjacency spectrum sits relative to `[-2, 2]`.
pub fn spectral_class(g: &Graph) -> SpectralClass {
    let a = adjacency(g);
    let plus = definiteness(&a, 1);
    let minus = definiteness(&a, -1);
    if plus.definite && minus.definite {
        SpectralClass::AllInsideOpen2
    } else if plus.semidefinite && minus.semidefinite {
        SpectralClass::AllInsideClosed2
    } else {
        SpectralClass::Outside2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Definiteness {
    pub definite: bool,
    pub semidefinite: bool,
}

/// Definiteness of `2I + sign*A` by symmetric elimination over ℚ.
///
/// A zero pivot is fine for semidefiniteness only if its whole remaining
/// row vanishes; otherwise a 2x2 principal minor is negative.
pub fn definiteness(a: &IntMatrix, sign: i64) -> Definiteness {
    let n = a.rows();
    let m: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| sign as i128 * a.get(i, j) + if i == j { 2 } else { 0 }).collect())
        .collect();
    symmetric_definiteness(&m)
}

/// Definiteness of an arbitrary symmetric integer matrix.
pub fn symmetric_definiteness(m: &[Vec<i128>]) -> Definiteness {
    let f = Field::Rational;
    let n = m.len();
    let mut w: Vec<Vec<Scalar>> = m
        .iter()
        .map(|r| r.iter().map(|&v| Scalar::from_integer(v.into())).collect())
        .collect();
    let mut definite = true;
    for k in 0..n {
        let p = w[k][k].clone();
        if p.is_negative() {
            return Definiteness { definite: false, semidefinite: false };
        }
        if p.is_zero() {
            definite = false;
            if w[k][k + 1..].iter().any(|x| !x.is_zero()) {
                return Definiteness { definite: false, semidefinite: false };
            }
            continue;
        }
        for i in k + 1..n {
            if w[i][k].is_zero() {
                continue;
            }
            let factor = f.mul(&w[i][k], &f.inv(&p));
            for j in k..n {
                let d = f.mul(&factor, &w[k][j]);
                w[i][j] = f.sub(&w[i][j], &d);
            }
        }
    }
    Definiteness { definite, semidefinite: true }
}

/// Induced subgraph on all vertices but `v`, plus `map[new] = old`.
pub fn remove_vertex(g: &Graph, v: usize) -> Result<(Graph, Vec<usize>)> {
    if v >= g.n {
        return param(format!("vertex index {v} out of range"));
    }
    let map: Vec<usize> = (0..g.n).filter(|&w| w != v).collect();
    let mut inv = vec![usize::MAX; g.n];
    for (new, &old) in map.iter().enumerate() {
        inv[old] = new;
    }
    let edges: Vec<(usize, usize)> = g
        .edges
        .iter()
        .filter(|&&(a, b)| a != v && b != v)
        .map(|&(a, b)| (inv[a], inv[b]))
        .collect();
    let h = Graph::from_edges(g.n - 1, &edges)?.with_offset(g.offset);
    Ok((h, map))
}

/// Parses the edge-list format: first nonempty line is the vertex count,
/// each further nonempty line is `i j` with 1-based indices. `#` starts a
/// comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, head) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let n: usize = head
        .parse()
        .map_err(|_| Error::Parse { line: first, msg: format!("bad vertex count '{head}'") })?;
    if n == 0 {
        return Err(Error::Parse { line: first, msg: "vertex count must be positive".into() });
    }
    let mut edges = Vec::new();
    for (line, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let [a, b] = parts.as_slice() else {
            return Err(Error::Parse { line, msg: format!("expected 'i j', got '{l}'") });
        };
        let parse = |s: &str| -> Result<usize> {
            let v: usize =
                s.parse().map_err(|_| Error::Parse { line, msg: format!("bad vertex '{s}'") })?;
            if v == 0 || v > n {
                return Err(Error::Parse { line, msg: format!("vertex {v} outside 1..={n}") });
            }
            Ok(v - 1)
        };
        edges.push((parse(a)?, parse(b)?));
    }
    let g = Graph::from_edges(n, &edges).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    if !g.is_connected() {
        return Err(Error::Parse { line: 0, msg: "graph is not connected".into() });
    }
    Ok(g)
}

/// Parses `A:n`, `D:n`, `E:n`, `~A:n`, `~D:n`, `~E:n`.
pub fn parse_named(spec: &str) -> Result<Graph> {
    let (head, n) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parameter(format!("expected FAMILY:n, got '{spec}'")))?;
    let n: usize = n.trim().parse().map_err(|_| Error::Parameter(format!("bad size in '{spec}'")))?;
    let fam = match head.trim() {
        "A" => Family::A,
        "D" => Family::D,
        "E" => Family::E,
        "~A" => Family::AffineA,
        "~D" => Family::AffineD,
        "~E" => Family::AffineE,
        other => return param(format!("unknown family '{other}'")),
    };
    build_named(fam, n)
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Graph> {
        parse_named(s)
    }
}

/// All connected graphs on `n` vertices up to isomorphism, in a fixed order.
///
/// Grown one vertex at a time: deleting a non-cut vertex (a leaf of a
/// spanning tree) of a connected graph leaves it connected, so every graph
/// on `n` vertices arises from one on `n - 1`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut current = vec![Graph::from_edges(1, &[]).expect("single vertex")];
    for k in 1..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &current {
            for mask in 1u32..(1 << k) {
                let mut edges = g.edges.clone();
                edges.extend((0..k).filter(|&i| mask & (1 << i) != 0).map(|i| (i, k)));
                let h = Graph::from_edges(k + 1, &edges).expect("fresh edges");
                if seen.insert(canonical_form(&h)) {
                    next.push(h);
                }
            }
        }
        current = next;
    }
    current
}

/// Smallest edge bitmask over all relabelings that sort vertices by degree.
fn canonical_form(g: &Graph) -> (Vec<usize>, u64) {
    let n = g.n;
    let mut by_deg: Vec<usize> = (0..n).collect();
    by_deg.sort_by_key(|&v| g.degree(v));
    let degs: Vec<usize> = by_deg.iter().map(|&v| g.degree(v)).collect();
    // classes of equal degree are permuted independently
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &by_deg {
        match classes.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(n);
    permute_classes(g, &classes, 0, &mut perm, &mut best);
    (degs, best)
}

fn permute_classes(g: &Graph, classes: &[Vec<usize>], k: usize, perm: &mut Vec<usize>, best: &mut u64) {
    if k == classes.len() {
        let n = g.n;
        let mut pos = vec![0; n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let mut mask = 0u64;
        for &(a, b) in &g.edges {
            let (x, y) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
            mask |= 1 << (y * (y - 1) / 2 + x);
        }
        *best = (*best).min(mask);
        return;
    }
    let mut class = classes[k].clone();
    permutations(&mut class, 0, &mut |p| {
        let len = perm.len();
        perm.extend_from_slice(p);
        permute_classes(g, classes, k + 1, perm, best);
        perm.truncate(len);
    });
}

fn permutations(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, f);
        items.swap(k, i);
    }
}
