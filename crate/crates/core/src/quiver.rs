//! Quivers, framed seeds and matrix mutation.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IMat;

/// Vertices are labeled 1..=n everywhere in the public API.
pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuiverJson", into = "QuiverJson")]
pub struct Quiver {
    n: usize,
    arrows: Vec<(Vertex, Vertex)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: usize,
    arrows: Vec<[Vertex; 2]>,
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = Error;
    fn try_from(j: QuiverJson) -> Result<Self> {
        Quiver::new(j.vertices, j.arrows.into_iter().map(|[s, d]| (s, d)).collect())
    }
}

impl From<Quiver> for QuiverJson {
    fn from(q: Quiver) -> Self {
        QuiverJson { vertices: q.n, arrows: q.arrows.into_iter().map(|(s, d)| [s, d]).collect() }
    }
}

impl Quiver {
    /// Repeated pairs encode multiplicity.
    pub fn new(n: usize, arrows: Vec<(Vertex, Vertex)>) -> Result<Self> {
        for &(s, d) in &arrows {
            for v in [s, d] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if s == d {
                return Err(Error::Loop(s));
            }
        }
        let distinct: BTreeSet<(Vertex, Vertex)> = arrows.iter().copied().collect();
        if let Some(&(s, d)) = distinct.iter().find(|&&(s, d)| distinct.contains(&(d, s))) {
            return Err(Error::TwoCycle(s.min(d), s.max(d)));
        }
        let mut arrows = arrows;
        arrows.sort_unstable();
        Ok(Quiver { n, arrows })
    }

    /// Quiver read off a skew-symmetric matrix: b[i][j] > 0 gives that many arrows i→j.
    pub fn from_b(b: &IMat) -> Self {
        let n = b.n();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for _ in 0..b.0[i][j].max(0) {
                    arrows.push((i + 1, j + 1));
                }
            }
        }
        Quiver { n, arrows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(Vertex, Vertex)] {
        &self.arrows
    }

    /// Number of arrows i→j.
    pub fn mult(&self, i: Vertex, j: Vertex) -> usize {
        self.arrows.iter().filter(|&&a| a == (i, j)).count()
    }

    /// Distinct arrow pairs with multiplicity.
    pub fn arrow_counts(&self) -> Vec<((Vertex, Vertex), usize)> {
        let mut out: Vec<((Vertex, Vertex), usize)> = Vec::new();
        for &a in &self.arrows {
            match out.last_mut() {
                Some((p, m)) if *p == a => *m += 1,
                _ => out.push((a, 1)),
            }
        }
        out
    }

    pub fn b_matrix(&self) -> IMat {
        let mut b = IMat::zeros(self.n);
        for &(s, d) in &self.arrows {
            b.0[s - 1][d - 1] += 1;
            b.0[d - 1][s - 1] -= 1;
        }
        b
    }

    /// A topological order (sources first), or `Cyclic`.
    pub fn topological_order(&self) -> Result<Vec<Vertex>> {
        let mut indeg = vec![0usize; self.n + 1];
        for &(_, d) in &self.arrows {
            indeg[d] += 1;
        }
        let mut ready: BTreeSet<Vertex> = (1..=self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &(s, d) in &self.arrows {
                if s == v {
                    indeg[d] -= 1;
                    if indeg[d] == 0 {
                        ready.insert(d);
                    }
                }
            }
        }
        if order.len() == self.n {
            Ok(order)
        } else {
            Err(Error::Cyclic)
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    pub fn check_vertex(&self, k: Vertex) -> Result<()> {
        if k == 0 || k > self.n {
            Err(Error::VertexOutOfRange { vertex: k, n: self.n })
        } else {
            Ok(())
        }
    }
}

/// Arrow-surgery mutation: compose paths through k, reverse arrows at k, cancel 2-cycles.
pub fn quiver_surgery(q: &Quiver, k: Vertex) -> Result<Quiver> {
    q.check_vertex(k)?;
    let n = q.n();
    // Directed multiplicity counts; kept separate from b so that cancellation is explicit.
    let mut cnt = vec![vec![0i64; n + 1]; n + 1];
    for &(s, d) in q.arrows() {
        cnt[s][d] += 1;
    }
    let mut next = cnt.clone();
    for i in 1..=n {
        for j in 1..=n {
            if i != k && j != k && i != j {
                next[i][j] += cnt[i][k] * cnt[k][j];
            }
        }
    }
    for v in 1..=n {
        next[v][k] = cnt[k][v];
        next[k][v] = cnt[v][k];
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let m = next[i][j].min(next[j][i]);
            next[i][j] -= m;
            next[j][i] -= m;
        }
    }
    let mut arrows = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for _ in 0..next[i][j] {
                arrows.push((i, j));
            }
        }
    }
    Quiver::new(n, arrows)
}

/// Exchange matrix plus c-matrix; row r of `c` is frozen vertex r', column j the c-vector of j.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FramedSeed {
    pub b: IMat,
    pub c: IMat,
    #[serde(default)]
    pub history: Vec<Vertex>,
}

impl PartialEq for FramedSeed {
    fn eq(&self, o: &Self) -> bool {
        self.b == o.b && self.c == o.c
    }
}

impl Eq for FramedSeed {}

impl std::hash::Hash for FramedSeed {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.b.hash(h);
        self.c.hash(h);
    }
}

fn sgn(x: i64) -> i64 {
    x.signum()
}

impl FramedSeed {
    pub fn new(q: &Quiver) -> Self {
        FramedSeed { b: q.b_matrix(), c: IMat::identity(q.n()), history: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn quiver(&self) -> Quiver {
        Quiver::from_b(&self.b)
    }

    fn check_vertex(&self, k: Vertex) -> Result<()> {
        if k == 0 || k > self.n() {
            Err(Error::VertexOutOfRange { vertex: k, n: self.n() })
        } else {
            Ok(())
        }
    }

    pub fn mutate(&self, k: Vertex) -> Result<FramedSeed> {
        self.check_vertex(k)?;
        let n = self.n();
        let k = k - 1;
        let rule = |e_ij: i64, e_ik: i64, b_kj: i64, on_k: bool| -> Result<i64> {
            if on_k {
                return Ok(-e_ij);
            }
            let t = e_ik.checked_mul(b_kj).ok_or(Error::Overflow)?.max(0);
            e_ij.checked_add(sgn(e_ik) * t).ok_or(Error::Overflow)
        };
        let mut b = self.b.clone();
        let mut c = self.c.clone();
        for i in 0..n {
            for j in 0..n {
                b.0[i][j] = rule(self.b.0[i][j], self.b.0[i][k], self.b.0[k][j], i == k || j == k)?;
                c.0[i][j] = rule(self.c.0[i][j], self.c.0[i][k], self.b.0[k][j], j == k)?;
            }
        }
        let mut history = self.history.clone();
        history.push(k + 1);
        Ok(FramedSeed { b, c, history })
    }

    pub fn c_vector(&self, j: Vertex) -> Vec<i64> {
        self.c.column(j - 1)
    }

    pub fn is_green(&self, j: Vertex) -> bool {
        let v = self.c_vector(j);
        v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x != 0)
    }

    pub fn is_red(&self, j: Vertex) -> bool {
        let v = self.c_vector(j);
        v.iter().all(|&x| x <= 0) && v.iter().any(|&x| x != 0)
    }

    pub fn green_vertices(&self) -> Vec<Vertex> {
        (1..=self.n()).filter(|&j| self.is_green(j)).collect()
    }

    pub fn red_vertices(&self) -> Vec<Vertex> {
        (1..=self.n()).filter(|&j| self.is_red(j)).collect()
    }

    pub fn is_sign_coherent(&self) -> bool {
        (1..=self.n()).all(|j| self.is_green(j) || self.is_red(j))
    }

    /// Folds `mutate` over `s`; with `green_only`, stops at the first non-green step.
    pub fn apply_sequence(&self, s: &[Vertex], green_only: bool) -> Result<FramedSeed> {
        let mut seed = self.clone();
        for (idx, &k) in s.iter().enumerate() {
            seed.check_vertex(k)?;
            if green_only && !seed.is_green(k) {
                return Err(Error::NotGreenAt { index: idx + 1, vertex: k });
            }
            seed = seed.mutate(k)?;
        }
        Ok(seed)
    }

    /// All vertices red; cross-checked against c being a negated permutation matrix.
    pub fn is_maximal_green(&self) -> Result<bool> {
        let n = self.n();
        let all_red = n > 0 && (1..=n).all(|j| self.is_red(j));
        let mut seen = vec![false; n];
        let neg_perm = (0..n).all(|j| {
            let col = self.c.column(j);
            let ones: Vec<usize> = (0..n).filter(|&i| col[i] == -1).collect();
            let zero_rest = col.iter().filter(|&&x| x == 0).count() == n - 1;
            if ones.len() == 1 && zero_rest && !seen[ones[0]] {
                seen[ones[0]] = true;
                true
            } else {
                false
            }
        }) && n > 0;
        if all_red != neg_perm {
            return Err(Error::Invariant(format!(
                "all-red ({all_red}) disagrees with negated permutation c-matrix ({neg_perm})"
            )));
        }
        Ok(all_red)
    }

    /// A permutation π of the mutable vertices, frozen vertices fixed, carrying self to o:
    /// b_self[i][j] = b_o[π i][π j] and c_self[r][j] = c_o[r][π j].
    pub fn framed_iso(&self, o: &FramedSeed) -> Option<Vec<Vertex>> {
        let n = self.n();
        if o.n() != n {
            return None;
        }
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend_iso(o, 0, &mut perm, &mut used) {
            Some(perm.iter().map(|p| p + 1).collect())
        } else {
            None
        }
    }

    fn extend_iso(&self, o: &FramedSeed, i: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
        let n = self.n();
        if i == n {
            return true;
        }
        for t in 0..n {
            if used[t] {
                continue;
            }
            let col_ok = (0..n).all(|r| self.c.0[r][i] == o.c.0[r][t]);
            let b_ok = (0..i).all(|j| {
                self.b.0[i][j] == o.b.0[t][perm[j]] && self.b.0[j][i] == o.b.0[perm[j]][t]
            }) && self.b.0[i][i] == o.b.0[t][t];
            if col_ok && b_ok {
                perm[i] = t;
                used[t] = true;
                if self.extend_iso(o, i + 1, perm, used) {
                    return true;
                }
                used[t] = false;
            }
        }
        false
    }

    /// Arrow multiplicities of the framed quiver on 2n vertices: 0..n mutable, n..2n frozen.
    pub fn framed_adjacency(&self) -> Vec<Vec<u64>> {
        let n = self.n();
        let mut adj = vec![vec![0u64; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                adj[i][j] = self.b.0[i][j].max(0) as u64;
                let c = self.c.0[i][j];
                if c > 0 {
                    adj[n + i][j] = c as u64;
                } else if c < 0 {
                    adj[j][n + i] = (-c) as u64;
                }
            }
        }
        adj
    }

    pub fn to_dot(&self) -> String {
        let n = self.n();
        let mut s = String::from("digraph framed {\n");
        for j in 1..=n {
            let fill = if self.is_green(j) {
                "#3fb950"
            } else if self.is_red(j) {
                "#f85149"
            } else {
                "#d0d7de"
            };
            let _ = writeln!(s, "  \"{j}\" [shape=circle, style=filled, fillcolor=\"{fill}\"];");
        }
        for r in 1..=n {
            let _ = writeln!(s, "  \"{r}'\" [shape=box];");
        }
        for i in 0..n {
            for j in 0..n {
                let m = self.b.0[i][j];
                if m > 0 {
                    let _ = writeln!(s, "  \"{}\" -> \"{}\"{};", i + 1, j + 1, mult_label(m));
                }
                let c = self.c.0[i][j];
                if c > 0 {
                    let _ = writeln!(s, "  \"{}'\" -> \"{}\"{};", i + 1, j + 1, mult_label(c));
                } else if c < 0 {
                    let _ = writeln!(s, "  \"{}\" -> \"{}'\"{};", j + 1, i + 1, mult_label(-c));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn mult_label(m: i64) -> String {
    if m == 1 {
        String::new()
    } else {
        format!(" [label=\"{m}\"]")
    }
}

/// Random acyclic quiver: each pair gets 0..=max_mult arrows with probability `p`,
/// oriented along a random vertex order.
pub fn random_acyclic<R: Rng>(rng: &mut R, n: usize, p: f64, max_mult: usize) -> Quiver {
    let mut order: Vec<Vertex> = (1..=n).collect();
    order.shuffle(rng);
    let mut arrows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                for _ in 0..rng.gen_range(1..=max_mult.max(1)) {
                    arrows.push((order[a], order[b]));
                }
            }
        }
    }
    Quiver::new(n, arrows).expect("ordered arrows are loop- and 2-cycle-free")
}

/// Random loop-free 2-cycle-free quiver (cycles allowed).
pub fn random_quiver<R: Rng>(rng: &mut R, n: usize, p: f64, max_mult: usize) -> Quiver {
    let mut arrows = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(p) {
                let (s, d) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
                for _ in 0..rng.gen_range(1..=max_mult.max(1)) {
                    arrows.push((s, d));
                }
            }
        }
    }
    Quiver::new(n, arrows).expect("one direction per pair")
}
