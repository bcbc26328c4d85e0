//! Ext-quivers of hearts, their CY-3 doubles, and the framed comparison.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;

use super::representation::{ext_dim, framed_quiver, hom_dim, indecomposable_of_root, Representation};
use crate::coxeter::{CartanData, Root};
use crate::error::{Error, Result};
use crate::hearts::{heart_of_sequence, Heart, Shift};
use crate::quiver::{Quiver, Vertex};

/// Graded arrows keyed by (from, to, degree), vertices 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedQuiver {
    pub labels: Vec<String>,
    pub arrows: BTreeMap<(usize, usize, u32), usize>,
}

#[derive(Serialize)]
struct GradedArrow {
    from: usize,
    to: usize,
    degree: u32,
    mult: usize,
}

impl GradedQuiver {
    pub fn new(labels: Vec<String>) -> Self {
        GradedQuiver { labels, arrows: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn add(&mut self, from: usize, to: usize, degree: u32, mult: usize) {
        if mult > 0 {
            *self.arrows.entry((from, to, degree)).or_insert(0) += mult;
        }
    }

    pub fn mult(&self, from: usize, to: usize, degree: u32) -> usize {
        self.arrows.get(&(from, to, degree)).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.arrows.keys().map(|k| k.2).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Multiplicity matrix of the degree-k arrows.
    pub fn degree_part(&self, k: u32) -> Vec<Vec<u64>> {
        let n = self.len();
        let mut m = vec![vec![0u64; n]; n];
        for (&(f, t, d), &c) in &self.arrows {
            if d == k {
                m[f][t] += c as u64;
            }
        }
        m
    }

    /// Adds T→S of degree 3−k for each S→T of degree k, and a degree-3 loop at every vertex.
    pub fn cy3_double(&self) -> GradedQuiver {
        let mut g = self.clone();
        for (&(f, t, d), &c) in &self.arrows {
            assert!(d <= 3, "degree {d} exceeds the CY-3 range");
            g.add(t, f, 3 - d, c);
        }
        for v in 0..self.len() {
            g.add(v, v, 3, 1);
        }
        g
    }

    /// Same graded arrows after relabeling the vertices by some permutation.
    pub fn is_isomorphic(&self, o: &GradedQuiver) -> bool {
        if self.len() != o.len() || self.arrows.values().sum::<usize>() != o.arrows.values().sum::<usize>() {
            return false;
        }
        let mut perm = vec![usize::MAX; self.len()];
        let mut used = vec![false; self.len()];
        self.extend_iso(o, 0, &mut perm, &mut used)
    }

    fn extend_iso(&self, o: &GradedQuiver, i: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
        if i == self.len() {
            return self.arrows.iter().all(|(&(f, t, d), &c)| o.mult(perm[f], perm[t], d) == c);
        }
        for t in 0..o.len() {
            if used[t] {
                continue;
            }
            perm[i] = t;
            used[t] = true;
            if self.extend_iso(o, i + 1, perm, used) {
                return true;
            }
            used[t] = false;
        }
        false
    }

    pub fn to_json(&self) -> serde_json::Value {
        let arrows: Vec<GradedArrow> = self
            .arrows
            .iter()
            .map(|(&(from, to, degree), &mult)| GradedArrow { from, to, degree, mult })
            .collect();
        serde_json::json!({ "vertices": self.labels, "arrows": arrows })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph graded {\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{l}\"];");
        }
        for (&(f, t, d), &c) in &self.arrows {
            for _ in 0..c {
                let _ = writeln!(s, "  v{f} -> v{t} [label=\"deg={d}\"];");
            }
        }
        s.push_str("}\n");
        s
    }
}

fn require_dynkin(q: &Quiver) -> Result<()> {
    if CartanData::new(q)?.is_finite_type() {
        Ok(())
    } else {
        Err(Error::NonDynkin)
    }
}

fn shift_value(s: Shift) -> i64 {
    i64::from(i8::from(s))
}

/// dim Hom^k(M[a], N[b]) = dim Ext^{k+b−a}(M, N) in a hereditary category.
fn graded_hom(hom: usize, ext: usize, k: i64, a: i64, b: i64) -> usize {
    match k + b - a {
        0 => hom,
        1 => ext,
        _ => 0,
    }
}

/// Adds one arrow S→T of degree k ≥ 1 per basis element of Hom^k(S, T).
fn add_graded_arrows(
    g: &mut GradedQuiver,
    objects: &[(Representation<BigRational>, i64)],
    q: &Quiver,
) {
    for (i, (m, a)) in objects.iter().enumerate() {
        for (j, (n, b)) in objects.iter().enumerate() {
            let (h, e) = (hom_dim(q, m, n), ext_dim(q, m, n));
            for k in 1..=3 {
                let mult = graded_hom(h, e, k, *a, *b);
                g.add(i, j, k as u32, mult);
            }
        }
    }
}

fn module_cache(q: &Quiver, h: &Heart) -> Result<HashMap<Root, Representation<BigRational>>> {
    let mut cache = HashMap::new();
    for s in &h.simples {
        if !cache.contains_key(&s.root) {
            cache.insert(s.root.clone(), indecomposable_of_root(q, &s.root)?);
        }
    }
    Ok(cache)
}

/// Ext-quiver on the simples of `h`, labeled by inherited vertex.
pub fn ext_quiver(q: &Quiver, h: &Heart) -> Result<GradedQuiver> {
    require_dynkin(q)?;
    let cache = module_cache(q, h)?;
    let objects: Vec<_> = h.simples.iter().map(|s| (cache[&s.root].clone(), shift_value(s.shift))).collect();
    let mut g = GradedQuiver::new(h.simples.iter().map(ToString::to_string).collect());
    add_graded_arrows(&mut g, &objects, q);
    Ok(g)
}

/// Ext-quiver of the heart extended to the framed quiver: simples of `h` first, then
/// the frozen simples S_1', …, S_n'.
pub fn ext_quiver_framed(q: &Quiver, h: &Heart) -> Result<GradedQuiver> {
    require_dynkin(q)?;
    let n = q.n();
    let fq = framed_quiver(q);
    let cache = module_cache(q, h)?;
    let mut objects: Vec<_> = h
        .simples
        .iter()
        .map(|s| (cache[&s.root].extend_by_zero(q, &fq), shift_value(s.shift)))
        .collect();
    objects.extend((1..=n).map(|i| (Representation::simple(&fq, n + i), 0)));
    let mut labels: Vec<String> = h.simples.iter().map(ToString::to_string).collect();
    labels.extend((1..=n).map(|i| format!("S{i}'")));
    let mut g = GradedQuiver::new(labels);
    add_graded_arrows(&mut g, &objects, &fq);
    if (n..2 * n).any(|f| (0..2 * n).any(|v| (1..=3).any(|d| g.mult(v, f, d) > 0))) {
        return Err(Error::Invariant("a frozen simple is not a source".into()));
    }
    Ok(g)
}

/// The degree-one part of the CY-3 double of the framed Ext-quiver of H_s equals the
/// framed quiver of the seed reached by s, vertex for vertex.
pub fn lemma_kq_check(q: &Quiver, s: &[Vertex]) -> Result<bool> {
    require_dynkin(q)?;
    let path = heart_of_sequence(q, s)?;
    let h = path.last();
    let g = ext_quiver_framed(q, h)?.cy3_double();
    Ok(g.degree_part(1) == h.seed.framed_adjacency())
}
