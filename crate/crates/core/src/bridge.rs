//! From c-sortable words to green mutation sequences, hearts and back.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::coxeter::{CartanData, Factorization, GroupElement, Root, Word};
use crate::error::{Error, Result};
use crate::hearts::{exchange_graph, heart_of_sequence, Heart, TiltPath};
use crate::quiver::{FramedSeed, Quiver, Vertex};
use crate::repr::{wide_brute, DEFAULT_CAP};

/// The mutation sequence of a word: its letters.
pub fn induced_sequence(w: &Word) -> Vec<Vertex> {
    w.0.clone()
}

fn sortable_path(q: &Quiver, c: &[Vertex], w: &Word) -> Result<(CartanData, Factorization, TiltPath)> {
    let cd = CartanData::new(q)?;
    let f = cd.is_c_sortable(w, c)?.ok_or(Error::NotSortable)?;
    let path = heart_of_sequence(q, &induced_sequence(w))?;
    Ok((cd, f, path))
}

/// The induced sequence of a sortable word mutates only at green vertices.
pub fn check_sortable_is_green(q: &Quiver, c: &[Vertex], w: &Word) -> Result<bool> {
    let cd = CartanData::new(q)?;
    cd.is_c_sortable(w, c)?.ok_or(Error::NotSortable)?;
    FramedSeed::new(q).apply_sequence(&induced_sequence(w), true)?;
    Ok(true)
}

/// Vertices i where s_{S_i^w} · w ≠ w · s_i as matrices.
pub fn main_identity_failures(q: &Quiver, c: &[Vertex], w: &Word) -> Result<Vec<Vertex>> {
    let (cd, _, path) = sortable_path(q, c, w)?;
    let g = cd.word_to_element(w)?;
    let mut bad = Vec::new();
    for i in 1..=cd.n() {
        let t = cd.reflection_of(&path.last().simple(i).root)?;
        if t.mul(&g) != g.mul(&cd.simple_reflection(i)) {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// s_{S_i^w} · w = w · s_i for every vertex i, as matrices.
pub fn check_main_identity(q: &Quiver, c: &[Vertex], w: &Word) -> Result<bool> {
    Ok(main_identity_failures(q, c, w)?.is_empty())
}

/// The identity restricted to the red vertices of H_w.
pub fn check_main_identity_red(q: &Quiver, c: &[Vertex], w: &Word) -> Result<bool> {
    let red = heart_of_sequence(q, &induced_sequence(w))?.last().red_vertices();
    Ok(main_identity_failures(q, c, w)?.iter().all(|i| !red.contains(i)))
}

pub fn descents_via_red(q: &Quiver, c: &[Vertex], w: &Word) -> Result<BTreeSet<Vertex>> {
    let (_, _, path) = sortable_path(q, c, w)?;
    Ok(path.last().red_vertices().into_iter().collect())
}

pub fn covers_via_red(q: &Quiver, c: &[Vertex], w: &Word) -> Result<BTreeSet<GroupElement>> {
    let (cd, _, path) = sortable_path(q, c, w)?;
    let h = path.last();
    h.red_vertices().into_iter().map(|j| cd.reflection_of(&h.simple(j).root)).collect()
}

pub fn inversions_via_path(q: &Quiver, c: &[Vertex], w: &Word) -> Result<BTreeSet<GroupElement>> {
    let (cd, _, path) = sortable_path(q, c, w)?;
    path.support().iter().map(|r| cd.reflection_of(r)).collect()
}

/// Product of the reflections of the red simples of H_w, taken in the order their roots
/// occur as tilt objects along the path of w. Checked to have rank #red and lie below c.
pub fn nc_c(q: &Quiver, c: &[Vertex], w: &Word) -> Result<GroupElement> {
    let (cd, _, path) = sortable_path(q, c, w)?;
    if !cd.is_finite_type() {
        return Err(Error::NonDynkin);
    }
    let h = path.last();
    let mut red: Vec<(usize, &Root)> = h
        .red_vertices()
        .into_iter()
        .map(|j| {
            let root = &h.simple(j).root;
            let at = path
                .steps
                .iter()
                .position(|s| &s.root == root)
                .ok_or_else(|| Error::Invariant(format!("red simple {root:?} is not a tilt object")))?;
            Ok((at, root))
        })
        .collect::<Result<_>>()?;
    red.sort();
    let mut g = GroupElement::identity(cd.n());
    for (_, r) in &red {
        g = g.mul(&cd.reflection_of(r)?);
    }
    let coxeter = cd.word_to_element(&Word(c.to_vec()))?;
    let rank = cd.absolute_length(&g)?;
    if rank != red.len() {
        return Err(Error::Invariant(format!("nc_c({w}) has rank {rank}, expected {}", red.len())));
    }
    if !cd.leq_absolute(&g, &coxeter)? {
        return Err(Error::Invariant(format!("nc_c({w}) is not below c in absolute order")));
    }
    Ok(g)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BijectionReport {
    pub sortable_words: usize,
    pub torsion_classes: usize,
    pub hearts: usize,
    pub graph_edges: usize,
    pub tree_edges: usize,
    pub violations: Vec<String>,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Path support of every heart, read along a longest path from H_Q.
fn heart_supports(g: &crate::hearts::ExchangeGraph) -> Result<Vec<BTreeSet<Root>>> {
    let order = g.topological_order().ok_or_else(|| Error::Invariant("exchange graph has a cycle".into()))?;
    let mut best: Vec<Option<(usize, BTreeSet<Root>)>> = vec![None; g.hearts.len()];
    best[0] = Some((0, BTreeSet::new()));
    for v in order {
        let Some((len, sup)) = best[v].clone() else { continue };
        for e in g.edges.iter().filter(|e| e.from == v) {
            if best[e.to].as_ref().is_none_or(|(l, _)| *l < len + 1) {
                let mut s = sup.clone();
                s.insert(e.tilt_root.clone());
                best[e.to] = Some((len + 1, s));
            }
        }
    }
    best.into_iter()
        .map(|b| b.map(|(_, s)| s).ok_or_else(|| Error::Invariant("heart unreachable from H_Q".into())))
        .collect()
}

/// Sortable words, torsion classes and hearts in bijection, with the prefix tree spanning
/// the exchange graph. Dynkin only.
pub fn bijection_report(q: &Quiver, c: &[Vertex]) -> Result<BijectionReport> {
    let cd = CartanData::new(q)?;
    if !cd.is_finite_type() {
        return Err(Error::NonDynkin);
    }
    let max_len = cd.positive_roots()?.len();
    let tree = cd.enumerate_c_sortable(c, max_len)?;
    let g = exchange_graph(q, None)?;
    let mut rep = BijectionReport {
        sortable_words: tree.words.len(),
        hearts: g.hearts.len(),
        graph_edges: g.edges.len(),
        ..Default::default()
    };
    let supports = heart_supports(&g)?;
    let mut heart_of_word: Vec<usize> = Vec::with_capacity(tree.words.len());
    let mut last_tilt: Vec<Option<Root>> = Vec::with_capacity(tree.words.len());
    let mut classes: HashMap<BTreeSet<Root>, usize> = HashMap::new();
    for (i, w) in tree.words.iter().enumerate() {
        let path = heart_of_sequence(q, &w.0)?;
        last_tilt.push(path.steps.last().map(|s| s.root.clone()));
        let t = path.support();
        if let Some(prev) = classes.insert(t.clone(), i) {
            rep.violations.push(format!("{} and {w} share a torsion class", tree.words[prev]));
        }
        match g.find(path.last()) {
            Some(h) => {
                if supports[h] != t {
                    rep.violations.push(format!("torsion class of {w} differs from its heart's path support"));
                }
                heart_of_word.push(h);
            }
            None => {
                rep.violations.push(format!("heart of {w} missing from the exchange graph"));
                heart_of_word.push(usize::MAX);
            }
        }
    }
    rep.torsion_classes = classes.len();
    let hit: BTreeSet<usize> = heart_of_word.iter().copied().filter(|&h| h != usize::MAX).collect();
    if hit.len() != tree.words.len() {
        rep.violations.push("two sortable words reach the same heart".into());
    }
    if hit.len() != g.hearts.len() {
        rep.violations.push(format!("{} of {} hearts are reached by sortable words", hit.len(), g.hearts.len()));
    }
    let support_set: BTreeSet<&BTreeSet<Root>> = supports.iter().collect();
    if classes.keys().collect::<BTreeSet<_>>() != support_set {
        rep.violations.push("torsion classes of words and path supports of hearts differ".into());
    }
    // Prefix tree edges w → w·s_i must be exchange-graph edges tilting the same object.
    // Vertex labels are not compared: a heart's inherited labeling depends on the path.
    let mut used = BTreeSet::new();
    for (child, parent) in tree.parent.iter().enumerate() {
        let Some(p) = *parent else { continue };
        let (from, to) = (heart_of_word[p], heart_of_word[child]);
        let root = last_tilt[child].as_ref();
        match g.edges.iter().position(|e| e.from == from && e.to == to && Some(&e.tilt_root) == root) {
            Some(e) if used.insert(e) => rep.tree_edges += 1,
            _ => rep.violations.push(format!("tree edge {} → {} is not an exchange-graph edge", tree.words[p], tree.words[child])),
        }
    }
    if rep.tree_edges + 1 != g.hearts.len() {
        rep.violations.push(format!("tree has {} edges for {} hearts", rep.tree_edges, g.hearts.len()));
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub word: String,
    pub letters: Vec<Vertex>,
    pub heart: Vec<crate::hearts::SignedSimple>,
    pub descents: BTreeSet<Vertex>,
    /// Roots of the cover reflections.
    pub covers: BTreeSet<Root>,
    pub torsion_class: BTreeSet<Root>,
    pub wide_simples: BTreeSet<Root>,
    /// Every indecomposable of the wide subcategory, by brute force.
    pub wide_members: BTreeSet<Root>,
}

/// One row per c-sortable word, in prefix-tree order. Dynkin only.
pub fn table(q: &Quiver, c: &[Vertex]) -> Result<Vec<TableRow>> {
    let cd = CartanData::new(q)?;
    if !cd.is_finite_type() {
        return Err(Error::NonDynkin);
    }
    let tree = cd.enumerate_c_sortable(c, cd.positive_roots()?.len())?;
    tree.words
        .iter()
        .zip(&tree.factorizations)
        .map(|(w, f)| {
            let path = heart_of_sequence(q, &w.0)?;
            let h: &Heart = path.last();
            let torsion_class = path.support();
            let wide_simples = h.red_vertices().into_iter().map(|j| h.simple(j).root.clone()).collect();
            Ok(TableRow {
                word: f.to_string(),
                letters: w.0.clone(),
                heart: h.simples.clone(),
                descents: cd.descents(w)?,
                covers: cd.cover_roots(w)?.into_iter().map(|(_, r)| r).collect(),
                wide_members: wide_brute(q, &torsion_class, DEFAULT_CAP)?,
                torsion_class,
                wide_simples,
            })
        })
        .collect()
}

fn fmt_root(r: &[i64]) -> String {
    let parts: Vec<String> = r.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn fmt_roots(rs: &BTreeSet<Root>) -> String {
    rs.iter().map(|r| fmt_root(r)).collect::<Vec<_>>().join(" ")
}

pub fn table_csv(rows: &[TableRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Invariant(format!("csv: {e}"));
    w.write_record(["word", "heart", "descents", "covers", "torsion_class", "wide_simples", "wide_members"])
        .map_err(io)?;
    for r in rows {
        let heart = r.heart.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let descents = r.descents.iter().map(|d| format!("s{d}")).collect::<Vec<_>>().join(" ");
        w.write_record([
            r.word.clone(),
            heart,
            descents,
            fmt_roots(&r.covers),
            fmt_roots(&r.torsion_class),
            fmt_roots(&r.wide_simples),
            fmt_roots(&r.wide_members),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invariant(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Quiver {
        Quiver::new(3, vec![(1, 2), (1, 3)]).unwrap()
    }

    const C: [Vertex; 3] = [1, 2, 3];

    fn w(v: &[Vertex]) -> Word {
        Word(v.to_vec())
    }

    #[test]
    fn induced() {
        assert_eq!(induced_sequence(&w(&[1, 3, 1])), vec![1, 3, 1]);
        assert!(induced_sequence(&w(&[])).is_empty());
    }

    #[test]
    fn main_identity_on_s1s2() {
        let q = a3();
        let cd = CartanData::new(&q).unwrap();
        let path = heart_of_sequence(&q, &[1, 2]).unwrap();
        let t2 = cd.reflection_of(&path.last().simple(2).root).unwrap();
        assert_eq!(t2, cd.word_to_element(&w(&[1, 2, 1])).unwrap());
        assert!(check_main_identity(&q, &C, &w(&[1, 2])).unwrap());
        assert!(check_main_identity(&q, &C, &w(&[])).unwrap());
    }

    #[test]
    fn main_identity_fails_at_a_green_vertex_of_s2() {
        // H_{s2} = X Ŷ Z keeps S_1 = X, while w s_1 w⁻¹ is the reflection of B.
        let q = a3();
        assert_eq!(main_identity_failures(&q, &C, &w(&[2])).unwrap(), vec![1]);
        assert!(check_main_identity_red(&q, &C, &w(&[2])).unwrap());
    }

    #[test]
    fn red_side_sets() {
        let q = a3();
        let cd = CartanData::new(&q).unwrap();
        let word = w(&[1, 2, 3, 1]);
        assert_eq!(descents_via_red(&q, &C, &word).unwrap(), BTreeSet::from([1]));
        assert_eq!(covers_via_red(&q, &C, &word).unwrap(), BTreeSet::from([cd.reflection_of(&[1, 1, 1]).unwrap()]));
        assert_eq!(covers_via_red(&q, &C, &w(&[2])).unwrap(), BTreeSet::from([cd.simple_reflection(2)]));
        assert!(inversions_via_path(&q, &C, &w(&[])).unwrap().is_empty());
    }

    #[test]
    fn nc_examples() {
        let q = a3();
        let cd = CartanData::new(&q).unwrap();
        assert_eq!(nc_c(&q, &C, &w(&[1, 2])).unwrap(), cd.word_to_element(&w(&[1, 2, 1])).unwrap());
        assert_eq!(nc_c(&q, &C, &w(&[1, 2, 3, 1, 2, 3])).unwrap(), cd.word_to_element(&w(&[1, 2, 3])).unwrap());
        assert!(nc_c(&q, &C, &w(&[])).unwrap().is_identity());
    }

    #[test]
    fn reports() {
        let r = bijection_report(&a3(), &C).unwrap();
        assert!(r.ok(), "{:?}", r.violations);
        assert_eq!((r.sortable_words, r.torsion_classes, r.hearts), (14, 14, 14));
        assert_eq!((r.tree_edges, r.graph_edges), (13, 21));
        let a2 = Quiver::new(2, vec![(2, 1)]).unwrap();
        let r = bijection_report(&a2, &[2, 1]).unwrap();
        assert!(r.ok());
        assert_eq!((r.sortable_words, r.hearts), (5, 5));
        let a1 = Quiver::new(1, vec![]).unwrap();
        assert_eq!(bijection_report(&a1, &[1]).unwrap().hearts, 2);
    }

    #[test]
    fn table_sizes() {
        assert_eq!(table(&a3(), &C).unwrap().len(), 14);
        let a2 = Quiver::new(2, vec![(2, 1)]).unwrap();
        assert_eq!(table(&a2, &[2, 1]).unwrap().len(), 5);
        assert_eq!(table(&a2, &[1, 2]), Err(Error::NotAdmissible));
        let csv = table_csv(&table(&Quiver::new(1, vec![]).unwrap(), &[1]).unwrap()).unwrap();
        assert_eq!(csv.lines().count(), 3);
    }
}
