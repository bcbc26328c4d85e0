//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any line fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use greenseq::bridge::{
    bijection_report, check_sortable_is_green, covers_via_red, descents_via_red, inversions_via_path,
    main_identity_failures, nc_c, table,
};
use greenseq::coxeter::{CartanData, Word};
use greenseq::hearts::{enumerate_maximal_green, exchange_graph, heart_of_sequence, path_support};
use greenseq::quiver::{random_acyclic, FramedSeed, Quiver};
use greenseq::repr::{all_indecomposables, ext_dim, ext_quiver, hom_dim, lemma_kq_check, torsion_closure_brute};
use greenseq::Result;

use common::*;

/// Outcome of one criterion: failure messages plus a short summary.
struct Outcome {
    failures: Vec<String>,
    summary: String,
}

fn criterion(name: &str, limit: Duration, f: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let (mut failures, summary) = match out {
        Ok(o) => (o.failures, o.summary),
        Err(e) => (vec![format!("error: {e}")], String::new()),
    };
    if elapsed > limit {
        failures.push(format!("runtime {:.2} s exceeds {:.0} s", elapsed.as_secs_f64(), limit.as_secs_f64()));
    }
    let ok = failures.is_empty();
    println!(
        "{} {name}: {summary} [{:.3} s, limit {:.0} s]",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    for f in failures.iter().take(12) {
        println!("     - {f}");
    }
    if failures.len() > 12 {
        println!("     - … {} more", failures.len() - 12);
    }
    ok
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn pentagon() -> Result<Outcome> {
    let g = exchange_graph(&a2_rev(), None)?;
    let mut failures = Vec::new();
    if g.hearts.len() != 5 || g.edges.len() != 5 {
        failures.push(format!("{} hearts, {} edges", g.hearts.len(), g.edges.len()));
    }
    let got: BTreeSet<BTreeSet<Vec<i64>>> =
        g.hearts.iter().map(|h| h.simples.iter().map(|s| s.signed_vector()).collect()).collect();
    if got != pentagon_hearts() {
        failures.push(format!("heart set {got:?}"));
    }
    Ok(Outcome { failures, summary: format!("{} hearts, {} edges", g.hearts.len(), g.edges.len()) })
}

fn greens_along(q: &Quiver, s: &[usize]) -> Result<Vec<Vec<usize>>> {
    let mut seed = FramedSeed::new(q);
    let mut out = vec![seed.green_vertices()];
    for &k in s {
        seed = seed.mutate(k)?;
        out.push(seed.green_vertices());
    }
    Ok(out)
}

fn maximal_a2() -> Result<Outcome> {
    let q = a2();
    let mut failures = Vec::new();
    let seqs = enumerate_maximal_green(&q, None)?;
    if seqs != vec![vec![2, 1], vec![1, 2, 1]] {
        failures.push(format!("maximal green sequences {seqs:?}"));
    }
    let s0 = FramedSeed::new(&q);
    let t1 = s0.apply_sequence(&[2, 1], true)?;
    let t2 = s0.apply_sequence(&[1, 2, 1], true)?;
    if t1.framed_iso(&t2).is_none() {
        failures.push("terminal seeds are not isomorphic".into());
    }
    let expected: [(&[usize], Vec<Vec<usize>>); 2] =
        [(&[2, 1], vec![vec![1, 2], vec![1], vec![]]), (&[1, 2, 1], vec![vec![1, 2], vec![2], vec![1], vec![]])];
    for (s, greens) in expected {
        let got = greens_along(&q, s)?;
        if got != greens {
            failures.push(format!("colorings along {s:?}: {got:?}"));
        }
    }
    // Vertices 0, 1 mutable and 2, 3 frozen (i' = n + i).
    let mut after1 = vec![vec![0u64; 4]; 4];
    for (f, t) in [(1, 0), (0, 2), (2, 1), (3, 1)] {
        after1[f][t] = 1;
    }
    if s0.mutate(1)?.framed_adjacency() != after1 {
        failures.push("framed quiver after μ1".into());
    }
    let mut after2 = vec![vec![0u64; 4]; 4];
    for (f, t) in [(1, 0), (2, 0), (1, 3)] {
        after2[f][t] = 1;
    }
    if s0.mutate(2)?.framed_adjacency() != after2 {
        failures.push("framed quiver after μ2".into());
    }
    Ok(Outcome { failures, summary: format!("{seqs:?}") })
}

fn a3_table() -> Result<Outcome> {
    let rows = table(&a3(), &[1, 2, 3])?;
    let mut failures = Vec::new();
    if rows.len() != 14 {
        failures.push(format!("{} rows", rows.len()));
    }
    for want in &A3_TABLE {
        let Some(got) = rows.iter().find(|r| r.letters == want.word) else {
            failures.push(format!("missing row {:?}", want.word));
            continue;
        };
        let w = want.word;
        if got.heart != heart(want.heart) {
            failures.push(format!("{w:?}: heart {}", got.word));
        }
        if got.descents != want.descents.iter().copied().collect() {
            failures.push(format!("{w:?}: descents {:?}", got.descents));
        }
        if got.covers != roots(want.covers) {
            failures.push(format!("{w:?}: covers {:?}", got.covers));
        }
        if got.torsion_class != roots(want.torsion) {
            failures.push(format!("{w:?}: torsion class {:?}", got.torsion_class));
        }
        if got.wide_members != roots(want.wide) {
            failures.push(format!("{w:?}: wide members {:?}", got.wide_members));
        }
    }
    Ok(Outcome { failures, summary: format!("{} rows", rows.len()) })
}

struct Case {
    name: &'static str,
    q: Quiver,
    c: Vec<usize>,
    dynkin: bool,
}

fn cases() -> Vec<Case> {
    vec![
        Case { name: "A1", q: a1(), c: vec![1], dynkin: true },
        Case { name: "A2", q: a2(), c: vec![1, 2], dynkin: true },
        Case { name: "A3", q: a3(), c: vec![1, 2, 3], dynkin: true },
        Case { name: "A1×A1", q: a1xa1(), c: vec![1, 2], dynkin: true },
        Case { name: "Ã2", q: affine_a2(), c: vec![1, 2, 3], dynkin: false },
    ]
}

fn sortables(case: &Case) -> Result<Vec<Word>> {
    let cd = CartanData::new(&case.q)?;
    let max = if case.dynkin { cd.positive_roots()?.len() } else { 8 };
    Ok(cd.enumerate_c_sortable(&case.c, max)?.words)
}

fn sortable_suite() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for case in cases() {
        let words = sortables(&case)?;
        counts.push(format!("{} {}", case.name, words.len()));
        if !case.dynkin && words.len() < 200 {
            failures.push(format!("{}: only {} sortable words of length ≤ 8, need ≥ 200", case.name, words.len()));
        }
        for w in &words {
            if let Err(e) = check_sortable_is_green(&case.q, &case.c, w) {
                failures.push(format!("{} {w}: not green: {e}", case.name));
            }
            let bad = main_identity_failures(&case.q, &case.c, w)?;
            if !bad.is_empty() {
                failures.push(format!("{} {w}: s_i^w·w ≠ w·s_i at i ∈ {bad:?}", case.name));
            }
            if case.dynkin {
                let t = path_support(&case.q, &w.0)?;
                if torsion_closure_brute(&case.q, &t)? != t {
                    failures.push(format!("{} {w}: path support not a torsion class", case.name));
                }
            }
        }
    }
    Ok(Outcome { failures, summary: format!("words: {}", counts.join(", ")) })
}

fn cross_oracle() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut total = 0;
    for case in cases() {
        let cd = CartanData::new(&case.q)?;
        for w in sortables(&case)? {
            total += 1;
            if descents_via_red(&case.q, &case.c, &w)? != cd.descents(&w)? {
                failures.push(format!("{} {w}: descents", case.name));
            }
            if covers_via_red(&case.q, &case.c, &w)? != cd.cover_reflections(&w)? {
                failures.push(format!("{} {w}: cover reflections", case.name));
            }
            if inversions_via_path(&case.q, &case.c, &w)? != cd.inversions(&w)? {
                failures.push(format!("{} {w}: inversions", case.name));
            }
        }
    }
    Ok(Outcome { failures, summary: format!("{total} words") })
}

fn sign_coherence() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6ee7);
    let mut failures = Vec::new();
    let mut steps = 0;
    for run in 0..1000 {
        let n = rng.gen_range(1..=6);
        let q = random_acyclic(&mut rng, n, 0.5, 1);
        let cd = CartanData::new(&q)?;
        let mut seed = FramedSeed::new(&q);
        for _ in 0..12 {
            let Some(&k) = seed.green_vertices().choose(&mut rng) else { break };
            seed = seed.mutate(k)?;
            steps += 1;
            if !seed.is_sign_coherent() {
                failures.push(format!("run {run}: c-matrix not sign-coherent after {:?}", seed.history));
            }
            for j in 1..=n {
                let v: Vec<i64> = seed.c_vector(j).iter().map(|x| x.abs()).collect();
                if !cd.is_real_root(&v) {
                    failures.push(format!("run {run}: |c_{j}| = {v:?} is not a real root after {:?}", seed.history));
                }
            }
        }
    }
    Ok(Outcome { failures, summary: format!("1000 sequences, {steps} mutations") })
}

fn lemma() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for (name, q) in [("A2", a2_rev()), ("A3", a3())] {
        let g = exchange_graph(&q, None)?;
        counts.push(format!("{name} {}", g.hearts.len()));
        for h in &g.hearts {
            if !lemma_kq_check(&q, &h.seed.history)? {
                failures.push(format!("{name}: heart {h} reached by {:?}", h.seed.history));
            }
        }
    }
    let q = a3();
    for (word, ext, aug) in [
        (&[1, 3][..], ext_left(), augmented_left()),
        (&[1, 3, 1][..], ext_right(), augmented_right()),
    ] {
        let h = heart_of_sequence(&q, word)?;
        let e = ext_quiver(&q, h.last())?;
        if !e.is_isomorphic(&ext) {
            failures.push(format!("Ext-quiver of {} differs: {:?}", h.last(), e.arrows));
        }
        if !e.cy3_double().is_isomorphic(&aug) {
            failures.push(format!("augmented quiver of {} differs", h.last()));
        }
    }
    Ok(Outcome { failures, summary: format!("hearts: {}; 4 printed quivers", counts.join(", ")) })
}

fn euler() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for (name, q, pairs) in [("A2", a2(), 9), ("A3", a3(), 36), ("D4", d4(), 144)] {
        let cd = CartanData::new(&q)?;
        let all = all_indecomposables::<BigRational>(&q)?;
        let mut seen = 0;
        for (r, m) in &all {
            for (s, n) in &all {
                seen += 1;
                let lhs = hom_dim(&q, m, n) as i64 - ext_dim(&q, m, n) as i64;
                if lhs != cd.euler_form(r, s) {
                    failures.push(format!("{name}: hom − ext = {lhs} for {r:?}, {s:?}"));
                }
            }
        }
        if seen != pairs {
            failures.push(format!("{name}: {seen} pairs, expected {pairs}"));
        }
        counts.push(format!("{name} {seen}"));
    }
    Ok(Outcome { failures, summary: format!("pairs: {}", counts.join(", ")) })
}

fn bijections() -> Result<Outcome> {
    let r = bijection_report(&a3(), &[1, 2, 3])?;
    let mut failures = r.violations.clone();
    let got = (r.sortable_words, r.torsion_classes, r.hearts, r.tree_edges, r.graph_edges);
    if got != (14, 14, 14, 13, 21) {
        failures.push(format!("(words, torsion classes, hearts, tree edges, graph edges) = {got:?}"));
    }
    Ok(Outcome {
        failures,
        summary: format!(
            "{} words, {} torsion classes, {} hearts, {} of {} edges in the tree",
            r.sortable_words, r.torsion_classes, r.hearts, r.tree_edges, r.graph_edges
        ),
    })
}

fn noncrossing() -> Result<Outcome> {
    let q = a3();
    let c = [1, 2, 3];
    let cd = CartanData::new(&q)?;
    let ce = cd.word_to_element(&Word(c.to_vec()))?;
    let mut failures = Vec::new();
    let words = cd.enumerate_c_sortable(&c, 6)?.words;
    for w in &words {
        let nc = nc_c(&q, &c, w)?;
        let red = heart_of_sequence(&q, &w.0)?.last().red_vertices().len();
        if cd.absolute_length(&nc)? != red {
            failures.push(format!("{w}: l_T = {}, #red = {red}", cd.absolute_length(&nc)?));
        }
        if !cd.leq_absolute(&nc, &ce)? {
            failures.push(format!("{w}: nc_c not below c"));
        }
    }
    if nc_c(&q, &c, &Word(vec![1, 2, 3, 1, 2, 3]))? != ce {
        failures.push("nc_c of the longest word is not c".into());
    }
    Ok(Outcome { failures, summary: format!("{} words", words.len()) })
}

fn main() -> ExitCode {
    let results = [
        criterion("A2 exchange graph is a pentagon", secs(1), pentagon),
        criterion("A2 maximal green sequences", secs(1), maximal_a2),
        criterion("A3 sortable table", secs(5), a3_table),
        criterion("Sortable words: green, reflection identity, torsion support", secs(60), sortable_suite),
        criterion("Inv/Des/Cov cross-oracle", secs(60), cross_oracle),
        criterion("Sign coherence", secs(30), sign_coherence),
        criterion("Ext-quivers and CY-3 doubles", secs(60), lemma),
        criterion("Euler form", secs(60), euler),
        criterion("Bijections", secs(60), bijections),
        criterion("nc_c", secs(60), noncrossing),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
