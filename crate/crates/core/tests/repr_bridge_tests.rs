mod common;

use std::collections::BTreeSet;

use num_rational::BigRational;

use greenseq::bridge::{bijection_report, check_main_identity_red, nc_c, table, table_csv};
use greenseq::coxeter::{CartanData, Root, Word};
use greenseq::hearts::{exchange_graph, heart_of_sequence, path_support, torsion_class_sortable, wide_simples};
use greenseq::linalg::F5;
use greenseq::repr::torsion::subspaces;
use greenseq::repr::{
    all_indecomposables, end_dim, ext_quiver, ext_quiver_framed, hom_dim, indecomposable_of_root, is_torsion_class,
    lemma_kq_check, simples_of_wide, torsion_closure_brute, wide_brute, Representation,
};
use greenseq::Error;

use common::*;

#[test]
fn indecomposables_are_bricks_over_both_fields() {
    for q in [a2(), a3(), d4()] {
        for (r, m) in all_indecomposables::<BigRational>(&q).unwrap() {
            assert_eq!(m.dim_vector(), r);
            assert_eq!(end_dim(&q, &m), 1, "{r:?}");
        }
        for (r, m) in all_indecomposables::<F5>(&q).unwrap() {
            assert_eq!(end_dim(&q, &m), 1, "{r:?} over F5");
        }
    }
    assert!(matches!(indecomposable_of_root::<BigRational>(&a3(), &[2, 2, 0]), Err(Error::NotARoot(_))));
}

#[test]
fn hom_and_ext_between_simples() {
    let q = a2();
    let (s1, s2) = (Representation::<BigRational>::simple(&q, 1), Representation::simple(&q, 2));
    assert_eq!(hom_dim(&q, &s1, &s2), 0);
    assert_eq!(greenseq::repr::ext_dim(&q, &s1, &s2), 1);
    assert_eq!(greenseq::repr::ext_dim(&q, &s2, &s1), 0);
}

fn module(q: &greenseq::quiver::Quiver, r: &Root) -> Representation<BigRational> {
    indecomposable_of_root(q, r).unwrap()
}

#[test]
fn simples_of_every_heart_are_orthogonal() {
    for q in [a2_rev(), a3(), d4()] {
        for h in exchange_graph(&q, None).unwrap().hearts {
            for a in &h.simples {
                for b in &h.simples {
                    if a.shift == b.shift {
                        let expected = usize::from(a == b);
                        assert_eq!(hom_dim(&q, &module(&q, &a.root), &module(&q, &b.root)), expected, "{h}");
                    }
                }
            }
        }
    }
}

#[test]
fn ext_quivers_have_degrees_one_and_two_and_frozen_sources() {
    for q in [a2_rev(), a3(), d4()] {
        for h in exchange_graph(&q, None).unwrap().hearts {
            let e = ext_quiver(&q, &h).unwrap();
            assert!(e.degrees().iter().all(|d| *d == 1 || *d == 2), "{h}: {:?}", e.degrees());
            let f = ext_quiver_framed(&q, &h).unwrap();
            let n = q.n();
            for v in n..2 * n {
                for u in 0..2 * n {
                    assert!((1..=3).all(|d| f.mult(u, v, d) == 0));
                }
            }
        }
    }
}

#[test]
fn degree_one_part_of_augmented_quiver_is_the_framed_quiver() {
    for q in [a2_rev(), a3(), d4()] {
        for h in exchange_graph(&q, None).unwrap().hearts {
            assert!(lemma_kq_check(&q, &h.seed.history).unwrap(), "{h}");
        }
    }
}

#[test]
fn printed_ext_quivers() {
    let q = a3();
    let left = heart_of_sequence(&q, &[1, 3]).unwrap();
    let right = heart_of_sequence(&q, &[1, 3, 1]).unwrap();
    assert_eq!(left.last().simples, heart("Z B C^"));
    assert_eq!(right.last().simples, heart("Z^ B X^"));
    let el = ext_quiver(&q, left.last()).unwrap();
    let er = ext_quiver(&q, right.last()).unwrap();
    assert!(el.is_isomorphic(&ext_left()));
    assert!(er.is_isomorphic(&ext_right()));
    assert!(!el.is_isomorphic(&ext_right()));
    assert!(el.cy3_double().is_isomorphic(&augmented_left()));
    assert!(er.cy3_double().is_isomorphic(&augmented_right()));
    // The right heart is a simple backward tilt of the left one at Z.
    let step = heart_of_sequence(&q, &[1, 3, 1]).unwrap();
    assert_eq!(step.steps[2].root, vec![0, 0, 1]);
}

#[test]
fn ext_quiver_rejects_non_dynkin() {
    let q = affine_a2();
    let h = heart_of_sequence(&q, &[1]).unwrap();
    assert!(matches!(ext_quiver(&q, h.last()), Err(Error::NonDynkin)));
}

#[test]
fn subspace_counts_over_f5() {
    // Gaussian binomials at q = 5: [3 choose 1] = [3 choose 2] = 31.
    assert_eq!(subspaces::<5>(3, 2).len(), 1 + 31 + 31);
    assert_eq!(subspaces::<5>(2, 2).len(), 1 + 6 + 1);
    assert_eq!(subspaces::<5>(0, 2).len(), 1);
}

#[test]
fn torsion_classes_of_a3_sortables() {
    let q = a3();
    let c = [1, 2, 3];
    let cd = CartanData::new(&q).unwrap();
    let words = cd.enumerate_c_sortable(&c, 6).unwrap().words;
    let mut classes = BTreeSet::new();
    for w in &words {
        let t = path_support(&q, &w.0).unwrap();
        assert_eq!(torsion_class_sortable(&q, &c, w).unwrap(), t);
        assert_eq!(torsion_closure_brute(&q, &t).unwrap(), t, "{w}");
        assert!(is_torsion_class(&q, &t).unwrap());
        let members = wide_brute(&q, &t, 2).unwrap();
        assert_eq!(wide_brute(&q, &t, 3).unwrap(), members, "{w}");
        assert_eq!(simples_of_wide(&members), wide_simples(&q, &w.0).unwrap(), "{w}");
        classes.insert(t);
    }
    assert_eq!(classes.len(), 14);
    assert!(!is_torsion_class(&q, &roots("B")).unwrap());
    assert!(matches!(wide_brute(&q, &roots("B"), 2), Err(Error::NotATorsionClass)));
    assert_eq!(torsion_closure_brute(&q, &roots("B")).unwrap(), roots("XB"));
}

#[test]
fn table_matches_fixture_row_for_row() {
    let rows = table(&a3(), &[1, 2, 3]).unwrap();
    assert_eq!(rows.len(), A3_TABLE.len());
    for want in &A3_TABLE {
        let got = rows.iter().find(|r| r.letters == want.word).unwrap();
        assert_eq!(got.heart, heart(want.heart), "{:?}", want.word);
        assert_eq!(got.descents, want.descents.iter().copied().collect(), "{:?}", want.word);
        assert_eq!(got.covers, roots(want.covers), "{:?}", want.word);
        assert_eq!(got.torsion_class, roots(want.torsion), "{:?}", want.word);
        assert_eq!(got.wide_members, roots(want.wide), "{:?}", want.word);
        assert_eq!(got.wide_simples, simples_of_wide(&got.wide_members));
    }
}

#[test]
fn table_csv_format() {
    let rows = table(&a3(), &[1, 2, 3]).unwrap();
    let csv = table_csv(&rows).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "word,heart,descents,covers,torsion_class,wide_simples,wide_members");
    assert_eq!(csv.lines().count(), 15);
    let row = r#"s1s2,"(0,1,0) ^(1,1,0) (1,0,1)",s2,"(1,1,0)","(1,0,0) (1,1,0)","(1,1,0)","(1,1,0)""#;
    assert!(csv.lines().any(|l| l == row), "{csv}");
}

#[test]
fn bijection_report_on_small_cases() {
    for (q, c, n) in [(a2_rev(), vec![2, 1], 5), (a2(), vec![1, 2], 5), (a3(), vec![1, 2, 3], 14), (d4(), vec![1, 2, 3, 4], 50)] {
        let r = bijection_report(&q, &c).unwrap();
        assert!(r.ok(), "{:?}", r.violations);
        assert_eq!((r.sortable_words, r.torsion_classes, r.hearts, r.tree_edges), (n, n, n, n - 1));
    }
    let r = bijection_report(&a3(), &[1, 2, 3]).unwrap();
    assert_eq!(r.graph_edges, 21);
}

#[test]
fn noncrossing_partitions() {
    let q = a3();
    let c = [1, 2, 3];
    let cd = CartanData::new(&q).unwrap();
    let w = Word(vec![1, 2, 3, 1]);
    assert_eq!(nc_c(&q, &c, &w).unwrap(), cd.reflection_of(&[1, 1, 1]).unwrap());
    assert_eq!(nc_c(&q, &c, &Word(vec![])).unwrap(), cd.word_to_element(&Word(vec![])).unwrap());
    assert_eq!(nc_c(&q, &c, &Word(vec![1, 2, 3, 1, 2, 3])).unwrap(), cd.word_to_element(&Word(c.to_vec())).unwrap());
    let distinct: BTreeSet<_> = cd
        .enumerate_c_sortable(&c, 6)
        .unwrap()
        .words
        .iter()
        .map(|w| nc_c(&q, &c, w).unwrap())
        .collect();
    assert_eq!(distinct.len(), 14);
    assert!(matches!(nc_c(&affine_a2(), &c, &Word(vec![1])), Err(Error::NonDynkin)));
}

#[test]
fn reflection_identity_holds_at_red_vertices() {
    for (q, c) in [(a2(), vec![1, 2]), (a3(), vec![1, 2, 3]), (d4(), vec![1, 2, 3, 4]), (affine_a2(), vec![1, 2, 3])] {
        let cd = CartanData::new(&q).unwrap();
        let max = if cd.is_finite_type() { cd.positive_roots().unwrap().len() } else { 8 };
        for w in cd.enumerate_c_sortable(&c, max).unwrap().words {
            assert!(check_main_identity_red(&q, &c, &w).unwrap(), "{w}");
        }
    }
}
