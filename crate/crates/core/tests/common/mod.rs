#![allow(dead_code)]

use std::collections::BTreeSet;

use greenseq::coxeter::Root;
use greenseq::hearts::{Shift, SignedSimple};
use greenseq::quiver::Quiver;
use greenseq::repr::GradedQuiver;

pub fn a1() -> Quiver {
    Quiver::new(1, vec![]).unwrap()
}

/// 1→2.
pub fn a2() -> Quiver {
    Quiver::new(2, vec![(1, 2)]).unwrap()
}

/// 2→1.
pub fn a2_rev() -> Quiver {
    Quiver::new(2, vec![(2, 1)]).unwrap()
}

/// 2←1→3.
pub fn a3() -> Quiver {
    Quiver::new(3, vec![(1, 2), (1, 3)]).unwrap()
}

pub fn a1xa1() -> Quiver {
    Quiver::new(2, vec![]).unwrap()
}

/// Acyclic triangle 1→2→3, 1→3.
pub fn affine_a2() -> Quiver {
    Quiver::new(3, vec![(1, 2), (1, 3), (2, 3)]).unwrap()
}

/// Central vertex 1 with arms 1→2, 1→3, 1→4.
pub fn d4() -> Quiver {
    Quiver::new(4, vec![(1, 2), (1, 3), (1, 4)]).unwrap()
}

/// Root names used by the A3 table.
pub fn root(name: char) -> Root {
    match name {
        'X' => vec![1, 0, 0],
        'Y' => vec![0, 1, 0],
        'Z' => vec![0, 0, 1],
        'A' => vec![1, 1, 1],
        'B' => vec![1, 1, 0],
        'C' => vec![1, 0, 1],
        _ => panic!("unknown root {name}"),
    }
}

pub fn roots(names: &str) -> BTreeSet<Root> {
    if names == "*" {
        return "XYZABC".chars().map(root).collect();
    }
    names.chars().map(root).collect()
}

/// "X^ Z Y^": simples in vertex order, `^` marking a shift by −1.
pub fn heart(s: &str) -> Vec<SignedSimple> {
    s.split_whitespace()
        .map(|t| {
            let mut c = t.chars();
            let r = root(c.next().unwrap());
            let shift = if c.next() == Some('^') { Shift::MinusOne } else { Shift::Zero };
            SignedSimple { root: r, shift }
        })
        .collect()
}

pub struct TableFixture {
    pub word: &'static [usize],
    pub heart: &'static str,
    pub descents: &'static [usize],
    pub covers: &'static str,
    pub torsion: &'static str,
    pub wide: &'static str,
}

/// A3 (2←1→3), c = s1s2s3. `*` stands for all six positive roots.
pub const A3_TABLE: [TableFixture; 14] = [
    TableFixture { word: &[1, 2, 3, 1, 2, 3], heart: "X^ Z^ Y^", descents: &[1, 2, 3], covers: "XYZ", torsion: "*", wide: "*" },
    TableFixture { word: &[1, 2, 3, 1, 2], heart: "B^ Z^ Y", descents: &[1, 2], covers: "BZ", torsion: "XBCAZ", wide: "BAZ" },
    TableFixture { word: &[1, 2, 3, 1, 3], heart: "C^ Z Y^", descents: &[1, 3], covers: "CY", torsion: "XBCAY", wide: "CAY" },
    TableFixture { word: &[2, 3], heart: "X Y^ Z^", descents: &[2, 3], covers: "YZ", torsion: "YZ", wide: "YZ" },
    TableFixture { word: &[1, 2, 3], heart: "A B^ C^", descents: &[2, 3], covers: "BC", torsion: "XBC", wide: "BC" },
    TableFixture { word: &[1, 3, 1], heart: "Z^ B X^", descents: &[1, 3], covers: "ZX", torsion: "XCZ", wide: "XCZ" },
    TableFixture { word: &[1, 2, 1], heart: "Y^ X^ C", descents: &[1, 2], covers: "YX", torsion: "XBY", wide: "XBY" },
    TableFixture { word: &[2], heart: "X Y^ Z", descents: &[2], covers: "Y", torsion: "Y", wide: "Y" },
    TableFixture { word: &[3], heart: "X Y Z^", descents: &[3], covers: "Z", torsion: "Z", wide: "Z" },
    TableFixture { word: &[1, 2, 3, 1], heart: "A^ Z Y", descents: &[1], covers: "A", torsion: "XBCA", wide: "A" },
    TableFixture { word: &[1, 2], heart: "Y B^ C", descents: &[2], covers: "B", torsion: "XB", wide: "B" },
    TableFixture { word: &[1, 3], heart: "Z B C^", descents: &[3], covers: "C", torsion: "XC", wide: "C" },
    TableFixture { word: &[1], heart: "X^ B C", descents: &[1], covers: "X", torsion: "X", wide: "X" },
    TableFixture { word: &[], heart: "X Y Z", descents: &[], covers: "", torsion: "", wide: "" },
];

/// The five hearts of A2 (2→1) as sets of signed vectors: {S1,S2}, {S1[-1],S2},
/// {S1[-1],S2[-1]}, {P2,S2[-1]}, {P2[-1],S1}.
pub fn pentagon_hearts() -> BTreeSet<BTreeSet<Vec<i64>>> {
    [
        [vec![1, 0], vec![0, 1]],
        [vec![-1, 0], vec![0, 1]],
        [vec![-1, 0], vec![0, -1]],
        [vec![1, 1], vec![0, -1]],
        [vec![-1, -1], vec![1, 0]],
    ]
    .into_iter()
    .map(|h| h.into_iter().collect())
    .collect()
}

fn graded(arrows: &[(usize, usize, u32)]) -> GradedQuiver {
    let mut g = GradedQuiver::new(vec!["a".into(), "b".into(), "c".into()]);
    for &(f, t, d) in arrows {
        g.add(f, t, d, 1);
    }
    g
}

/// Ext-quiver of {Ĉ, Z, B}: B→Z→Ĉ in degree 1.
pub fn ext_left() -> GradedQuiver {
    graded(&[(0, 1, 1), (1, 2, 1)])
}

/// Ext-quiver of {X̂, Ẑ, B}: B→X̂→Ẑ in degree 1 and B→Ẑ in degree 2.
pub fn ext_right() -> GradedQuiver {
    graded(&[(0, 1, 1), (1, 2, 1), (0, 2, 2)])
}

pub fn augmented_left() -> GradedQuiver {
    graded(&[(0, 1, 1), (1, 2, 1), (1, 0, 2), (2, 1, 2), (0, 0, 3), (1, 1, 3), (2, 2, 3)])
}

pub fn augmented_right() -> GradedQuiver {
    graded(&[(0, 1, 1), (1, 2, 1), (0, 2, 2), (1, 0, 2), (2, 1, 2), (2, 0, 1), (0, 0, 3), (1, 1, 3), (2, 2, 3)])
}
