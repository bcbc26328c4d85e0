//! Euler form, geometric representation of the Coxeter group, word statistics,
//! c-sortable words and the absolute order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{bilinear, is_positive_definite, IMat};
use crate::quiver::{Quiver, Vertex};

pub type Root = Vec<i64>;

pub fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x != 0)
}

pub fn is_negative(v: &[i64]) -> bool {
    v.iter().all(|&x| x <= 0) && v.iter().any(|&x| x != 0)
}

pub fn unit(n: usize, i: Vertex) -> Root {
    let mut e = vec![0; n];
    e[i - 1] = 1;
    e
}

/// Element of W acting on the root lattice. Carries its inverse; compared by matrix.
#[derive(Clone, Serialize, Deserialize)]
pub struct GroupElement {
    pub m: IMat,
    #[serde(skip_serializing, default)]
    inv: Option<IMat>,
}

impl PartialEq for GroupElement {
    fn eq(&self, o: &Self) -> bool {
        self.m == o.m
    }
}
impl Eq for GroupElement {}
impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.m.hash(h);
    }
}
impl PartialOrd for GroupElement {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for GroupElement {
    fn cmp(&self, o: &Self) -> Ordering {
        self.m.cmp(&o.m)
    }
}
impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement { m: IMat::identity(n), inv: Some(IMat::identity(n)) }
    }

    fn new(m: IMat, inv: IMat) -> Self {
        GroupElement { m, inv: Some(inv) }
    }

    pub fn inverse(&self) -> GroupElement {
        let inv = self.inv.clone().expect("group element built without its inverse");
        GroupElement { m: inv, inv: Some(self.m.clone()) }
    }

    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        let m = &self.m * &o.m;
        let inv = match (&self.inv, &o.inv) {
            (Some(a), Some(b)) => Some(b * a),
            _ => None,
        };
        GroupElement { m, inv }
    }

    pub fn apply(&self, v: &[i64]) -> Root {
        self.m.apply(v)
    }

    /// w(e_i).
    pub fn image_of_simple(&self, i: Vertex) -> Root {
        self.m.column(i - 1)
    }

    pub fn is_identity(&self) -> bool {
        self.m == IMat::identity(self.m.n())
    }
}

/// A word s_{i1}…s_{ik}, stored as its letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Vertex>);

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for l in &self.0 {
            write!(f, "s{l}")?;
        }
        Ok(())
    }
}

/// Blocks c^(0) c^(1) … of a c-sortable word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Factorization(pub Vec<Vec<Vertex>>);

impl Factorization {
    pub fn word(&self) -> Word {
        Word(self.0.concat())
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|b| Word(b.clone()).to_string()).collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Weak-order prefix tree of c-sortable words; index 0 is the empty word.
#[derive(Clone, Debug, Serialize)]
pub struct SortableTree {
    pub words: Vec<Word>,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub factorizations: Vec<Factorization>,
}

#[derive(Clone, Debug)]
pub struct CartanData {
    quiver: Quiver,
    pub euler: IMat,
    pub sym: IMat,
}

impl CartanData {
    pub fn new(q: &Quiver) -> Result<Self> {
        q.topological_order()?;
        let n = q.n();
        let mut euler = IMat::identity(n);
        for &(s, d) in q.arrows() {
            euler.0[s - 1][d - 1] -= 1;
        }
        let sym = &euler + &euler.transpose();
        Ok(CartanData { quiver: q.clone(), euler, sym })
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// ⟨a, b⟩.
    pub fn euler_form(&self, a: &[i64], b: &[i64]) -> i64 {
        bilinear(&self.euler, a, b)
    }

    /// (a, b) = ⟨a,b⟩ + ⟨b,a⟩.
    pub fn sym_form(&self, a: &[i64], b: &[i64]) -> i64 {
        bilinear(&self.sym, a, b)
    }

    fn check_vertex(&self, i: Vertex) -> Result<()> {
        self.quiver.check_vertex(i)
    }

    pub fn simple_reflection(&self, i: Vertex) -> GroupElement {
        let n = self.n();
        let mut m = IMat::identity(n);
        for j in 0..n {
            m.0[i - 1][j] -= self.sym.0[i - 1][j];
        }
        GroupElement::new(m.clone(), m)
    }

    pub fn reflection_of(&self, v: &[i64]) -> Result<GroupElement> {
        let n = self.n();
        let q = self.sym_form(v, v);
        if q == 0 {
            return Err(Error::Isotropic);
        }
        let mut m = IMat::identity(n);
        for j in 0..n {
            let num = 2 * self.sym_form(v, &unit(n, j + 1));
            if num % q != 0 {
                return Err(Error::NonIntegralReflection);
            }
            let f = num / q;
            for i in 0..n {
                m.0[i][j] -= f * v[i];
            }
        }
        let g = GroupElement::new(m.clone(), m);
        self.assert_preserves_form(&g);
        Ok(g)
    }

    fn assert_preserves_form(&self, g: &GroupElement) {
        assert_eq!(&(&g.m.transpose() * &self.sym) * &g.m, self.sym, "element does not preserve the symmetric form");
    }

    pub fn word_to_element(&self, w: &Word) -> Result<GroupElement> {
        let mut g = GroupElement::identity(self.n());
        for &i in &w.0 {
            self.check_vertex(i)?;
            g = g.mul(&self.simple_reflection(i));
        }
        self.assert_preserves_form(&g);
        Ok(g)
    }

    /// Length via the sign walk l(u·s_i) = l(u) ± 1.
    pub fn word_length(&self, w: &Word) -> Result<usize> {
        let mut u = GroupElement::identity(self.n());
        let mut l: i64 = 0;
        for &i in &w.0 {
            self.check_vertex(i)?;
            if is_positive(&u.image_of_simple(i)) {
                l += 1;
            } else {
                l -= 1;
            }
            u = u.mul(&self.simple_reflection(i));
        }
        Ok(l as usize)
    }

    pub fn is_reduced(&self, w: &Word) -> Result<bool> {
        Ok(self.word_length(w)? == w.0.len())
    }

    /// Right descents {i : w(e_i) < 0}.
    pub fn descents(&self, w: &Word) -> Result<BTreeSet<Vertex>> {
        let g = self.word_to_element(w)?;
        Ok((1..=self.n()).filter(|&i| is_negative(&g.image_of_simple(i))).collect())
    }

    /// β_k = s_{i1}…s_{i(k-1)}(e_{ik}) in order.
    pub fn inversion_roots(&self, w: &Word) -> Result<Vec<Root>> {
        if !self.is_reduced(w)? {
            return Err(Error::NonReducedWord);
        }
        let mut u = GroupElement::identity(self.n());
        let mut out = Vec::with_capacity(w.0.len());
        for &i in &w.0 {
            out.push(u.image_of_simple(i));
            u = u.mul(&self.simple_reflection(i));
        }
        Ok(out)
    }

    pub fn inversions(&self, w: &Word) -> Result<BTreeSet<GroupElement>> {
        self.inversion_roots(w)?.iter().map(|b| self.reflection_of(b)).collect()
    }

    /// {w s_i w⁻¹ : i a descent}.
    pub fn cover_reflections(&self, w: &Word) -> Result<BTreeSet<GroupElement>> {
        if !self.is_reduced(w)? {
            return Err(Error::NonReducedWord);
        }
        let g = self.word_to_element(w)?;
        self.descents(w)?
            .into_iter()
            .map(|i| Ok(g.mul(&self.simple_reflection(i)).mul(&g.inverse())))
            .collect()
    }

    /// Roots −w(e_i) of the cover reflections, keyed by descent.
    pub fn cover_roots(&self, w: &Word) -> Result<Vec<(Vertex, Root)>> {
        let g = self.word_to_element(w)?;
        Ok(self
            .descents(w)?
            .into_iter()
            .map(|i| (i, g.image_of_simple(i).iter().map(|x| -x).collect()))
            .collect())
    }

    pub fn check_permutation(&self, order: &[Vertex]) -> Result<()> {
        let n = self.n();
        let set: HashSet<Vertex> = order.iter().copied().collect();
        if order.len() != n || set.len() != n || order.iter().any(|&v| v == 0 || v > n) {
            return Err(Error::NotAPermutation(n));
        }
        Ok(())
    }

    /// Every arrow points forward in the order.
    pub fn is_admissible(&self, order: &[Vertex]) -> Result<bool> {
        self.check_permutation(order)?;
        let mut pos = vec![0; self.n() + 1];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        Ok(self.quiver.arrows().iter().all(|&(s, d)| pos[s] < pos[d]))
    }

    fn require_admissible(&self, order: &[Vertex]) -> Result<()> {
        if self.is_admissible(order)? {
            Ok(())
        } else {
            Err(Error::NotAdmissible)
        }
    }

    /// Greedy block factorization against c; `None` unless reduced with weakly decreasing supports.
    pub fn is_c_sortable(&self, w: &Word, c: &[Vertex]) -> Result<Option<Factorization>> {
        self.require_admissible(c)?;
        for &l in &w.0 {
            self.check_vertex(l)?;
        }
        let mut pos = vec![0; self.n() + 1];
        for (p, &v) in c.iter().enumerate() {
            pos[v] = p;
        }
        let mut blocks: Vec<Vec<Vertex>> = Vec::new();
        for &l in &w.0 {
            match blocks.last_mut() {
                Some(b) if pos[*b.last().unwrap()] < pos[l] => b.push(l),
                _ => blocks.push(vec![l]),
            }
        }
        let nested = blocks.windows(2).all(|p| {
            let outer: BTreeSet<_> = p[0].iter().collect();
            p[1].iter().all(|l| outer.contains(l))
        });
        if !nested || !self.is_reduced(w)? {
            return Ok(None);
        }
        Ok(Some(Factorization(blocks)))
    }

    /// All c-sortable words of length ≤ max_length as a prefix tree, breadth first,
    /// children in c order.
    pub fn enumerate_c_sortable(&self, c: &[Vertex], max_length: usize) -> Result<SortableTree> {
        self.require_admissible(c)?;
        let mut tree = SortableTree {
            words: vec![Word(vec![])],
            parent: vec![None],
            children: vec![vec![]],
            factorizations: vec![Factorization(vec![])],
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            if tree.words[idx].0.len() >= max_length {
                continue;
            }
            for &l in c {
                let mut next = tree.words[idx].0.clone();
                next.push(l);
                let next = Word(next);
                if let Some(f) = self.is_c_sortable(&next, c)? {
                    let id = tree.words.len();
                    tree.words.push(next);
                    tree.parent.push(Some(idx));
                    tree.children.push(vec![]);
                    tree.factorizations.push(f);
                    tree.children[idx].push(id);
                    queue.push_back(id);
                }
            }
        }
        Ok(tree)
    }

    pub fn is_finite_type(&self) -> bool {
        is_positive_definite(&self.sym)
    }

    fn require_finite(&self) -> Result<()> {
        if self.is_finite_type() {
            Ok(())
        } else {
            Err(Error::NonDynkin)
        }
    }

    /// l_T(g) = rank(g − 1).
    pub fn absolute_length(&self, g: &GroupElement) -> Result<usize> {
        self.require_finite()?;
        Ok((&g.m - &IMat::identity(self.n())).rank())
    }

    pub fn leq_absolute(&self, u: &GroupElement, v: &GroupElement) -> Result<bool> {
        let lu = self.absolute_length(u)?;
        let rest = self.absolute_length(&u.inverse().mul(v))?;
        Ok(lu + rest == self.absolute_length(v)?)
    }

    /// Whether v (of either sign) lies in the W-orbit of a simple root.
    pub fn is_real_root(&self, v: &[i64]) -> bool {
        let sign: i64 = if v.iter().all(|&x| x <= 0) { -1 } else { 1 };
        let mut v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x) * sign).collect();
        let positive = |v: &[BigInt]| v.iter().all(|x| !x.is_negative()) && v.iter().any(|x| x.is_positive());
        let sym = |u: &[BigInt], i: usize| -> BigInt { u.iter().zip(&self.sym.0[i]).map(|(a, &b)| a * b).sum() };
        let n = self.n();
        let norm: BigInt = (0..n).map(|i| &v[i] * sym(&v, i)).sum();
        if !positive(&v) || norm != BigInt::from(2) {
            return false;
        }
        loop {
            if v.iter().sum::<BigInt>().is_one() {
                return true;
            }
            let Some((i, f)) = (0..n).map(|i| (i, sym(&v, i))).find(|(_, f)| f.is_positive()) else {
                return false;
            };
            v[i] -= f;
            if !positive(&v) {
                return false;
            }
        }
    }

    /// All positive roots, sorted by height then lexicographically. Dynkin only.
    pub fn positive_roots(&self) -> Result<Vec<Root>> {
        self.require_finite()?;
        let n = self.n();
        let mut seen: BTreeSet<Root> = (1..=n).map(|i| unit(n, i)).collect();
        let mut queue: VecDeque<Root> = seen.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            for i in 1..=n {
                let f = self.sym_form(&r, &unit(n, i));
                let mut s = r.clone();
                s[i - 1] -= f;
                if is_positive(&s) && seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut out: Vec<Root> = seen.into_iter().collect();
        out.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        Ok(out)
    }
}
