//! Brute-force torsion closures and wide subcategories, straight from the definitions.

use std::collections::BTreeSet;

use num_rational::BigRational;

use super::representation::{all_indecomposables, hom_basis, hom_dim, Morphism, Representation};
use crate::coxeter::{CartanData, Root};
use crate::error::{Error, Result};
use crate::linalg::{Field, Fp, Mat, F5};
use crate::quiver::Quiver;

/// Default bound on the multiplicity of each indecomposable in the source of a morphism.
pub const DEFAULT_CAP: usize = 2;

fn require_dynkin(q: &Quiver) -> Result<CartanData> {
    let cd = CartanData::new(q)?;
    if cd.is_finite_type() {
        Ok(cd)
    } else {
        Err(Error::NonDynkin)
    }
}

/// Subrepresentation spanned by column bases `sub[v] ⊆ X_v` (assumed arrow-stable).
fn subrep<F: Field>(q: &Quiver, x: &Representation<F>, sub: &[Mat<F>]) -> Representation<F> {
    let dims: Vec<usize> = sub.iter().map(|m| m.cols).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, d))| {
            let (ks, kd) = (&sub[s - 1], &sub[d - 1]);
            let image = x.maps[a].mul(ks);
            let cols: Vec<Vec<F>> = (0..ks.cols)
                .map(|c| kd.solve(&image.column(c)).expect("subspace is not arrow-stable"))
                .collect();
            Mat::from_fn(kd.cols, ks.cols, |i, j| cols[j][i].clone())
        })
        .collect();
    Representation { dims, maps }
}

/// Quotient X/S together with, per vertex, a lift of the quotient basis into X.
fn quotient<F: Field>(q: &Quiver, x: &Representation<F>, sub: &[Mat<F>]) -> (Representation<F>, Vec<Mat<F>>) {
    let mut lifts = Vec::with_capacity(q.n());
    let mut projs = Vec::with_capacity(q.n());
    for (v, s) in sub.iter().enumerate() {
        let n = x.dims[v];
        let (_, pivots) = s.transpose().rref();
        let comp: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let lift = Mat::from_fn(n, comp.len(), |i, j| if i == comp[j] { F::one() } else { F::zero() });
        let basis = s.hcat(&lift);
        let inv = basis.inverse().expect("subspace plus complement spans");
        let proj = Mat::from_fn(comp.len(), n, |i, j| inv.get(s.cols + i, j).clone());
        lifts.push(lift);
        projs.push(proj);
    }
    let dims: Vec<usize> = lifts.iter().map(|l| l.cols).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, d))| projs[d - 1].mul(&x.maps[a]).mul(&lifts[s - 1]))
        .collect();
    (Representation { dims, maps }, lifts)
}

/// Column bases of the trace of `gens` in `x`, the sum of all images of maps from gens.
fn trace<F: Field>(q: &Quiver, gens: &[&Representation<F>], x: &Representation<F>) -> Vec<Mat<F>> {
    let mut spans: Vec<Mat<F>> = x.dims.iter().map(|&d| Mat::zeros(d, 0)).collect();
    for g in gens {
        for f in hom_basis(q, g, x) {
            for v in 0..q.n() {
                spans[v] = spans[v].hcat(&f[v]);
            }
        }
    }
    spans.into_iter().map(|m| m.column_basis()).collect()
}

/// Whether `x` lies in the torsion class generated by `gens`: the iterated trace of gens
/// (the torsion radical) exhausts x.
fn in_generated_torsion_class<F: Field>(q: &Quiver, gens: &[&Representation<F>], x: &Representation<F>) -> bool {
    let mut sub: Vec<Mat<F>> = x.dims.iter().map(|&d| Mat::zeros(d, 0)).collect();
    loop {
        let (quot, lifts) = quotient(q, x, &sub);
        if quot.total_dim() == 0 {
            return true;
        }
        let t = trace(q, gens, &quot);
        if t.iter().all(|m| m.cols == 0) {
            return false;
        }
        for v in 0..q.n() {
            sub[v] = sub[v].hcat(&lifts[v].mul(&t[v])).column_basis();
        }
    }
}

/// Indecomposables of the smallest torsion class containing `gens`. Cross-checked against
/// the double orthogonal ⊥(gens^⊥).
pub fn torsion_closure_brute(q: &Quiver, gens: &BTreeSet<Root>) -> Result<BTreeSet<Root>> {
    require_dynkin(q)?;
    let all = all_indecomposables::<BigRational>(q)?;
    for g in gens {
        if !all.iter().any(|(r, _)| r == g) {
            return Err(Error::NotARoot(g.clone()));
        }
    }
    let gen_reps: Vec<&Representation<BigRational>> =
        all.iter().filter(|(r, _)| gens.contains(r)).map(|(_, m)| m).collect();
    let closure: BTreeSet<Root> = all
        .iter()
        .filter(|(_, m)| in_generated_torsion_class(q, &gen_reps, m))
        .map(|(r, _)| r.clone())
        .collect();
    let free: Vec<&Representation<BigRational>> = all
        .iter()
        .filter(|(_, y)| gen_reps.iter().all(|g| hom_dim(q, g, y) == 0))
        .map(|(_, y)| y)
        .collect();
    let perp: BTreeSet<Root> = all
        .iter()
        .filter(|(_, x)| free.iter().all(|y| hom_dim(q, x, y) == 0))
        .map(|(r, _)| r.clone())
        .collect();
    if closure != perp {
        return Err(Error::Invariant(format!("iterated trace {closure:?} disagrees with ⊥(C^⊥) {perp:?}")));
    }
    Ok(closure)
}

pub fn is_torsion_class(q: &Quiver, t: &BTreeSet<Root>) -> Result<bool> {
    Ok(&torsion_closure_brute(q, t)? == t)
}

/// Every subspace of F_p^d of dimension ≤ max_dim, each as a list of basis vectors in RREF.
pub fn subspaces<const P: u64>(d: usize, max_dim: usize) -> Vec<Vec<Vec<Fp<P>>>> {
    let mut out = Vec::new();
    for k in 0..=max_dim.min(d) {
        for pivots in k_subsets(d, k) {
            // Free entries: row r, column c > pivots[r] with c not a pivot.
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pv = pivots.clone();
                    ((pivots[r] + 1)..d).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let total = (P as usize).pow(free.len() as u32);
            for mut code in 0..total {
                let mut rows = vec![vec![Fp::<P>(0); d]; k];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = Fp(1);
                }
                for &(r, c) in &free {
                    rows[r][c] = Fp((code % P as usize) as u64);
                    code /= P as usize;
                }
                out.push(rows);
            }
        }
    }
    out
}

fn k_subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if d < k {
        return vec![];
    }
    let mut out = k_subsets(d - 1, k);
    for mut s in k_subsets(d - 1, k - 1) {
        s.push(d - 1);
        out.push(s);
    }
    out
}

/// Kernel of f: X → M as a representation.
fn kernel_rep<F: Field>(q: &Quiver, x: &Representation<F>, f: &Morphism<F>) -> Representation<F> {
    let sub: Vec<Mat<F>> = (0..q.n()).map(|v| Mat::from_columns(x.dims[v], &f[v].kernel())).collect();
    subrep(q, x, &sub)
}

/// Krull–Schmidt multiplicities of `k` over `indec`, read off hom-dimension fingerprints.
struct Fingerprints {
    indec: Vec<(Root, Representation<F5>)>,
    /// Inverse of H[r][s] = hom(N_r, N_s), over the rationals.
    h_inv: Mat<BigRational>,
}

impl Fingerprints {
    fn new(q: &Quiver, indec: Vec<(Root, Representation<F5>)>) -> Result<Self> {
        let n = indec.len();
        let h = Mat::<BigRational>::from_fn(n, n, |r, s| {
            <BigRational as Field>::from_i64(hom_dim(q, &indec[r].1, &indec[s].1) as i64)
        });
        let h_inv = h
            .inverse()
            .ok_or_else(|| Error::Invariant("hom fingerprints of indecomposables are dependent".into()))?;
        Ok(Fingerprints { indec, h_inv })
    }

    fn decompose(&self, q: &Quiver, k: &Representation<F5>) -> Result<Vec<(Root, usize)>> {
        let h: Vec<BigRational> = self
            .indec
            .iter()
            .map(|(_, n)| <BigRational as Field>::from_i64(hom_dim(q, n, k) as i64))
            .collect();
        let m = self.h_inv.apply(&h);
        let mut out = Vec::new();
        let mut dim = vec![0i64; q.n()];
        for (s, c) in m.iter().enumerate() {
            if !c.is_integer() || c < &<BigRational as Field>::zero() {
                return Err(Error::Invariant(format!("non-integral multiplicity {c} in decomposition")));
            }
            let c: usize = c.to_integer().try_into().expect("small multiplicity");
            if c > 0 {
                let r = &self.indec[s].0;
                for v in 0..q.n() {
                    dim[v] += r[v] * c as i64;
                }
                out.push((r.clone(), c));
            }
        }
        if dim != k.dim_vector() {
            return Err(Error::Invariant("decomposition does not add up to the kernel".into()));
        }
        Ok(out)
    }
}

/// Members of W(T) = {M ∈ T : ker f ∈ T for every f: X → M with X ∈ T}, over F_5,
/// with each indecomposable summand of X repeated at most `cap` times.
pub fn wide_brute(q: &Quiver, t: &BTreeSet<Root>, cap: usize) -> Result<BTreeSet<Root>> {
    require_dynkin(q)?;
    if !is_torsion_class(q, t)? {
        return Err(Error::NotATorsionClass);
    }
    let fp = Fingerprints::new(q, all_indecomposables::<F5>(q)?)?;
    let members: Vec<&(Root, Representation<F5>)> = fp.indec.iter().filter(|(r, _)| t.contains(r)).collect();
    let mut wide = BTreeSet::new();
    'target: for (root_m, m) in &members {
        // Per source indecomposable: its Hom basis into M and the admissible subspaces.
        let sources: Vec<(&Representation<F5>, Vec<Morphism<F5>>, Vec<Vec<Vec<F5>>>)> = members
            .iter()
            .filter_map(|(_, n)| {
                let basis = hom_basis(q, n, m);
                (!basis.is_empty()).then(|| {
                    let subs = subspaces::<5>(basis.len(), cap);
                    (n, basis, subs)
                })
            })
            .collect();
        let mut choice = vec![0usize; sources.len()];
        loop {
            let mut x = Representation::zero(q);
            let mut f: Morphism<F5> = m.dims.iter().map(|&d| Mat::zeros(d, 0)).collect();
            for (idx, (n, basis, subs)) in sources.iter().enumerate() {
                for coeffs in &subs[choice[idx]] {
                    x = x.direct_sum(n, q);
                    for v in 0..q.n() {
                        let comb = coeffs.iter().zip(basis).fold(Mat::zeros(m.dims[v], n.dims[v]), |acc, (c, b)| {
                            let scaled = Mat::from_fn(b[v].rows, b[v].cols, |i, j| c.mul(b[v].get(i, j)));
                            acc.add(&scaled)
                        });
                        f[v] = f[v].hcat(&comb);
                    }
                }
            }
            let k = kernel_rep(q, &x, &f);
            if fp.decompose(q, &k)?.iter().any(|(r, _)| !t.contains(r)) {
                continue 'target;
            }
            // Next choice, odometer style.
            let mut i = 0;
            loop {
                if i == sources.len() {
                    wide.insert(root_m.clone());
                    continue 'target;
                }
                choice[i] += 1;
                if choice[i] < sources[i].2.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
    Ok(wide)
}

/// Simple objects among the members of a wide subcategory: those whose dimension vector
/// is not a sum of two or more smaller members' simples.
pub fn simples_of_wide(members: &BTreeSet<Root>) -> BTreeSet<Root> {
    let mut sorted: Vec<&Root> = members.iter().collect();
    sorted.sort_by_key(|r| (r.iter().sum::<i64>(), (*r).clone()));
    let mut simples: Vec<Root> = Vec::new();
    for r in sorted {
        if !is_sum_of(r, &simples, 0) {
            simples.push(r.clone());
        }
    }
    simples.into_iter().collect()
}

/// Whether `target` is a sum of at least two vectors from `parts`, with repetition.
fn is_sum_of(target: &[i64], parts: &[Root], used: usize) -> bool {
    if target.iter().all(|&x| x == 0) {
        return used >= 2;
    }
    parts.iter().enumerate().any(|(i, p)| {
        let rest: Vec<i64> = target.iter().zip(p).map(|(a, b)| a - b).collect();
        rest.iter().all(|&x| x >= 0) && is_sum_of(&rest, &parts[i..], used + 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Quiver {
        Quiver::new(3, vec![(1, 2), (1, 3)]).unwrap()
    }

    fn set(v: &[[i64; 3]]) -> BTreeSet<Root> {
        v.iter().map(|r| r.to_vec()).collect()
    }

    const X: [i64; 3] = [1, 0, 0];
    const Y: [i64; 3] = [0, 1, 0];
    const Z: [i64; 3] = [0, 0, 1];
    const A: [i64; 3] = [1, 1, 1];
    const B: [i64; 3] = [1, 1, 0];
    const C: [i64; 3] = [1, 0, 1];

    #[test]
    fn subspace_counts() {
        // Gaussian binomials over F_5: [2 choose 1] = 6.
        assert_eq!(subspaces::<5>(2, 2).len(), 8);
        assert_eq!(subspaces::<5>(1, 2).len(), 2);
        assert_eq!(subspaces::<5>(3, 1).len(), 1 + 31);
    }

    #[test]
    fn closures() {
        assert_eq!(torsion_closure_brute(&a3(), &set(&[X])).unwrap(), set(&[X]));
        assert_eq!(torsion_closure_brute(&a3(), &set(&[A])).unwrap(), set(&[X, B, C, A]));
        assert!(torsion_closure_brute(&a3(), &BTreeSet::new()).unwrap().is_empty());
        assert_eq!(torsion_closure_brute(&a3(), &set(&[Y, Z])).unwrap(), set(&[Y, Z]));
    }

    #[test]
    fn wide_examples() {
        assert_eq!(wide_brute(&a3(), &set(&[X, B, C]), DEFAULT_CAP).unwrap(), set(&[B, C]));
        assert_eq!(wide_brute(&a3(), &set(&[Y]), DEFAULT_CAP).unwrap(), set(&[Y]));
        assert!(wide_brute(&a3(), &BTreeSet::new(), DEFAULT_CAP).unwrap().is_empty());
        assert_eq!(wide_brute(&a3(), &set(&[B]), DEFAULT_CAP), Err(Error::NotATorsionClass));
    }

    #[test]
    fn simples_from_members() {
        assert_eq!(simples_of_wide(&set(&[X, B, C, A, Y, Z])), set(&[X, Y, Z]));
        assert_eq!(simples_of_wide(&set(&[B, A, Z])), set(&[B, Z]));
    }
}
