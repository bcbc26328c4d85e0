use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coxeter::{is_positive, CartanData, Root};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat};
use crate::quiver::{Quiver, Vertex};

/// Per-vertex dimensions plus one matrix per arrow of the quiver, in `Quiver::arrows` order.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<F> {
    pub dims: Vec<usize>,
    pub maps: Vec<Mat<F>>,
}

impl<F: Field> Representation<F> {
    pub fn new(q: &Quiver, dims: Vec<usize>, maps: Vec<Mat<F>>) -> Result<Self> {
        let r = Representation { dims, maps };
        r.check(q)?;
        Ok(r)
    }

    pub fn check(&self, q: &Quiver) -> Result<()> {
        if self.dims.len() != q.n() || self.maps.len() != q.arrows().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} dims and {} maps for {} vertices and {} arrows",
                self.dims.len(),
                self.maps.len(),
                q.n(),
                q.arrows().len()
            )));
        }
        for (a, &(s, d)) in q.arrows().iter().enumerate() {
            let m = &self.maps[a];
            if (m.rows, m.cols) != (self.dims[d - 1], self.dims[s - 1]) {
                return Err(Error::ShapeMismatch(format!("arrow {s}->{d} has a {}x{} matrix", m.rows, m.cols)));
            }
        }
        Ok(())
    }

    pub fn zero(q: &Quiver) -> Self {
        Self::with_dims(q, vec![0; q.n()])
    }

    /// All arrow maps zero.
    pub fn with_dims(q: &Quiver, dims: Vec<usize>) -> Self {
        let maps = q.arrows().iter().map(|&(s, d)| Mat::zeros(dims[d - 1], dims[s - 1])).collect();
        Representation { dims, maps }
    }

    pub fn simple(q: &Quiver, i: Vertex) -> Self {
        let mut dims = vec![0; q.n()];
        dims[i - 1] = 1;
        Self::with_dims(q, dims)
    }

    pub fn dim_vector(&self) -> Root {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn direct_sum(&self, o: &Self, q: &Quiver) -> Self {
        let dims: Vec<usize> = self.dims.iter().zip(&o.dims).map(|(a, b)| a + b).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, d))| {
                let (m, n) = (&self.maps[a], &o.maps[a]);
                let (ds, dd) = (self.dims[s - 1], self.dims[d - 1]);
                Mat::from_fn(dims[d - 1], dims[s - 1], |i, j| match (i < dd, j < ds) {
                    (true, true) => m.get(i, j).clone(),
                    (false, false) => n.get(i - dd, j - ds).clone(),
                    _ => F::zero(),
                })
            })
            .collect();
        Representation { dims, maps }
    }

    /// Extension by zero to the framed quiver (frozen vertex n+i, arrow n+i → i).
    pub fn extend_by_zero(&self, q: &Quiver, framed: &Quiver) -> Self {
        let mut dims = self.dims.clone();
        dims.extend(std::iter::repeat_n(0, q.n()));
        // Original arrows keep their relative order inside the framed quiver's arrow list.
        let mut original = self.maps.iter();
        let maps = framed
            .arrows()
            .iter()
            .map(|&(s, d)| {
                if s <= q.n() && d <= q.n() {
                    original.next().expect("framed quiver contains every original arrow").clone()
                } else {
                    Mat::zeros(dims[d - 1], dims[s - 1])
                }
            })
            .collect();
        Representation { dims, maps }
    }
}

/// The framed quiver Q~ on 2n vertices, with frozen vertex n+i and arrow n+i → i.
pub fn framed_quiver(q: &Quiver) -> Quiver {
    let n = q.n();
    let mut arrows = q.arrows().to_vec();
    arrows.extend((1..=n).map(|i| (n + i, i)));
    Quiver::new(2 * n, arrows).expect("frozen arrows add no loops or 2-cycles")
}

/// Matrix of f ↦ (f_d M_a − N_a f_s)_a from ⊕_i Hom(M_i, N_i) to ⊕_a Hom(M_s, N_d).
/// Coordinates of Hom(M_i, N_i) are row-major N_i × M_i blocks.
fn hom_constraint<F: Field>(q: &Quiver, m: &Representation<F>, n: &Representation<F>) -> (Mat<F>, Vec<usize>) {
    let mut offsets = Vec::with_capacity(q.n() + 1);
    let mut cols = 0;
    for i in 0..q.n() {
        offsets.push(cols);
        cols += n.dims[i] * m.dims[i];
    }
    offsets.push(cols);
    let rows: usize = q.arrows().iter().map(|&(s, d)| n.dims[d - 1] * m.dims[s - 1]).sum();
    let mut phi = Mat::<F>::zeros(rows, cols);
    let mut row0 = 0;
    for (a, &(s, d)) in q.arrows().iter().enumerate() {
        let (s, d) = (s - 1, d - 1);
        let (ma, na) = (&m.maps[a], &n.maps[a]);
        // entry (r, c) of f_d M_a − N_a f_s, with r < N_d and c < M_s
        for r in 0..n.dims[d] {
            for c in 0..m.dims[s] {
                let row = row0 + r * m.dims[s] + c;
                // f_d[r][k] * M_a[k][c]
                for k in 0..m.dims[d] {
                    let col = offsets[d] + r * m.dims[d] + k;
                    let v = phi.get(row, col).add(ma.get(k, c));
                    phi.set(row, col, v);
                }
                // − N_a[r][k] * f_s[k][c]
                for k in 0..n.dims[s] {
                    let col = offsets[s] + k * m.dims[s] + c;
                    let v = phi.get(row, col).sub(na.get(r, k));
                    phi.set(row, col, v);
                }
            }
        }
        row0 += n.dims[d] * m.dims[s];
    }
    (phi, offsets)
}

/// A morphism as one matrix per vertex.
pub type Morphism<F> = Vec<Mat<F>>;

pub fn hom_basis<F: Field>(q: &Quiver, m: &Representation<F>, n: &Representation<F>) -> Vec<Morphism<F>> {
    let (phi, offsets) = hom_constraint(q, m, n);
    phi.kernel()
        .into_iter()
        .map(|v| {
            (0..q.n())
                .map(|i| Mat::from_fn(n.dims[i], m.dims[i], |r, c| v[offsets[i] + r * m.dims[i] + c].clone()))
                .collect()
        })
        .collect()
}

pub fn hom_dim<F: Field>(q: &Quiver, m: &Representation<F>, n: &Representation<F>) -> usize {
    let (phi, _) = hom_constraint(q, m, n);
    phi.cols - phi.rank()
}

/// Dimension of the cokernel of the Hom constraint map, which is Ext¹ for path algebras.
pub fn ext_dim<F: Field>(q: &Quiver, m: &Representation<F>, n: &Representation<F>) -> usize {
    let (phi, _) = hom_constraint(q, m, n);
    phi.rows - phi.rank()
}

pub fn end_dim<F: Field>(q: &Quiver, m: &Representation<F>) -> usize {
    hom_dim(q, m, m)
}

/// The indecomposable with dimension vector `r`, via reflection functors from a simple.
pub fn indecomposable_of_root<F: Field>(q: &Quiver, r: &[i64]) -> Result<Representation<F>> {
    let cd = CartanData::new(q)?;
    if !cd.is_finite_type() {
        return Err(Error::NonDynkin);
    }
    if r.len() != q.n() || !is_positive(r) || !cd.is_real_root(r) {
        return Err(Error::NotARoot(r.to_vec()));
    }
    let m = by_reflection_functors(q, &cd, r)?;
    if end_dim(q, &m) == 1 && m.dim_vector() == r {
        return Ok(m);
    }
    random_generic(q, r)
}

fn by_reflection_functors<F: Field>(q: &Quiver, cd: &CartanData, r: &[i64]) -> Result<Representation<F>> {
    let n = q.n();
    let order = q.topological_order()?;
    let mut arrows = q.arrows().to_vec();
    let mut root = r.to_vec();
    let mut steps: Vec<Vertex> = Vec::new();
    let bound = 4 * n * n + 4;
    // Reflect at successive sources until the root becomes simple.
    let simple_at = loop {
        if let Some(j) = (0..n).find(|&j| root[j] == 1 && root.iter().sum::<i64>() == 1) {
            break j + 1;
        }
        if steps.len() > bound {
            return Err(Error::NotARoot(r.to_vec()));
        }
        let k = order[steps.len() % n];
        debug_assert!(arrows.iter().all(|&(_, d)| d != k), "vertex {k} should be a source");
        let f = cd.sym_form(&root, &crate::coxeter::unit(n, k));
        root[k - 1] -= f;
        if !is_positive(&root) {
            return Err(Error::NotARoot(r.to_vec()));
        }
        for a in arrows.iter_mut() {
            if a.0 == k || a.1 == k {
                *a = (a.1, a.0);
            }
        }
        steps.push(k);
    };
    let mut dims = vec![0; n];
    dims[simple_at - 1] = 1;
    let mut rep = Representation {
        maps: arrows.iter().map(|&(s, d)| Mat::zeros(dims[d - 1], dims[s - 1])).collect(),
        dims,
    };
    // Walk back: each recorded k is a sink of the current orientation.
    for &k in steps.iter().rev() {
        reflect_at_sink(&mut arrows, &mut rep, k);
    }
    debug_assert_eq!(arrows, q.arrows());
    Ok(rep)
}

/// S_k^+: replace M_k by the kernel of ⊕_{a: i→k} M_i → M_k and reverse the arrows at k.
fn reflect_at_sink<F: Field>(arrows: &mut [(Vertex, Vertex)], rep: &mut Representation<F>, k: Vertex) {
    let into: Vec<usize> = (0..arrows.len()).filter(|&a| arrows[a].1 == k).collect();
    debug_assert!(arrows.iter().all(|&(s, _)| s != k), "vertex {k} should be a sink");
    let widths: Vec<usize> = into.iter().map(|&a| rep.dims[arrows[a].0 - 1]).collect();
    let total: usize = widths.iter().sum();
    let dk = rep.dims[k - 1];
    let h = Mat::from_fn(dk, total, |r, c| {
        let mut c = c;
        for (idx, &w) in widths.iter().enumerate() {
            if c < w {
                return rep.maps[into[idx]].get(r, c).clone();
            }
            c -= w;
        }
        unreachable!()
    });
    let kernel = h.kernel();
    let new_dim = kernel.len();
    let mut offset = 0;
    for (idx, &a) in into.iter().enumerate() {
        let w = widths[idx];
        rep.maps[a] = Mat::from_fn(w, new_dim, |r, c| kernel[c][offset + r].clone());
        offset += w;
        arrows[a] = (arrows[a].1, arrows[a].0);
    }
    rep.dims[k - 1] = new_dim;
}

/// Random maps with small entries, accepted once End is one-dimensional.
fn random_generic<F: Field>(q: &Quiver, r: &[i64]) -> Result<Representation<F>> {
    let dims: Vec<usize> = r.iter().map(|&x| x as usize).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let maps = q
            .arrows()
            .iter()
            .map(|&(s, d)| Mat::from_fn(dims[d - 1], dims[s - 1], |_, _| F::from_i64(rng.gen_range(-2..=2))))
            .collect();
        let m = Representation { dims: dims.clone(), maps };
        if end_dim(q, &m) == 1 {
            return Ok(m);
        }
    }
    Err(Error::NotARoot(r.to_vec()))
}

/// Every indecomposable of a Dynkin quiver, in `positive_roots` order.
pub fn all_indecomposables<F: Field>(q: &Quiver) -> Result<Vec<(Root, Representation<F>)>> {
    let cd = CartanData::new(q)?;
    cd.positive_roots()?
        .into_iter()
        .map(|r| {
            let m = indecomposable_of_root(q, &r)?;
            Ok((r, m))
        })
        .collect()
}
