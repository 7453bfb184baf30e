//! Dense matrices and subspaces over the base field `F_q`.
//!
//! A subspace of `F_q^n` is stored by its basis in reduced row echelon form,
//! which is unique, so structural equality is subspace equality.

use rand::Rng;

use crate::error::{Error, Result};
use crate::ffield::{BaseField, Elt, FieldTower, Fq};
use crate::limits;

/// Row-major dense matrix over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Fq>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Fq>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &BaseField, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, f: &BaseField, v: &[Fq]) -> Vec<Fq> {
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate().take(self.rows) {
            if a == 0 {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = f.add(*slot, f.mul(a, self.get(i, j)));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &BaseField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(inv, self.get(r, j));
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let factor = self.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &BaseField) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of `{v : M v = 0}`.
    pub fn null_space(&self, f: &BaseField) -> Vec<Vec<Fq>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : y M = 0}`.
    pub fn left_null_space(&self, f: &BaseField) -> Vec<Vec<Fq>> {
        self.transpose().null_space(f)
    }
}

pub fn dot(f: &BaseField, u: &[Fq], v: &[Fq]) -> Fq {
    u.iter()
        .zip(v)
        .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// A subspace of `F_q^n`, stored as its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqSubspace {
    n: usize,
    basis: Vec<Vec<Fq>>,
}

impl FqSubspace {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            basis: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            basis: FqMatrix::identity(n).to_rows(),
        }
    }

    /// The span of arbitrary vectors of length `n`.
    pub fn span_of(f: &BaseField, n: usize, vectors: &[Vec<Fq>]) -> Result<Self> {
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
            if v.iter().any(|&c| !f.contains(c)) {
                return Err(Error::TowerMismatch);
            }
        }
        let mut m = FqMatrix::from_rows(n, vectors)?;
        let r = m.rref(f).len();
        Ok(Self {
            n,
            basis: m.to_rows().into_iter().take(r).collect(),
        })
    }

    /// Accepts a basis only if it is already in reduced row echelon form.
    pub fn from_rref_basis(f: &BaseField, n: usize, basis: Vec<Vec<Fq>>) -> Result<Self> {
        let s = Self::span_of(f, n, &basis)?;
        if s.basis != basis {
            return Err(Error::Malformed(
                "subspace basis is not in reduced row echelon form".into(),
            ));
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<Fq>] {
        &self.basis
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn to_matrix(&self) -> FqMatrix {
        FqMatrix::from_rows(self.n, &self.basis).expect("basis rows have ambient length")
    }

    pub fn contains(&self, f: &BaseField, v: &[Fq]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        FqMatrix::from_rows(self.n, &rows)
            .map(|m| m.rank(f))
            .unwrap_or(0)
            == self.dim()
    }

    pub fn is_subspace_of(&self, f: &BaseField, other: &Self) -> bool {
        self.n == other.n && self.basis.iter().all(|v| other.contains(f, v))
    }

    fn check_same_ambient(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    pub fn sum(&self, f: &BaseField, other: &Self) -> Result<Self> {
        self.check_same_ambient(other)?;
        let rows: Vec<_> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span_of(f, self.n, &rows)
    }

    /// Intersection via the left null space of the stacked bases.
    pub fn intersect(&self, f: &BaseField, other: &Self) -> Result<Self> {
        self.check_same_ambient(other)?;
        let d1 = self.dim();
        let rows: Vec<_> = self.basis.iter().chain(&other.basis).cloned().collect();
        let stacked = FqMatrix::from_rows(self.n, &rows)?;
        let first = self.to_matrix();
        let vecs: Vec<Vec<Fq>> = stacked
            .left_null_space(f)
            .iter()
            .map(|y| first.left_mul_vec(f, &y[..d1]))
            .collect();
        let out = Self::span_of(f, self.n, &vecs)?;
        debug_assert_eq!(
            out.dim() + stacked.rank(f),
            self.dim() + other.dim(),
            "dimension formula"
        );
        Ok(out)
    }

    /// Orthogonal complement under the standard bilinear form `Σ u_i v_i`.
    pub fn orthogonal_complement(&self, f: &BaseField) -> Self {
        let kernel = if self.is_zero() {
            FqMatrix::identity(self.n).to_rows()
        } else {
            self.to_matrix().null_space(f)
        };
        Self::span_of(f, self.n, &kernel).expect("kernel vectors have ambient length")
    }

    /// A subspace `C` with `self ⊕ C = w`, built greedily from `w`'s basis.
    pub fn complement_in(&self, f: &BaseField, w: &Self) -> Result<Self> {
        self.check_same_ambient(w)?;
        if !self.is_subspace_of(f, w) {
            return Err(Error::NotASubspace);
        }
        let mut current = self.clone();
        let mut chosen = Vec::new();
        for v in &w.basis {
            if !current.contains(f, v) {
                chosen.push(v.clone());
                current = current.sum(f, &Self::span_of(f, self.n, std::slice::from_ref(v))?)?;
            }
        }
        Self::span_of(f, self.n, &chosen)
    }

    pub fn intersect_all(f: &BaseField, n: usize, spaces: &[&Self]) -> Result<Self> {
        let mut acc = Self::full(n);
        for s in spaces {
            acc = acc.intersect(f, s)?;
        }
        Ok(acc)
    }

    pub fn sum_all(f: &BaseField, n: usize, spaces: &[&Self]) -> Result<Self> {
        let mut acc = Self::zero(n);
        for s in spaces {
            acc = acc.sum(f, s)?;
        }
        Ok(acc)
    }
}

/// Number of `d`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, d: usize, q: u128) -> u128 {
    if d > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num = num.saturating_mul(limits::pow_saturating(q, (n - i) as u64).saturating_sub(1));
        den = den.saturating_mul(limits::pow_saturating(q, (i + 1) as u64) - 1);
    }
    if num == u128::MAX {
        u128::MAX
    } else {
        num / den
    }
}

/// Streams every `d`-dimensional subspace of `F_q^n`, grouped by pivot profile.
pub struct SubspaceIter<'a> {
    f: &'a BaseField,
    n: usize,
    d: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<Fq>,
    done: bool,
}

impl<'a> SubspaceIter<'a> {
    fn new(f: &'a BaseField, n: usize, d: usize) -> Self {
        let mut it = Self {
            f,
            n,
            d,
            pivots: (0..d).collect(),
            free: Vec::new(),
            digits: Vec::new(),
            done: d > n,
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        self.free.clear();
        for (i, &p) in self.pivots.iter().enumerate() {
            for j in p + 1..self.n {
                if !self.pivots.contains(&j) {
                    self.free.push((i, j));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) -> bool {
        let (n, d) = (self.n, self.d);
        let Some(i) = (0..d).rev().find(|&i| self.pivots[i] < n - d + i) else {
            return false;
        };
        self.pivots[i] += 1;
        for j in i + 1..d {
            self.pivots[j] = self.pivots[j - 1] + 1;
        }
        true
    }
}

impl Iterator for SubspaceIter<'_> {
    type Item = FqSubspace;

    fn next(&mut self) -> Option<FqSubspace> {
        if self.done {
            return None;
        }
        let mut basis = vec![vec![0; self.n]; self.d];
        for (i, &p) in self.pivots.iter().enumerate() {
            basis[i][p] = 1;
        }
        for (&(i, j), &v) in self.free.iter().zip(&self.digits) {
            basis[i][j] = v;
        }
        let item = FqSubspace { n: self.n, basis };
        let q = self.f.q();
        let mut carry = true;
        for dgt in self.digits.iter_mut() {
            if (*dgt as usize) + 1 < q {
                *dgt += 1;
                carry = false;
                break;
            }
            *dgt = 0;
        }
        if carry {
            if self.next_pivots() {
                self.reset_free();
            } else {
                self.done = true;
            }
        }
        Some(item)
    }
}

/// All `d`-dimensional subspaces of `F_q^n`, subject to the size guard.
pub fn enumerate_subspaces(f: &BaseField, n: usize, d: usize) -> Result<SubspaceIter<'_>> {
    limits::check("subspaces", gaussian_binomial(n, d, f.q() as u128))?;
    Ok(SubspaceIter::new(f, n, d))
}

/// All subspaces of `F_q^n` of dimension at most `max_dim`, by dimension.
pub fn enumerate_subspaces_up_to(
    f: &BaseField,
    n: usize,
    max_dim: usize,
) -> Result<Vec<FqSubspace>> {
    let total: u128 = (0..=max_dim.min(n))
        .map(|d| gaussian_binomial(n, d, f.q() as u128))
        .sum();
    limits::check("subspaces", total)?;
    Ok((0..=max_dim.min(n))
        .flat_map(|d| SubspaceIter::new(f, n, d))
        .collect())
}

/// A uniformly random `d`-dimensional subspace (rank-deficient draws rejected).
pub fn sample_subspace<R: Rng + ?Sized>(
    f: &BaseField,
    n: usize,
    d: usize,
    rng: &mut R,
) -> Result<FqSubspace> {
    if d > n {
        return Err(Error::InvalidParameter(format!(
            "dimension {d} exceeds ambient {n}"
        )));
    }
    loop {
        let rows: Vec<Vec<Fq>> = (0..d)
            .map(|_| (0..n).map(|_| rng.gen_range(0..f.q()) as Fq).collect())
            .collect();
        let s = FqSubspace::span_of(f, n, &rows)?;
        if s.dim() == d {
            return Ok(s);
        }
    }
}

/// The `len × m` matrix of `F_q` coordinates of extension-field elements.
pub fn coordinate_matrix(t: &FieldTower, elems: &[Elt]) -> FqMatrix {
    let rows: Vec<Vec<Fq>> = elems.iter().map(|a| a.coords().to_vec()).collect();
    FqMatrix::from_rows(t.m(), &rows).expect("elements have m coordinates")
}

/// Dimension of the `F_q`-span of the given elements.
pub fn fq_rank(t: &FieldTower, elems: &[Elt]) -> usize {
    coordinate_matrix(t, elems).rank(t.base())
}

/// Vector with index `idx` in canonical order (coordinate 0 least significant).
pub fn vector_from_index(q: usize, n: usize, mut idx: u128) -> Vec<Fq> {
    (0..n)
        .map(|_| {
            let c = (idx % q as u128) as Fq;
            idx /= q as u128;
            c
        })
        .collect()
}

/// Nonzero vectors of `F_q^n` in canonical order.
pub fn nonzero_vectors(q: usize, n: usize) -> impl Iterator<Item = Vec<Fq>> {
    let total = limits::pow_saturating(q as u128, n as u64);
    (1..total).map(move |i| vector_from_index(q, n, i))
}
