//! Linear rank-metric codes over `F_{q^m}`, Gabidulin codes and their duals.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::extmat::ExtMatrix;
use crate::ffield::{Elt, FieldTower};
use crate::fqspace::{coordinate_matrix, enumerate_subspaces, fq_rank, FqSubspace};
use crate::limits;
use crate::qlinpoly::{moore_matrix, QLinPoly};

/// `F_q`-rank of a word: the dimension of the span of its coordinates.
pub fn rank_fq(t: &FieldTower, v: &[Elt]) -> usize {
    fq_rank(t, v)
}

/// `{u ∈ F_q^n : Σ u_i v_i = 0}`.
pub fn kernel_subspace(t: &FieldTower, v: &[Elt]) -> FqSubspace {
    let rows = coordinate_matrix(t, v).left_null_space(t.base());
    FqSubspace::span_of(t.base(), v.len(), &rows).expect("null vectors have length n")
}

/// Hamming weight of a word.
pub fn hamming_weight(v: &[Elt]) -> usize {
    v.iter().filter(|a| !a.is_zero()).count()
}

/// Draws `n` elements uniformly among `F_q`-independent tuples: each entry is
/// uniform over the complement of the span of the previous entries.
pub fn sample_independent<R: Rng + ?Sized>(
    t: &FieldTower,
    n: usize,
    rng: &mut R,
) -> Result<Vec<Elt>> {
    if n > t.m() {
        return Err(Error::InvalidParameter(format!(
            "cannot pick {n} independent elements when m = {}",
            t.m()
        )));
    }
    let mut out: Vec<Elt> = Vec::with_capacity(n);
    while out.len() < n {
        let cand = t.random(rng);
        out.push(cand);
        if fq_rank(t, &out) < out.len() {
            out.pop();
        }
    }
    Ok(out)
}

/// `k × dim V` matrix `G·A`, where the columns of `A` are `V`'s basis.
pub fn times_subspace(t: &FieldTower, g: &ExtMatrix, v: &FqSubspace) -> Result<ExtMatrix> {
    if v.ambient_dim() != g.cols() {
        return Err(Error::DimMismatch {
            expected: g.cols(),
            got: v.ambient_dim(),
        });
    }
    let mut out = ExtMatrix::zeros(t, g.rows(), v.dim());
    for (c, b) in v.basis().iter().enumerate() {
        for r in 0..g.rows() {
            let entry = b.iter().enumerate().fold(t.zero(), |acc, (j, &u)| {
                if u == 0 {
                    acc
                } else {
                    t.add_scaled(&acc, u, g.get(r, j))
                }
            });
            out.set(r, c, entry);
        }
    }
    Ok(out)
}

/// Basis (as row vectors in `F_{q^m}^k`) of the column span of `G·A`, `⟨A⟩ = V`.
pub fn column_span_image(t: &FieldTower, g: &ExtMatrix, v: &FqSubspace) -> Result<Vec<Vec<Elt>>> {
    let mut cols = times_subspace(t, g, v)?.transpose();
    let r = cols.rref(t).len();
    Ok(cols.to_rows().into_iter().take(r).collect())
}

/// Rank of the block matrix whose block row `r` is `[G A_1, 0, …, -G A_{r+1}, …, 0]`.
/// Then `dim ⋂ G_{V_i} = Σ dim G_{V_i} − rank`.
pub fn stacked_block_rank(t: &FieldTower, g: &ExtMatrix, spaces: &[FqSubspace]) -> Result<usize> {
    if spaces.len() < 2 {
        return Ok(0);
    }
    let k = g.rows();
    let blocks = spaces
        .iter()
        .map(|v| times_subspace(t, g, v))
        .collect::<Result<Vec<_>>>()?;
    let widths: Vec<usize> = blocks.iter().map(ExtMatrix::cols).collect();
    let offsets: Vec<usize> = widths
        .iter()
        .scan(0, |acc, &w| {
            let o = *acc;
            *acc += w;
            Some(o)
        })
        .collect();
    let total: usize = widths.iter().sum();
    let mut big = ExtMatrix::zeros(t, k * (spaces.len() - 1), total);
    for r in 0..spaces.len() - 1 {
        for i in 0..k {
            for c in 0..widths[0] {
                big.set(r * k + i, offsets[0] + c, blocks[0].get(i, c).clone());
            }
            let other = &blocks[r + 1];
            for c in 0..widths[r + 1] {
                big.set(r * k + i, offsets[r + 1] + c, t.neg(other.get(i, c)));
            }
        }
    }
    Ok(big.rank(t))
}

/// An `[n, k]` linear code over `F_{q^m}` given by a full-rank generator.
#[derive(Clone, Debug)]
pub struct LinearCode {
    tower: Arc<FieldTower>,
    n: usize,
    k: usize,
    generator: ExtMatrix,
}

impl LinearCode {
    pub fn new(tower: Arc<FieldTower>, generator: ExtMatrix) -> Result<Self> {
        let (k, n) = (generator.rows(), generator.cols());
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!(
                "need 1 ≤ k ≤ n, got k={k}, n={n}"
            )));
        }
        for i in 0..k {
            for a in generator.row(i) {
                tower.check(a)?;
            }
        }
        if generator.rank(&tower) != k {
            return Err(Error::InvalidParameter(
                "generator does not have full row rank".into(),
            ));
        }
        Ok(Self {
            tower,
            n,
            k,
            generator,
        })
    }

    /// A random code with a uniformly drawn full-rank generator.
    pub fn random<R: Rng + ?Sized>(
        tower: Arc<FieldTower>,
        n: usize,
        k: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!(
                "need 1 ≤ k ≤ n, got k={k}, n={n}"
            )));
        }
        loop {
            let rows = (0..k)
                .map(|_| (0..n).map(|_| tower.random(rng)).collect())
                .collect();
            let g = ExtMatrix::from_rows(n, rows)?;
            if g.rank(&tower) == k {
                return Self::new(tower, g);
            }
        }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn generator(&self) -> &ExtMatrix {
        &self.generator
    }

    pub fn encode(&self, message: &[Elt]) -> Result<Vec<Elt>> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: message.len(),
            });
        }
        Ok(self.generator.left_mul_vec(&self.tower, message))
    }

    /// Iterates over all `q^{mk}` codewords (zero first), subject to the guard.
    pub fn codewords(&self) -> Result<impl Iterator<Item = Vec<Elt>> + '_> {
        let order = self.tower.order().ok_or_else(|| Error::SizeGuardExceeded {
            what: "codewords".into(),
            count: u128::MAX,
            limit: limits::current() as u128,
        })?;
        let count = limits::pow_saturating(order as u128, self.k as u64);
        limits::check("codewords", count)?;
        Ok((0..count).map(move |mut idx| {
            let msg: Vec<Elt> = (0..self.k)
                .map(|_| {
                    let e = self.tower.from_index((idx % order as u128) as u64);
                    idx /= order as u128;
                    e
                })
                .collect();
            self.generator.left_mul_vec(&self.tower, &msg)
        }))
    }

    /// Exact minimum `F_q`-rank over nonzero codewords.
    pub fn min_rank_distance(&self) -> Result<usize> {
        Ok(self
            .codewords()?
            .skip(1)
            .map(|c| rank_fq(&self.tower, &c))
            .min()
            .unwrap_or(0))
    }

    /// `G·A` is invertible for every `k`-dimensional `⟨A⟩ ⊆ F_q^n`.
    pub fn is_mrd(&self) -> Result<bool> {
        for v in enumerate_subspaces(self.tower.base(), self.n, self.k)? {
            if times_subspace(&self.tower, &self.generator, &v)?
                .det(&self.tower)?
                .is_zero()
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn column_span_image(&self, v: &FqSubspace) -> Result<Vec<Vec<Elt>>> {
        column_span_image(&self.tower, &self.generator, v)
    }

    /// `dim G_V`.
    pub fn image_dim(&self, v: &FqSubspace) -> Result<usize> {
        Ok(times_subspace(&self.tower, &self.generator, v)?.rank(&self.tower))
    }

    pub fn stacked_block_rank(&self, spaces: &[FqSubspace]) -> Result<usize> {
        stacked_block_rank(&self.tower, &self.generator, spaces)
    }

    /// `dim ⋂ G_{V_i}` from the stacked block rank.
    pub fn intersection_dim(&self, spaces: &[FqSubspace]) -> Result<usize> {
        let dims: usize = spaces
            .iter()
            .map(|v| self.image_dim(v))
            .sum::<Result<usize>>()?;
        Ok(dims - self.stacked_block_rank(spaces)?)
    }

    /// The dual code, generated by a basis of the right null space of `G`.
    pub fn dual(&self) -> Result<LinearCode> {
        if self.k == self.n {
            return Err(Error::InvalidParameter(
                "the dual of a full-length code is zero".into(),
            ));
        }
        let rows = self.generator.null_space(&self.tower);
        Self::new(self.tower.clone(), ExtMatrix::from_rows(self.n, rows)?)
    }

    /// Whether both generators span the same row space.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        if self.n != other.n || self.k != other.k || self.tower != other.tower {
            return false;
        }
        let mut a = self.generator.clone();
        let mut b = other.generator.clone();
        a.rref(&self.tower);
        b.rref(&self.tower);
        a == b
    }

    /// Every codeword of `self` is orthogonal to every codeword of `other`.
    pub fn is_orthogonal_to(&self, other: &LinearCode) -> bool {
        let t = &self.tower;
        (0..self.k).all(|i| {
            (0..other.k).all(|j| {
                self.generator
                    .row(i)
                    .iter()
                    .zip(other.generator.row(j))
                    .fold(t.zero(), |acc, (a, b)| t.add(&acc, &t.mul(a, b)))
                    .is_zero()
            })
        })
    }
}

/// `G_{n,k}(α)`: evaluations of `q`-linearized polynomials of `q`-degree `< k`.
#[derive(Clone, Debug)]
pub struct GabidulinCode {
    code: LinearCode,
    alphas: Vec<Elt>,
}

impl GabidulinCode {
    pub fn new(tower: Arc<FieldTower>, k: usize, alphas: Vec<Elt>) -> Result<Self> {
        let n = alphas.len();
        if k == 0 || k > n || n > tower.m() {
            return Err(Error::InvalidParameter(format!(
                "need 1 ≤ k ≤ n ≤ m, got k={k}, n={n}, m={}",
                tower.m()
            )));
        }
        for a in &alphas {
            tower.check(a)?;
        }
        if fq_rank(&tower, &alphas) != n {
            return Err(Error::DependentEmbedding);
        }
        let generator = moore_matrix(&tower, &alphas, k);
        let code = LinearCode::new(tower, generator)?;
        Ok(Self { code, alphas })
    }

    pub fn random<R: Rng + ?Sized>(
        tower: Arc<FieldTower>,
        n: usize,
        k: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let alphas = sample_independent(&tower, n, rng)?;
        Self::new(tower, k, alphas)
    }

    pub fn linear(&self) -> &LinearCode {
        &self.code
    }
    pub fn into_linear(self) -> LinearCode {
        self.code
    }
    pub fn alphas(&self) -> &[Elt] {
        &self.alphas
    }
    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.code.tower
    }
    pub fn n(&self) -> usize {
        self.code.n
    }
    pub fn k(&self) -> usize {
        self.code.k
    }

    pub fn encode(&self, message: &[Elt]) -> Result<Vec<Elt>> {
        self.code.encode(message)
    }

    /// The message polynomial `Σ c_i X^{q^i}`.
    pub fn message_poly(&self, message: &[Elt]) -> QLinPoly {
        QLinPoly::from_coeffs(message.to_vec())
    }

    /// `G_{n,n−k}(β)` for the normalized dual basis `β`.
    pub fn dual_code(&self) -> Result<GabidulinCode> {
        let betas = dual_basis(self.tower(), &self.alphas, self.k())?;
        GabidulinCode::new(self.tower().clone(), self.n() - self.k(), betas)
    }
}

/// The `β` with `Σ_i α_i^{q^j} β_i^{q^h} = 0` for `j < k`, `h < n − k`,
/// scaled so its first nonzero entry is 1.
///
/// Applying the inverse Frobenius `h` times turns each equation into
/// `Σ_i α_i^{q^{j−h}} β_i = 0`, a linear system in `β` of `n − 1` equations.
pub fn dual_basis(t: &FieldTower, alphas: &[Elt], k: usize) -> Result<Vec<Elt>> {
    let n = alphas.len();
    if k == 0 || k >= n || n > t.m() {
        return Err(Error::DegenerateSystem(format!(
            "need 1 ≤ k < n ≤ m, got k={k}, n={n}"
        )));
    }
    if fq_rank(t, alphas) != n {
        return Err(Error::DegenerateSystem(
            "alphas are not F_q-independent".into(),
        ));
    }
    let shift = n - k - 1;
    let rows: Vec<Vec<Elt>> = (0..n - 1)
        .map(|r| {
            alphas
                .iter()
                .map(|a| {
                    if r < shift {
                        t.frobenius_q_inv(a, shift - r)
                    } else {
                        t.frobenius_q(a, r - shift)
                    }
                })
                .collect()
        })
        .collect();
    let system = ExtMatrix::from_rows(n, rows)?;
    let null = system.null_space(t);
    if null.len() != 1 {
        return Err(Error::DegenerateSystem(format!(
            "solution space has dimension {}",
            null.len()
        )));
    }
    let beta = &null[0];
    let lead = beta
        .iter()
        .find(|b| !b.is_zero())
        .expect("null vector is nonzero");
    let lead_inv = t.inv(lead)?;
    let beta: Vec<Elt> = beta.iter().map(|b| t.mul(&lead_inv, b)).collect();
    if fq_rank(t, &beta) != n {
        return Err(Error::DegenerateSystem(
            "dual basis is not F_q-independent".into(),
        ));
    }
    for j in 0..k {
        for h in 0..n - k {
            let s = alphas.iter().zip(&beta).fold(t.zero(), |acc, (a, b)| {
                t.add(&acc, &t.mul(&t.frobenius_q(a, j), &t.frobenius_q(b, h)))
            });
            if !s.is_zero() {
                return Err(Error::InternalInvariantViolated(format!(
                    "pairing ({j},{h}) is nonzero"
                )));
            }
        }
    }
    Ok(beta)
}
