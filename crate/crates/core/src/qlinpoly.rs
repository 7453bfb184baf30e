//! `q`-linearized polynomials `Σ a_i X^{q^i}` over `F_{q^m}`.

use crate::error::{Error, Result};
use crate::extmat::ExtMatrix;
use crate::ffield::{Elt, FieldTower};
use crate::fqspace::{coordinate_matrix, fq_rank, FqSubspace};

/// An `F_q`-linear map `F_q^n → F_{q^m}`, `v ↦ Σ v_j α_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    alphas: Vec<Elt>,
}

impl Embedding {
    pub fn new(alphas: Vec<Elt>) -> Self {
        Self { alphas }
    }

    /// `(1, x, …, x^{m-1})`: identifies `F_q^m` with `F_{q^m}` coordinate-wise.
    pub fn power_basis(t: &FieldTower) -> Self {
        let alphas = (0..t.m())
            .map(|j| {
                let mut c = vec![0; t.m()];
                c[j] = 1;
                t.from_coords(&c).expect("unit coordinates")
            })
            .collect();
        Self { alphas }
    }

    pub fn alphas(&self) -> &[Elt] {
        &self.alphas
    }

    pub fn dim(&self) -> usize {
        self.alphas.len()
    }

    pub fn apply(&self, t: &FieldTower, v: &[u8]) -> Elt {
        v.iter().zip(&self.alphas).fold(t.zero(), |acc, (&c, a)| {
            if c == 0 {
                acc
            } else {
                t.add_scaled(&acc, c, a)
            }
        })
    }

    /// Images of the subspace's basis vectors.
    pub fn images(&self, t: &FieldTower, v: &FqSubspace) -> Result<Vec<Elt>> {
        if v.ambient_dim() != self.alphas.len() {
            return Err(Error::DimMismatch {
                expected: self.alphas.len(),
                got: v.ambient_dim(),
            });
        }
        Ok(v.basis().iter().map(|b| self.apply(t, b)).collect())
    }
}

/// `Σ coeffs[i] X^{q^i}`, with no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QLinPoly {
    coeffs: Vec<Elt>,
}

impl QLinPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Elt>) -> Self {
        while coeffs.last().is_some_and(Elt::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// The monomial `X^{q^i}`.
    pub fn monomial(t: &FieldTower, i: usize) -> Self {
        let mut coeffs = vec![t.zero(); i + 1];
        coeffs[i] = t.one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    /// Coefficient of `X^{q^i}` (zero beyond the degree).
    pub fn coeff(&self, t: &FieldTower, i: usize) -> Elt {
        self.coeffs.get(i).cloned().unwrap_or_else(|| t.zero())
    }

    /// `None` for the zero polynomial.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self, t: &FieldTower) -> bool {
        self.coeffs.last() == Some(&t.one())
    }

    pub fn eval(&self, t: &FieldTower, a: &Elt) -> Elt {
        let mut acc = t.zero();
        let mut power = a.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = t.frobenius_q(&power, 1);
            }
            if !c.is_zero() {
                acc = t.add(&acc, &t.mul(c, &power));
            }
        }
        acc
    }

    pub fn add(&self, t: &FieldTower, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            (0..n)
                .map(|i| t.add(&self.coeff(t, i), &other.coeff(t, i)))
                .collect(),
        )
    }

    /// `c · f` for `c ∈ F_{q^m}`.
    pub fn scale(&self, t: &FieldTower, c: &Elt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| t.mul(c, a)).collect())
    }

    /// `g ∘ f`, with `h_k = Σ_{i+j=k} g_i f_j^{q^i}`.
    pub fn compose(t: &FieldTower, g: &Self, f: &Self) -> Self {
        if g.is_zero() || f.is_zero() {
            return Self::zero();
        }
        let mut h = vec![t.zero(); g.coeffs.len() + f.coeffs.len() - 1];
        for (i, gi) in g.coeffs.iter().enumerate() {
            if gi.is_zero() {
                continue;
            }
            for (j, fj) in f.coeffs.iter().enumerate() {
                h[i + j] = t.add(&h[i + j], &t.mul(gi, &t.frobenius_q(fj, i)));
            }
        }
        Self::from_coeffs(h)
    }

    /// The monic polynomial of `q`-degree `dim V` vanishing exactly on the
    /// embedded `V`, from a cofactor expansion of the Moore determinant.
    pub fn annihilator(t: &FieldTower, v: &FqSubspace, embed: &Embedding) -> Result<Self> {
        let images = embed.images(t, v)?;
        let d = images.len();
        if fq_rank(t, &images) < d {
            return Err(Error::DependentEmbedding);
        }
        // rows are Frobenius powers 0..=d, columns α_1..α_d then X; the
        // coefficient of X^{q^i} is the signed minor deleting row i and column d
        let moore = moore_matrix(t, &images, d + 1);
        let mut coeffs = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let rows: Vec<Vec<Elt>> = (0..=d)
                .filter(|&r| r != i)
                .map(|r| moore.row(r).to_vec())
                .collect();
            let minor = ExtMatrix::from_rows(d, rows)?.det(t)?;
            coeffs.push(if (i + d) % 2 == 1 {
                t.neg(&minor)
            } else {
                minor
            });
        }
        let lead_inv = t.inv(&coeffs[d]).map_err(|_| Error::DependentEmbedding)?;
        Ok(Self::from_coeffs(
            coeffs.iter().map(|c| t.mul(&lead_inv, c)).collect(),
        ))
    }

    /// `annihilator(V)^{q^s} = X^{q^s} ∘ annihilator(V)`.
    pub fn power_compose_annihilator(
        t: &FieldTower,
        v: &FqSubspace,
        embed: &Embedding,
        s: usize,
    ) -> Result<Self> {
        let ann = Self::annihilator(t, v, embed)?;
        Ok(Self::compose(t, &Self::monomial(t, s), &ann))
    }

    /// `{u ∈ domain : f(σ(u)) = 0}`, solved as an `F_q`-linear system.
    pub fn kernel_of(
        &self,
        t: &FieldTower,
        domain: &FqSubspace,
        embed: &Embedding,
    ) -> Result<FqSubspace> {
        let images: Vec<Elt> = embed
            .images(t, domain)?
            .iter()
            .map(|a| self.eval(t, a))
            .collect();
        let combos = coordinate_matrix(t, &images).left_null_space(t.base());
        let n = domain.ambient_dim();
        let basis = domain.to_matrix();
        let vecs: Vec<Vec<u8>> = combos
            .iter()
            .map(|c| basis.left_mul_vec(t.base(), c))
            .collect();
        FqSubspace::span_of(t.base(), n, &vecs)
    }
}

/// `rows × len(alphas)` matrix with entry `(i, j) = α_j^{q^i}`.
pub fn moore_matrix(t: &FieldTower, alphas: &[Elt], rows: usize) -> ExtMatrix {
    let mut m = ExtMatrix::zeros(t, rows, alphas.len());
    for (j, a) in alphas.iter().enumerate() {
        let mut cur = a.clone();
        for i in 0..rows {
            if i > 0 {
                cur = t.frobenius_q(&cur, 1);
            }
            m.set(i, j, cur.clone());
        }
    }
    m
}

/// Whether the square Moore matrix of `alphas` is invertible.
pub fn moore_det_nonzero(t: &FieldTower, alphas: &[Elt]) -> bool {
    let m = moore_matrix(t, alphas, alphas.len());
    !m.det(t).expect("square").is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqspace::enumerate_subspaces;
    use rand::SeedableRng;

    fn f8() -> FieldTower {
        FieldTower::create(2, 1, 3, 0).unwrap()
    }

    #[test]
    fn eval_examples() {
        let t = f8();
        let x = t.x();
        let id = QLinPoly::monomial(&t, 0);
        assert_eq!(id.eval(&t, &x), x);
        let f = QLinPoly::from_coeffs(vec![x.clone(), t.one()]);
        assert!(f.eval(&t, &x).is_zero());
        assert!(f.eval(&t, &t.zero()).is_zero());
        assert_eq!(QLinPoly::zero().q_degree(), None);
    }

    #[test]
    fn compose_examples() {
        let t = f8();
        let x = t.x();
        let xq = QLinPoly::monomial(&t, 1);
        assert_eq!(QLinPoly::compose(&t, &xq, &xq), QLinPoly::monomial(&t, 2));
        let ax = QLinPoly::from_coeffs(vec![x.clone()]);
        let ga = QLinPoly::compose(&t, &xq, &ax);
        let ag = QLinPoly::compose(&t, &ax, &xq);
        assert_eq!(ga.coeffs(), &[t.zero(), t.square(&x)]);
        assert_eq!(ag.coeffs(), &[t.zero(), x]);
        assert_eq!(QLinPoly::compose(&t, &QLinPoly::monomial(&t, 0), &ga), ga);
    }

    #[test]
    fn moore_examples() {
        let t = f8();
        let x = t.x();
        assert!(moore_det_nonzero(&t, &[t.one(), x.clone()]));
        assert!(!moore_det_nonzero(&t, &[t.one(), t.one()]));
        assert!(moore_det_nonzero(&t, &[x]));
    }

    #[test]
    fn annihilator_examples() {
        let t = f8();
        let e = Embedding::power_basis(&t);
        let zero = FqSubspace::zero(3);
        assert_eq!(
            QLinPoly::annihilator(&t, &zero, &e).unwrap(),
            QLinPoly::monomial(&t, 0)
        );
        let vx = FqSubspace::span_of(t.base(), 3, &[vec![0, 1, 0]]).unwrap();
        let ann = QLinPoly::annihilator(&t, &vx, &e).unwrap();
        assert_eq!(ann.coeffs(), &[t.x(), t.one()]);
        let p = QLinPoly::power_compose_annihilator(&t, &vx, &e, 1).unwrap();
        assert_eq!(p.coeffs(), &[t.zero(), t.square(&t.x()), t.one()]);
        assert_eq!(
            QLinPoly::power_compose_annihilator(&t, &zero, &e, 2).unwrap(),
            QLinPoly::monomial(&t, 2)
        );
        let dependent = Embedding::new(vec![t.one(), t.one(), t.x()]);
        let v12 = FqSubspace::span_of(t.base(), 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(
            QLinPoly::annihilator(&t, &v12, &dependent).unwrap_err(),
            Error::DependentEmbedding
        );
    }

    #[test]
    fn annihilator_zero_set_is_embedded_subspace() {
        let t = FieldTower::create(3, 1, 3, 0).unwrap();
        let e = Embedding::power_basis(&t);
        for d in 0..=2 {
            for v in enumerate_subspaces(t.base(), 3, d).unwrap() {
                let ann = QLinPoly::annihilator(&t, &v, &e).unwrap();
                assert!(ann.is_monic(&t));
                assert_eq!(ann.q_degree(), Some(d));
                let roots = t
                    .enumerate_elements()
                    .unwrap()
                    .filter(|a| ann.eval(&t, a).is_zero())
                    .count();
                assert_eq!(roots, 3usize.pow(d as u32));
                assert_eq!(ann.kernel_of(&t, &FqSubspace::full(3), &e).unwrap(), v);
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let t = f8();
        let e = Embedding::power_basis(&t);
        let full = FqSubspace::full(3);
        assert!(QLinPoly::monomial(&t, 0)
            .kernel_of(&t, &full, &e)
            .unwrap()
            .is_zero());
        let fixed = QLinPoly::from_coeffs(vec![t.neg(&t.one()), t.one()]);
        let k = fixed.kernel_of(&t, &full, &e).unwrap();
        assert_eq!(k.basis(), &[vec![1, 0, 0]]);
    }

    #[test]
    fn compose_matches_pointwise() {
        let t = FieldTower::create(2, 2, 3, 0).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(8);
        for _ in 0..30 {
            let g = QLinPoly::from_coeffs((0..3).map(|_| t.random(&mut rng)).collect());
            let f = QLinPoly::from_coeffs((0..2).map(|_| t.random(&mut rng)).collect());
            let h = QLinPoly::compose(&t, &g, &f);
            for _ in 0..10 {
                let a = t.random(&mut rng);
                assert_eq!(h.eval(&t, &a), g.eval(&t, &f.eval(&t, &a)));
            }
        }
    }
}
