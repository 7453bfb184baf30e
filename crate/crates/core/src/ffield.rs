//! Exact arithmetic in the tower `F_p ⊂ F_q ⊂ F_{q^m}`.
//!
//! The base field `F_q = F_p[y]/(base_modulus)` is table-driven: an element is
//! a packed `u8` holding its `F_p` residues as base-`p` digits (`Σ r_i p^i`),
//! so `q ≤ 256`. The extension `F_{q^m} = F_q[x]/(ext_modulus)` stores an
//! element as its `m` coordinates over `F_q` in the power basis of `x`.
//!
//! Moduli are chosen deterministically: the first monic irreducible polynomial
//! of the requested degree when monic polynomials are ordered by the integer
//! `Σ c_i q^i` of their non-leading coefficients (`c_0` least significant).
//! Over `F_2` this yields `X^3 + X + 1` for degree 3 and `X^4 + X + 1` for
//! degree 4.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::limits;

/// An element of `F_q`, packed as base-`p` digits.
pub type Fq = u8;

/// Largest supported `q`; every `F_q` element fits in a byte.
pub const MAX_Q: u32 = 256;
/// Largest supported extension degree.
pub const MAX_M: usize = 64;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The field `F_q = F_p[y]/(modulus)` with full operation tables.
#[derive(Clone)]
pub struct BaseField {
    p: u32,
    e: usize,
    q: usize,
    modulus: Vec<u32>,
    add: Vec<Fq>,
    mul: Vec<Fq>,
    neg: Vec<Fq>,
    inv: Vec<Fq>,
}

impl fmt::Debug for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaseField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for BaseField {}

impl BaseField {
    /// The prime field `F_p`, presented as `F_p[y]/(y)`.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if p > MAX_Q {
            return Err(Error::SizeGuardExceeded {
                what: "base field size q".into(),
                count: p as u128,
                limit: MAX_Q as u128,
            });
        }
        Self::with_modulus_unchecked(p, vec![0, 1])
    }

    /// `F_{p^e}` with the canonical (lexicographically first) modulus.
    pub fn new(p: u32, e: usize) -> Result<Self> {
        Self::build(p, e, None)
    }

    /// `F_{p^e}` with an explicit monic modulus of degree `e` (coefficients
    /// little-endian, leading 1 included). Irreducibility is verified.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let e = modulus.len().saturating_sub(1);
        Self::build(p, e, Some(modulus))
    }

    fn build(p: u32, e: usize, modulus: Option<Vec<u32>>) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidParameter("e must be positive".into()));
        }
        let fp = Self::prime(p)?;
        let q = (p as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
        if q > MAX_Q as u128 {
            return Err(Error::SizeGuardExceeded {
                what: "base field size q".into(),
                count: q,
                limit: MAX_Q as u128,
            });
        }
        if e == 1 && modulus.is_none() {
            return Ok(fp);
        }
        let modulus: Vec<u32> = match modulus {
            Some(mdl) => {
                if mdl.len() != e + 1 || *mdl.last().unwrap() != 1 || mdl.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidParameter(format!(
                        "base modulus must be monic of degree {e} with residues < {p}"
                    )));
                }
                let poly: Vec<Fq> = mdl.iter().map(|&c| c as Fq).collect();
                if !poly::is_irreducible(&fp, &poly) {
                    return Err(Error::InvalidParameter("base modulus is reducible".into()));
                }
                mdl
            }
            None => poly::first_irreducible(&fp, e)?
                .into_iter()
                .map(|c| c as u32)
                .collect(),
        };
        Self::with_modulus_unchecked(p, modulus)
    }

    fn with_modulus_unchecked(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let e = modulus.len() - 1;
        let q = (p as usize).pow(e as u32);
        let digits = |v: usize| -> Vec<u32> {
            let mut out = vec![0u32; e];
            let mut v = v;
            for d in out.iter_mut() {
                *d = (v % p as usize) as u32;
                v /= p as usize;
            }
            out
        };
        let pack = |d: &[u32]| -> Fq {
            d.iter()
                .rev()
                .fold(0usize, |acc, &r| acc * p as usize + r as usize) as Fq
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..q {
            let da = digits(a);
            neg[a] = pack(&da.iter().map(|&r| (p - r) % p).collect::<Vec<_>>());
            for b in 0..q {
                let db = digits(b);
                add[a * q + b] = pack(
                    &da.iter()
                        .zip(&db)
                        .map(|(&x, &y)| (x + y) % p)
                        .collect::<Vec<_>>(),
                );
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * e];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for top in (e..2 * e).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    for (j, &mc) in modulus.iter().enumerate().take(e) {
                        let idx = top - e + j;
                        prod[idx] = (prod[idx] + p - (c * mc) % p) % p;
                    }
                    prod[top] = 0;
                }
                mul[a * q + b] = pack(&prod[..e]);
            }
        }
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).ok_or_else(|| {
                Error::InternalInvariantViolated("F_q element without inverse".into())
            })? as Fq;
        }
        Ok(Self {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> usize {
        self.e
    }
    pub fn q(&self) -> usize {
        self.q
    }
    /// Little-endian `F_p` coefficients of the modulus, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.p == 2 {
            a ^ b
        } else {
            self.add[a as usize * self.q + b as usize]
        }
    }
    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.neg[a as usize]
    }
    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        self.mul[a as usize * self.q + b as usize]
    }
    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv[a as usize])
    }
    #[inline]
    pub fn contains(&self, a: Fq) -> bool {
        (a as usize) < self.q
    }

    /// `F_p` residues of `a`, little-endian in `y`.
    pub fn residues(&self, a: Fq) -> Vec<u32> {
        let mut v = a as u32;
        (0..self.e)
            .map(|_| {
                let r = v % self.p;
                v /= self.p;
                r
            })
            .collect()
    }

    pub fn from_residues(&self, r: &[u32]) -> Result<Fq> {
        if r.len() != self.e {
            return Err(Error::LengthMismatch {
                expected: self.e,
                got: r.len(),
            });
        }
        if r.iter().any(|&x| x >= self.p) {
            return Err(Error::TowerMismatch);
        }
        Ok(r.iter().rev().fold(0u32, |acc, &x| acc * self.p + x) as Fq)
    }
}

/// An element of `F_{q^m}`: `m` coordinates over `F_q` in the power basis.
///
/// Equality is coordinate-wise; ordering is the canonical element order
/// (the integer `Σ c_j q^j`, highest coordinate most significant).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Elt(SmallVec<[Fq; 32]>);

impl Elt {
    pub fn coords(&self) -> &[Fq] {
        &self.0
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elt{:?}", self.0.as_slice())
    }
}

impl Ord for Elt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Elt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The tower `F_p ⊂ F_q ⊂ F_{q^m}`. Immutable after construction.
#[derive(Clone)]
pub struct FieldTower {
    base: BaseField,
    m: usize,
    ext_modulus: Vec<Fq>,
    /// `x^{m+i} mod ext_modulus` for `i < m - 1`.
    reduction: Vec<Elt>,
    /// `(x^j)^q` for `j < m`; the Frobenius is `F_q`-linear.
    frobenius: Vec<Elt>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.base.p)
            .field("e", &self.base.e)
            .field("m", &self.m)
            .field("base_modulus", &self.base.modulus)
            .field("ext_modulus", &self.ext_modulus)
            .finish()
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.m == other.m && self.ext_modulus == other.ext_modulus
    }
}

impl Eq for FieldTower {}

impl FieldTower {
    /// Builds the tower with canonical moduli. `seed` does not influence the
    /// construction; it is accepted for the randomized self-test
    /// ([`FieldTower::self_test`]).
    pub fn create(p: u32, e: usize, m: usize, seed: u64) -> Result<Self> {
        let _ = seed;
        let base = BaseField::new(p, e)?;
        Self::over(base, m, None)
    }

    /// Builds the tower from explicit moduli, verifying irreducibility.
    /// `ext_modulus` holds packed `F_q` coefficients, little-endian, monic.
    pub fn with_moduli(p: u32, base_modulus: Vec<u32>, ext_modulus: Vec<Fq>) -> Result<Self> {
        let base = BaseField::with_modulus(p, base_modulus)?;
        let m = ext_modulus.len().saturating_sub(1);
        Self::over(base, m, Some(ext_modulus))
    }

    fn over(base: BaseField, m: usize, ext_modulus: Option<Vec<Fq>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        if m > MAX_M {
            return Err(Error::SizeGuardExceeded {
                what: "extension degree m".into(),
                count: m as u128,
                limit: MAX_M as u128,
            });
        }
        let ext_modulus = match ext_modulus {
            Some(mdl) => {
                if mdl.len() != m + 1
                    || *mdl.last().unwrap() != 1
                    || mdl.iter().any(|&c| !base.contains(c))
                {
                    return Err(Error::InvalidParameter(format!(
                        "extension modulus must be monic of degree {m} over F_q"
                    )));
                }
                if !poly::is_irreducible(&base, &mdl) {
                    return Err(Error::InvalidParameter(
                        "extension modulus is reducible".into(),
                    ));
                }
                mdl
            }
            None => poly::first_irreducible(&base, m)?,
        };
        let mut tower = Self {
            base,
            m,
            ext_modulus,
            reduction: Vec::new(),
            frobenius: Vec::new(),
        };
        // x^{m+i} mod f, built incrementally from x^m = -(f - x^m)
        let mut cur = Elt(tower.ext_modulus[..m]
            .iter()
            .map(|&c| tower.base.neg(c))
            .collect());
        for _ in 0..m.saturating_sub(1) {
            tower.reduction.push(cur.clone());
            cur = tower.mul_by_x(&cur);
        }
        let q = tower.base.q as u128;
        let frob = (0..m)
            .map(|j| tower.pow(&tower.basis_monomial(j), q))
            .collect();
        tower.frobenius = frob;
        Ok(tower)
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }
    pub fn p(&self) -> u32 {
        self.base.p
    }
    pub fn e(&self) -> usize {
        self.base.e
    }
    pub fn q(&self) -> usize {
        self.base.q
    }
    pub fn m(&self) -> usize {
        self.m
    }
    /// Packed `F_q` coefficients of the extension modulus, leading 1 included.
    pub fn ext_modulus(&self) -> &[Fq] {
        &self.ext_modulus
    }

    /// `q^m` if it fits in 64 bits.
    pub fn order(&self) -> Option<u64> {
        (self.base.q as u64).checked_pow(self.m as u32)
    }

    pub fn zero(&self) -> Elt {
        Elt(SmallVec::from_elem(0, self.m))
    }

    pub fn one(&self) -> Elt {
        self.embed(1)
    }

    /// The embedded copy of an `F_q` element.
    pub fn embed(&self, c: Fq) -> Elt {
        let mut v = SmallVec::from_elem(0, self.m);
        v[0] = c;
        Elt(v)
    }

    /// The class of the indeterminate `x` (reduced when `m = 1`).
    pub fn x(&self) -> Elt {
        self.mul_by_x(&self.one())
    }

    fn basis_monomial(&self, j: usize) -> Elt {
        let mut v = SmallVec::from_elem(0, self.m);
        v[j] = 1;
        Elt(v)
    }

    pub fn from_coords(&self, coords: &[Fq]) -> Result<Elt> {
        if coords.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                got: coords.len(),
            });
        }
        if coords.iter().any(|&c| !self.base.contains(c)) {
            return Err(Error::TowerMismatch);
        }
        Ok(Elt(SmallVec::from_slice(coords)))
    }

    /// The element whose coordinates are the first entries of `poly`
    /// (a polynomial in `x` of degree `< m`).
    pub fn from_poly(&self, poly: &[Fq]) -> Elt {
        let mut acc = self.zero();
        for &c in poly.iter().rev() {
            acc = self.mul_by_x(&acc);
            acc.0[0] = self.base.add(acc.0[0], c);
        }
        acc
    }

    /// Canonical index `Σ c_j q^j`; `None` when `q^m ≥ 2^64`.
    pub fn index_of(&self, a: &Elt) -> Option<u64> {
        self.order()?;
        let q = self.base.q as u64;
        Some(a.0.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64))
    }

    pub fn from_index(&self, mut idx: u64) -> Elt {
        let q = self.base.q as u64;
        let mut v = SmallVec::from_elem(0, self.m);
        for c in v.iter_mut() {
            *c = (idx % q) as Fq;
            idx /= q;
        }
        Elt(v)
    }

    /// All `q^m` elements in canonical order, starting with 0.
    pub fn enumerate_elements(&self) -> Result<impl Iterator<Item = Elt> + '_> {
        let count = self.order().ok_or_else(|| Error::SizeGuardExceeded {
            what: "field elements".into(),
            count: u128::MAX,
            limit: u64::MAX as u128,
        })?;
        limits::check("field elements", count as u128)?;
        Ok((0..count).map(move |i| self.from_index(i)))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elt {
        let q = self.base.q;
        Elt((0..self.m).map(|_| rng.gen_range(0..q) as Fq).collect())
    }

    /// Checks that `a` has this tower's shape.
    pub fn check(&self, a: &Elt) -> Result<()> {
        if a.0.len() != self.m || a.0.iter().any(|&c| !self.base.contains(c)) {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        Elt(a
            .0
            .iter()
            .zip(&b.0)
            .map(|(&x, &y)| self.base.add(x, y))
            .collect())
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        Elt(a
            .0
            .iter()
            .zip(&b.0)
            .map(|(&x, &y)| self.base.sub(x, y))
            .collect())
    }

    pub fn neg(&self, a: &Elt) -> Elt {
        Elt(a.0.iter().map(|&x| self.base.neg(x)).collect())
    }

    /// `a + c·b` for `c ∈ F_q`.
    pub fn add_scaled(&self, a: &Elt, c: Fq, b: &Elt) -> Elt {
        Elt(a
            .0
            .iter()
            .zip(&b.0)
            .map(|(&x, &y)| self.base.add(x, self.base.mul(c, y)))
            .collect())
    }

    /// `c·a` for `c ∈ F_q`.
    pub fn scale(&self, c: Fq, a: &Elt) -> Elt {
        Elt(a.0.iter().map(|&x| self.base.mul(c, x)).collect())
    }

    fn mul_by_x(&self, a: &Elt) -> Elt {
        let m = self.m;
        let top = a.0[m - 1];
        let mut v: SmallVec<[Fq; 32]> = SmallVec::from_elem(0, m);
        for j in (1..m).rev() {
            v[j] = a.0[j - 1];
        }
        if top != 0 {
            for (j, slot) in v.iter_mut().enumerate() {
                *slot = self
                    .base
                    .sub(*slot, self.base.mul(top, self.ext_modulus[j]));
            }
        }
        Elt(v)
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        let m = self.m;
        let base = &self.base;
        let mut prod: SmallVec<[Fq; 64]> = SmallVec::from_elem(0, 2 * m - 1);
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = base.add(prod[i + j], base.mul(x, y));
                }
            }
        }
        let mut out: SmallVec<[Fq; 32]> = SmallVec::from_slice(&prod[..m]);
        for (i, &c) in prod[m..].iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (slot, &r) in out.iter_mut().zip(&self.reduction[i].0) {
                if r != 0 {
                    *slot = base.add(*slot, base.mul(c, r));
                }
            }
        }
        Elt(out)
    }

    pub fn try_mul(&self, a: &Elt, b: &Elt) -> Result<Elt> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn try_add(&self, a: &Elt, b: &Elt) -> Result<Elt> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn square(&self, a: &Elt) -> Elt {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Elt, mut exp: u128) -> Elt {
        let mut result = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(&result, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.square(&base);
            }
        }
        result
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in `F_q[x]`.
    pub fn inv(&self, a: &Elt) -> Result<Elt> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = poly::inverse_mod(&self.base, &poly::trim(a.0.to_vec()), &self.ext_modulus)
            .ok_or_else(|| {
                Error::InternalInvariantViolated("nonzero element not invertible".into())
            })?;
        let mut v: SmallVec<[Fq; 32]> = SmallVec::from_elem(0, self.m);
        for (slot, c) in v.iter_mut().zip(inv) {
            *slot = c;
        }
        Ok(Elt(v))
    }

    pub fn div(&self, a: &Elt, b: &Elt) -> Result<Elt> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^{q^j}`; exponents wrap modulo `m`.
    pub fn frobenius_q(&self, a: &Elt, j: usize) -> Elt {
        let mut cur = a.clone();
        for _ in 0..(j % self.m) {
            cur = self.frobenius_once(&cur);
        }
        cur
    }

    /// `a^{q^{-j}}`, the inverse Frobenius power.
    pub fn frobenius_q_inv(&self, a: &Elt, j: usize) -> Elt {
        let j = j % self.m;
        self.frobenius_q(a, (self.m - j) % self.m)
    }

    fn frobenius_once(&self, a: &Elt) -> Elt {
        let mut acc = self.zero();
        for (&c, img) in a.0.iter().zip(&self.frobenius) {
            if c != 0 {
                acc = self.add_scaled(&acc, c, img);
            }
        }
        acc
    }

    /// Flattened `F_p` residues, length `e·m` (coordinate-major, little-endian).
    pub fn to_residues(&self, a: &Elt) -> Vec<u32> {
        a.0.iter().flat_map(|&c| self.base.residues(c)).collect()
    }

    pub fn from_residues(&self, r: &[u32]) -> Result<Elt> {
        let e = self.base.e;
        if r.len() != e * self.m {
            return Err(Error::LengthMismatch {
                expected: e * self.m,
                got: r.len(),
            });
        }
        let coords = r
            .chunks(e)
            .map(|chunk| self.base.from_residues(chunk))
            .collect::<Result<SmallVec<[Fq; 32]>>>()?;
        Ok(Elt(coords))
    }

    /// Randomized check of the field axioms and Frobenius properties.
    pub fn self_test(&self, seed: u64, rounds: usize) -> Result<()> {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        for _ in 0..rounds {
            let a = self.random(&mut rng);
            let b = self.random(&mut rng);
            let c = self.random(&mut rng);
            let ok = self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
                && self.mul(&a, &self.add(&b, &c))
                    == self.add(&self.mul(&a, &b), &self.mul(&a, &c))
                && self.frobenius_q(&self.add(&a, &b), 1)
                    == self.add(&self.frobenius_q(&a, 1), &self.frobenius_q(&b, 1))
                && self.frobenius_q(&a, self.m) == a;
            if !ok {
                return Err(Error::InternalInvariantViolated(
                    "field self-test failed".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Polynomials over `F_q` as little-endian coefficient vectors without
/// trailing zeros.
pub mod poly {
    use super::{BaseField, Fq};
    use crate::error::{Error, Result};

    pub fn trim(mut a: Vec<Fq>) -> Vec<Fq> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &[Fq]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn sub(f: &BaseField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                f.sub(
                    a.get(i).copied().unwrap_or(0),
                    b.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        trim(out)
    }

    pub fn mul(f: &BaseField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(out)
    }

    /// Quotient and remainder of `a` by nonzero `b`.
    pub fn divrem(f: &BaseField, a: &[Fq], b: &[Fq]) -> (Vec<Fq>, Vec<Fq>) {
        let b = trim(b.to_vec());
        let db = degree(&b).expect("division by the zero polynomial");
        let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
        let mut rem = trim(a.to_vec());
        if rem.len() <= db {
            return (Vec::new(), rem);
        }
        let mut quot = vec![0; rem.len() - db];
        while let Some(dr) = degree(&rem) {
            if dr < db {
                break;
            }
            let c = f.mul(rem[dr], lead_inv);
            let shift = dr - db;
            quot[shift] = c;
            for (j, &bc) in b.iter().enumerate() {
                rem[shift + j] = f.sub(rem[shift + j], f.mul(c, bc));
            }
            rem = trim(rem);
        }
        (trim(quot), rem)
    }

    pub fn rem(f: &BaseField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        divrem(f, a, b).1
    }

    pub fn gcd(f: &BaseField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = rem(f, &x, &y);
            x = y;
            y = r;
        }
        x
    }

    pub fn mulmod(f: &BaseField, a: &[Fq], b: &[Fq], modulus: &[Fq]) -> Vec<Fq> {
        rem(f, &mul(f, a, b), modulus)
    }

    pub fn powmod(f: &BaseField, a: &[Fq], mut exp: u128, modulus: &[Fq]) -> Vec<Fq> {
        let mut result = rem(f, &[1], modulus);
        let mut base = rem(f, a, modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                result = mulmod(f, &result, &base, modulus);
            }
            exp >>= 1;
            if exp > 0 {
                base = mulmod(f, &base, &base, modulus);
            }
        }
        result
    }

    /// Inverse of `a` modulo `modulus`, if it exists.
    pub fn inverse_mod(f: &BaseField, a: &[Fq], modulus: &[Fq]) -> Option<Vec<Fq>> {
        // invariant: s_i * a ≡ r_i (mod modulus)
        let (mut r0, mut r1) = (trim(modulus.to_vec()), rem(f, a, modulus));
        let (mut s0, mut s1): (Vec<Fq>, Vec<Fq>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (quot, r2) = divrem(f, &r0, &r1);
            let s2 = sub(f, &s0, &mul(f, &quot, &s1));
            r0 = r1;
            r1 = r2;
            s0 = s1;
            s1 = s2;
        }
        if degree(&r0) != Some(0) {
            return None;
        }
        let c = f.inv(r0[0]).ok()?;
        Some(rem(
            f,
            &s0.iter().map(|&x| f.mul(c, x)).collect::<Vec<_>>(),
            modulus,
        ))
    }

    /// Ben-Or irreducibility test: `gcd(X^{q^i} - X, g) = 1` for `i ≤ deg/2`.
    pub fn is_irreducible(f: &BaseField, g: &[Fq]) -> bool {
        let g = trim(g.to_vec());
        let Some(d) = degree(&g) else { return false };
        if d == 0 {
            return false;
        }
        let x = vec![0, 1];
        let mut h = rem(f, &x, &g);
        for _ in 1..=d / 2 {
            h = powmod(f, &h, f.q() as u128, &g);
            let diff = sub(f, &h, &x);
            if degree(&gcd(f, &diff, &g)).unwrap_or(usize::MAX) != 0 {
                return false;
            }
        }
        true
    }

    /// Monic polynomial of degree `d` whose lower coefficients are the base-`q`
    /// digits of `idx` (`c_0` least significant).
    pub fn monic_from_index(q: usize, d: usize, mut idx: u128) -> Vec<Fq> {
        let mut out = vec![0; d + 1];
        for c in out.iter_mut().take(d) {
            *c = (idx % q as u128) as Fq;
            idx /= q as u128;
        }
        out[d] = 1;
        out
    }

    /// First monic irreducible polynomial of degree `d` in canonical order.
    pub fn first_irreducible(f: &BaseField, d: usize) -> Result<Vec<Fq>> {
        let total = crate::limits::pow_saturating(f.q() as u128, d as u64);
        let mut idx = 0u128;
        while idx < total {
            let cand = monic_from_index(f.q(), d, idx);
            if is_irreducible(f, &cand) {
                return Ok(cand);
            }
            idx += 1;
        }
        Err(Error::NoIrreducibleFound { degree: d })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f8() -> FieldTower {
        FieldTower::create(2, 1, 3, 0).unwrap()
    }

    /// Brute-force irreducibility: no monic factor of degree `1..=d/2`.
    fn irreducible_by_trial_division(f: &BaseField, g: &[Fq]) -> bool {
        let d = poly::degree(g).unwrap();
        for fd in 1..=d / 2 {
            let count = (f.q() as u128).pow(fd as u32);
            for idx in 0..count {
                let cand = poly::monic_from_index(f.q(), fd, idx);
                if poly::rem(f, g, &cand).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn f8_modulus_is_x3_x_1() {
        let t = f8();
        assert_eq!(t.ext_modulus(), &[1, 1, 0, 1]);
        // monic cubics over F_2 in canonical order: the first two are X^3 and X^3+1
        let fp = BaseField::prime(2).unwrap();
        let cubics: Vec<_> = (0..8).map(|i| poly::monic_from_index(2, 3, i)).collect();
        let first = cubics
            .iter()
            .find(|c| irreducible_by_trial_division(&fp, c))
            .unwrap();
        assert_eq!(first.as_slice(), t.ext_modulus());
    }

    #[test]
    fn trivial_extension_is_base_field() {
        let t = FieldTower::create(2, 1, 1, 0).unwrap();
        assert_eq!(t.ext_modulus().len(), 2);
        let elems: Vec<_> = t.enumerate_elements().unwrap().collect();
        assert_eq!(elems, vec![t.zero(), t.one()]);
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(
            FieldTower::create(4, 1, 2, 0).unwrap_err(),
            Error::NonPrime(4)
        );
    }

    #[test]
    fn ben_or_agrees_with_trial_division() {
        for (p, e) in [(2u32, 1usize), (3, 1), (2, 2)] {
            let f = BaseField::new(p, e).unwrap();
            for d in 1..=5usize {
                let count = (f.q() as u128).pow(d as u32).min(400);
                for idx in 0..count {
                    let g = poly::monic_from_index(f.q(), d, idx);
                    assert_eq!(
                        poly::is_irreducible(&f, &g),
                        irreducible_by_trial_division(&f, &g),
                        "p={p} e={e} g={g:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn mul_x_by_x2_reduces() {
        let t = f8();
        let x = t.x();
        let x2 = t.mul(&x, &x);
        assert_eq!(x2.coords(), &[0, 0, 1]);
        // x^3 = x + 1
        assert_eq!(t.mul(&x, &x2).coords(), &[1, 1, 0]);
    }

    #[test]
    fn identity_and_inverse() {
        let t = f8();
        for a in t.enumerate_elements().unwrap() {
            assert_eq!(t.mul(&a, &t.one()), a);
            if !a.is_zero() {
                assert_eq!(t.mul(&a, &t.inv(&a).unwrap()), t.one());
            }
        }
        assert_eq!(t.inv(&t.zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn frobenius_examples() {
        let t = f8();
        let x = t.x();
        assert_eq!(t.frobenius_q(&x, 1).coords(), &[0, 0, 1]);
        let x1 = t.add(&x, &t.one());
        assert_eq!(t.frobenius_q(&x1, 1).coords(), &[1, 0, 1]);
        for a in t.enumerate_elements().unwrap() {
            assert_eq!(t.frobenius_q(&a, 0), a);
            assert_eq!(t.frobenius_q(&a, 3), a);
            assert_eq!(t.frobenius_q(&a, 1), t.square(&a));
            assert_eq!(t.frobenius_q_inv(&t.frobenius_q(&a, 2), 2), a);
        }
    }

    #[test]
    fn enumeration_shapes() {
        let f2 = FieldTower::create(2, 1, 1, 0).unwrap();
        assert_eq!(f2.enumerate_elements().unwrap().count(), 2);
        let f4 = FieldTower::create(2, 1, 2, 0).unwrap();
        let all: Vec<_> = f4.enumerate_elements().unwrap().collect();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!((all.len(), set.len()), (4, 4));
        let t = f8();
        let elems: Vec<_> = t.enumerate_elements().unwrap().collect();
        assert!(elems[0].is_zero());
        let sum = elems.iter().fold(t.zero(), |acc, a| t.add(&acc, a));
        assert!(sum.is_zero());
        for w in elems.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn exhaustive_small_fields() {
        // q^m ≤ 2^10: inverses and Fermat
        for (p, e, m) in [
            (2u32, 1usize, 10usize),
            (3, 1, 4),
            (2, 2, 3),
            (5, 1, 3),
            (3, 2, 2),
        ] {
            let t = FieldTower::create(p, e, m, 0).unwrap();
            for a in t.enumerate_elements().unwrap() {
                assert_eq!(t.frobenius_q(&a, m), a);
                assert_eq!(t.pow(&a, t.order().unwrap() as u128), a);
                if !a.is_zero() {
                    assert_eq!(t.mul(&a, &t.inv(&a).unwrap()), t.one());
                }
            }
        }
    }

    #[test]
    fn frobenius_is_fq_linear_in_nested_tower() {
        let t = FieldTower::create(2, 2, 3, 0).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(9);
        use rand::SeedableRng;
        for _ in 0..200 {
            let a = t.random(&mut rng);
            let b = t.random(&mut rng);
            assert_eq!(
                t.frobenius_q(&t.add(&a, &b), 1),
                t.add(&t.frobenius_q(&a, 1), &t.frobenius_q(&b, 1))
            );
            for c in 0..t.q() as Fq {
                let ca = t.scale(c, &a);
                assert_eq!(ca, t.mul(&t.embed(c), &a));
                assert_eq!(t.frobenius_q(&ca, 1), t.scale(c, &t.frobenius_q(&a, 1)));
            }
        }
    }

    #[test]
    fn residue_round_trip_and_mismatch() {
        let t = FieldTower::create(3, 2, 2, 0).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        use rand::SeedableRng;
        for _ in 0..50 {
            let a = t.random(&mut rng);
            let r = t.to_residues(&a);
            assert_eq!(r.len(), 4);
            assert!(r.iter().all(|&x| x < 3));
            assert_eq!(t.from_residues(&r).unwrap(), a);
        }
        let other = f8();
        assert_eq!(
            t.try_mul(&t.one(), &other.one()).unwrap_err(),
            Error::TowerMismatch
        );
    }

    #[test]
    fn explicit_moduli_are_verified() {
        let t = FieldTower::with_moduli(2, vec![0, 1], vec![1, 0, 1, 1]).unwrap();
        assert_eq!(t.m(), 3);
        assert!(FieldTower::with_moduli(2, vec![0, 1], vec![1, 0, 0, 1]).is_err());
        t.self_test(5, 100).unwrap();
    }

    #[test]
    fn large_extension_builds() {
        let t = FieldTower::create(2, 1, 28, 0).unwrap();
        t.self_test(3, 200).unwrap();
        let x = t.x();
        assert_eq!(t.frobenius_q(&x, 28), x);
    }
}
