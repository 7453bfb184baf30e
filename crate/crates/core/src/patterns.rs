//! Generic kernel patterns, Hall-type padding, attainment certificates and
//! the `M_S` determinant built from subspace annihilators.

use crate::error::{Error, Result};
use crate::extmat::ExtMatrix;
use crate::ffield::{BaseField, Elt, FieldTower};
use crate::fqspace::{enumerate_subspaces, nonzero_vectors, FqSubspace};
use crate::gabidulin::{times_subspace, LinearCode};
use crate::limits;
use crate::partitions::PartitionIter;
use crate::qlinpoly::{Embedding, QLinPoly};

/// Largest list length for which subset families (`2^len` checks) are built.
pub const MAX_SUBSET_FAMILY: usize = 20;

/// Intersections of every subset of `spaces`, indexed by bitmask.
/// Entry 0 (the empty intersection) is the full space.
pub fn subset_intersections(
    f: &BaseField,
    n: usize,
    spaces: &[&FqSubspace],
) -> Result<Vec<FqSubspace>> {
    if spaces.len() > MAX_SUBSET_FAMILY {
        return Err(Error::SizeGuardExceeded {
            what: "subset family".into(),
            count: 1u128 << spaces.len(),
            limit: 1u128 << MAX_SUBSET_FAMILY,
        });
    }
    let mut out = Vec::with_capacity(1 << spaces.len());
    out.push(FqSubspace::full(n));
    for mask in 1usize..(1 << spaces.len()) {
        let low = mask.trailing_zeros() as usize;
        let rest = &out[mask & (mask - 1)];
        out.push(rest.intersect(f, spaces[low])?);
    }
    Ok(out)
}

/// First nonempty subset `Ω` (as a bitmask) with `dim ⋂_Ω V_i > k − Σ_Ω δ_i`.
pub fn first_violation(
    f: &BaseField,
    n: usize,
    spaces: &[&FqSubspace],
    deltas: &[usize],
    k: usize,
) -> Result<Option<usize>> {
    let inter = subset_intersections(f, n, spaces)?;
    Ok((1..inter.len()).find(|&mask| {
        let weight: usize = (0..spaces.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| deltas[i])
            .sum();
        inter[mask].dim() + weight > k
    }))
}

/// A kernel pattern: distinct nonzero subspaces with multiplicities, padded
/// with copies of `{0}` to `k` slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPattern {
    k: usize,
    n: usize,
    entries: Vec<(FqSubspace, usize)>,
}

impl KernelPattern {
    /// Merges repeated subspaces (summing multiplicities) and drops `{0}`.
    pub fn new(k: usize, n: usize, entries: Vec<(FqSubspace, usize)>) -> Result<Self> {
        let mut merged: Vec<(FqSubspace, usize)> = Vec::new();
        for (v, delta) in entries {
            if v.ambient_dim() != n {
                return Err(Error::DimMismatch {
                    expected: n,
                    got: v.ambient_dim(),
                });
            }
            if delta == 0 {
                return Err(Error::InvalidParameter(
                    "multiplicities must be positive".into(),
                ));
            }
            if v.is_zero() {
                continue;
            }
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some((_, d)) => *d += delta,
                None => merged.push((v, delta)),
            }
        }
        let total: usize = merged.iter().map(|(_, d)| d).sum();
        if total > k {
            return Err(Error::InvalidParameter(format!(
                "multiplicities sum to {total} > k = {k}"
            )));
        }
        Ok(Self {
            k,
            n,
            entries: merged,
        })
    }

    /// Pattern from an explicit list of `k` slots.
    pub fn from_slots(n: usize, slots: &[FqSubspace]) -> Result<Self> {
        Self::new(
            slots.len(),
            n,
            slots.iter().map(|v| (v.clone(), 1)).collect(),
        )
    }

    pub fn k(&self) -> usize {
        self.k
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn entries(&self) -> &[(FqSubspace, usize)] {
        &self.entries
    }
    /// Number of distinct nonzero subspaces.
    pub fn order(&self) -> usize {
        self.entries.len()
    }
    pub fn zero_slots(&self) -> usize {
        self.k - self.entries.iter().map(|(_, d)| d).sum::<usize>()
    }

    /// Expanded slots: each entry's copies in order, then `{0}` copies.
    pub fn slots(&self) -> Vec<FqSubspace> {
        let mut out = Vec::with_capacity(self.k);
        for (v, d) in &self.entries {
            out.extend(std::iter::repeat_n(v.clone(), *d));
        }
        out.extend(std::iter::repeat_n(
            FqSubspace::zero(self.n),
            self.zero_slots(),
        ));
        out
    }

    fn spaces(&self) -> Vec<&FqSubspace> {
        self.entries.iter().map(|(v, _)| v).collect()
    }
    fn deltas(&self) -> Vec<usize> {
        self.entries.iter().map(|(_, d)| *d).collect()
    }

    /// Generic kernel pattern test in multiplicity form (`2^ℓ − 1` checks).
    pub fn is_gkp(&self, f: &BaseField) -> Result<bool> {
        Ok(first_violation(f, self.n, &self.spaces(), &self.deltas(), self.k)?.is_none())
    }

    /// The same test over all `2^k − 1` subsets of expanded slots.
    pub fn is_gkp_expanded(&self, f: &BaseField) -> Result<bool> {
        let slots = self.slots();
        let refs: Vec<&FqSubspace> = slots.iter().collect();
        Ok(first_violation(f, self.n, &refs, &vec![1; slots.len()], self.k)?.is_none())
    }
}

/// Enlarges each `V_i` to dimension `k − δ_i` while keeping
/// `dim ⋂_Ω V_i ≤ k − Σ_Ω δ_i` for every nonempty `Ω`.
///
/// Vectors are adjoined greedily in canonical order; the inequality family is
/// re-checked from scratch for each candidate.
pub fn hall_pad_multiplicity(
    f: &BaseField,
    k: usize,
    spaces: &[FqSubspace],
    deltas: &[usize],
) -> Result<Vec<FqSubspace>> {
    if spaces.len() != deltas.len() {
        return Err(Error::LengthMismatch {
            expected: spaces.len(),
            got: deltas.len(),
        });
    }
    let Some(n) = spaces.first().map(FqSubspace::ambient_dim) else {
        return Ok(Vec::new());
    };
    if spaces.iter().any(|v| v.ambient_dim() != n) {
        return Err(Error::DimMismatch {
            expected: n,
            got: 0,
        });
    }
    let refs: Vec<&FqSubspace> = spaces.iter().collect();
    if first_violation(f, n, &refs, deltas, k)?.is_some() || deltas.iter().any(|&d| d > k) {
        return Err(Error::HypothesisViolated(
            "subspace intersections exceed k minus multiplicities".into(),
        ));
    }
    let mut padded: Vec<FqSubspace> = spaces.to_vec();
    for i in 0..padded.len() {
        while padded[i].dim() < k - deltas[i] {
            let mut accepted = None;
            for v in nonzero_vectors(f.q(), n) {
                if padded[i].contains(f, &v) {
                    continue;
                }
                let cand = padded[i].sum(f, &FqSubspace::span_of(f, n, &[v])?)?;
                let mut trial = padded.clone();
                trial[i] = cand.clone();
                let trial_refs: Vec<&FqSubspace> = trial.iter().collect();
                if first_violation(f, n, &trial_refs, deltas, k)?.is_none() {
                    accepted = Some(cand);
                    break;
                }
            }
            padded[i] = accepted.ok_or_else(|| {
                Error::InternalInvariantViolated(format!(
                    "no valid padding vector for subspace {i}"
                ))
            })?;
        }
    }
    Ok(padded)
}

/// Pads `k` subspaces to dimension `k − 1` each, keeping
/// `dim ⋂_Ω V_i ≤ k − |Ω|`.
pub fn hall_pad_dual(f: &BaseField, spaces: &[FqSubspace]) -> Result<Vec<FqSubspace>> {
    let k = spaces.len();
    hall_pad_multiplicity(f, k, spaces, &vec![1; k])
}

/// Outcome of the order-`ℓ` characterization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderCharacterization {
    /// The partition condition holds; `deltas` realize a generic pattern.
    Ok { deltas: Vec<usize> },
    /// A partition whose summed intersection dimensions exceed `(s−1)k + d`.
    Violated { partition: Vec<Vec<usize>> },
}

/// Decides whether `δ_i` copies of `V_i` plus `d` copies of `{0}` can form a
/// generic kernel pattern for some multiplicities `δ_i ≥ 0`, via the
/// partition condition `Σ_{blocks} dim ⋂_{block} V_j ≤ (s−1)k + d`.
pub fn order_ell_characterize(
    f: &BaseField,
    spaces: &[FqSubspace],
    k: usize,
    d: usize,
) -> Result<OrderCharacterization> {
    if d > k {
        return Err(Error::InvalidParameter(format!("d = {d} exceeds k = {k}")));
    }
    let ell = spaces.len();
    let Some(n) = spaces.first().map(FqSubspace::ambient_dim) else {
        return Ok(if d == k {
            OrderCharacterization::Ok { deltas: Vec::new() }
        } else {
            OrderCharacterization::Violated {
                partition: Vec::new(),
            }
        });
    };
    let refs: Vec<&FqSubspace> = spaces.iter().collect();
    let inter = subset_intersections(f, n, &refs)?;
    for partition in PartitionIter::new(ell)? {
        let s = partition.len();
        let total: usize = partition
            .iter()
            .map(|block| inter[block.iter().fold(0usize, |m, &i| m | 1 << i)].dim())
            .sum();
        if total > (s - 1) * k + d {
            return Ok(OrderCharacterization::Violated { partition });
        }
    }
    let target = k - d;
    let mut deltas = vec![0usize; ell];
    if search_compositions(&inter, k, target, 0, &mut deltas) {
        return Ok(OrderCharacterization::Ok { deltas });
    }
    Err(Error::InternalInvariantViolated(
        "partition condition holds but no multiplicity vector exists".into(),
    ))
}

/// Lexicographically smallest composition of `remaining` into the tail of
/// `deltas` (from `pos`) satisfying every subset inequality.
fn search_compositions(
    inter: &[FqSubspace],
    k: usize,
    remaining: usize,
    pos: usize,
    deltas: &mut [usize],
) -> bool {
    let ell = deltas.len();
    if pos == ell {
        return remaining == 0
            && (1..inter.len()).all(|mask| {
                let w: usize = (0..ell)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| deltas[i])
                    .sum();
                inter[mask].dim() + w <= k
            });
    }
    let range = if pos + 1 == ell {
        remaining..=remaining
    } else {
        0..=remaining
    };
    for v in range {
        deltas[pos] = v;
        // prune on subsets fully inside the prefix
        let prefix_ok = (1..1usize << (pos + 1))
            .filter(|m| m >> pos & 1 == 1)
            .all(|mask| {
                let w: usize = (0..=pos)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| deltas[i])
                    .sum();
                inter[mask].dim() + w <= k
            });
        if prefix_ok && search_compositions(inter, k, remaining - v, pos + 1, deltas) {
            return true;
        }
    }
    deltas[pos] = 0;
    false
}

/// Proof that a code attains a pattern: an invertible `M` whose row `i`
/// annihilates `G·A_i` for the subspace in slot `i`.
#[derive(Clone, Debug)]
pub struct AttainmentCertificate {
    pub m: ExtMatrix,
    pub pattern: KernelPattern,
    pub det_nonzero: bool,
    pub rows_annihilate: bool,
}

impl AttainmentCertificate {
    /// Re-checks both properties against `code`, independently of construction.
    pub fn verify(&self, code: &LinearCode) -> Result<bool> {
        let t = code.tower();
        let det_ok = !self.m.det(t)?.is_zero();
        let mut rows_ok = true;
        for (i, v) in self.pattern.slots().iter().enumerate() {
            let ga = times_subspace(t, code.generator(), v)?;
            rows_ok &= ga.left_mul_vec(t, self.m.row(i)).iter().all(Elt::is_zero);
        }
        Ok(det_ok && rows_ok)
    }
}

/// Builds an attainment certificate for a generic kernel pattern.
///
/// Subspaces are padded to dimension `k − δ_i`; the left null spaces of the
/// padded `G·A_i` must then form a direct sum of dimension `Σ δ_i`, which is
/// completed to a basis with standard unit vectors. A failed direct sum is
/// reported as [`Error::DirectSumFailure`].
pub fn attain(code: &LinearCode, pattern: &KernelPattern) -> Result<AttainmentCertificate> {
    let t = code.tower();
    let f = t.base();
    let k = code.k();
    if pattern.k() != k || pattern.n() != code.n() {
        return Err(Error::InvalidParameter(
            "pattern shape does not match the code".into(),
        ));
    }
    if !pattern.is_gkp(f)? {
        return Err(Error::NotGkp);
    }
    let spaces: Vec<FqSubspace> = pattern.entries().iter().map(|(v, _)| v.clone()).collect();
    let deltas: Vec<usize> = pattern.entries().iter().map(|(_, d)| *d).collect();
    let padded = hall_pad_multiplicity(f, k, &spaces, &deltas)?;
    let mut rows: Vec<Vec<Elt>> = Vec::with_capacity(k);
    for (i, v) in padded.iter().enumerate() {
        let null = times_subspace(t, code.generator(), v)?.left_null_space(t);
        if null.len() != deltas[i] {
            return Err(Error::DirectSumFailure(format!(
                "annihilator of entry {i} has dimension {} instead of {}",
                null.len(),
                deltas[i]
            )));
        }
        rows.extend(null);
    }
    let constrained = rows.len();
    if constrained > 0 && ExtMatrix::from_rows(k, rows.clone())?.rank(t) != constrained {
        return Err(Error::DirectSumFailure(format!(
            "annihilators span less than {constrained} dimensions"
        )));
    }
    for j in 0..k {
        if rows.len() == k {
            break;
        }
        let mut e = vec![t.zero(); k];
        e[j] = t.one();
        rows.push(e);
        if ExtMatrix::from_rows(k, rows.clone())?.rank(t) < rows.len() {
            rows.pop();
        }
    }
    let m = ExtMatrix::from_rows(k, rows)?;
    let mut cert = AttainmentCertificate {
        m,
        pattern: pattern.clone(),
        det_nonzero: false,
        rows_annihilate: false,
    };
    let ok = cert.verify(code)?;
    if !ok {
        return Err(Error::InternalInvariantViolated(
            "attainment certificate failed verification".into(),
        ));
    }
    cert.det_nonzero = true;
    cert.rows_annihilate = true;
    Ok(cert)
}

/// All generic kernel patterns of order at most `max_order` for `[n, k]`
/// codes over `F_q`, up to permutation of slots.
pub fn enumerate_gkp_patterns(
    f: &BaseField,
    n: usize,
    k: usize,
    max_order: usize,
) -> Result<Vec<KernelPattern>> {
    let mut candidates = Vec::new();
    for d in 1..k {
        candidates.extend(enumerate_subspaces(f, n, d)?);
    }
    let mut out = vec![KernelPattern::new(k, n, Vec::new())?];
    let mut chosen = Vec::new();
    collect_patterns(f, n, k, max_order, &candidates, 0, &mut chosen, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn collect_patterns(
    f: &BaseField,
    n: usize,
    k: usize,
    max_order: usize,
    candidates: &[FqSubspace],
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<KernelPattern>,
) -> Result<()> {
    if chosen.len() == max_order {
        return Ok(());
    }
    for c in start..candidates.len() {
        chosen.push(c);
        let mut deltas = vec![1usize; chosen.len()];
        loop {
            if deltas.iter().sum::<usize>() <= k {
                let entries = chosen
                    .iter()
                    .zip(&deltas)
                    .map(|(&i, &d)| (candidates[i].clone(), d))
                    .collect();
                let p = KernelPattern::new(k, n, entries)?;
                if p.is_gkp(f)? {
                    out.push(p);
                    limits::check("kernel patterns", out.len() as u128)?;
                }
            }
            // odometer over multiplicities in 1..=k
            let Some(pos) = deltas.iter().rposition(|&d| d < k) else {
                break;
            };
            deltas[pos] += 1;
            for d in deltas[pos + 1..].iter_mut() {
                *d = 1;
            }
        }
        collect_patterns(f, n, k, max_order, candidates, c + 1, chosen, out)?;
        chosen.pop();
    }
    Ok(())
}

/// Data for the square matrix `M_S`: subspaces `V_i` with positive `r_i`,
/// `Σ r_i = k` and `dim V_i + r_i ≤ k`.
#[derive(Clone, Debug)]
pub struct MsSpec {
    k: usize,
    parts: Vec<(FqSubspace, usize)>,
    embed: Embedding,
}

/// Comparison of `det M_S` against the subspace condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsStatus {
    Consistent,
    /// Nonzero determinant although the condition fails: impossible.
    HardViolation,
    /// Zero determinant although the condition holds: an unlucky draw.
    ProbabilisticMiss,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MsVerdict {
    pub det_zero: bool,
    pub condition: bool,
    pub status: MsStatus,
}

impl MsSpec {
    pub fn new(k: usize, parts: Vec<(FqSubspace, usize)>, embed: Embedding) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::SpecInvariantViolated(
                "at least one part is required".into(),
            ));
        }
        let total: usize = parts.iter().map(|(_, r)| r).sum();
        if total != k {
            return Err(Error::SpecInvariantViolated(format!(
                "r_i sum to {total}, expected {k}"
            )));
        }
        for (v, r) in &parts {
            if *r == 0 {
                return Err(Error::SpecInvariantViolated(
                    "every r_i must be positive".into(),
                ));
            }
            if v.dim() + r > k {
                return Err(Error::SpecInvariantViolated(format!(
                    "dim V + r = {} exceeds k = {k}",
                    v.dim() + r
                )));
            }
            if v.ambient_dim() != embed.dim() {
                return Err(Error::SpecInvariantViolated(
                    "subspace ambient dimension differs from embedding".into(),
                ));
            }
        }
        Ok(Self { k, parts, embed })
    }

    pub fn k(&self) -> usize {
        self.k
    }
    pub fn parts(&self) -> &[(FqSubspace, usize)] {
        &self.parts
    }
    pub fn embed(&self) -> &Embedding {
        &self.embed
    }

    /// `f_i = annihilator(V_i)^{q^{k − dim V_i − r_i}}`.
    pub fn polys(&self, t: &FieldTower) -> Result<Vec<QLinPoly>> {
        self.parts
            .iter()
            .map(|(v, r)| {
                QLinPoly::power_compose_annihilator(t, v, &self.embed, self.k - v.dim() - r)
            })
            .collect()
    }

    /// Block `i` has `r_i` rows; row `j` holds the coefficients of
    /// `X^{q^0}, …, X^{q^{k−1}}` in `f_i^{q^j}`.
    pub fn matrix(&self, t: &FieldTower) -> Result<ExtMatrix> {
        let mut rows = Vec::with_capacity(self.k);
        for (f, (_, r)) in self.polys(t)?.iter().zip(&self.parts) {
            for j in 0..*r {
                let g = QLinPoly::compose(t, &QLinPoly::monomial(t, j), f);
                rows.push((0..self.k).map(|c| g.coeff(t, c)).collect());
            }
        }
        ExtMatrix::from_rows(self.k, rows)
    }

    /// `dim ⋂_Ω V_i + Σ_Ω r_i ≤ max_Ω (dim V_i + r_i)` for all nonempty `Ω`.
    pub fn condition(&self, f: &BaseField) -> Result<bool> {
        let refs: Vec<&FqSubspace> = self.parts.iter().map(|(v, _)| v).collect();
        let inter = subset_intersections(f, self.embed.dim(), &refs)?;
        Ok((1..inter.len()).all(|mask| {
            let members = (0..self.parts.len()).filter(|i| mask >> i & 1 == 1);
            let r_sum: usize = members.clone().map(|i| self.parts[i].1).sum();
            let best = members
                .map(|i| self.parts[i].0.dim() + self.parts[i].1)
                .max()
                .unwrap_or(0);
            inter[mask].dim() + r_sum <= best
        }))
    }

    pub fn theorem_check(&self, t: &FieldTower) -> Result<MsVerdict> {
        let det_zero = self.matrix(t)?.det(t)?.is_zero();
        let condition = self.condition(t.base())?;
        let status = match (det_zero, condition) {
            (false, false) => MsStatus::HardViolation,
            (true, true) => MsStatus::ProbabilisticMiss,
            _ => MsStatus::Consistent,
        };
        Ok(MsVerdict {
            det_zero,
            condition,
            status,
        })
    }

    /// Polynomials `g_i` of `q`-degree below `r_i`, not all zero, with
    /// `Σ g_i ∘ f_i = 0`; `None` when `M_S` is invertible.
    pub fn null_witness(&self, t: &FieldTower) -> Result<Option<Vec<QLinPoly>>> {
        let m = self.matrix(t)?;
        let Some(y) = m.left_null_space(t).into_iter().next() else {
            return Ok(None);
        };
        let polys = self.polys(t)?;
        let mut gs = Vec::with_capacity(self.parts.len());
        let mut offset = 0;
        for (_, r) in &self.parts {
            gs.push(QLinPoly::from_coeffs(y[offset..offset + r].to_vec()));
            offset += r;
        }
        let total = gs.iter().zip(&polys).fold(QLinPoly::zero(), |acc, (g, f)| {
            acc.add(t, &QLinPoly::compose(t, g, f))
        });
        if !total.is_zero() || gs.iter().all(QLinPoly::is_zero) {
            return Err(Error::InternalInvariantViolated(
                "null witness does not compose to zero".into(),
            ));
        }
        Ok(Some(gs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gabidulin::GabidulinCode;
    use std::sync::Arc;

    fn f2() -> BaseField {
        BaseField::prime(2).unwrap()
    }

    fn span(f: &BaseField, n: usize, vs: &[&[u8]]) -> FqSubspace {
        FqSubspace::span_of(f, n, &vs.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn gkp_examples() {
        let f = f2();
        let e1 = span(&f, 3, &[&[1, 0, 0]]);
        let e2 = span(&f, 3, &[&[0, 1, 0]]);
        assert!(KernelPattern::new(2, 3, vec![])
            .unwrap()
            .is_gkp(&f)
            .unwrap());
        let same = KernelPattern::from_slots(3, &[e1.clone(), e1.clone()]).unwrap();
        assert_eq!(same.entries(), &[(e1.clone(), 2)]);
        assert!(!same.is_gkp(&f).unwrap());
        assert!(!same.is_gkp_expanded(&f).unwrap());
        let diff = KernelPattern::from_slots(3, &[e1, e2]).unwrap();
        assert!(diff.is_gkp(&f).unwrap());
        assert_eq!(diff.order(), 2);
    }

    #[test]
    fn hall_pad_examples() {
        let f = f2();
        let z = FqSubspace::zero(2);
        let padded = hall_pad_dual(&f, &[z.clone(), z.clone()]).unwrap();
        assert_eq!(padded[0], span(&f, 2, &[&[1, 0]]));
        assert_eq!(padded[1], span(&f, 2, &[&[0, 1]]));
        let fixed = vec![span(&f, 2, &[&[1, 0]]), span(&f, 2, &[&[1, 1]])];
        assert_eq!(hall_pad_dual(&f, &fixed).unwrap(), fixed);
        let e1 = span(&f, 2, &[&[1, 0]]);
        assert!(matches!(
            hall_pad_dual(&f, &[e1.clone(), e1]),
            Err(Error::HypothesisViolated(_))
        ));
        let one = hall_pad_multiplicity(&f, 2, &[FqSubspace::zero(3)], &[1]).unwrap();
        assert_eq!(one[0].dim(), 1);
    }

    #[test]
    fn order_ell_examples() {
        let f = f2();
        let e1 = span(&f, 3, &[&[1, 0, 0]]);
        let e2 = span(&f, 3, &[&[0, 1, 0]]);
        assert_eq!(
            order_ell_characterize(&f, &[e1.clone(), e2], 2, 0).unwrap(),
            OrderCharacterization::Ok { deltas: vec![1, 1] }
        );
        assert_eq!(
            order_ell_characterize(&f, &[e1.clone(), e1.clone()], 2, 0).unwrap(),
            OrderCharacterization::Violated {
                partition: vec![vec![0, 1]]
            }
        );
        assert_eq!(
            order_ell_characterize(&f, &[e1], 2, 1).unwrap(),
            OrderCharacterization::Ok { deltas: vec![1] }
        );
        // a single subspace needs dim V ≤ d
        let plane = span(&f, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(
            order_ell_characterize(&f, std::slice::from_ref(&plane), 3, 1).unwrap(),
            OrderCharacterization::Violated {
                partition: vec![vec![0]]
            }
        );
        assert_eq!(
            order_ell_characterize(&f, &[plane], 3, 2).unwrap(),
            OrderCharacterization::Ok { deltas: vec![1] }
        );
    }

    #[test]
    fn attain_example() {
        let t = Arc::new(FieldTower::create(2, 1, 3, 0).unwrap());
        let x2 = t.square(&t.x());
        let code = GabidulinCode::new(t.clone(), 2, vec![t.one(), t.x(), x2.clone()]).unwrap();
        let f = t.base();
        let p =
            KernelPattern::from_slots(3, &[span(f, 3, &[&[1, 0, 0]]), span(f, 3, &[&[0, 1, 0]])])
                .unwrap();
        let cert = attain(code.linear(), &p).unwrap();
        assert!(cert.verify(code.linear()).unwrap());
        // rows proportional to (1, 1) and (x^2, x)
        assert_eq!(cert.m.get(0, 0), cert.m.get(0, 1));
        let ratio = t.div(cert.m.get(1, 0), &x2).unwrap();
        assert_eq!(*cert.m.get(1, 1), t.mul(&ratio, &t.x()));
        let empty = KernelPattern::new(2, 3, vec![]).unwrap();
        assert_eq!(
            attain(code.linear(), &empty).unwrap().m,
            ExtMatrix::identity(&t, 2)
        );
        let bad = KernelPattern::new(2, 3, vec![(span(f, 3, &[&[1, 0, 0]]), 2)]).unwrap();
        assert_eq!(attain(code.linear(), &bad).unwrap_err(), Error::NotGkp);
    }

    #[test]
    fn pattern_count_small_case() {
        let f = f2();
        assert_eq!(enumerate_gkp_patterns(&f, 3, 2, 2).unwrap().len(), 29);
    }

    #[test]
    fn ms_examples() {
        let t = FieldTower::create(2, 1, 5, 0).unwrap();
        let f = t.base();
        let a1 = t.x();
        let a2 = t.square(&t.x());
        let embed = Embedding::new(vec![a1.clone(), a2.clone()]);
        let z = FqSubspace::zero(2);
        let base = MsSpec::new(3, vec![(z, 3)], embed.clone()).unwrap();
        assert_eq!(base.matrix(&t).unwrap(), ExtMatrix::identity(&t, 3));
        assert!(base.null_witness(&t).unwrap().is_none());
        let v1 = span(f, 2, &[&[1, 0]]);
        let v2 = span(f, 2, &[&[0, 1]]);
        let equal = MsSpec::new(2, vec![(v1.clone(), 1), (v1.clone(), 1)], embed.clone()).unwrap();
        let verdict = equal.theorem_check(&t).unwrap();
        assert!(verdict.det_zero && !verdict.condition);
        assert_eq!(verdict.status, MsStatus::Consistent);
        let gs = equal.null_witness(&t).unwrap().unwrap();
        assert_eq!(gs[0], gs[1]);
        let distinct = MsSpec::new(2, vec![(v1, 1), (v2, 1)], embed).unwrap();
        let det = distinct.matrix(&t).unwrap().det(&t).unwrap();
        assert_eq!(det, t.add(&a1, &a2));
        assert!(distinct.condition(f).unwrap());
        assert!(MsSpec::new(
            2,
            vec![(FqSubspace::zero(2), 1)],
            Embedding::new(vec![a1.clone(), a2])
        )
        .is_err());
    }
}
