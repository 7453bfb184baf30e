//! Higher-order MRD checks: intersection dimensions of pushed-forward
//! subspaces, average-radius list decodability, and their agreement with
//! generic kernel pattern attainment.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffield::{BaseField, Elt};
use crate::fqspace::{enumerate_subspaces_up_to, FqSubspace};
use crate::gabidulin::{rank_fq, LinearCode};
use crate::limits;
use crate::partitions::PartitionIter;
use crate::patterns::{attain, enumerate_gkp_patterns, subset_intersections, KernelPattern};

/// How tuples of subspaces are visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Every ordered tuple of subspaces of dimension at most `k`.
    Exhaustive,
    /// `samples` tuples drawn uniformly with a fixed seed.
    Sampled { samples: u64, seed: u64 },
    /// MRD plus agreement of zero/nonzero intersections on every tuple.
    ZeroPattern,
}

impl CheckMode {
    pub fn name(&self) -> &'static str {
        match self {
            CheckMode::Exhaustive => "exhaustive",
            CheckMode::Sampled { .. } => "sampled",
            CheckMode::ZeroPattern => "zero-pattern",
        }
    }
}

/// Evidence that a property fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Subspaces whose image intersection has the wrong dimension.
    Tuple {
        spaces: Vec<FqSubspace>,
        actual: usize,
        generic: usize,
    },
    /// A center and codewords (the first is zero) within total distance `total ≤ bound`.
    Center {
        center: Vec<Elt>,
        codewords: Vec<Vec<Elt>>,
        total: usize,
        bound: usize,
    },
    /// A `k`-dimensional subspace `V` with singular `G·A`, `⟨A⟩ = V`.
    Singular(FqSubspace),
    /// A generic kernel pattern that could not be attained.
    Pattern(KernelPattern),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckerVerdict {
    pub property: String,
    pub ell: usize,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub tuples_checked: u64,
    pub mode: CheckMode,
}

/// `max` over partitions `P_1 ⊔ … ⊔ P_s` of `[ℓ]` of
/// `Σ_i dim ⋂_{j∈P_i} V_j − (s−1)k`.
pub fn generic_intersection_dim(f: &BaseField, spaces: &[FqSubspace], k: usize) -> Result<usize> {
    let Some(n) = spaces.first().map(FqSubspace::ambient_dim) else {
        return Ok(k);
    };
    if spaces.iter().any(|v| v.dim() > k) {
        return Err(Error::InvalidParameter(
            "subspace dimension exceeds k".into(),
        ));
    }
    let refs: Vec<&FqSubspace> = spaces.iter().collect();
    let inter = subset_intersections(f, n, &refs)?;
    generic_from_intersections(&inter, spaces.len(), k)
}

fn generic_from_intersections(inter: &[FqSubspace], ell: usize, k: usize) -> Result<usize> {
    let mut best = i64::MIN;
    for partition in PartitionIter::new(ell)? {
        let s = partition.len() as i64;
        let total: i64 = partition
            .iter()
            .map(|block| inter[block.iter().fold(0usize, |m, &i| m | 1 << i)].dim() as i64)
            .sum();
        best = best.max(total - (s - 1) * k as i64);
    }
    Ok(best.max(0) as usize)
}

/// `dim ⋂ G_{V_i}` for the code's generator.
pub fn actual_intersection_dim(code: &LinearCode, spaces: &[FqSubspace]) -> Result<usize> {
    if spaces.is_empty() {
        return Ok(code.k());
    }
    code.intersection_dim(spaces)
}

struct TupleSource {
    subspaces: Vec<FqSubspace>,
    ell: usize,
}

impl TupleSource {
    fn new(code: &LinearCode, ell: usize) -> Result<Self> {
        let subspaces = enumerate_subspaces_up_to(code.tower().base(), code.n(), code.k())?;
        Ok(Self { subspaces, ell })
    }

    fn count(&self) -> u128 {
        limits::pow_saturating(self.subspaces.len() as u128, self.ell as u64)
    }

    fn tuple(&self, mut idx: u128) -> Vec<FqSubspace> {
        let base = self.subspaces.len() as u128;
        let mut digits = vec![0usize; self.ell];
        for d in digits.iter_mut().rev() {
            *d = (idx % base) as usize;
            idx /= base;
        }
        digits
            .into_iter()
            .map(|i| self.subspaces[i].clone())
            .collect()
    }
}

/// Checks `dim ⋂ G_{V_i} = generic dimension` over `ℓ`-tuples of subspaces
/// of dimension at most `k`.
///
/// An MRD code never has a smaller intersection than the generic value; such a
/// tuple is reported as [`Error::InternalInvariantViolated`].
pub fn is_mrd_ell(code: &LinearCode, ell: usize, mode: CheckMode) -> Result<CheckerVerdict> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ℓ must be positive".into()));
    }
    PartitionIter::new(ell)?;
    let f = code.tower().base();
    let k = code.k();
    let mut verdict = CheckerVerdict {
        property: format!("MRD({ell})"),
        ell,
        holds: true,
        witness: None,
        tuples_checked: 0,
        mode,
    };
    if mode == CheckMode::ZeroPattern {
        if let Some(v) = singular_subspace(code)? {
            verdict.holds = false;
            verdict.witness = Some(Witness::Singular(v));
            return Ok(verdict);
        }
    }
    let source = TupleSource::new(code, ell)?;
    let indices: Box<dyn Iterator<Item = u128>> = match mode {
        CheckMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let total = source.count();
            Box::new((0..samples).map(move |_| rng.gen_range(0..total)))
        }
        _ => {
            limits::check("subspace tuples", source.count())?;
            Box::new(0..source.count())
        }
    };
    let mut mrd_known: Option<bool> = None;
    for idx in indices {
        let spaces = source.tuple(idx);
        verdict.tuples_checked += 1;
        let refs: Vec<&FqSubspace> = spaces.iter().collect();
        let inter = subset_intersections(f, code.n(), &refs)?;
        let generic = generic_from_intersections(&inter, ell, k)?;
        let actual = actual_intersection_dim(code, &spaces)?;
        let mismatch = match mode {
            CheckMode::ZeroPattern => (actual == 0) != (generic == 0),
            _ => actual != generic,
        };
        if actual < generic {
            let is_mrd = match mrd_known {
                Some(b) => b,
                None => *mrd_known.insert(singular_subspace(code)?.is_none()),
            };
            if is_mrd {
                return Err(Error::InternalInvariantViolated(format!(
                    "intersection dimension {actual} below generic value {generic} for an MRD code"
                )));
            }
        }
        if mismatch {
            verdict.holds = false;
            verdict.witness = Some(Witness::Tuple {
                spaces,
                actual,
                generic,
            });
            return Ok(verdict);
        }
    }
    Ok(verdict)
}

/// A `k`-dimensional subspace with singular `G·A`, if the code is not MRD.
pub fn singular_subspace(code: &LinearCode) -> Result<Option<FqSubspace>> {
    let t = code.tower();
    for v in crate::fqspace::enumerate_subspaces(t.base(), code.n(), code.k())? {
        let ga = crate::gabidulin::times_subspace(t, code.generator(), &v)?;
        if ga.det(t)?.is_zero() {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Brute-force average-radius list decodability for every `L ≤ ℓ`: each
/// center and `L + 1` distinct codewords have total rank distance above
/// `L(n − k)`.
///
/// By translation invariance and linearity only codeword sets containing zero
/// are needed, and for a fixed center the worst set takes the `L` nonzero
/// codewords nearest to it.
pub fn is_ld_mrd(code: &LinearCode, ell: usize) -> Result<CheckerVerdict> {
    let t = code.tower();
    let (n, k) = (code.n(), code.k());
    let codewords: Vec<Vec<Elt>> = code.codewords()?.skip(1).collect();
    let order = t.order().ok_or_else(|| Error::SizeGuardExceeded {
        what: "centers".into(),
        count: u128::MAX,
        limit: limits::current() as u128,
    })?;
    let centers = limits::pow_saturating(order as u128, n as u64);
    limits::check("centers", centers)?;
    limits::check(
        "center-codeword pairs",
        centers.saturating_mul(codewords.len() as u128 + 1),
    )?;
    let mut verdict = CheckerVerdict {
        property: format!("LD-MRD(<={ell})"),
        ell,
        holds: true,
        witness: None,
        tuples_checked: 0,
        mode: CheckMode::Exhaustive,
    };
    let max_l = ell.min(codewords.len());
    for mut idx in 0..centers {
        let y: Vec<Elt> = (0..n)
            .map(|_| {
                let e = t.from_index((idx % order as u128) as u64);
                idx /= order as u128;
                e
            })
            .collect();
        verdict.tuples_checked += 1;
        let base = rank_fq(t, &y);
        let mut dists: Vec<(usize, usize)> = codewords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let diff: Vec<Elt> = y.iter().zip(c).map(|(a, b)| t.sub(a, b)).collect();
                (rank_fq(t, &diff), i)
            })
            .collect();
        dists.sort_unstable();
        let mut total = base;
        for (l, &(d, _)) in dists.iter().take(max_l).enumerate() {
            total += d;
            let bound = (l + 1) * (n - k);
            if total <= bound {
                let mut chosen = vec![vec![t.zero(); n]];
                chosen.extend(dists[..=l].iter().map(|&(_, i)| codewords[i].clone()));
                verdict.holds = false;
                verdict.witness = Some(Witness::Center {
                    center: y,
                    codewords: chosen,
                    total,
                    bound,
                });
                return Ok(verdict);
            }
        }
    }
    Ok(verdict)
}

/// The same property decided through the dual: `C^⊥` is MRD(`ℓ + 1`).
pub fn is_ld_mrd_via_dual(code: &LinearCode, ell: usize) -> Result<CheckerVerdict> {
    let dual = code.dual()?;
    let mut v = if ell == 0 {
        let singular = singular_subspace(&dual)?;
        CheckerVerdict {
            property: String::new(),
            ell,
            holds: singular.is_none(),
            witness: singular.map(Witness::Singular),
            tuples_checked: 0,
            mode: CheckMode::Exhaustive,
        }
    } else {
        is_mrd_ell(&dual, ell + 1, CheckMode::Exhaustive)?
    };
    v.property = format!("LD-MRD(<={ell}) via dual MRD({})", ell + 1);
    v.ell = ell;
    Ok(v)
}

/// Whether the code attains every generic kernel pattern of order at most
/// `order`; on failure returns the first pattern without a certificate.
///
/// A code that is not MRD attains no full set of patterns of order 1, so it is
/// rejected before any pattern is tried.
pub fn gkp_verdict(code: &LinearCode, order: usize) -> Result<CheckerVerdict> {
    let mut verdict = CheckerVerdict {
        property: format!("GKP({order})"),
        ell: order,
        holds: true,
        witness: None,
        tuples_checked: 0,
        mode: CheckMode::Exhaustive,
    };
    if let Some(v) = singular_subspace(code)? {
        verdict.holds = false;
        verdict.witness = Some(Witness::Singular(v));
        return Ok(verdict);
    }
    for p in enumerate_gkp_patterns(code.tower().base(), code.n(), code.k(), order)? {
        verdict.tuples_checked += 1;
        match attain(code, &p) {
            Ok(_) => {}
            Err(Error::DirectSumFailure(_)) => {
                verdict.holds = false;
                verdict.witness = Some(Witness::Pattern(p));
                return Ok(verdict);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(verdict)
}

/// Results of the three equivalent properties for one code.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub ell: usize,
    pub gkp: CheckerVerdict,
    pub mrd: CheckerVerdict,
    /// `None` when the dual brute force is out of range or the dual is zero.
    pub dual_ld_mrd: Option<CheckerVerdict>,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        self.gkp.holds == self.mrd.holds
            && self
                .dual_ld_mrd
                .as_ref()
                .is_none_or(|v| v.holds == self.mrd.holds)
    }
}

/// Evaluates GKP(`ℓ+1`), MRD(`ℓ+1`) and LD-MRD(`≤ℓ`) of the dual.
/// For `ℓ = 0` the last property is taken to be the dual being MRD.
pub fn equivalence_harness(code: &LinearCode, ell: usize) -> Result<EquivalenceReport> {
    let gkp = gkp_verdict(code, ell + 1)?;
    let mrd = is_mrd_ell(code, ell + 1, CheckMode::Exhaustive)?;
    let dual_ld_mrd = if code.k() == code.n() {
        None
    } else {
        let dual = code.dual()?;
        let res = if ell == 0 {
            singular_subspace(&dual).map(|s| CheckerVerdict {
                property: "MRD".into(),
                ell: 0,
                holds: s.is_none(),
                witness: s.map(Witness::Singular),
                tuples_checked: 0,
                mode: CheckMode::Exhaustive,
            })
        } else {
            is_ld_mrd(&dual, ell)
        };
        match res {
            Ok(v) => Some(v),
            Err(Error::SizeGuardExceeded { .. }) => None,
            Err(e) => return Err(e),
        }
    };
    Ok(EquivalenceReport {
        ell,
        gkp,
        mrd,
        dual_ld_mrd,
    })
}

/// `1 − 3k q^{nk·min(ℓ,k) + k − m}`: lower bound on the probability that a
/// Gabidulin code with uniformly random independent points is GKP(`ℓ`).
/// May be negative when `m` is small.
pub fn gkp_probability_floor(q: u64, n: usize, k: usize, ell: usize, m: usize) -> f64 {
    let exp = (n * k * ell.min(k) + k) as f64 - m as f64;
    1.0 - 3.0 * k as f64 * (q as f64).powf(exp)
}

/// Floor for LD-MRD(`≤ℓ`) of a random Gabidulin code: the GKP(`ℓ+1`) floor
/// of its dual, which is a Gabidulin code of dimension `n − k`.
pub fn ld_mrd_probability_floor(q: u64, n: usize, k: usize, ell: usize, m: usize) -> f64 {
    gkp_probability_floor(q, n, n - k, ell + 1, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extmat::ExtMatrix;
    use crate::ffield::FieldTower;
    use crate::gabidulin::GabidulinCode;
    use std::sync::Arc;

    fn span(f: &BaseField, n: usize, vs: &[&[u8]]) -> FqSubspace {
        FqSubspace::span_of(f, n, &vs.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn generic_dim_examples() {
        let f = BaseField::prime(2).unwrap();
        let plane = span(&f, 3, &[&[1, 1, 0]]);
        assert_eq!(generic_intersection_dim(&f, &[plane], 2).unwrap(), 1);
        let a = span(&f, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = span(&f, 3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(generic_intersection_dim(&f, &[a, b], 2).unwrap(), 2);
        let e1 = span(&f, 3, &[&[1, 0, 0]]);
        let e2 = span(&f, 3, &[&[0, 1, 0]]);
        assert_eq!(generic_intersection_dim(&f, &[e1, e2], 2).unwrap(), 0);
    }

    #[test]
    fn non_mrd_code_fails_at_order_one() {
        let t = Arc::new(FieldTower::create(2, 1, 3, 0).unwrap());
        let rows = vec![
            vec![t.one(), t.zero(), t.zero()],
            vec![t.zero(), t.one(), t.zero()],
        ];
        let code = LinearCode::new(t, ExtMatrix::from_rows(3, rows).unwrap()).unwrap();
        let v = is_mrd_ell(&code, 1, CheckMode::Exhaustive).unwrap();
        assert!(!v.holds);
        let Some(Witness::Tuple {
            actual, generic, ..
        }) = v.witness
        else {
            panic!()
        };
        // a rank drop in G·A shrinks the image below its generic dimension
        assert!(actual < generic);
        assert!(!is_ld_mrd(&code, 1).unwrap().holds);
        assert!(!gkp_verdict(&code, 1).unwrap().holds);
    }

    #[test]
    fn gabidulin_f8_order_one() {
        let t = Arc::new(FieldTower::create(2, 1, 3, 0).unwrap());
        let alphas = vec![t.one(), t.x(), t.square(&t.x())];
        let code = GabidulinCode::new(t, 2, alphas).unwrap();
        let lin = code.linear();
        assert!(is_mrd_ell(lin, 1, CheckMode::Exhaustive).unwrap().holds);
        assert!(is_ld_mrd(lin, 1).unwrap().holds);
        let report = equivalence_harness(lin, 0).unwrap();
        assert!(report.agree() && report.mrd.holds);
    }

    #[test]
    fn floors() {
        assert!(
            (gkp_probability_floor(2, 3, 2, 2, 28) - (1.0 - 6.0 * 2f64.powi(-14))).abs() < 1e-15
        );
        assert!(
            (ld_mrd_probability_floor(2, 3, 1, 2, 28) - (1.0 - 6.0 * 2f64.powi(-14))).abs() < 1e-15
        );
    }
}
