//! JSON interchange formats.
//!
//! Extension-field elements are flat arrays of `e·m` residues modulo `p`
//! (coordinate-major). Base-field values inside subspace bases are packed
//! integers `Σ r_i p^i`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extmat::ExtMatrix;
use crate::ffield::{BaseField, Elt, FieldTower, Fq};
use crate::fqspace::FqSubspace;
use crate::gabidulin::{GabidulinCode, LinearCode};
use crate::highermrd::{CheckMode, CheckerVerdict, Witness};
use crate::patterns::{AttainmentCertificate, KernelPattern};
use crate::qlinpoly::QLinPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QDesc {
    pub p: u32,
    pub e: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerJson {
    pub p: u32,
    pub e: usize,
    pub m: usize,
    pub base_modulus: Vec<u32>,
    /// Each coefficient of the extension modulus as `e` residues.
    pub ext_modulus: Vec<Vec<u32>>,
}

impl TowerJson {
    pub fn from_tower(t: &FieldTower) -> Self {
        Self {
            p: t.p(),
            e: t.e(),
            m: t.m(),
            base_modulus: t.base().modulus().to_vec(),
            ext_modulus: t
                .ext_modulus()
                .iter()
                .map(|&c| t.base().residues(c))
                .collect(),
        }
    }

    pub fn to_tower(&self) -> Result<FieldTower> {
        let base = BaseField::with_modulus(self.p, self.base_modulus.clone())?;
        let ext = self
            .ext_modulus
            .iter()
            .map(|r| base.from_residues(r))
            .collect::<Result<Vec<Fq>>>()?;
        let t = FieldTower::with_moduli(self.p, self.base_modulus.clone(), ext)?;
        if t.e() != self.e || t.m() != self.m {
            return Err(Error::Malformed(
                "tower degrees disagree with moduli".into(),
            ));
        }
        Ok(t)
    }
}

pub fn elt_to_json(t: &FieldTower, a: &Elt) -> Vec<u32> {
    t.to_residues(a)
}

pub fn elt_from_json(t: &FieldTower, r: &[u32]) -> Result<Elt> {
    t.from_residues(r)
}

fn elts_to_json(t: &FieldTower, v: &[Elt]) -> Vec<Vec<u32>> {
    v.iter().map(|a| elt_to_json(t, a)).collect()
}

fn elts_from_json(t: &FieldTower, v: &[Vec<u32>]) -> Result<Vec<Elt>> {
    v.iter().map(|r| elt_from_json(t, r)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient_dim: usize,
    pub q_desc: QDesc,
    pub basis: Vec<Vec<u32>>,
}

impl SubspaceJson {
    pub fn from_subspace(f: &BaseField, v: &FqSubspace) -> Self {
        Self {
            ambient_dim: v.ambient_dim(),
            q_desc: QDesc { p: f.p(), e: f.e() },
            basis: v
                .basis()
                .iter()
                .map(|r| r.iter().map(|&c| c as u32).collect())
                .collect(),
        }
    }

    /// Rebuilds the subspace. In strict mode a basis that is not already in
    /// reduced row echelon form is rejected; otherwise it is re-canonicalized.
    pub fn to_subspace(&self, f: &BaseField, strict: bool) -> Result<FqSubspace> {
        if self.q_desc.p != f.p() || self.q_desc.e != f.e() {
            return Err(Error::TowerMismatch);
        }
        let rows = self
            .basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&c| {
                        if (c as usize) < f.q() {
                            Ok(c as Fq)
                        } else {
                            Err(Error::TowerMismatch)
                        }
                    })
                    .collect::<Result<Vec<Fq>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if strict {
            FqSubspace::from_rref_basis(f, self.ambient_dim, rows)
        } else {
            FqSubspace::span_of(f, self.ambient_dim, &rows)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QLinPolyJson {
    pub q_desc: QDesc,
    pub coeffs: Vec<Vec<u32>>,
}

impl QLinPolyJson {
    pub fn from_poly(t: &FieldTower, f: &QLinPoly) -> Self {
        Self {
            q_desc: QDesc { p: t.p(), e: t.e() },
            coeffs: elts_to_json(t, f.coeffs()),
        }
    }

    pub fn to_poly(&self, t: &FieldTower) -> Result<QLinPoly> {
        if self.q_desc.p != t.p() || self.q_desc.e != t.e() {
            return Err(Error::TowerMismatch);
        }
        Ok(QLinPoly::from_coeffs(elts_from_json(t, &self.coeffs)?))
    }
}

/// A code file: Gabidulin codes carry `alphas`, general codes a `generator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub tower: TowerJson,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Vec<Vec<u32>>>>,
}

/// A code loaded from JSON.
#[derive(Clone, Debug)]
pub enum LoadedCode {
    Gabidulin(GabidulinCode),
    Linear(LinearCode),
}

impl LoadedCode {
    pub fn linear(&self) -> &LinearCode {
        match self {
            LoadedCode::Gabidulin(c) => c.linear(),
            LoadedCode::Linear(c) => c,
        }
    }
}

impl CodeJson {
    pub fn from_gabidulin(c: &GabidulinCode) -> Self {
        let t = c.tower();
        Self {
            tower: TowerJson::from_tower(t),
            n: c.n(),
            k: c.k(),
            alphas: Some(elts_to_json(t, c.alphas())),
            generator: None,
        }
    }

    pub fn from_linear(c: &LinearCode) -> Self {
        let t = c.tower();
        Self {
            tower: TowerJson::from_tower(t),
            n: c.n(),
            k: c.k(),
            alphas: None,
            generator: Some(
                c.generator()
                    .to_rows()
                    .iter()
                    .map(|r| elts_to_json(t, r))
                    .collect(),
            ),
        }
    }

    pub fn load(&self) -> Result<LoadedCode> {
        let t = Arc::new(self.tower.to_tower()?);
        let code = match (&self.alphas, &self.generator) {
            (Some(a), _) => LoadedCode::Gabidulin(GabidulinCode::new(
                t.clone(),
                self.k,
                elts_from_json(&t, a)?,
            )?),
            (None, Some(g)) => {
                let rows = g
                    .iter()
                    .map(|r| elts_from_json(&t, r))
                    .collect::<Result<Vec<_>>>()?;
                LoadedCode::Linear(LinearCode::new(
                    t.clone(),
                    ExtMatrix::from_rows(self.n, rows)?,
                )?)
            }
            (None, None) => {
                return Err(Error::Malformed("code needs alphas or a generator".into()))
            }
        };
        let lin = code.linear();
        if lin.n() != self.n || lin.k() != self.k {
            return Err(Error::Malformed(
                "declared n, k disagree with the code data".into(),
            ));
        }
        Ok(code)
    }

    pub fn parse(s: &str) -> Result<LoadedCode> {
        serde_json::from_str::<CodeJson>(s)
            .map_err(|e| Error::Malformed(e.to_string()))?
            .load()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternEntryJson {
    pub subspace: SubspaceJson,
    pub delta: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub k: usize,
    pub entries: Vec<PatternEntryJson>,
}

impl PatternJson {
    pub fn from_pattern(f: &BaseField, p: &KernelPattern) -> Self {
        Self {
            k: p.k(),
            entries: p
                .entries()
                .iter()
                .map(|(v, d)| PatternEntryJson {
                    subspace: SubspaceJson::from_subspace(f, v),
                    delta: *d,
                })
                .collect(),
        }
    }

    pub fn to_pattern(&self, f: &BaseField, n: usize) -> Result<KernelPattern> {
        let entries = self
            .entries
            .iter()
            .map(|e| Ok((e.subspace.to_subspace(f, false)?, e.delta)))
            .collect::<Result<Vec<_>>>()?;
        KernelPattern::new(self.k, n, entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedFlags {
    pub det_nonzero: bool,
    pub rows_annihilate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(rename = "M")]
    pub m: Vec<Vec<Vec<u32>>>,
    pub pattern: PatternJson,
    pub verified: VerifiedFlags,
}

impl CertificateJson {
    pub fn from_certificate(t: &FieldTower, c: &AttainmentCertificate) -> Self {
        Self {
            m: c.m.to_rows().iter().map(|r| elts_to_json(t, r)).collect(),
            pattern: PatternJson::from_pattern(t.base(), &c.pattern),
            verified: VerifiedFlags {
                det_nonzero: c.det_nonzero,
                rows_annihilate: c.rows_annihilate,
            },
        }
    }
}

/// JSON form of a witness.
pub fn witness_to_json(t: &FieldTower, w: &Witness) -> Value {
    let f = t.base();
    match w {
        Witness::Tuple {
            spaces,
            actual,
            generic,
        } => json!({
            "kind": "tuple",
            "subspaces": spaces.iter().map(|v| SubspaceJson::from_subspace(f, v)).collect::<Vec<_>>(),
            "actual": actual,
            "generic": generic,
        }),
        Witness::Center {
            center,
            codewords,
            total,
            bound,
        } => json!({
            "kind": "center",
            "center": elts_to_json(t, center),
            "codewords": codewords.iter().map(|c| elts_to_json(t, c)).collect::<Vec<_>>(),
            "total_distance": total,
            "bound": bound,
        }),
        Witness::Singular(v) => json!({
            "kind": "singular",
            "subspace": SubspaceJson::from_subspace(f, v),
        }),
        Witness::Pattern(p) => json!({
            "kind": "pattern",
            "pattern": PatternJson::from_pattern(f, p),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub property: String,
    pub params: Value,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub tuples_checked: u64,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl VerdictJson {
    pub fn from_verdict(code: &LinearCode, v: &CheckerVerdict) -> Self {
        let t = code.tower();
        let seed = match v.mode {
            CheckMode::Sampled { seed, .. } => Some(seed),
            _ => None,
        };
        Self {
            property: v.property.clone(),
            params: json!({"p": t.p(), "e": t.e(), "m": t.m(), "n": code.n(), "k": code.k(), "ell": v.ell}),
            holds: v.holds,
            witness: v.witness.as_ref().map(|w| witness_to_json(t, w)),
            tuples_checked: v.tuples_checked,
            mode: v.mode.name().to_string(),
            seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn tower_round_trip() {
        let t = FieldTower::create(3, 2, 3, 0).unwrap();
        let j = TowerJson::from_tower(&t);
        let s = serde_json::to_string(&j).unwrap();
        let back: TowerJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_tower().unwrap(), t);
        assert_eq!(j.ext_modulus.len(), 4);
        assert!(j.ext_modulus.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn code_round_trip() {
        let t = Arc::new(FieldTower::create(2, 1, 4, 0).unwrap());
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        let g = GabidulinCode::random(t.clone(), 3, 2, &mut rng).unwrap();
        let s = serde_json::to_string(&CodeJson::from_gabidulin(&g)).unwrap();
        let LoadedCode::Gabidulin(back) = CodeJson::parse(&s).unwrap() else {
            panic!()
        };
        assert_eq!(back.alphas(), g.alphas());
        let lin = LinearCode::random(t, 3, 2, &mut rng).unwrap();
        let s = serde_json::to_string(&CodeJson::from_linear(&lin)).unwrap();
        assert!(CodeJson::parse(&s).unwrap().linear().same_code(&lin));
        assert!(matches!(
            CodeJson::parse("{\"n\": 1}"),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn subspace_strict_and_lenient() {
        let f = BaseField::prime(2).unwrap();
        let j = SubspaceJson {
            ambient_dim: 3,
            q_desc: QDesc { p: 2, e: 1 },
            basis: vec![vec![1, 1, 0], vec![0, 1, 0]],
        };
        assert!(j.to_subspace(&f, true).is_err());
        let v = j.to_subspace(&f, false).unwrap();
        assert_eq!(v.basis(), &[vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(
            SubspaceJson::from_subspace(&f, &v)
                .to_subspace(&f, true)
                .unwrap(),
            v
        );
    }
}
