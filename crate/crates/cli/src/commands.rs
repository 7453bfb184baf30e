//! Subcommand implementations. Each returns a report; the caller decides
//! where it goes.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use rml_core::fqspace::{enumerate_subspaces_up_to, fq_rank, FqSubspace};
use rml_core::gabidulin::{dual_basis, rank_fq, sample_independent};
use rml_core::highermrd::{
    equivalence_harness, gkp_probability_floor, gkp_verdict, is_ld_mrd, is_ld_mrd_via_dual,
    is_mrd_ell, ld_mrd_probability_floor, CheckMode, CheckerVerdict,
};
use rml_core::json::{elt_from_json, elt_to_json, CodeJson, LoadedCode, SubspaceJson, VerdictJson};
use rml_core::patterns::{MsSpec, MsStatus};
use rml_core::{BaseField, Elt, Embedding, FieldTower, GabidulinCode, LinearCode};

use crate::args::{Command, CommonArgs, EncodeArgs, LdMrdArgs, Mode, MsScanArgs};
use crate::error::CliError;
use crate::report::{ExperimentReport, TrialRecord};

/// A finished run: the report plus whether a theorem-violating witness was found.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: ExperimentReport,
    pub violation: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.violation)
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut outcome = match command {
        Command::GkpMc(a) => cmd_gkp_mc(a),
        Command::Equivalence(a) => cmd_equivalence(a),
        Command::LdMrd(a) => cmd_ld_mrd(a),
        Command::MsScan(a) => cmd_ms_scan(a),
        Command::Dual(a) => cmd_dual(a),
        Command::Intersection(a) => cmd_intersection(a),
        Command::Encode(a) => cmd_encode(a),
        Command::MinDistance(a) => cmd_min_distance(a),
    }?;
    outcome.report.wall_clock_ms = start.elapsed().as_millis() as u64;
    Ok(outcome)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of the independent random stream for one trial.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

fn validate(a: &CommonArgs) -> Result<(), CliError> {
    if a.code.is_some() {
        return Ok(());
    }
    if a.k == 0 || a.k > a.n {
        return Err(CliError::Validation(format!(
            "need 1 ≤ k ≤ n, got k={}, n={}",
            a.k, a.n
        )));
    }
    if a.n > a.m {
        return Err(CliError::Validation(format!(
            "need n ≤ m, got n={}, m={}",
            a.n, a.m
        )));
    }
    Ok(())
}

fn tower(a: &CommonArgs) -> Result<Arc<FieldTower>, CliError> {
    Ok(Arc::new(FieldTower::create(a.p, a.e, a.m, a.seed)?))
}

fn load_code(path: &Path) -> Result<LoadedCode, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(CodeJson::parse(&text)?)
}

fn code_json(code: &LoadedCode) -> Value {
    match code {
        LoadedCode::Gabidulin(c) => json!(CodeJson::from_gabidulin(c)),
        LoadedCode::Linear(c) => json!(CodeJson::from_linear(c)),
    }
}

fn check_mode(a: &CommonArgs, seed: u64) -> CheckMode {
    match a.mode {
        Mode::Exhaustive => CheckMode::Exhaustive,
        Mode::Sampled => CheckMode::Sampled {
            samples: a.samples,
            seed,
        },
    }
}

struct TrialOutput {
    passed: bool,
    details: Value,
    findings: Vec<Value>,
}

/// Runs trials in parallel; records come back in index order.
fn run_trials<F>(a: &CommonArgs, trial: F) -> Result<(Vec<TrialRecord>, Vec<Value>), CliError>
where
    F: Fn(u64, u64, &mut ChaCha8Rng) -> Result<TrialOutput, CliError> + Sync,
{
    let results: Vec<Result<(TrialRecord, Vec<Value>), CliError>> = (0..a.trials)
        .into_par_iter()
        .map(|index| {
            let seed = trial_seed(a.seed, index);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let out = trial(index, seed, &mut rng)?;
            Ok((
                TrialRecord {
                    index,
                    seed,
                    passed: out.passed,
                    details: out.details,
                },
                out.findings,
            ))
        })
        .collect();
    let mut records = Vec::with_capacity(results.len());
    let mut findings = Vec::new();
    for r in results {
        let (rec, f) = r?;
        records.push(rec);
        findings.extend(f);
    }
    Ok((records, findings))
}

fn finish(
    name: &str,
    config: Value,
    records: Vec<TrialRecord>,
    findings: Vec<Value>,
    floor: Option<f64>,
) -> Outcome {
    let mut report = ExperimentReport::new(name, config, records);
    report.floor = floor;
    let violation = !findings.is_empty();
    report.findings = findings;
    Outcome { report, violation }
}

fn verdict_json(code: &LinearCode, v: &CheckerVerdict) -> Value {
    json!(VerdictJson::from_verdict(code, v))
}

fn elts_json(t: &FieldTower, v: &[Elt]) -> Value {
    json!(v.iter().map(|a| elt_to_json(t, a)).collect::<Vec<_>>())
}

/// Random Gabidulin codes checked for attainment of every generic kernel
/// pattern of order at most `ℓ`.
pub fn cmd_gkp_mc(a: &CommonArgs) -> Result<Outcome, CliError> {
    validate(a)?;
    if a.ell == 0 {
        return Err(CliError::Validation("ℓ must be positive".into()));
    }
    let t = tower(a)?;
    let (records, findings) = run_trials(a, |_, _, rng| {
        let code = GabidulinCode::random(t.clone(), a.n, a.k, rng)?;
        let v = gkp_verdict(code.linear(), a.ell)?;
        Ok(TrialOutput {
            passed: v.holds,
            details: json!({
                "code": CodeJson::from_gabidulin(&code),
                "verdict": verdict_json(code.linear(), &v),
            }),
            findings: Vec::new(),
        })
    })?;
    let floor = gkp_probability_floor(t.q() as u64, a.n, a.k, a.ell, a.m);
    Ok(finish("gkp-mc", json!(a), records, findings, Some(floor)))
}

/// GKP(`ℓ+1`), MRD(`ℓ+1`) and dual LD-MRD(`≤ℓ`) on alternating Gabidulin and
/// random-generator codes; any disagreement is a finding.
pub fn cmd_equivalence(a: &CommonArgs) -> Result<Outcome, CliError> {
    validate(a)?;
    let t = tower(a)?;
    let (records, findings) = run_trials(a, |index, _, rng| {
        let code = if index % 2 == 0 {
            LoadedCode::Gabidulin(GabidulinCode::random(t.clone(), a.n, a.k, rng)?)
        } else {
            LoadedCode::Linear(LinearCode::random(t.clone(), a.n, a.k, rng)?)
        };
        let lin = code.linear();
        let r = equivalence_harness(lin, a.ell)?;
        let dual = r.dual_ld_mrd.as_ref().map(|v| v.holds);
        let details = json!({
            "kind": if index % 2 == 0 { "gabidulin" } else { "random" },
            "code": code_json(&code),
            "gkp": r.gkp.holds,
            "mrd": r.mrd.holds,
            "dual_ld_mrd": dual,
            "agree": r.agree(),
            "gkp_verdict": verdict_json(lin, &r.gkp),
            "mrd_verdict": verdict_json(lin, &r.mrd),
        });
        let findings = if r.agree() {
            Vec::new()
        } else {
            vec![json!({"trial": index, "disagreement": details})]
        };
        Ok(TrialOutput {
            passed: r.agree(),
            details,
            findings,
        })
    })?;
    Ok(finish("equivalence", json!(a), records, findings, None))
}

/// LD-MRD(`≤ℓ`) of random Gabidulin codes via MRD(`ℓ+1`) of the dual, with
/// an optional brute-force comparison.
pub fn cmd_ld_mrd(args: &LdMrdArgs) -> Result<Outcome, CliError> {
    let a = &args.common;
    validate(a)?;
    if a.k == a.n {
        return Err(CliError::Validation("need k < n for a nonzero dual".into()));
    }
    let t = tower(a)?;
    let (records, findings) = run_trials(a, |index, _, rng| {
        let code = GabidulinCode::random(t.clone(), a.n, a.k, rng)?;
        let lin = code.linear();
        let via_dual = is_ld_mrd_via_dual(lin, a.ell)?;
        let mut details = json!({
            "code": CodeJson::from_gabidulin(&code),
            "via_dual": verdict_json(lin, &via_dual),
        });
        let mut findings = Vec::new();
        if args.brute {
            let brute = is_ld_mrd(lin, a.ell)?;
            details["brute_force"] = verdict_json(lin, &brute);
            if brute.holds != via_dual.holds {
                findings.push(
                    json!({"trial": index, "brute_force": brute.holds, "via_dual": via_dual.holds}),
                );
            }
        }
        Ok(TrialOutput {
            passed: via_dual.holds,
            details,
            findings,
        })
    })?;
    let floor = ld_mrd_probability_floor(t.q() as u64, a.n, a.k, a.ell, a.m);
    Ok(finish(
        "ld-mrd",
        json!(args),
        records,
        findings,
        Some(floor),
    ))
}

/// A scanned spec: its dimension and `(subspace, multiplicity)` parts.
pub type SpecShape = (usize, Vec<(FqSubspace, usize)>);

/// Every multiset of at most `max_parts` pairs `(V, r)` with `Σ r = k'` and
/// `dim V + r ≤ k'`, for `1 ≤ k' ≤ k_max`, over subspaces of `F_q^n`.
pub fn ms_spec_shapes(
    f: &BaseField,
    n: usize,
    k_max: usize,
    max_parts: usize,
) -> Result<Vec<SpecShape>, CliError> {
    let subspaces = enumerate_subspaces_up_to(f, n, k_max.saturating_sub(1))?;
    let mut out = Vec::new();
    for k in 1..=k_max {
        let cands: Vec<(FqSubspace, usize)> = (1..=k)
            .flat_map(|r| {
                subspaces
                    .iter()
                    .filter(move |v| v.dim() + r <= k)
                    .map(move |v| (v.clone(), r))
            })
            .collect();
        let mut stack = Vec::new();
        collect_shapes(k, &cands, 0, k, max_parts, &mut stack, &mut out);
    }
    Ok(out)
}

fn collect_shapes(
    k: usize,
    cands: &[(FqSubspace, usize)],
    start: usize,
    remaining: usize,
    max_parts: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<SpecShape>,
) {
    if remaining == 0 {
        out.push((k, stack.iter().map(|&i| cands[i].clone()).collect()));
        return;
    }
    if stack.len() == max_parts {
        return;
    }
    for i in start..cands.len() {
        if cands[i].1 <= remaining {
            stack.push(i);
            collect_shapes(k, cands, i, remaining - cands[i].1, max_parts, stack, out);
            stack.pop();
        }
    }
}

fn spec_json(f: &BaseField, k: usize, parts: &[(FqSubspace, usize)]) -> Value {
    json!({
        "k": k,
        "parts": parts
            .iter()
            .map(|(v, r)| json!({"subspace": SubspaceJson::from_subspace(f, v), "r": r}))
            .collect::<Vec<_>>(),
    })
}

/// Exhaustive `M_S` scan per random point draw. A nonzero determinant with a
/// failing condition is a finding; zero determinants with a holding condition
/// are re-tested once with fresh points.
pub fn cmd_ms_scan(args: &MsScanArgs) -> Result<Outcome, CliError> {
    let a = &args.common;
    if a.k == 0 || a.n > a.m {
        return Err(CliError::Validation("need k ≥ 1 and n ≤ m".into()));
    }
    let t = tower(a)?;
    let shapes = ms_spec_shapes(t.base(), a.n, a.k, args.max_parts)?;
    let (records, findings) = run_trials(a, |index, _, rng| {
        let embed = Embedding::new(sample_independent(&t, a.n, rng)?);
        let mut hard = Vec::new();
        let mut missed = Vec::new();
        let mut condition_false = 0;
        for (i, (k, parts)) in shapes.iter().enumerate() {
            let spec = MsSpec::new(*k, parts.clone(), embed.clone())?;
            let v = spec.theorem_check(&t)?;
            condition_false += usize::from(!v.condition);
            match v.status {
                MsStatus::HardViolation => hard.push(spec_json(t.base(), *k, parts)),
                MsStatus::ProbabilisticMiss => missed.push(i),
                MsStatus::Consistent => {}
            }
        }
        let redraw = Embedding::new(sample_independent(&t, a.n, rng)?);
        let mut persistent = Vec::new();
        for &i in &missed {
            let (k, parts) = &shapes[i];
            let spec = MsSpec::new(*k, parts.clone(), redraw.clone())?;
            let v = spec.theorem_check(&t)?;
            if v.status != MsStatus::Consistent {
                persistent.push(spec_json(t.base(), *k, parts));
            }
        }
        let findings = hard
            .iter()
            .map(|s| json!({"trial": index, "hard_violation": s}))
            .collect();
        Ok(TrialOutput {
            passed: hard.is_empty() && persistent.is_empty(),
            details: json!({
                "alphas": elts_json(&t, embed.alphas()),
                "specs": shapes.len(),
                "condition_false": condition_false,
                "hard_violations": hard.len(),
                "probabilistic_misses": missed.len(),
                "misses_after_redraw": persistent.len(),
                "persistent_misses": persistent,
            }),
            findings,
        })
    })?;
    Ok(finish("ms-scan", json!(args), records, findings, None))
}

fn code_or_random(a: &CommonArgs) -> Result<LoadedCode, CliError> {
    match &a.code {
        Some(path) => load_code(path),
        None => {
            validate(a)?;
            let t = tower(a)?;
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(a.seed, 0));
            Ok(LoadedCode::Gabidulin(GabidulinCode::random(
                t, a.n, a.k, &mut rng,
            )?))
        }
    }
}

fn single(
    name: &str,
    config: Value,
    seed: u64,
    passed: bool,
    details: Value,
    findings: Vec<Value>,
) -> Outcome {
    let rec = TrialRecord {
        index: 0,
        seed,
        passed,
        details,
    };
    finish(name, config, vec![rec], findings, None)
}

/// Dual basis, pairing checks and the dual code.
pub fn cmd_dual(a: &CommonArgs) -> Result<Outcome, CliError> {
    let code = code_or_random(a)?;
    let lin = code.linear();
    let t = lin.tower().clone();
    let (n, k) = (lin.n(), lin.k());
    if k == n {
        return Err(CliError::Validation("need k < n for a nonzero dual".into()));
    }
    let details;
    let passed;
    match &code {
        LoadedCode::Gabidulin(g) => {
            let betas = dual_basis(&t, g.alphas(), k)?;
            let mut pairings = Vec::new();
            for j in 0..k {
                for h in 0..n - k {
                    let s = g.alphas().iter().zip(&betas).fold(t.zero(), |acc, (x, y)| {
                        t.add(&acc, &t.mul(&t.frobenius_q(x, j), &t.frobenius_q(y, h)))
                    });
                    pairings.push(s.is_zero());
                }
            }
            let dual = GabidulinCode::new(t.clone(), n - k, betas.clone())?;
            let double = dual.dual_code()?;
            let pairings_zero = pairings.iter().all(|&b| b);
            let independent = fq_rank(&t, &betas) == n;
            let double_dual = double.linear().same_code(lin);
            let orthogonal = lin.is_orthogonal_to(dual.linear());
            passed = pairings_zero && independent && double_dual && orthogonal;
            details = json!({
                "alphas": elts_json(&t, g.alphas()),
                "betas": elts_json(&t, &betas),
                "verification": {
                    "pairings_checked": pairings.len(),
                    "all_pairings_zero": pairings_zero,
                    "betas_independent": independent,
                    "orthogonal": orthogonal,
                    "double_dual_equal": double_dual,
                },
                "dual_code": CodeJson::from_gabidulin(&dual),
            });
        }
        LoadedCode::Linear(c) => {
            let dual = c.dual()?;
            let orthogonal = c.is_orthogonal_to(&dual);
            let double_dual = dual.dual()?.same_code(c);
            passed = orthogonal && double_dual;
            details = json!({
                "verification": {"orthogonal": orthogonal, "double_dual_equal": double_dual},
                "dual_code": CodeJson::from_linear(&dual),
            });
        }
    }
    let findings = if passed {
        Vec::new()
    } else {
        vec![details.clone()]
    };
    Ok(single(
        "dual",
        json!(a),
        trial_seed(a.seed, 0),
        passed,
        details,
        findings,
    ))
}

/// Actual versus generic intersection dimensions on random Gabidulin codes
/// (or a code file). A GKP(`ℓ`)-certified code with a mismatch is a finding.
pub fn cmd_intersection(a: &CommonArgs) -> Result<Outcome, CliError> {
    if a.ell == 0 {
        return Err(CliError::Validation("ℓ must be positive".into()));
    }
    let fixed = match &a.code {
        Some(path) => Some(load_code(path)?),
        None => {
            validate(a)?;
            None
        }
    };
    let t = match &fixed {
        Some(c) => c.linear().tower().clone(),
        None => tower(a)?,
    };
    let trials_args = CommonArgs {
        trials: if fixed.is_some() { 1 } else { a.trials },
        ..a.clone()
    };
    let (records, findings) = run_trials(&trials_args, |index, seed, rng| {
        let code = match &fixed {
            Some(c) => c.clone(),
            None => LoadedCode::Gabidulin(GabidulinCode::random(t.clone(), a.n, a.k, rng)?),
        };
        let lin = code.linear();
        let gkp = gkp_verdict(lin, a.ell)?;
        let check = is_mrd_ell(lin, a.ell, check_mode(a, seed))?;
        let details = json!({
            "code": code_json(&code),
            "gkp_certified": gkp.holds,
            "formula": verdict_json(lin, &check),
        });
        let findings = if gkp.holds && !check.holds {
            vec![json!({"trial": index, "certified_code_mismatch": details})]
        } else {
            Vec::new()
        };
        Ok(TrialOutput {
            passed: check.holds,
            details,
            findings,
        })
    })?;
    Ok(finish("intersection", json!(a), records, findings, None))
}

/// Encodes one message with a code from a file.
pub fn cmd_encode(args: &EncodeArgs) -> Result<Outcome, CliError> {
    let a = &args.common;
    let path = a
        .code
        .as_ref()
        .ok_or_else(|| CliError::Validation("--code is required".into()))?;
    let code = load_code(path)?;
    let lin = code.linear();
    let t = lin.tower();
    let raw: Vec<Vec<u32>> = serde_json::from_str(&args.message)?;
    let msg = raw
        .iter()
        .map(|r| elt_from_json(t, r))
        .collect::<Result<Vec<_>, _>>()?;
    let word = lin.encode(&msg)?;
    let details = json!({
        "codeword": elts_json(t, &word),
        "rank": rank_fq(t, &word),
    });
    Ok(single("encode", json!(args), 0, true, details, Vec::new()))
}

/// Exact minimum rank distance and MRD status of a code from a file.
pub fn cmd_min_distance(a: &CommonArgs) -> Result<Outcome, CliError> {
    let code = code_or_random(a)?;
    let lin = code.linear();
    let d = lin.min_rank_distance()?;
    let is_mrd = lin.is_mrd()?;
    let singleton = lin.n() - lin.k() + 1;
    let consistent = is_mrd == (d == singleton);
    let details = json!({
        "code": code_json(&code),
        "min_rank_distance": d,
        "singleton_bound": singleton,
        "is_mrd": is_mrd,
    });
    let findings = if consistent {
        Vec::new()
    } else {
        vec![details.clone()]
    };
    Ok(single(
        "min-distance",
        json!(a),
        trial_seed(a.seed, 0),
        consistent,
        details,
        findings,
    ))
}
