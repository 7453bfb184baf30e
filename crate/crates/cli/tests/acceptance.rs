//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::Parser;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use rml_cli::{run, Cli, Outcome};
use rml_core::fqspace::{enumerate_subspaces_up_to, fq_rank};
use rml_core::gabidulin::{dual_basis, kernel_subspace, rank_fq};
use rml_core::highermrd::{
    actual_intersection_dim, generic_intersection_dim, gkp_verdict, is_ld_mrd, is_ld_mrd_via_dual,
};
use rml_core::{Elt, Embedding, FieldTower, GabidulinCode, LinearCode, QLinPoly};

type Check = Result<(bool, String), String>;
type Criterion = (&'static str, &'static str, fn() -> Check, Duration);

fn cli(args: &[&str]) -> Result<Outcome, String> {
    let mut argv = vec!["rml"];
    argv.extend_from_slice(args);
    let parsed = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
    run(&parsed.command).map_err(|e| e.to_string())
}

fn tower(m: usize) -> Arc<FieldTower> {
    Arc::new(FieldTower::create(2, 1, m, 0).unwrap())
}

fn ac1() -> Check {
    let t = tower(3);
    let code = GabidulinCode::new(t.clone(), 2, Embedding::power_basis(&t).alphas().to_vec())
        .map_err(|e| e.to_string())?;
    let ranks: Vec<usize> = code
        .linear()
        .codewords()
        .map_err(|e| e.to_string())?
        .map(|c| rank_fq(&t, &c))
        .filter(|&r| r > 0)
        .collect();
    let d = ranks.iter().copied().min().unwrap_or(0);
    Ok((
        ranks.len() == 63 && d == 2,
        format!("{} nonzero codewords, d = {d}", ranks.len()),
    ))
}

fn ac2() -> Check {
    let t = tower(3);
    let elems: Vec<Elt> = t.enumerate_elements().map_err(|e| e.to_string())?.collect();
    let mut count = 0;
    let mut bad = 0;
    for a in &elems {
        for b in &elems {
            for c in &elems {
                let v = [a.clone(), b.clone(), c.clone()];
                count += 1;
                if rank_fq(&t, &v) + kernel_subspace(&t, &v).dim() != 3 {
                    bad += 1;
                }
            }
        }
    }
    Ok((
        count == 512 && bad == 0,
        format!("{count} vectors, {bad} violations"),
    ))
}

/// Coefficients of the ordinary product `∏ (X − a)`.
fn naive_product(t: &FieldTower, points: &[Elt]) -> Vec<Elt> {
    let mut poly = vec![t.one()];
    for a in points {
        let mut next = vec![t.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = t.add(&next[i + 1], c);
            next[i] = t.sub(&next[i], &t.mul(a, c));
        }
        poly = next;
    }
    poly
}

fn ac3() -> Check {
    let t = tower(4);
    let e = Embedding::power_basis(&t);
    let spaces = enumerate_subspaces_up_to(t.base(), 4, 3).map_err(|e| e.to_string())?;
    let all: Vec<Elt> = t.enumerate_elements().map_err(|e| e.to_string())?.collect();
    let mut bad = 0;
    for v in &spaces {
        let ann = QLinPoly::annihilator(&t, v, &e).map_err(|e| e.to_string())?;
        let mut points: Vec<Elt> = Vec::new();
        for x in &all {
            if v.contains(t.base(), x.coords()) {
                points.push(x.clone());
            }
        }
        let zeros: Vec<Elt> = all
            .iter()
            .filter(|x| ann.eval(&t, x).is_zero())
            .cloned()
            .collect();
        let prod = naive_product(&t, &points);
        let coeffs_match = prod.iter().enumerate().all(|(deg, c)| {
            if deg.is_power_of_two() {
                *c == ann.coeff(&t, deg.trailing_zeros() as usize)
            } else {
                c.is_zero()
            }
        });
        let ok =
            ann.is_monic(&t) && ann.q_degree() == Some(v.dim()) && zeros == points && coeffs_match;
        if !ok {
            bad += 1;
        }
    }
    Ok((
        spaces.len() == 66 && bad == 0,
        format!("{} subspaces, {bad} failures", spaces.len()),
    ))
}

fn ac4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut cases = 0;
    let mut bad = Vec::new();
    for n in 2..=4 {
        for k in 1..n {
            for m in n..=n + 3 {
                let t = tower(m);
                let code =
                    GabidulinCode::random(t.clone(), n, k, &mut rng).map_err(|e| e.to_string())?;
                let betas = dual_basis(&t, code.alphas(), k).map_err(|e| e.to_string())?;
                let mut pairings_zero = true;
                for j in 0..k {
                    for h in 0..n - k {
                        let mut s = t.zero();
                        for (a, b) in code.alphas().iter().zip(&betas) {
                            s = t.add(&s, &t.mul(&t.frobenius_q(a, j), &t.frobenius_q(b, h)));
                        }
                        pairings_zero &= s.is_zero();
                    }
                }
                let independent = fq_rank(&t, &betas) == n;
                let dual =
                    GabidulinCode::new(t.clone(), n - k, betas).map_err(|e| e.to_string())?;
                let double = dual.linear().dual().map_err(|e| e.to_string())?;
                let ok = pairings_zero && independent && double.same_code(code.linear());
                cases += 1;
                if !ok {
                    bad.push(format!("(n={n},k={k},m={m})"));
                }
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("{cases} parameter sets, failures: {bad:?}"),
    ))
}

fn ac5() -> Check {
    let t = tower(28);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut draws = 0;
    let code = loop {
        draws += 1;
        let c = GabidulinCode::random(t.clone(), 3, 2, &mut rng).map_err(|e| e.to_string())?;
        if gkp_verdict(c.linear(), 2).map_err(|e| e.to_string())?.holds {
            break c;
        }
        if draws == 10 {
            return Ok((false, "no GKP(2)-certified code in 10 draws".into()));
        }
    };
    let spaces = enumerate_subspaces_up_to(t.base(), 3, 2).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    let mut equal = 0;
    for a in &spaces {
        for b in &spaces {
            let pair = [a.clone(), b.clone()];
            pairs += 1;
            let actual =
                actual_intersection_dim(code.linear(), &pair).map_err(|e| e.to_string())?;
            let generic =
                generic_intersection_dim(t.base(), &pair, 2).map_err(|e| e.to_string())?;
            if actual == generic {
                equal += 1;
            }
        }
    }
    Ok((
        pairs == 225 && equal == 225,
        format!("{equal}/{pairs} pairs equal"),
    ))
}

fn trials(o: &Outcome) -> &[rml_cli::TrialRecord] {
    &o.report.trials
}

fn ac6() -> Check {
    let o = cli(&[
        "ms-scan",
        "--m",
        "28",
        "--n",
        "3",
        "--k",
        "3",
        "--max-parts",
        "3",
        "--trials",
        "5",
        "--seed",
        "6",
    ])?;
    let mut hard = 0;
    let mut worst_rate: f64 = 0.0;
    let mut after = 0;
    let mut specs = 0;
    let mut cond_false = 0;
    for r in trials(&o) {
        let d = &r.details;
        let get = |k: &str| d[k].as_u64().unwrap_or(u64::MAX);
        specs = get("specs");
        cond_false = get("condition_false");
        hard += get("hard_violations");
        after += get("misses_after_redraw");
        worst_rate = worst_rate.max(get("probabilistic_misses") as f64 / specs as f64);
    }
    let ok =
        trials(&o).len() == 5 && cond_false > 0 && hard == 0 && worst_rate <= 0.01 && after == 0;
    Ok((
        ok,
        format!("5 draws × {specs} specs ({cond_false} with condition false): {hard} hard violations, worst miss rate {worst_rate:.4}, {after} after redraw"),
    ))
}

fn ac7() -> Check {
    let o = cli(&[
        "equivalence",
        "--m",
        "3",
        "--n",
        "3",
        "--k",
        "2",
        "--ell",
        "1",
        "--trials",
        "24",
        "--seed",
        "7",
    ])?;
    let agree = trials(&o)
        .iter()
        .filter(|r| r.details["agree"] == Value::Bool(true))
        .count();
    let failures = trials(&o)
        .iter()
        .filter(|r| r.details["mrd"] == Value::Bool(false))
        .count();
    let n = trials(&o).len();
    Ok((
        n >= 20 && agree == n && failures > 0,
        format!("{agree}/{n} agree, {failures} codes fail MRD(2)"),
    ))
}

fn ac8() -> Check {
    let t = tower(3);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut codes = 0;
    let mut bad = 0;
    let mut outcomes = [0usize; 2];
    for i in 0..50 {
        let code = if i % 2 == 0 {
            GabidulinCode::random(t.clone(), 3, 1, &mut rng)
                .map_err(|e| e.to_string())?
                .into_linear()
        } else {
            LinearCode::random(t.clone(), 3, 1, &mut rng).map_err(|e| e.to_string())?
        };
        codes += 1;
        for ell in 1..=2 {
            let brute = is_ld_mrd(&code, ell).map_err(|e| e.to_string())?.holds;
            let dual = is_ld_mrd_via_dual(&code, ell)
                .map_err(|e| e.to_string())?
                .holds;
            outcomes[usize::from(brute)] += 1;
            if brute != dual {
                bad += 1;
            }
        }
    }
    Ok((
        codes >= 50 && bad == 0,
        format!(
            "{codes} codes × ℓ∈{{1,2}}: {bad} disagreements ({} hold, {} fail)",
            outcomes[1], outcomes[0]
        ),
    ))
}

fn ac9() -> Check {
    let o = cli(&[
        "ld-mrd", "--m", "28", "--n", "3", "--k", "1", "--ell", "2", "--trials", "100", "--seed",
        "9",
    ])?;
    let r = &o.report;
    Ok((
        r.trial_count == 100 && r.pass_count >= 99,
        format!(
            "{}/{} pass, floor {:.6}",
            r.pass_count,
            r.trial_count,
            r.floor.unwrap_or(f64::NAN)
        ),
    ))
}

fn ac10() -> Check {
    let o = cli(&[
        "gkp-mc", "--m", "28", "--n", "3", "--k", "2", "--ell", "2", "--trials", "100", "--seed",
        "10",
    ])?;
    let r = &o.report;
    Ok((
        r.trial_count == 100 && r.pass_rate() >= 0.99 && r.floor.is_some(),
        format!(
            "pass rate {:.2}, floor {:.6}",
            r.pass_rate(),
            r.floor.unwrap_or(f64::NAN)
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "AC-1",
            "Gabidulin [3,2] over F_8 is MRD",
            ac1,
            Duration::from_secs(1),
        ),
        (
            "AC-2",
            "rank + kernel dimension = n",
            ac2,
            Duration::from_secs(1),
        ),
        ("AC-3", "subspace annihilators", ac3, Duration::from_secs(5)),
        (
            "AC-4",
            "dual bases and dual codes",
            ac4,
            Duration::from_secs(10),
        ),
        (
            "AC-5",
            "intersection formula on a certified code",
            ac5,
            Duration::from_secs(30),
        ),
        (
            "AC-6",
            "M_S determinant scan",
            ac6,
            Duration::from_secs(120),
        ),
        (
            "AC-7",
            "GKP(2) = MRD(2) on small fields",
            ac7,
            Duration::from_secs(120),
        ),
        (
            "AC-8",
            "LD-MRD brute force = dual MRD",
            ac8,
            Duration::from_secs(300),
        ),
        (
            "AC-9",
            "LD-MRD(<=2) Monte-Carlo, [3,1], m=28",
            ac9,
            Duration::from_secs(300),
        ),
        (
            "AC-10",
            "GKP(2) Monte-Carlo, [3,2], m=28",
            ac10,
            Duration::from_secs(300),
        ),
    ];
    let mut failed = 0;
    for (id, name, f, limit) in criteria {
        let start = Instant::now();
        let res = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match res {
            Ok((ok, d)) => (ok && elapsed <= limit, d),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {id} {name}: {detail} ({:.2}s, limit {}s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
