//! Acceptance gate: nine criteria, one pass/fail line each. Every criterion
//! runs even if an earlier one fails; the test asserts at the end.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sectorlab::functions::principal_power;
use sectorlab::harness::{
    run_campaign, run_campaign_with, sample_witness, CampaignConfig,
};
use sectorlab::inequalities::evaluate;
use sectorlab::matrix::{canonical_isometry, ComplexMatrix, HermitianMatrix, TolerancePolicy};
use sectorlab::sector::{random_sector, GeneratorConfig};
use sectorlab::witness::Witness;
use std::time::Instant;

fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
    })
}

type Verdict = Result<String, String>;

/// Hadamard product is the canonical-isometry compression of the Kronecker
/// product, checked against the entrywise definition.
fn criterion_1() -> Verdict {
    let start = Instant::now();
    for n in 1..=6usize {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + n as u64);
        let v = canonical_isometry(n);
        for trial in 0..100 {
            let a = random_complex(&mut rng, n);
            let b = random_complex(&mut rng, n);
            let compressed = v
                .adjoint()
                .matmul(&a.kronecker(&b))
                .unwrap()
                .matmul(&v)
                .unwrap();
            let entrywise = a.hadamard(&b).unwrap();
            let resid = compressed.sub(&entrywise).unwrap().frobenius_norm();
            let bound = 1e-12 * (1.0 + a.frobenius_norm() * b.frobenius_norm());
            if resid > bound {
                return Err(format!("n={n} trial={trial}: residual {resid:.3e} > {bound:.3e}"));
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 5.0 {
        return Err(format!("runtime {elapsed:.2}s >= 5s"));
    }
    Ok(format!("600 pairs across n=1..6, max runtime {elapsed:.2}s"))
}

/// Cartesian identity Re(AoB) = ReA o ReB - ImA o ImB and the Kronecker
/// mixed-product rule (A(x)B)(C(x)D) = AC (x) BD.
fn criterion_2() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for trial in 0..500 {
        let a = random_complex(&mut rng, 3);
        let b = random_complex(&mut rng, 3);
        let (ra, ia) = a.cartesian().unwrap();
        let (rb, ib) = b.cartesian().unwrap();
        let lhs = HermitianMatrix::from_complex(&a.hadamard(&b).unwrap()).unwrap();
        let rhs = ra.hadamard(&rb).unwrap().sub(&ia.hadamard(&ib).unwrap()).unwrap();
        let scale = lhs.frobenius_norm().max(rhs.frobenius_norm()).max(1.0);
        let resid = lhs.sub(&rhs).unwrap().frobenius_norm();
        if resid > 1e-12 * scale {
            return Err(format!("cartesian identity trial {trial}: {resid:.3e}"));
        }
    }
    for trial in 0..500 {
        let a = random_complex(&mut rng, 2);
        let b = random_complex(&mut rng, 3);
        let c = random_complex(&mut rng, 2);
        let d = random_complex(&mut rng, 3);
        let lhs = a.kronecker(&b).matmul(&c.kronecker(&d)).unwrap();
        let rhs = a.matmul(&c).unwrap().kronecker(&b.matmul(&d).unwrap());
        let scale = lhs.frobenius_norm().max(1.0);
        let resid = lhs.sub(&rhs).unwrap().frobenius_norm();
        if resid > 1e-12 * scale {
            return Err(format!("mixed product trial {trial}: {resid:.3e}"));
        }
    }
    Ok("cartesian identity and mixed product, 500 instances each, <= 1e-12 relative".into())
}

/// Power bounds: for t in [0,1], cos^{2t}(theta) Re(A^t) <= (Re A)^t
/// <= Re(A^t); for t in [-1,0] the chain reverses with constant cos^{2t}.
/// At theta = 0 both collapse to equalities.
fn criterion_3() -> Verdict {
    let tol = TolerancePolicy::default();
    let thetas = [0.2, 0.5, 1.0];
    let ts = [-1.0, -0.5, 0.25, 0.5, 0.75, 1.0];
    let mut checked = 0u64;
    for &theta in &thetas {
        for &t in &ts {
            let cfg = GeneratorConfig::new(3, theta, 300 + (theta * 10.0) as u64 + (t * 100.0) as u64);
            let mut count = 0;
            let mut trial = 0u64;
            while count < 500 {
                let mut rng = cfg.trial_rng(trial);
                trial += 1;
                let a = match random_sector(&cfg, &mut rng) {
                    Ok(s) => s.matrix,
                    Err(_) => continue,
                };
                let a_t = match principal_power(&a, t, &tol) {
                    Ok(m) => m,
                    Err(_) => continue,
                };
                let re_pow = a_t.cartesian().unwrap().0;
                let pow_re = a.cartesian().unwrap().0.power(t).unwrap();
                let c = theta.cos().powf(2.0 * t);
                // ascending chain as (lower, upper) pairs
                let chain: [(HermitianMatrix, HermitianMatrix); 2] = if t >= 0.0 {
                    [(re_pow.scale(c), pow_re.clone()), (pow_re.clone(), re_pow.clone())]
                } else {
                    [(re_pow.clone(), pow_re.clone()), (pow_re.clone(), re_pow.scale(c))]
                };
                for (lo, hi) in &chain {
                    let resid = hi.sub(lo).unwrap().lambda_min().unwrap();
                    let scale = lo.spectral_norm().max(hi.spectral_norm());
                    if resid < -1e-8 * scale.max(1.0) {
                        return Err(format!(
                            "theta={theta} t={t} trial={}: residual {resid:.3e}",
                            trial - 1
                        ));
                    }
                }
                count += 1;
                checked += 1;
            }
        }
    }
    // theta = 0 collapse
    for &t in &ts {
        let cfg = GeneratorConfig::new(3, 0.0, 399);
        for trial in 0..100 {
            let mut rng = cfg.trial_rng(trial);
            let a = random_sector(&cfg, &mut rng).unwrap().matrix;
            let a_t = principal_power(&a, t, &tol).unwrap();
            let re_pow = a_t.cartesian().unwrap().0;
            let pow_re = a.cartesian().unwrap().0.power(t).unwrap();
            let gap = re_pow.sub(&pow_re).unwrap().frobenius_norm();
            if gap > 1e-9 * re_pow.frobenius_norm().max(1.0) {
                return Err(format!("theta=0 t={t} trial={trial}: gap {gap:.3e}"));
            }
        }
    }
    Ok(format!("{checked} sector samples across 3 angles x 6 exponents, collapse at theta=0"))
}

/// Positive-definite theorem campaigns: 500 trials each, zero failures.
fn criterion_4() -> Verdict {
    let start = Instant::now();
    let ids = ["chan301", "p1_321", "t1_308", "e41_0", "e41", "e25", "jc_L1", "jc_p1"];
    let mut lines = Vec::new();
    for id in ids {
        let mut cfg = CampaignConfig::for_theorem(id, 400).unwrap();
        cfg.trials = 500;
        if matches!(id, "p1_321" | "jc_p1") {
            cfg.generator.dim = 2;
        }
        let report = run_campaign(&cfg).unwrap();
        if report.failures > 0 {
            return Err(format!(
                "{id}: {} failures, worst {:?}",
                report.failures,
                report.worst_residual.map(|w| w.value)
            ));
        }
        lines.push(format!("{id} {}/{}", report.counters.passes, report.counters.trials_run));
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 60.0 {
        return Err(format!("runtime {elapsed:.1}s >= 60s"));
    }
    Ok(format!("{} ({elapsed:.1}s)", lines.join(", ")))
}

/// Sector theorem campaigns at theta in {0.3, 0.6}: at least 200 hypothesis
/// hits each, zero failures, nonzero filter rates.
fn criterion_5() -> Verdict {
    let ids = [
        "t0_303", "e305", "e62", "e24", "e39", "t4", "m1", "thmK", "t2", "t3v1", "t3v2",
    ];
    let mut summary = Vec::new();
    for &theta in &[0.3, 0.6] {
        for id in ids {
            let mut cfg = CampaignConfig::for_theorem(id, 500).unwrap();
            cfg.generator.theta = theta;
            cfg.trials = 700;
            let report = run_campaign(&cfg).unwrap();
            let hits = report.counters.hypothesis_hits;
            if hits < 200 {
                return Err(format!("{id} theta={theta}: only {hits} hypothesis hits"));
            }
            if report.failures > 0 {
                return Err(format!("{id} theta={theta}: {} failures", report.failures));
            }
            if report.counters.filtered_total() == 0 {
                return Err(format!("{id} theta={theta}: zero filter rate"));
            }
            summary.push(format!("{id}@{theta}:{hits}"));
        }
    }
    Ok(format!("hits per campaign {}", summary.join(" ")))
}

/// The golden 2x2 counterexample, recomputed independently of the checker.
fn criterion_6() -> Verdict {
    use sectorlab::inequalities::remark_matrices;
    let (a, b) = remark_matrices();
    let ra = a.cartesian().unwrap().0;
    let rb = b.cartesian().unwrap().0;
    let had = ra.hadamard(&rb).unwrap();
    if had.sub(&HermitianMatrix::identity(2)).unwrap().frobenius_norm() > 1e-14 {
        return Err("ReA o ReB is not the identity".into());
    }
    let re_prod = HermitianMatrix::from_complex(&a.hadamard(&b).unwrap()).unwrap();
    let expected = ComplexMatrix::from_rows(&[
        vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 2.0)],
        vec![Complex64::new(0.0, -2.0), Complex64::new(2.0, 0.0)],
    ])
    .unwrap();
    if re_prod.to_complex().sub(&expected).unwrap().frobenius_norm() > 1e-14 {
        return Err("Re(A o B) differs from [[2,2i],[-2i,2]]".into());
    }
    let spec = re_prod.eigvals().unwrap();
    let diff = re_prod.sub(&had).unwrap();
    let diff_spec = diff.eigvals().unwrap();
    let eq = |x: f64, y: f64| (x - y).abs() <= 1e-12;
    if !(eq(spec[0], 0.0) && eq(spec[1], 4.0) && eq(diff_spec[0], -1.0) && eq(diff_spec[1], 3.0)) {
        return Err(format!("spectra off: {spec:?} {diff_spec:?}"));
    }
    if !eq(diff.spectral_norm(), 3.0) {
        return Err(format!("difference norm {} != 3", diff.spectral_norm()));
    }
    let out = evaluate("remark", &Witness::new(), &TolerancePolicy::default()).unwrap();
    if !out.pass {
        return Err("remark checker does not pass".into());
    }
    Ok("spectra {0,4} and {-1,3}, equality fails by spectral norm 3".into())
}

/// At theta = 0 each sector checker reproduces its PD ancestor's verdict and
/// residual within 1e-9 on shared inputs.
fn criterion_7() -> Verdict {
    let tol = TolerancePolicy::default();
    let mut checked = 0usize;
    for trial in 0..20u64 {
        // shared four-matrix PD witness
        let mut cfg = CampaignConfig::for_theorem("chan301", 700).unwrap();
        cfg.generator.theta = 0.0;
        let w4 = sample_witness(&cfg, trial).unwrap();
        for (sector_id, pd_id) in [("t0_303", "chan301")] {
            let s = evaluate(sector_id, &w4, &tol).unwrap();
            let p = evaluate(pd_id, &w4, &tol).unwrap();
            let delta = (s.residual.unwrap() - p.residual.unwrap()).abs();
            if delta > 1e-9 || s.pass != p.pass {
                return Err(format!("{sector_id}/{pd_id} trial {trial}: delta {delta:.3e}"));
            }
            checked += 1;
        }
        let mut cfg = CampaignConfig::for_theorem("t1_308", 701).unwrap();
        cfg.generator.theta = 0.0;
        let w4r = sample_witness(&cfg, trial).unwrap();
        let s = evaluate("e305", &w4r, &tol).unwrap();
        let p = evaluate("t1_308", &w4r, &tol).unwrap();
        let delta = (s.residual.unwrap() - p.residual.unwrap()).abs();
        if delta > 1e-9 || s.pass != p.pass {
            return Err(format!("e305/t1_308 trial {trial}: delta {delta:.3e}"));
        }
        checked += 1;

        // shared PD pair with aligned tokens
        let mut cfg = CampaignConfig::for_theorem("e41", 702).unwrap();
        cfg.generator.theta = 0.0;
        let mut w2 = sample_witness(&cfg, trial).unwrap();
        w2.tokens.insert("map".into(), "identity".into());
        w2.tokens.insert("function".into(), "power:0.5".into());

        let s = evaluate("t4", &w2, &tol).unwrap();
        let p = evaluate("e39", &w2, &tol).unwrap();
        let delta = (s.residual.unwrap() - p.residual.unwrap()).abs();
        if delta > 1e-9 || s.pass != p.pass {
            return Err(format!("t4/e39 trial {trial}: delta {delta:.3e}"));
        }
        checked += 1;

        let e41_out = evaluate("e41", &w2, &tol).unwrap();
        let t2_out = evaluate("t2", &w2, &tol).unwrap();
        let delta = (t2_out.residual.unwrap() - e41_out.extra["left_residual"]).abs();
        if delta > 1e-9 {
            return Err(format!("t2/e41-left trial {trial}: delta {delta:.3e}"));
        }
        checked += 1;
        for variant in ["t3v1", "t3v2"] {
            let v = evaluate(variant, &w2, &tol).unwrap();
            let delta = (v.residual.unwrap() - e41_out.extra["right_residual"]).abs();
            if delta > 1e-9 {
                return Err(format!("{variant}/e41-right trial {trial}: delta {delta:.3e}"));
            }
            checked += 1;
        }

        // e62 collapses to exact Hadamard multiplicativity (residual 0)
        let e62_out = evaluate("e62", &w2, &tol).unwrap();
        if e62_out.residual.unwrap().abs() > 1e-9 {
            return Err(format!("e62 trial {trial}: residual {:?}", e62_out.residual));
        }
        checked += 1;

        // e24 collapses to equality on both sides of the sandwich
        let mut w1 = Witness::new().with_token("function", "power:0.5");
        w1.set_matrix("A", &w2.matrix("A").unwrap());
        let e24_out = evaluate("e24", &w1, &tol).unwrap();
        if e24_out.extra["lower_residual"].abs() > 1e-9 || e24_out.extra["upper_residual"].abs() > 1e-9 {
            return Err(format!("e24 trial {trial}: {:?}", e24_out.extra));
        }
        checked += 1;
    }

    // m1 and thmK against directly computed PD oracles on Hermitian inputs
    use sectorlab::functions::{kantorovich, operator_mean, MeanDescriptor};
    let mut cfg = CampaignConfig::for_theorem("m1", 703).unwrap();
    cfg.generator.theta = 0.0;
    for trial in 0..10u64 {
        let w = sample_witness(&cfg, trial * 2).unwrap();
        let a = w.matrix("A").unwrap();
        let b = w.matrix("B").unwrap();
        let (m, big_m) = (w.scalar("m").unwrap(), w.scalar("M").unwrap());
        let sig1 = MeanDescriptor::parse("geometric").unwrap();
        let sig2 = MeanDescriptor::parse("harmonic").unwrap();
        let x1 = HermitianMatrix::from_complex(&operator_mean(&a, &b, &sig1, &tol).unwrap()).unwrap();
        let x2 = HermitianMatrix::from_complex(&operator_mean(&a, &b, &sig2, &tol).unwrap()).unwrap();
        let n = x1.dim();
        let lhs = x1.add(&x2.inverse().unwrap().scale(m * big_m)).unwrap();
        let oracle = HermitianMatrix::identity(n)
            .scale(m + big_m)
            .sub(&lhs)
            .unwrap()
            .lambda_min()
            .unwrap();
        let m1_out = evaluate("m1", &w, &tol).unwrap();
        let delta = (m1_out.residual.unwrap() - oracle).abs();
        if delta > 1e-9 {
            return Err(format!("m1 oracle trial {trial}: delta {delta:.3e}"));
        }
        let k_out = evaluate("thmK", &w, &tol).unwrap();
        let value = x1
            .power(0.5)
            .unwrap()
            .hadamard(&x2.power(-0.5).unwrap())
            .unwrap()
            .spectral_norm();
        let k_oracle = kantorovich(m, big_m).unwrap().sqrt() - value;
        let delta = (k_out.residual.unwrap() - k_oracle).abs();
        if delta > 1e-9 {
            return Err(format!("thmK oracle trial {trial}: delta {delta:.3e}"));
        }
        checked += 2;
    }
    Ok(format!("{checked} collapse comparisons within 1e-9"))
}

/// verify-all twice with the same seed: byte-identical reports (wall time
/// excluded) and parallel/serial agreement.
fn criterion_8() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_sectorlab");
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |dir: &std::path::Path| -> Result<(), String> {
        let status = std::process::Command::new(bin)
            .args(["verify-all", "--trials", "40", "--seed", "17", "--out"])
            .arg(dir)
            .stdout(std::process::Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        if status.code() != Some(0) {
            return Err(format!("verify-all exited with {:?}", status.code()));
        }
        Ok(())
    };
    let d1 = tmp.path().join("run1");
    let d2 = tmp.path().join("run2");
    run(&d1)?;
    run(&d2)?;
    let strip_wall = |s: &str| -> String {
        s.lines()
            .filter(|l| !l.trim_start().starts_with("\"wall_time_s\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let mut compared = 0;
    for entry in std::fs::read_dir(&d1).map_err(|e| e.to_string())? {
        let entry = entry.map_err(|e| e.to_string())?;
        let name = entry.file_name();
        let a = std::fs::read_to_string(entry.path()).map_err(|e| e.to_string())?;
        let b = std::fs::read_to_string(d2.join(&name)).map_err(|e| e.to_string())?;
        if strip_wall(&a) != strip_wall(&b) {
            return Err(format!("{:?} differs between identical runs", name));
        }
        compared += 1;
    }
    if compared < 22 {
        return Err(format!("only {compared} files compared"));
    }
    for id in ["le17", "t0_303", "m1"] {
        let mut cfg = CampaignConfig::for_theorem(id, 17).unwrap();
        cfg.trials = 40;
        let par = run_campaign_with(&cfg, true).unwrap();
        let ser = run_campaign_with(&cfg, false).unwrap();
        if par.content_hash != ser.content_hash {
            return Err(format!("{id}: parallel and serial runs disagree"));
        }
    }
    Ok(format!("{compared} report files byte-identical; parallel == serial"))
}

/// The deliberately false claim is falsified within 1000 trials and the
/// shrinker returns a witness of dimension <= 2.
fn criterion_9() -> Verdict {
    let mut cfg = CampaignConfig::for_theorem("negctl", 900).unwrap();
    cfg.trials = 1000;
    let report = run_campaign(&cfg).unwrap();
    if report.failures == 0 {
        return Err("negative control was not falsified".into());
    }
    let ce = report
        .counterexamples
        .first()
        .ok_or("no counterexample recorded")?;
    let shrunk = ce.shrunk.as_ref().ok_or("shrinker made no progress")?;
    let dim = shrunk
        .matrices
        .values()
        .map(|m| m.re.len())
        .max()
        .unwrap_or(0);
    if dim > 2 {
        return Err(format!("shrunk witness has dimension {dim} > 2"));
    }
    let tol = TolerancePolicy::default();
    let out = evaluate("negctl", shrunk, &tol).unwrap();
    if !out.hypotheses_ok || out.pass {
        return Err("shrunk witness no longer falsifies the claim".into());
    }
    Ok(format!(
        "falsified {} of 1000 trials; shrunk witness dimension {dim}",
        report.failures
    ))
}

#[test]
fn acceptance_gate() {
    let criteria: Vec<(&str, fn() -> Verdict)> = vec![
        ("hadamard-isometry oracle", criterion_1),
        ("cartesian and mixed-product identities", criterion_2),
        ("sector power bounds", criterion_3),
        ("positive-definite campaigns", criterion_4),
        ("sector campaigns with filters", criterion_5),
        ("golden 2x2 counterexample", criterion_6),
        ("theta=0 collapse coherence", criterion_7),
        ("determinism and replay", criterion_8),
        ("negative control and shrinking", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS - {name}: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {}: FAIL - {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
