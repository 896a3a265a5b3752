//! Randomized verification campaigns. A campaign is fully described by its
//! serialized configuration: every trial regenerates its witness from
//! (generator seed, trial index) alone, so reports are replayable bit for
//! bit and a worst witness never has to be stored approximately.

use crate::error::{Error, Result};
use crate::inequalities::{evaluate, CheckOutcome, THEOREM_IDS};
use crate::matrix::{ComplexMatrix, TolerancePolicy};
use crate::sector::{random_sector, random_sector_pair_signed, GeneratorConfig, SignCondition};
use crate::witness::Witness;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;
/// Failures recorded (and shrunk) per campaign before the rest are counted
/// only.
pub const MAX_COUNTEREXAMPLES: usize = 5;
pub const MAX_SHRINK_STEPS: usize = 200;

/// Complete, serializable description of one campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub theorem_id: String,
    pub trials: u64,
    pub generator: GeneratorConfig,
    /// Catalog tokens forwarded into every witness (map, function, sigma,
    /// sigma1, sigma2, norm).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tokens: BTreeMap<String, String>,
    #[serde(default)]
    pub tolerance: TolerancePolicy,
}

impl CampaignConfig {
    /// Campaign defaults per theorem: dimension, sector angle, sign
    /// condition, spectral bounds, and catalog tokens.
    pub fn for_theorem(theorem_id: &str, seed: u64) -> Result<Self> {
        if !THEOREM_IDS.contains(&theorem_id) {
            return Err(Error::UnknownId(theorem_id.into()));
        }
        let mut generator = GeneratorConfig::new(3, 0.9, seed);
        let mut tokens = BTreeMap::new();
        match theorem_id {
            // positive definite Hermitian inputs: degenerate sector
            "chan301" | "p1_321" | "t1_308" | "jc_L1" | "jc_p1" | "e25" | "e41" | "e41_0"
            | "e39" => {
                generator.theta = 0.0;
            }
            // sector pairs with Im A o Im B <= 0
            "e62" | "t4" | "t2" | "t3v1" | "thmK" => {
                generator.sign = SignCondition::ImHadamardNonpos;
            }
            "t3v2" => {
                generator.sign = SignCondition::ImHadamardNonneg;
            }
            // powers of sector matrices stay provably signed only near the
            // real axis; use a narrow sector so the hypothesis hits often
            "t0_303" | "e305" => {
                generator.theta = 0.15;
                generator.sign = SignCondition::ImHadamardNonneg;
            }
            "e24" => {
                generator.theta = 0.8;
            }
            "le17" => {
                generator.sign = SignCondition::ImHadamardNonpos;
            }
            _ => {}
        }
        match theorem_id {
            "m1" | "thmK" => {
                generator.re_lower = Some(1.0);
                generator.re_upper = Some(4.0);
                generator.theta = 0.5;
                tokens.insert("sigma".into(), "arithmetic".into());
                tokens.insert("sigma1".into(), "geometric".into());
                tokens.insert("sigma2".into(), "harmonic".into());
                tokens.insert("map".into(), "identity".into());
            }
            "e62" => {
                tokens.insert("map".into(), "perm:1,2,0".into());
            }
            "e39" => {
                tokens.insert("map".into(), "submatrix:0,1".into());
                tokens.insert("function".into(), "power:0.5".into());
            }
            "t4" => {
                tokens.insert("map".into(), "identity".into());
                tokens.insert("function".into(), "power:0.5".into());
            }
            _ => {}
        }
        Ok(Self {
            theorem_id: theorem_id.into(),
            trials: 300,
            generator,
            tokens,
            tolerance: TolerancePolicy::default(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !THEOREM_IDS.contains(&self.theorem_id.as_str()) {
            return Err(Error::UnknownId(self.theorem_id.clone()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be positive".into()));
        }
        self.generator.validate()?;
        self.tolerance.validate()
    }
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// On odd trials the side conditions are sampled loosely (no sign shaping,
/// no spectral-bound rescale) so the hypothesis filters are exercised with
/// honest, nonzero rates; even trials target the hypotheses directly.
fn relaxed(trial: u64) -> bool {
    trial % 2 == 1
}

fn sample_pair(
    cfg: &CampaignConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let gen = &cfg.generator;
    if gen.sign == SignCondition::None {
        let a = random_sector(gen, rng)?;
        let b = random_sector(gen, rng)?;
        Ok((a.matrix, b.matrix))
    } else {
        let (a, b) = random_sector_pair_signed(gen, rng)?;
        Ok((a.matrix, b.matrix))
    }
}

fn sample_pair_mixed(
    cfg: &CampaignConfig,
    rng: &mut ChaCha8Rng,
    trial: u64,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if relaxed(trial) {
        let mut loose = cfg.generator;
        loose.sign = SignCondition::None;
        let a = random_sector(&loose, rng)?;
        let b = random_sector(&loose, rng)?;
        Ok((a.matrix, b.matrix))
    } else {
        sample_pair(cfg, rng)
    }
}

fn sample_pd(cfg: &CampaignConfig, rng: &mut ChaCha8Rng) -> Result<ComplexMatrix> {
    let mut gen = cfg.generator;
    gen.theta = 0.0;
    gen.sign = SignCondition::None;
    Ok(random_sector(&gen, rng)?.matrix)
}

/// r in (-1, 0) union (1, 2), the reversed power range.
fn sample_outer_power(rng: &mut ChaCha8Rng) -> f64 {
    let r = uniform(rng, 0.1, 0.9);
    if rng.random::<bool>() {
        1.0 + r
    } else {
        -r
    }
}

fn sample_convex_params(rng: &mut ChaCha8Rng) -> (f64, f64) {
    (uniform(rng, 0.2, 2.0), uniform(rng, 0.2, 2.0))
}

/// Deterministically build the witness for one trial of a campaign.
pub fn sample_witness(cfg: &CampaignConfig, trial: u64) -> Result<Witness> {
    let mut rng = cfg.generator.trial_rng(trial);
    let mut w = Witness::new();
    for (k, v) in &cfg.tokens {
        w = w.with_token(k, v);
    }
    match cfg.theorem_id.as_str() {
        "remark" => {}
        "le17" | "e62" | "t4" | "t2" | "t3v1" | "t3v2" => {
            let (a, b) = sample_pair_mixed(cfg, &mut rng, trial)?;
            w.set_matrix("A", &a);
            w.set_matrix("B", &b);
        }
        "negctl" => {
            let mut gen = cfg.generator;
            gen.sign = SignCondition::None;
            let a = random_sector(&gen, &mut rng)?;
            let b = random_sector(&gen, &mut rng)?;
            w.set_matrix("A", &a.matrix);
            w.set_matrix("B", &b.matrix);
        }
        "chan301" => {
            for name in ["A", "B", "C", "D"] {
                w.set_matrix(name, &sample_pd(cfg, &mut rng)?);
            }
            let (alpha, beta) = sample_convex_params(&mut rng);
            w = w
                .with_scalar("alpha", alpha)
                .with_scalar("beta", beta)
                .with_scalar("r", uniform(&mut rng, 0.15, 0.85));
        }
        "t0_303" | "e305" => {
            let mut gen = cfg.generator;
            if relaxed(trial) {
                gen.sign = SignCondition::None;
            }
            let pair_cfg = CampaignConfig {
                generator: gen,
                ..cfg.clone()
            };
            let (a, b) = sample_pair(&pair_cfg, &mut rng)?;
            let (c, d) = sample_pair(&pair_cfg, &mut rng)?;
            w.set_matrix("A", &a);
            w.set_matrix("B", &b);
            w.set_matrix("C", &c);
            w.set_matrix("D", &d);
            let (alpha, beta) = sample_convex_params(&mut rng);
            let r = if cfg.theorem_id == "t0_303" {
                uniform(&mut rng, 0.15, 0.85)
            } else {
                sample_outer_power(&mut rng)
            };
            w = w
                .with_scalar("alpha", alpha)
                .with_scalar("beta", beta)
                .with_scalar("r", r);
        }
        "p1_321" | "t1_308" => {
            for name in ["A", "B", "C", "D"] {
                w.set_matrix(name, &sample_pd(cfg, &mut rng)?);
            }
            let (alpha, beta) = sample_convex_params(&mut rng);
            w = w
                .with_scalar("alpha", alpha)
                .with_scalar("beta", beta)
                .with_scalar("r", sample_outer_power(&mut rng));
        }
        "jc_L1" | "jc_p1" => {
            for name in ["X1", "Y1", "X2", "Y2"] {
                w.set_matrix(name, &sample_pd(cfg, &mut rng)?);
            }
            if cfg.theorem_id == "jc_p1" {
                w = w.with_scalar("r", sample_outer_power(&mut rng));
            }
        }
        "e24" => {
            let a = random_sector(&cfg.generator, &mut rng)?;
            w.set_matrix("A", &a.matrix);
            // relaxed trials leave the operator-monotone class on purpose
            let t = if relaxed(trial) {
                uniform(&mut rng, 1.05, 1.5)
            } else {
                uniform(&mut rng, 0.05, 1.0)
            };
            w = w.with_token("function", &format!("power:{t}"));
        }
        "e39" => {
            w.set_matrix("A", &sample_pd(cfg, &mut rng)?);
            w.set_matrix("B", &sample_pd(cfg, &mut rng)?);
            let t = if relaxed(trial) {
                uniform(&mut rng, 1.05, 1.5)
            } else {
                uniform(&mut rng, 0.05, 1.0)
            };
            w = w.with_token("function", &format!("power:{t}"));
        }
        "e25" => {
            w.set_matrix("A", &sample_pd(cfg, &mut rng)?);
            w.set_matrix("B", &sample_pd(cfg, &mut rng)?);
            w = w.with_scalar("t", uniform(&mut rng, 0.0, 1.0));
        }
        "e41" => {
            w.set_matrix("A", &sample_pd(cfg, &mut rng)?);
            w.set_matrix("B", &sample_pd(cfg, &mut rng)?);
        }
        "e41_0" => {
            let a = sample_pd(cfg, &mut rng)?;
            let x = random_isometry(cfg.generator.dim, cfg.generator.dim.saturating_sub(1).max(1), &mut rng)?;
            w.set_matrix("A", &a);
            w.set_matrix("X", &x);
        }
        "m1" | "thmK" => {
            let mut gen = cfg.generator;
            if relaxed(trial) {
                gen.re_lower = None;
                gen.re_upper = None;
            }
            let pair_cfg = CampaignConfig {
                generator: gen,
                ..cfg.clone()
            };
            let (a, b) = sample_pair(&pair_cfg, &mut rng)?;
            w.set_matrix("A", &a);
            w.set_matrix("B", &b);
            let m = cfg.generator.re_lower.unwrap_or(1.0);
            let big_m = cfg.generator.re_upper.unwrap_or(4.0);
            w = w.with_scalar("m", m).with_scalar("M", big_m);
        }
        other => return Err(Error::UnknownId(other.into())),
    }
    Ok(w)
}

/// Random n x k isometry: the first k eigenvectors of a random Hermitian
/// matrix.
fn random_isometry(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<ComplexMatrix> {
    use crate::matrix::HermitianMatrix;
    let g = ComplexMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    let h = HermitianMatrix::from_complex(&g)?;
    let (_, v) = h.eigh()?;
    Ok(ComplexMatrix::from_fn(n, k, |i, j| v.get(i, j)))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Counters {
    pub trials_run: u64,
    pub hypothesis_hits: u64,
    pub passes: u64,
    /// Histogram of filter reasons over the non-qualifying trials.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub filtered: BTreeMap<String, u64>,
}

impl Counters {
    pub fn filtered_total(&self) -> u64 {
        self.filtered.values().sum()
    }

    /// Structural invariants every report must satisfy.
    pub fn validate(&self) -> Result<()> {
        let ok = self.passes <= self.hypothesis_hits
            && self.hypothesis_hits <= self.trials_run
            && self.hypothesis_hits + self.filtered_total() == self.trials_run;
        if ok {
            Ok(())
        } else {
            Err(Error::SchemaMismatch(format!("inconsistent counters: {self:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstResidual {
    pub value: f64,
    pub trial_index: u64,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial_index: u64,
    pub residual: f64,
    pub witness: Witness,
    /// Shrunk variant that still fails, when shrinking made progress.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shrunk: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shrunk_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub config: CampaignConfig,
    pub counters: Counters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_residual: Option<WorstResidual>,
    /// Count of all failing trials, including those beyond the stored cap.
    pub failures: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<Counterexample>,
    pub wall_time_s: f64,
    pub content_hash: String,
}

impl CampaignReport {
    /// SHA-256 over the canonical JSON form with the volatile fields
    /// (wall time, the hash itself) zeroed.
    pub fn compute_hash(&self) -> Result<String> {
        let mut canonical = self.clone();
        canonical.wall_time_s = 0.0;
        canonical.content_hash = String::new();
        let bytes = serde_json::to_vec(&canonical)?;
        let digest = Sha256::digest(&bytes);
        Ok(format!("{digest:x}"))
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaMismatch(format!(
                "schema_version {} != {SCHEMA_VERSION}",
                self.schema_version
            )));
        }
        self.counters.validate()?;
        let fail_count = self.counters.hypothesis_hits - self.counters.passes;
        if fail_count != self.failures {
            return Err(Error::SchemaMismatch(
                "failures disagrees with counters".into(),
            ));
        }
        if (fail_count == 0) != self.counterexamples.is_empty() {
            return Err(Error::SchemaMismatch(
                "counterexamples must be nonempty exactly when failures > 0".into(),
            ));
        }
        Ok(())
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.config.theorem_id,
            self.counters.trials_run,
            self.counters.hypothesis_hits,
            self.counters.passes,
            self.failures,
            self.counters.filtered_total(),
            self.worst_residual
                .as_ref()
                .map(|wr| format!("{:.6e}", wr.value))
                .unwrap_or_default(),
            self.content_hash,
        )
    }
}

pub const CSV_HEADER: &str =
    "theorem_id,trials,hypothesis_hits,passes,failures,filtered,worst_residual,content_hash";

/// Run every trial of the campaign and fold the outcomes into a report.
/// The parallel and serial paths produce identical reports (up to wall time)
/// because trials are independent and folded in index order.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    run_campaign_with(cfg, true)
}

pub fn run_campaign_with(cfg: &CampaignConfig, parallel: bool) -> Result<CampaignReport> {
    cfg.validate()?;
    let start = std::time::Instant::now();
    let run_one = |trial: u64| -> Result<CheckOutcome> {
        let w = sample_witness(cfg, trial)?;
        evaluate(&cfg.theorem_id, &w, &cfg.tolerance)
    };
    let outcomes: Vec<CheckOutcome> = if parallel {
        (0..cfg.trials)
            .into_par_iter()
            .map(run_one)
            .collect::<Result<Vec<_>>>()?
    } else {
        (0..cfg.trials).map(run_one).collect::<Result<Vec<_>>>()?
    };

    let mut counters = Counters::default();
    let mut worst: Option<WorstResidual> = None;
    let mut counterexamples = Vec::new();
    let mut failures = 0u64;
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        let trial = trial as u64;
        counters.trials_run += 1;
        if !outcome.hypotheses_ok {
            let reason = outcome
                .filter_reason
                .unwrap_or_else(|| "unspecified".into());
            *counters.filtered.entry(reason).or_insert(0) += 1;
            continue;
        }
        counters.hypothesis_hits += 1;
        let residual = outcome
            .residual
            .ok_or_else(|| Error::SchemaMismatch("qualified outcome without residual".into()))?;
        if worst.as_ref().map_or(true, |w| residual < w.value) {
            worst = Some(WorstResidual {
                value: residual,
                trial_index: trial,
                witness: outcome.witness.clone(),
            });
        }
        if outcome.pass {
            counters.passes += 1;
        } else {
            failures += 1;
            if counterexamples.len() < MAX_COUNTEREXAMPLES {
                let (shrunk, shrunk_residual) =
                    match shrink_counterexample(&cfg.theorem_id, &outcome.witness, &cfg.tolerance)? {
                        Some((w, r)) => (Some(w), Some(r)),
                        None => (None, None),
                    };
                counterexamples.push(Counterexample {
                    trial_index: trial,
                    residual,
                    witness: outcome.witness,
                    shrunk,
                    shrunk_residual,
                });
            }
        }
    }

    let mut report = CampaignReport {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        counters,
        worst_residual: worst,
        failures,
        counterexamples,
        wall_time_s: start.elapsed().as_secs_f64(),
        content_hash: String::new(),
    };
    report.content_hash = report.compute_hash()?;
    report.validate()?;
    Ok(report)
}

/// A witness still fails when hypotheses hold and the claim does not.
fn still_fails(theorem_id: &str, w: &Witness, tol: &TolerancePolicy) -> Option<f64> {
    match evaluate(theorem_id, w, tol) {
        Ok(out) if out.hypotheses_ok && !out.pass => out.residual,
        _ => None,
    }
}

fn map_matrices(
    w: &Witness,
    mut f: impl FnMut(&ComplexMatrix) -> Result<ComplexMatrix>,
) -> Result<Witness> {
    let mut out = w.clone();
    for name in w.matrices.keys() {
        let m = w.matrix(name)?;
        out.set_matrix(name, &f(&m)?);
    }
    Ok(out)
}

/// Greedy witness minimization: principal-submatrix deletion, decimal
/// rounding, then off-diagonal damping, keeping only candidates that still
/// falsify the claim. Bounded by [`MAX_SHRINK_STEPS`] evaluations.
pub fn shrink_counterexample(
    theorem_id: &str,
    witness: &Witness,
    tol: &TolerancePolicy,
) -> Result<Option<(Witness, f64)>> {
    let mut current = witness.clone();
    let mut current_residual = match still_fails(theorem_id, &current, tol) {
        Some(r) => r,
        None => return Ok(None),
    };
    let mut steps = 0usize;
    let all_square_same_dim = |w: &Witness| -> Option<usize> {
        let mut dim = None;
        for m in w.matrices.values() {
            if m.re.len() != m.re.first().map(Vec::len).unwrap_or(0) {
                return None;
            }
            match dim {
                None => dim = Some(m.re.len()),
                Some(d) if d == m.re.len() => {}
                _ => return None,
            }
        }
        dim
    };

    // phase 1: drop one index at a time from every matrix simultaneously
    loop {
        let Some(dim) = all_square_same_dim(&current) else { break };
        if dim <= 1 || steps >= MAX_SHRINK_STEPS {
            break;
        }
        let mut reduced = None;
        for drop in 0..dim {
            if steps >= MAX_SHRINK_STEPS {
                break;
            }
            steps += 1;
            let keep: Vec<usize> = (0..dim).filter(|&i| i != drop).collect();
            let candidate = map_matrices(&current, |m| m.principal_submatrix(&keep))?;
            if let Some(r) = still_fails(theorem_id, &candidate, tol) {
                reduced = Some((candidate, r));
                break;
            }
        }
        match reduced {
            Some((w, r)) => {
                current = w;
                current_residual = r;
            }
            None => break,
        }
    }

    // phase 2: snap entries to few decimal digits, coarsest first
    for digits in 0..=6u32 {
        if steps >= MAX_SHRINK_STEPS {
            break;
        }
        steps += 1;
        let scale = 10f64.powi(digits as i32);
        let round = |x: f64| (x * scale).round() / scale;
        let candidate = map_matrices(&current, |m| {
            Ok(ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
                let z = m.get(i, j);
                Complex64::new(round(z.re), round(z.im))
            }))
        })?;
        if let Some(r) = still_fails(theorem_id, &candidate, tol) {
            current = candidate;
            current_residual = r;
            break;
        }
    }

    // phase 3: repeatedly damp off-diagonal entries toward zero
    while steps < MAX_SHRINK_STEPS {
        steps += 1;
        let candidate = map_matrices(&current, |m| {
            Ok(ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
                let z = m.get(i, j);
                if i == j {
                    z
                } else {
                    z * 0.5
                }
            }))
        })?;
        match still_fails(theorem_id, &candidate, tol) {
            Some(r) if candidate != current => {
                current = candidate;
                current_residual = r;
            }
            _ => break,
        }
    }

    if current == *witness {
        Ok(None)
    } else {
        Ok(Some((current, current_residual)))
    }
}

/// Re-run the campaign described by the report's embedded config and verify
/// the counters and content hash match byte for byte (wall time excluded).
pub fn replay(report: &CampaignReport) -> Result<()> {
    report.validate()?;
    let claimed = report.compute_hash()?;
    if claimed != report.content_hash {
        return Err(Error::ReplayMismatch(format!(
            "stored hash {} does not match canonical form {claimed}",
            report.content_hash
        )));
    }
    let fresh = run_campaign(&report.config)?;
    if fresh.counters != report.counters {
        return Err(Error::ReplayMismatch(format!(
            "counters diverged: stored {:?}, replayed {:?}",
            report.counters, fresh.counters
        )));
    }
    if fresh.content_hash != report.content_hash {
        return Err(Error::ReplayMismatch(
            "content hash diverged on replay".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_sampling_is_deterministic() {
        let cfg = CampaignConfig::for_theorem("le17", 7).unwrap();
        let a = sample_witness(&cfg, 13).unwrap();
        let b = sample_witness(&cfg, 13).unwrap();
        assert_eq!(a, b);
        let c = sample_witness(&cfg, 14).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn campaign_counters_are_consistent() {
        let mut cfg = CampaignConfig::for_theorem("le17", 11).unwrap();
        cfg.trials = 60;
        let report = run_campaign(&cfg).unwrap();
        report.validate().unwrap();
        assert_eq!(report.counters.trials_run, 60);
        assert!(report.counters.hypothesis_hits > 0);
        assert_eq!(report.counters.passes, report.counters.hypothesis_hits);
        assert!(report.counters.filtered_total() > 0, "{:?}", report.counters);
    }

    #[test]
    fn parallel_and_serial_runs_agree() {
        let mut cfg = CampaignConfig::for_theorem("t2", 5).unwrap();
        cfg.trials = 40;
        let par = run_campaign_with(&cfg, true).unwrap();
        let ser = run_campaign_with(&cfg, false).unwrap();
        assert_eq!(par.content_hash, ser.content_hash);
        assert_eq!(par.counters, ser.counters);
    }

    #[test]
    fn replay_round_trips_and_detects_tampering() {
        let mut cfg = CampaignConfig::for_theorem("e41", 3).unwrap();
        cfg.trials = 30;
        let report = run_campaign(&cfg).unwrap();
        replay(&report).unwrap();
        // tampered counters that still satisfy the structural invariants
        let mut bad = report.clone();
        bad.counters.passes -= 1;
        bad.counters.hypothesis_hits -= 1;
        *bad.counters.filtered.entry("fabricated".into()).or_insert(0) += 1;
        bad.content_hash = bad.compute_hash().unwrap();
        assert!(matches!(replay(&bad), Err(Error::ReplayMismatch(_))));
    }

    #[test]
    fn negative_control_finds_small_counterexamples() {
        let mut cfg = CampaignConfig::for_theorem("negctl", 1).unwrap();
        cfg.trials = 50;
        let report = run_campaign(&cfg).unwrap();
        assert!(report.failures > 0);
        let ce = &report.counterexamples[0];
        let shrunk = ce.shrunk.as_ref().expect("shrinker should reduce");
        let dim = shrunk.matrices.values().next().unwrap().re.len();
        assert!(dim <= 2, "shrunk dim {dim}");
        // the shrunk witness must still falsify the claim
        assert!(still_fails("negctl", shrunk, &cfg.tolerance).is_some());
    }

    #[test]
    fn every_theorem_has_a_default_campaign() {
        for id in THEOREM_IDS {
            let cfg = CampaignConfig::for_theorem(id, 1).unwrap();
            cfg.validate().unwrap();
            // each sampler produces a usable witness for its checker
            let w = sample_witness(&cfg, 0).unwrap();
            evaluate(id, &w, &cfg.tolerance).unwrap();
        }
    }

    #[test]
    fn report_json_round_trip() {
        let mut cfg = CampaignConfig::for_theorem("e25", 2).unwrap();
        cfg.trials = 10;
        let report = run_campaign(&cfg).unwrap();
        let s = serde_json::to_string(&report).unwrap();
        let back: CampaignReport = serde_json::from_str(&s).unwrap();
        assert_eq!(report, back);
        assert_eq!(back.compute_hash().unwrap(), back.content_hash);
    }

    #[test]
    fn csv_row_has_header_arity() {
        let mut cfg = CampaignConfig::for_theorem("remark", 2).unwrap();
        cfg.trials = 1;
        let report = run_campaign(&cfg).unwrap();
        assert_eq!(
            report.csv_row().split(',').count(),
            CSV_HEADER.split(',').count()
        );
    }
}
