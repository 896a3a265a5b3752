//! Thin command-line shell over the sectorlab library. All computation and
//! parallelism live in the library; this binary only parses flags, wires
//! files, and maps results to exit codes (0 = pass, 1 = inequality failure
//! or non-accretive input, 2 = usage/input error).

use clap::{Args, Parser, Subcommand};
use sectorlab::harness::{
    replay as replay_report, run_campaign, CampaignConfig, CampaignReport, CSV_HEADER,
};
use sectorlab::inequalities::{evaluate, remark_matrices, THEOREM_IDS};
use sectorlab::matrix::{ComplexMatrix, HermitianMatrix, MatrixJson, TolerancePolicy};
use sectorlab::sector::{random_sector, sector_angle, GeneratorConfig, SignCondition};
use sectorlab::witness::Witness;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sectorlab", about = "Randomized verification of Hadamard-product matrix inequalities", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a randomized campaign for one theorem id.
    Verify(VerifyArgs),
    /// Run the full theorem suite and write per-theorem reports plus a CSV summary.
    VerifyAll(VerifyAllArgs),
    /// Compute the sector angle of a matrix file.
    Angle(AngleArgs),
    /// Generate a random sector matrix and print it as matrix JSON.
    Gen(GenArgs),
    /// Print a narrated fixed computation (remark | one-dim | collapse).
    Demo(DemoArgs),
    /// Re-run a stored report and verify counters and content hash.
    Replay(ReplayArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id (see --help of `verify` errors for the list).
    theorem_id: String,
    #[arg(long, default_value_t = 300)]
    trials: u64,
    #[arg(long)]
    dim: Option<usize>,
    /// Sector angle bound in radians (degrees with --degrees).
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    degrees: bool,
    /// Seed; falls back to SECTORLAB_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Positive-map token (identity, trace, perm:.., submatrix:.., pinch:a+b).
    #[arg(long)]
    map: Option<String>,
    /// Operator-mean token for sigma (arithmetic, geometric, harmonic, ...).
    #[arg(long)]
    mean: Option<String>,
    #[arg(long)]
    sigma1: Option<String>,
    #[arg(long)]
    sigma2: Option<String>,
    /// Scalar-function token (power:T, weighted-arithmetic:W, ...).
    #[arg(long)]
    function: Option<String>,
    /// Absolute tolerance override.
    #[arg(long)]
    tol: Option<f64>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report to stdout instead of the human summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyAllArgs {
    #[arg(long, default_value_t = 300)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for per-theorem reports and summary.csv.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AngleArgs {
    matrix_file: PathBuf,
    /// Print the angle in degrees only.
    #[arg(long)]
    degrees: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, default_value_t = 0.5)]
    theta: f64,
    #[arg(long)]
    degrees: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Trial index within the seed's stream.
    #[arg(long, default_value_t = 0)]
    trial: u64,
    /// Lower spectral bound on the Hermitian part.
    #[arg(long)]
    m: Option<f64>,
    /// Upper spectral bound on the Hermitian part.
    #[arg(long = "M")]
    big_m: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    /// remark | one-dim | collapse
    name: String,
}

#[derive(Args)]
struct ReplayArgs {
    report_file: PathBuf,
}

fn env_seed() -> u64 {
    std::env::var("SECTORLAB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::VerifyAll(args) => cmd_verify_all(args),
        Command::Angle(args) => cmd_angle(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Demo(args) => cmd_demo(&args.name),
        Command::Replay(args) => cmd_replay(args),
    }
}

fn build_config(args: &VerifyArgs) -> Result<CampaignConfig, String> {
    if !THEOREM_IDS.contains(&args.theorem_id.as_str()) {
        return Err(format!(
            "unknown theorem id '{}'; known ids: {}",
            args.theorem_id,
            THEOREM_IDS.join(", ")
        ));
    }
    let seed = args.seed.unwrap_or_else(env_seed);
    let mut cfg = CampaignConfig::for_theorem(&args.theorem_id, seed).map_err(|e| e.to_string())?;
    cfg.trials = args.trials;
    if let Some(d) = args.dim {
        cfg.generator.dim = d;
    }
    if let Some(t) = args.theta {
        cfg.generator.theta = if args.degrees { t.to_radians() } else { t };
    }
    if let Some(m) = &args.map {
        cfg.tokens.insert("map".into(), m.clone());
    }
    if let Some(m) = &args.mean {
        cfg.tokens.insert("sigma".into(), m.clone());
    }
    if let Some(m) = &args.sigma1 {
        cfg.tokens.insert("sigma1".into(), m.clone());
    }
    if let Some(m) = &args.sigma2 {
        cfg.tokens.insert("sigma2".into(), m.clone());
    }
    if let Some(f) = &args.function {
        cfg.tokens.insert("function".into(), f.clone());
    }
    if let Some(tol) = args.tol {
        cfg.tolerance.abs_tol = tol;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn print_summary(report: &CampaignReport) {
    let c = &report.counters;
    println!(
        "{}: {} trials, {} hypothesis hits, {} passes, {} failures",
        report.config.theorem_id, c.trials_run, c.hypothesis_hits, c.passes, report.failures
    );
    if !c.filtered.is_empty() {
        let parts: Vec<String> = c.filtered.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        println!("  filtered: {}", parts.join(", "));
    }
    if let Some(wr) = &report.worst_residual {
        println!("  worst residual {:.6e} at trial {}", wr.value, wr.trial_index);
    }
    for ce in &report.counterexamples {
        println!(
            "  counterexample at trial {} (residual {:.6e}):",
            ce.trial_index, ce.residual
        );
        let shown = ce.shrunk.as_ref().unwrap_or(&ce.witness);
        println!("{}", serde_json::to_string_pretty(shown).expect("witness serializes"));
    }
}

fn write_report(report: &CampaignReport, path: &Path) -> Result<(), String> {
    let body = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    std::fs::write(path, body + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let cfg = match build_config(&args) {
        Ok(c) => c,
        Err(msg) => return usage_error(&msg),
    };
    let report = match run_campaign(&cfg) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print_summary(&report);
    }
    if let Some(path) = &args.out {
        if let Err(msg) = write_report(&report, path) {
            return usage_error(&msg);
        }
    }
    if report.failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

/// The suite excludes the deliberately false negative-control claim, which
/// exists to prove the harness can fail.
fn suite_ids() -> Vec<&'static str> {
    THEOREM_IDS.iter().copied().filter(|id| *id != "negctl").collect()
}

fn cmd_verify_all(args: VerifyAllArgs) -> ExitCode {
    let seed = args.seed.unwrap_or_else(env_seed);
    if let Some(dir) = &args.out {
        if let Err(e) = std::fs::create_dir_all(dir) {
            return usage_error(&format!("cannot create {}: {e}", dir.display()));
        }
    }
    let mut failures = 0u64;
    let mut rows = vec![CSV_HEADER.to_string()];
    let mut reports = Vec::new();
    for id in suite_ids() {
        let mut cfg = match CampaignConfig::for_theorem(id, seed) {
            Ok(c) => c,
            Err(e) => return usage_error(&e.to_string()),
        };
        cfg.trials = args.trials;
        let report = match run_campaign(&cfg) {
            Ok(r) => r,
            Err(e) => return usage_error(&format!("{id}: {e}")),
        };
        failures += report.failures;
        rows.push(report.csv_row());
        if !args.json {
            print_summary(&report);
        }
        if let Some(dir) = &args.out {
            if let Err(msg) = write_report(&report, &dir.join(format!("{id}.json"))) {
                return usage_error(&msg);
            }
        }
        reports.push(report);
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
    }
    let csv = rows.join("\n") + "\n";
    if let Some(dir) = &args.out {
        if let Err(e) = std::fs::write(dir.join("summary.csv"), &csv) {
            return usage_error(&format!("cannot write summary.csv: {e}"));
        }
    } else if !args.json {
        print!("{csv}");
    }
    if failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix, String> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let json: MatrixJson = serde_json::from_str(&body).map_err(|e| e.to_string())?;
    json.to_matrix().map_err(|e| e.to_string())
}

fn cmd_angle(args: AngleArgs) -> ExitCode {
    let m = match read_matrix(&args.matrix_file) {
        Ok(m) => m,
        Err(msg) => return usage_error(&msg),
    };
    match sector_angle(&m) {
        Ok(theta) => {
            if args.degrees {
                println!("{:.10}", theta.to_degrees());
            } else {
                println!("{:.10} rad ({:.6} deg)", theta, theta.to_degrees());
            }
            ExitCode::SUCCESS
        }
        Err(_) => {
            eprintln!("not accretive");
            ExitCode::from(1)
        }
    }
}

fn cmd_gen(args: GenArgs) -> ExitCode {
    let theta = if args.degrees { args.theta.to_radians() } else { args.theta };
    let mut cfg = GeneratorConfig::new(args.dim, theta, args.seed.unwrap_or_else(env_seed));
    cfg.re_lower = args.m;
    cfg.re_upper = args.big_m;
    cfg.sign = SignCondition::None;
    if let Err(e) = cfg.validate() {
        return usage_error(&e.to_string());
    }
    let mut rng = cfg.trial_rng(args.trial);
    let s = match random_sector(&cfg, &mut rng) {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    let json = MatrixJson::from_matrix(&s.matrix);
    let body = serde_json::to_string_pretty(&json).expect("matrix serializes");
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body + "\n") {
                return usage_error(&format!("cannot write {}: {e}", path.display()));
            }
        }
        None => println!("{body}"),
    }
    eprintln!("certified sector angle: {:.10}", s.theta);
    ExitCode::SUCCESS
}

fn fmt_matrix(m: &ComplexMatrix) -> String {
    let mut rows = Vec::new();
    for i in 0..m.nrows() {
        let cells: Vec<String> = (0..m.ncols())
            .map(|j| {
                let z = m.get(i, j);
                format!("{:+.2}{:+.2}i", z.re, z.im)
            })
            .collect();
        rows.push(format!("  [ {} ]", cells.join("  ")));
    }
    rows.join("\n")
}

fn demo_remark() -> ExitCode {
    let tol = TolerancePolicy::default();
    let (a, b) = remark_matrices();
    println!("demo: the 2x2 identity-map counterexample");
    println!("A =\n{}", fmt_matrix(&a));
    println!("B =\n{}", fmt_matrix(&b));
    let ra = a.cartesian().unwrap().0;
    let rb = b.cartesian().unwrap().0;
    let had = ra.hadamard(&rb).unwrap();
    println!("Re(A) o Re(B) =\n{}", fmt_matrix(&had.to_complex()));
    let re_prod = HermitianMatrix::from_complex(&a.hadamard(&b).unwrap()).unwrap();
    let prod_eigs = re_prod.eigvals().unwrap();
    println!("Re(A o B) =\n{}", fmt_matrix(&re_prod.to_complex()));
    println!("spectrum of Re(A o B): {{{:.1}, {:.1}}}", prod_eigs[0], prod_eigs[1]);
    let diff = re_prod.sub(&had).unwrap();
    let diff_eigs = diff.eigvals().unwrap();
    println!(
        "difference spectrum: {{{:.1}, {:.1}}} (indefinite: neither Loewner order holds)",
        diff_eigs[0], diff_eigs[1]
    );
    println!("|difference|_spectral = {:.1}", diff.spectral_norm());
    let out = evaluate("remark", &Witness::new(), &tol).unwrap();
    println!("verdict: {}", if out.pass { "equality fails as expected" } else { "UNEXPECTED" });
    if out.pass { ExitCode::SUCCESS } else { ExitCode::from(1) }
}

fn demo_one_dim() -> ExitCode {
    use num_complex::Complex64 as C;
    println!("demo: sector membership is not closed under the Hadamard product");
    let a = ComplexMatrix::scalar(C::new(1.0, 1.0));
    println!("A = B = 1+1i (1x1), sector angle {:.10} rad (45 deg)", sector_angle(&a).unwrap());
    let prod = a.hadamard(&a).unwrap();
    let z = prod.get(0, 0);
    println!("A o B = {}{:+}i", z.re, z.im);
    match sector_angle(&prod) {
        Ok(_) => {
            println!("UNEXPECTED: product is accretive");
            ExitCode::from(1)
        }
        Err(_) => {
            println!("A o B = 2i has zero real part: not accretive, so not in any sector");
            ExitCode::SUCCESS
        }
    }
}

fn demo_collapse() -> ExitCode {
    use sectorlab::harness::sample_witness;
    println!("demo: at theta = 0 every sector bound collapses onto its Hermitian ancestor");
    println!("{:<10} {:<10} {:>14} {:>14} {:>10}", "sector", "ancestor", "residual", "ancestor", "delta");
    let tol = TolerancePolicy::default();
    let pairs = [("t0_303", "chan301"), ("e305", "t1_308"), ("t4", "e39")];
    let mut ok = true;
    for (sector_id, pd_id) in pairs {
        let mut cfg = CampaignConfig::for_theorem(pd_id, 12).unwrap();
        cfg.generator.theta = 0.0;
        let mut w = sample_witness(&cfg, 0).unwrap();
        if sector_id == "t4" {
            // shared tokens so both checkers see the same map and function
            w.tokens.insert("function".into(), "power:0.5".into());
            w.tokens.insert("map".into(), "identity".into());
        }
        let pd = evaluate(pd_id, &w, &tol).unwrap();
        let sec = evaluate(sector_id, &w, &tol).unwrap();
        let (r1, r2) = (sec.residual.unwrap_or(f64::NAN), pd.residual.unwrap_or(f64::NAN));
        let delta = (r1 - r2).abs();
        ok &= delta < 1e-9 && sec.pass == pd.pass;
        println!("{sector_id:<10} {pd_id:<10} {r1:>14.6e} {r2:>14.6e} {delta:>10.1e}");
    }
    if ok {
        println!("all residual deltas below 1e-9");
        ExitCode::SUCCESS
    } else {
        println!("COLLAPSE MISMATCH");
        ExitCode::from(1)
    }
}

fn cmd_demo(name: &str) -> ExitCode {
    match name {
        "remark" => demo_remark(),
        "one-dim" => demo_one_dim(),
        "collapse" => demo_collapse(),
        other => usage_error(&format!("unknown demo '{other}'; choose remark | one-dim | collapse")),
    }
}

fn cmd_replay(args: ReplayArgs) -> ExitCode {
    let body = match std::fs::read_to_string(&args.report_file) {
        Ok(b) => b,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", args.report_file.display())),
    };
    if body.trim().is_empty() {
        return usage_error("empty report file");
    }
    let report: CampaignReport = match serde_json::from_str(&body) {
        Ok(r) => r,
        Err(e) => return usage_error(&format!("report does not parse: {e}")),
    };
    match replay_report(&report) {
        Ok(()) => {
            println!(
                "replay ok: {} ({} trials, hash {})",
                report.config.theorem_id, report.counters.trials_run, report.content_hash
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("replay failed: {e}");
            ExitCode::from(1)
        }
    }
}
