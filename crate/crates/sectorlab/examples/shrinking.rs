//! Counterexample shrinking on a deliberately false claim: "Re(A o B) <=
//! Re A o Re B for all accretive A, B" (the true statement needs a sign
//! condition on Im A o Im B). The harness finds violations quickly and the
//! shrinker reduces them, typically down to a 1x1 witness.
//!
//! Run with: cargo run --example shrinking

use sectorlab::harness::{run_campaign, CampaignConfig};

fn main() {
    let mut cfg = CampaignConfig::for_theorem("negctl", 31).unwrap();
    cfg.trials = 100;
    let report = run_campaign(&cfg).unwrap();
    println!(
        "negative control: {} of {} qualifying trials falsified the claim",
        report.failures, report.counters.hypothesis_hits
    );
    let ce = report.counterexamples.first().expect("failures recorded");
    println!();
    println!(
        "first counterexample (trial {}, residual {:.4e}):",
        ce.trial_index, ce.residual
    );
    println!("{}", serde_json::to_string_pretty(&ce.witness).unwrap());
    if let (Some(shrunk), Some(r)) = (&ce.shrunk, ce.shrunk_residual) {
        println!();
        println!("after shrinking (still fails, residual {r:.4e}):");
        println!("{}", serde_json::to_string_pretty(shrunk).unwrap());
        println!();
        println!("A 1x1 witness makes the failure obvious: for a = x+iy, b = x-iy");
        println!("with y != 0, Re(ab) = x^2 + y^2 > x^2 = Re(a)Re(b).");
    }
}
