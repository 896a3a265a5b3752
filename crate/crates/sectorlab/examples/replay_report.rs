//! Reports are replayable: the campaign configuration embedded in a report
//! regenerates every witness bit for bit, and a content hash over the
//! canonical report (wall time excluded) detects any tampering.
//!
//! Run with: cargo run --example replay_report

use sectorlab::harness::{replay, run_campaign, CampaignConfig};

fn main() {
    let mut cfg = CampaignConfig::for_theorem("e41", 99).unwrap();
    cfg.trials = 80;
    let report = run_campaign(&cfg).unwrap();
    println!(
        "campaign: {} trials, {} passes, hash {}",
        report.counters.trials_run, report.counters.passes, report.content_hash
    );

    // round trip through JSON, then replay from the embedded config
    let serialized = serde_json::to_string(&report).unwrap();
    let restored = serde_json::from_str(&serialized).unwrap();
    match replay(&restored) {
        Ok(()) => println!("replay: counters and hash reproduced exactly"),
        Err(e) => println!("replay: UNEXPECTED mismatch: {e}"),
    }

    // tamper with the seed: the rerun produces different counters
    let mut tampered = report.clone();
    tampered.config.generator.seed += 1;
    tampered.content_hash = tampered.compute_hash().unwrap();
    match replay(&tampered) {
        Ok(()) => println!("tampered replay: UNEXPECTEDLY passed"),
        Err(e) => println!("tampered replay rejected: {e}"),
    }
}
