//! Run randomized verification campaigns for a few theorem ids and print a
//! summary table. Every campaign is fully determined by its seed.
//!
//! Run with: cargo run --example campaign

use sectorlab::harness::{run_campaign, CampaignConfig, CSV_HEADER};

fn main() {
    println!("{CSV_HEADER}");
    for id in ["chan301", "t0_303", "t2", "e41", "thmK"] {
        let mut cfg = CampaignConfig::for_theorem(id, 2024).unwrap();
        cfg.trials = 200;
        let report = run_campaign(&cfg).unwrap();
        println!("{}", report.csv_row());
    }
    println!();

    // counters in detail for one sector campaign: filtered trials are those
    // whose hypotheses (here, the sign condition Im A o Im B <= 0) failed
    let mut cfg = CampaignConfig::for_theorem("t2", 2024).unwrap();
    cfg.trials = 200;
    let report = run_campaign(&cfg).unwrap();
    let c = &report.counters;
    println!("t2 in detail:");
    println!("  trials          {}", c.trials_run);
    println!("  hypothesis hits {}", c.hypothesis_hits);
    println!("  passes          {}", c.passes);
    for (reason, count) in &c.filtered {
        println!("  filtered        {count} ({reason})");
    }
    if let Some(wr) = &report.worst_residual {
        println!(
            "  worst residual  {:.6e} at trial {} (closest approach to the bound)",
            wr.value, wr.trial_index
        );
    }
    println!("  content hash    {}", report.content_hash);
}
