//! Witness search on the wreath ambient and a seeded sampled audit.
//!
//! `cargo run --release --example wreath_audit -- [samples] [seed]`

use rankgrowth::audit::{audit_all, audit_group, build_ambient, validate_witness, AuditMode, TopMode};
use rankgrowth::perm::Perm;

fn main() -> rankgrowth::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    for mode in [TopMode::S3, TopMode::C3] {
        let a = build_ambient(mode);
        let r = audit_group("ambient".into(), &a.group, a.pairs(), mode);
        println!("{mode:?} ambient, order {}: (1) {} (2) {}", r.order, r.cond1, r.cond2);
        if let Some(w) = &r.witness_cycles {
            let g = Perm::from_cycles(24, w)?;
            let v = validate_witness(&g, a.pairs());
            println!("  witness {w} on pairs {:?}, validator: {}", r.pair_used.as_ref().unwrap(), v.is_witness);
        }
        let run = audit_all(&a, AuditMode::Sampled { samples, seed, max_draws: 50 * samples }, 0)?;
        println!(
            "  sampled: {} candidates ({} distinct, {} draws rejected), {} counterexamples",
            run.reports.len(),
            run.distinct,
            run.rejected,
            run.counterexamples().count()
        );
    }
    Ok(())
}
