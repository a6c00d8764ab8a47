//! The end-to-end report for `y² = x³ + x + 1` over `x³ − x − 1`, driven
//! through the same entry point as the binary.
//!
//! `cargo run --release --example pipeline -- [dim Sel₂(E/K₃)]`

use rankgrowth::cli::{run, Command, ExternalDims, RunConfig, RunInputs};

fn main() {
    let sel_k3: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let mut cfg = RunConfig { external: Some(ExternalDims { sel_q: 0, sel_k3 }), ..Default::default() };
    cfg.bounds.census_x_max = 1 << 18;
    let stdout = std::io::stdout();
    if let Err(e) = run(Command::Pipeline, &cfg, &RunInputs::default(), &mut stdout.lock()) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
