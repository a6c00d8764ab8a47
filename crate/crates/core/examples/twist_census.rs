//! Counts of squarefree products of qualifying degree-2 primes, checked
//! against the brute-force oracle, with the growth fit.
//!
//! `cargo run --release --example twist_census -- [log2 X]`

use rankgrowth::ellcurve::EllipticCurve;
use rankgrowth::numfield::{
    census, census_ladder, count_oracle, cubic_field, fit_exponent, pattern_fraction, CensusMode, CensusSetup,
};

fn main() -> rankgrowth::Result<()> {
    let top: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(22);
    let k = cubic_field([0, -1, -1])?;
    let e = EllipticCurve::new(1, 1)?;
    let (hits, total) = pattern_fraction(&k, CensusMode::S3, 100_000)?;
    println!("(1,2) primes below 1e5: {hits}/{total} = {:.4}", hits as f64 / total as f64);
    let setup = CensusSetup::new(&k, &e, CensusMode::S3, 1 << top, None)?;
    let first: Vec<u64> = setup.primes.iter().take(10).map(|p| p.p).collect();
    println!("{} qualifying primes, first {first:?}", setup.primes.len());
    let recs = census(&setup, &census_ladder(8, top))?;
    for r in &recs {
        let oracle = if r.x <= 1 << 18 { count_oracle(&k, &e, CensusMode::S3, r.x).to_string() } else { "-".into() };
        println!("X = 2^{:<2} count {:>6}  oracle {oracle}", r.x.trailing_zeros(), r.count);
    }
    let f = fit_exponent(&recs)?;
    println!("slope {:.4} (rms {:.3}), log exponent {:.3}", f.slope, f.slope_rms, f.log_exponent);
    Ok(())
}
