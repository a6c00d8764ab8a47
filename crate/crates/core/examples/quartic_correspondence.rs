//! Quartic fields from square-norm classes of a cubic field: S4 fields from
//! an S3 cubic, A4 fields in threes from a cyclic cubic.
//!
//! `cargo run --release --example quartic_correspondence -- [height]`

use rankgrowth::numfield::cubic_field;
use rankgrowth::quartic::correspondence_census;

fn main() -> rankgrowth::Result<()> {
    let height: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for c in [[0, -1, -1], [0, -3, -1]] {
        let k = cubic_field(c)?;
        let (summary, pairs) = correspondence_census(&k, height)?;
        println!("{} ({:?}):", poly(&[c[2], c[1], c[0]]), k.galois);
        for (cls, q) in &pairs {
            let a: Vec<String> = cls.alpha.iter().map(|x| x.to_string()).collect();
            println!("  α = ({}), N = {:>4} -> {}, {:?}", a.join(", "), cls.norm, poly(&q.coeffs), q.galois);
        }
        println!(
            "  {} classes, {} fields, ratio {:?} (expected {}), resolvent failures {}",
            summary.classes, summary.fields, summary.ratio, summary.expected_ratio, summary.resolvent_failures
        );
    }
    Ok(())
}

/// `x^n + Σ c_i x^i` with `c` in increasing degree.
fn poly(c: &[i64]) -> String {
    const SUP: [&str; 5] = ["", "", "²", "³", "⁴"];
    let n = c.len();
    let mut s = format!("x{}", SUP[n]);
    for i in (0..n).rev() {
        let t = c[i];
        if t != 0 {
            let m = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x{}", SUP[i]),
            };
            let mag = if t.abs() == 1 && i > 0 { String::new() } else { t.abs().to_string() };
            s += &format!(" {} {mag}{m}", if t < 0 { '-' } else { '+' });
        }
    }
    s
}
