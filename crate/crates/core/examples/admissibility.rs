//! The three admissibility clauses on a few (curve, cubic) pairs.

use rankgrowth::ellcurve::{admissible_check, EllipticCurve, ParityMode};
use rankgrowth::numfield::{cubic_field, ClassGroupOptions};

fn main() -> rankgrowth::Result<()> {
    let cases = [((1, 1), [0, -1, -1]), ((1, 1), [0, 1, 1]), ((1, 1), [0, 4, -1]), ((-3, 1), [0, -1, -1]), ((-7, 6), [0, -1, -1])];
    for ((a, b), c) in cases {
        let e = EllipticCurve::new(a, b)?;
        let k = cubic_field(c)?;
        for mode in [ParityMode::Odd, ParityMode::Even] {
            let r = admissible_check(&e, &k, mode, &ClassGroupOptions::default())?;
            println!(
                "y² = {}, {} ({mode:?}): 2-rank {} | not contained {} | v0 {:?} => {}",
                cubic([0, a, b]),
                cubic(c),
                r.class_group_2_rank,
                r.not_contained,
                r.v0.map(|v| v.place),
                if r.admissible { "admissible" } else { "not admissible" }
            );
        }
    }
    Ok(())
}

fn cubic(c: [i64; 3]) -> String {
    let mut s = "x³".to_string();
    for (t, m) in [(c[0], "x²"), (c[1], "x"), (c[2], "")] {
        if t != 0 {
            let mag = if t.abs() == 1 && !m.is_empty() { String::new() } else { t.abs().to_string() };
            s += &format!(" {} {mag}{m}", if t < 0 { '-' } else { '+' });
        }
    }
    s
}
