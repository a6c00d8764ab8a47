//! Class groups, units and regulators of cubic fields.
//!
//! `cargo run --release --example class_group -- a b c` for `x³ + ax² + bx + c`.

use rankgrowth::numfield::{class_group, cubic_field};

fn main() -> rankgrowth::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let fields: Vec<[i64; 3]> = if args.len() == 3 {
        vec![[args[0], args[1], args[2]]]
    } else {
        vec![[0, -1, -1], [0, -3, -1], [0, 4, -1], [0, 1, -7], [0, -10, -1]]
    };
    for c in fields {
        let k = cubic_field(c)?;
        match class_group(&k) {
            Ok(cg) => {
                let inv: Vec<String> = cg.invariants.iter().map(|d| d.to_string()).collect();
                println!(
                    "{}: disc {}, {:?}, h = {} [{}], R = {:.6}",
                    cubic(c), k.disc, k.galois, cg.order, inv.join(", "), cg.units.regulator
                );
            }
            Err(e) => println!("{}: {e}", cubic(c)),
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
