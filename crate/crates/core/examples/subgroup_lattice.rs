//! Subgroup classes and conjugacy classes of S4 and A4, plus the orders of
//! the fiber and wreath products used by the audit.

use rankgrowth::perm::{conjugacy_classes, enumerate_subgroups, fiber_product, s4_onto_s3, wreath_product, PermGroup};

fn main() -> rankgrowth::Result<()> {
    for (name, g) in [("S4", PermGroup::symmetric(4)), ("A4", PermGroup::alternating(4))] {
        let subs = enumerate_subgroups(&g, None, None)?;
        let total: usize = subs.iter().map(|c| c.class_size).sum();
        println!("{name}: {total} subgroups in {} conjugacy classes", subs.len());
        for c in &subs {
            println!("  order {:>2}  × {}", c.order, c.class_size);
        }
        let cls = conjugacy_classes(&g, None)?;
        let reps: Vec<String> = cls.iter().map(|c| format!("{}[{}]", c.representative.to_cycle_string(), c.size)).collect();
        println!("  element classes: {}", reps.join(" "));
    }
    let s4 = PermGroup::symmetric(4);
    let q = s4_onto_s3(&s4);
    let fp = fiber_product(&q, &q)?;
    let (w, _) = wreath_product(&fp, &PermGroup::symmetric(3));
    let (wc, _) = wreath_product(&fp, &PermGroup::cyclic(3));
    println!("S4 ×_S3 S4: {}; ≀S3: {}; ≀C3: {}", fp.order(), w.order(), wc.order());
    Ok(())
}
