//! Induced permutation characters of S4 and A4 and the balance
//! `⟨Ind_K, χ⟩ − ⟨1, χ⟩ = ⟨Ind_M, χ⟩ − ⟨Ind_K3, χ⟩` on every irreducible.

use rankgrowth::chars::{decompose, IdentitySetup};

fn main() -> rankgrowth::Result<()> {
    for s in [IdentitySetup::s4()?, IdentitySetup::a4()?] {
        println!("{} character table:", s.classes.name);
        let reps: Vec<String> = s.classes.representatives.iter().map(|r| r.to_cycle_string()).collect();
        println!("  classes {}", reps.join(" "));
        for chi in &s.table {
            let row: Vec<String> = chi.values.iter().map(|v| v.to_string()).collect();
            println!("  [{}]", row.join(", "));
        }
        for (name, f) in [("Ind_K", &s.ind_k), ("Ind_K3", &s.ind_k3), ("Ind_M", &s.ind_m)] {
            let m: Vec<String> = decompose(&s.table, f)?.iter().map(|c| c.to_string()).collect();
            println!("  {name:<7} multiplicities {}", m.join(" "));
        }
        for (i, chi) in s.table.iter().enumerate() {
            let (l, r) = s.rank_growth_identity(chi)?;
            println!("  χ{i}: {l} = {r}");
        }
    }
    Ok(())
}
