//! Selmer dimension bookkeeping: the twist relation, its exact cases, the
//! descent ladder and the rank bound.

use rankgrowth::selmer::{corollary_cases, descent_ladder, log_exponent, rank_bound, twist_dim_relation, SelmerLedger};
use rankgrowth::numfield::CensusMode;

fn main() -> rankgrowth::Result<()> {
    let ledgers = [(2, 2, vec![1, 1]), (4, 1, vec![1, 1]), (3, 1, vec![2, 2]), (5, 0, vec![])];
    for (dim_sel, dim_vt, local_dims) in ledgers {
        let l = SelmerLedger { dim_sel, dim_vt, local_dims, torsion_dim: None, sha_dim: None };
        println!(
            "sel {dim_sel}, V_T {dim_vt}, locals {:?}: possible {:?}, corollary {:?}",
            l.local_dims,
            twist_dim_relation(&l)?,
            corollary_cases(&l)?
        );
    }
    for start in [4, 5, 0] {
        let l = descent_ladder(start)?;
        println!("ladder from {start}: {:?} ({} steps)", l.path, l.steps);
    }
    let l = SelmerLedger { dim_sel: 3, dim_vt: 0, local_dims: vec![], torsion_dim: Some(2), sha_dim: Some(1) };
    println!("rank bound {:?}", rank_bound(&l)?);
    for f in [CensusMode::S3, CensusMode::C3] {
        for m in [CensusMode::S3, CensusMode::C3] {
            println!("log exponent for {f:?} field, {m:?} division field: {:?}", log_exponent(f, m));
        }
    }
    Ok(())
}
