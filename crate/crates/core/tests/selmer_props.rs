use proptest::prelude::*;
use rankgrowth::selmer::{corollary_cases, descent_ladder, descent_step, rank_bound, twist_dim_relation, SelmerLedger, TwistDim};

fn ledger() -> impl Strategy<Value = SelmerLedger> {
    (prop::collection::vec(0u64..3, 0..6), 0u64..10).prop_flat_map(|(local_dims, dim_sel)| {
        let total: u64 = local_dims.iter().sum();
        (Just(local_dims), Just(dim_sel), 0..=dim_sel.min(total)).prop_map(|(local_dims, dim_sel, dim_vt)| SelmerLedger {
            dim_sel,
            dim_vt,
            local_dims,
            torsion_dim: None,
            sha_dim: None,
        })
    })
}

proptest! {
    #[test]
    fn relation_is_nonempty_with_fixed_parity(l in ledger()) {
        let set = twist_dim_relation(&l).unwrap();
        let q = l.local_total() - l.dim_vt;
        prop_assert!(!set.is_empty());
        prop_assert!(set.iter().all(|&d| d % 2 == (l.dim_sel - l.dim_vt + q) % 2));
    }

    #[test]
    fn corollary_is_a_member(l in ledger()) {
        let set = twist_dim_relation(&l).unwrap();
        match corollary_cases(&l).unwrap() {
            TwistDim::Exact(v) => {
                prop_assert!(l.quotient_dim() <= 1);
                prop_assert_eq!(set.into_iter().collect::<Vec<_>>(), vec![v]);
            }
            TwistDim::Range(r) => prop_assert_eq!(r, set),
        }
    }

    #[test]
    fn inconsistent_ledgers_are_rejected(l in ledger(), extra in 1u64..4) {
        let bad = SelmerLedger { dim_vt: l.dim_sel.min(l.local_total()) + extra, ..l };
        prop_assert!(twist_dim_relation(&bad).is_err());
    }

    #[test]
    fn ladder_keeps_parity_and_inverts(d in 0i64..200) {
        let l = descent_ladder(d).unwrap();
        prop_assert_eq!(l.endpoint as i64, d % 2);
        prop_assert_eq!(l.path.len() as u64, l.steps + 1);
        prop_assert_eq!(descent_step(d as u64 + 2).unwrap(), d as u64);
    }

    #[test]
    fn rank_decomposition(sel in 0u64..12, t in 0u64..3, s in 0u64..6) {
        let l = SelmerLedger { dim_sel: sel, dim_vt: 0, local_dims: vec![], torsion_dim: Some(t), sha_dim: Some(s) };
        match rank_bound(&l) {
            Ok(r) => {
                prop_assert_eq!(r.rank.unwrap() + t + s, sel);
                prop_assert!(r.decomposition_checked);
                prop_assert!(r.max_rank >= r.rank.unwrap());
            }
            Err(_) => prop_assert!(t + s > sel),
        }
    }
}
