use num_rational::Rational64;
use proptest::prelude::*;
use rankgrowth::chars::{inner_product, induce_trivial, Classes, ClassFunction, Cyc, IdentitySetup};
use rankgrowth::perm::enumerate_subgroups;
use std::sync::{Arc, LazyLock};

static SETUPS: LazyLock<Vec<IdentitySetup>> =
    LazyLock::new(|| vec![IdentitySetup::s4().unwrap(), IdentitySetup::a4().unwrap()]);

fn groups() -> Vec<Arc<Classes>> {
    vec![Classes::s4(), Classes::a4()]
}

#[test]
fn row_orthogonality() {
    for s in SETUPS.iter() {
        for (i, a) in s.table.iter().enumerate() {
            for (j, b) in s.table.iter().enumerate() {
                let want = Cyc::int(i64::from(i == j));
                assert_eq!(inner_product(a, b).unwrap(), want, "{} {i} {j}", s.classes.name);
            }
        }
    }
}

#[test]
fn column_orthogonality() {
    for s in SETUPS.iter() {
        let c = &s.classes;
        for i in 0..c.len() {
            for j in 0..c.len() {
                let sum = s.table.iter().fold(Cyc::int(0), |acc, chi| acc + chi.values[i] * chi.values[j].conj());
                let want = if i == j { Cyc::int((c.order() / c.sizes[i]) as i64) } else { Cyc::int(0) };
                assert_eq!(sum, want, "{} ({i},{j})", c.name);
            }
        }
    }
}

#[test]
fn frobenius_reciprocity_on_every_subgroup_class() {
    for c in groups() {
        for h in enumerate_subgroups(&c.group, None, None).unwrap() {
            let ind = induce_trivial(&c, &h.representative).unwrap();
            let elems = h.representative.elements();
            for chi in &SETUPS.iter().find(|s| s.classes.name == c.name).unwrap().table {
                let res: Cyc = elems.iter().fold(Cyc::int(0), |acc, g| acc + chi.at(g).unwrap());
                let res = res.scale(Rational64::new(1, elems.len() as i64));
                assert_eq!(inner_product(&ind, chi).unwrap(), res, "{} order {}", c.name, h.order);
            }
        }
    }
}

#[test]
fn a4_point_stabilizer_decomposition() {
    let s = &SETUPS[1];
    assert_eq!(s.h_k.order(), 3);
    assert_eq!(inner_product(&s.ind_k, &s.std).unwrap(), Cyc::int(1));
    assert_eq!(s.ind_k.degree(), Cyc::int(4));
}

proptest! {
    #[test]
    fn identity_holds_for_integer_class_functions(v in prop::collection::vec(-50i64..50, 5), which in 0usize..2) {
        let s = &SETUPS[which];
        let f = ClassFunction::from_ints(&s.classes, &v[..s.classes.len()]).unwrap();
        let (l, r) = s.rank_growth_identity(&f).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn inner_product_is_hermitian(a in prop::collection::vec(-9i64..9, 5), b in prop::collection::vec(-9i64..9, 5)) {
        let c = &SETUPS[0].classes;
        let f = ClassFunction::from_ints(c, &a).unwrap();
        let g = ClassFunction::from_ints(c, &b).unwrap();
        prop_assert_eq!(inner_product(&f, &g).unwrap(), inner_product(&g, &f).unwrap().conj());
    }
}
