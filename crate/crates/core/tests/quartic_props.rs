use proptest::prelude::*;
use rankgrowth::numfield::fp::primes_below;
use rankgrowth::numfield::{cubic_field, elem, FpPoly};
use rankgrowth::quartic::{
    enumerate_square_norm_classes, galois_group_quartic, quartic_disc, quartic_from_class, resolvent_matches,
    same_quartic_field, same_square_class, QuarticGalois,
};

fn patterns(g: &[i64; 4], n: usize) -> Vec<Vec<usize>> {
    let d = quartic_disc(g);
    primes_below(100_000)
        .into_iter()
        .filter(|&p| d % p as i128 != 0)
        .take(n)
        .map(|p| {
            let mut v = FpPoly::from_ints(p, &[g[0], g[1], g[2], g[3], 1]).factor_degrees();
            v.sort_unstable();
            v
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_galois_group_agrees_with_frobenius(c in prop::array::uniform4(-9i64..10)) {
        let Ok(gal) = galois_group_quartic(&c) else { return Ok(()) };
        let pats = patterns(&c, 300);
        let has = |t: &[usize]| pats.iter().any(|p| p == t);
        match gal {
            QuarticGalois::S4 => prop_assert!(has(&[4]) && has(&[1, 3]) && has(&[1, 1, 2])),
            QuarticGalois::A4 => prop_assert!(!has(&[4]) && !has(&[1, 1, 2]) && has(&[1, 3])),
            // subgroups of D4 have no 3-cycles
            QuarticGalois::Other => prop_assert!(!has(&[1, 3])),
        }
    }

    #[test]
    fn square_classes_are_symmetric(x in prop::array::uniform3(-6i64..7), y in prop::array::uniform3(-6i64..7)) {
        let k = cubic_field([0, -1, -1]).unwrap();
        let (x, y) = (elem(x), elem(y));
        prop_assume!(k.norm(&x) != 0.into() && k.norm(&y) != 0.into());
        prop_assert!(same_square_class(&k, &x, &x));
        prop_assert_eq!(same_square_class(&k, &x, &y), same_square_class(&k, &y, &x));
    }

    #[test]
    fn square_classes_are_transitive(x in prop::array::uniform3(-6i64..7), u in prop::array::uniform3(-4i64..5), v in prop::array::uniform3(-4i64..5)) {
        let k = cubic_field([0, -1, -1]).unwrap();
        let (x, u, v) = (elem(x), elem(u), elem(v));
        prop_assume!([&x, &u, &v].iter().all(|z| k.norm(z) != 0.into()));
        let y = k.mul(&x, &k.mul(&u, &u));
        let z = k.mul(&y, &k.mul(&v, &v));
        prop_assert!(same_square_class(&k, &x, &y) && same_square_class(&k, &y, &z));
        prop_assert!(same_square_class(&k, &x, &z));
    }

    #[test]
    fn rational_square_scaling_keeps_the_field(r in 2i64..6, idx in 0usize..5) {
        let k = cubic_field([0, -1, -1]).unwrap();
        let classes = enumerate_square_norm_classes(&k, 2);
        let a = &classes[idx % classes.len()].alpha;
        let scaled = k.mul(a, &elem([r * r, 0, 0]));
        let (q, qs) = (quartic_from_class(&k, a).unwrap(), quartic_from_class(&k, &scaled).unwrap());
        prop_assert!(same_quartic_field(&q.coeffs, &qs.coeffs));
    }
}

#[test]
fn every_constructed_quartic_has_resolvent_field_k3() {
    for (cubic, want) in [([0, -1, -1], QuarticGalois::S4), ([0, -3, -1], QuarticGalois::A4), ([0, 4, -1], QuarticGalois::S4)] {
        let k = cubic_field(cubic).unwrap();
        for cls in enumerate_square_norm_classes(&k, 2) {
            let q = quartic_from_class(&k, &cls.alpha).unwrap();
            assert!(resolvent_matches(&k, &q), "{cubic:?} {:?}", q.coeffs);
            assert_eq!(q.galois, want);
        }
    }
}
