use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankgrowth::perm::{
    conjugacy_classes, enumerate_subgroups, fiber_product, s4_onto_s3, wreath_product, Perm, PermGroup,
};
use std::collections::HashSet;

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Perm::from_images0(v).unwrap()
}

fn random_group(seed: u64, n: usize, gens: usize) -> (PermGroup, Vec<Perm>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g: Vec<Perm> = (0..gens).map(|_| random_perm(&mut rng, n)).collect();
    (PermGroup::generate(&g).unwrap(), g)
}

fn closure_size(gens: &[Perm]) -> usize {
    let n = gens[0].degree();
    let mut seen: HashSet<Perm> = HashSet::from([Perm::identity(n)]);
    let mut stack = vec![Perm::identity(n)];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_order_matches_closure(seed in any::<u64>(), n in 2usize..8, k in 1usize..4) {
        let (g, gens) = random_group(seed, n, k);
        prop_assert_eq!(g.order(), closure_size(&gens) as u128);
    }

    #[test]
    fn class_equation(seed in any::<u64>(), n in 2usize..7, k in 1usize..3) {
        let (g, _) = random_group(seed, n, k);
        let classes = conjugacy_classes(&g, None).unwrap();
        let total: u64 = classes.iter().map(|c| c.size).sum();
        prop_assert_eq!(total as u128, g.order());
        prop_assert!(classes.iter().all(|c| g.order() % c.size as u128 == 0));
    }

    #[test]
    fn membership_is_sound(seed in any::<u64>(), n in 3usize..8) {
        let (g, gens) = random_group(seed, n, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..20 {
            let mut w = Perm::identity(n);
            for _ in 0..rng.gen_range(1..12) {
                w = gens[rng.gen_range(0..gens.len())].compose(&w);
            }
            prop_assert!(g.contains(&w));
            let x = random_perm(&mut rng, n);
            let mut ext = gens.clone();
            ext.push(x.clone());
            let inside = PermGroup::generate(&ext).unwrap().order() == g.order();
            prop_assert_eq!(g.contains(&x), inside);
        }
    }

    #[test]
    fn rank_unrank_round_trip(seed in any::<u64>(), n in 2usize..7) {
        let (g, _) = random_group(seed, n, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let r = rng.gen_range(0..g.order() as u64);
            prop_assert_eq!(g.rank(&g.unrank(r)), Some(r));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn lagrange_for_enumerated_subgroups(seed in any::<u64>(), n in 3usize..6) {
        let (g, _) = random_group(seed, n, 2);
        for c in enumerate_subgroups(&g, None, None).unwrap() {
            prop_assert_eq!(g.order() % c.order, 0);
            prop_assert_eq!(c.representative.order(), c.order);
        }
    }

    #[test]
    fn wreath_order_formula(seed in any::<u64>(), m in 2usize..4, b in 2usize..4) {
        let (g, _) = random_group(seed, m, 1);
        let (top, _) = random_group(seed.rotate_left(7), b, 2);
        let (w, blocks) = wreath_product(&g, &top);
        prop_assert_eq!(w.order(), g.order().pow(b as u32) * top.order());
        prop_assert_eq!(blocks.blocks, b);
    }

    #[test]
    fn fiber_order_counts_matching_pairs(seed in any::<u64>()) {
        let (g, _) = random_group(seed, 4, 2);
        let (h, _) = random_group(seed.rotate_left(11), 4, 2);
        let (qg, qh) = (s4_onto_s3(&g), s4_onto_s3(&h));
        let fp = fiber_product(&qg, &qh).unwrap();
        let he = h.elements();
        let want: usize = g
            .elements()
            .iter()
            .map(|x| he.iter().filter(|y| qg.apply(x) == qh.apply(y)).count())
            .sum();
        prop_assert_eq!(fp.order(), want as u128);
    }
}
