use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankgrowth::audit::{
    build_ambient, coherent_subgroup, corestriction_model, fiber_perm, find_witness, loc_class, profile,
    validate_witness, Ambient, TopMode,
};
use rankgrowth::perm::Perm;
use std::sync::LazyLock;

static S3_AMBIENT: LazyLock<Ambient> = LazyLock::new(|| build_ambient(TopMode::S3));

fn s3_index(p: &Perm) -> u8 {
    (0..6).find(|&s| fiber_perm(s) == *p).expect("an element of S3")
}

/// `s·w` for `w ∈ V4` written as bits, via the action on pair partitions.
fn act(s: u8, w: u8) -> u8 {
    if w == 0 {
        0
    } else {
        fiber_perm(s).apply(w as usize - 1) as u8 + 1
    }
}

#[test]
fn localization_class_is_well_defined() {
    for s in 0..6 {
        for v in 0..4 {
            for w in 0..4 {
                let shifted = v ^ w ^ act(s, w);
                assert_eq!(loc_class(s, shifted), loc_class(s, v), "s={s} v={v} w={w}");
            }
        }
    }
}

#[test]
fn both_ambients_have_validated_witnesses() {
    for mode in [TopMode::S3, TopMode::C3] {
        let a = build_ambient(mode);
        let (g, _) = find_witness(&a.group, a.pairs()).expect("witness");
        assert!(validate_witness(&g, a.pairs()).is_witness);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn block_projection_is_a_homomorphism(seed in any::<u64>()) {
        let a = &*S3_AMBIENT;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..250 {
            let g = a.group.random_element(&mut rng);
            let h = a.group.random_element(&mut rng);
            let gh = g.compose(&h);
            let f = |x: &Perm| a.blocks.block_action(x).unwrap();
            prop_assert_eq!(f(&gh), f(&g).compose(&f(&h)));
        }
    }

    #[test]
    fn fiber_projection_is_a_homomorphism_on_coherent_elements(seed in any::<u64>()) {
        let c = coherent_subgroup(&S3_AMBIENT);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..250 {
            let g = c.random_element(&mut rng);
            let h = c.random_element(&mut rng);
            let (pg, ph, pgh) = (profile(&g, 3), profile(&h, 3), profile(&g.compose(&h), 3));
            let want = s3_index(&fiber_perm(pg.fiber.unwrap()).compose(&fiber_perm(ph.fiber.unwrap())));
            prop_assert_eq!(pgh.fiber, Some(want));
        }
    }

    #[test]
    fn validator_agrees_with_the_search(seed in any::<u64>()) {
        let m = corestriction_model(&S3_AMBIENT);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let g = m.random_element(&mut rng);
            let by_profile = profile(&g, 3).witness_pairs(3).is_some();
            prop_assert_eq!(validate_witness(&g, 3).is_witness, by_profile);
        }
    }
}
