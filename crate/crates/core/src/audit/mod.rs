//! Exhaustive audit of the corestriction witness inside `(S4 ×_{S3} S4) ≀ S3`.
//!
//! Points are grouped as `b` blocks of 8; block `k` holds the 4-sets
//! `8k..8k+4` (cocycle 1) and `8k+4..8k+8` (cocycle 2). Letter `8k+4j+i`
//! carries label `i`, which identifies every 4-set with `{0,1,2,3}`.
//!
//! On a 4-set the induced label permutation `a ∈ S4` factors as `v·ι(s)`
//! with `s ∈ S3` its image on the three pair partitions, `ι(s)` the lift of
//! `s` fixing label 3, and `v ∈ V4`. The localization class of the cocycle is
//! the class of `v` in `V4/(s−1)V4`; the quotient is `F2` when `s` is a
//! transposition.

mod tables;
mod validate;

pub use tables::{fiber_perm, loc_class, s4_code, S4Split, V4};
pub use validate::{validate_witness, WitnessCheck};

use crate::error::Result;
use crate::perm::{
    enumerate_subgroups, fiber_product, s4_onto_s3, wreath_product, BlockStructure, Perm, PermGroup,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;
use std::time::Instant;
use tables::TABLES;

/// Which top group the ambient uses, and so which image condition (1) targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub enum TopMode {
    S3,
    C3,
}

#[derive(Clone, Debug)]
pub struct Ambient {
    pub group: PermGroup,
    pub fiber: PermGroup,
    pub blocks: BlockStructure,
    pub mode: TopMode,
}

impl Ambient {
    pub fn pairs(&self) -> usize {
        self.blocks.blocks
    }
}

/// `S4 ×_{S3} S4` on 8 points, first 4-set then second.
pub fn fiber_s4() -> PermGroup {
    let s4 = PermGroup::symmetric(4);
    let q = s4_onto_s3(&s4);
    fiber_product(&q, &q).expect("S4 ×_{S3} S4")
}

/// The ambient group: `(S4 ×_{S3} S4) ≀ S3`, or `≀ C3` in C3 mode.
pub fn build_ambient(mode: TopMode) -> Ambient {
    let fiber = fiber_s4();
    let top = match mode {
        TopMode::S3 => PermGroup::symmetric(3),
        TopMode::C3 => PermGroup::cyclic(3),
    };
    let (group, blocks) = wreath_product(&fiber, &top);
    Ambient { group, fiber, blocks, mode }
}

/// The fiber product alone, read as a single pair.
pub fn build_scaled_ambient() -> Ambient {
    let fiber = fiber_s4();
    let (group, blocks) = wreath_product(&fiber, &PermGroup::trivial(1));
    Ambient { group, fiber, blocks, mode: TopMode::S3 }
}

/// Acts by `x` on every 4-set listed in `sets` (indices `2k + j`), fixing the rest.
fn on_sets(n: usize, x: &Perm, sets: &[usize]) -> Perm {
    let mut img: Vec<usize> = (0..n).collect();
    for &t in sets {
        for i in 0..4 {
            img[4 * t + i] = 4 * t + x.apply(i);
        }
    }
    Perm::from_images0(img).unwrap()
}

fn top_gens(ambient: &Ambient) -> Vec<Perm> {
    let n = ambient.group.degree();
    let m = ambient.blocks.block_size;
    let b = ambient.blocks.blocks;
    if b < 2 {
        return vec![];
    }
    let mut cyc: Vec<Vec<usize>> = vec![(0..b).map(|k| (k + 1) % b).collect()];
    if ambient.mode == TopMode::S3 {
        cyc.push((0..b).map(|k| if k < 2 { 1 - k } else { k }).collect());
    }
    cyc.into_iter()
        .map(|t| Perm::from_images0((0..n).map(|p| t[p / m] * m + p % m).collect()).unwrap())
        .collect()
}

fn diagonal_lifts(ambient: &Ambient) -> Vec<Perm> {
    let n = ambient.group.degree();
    let all: Vec<usize> = (0..2 * ambient.pairs()).collect();
    let s4 = PermGroup::symmetric(4);
    s4.generators()
        .iter()
        .map(|g| {
            let s = TABLES.split(g).s;
            on_sets(n, &TABLES.iota(s), &all)
        })
        .collect()
}

/// Subgroup of the ambient on which the six S3 images agree, so that the
/// fiber projection is defined everywhere.
pub fn coherent_subgroup(ambient: &Ambient) -> PermGroup {
    let n = ambient.group.degree();
    let mut gens = diagonal_lifts(ambient);
    for t in 0..2 * ambient.pairs() {
        for v in [V4::A, V4::B] {
            gens.push(on_sets(n, &v.perm(), &[t]));
        }
    }
    gens.extend(top_gens(ambient));
    PermGroup::generate(&gens).unwrap()
}

/// Coherent elements whose V4 parts sum to zero across the pairs, for each
/// cocycle separately, extended by the label-preserving top group. It satisfies
/// conditions (1) and (2) and acts as the full fiber product on each block.
pub fn corestriction_model(ambient: &Ambient) -> PermGroup {
    let n = ambient.group.degree();
    let b = ambient.pairs();
    let mut gens = diagonal_lifts(ambient);
    for k in 0..b.saturating_sub(1) {
        for j in 0..2 {
            for v in [V4::A, V4::B] {
                gens.push(on_sets(n, &v.perm(), &[2 * k + j, 2 * (k + 1) + j]));
            }
        }
    }
    gens.extend(top_gens(ambient));
    PermGroup::generate(&gens).unwrap()
}

/// Per-element data read off the labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Profile {
    /// Block permutation, packed 0-indexed images.
    pub wr: [u8; 3],
    pub wr_trivial: bool,
    /// Common S3 image of the six 4-set actions, if they agree.
    pub fiber: Option<u8>,
    /// `v[k][j]` for pair `k`, cocycle `j`.
    pub v: [[u8; 2]; 3],
}

/// Read the profile of an element of the ambient with `pairs` blocks.
pub fn profile(g: &Perm, pairs: usize) -> Profile {
    let img = g.images0();
    let mut wr = [0u8; 3];
    let mut v = [[0u8; 2]; 3];
    let mut fiber: Option<u8> = None;
    let mut coherent = true;
    for k in 0..pairs {
        wr[k] = img[8 * k] / 8;
        for j in 0..2 {
            let off = 8 * k + 4 * j;
            let code = s4_code(&[img[off] & 3, img[off + 1] & 3, img[off + 2] & 3, img[off + 3] & 3]);
            let sp = TABLES.by_code[code as usize];
            v[k][j] = sp.v;
            match fiber {
                None => fiber = Some(sp.s),
                Some(s) if s != sp.s => coherent = false,
                _ => {}
            }
        }
    }
    let wr_trivial = (0..pairs).all(|k| wr[k] as usize == k);
    Profile { wr, wr_trivial, fiber: if coherent { fiber } else { None }, v }
}

impl Profile {
    /// Index of `(π_wr, π_fiber)` in `0..36`, for coherent profiles.
    fn image_index(&self, pairs: usize) -> Option<usize> {
        let s = self.fiber? as usize;
        let w = wr_index(&self.wr[..pairs]);
        Some(6 * w + s)
    }

    /// Class of `Σ_k v[k][j]` for each cocycle; needs a coherent profile.
    pub fn corestriction(&self, pairs: usize) -> Option<[u8; 2]> {
        let s = self.fiber?;
        let mut out = [0u8; 2];
        for (j, o) in out.iter_mut().enumerate() {
            let sum = (0..pairs).fold(0u8, |acc, k| acc ^ self.v[k][j]);
            *o = loc_class(s, sum);
        }
        Some(out)
    }

    /// Witness test: trivial block action, transposition fiber image, and an
    /// invertible 2×2 localization matrix on some two pairs (one pair when
    /// there is only one). Returns the pairs used.
    pub fn witness_pairs(&self, pairs: usize) -> Option<Vec<usize>> {
        if !self.wr_trivial {
            return None;
        }
        let s = self.fiber?;
        if !TABLES.is_transposition[s as usize] {
            return None;
        }
        let x = |k: usize, j: usize| (loc_class(s, self.v[k][j]) != 0) as u8;
        if pairs == 1 {
            return (x(0, 0) | x(0, 1) == 1).then(|| vec![0]);
        }
        for k in 0..pairs {
            for l in k + 1..pairs {
                if (x(k, 0) * x(l, 1) + x(l, 0) * x(k, 1)) % 2 == 1 {
                    return Some(vec![k, l]);
                }
            }
        }
        None
    }
}

/// Index of a permutation of `0..n` (n ≤ 3) among the 6 elements of S3.
fn wr_index(w: &[u8]) -> usize {
    match w.len() {
        1 => 0,
        _ => {
            let a = w[0] as usize;
            let b = w[1] as usize;
            a * 2 + if b > a { b - 1 } else { b }
        }
    }
}

fn wr_is_even(idx: usize) -> bool {
    // indices of (0,1,2), (1,2,0), (2,0,1) under wr_index
    matches!(idx, 0 | 3 | 4)
}

/// Everything one pass over a subgroup yields.
#[derive(Clone, Debug, Default)]
struct Scan {
    images: u64,
    incoherent: u64,
    split_transposition: bool,
    cor_fail: Option<Perm>,
    block_full: HashSet<u32>,
    witness: Option<(Perm, Vec<usize>)>,
}

impl Scan {
    fn merge(mut self, o: Scan) -> Scan {
        self.images |= o.images;
        self.incoherent += o.incoherent;
        self.split_transposition |= o.split_transposition;
        if self.cor_fail.is_none() {
            self.cor_fail = o.cor_fail;
        }
        self.block_full.extend(o.block_full);
        if self.witness.is_none() {
            self.witness = o.witness;
        }
        self
    }
}

fn pack8(g: &Perm) -> u32 {
    (0..8).fold(0u32, |acc, i| acc << 3 | g.apply(i) as u32)
}

fn scan(h: &PermGroup, pairs: usize, want_witness: bool) -> Scan {
    let parts = h.par_map_cosets(|c, grp| {
        let mut sc = Scan::default();
        grp.for_each_in_coset(c, |g| {
            let p = profile(g, pairs);
            match p.image_index(pairs) {
                Some(i) => sc.images |= 1 << i,
                None => sc.incoherent += 1,
            }
            if p.wr[0] == 0 {
                sc.block_full.insert(pack8(g));
            }
            if !p.wr_trivial {
                return;
            }
            if let Some(s) = p.fiber {
                if TABLES.is_transposition[s as usize] {
                    sc.split_transposition = true;
                }
            }
            if pairs > 1 && sc.cor_fail.is_none() {
                match p.corestriction(pairs) {
                    Some([0, 0]) => {}
                    _ => sc.cor_fail = Some(g.clone()),
                }
            }
            if want_witness && sc.witness.is_none() {
                if let Some(t) = p.witness_pairs(pairs) {
                    sc.witness = Some((g.clone(), t));
                }
            }
        });
        sc
    });
    parts.into_iter().fold(Scan::default(), Scan::merge)
}

/// Condition (1) and its companion facts.
#[derive(Clone, Debug, Serialize)]
pub struct ImageCheck {
    pub holds: bool,
    pub image_size: u32,
    pub target_size: u32,
    /// Some element has trivial block action and transposition fiber image.
    pub split_transposition: bool,
    /// Elements on which the six S3 images disagree.
    pub incoherent_elements: u64,
}

fn image_check(sc: &Scan, pairs: usize, mode: TopMode) -> ImageCheck {
    let top = if pairs == 1 { 1 } else if mode == TopMode::S3 { 6 } else { 3 };
    let mut in_target = 0;
    let mut outside = 0;
    for i in 0..36 {
        if sc.images >> i & 1 == 1 {
            let w = i / 6;
            let ok = if pairs == 1 { w == 0 } else { mode == TopMode::S3 || wr_is_even(w) };
            if ok {
                in_target += 1;
            } else {
                outside += 1;
            }
        }
    }
    let target = top * 6;
    ImageCheck {
        holds: in_target == target && outside == 0,
        image_size: in_target + outside,
        target_size: target,
        split_transposition: sc.split_transposition,
        incoherent_elements: sc.incoherent,
    }
}

/// Condition (1): the image of `π_wr × π_fiber` on `h` is `S3 × S3`
/// (`C3 × S3` in C3 mode).
pub fn check_condition_1(h: &PermGroup, pairs: usize, mode: TopMode) -> ImageCheck {
    image_check(&scan(h, pairs, false), pairs, mode)
}

/// Condition (2): every element with trivial block action has localization
/// classes summing to zero for both cocycles. Returns the first failing
/// element in stream order when it does not hold. With one pair there is no
/// corestriction to a smaller field and the condition is vacuous.
pub fn check_condition_2(h: &PermGroup, pairs: usize) -> std::result::Result<(), Perm> {
    match scan(h, pairs, false).cor_fail {
        None => Ok(()),
        Some(g) => Err(g),
    }
}

/// First witness in stream order with the pairs used.
pub fn find_witness(h: &PermGroup, pairs: usize) -> Option<(Perm, Vec<usize>)> {
    scan(h, pairs, true).witness
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub tag: &'static str,
    pub id: String,
    pub order: u128,
    /// The block stabilizer acts on its block as the full fiber product.
    pub fiber_full: bool,
    pub cond1: bool,
    pub cond2: bool,
    pub witness_cycles: Option<String>,
    pub pair_used: Option<Vec<usize>>,
    /// Witness re-verified by the independent validator.
    pub validated: Option<bool>,
    pub counterexample: bool,
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    pub image: Option<ImageCheck>,
    #[serde(skip)]
    pub cond2_failure: Option<Perm>,
}

pub const AUDIT_TAG: &str = "corestriction-witness";

/// Audit one subgroup.
pub fn audit_group(id: String, h: &PermGroup, pairs: usize, mode: TopMode) -> AuditReport {
    let t0 = Instant::now();
    let sc = scan(h, pairs, true);
    let image = image_check(&sc, pairs, mode);
    let fiber_full = sc.block_full.len() == 96;
    let cond2 = sc.cor_fail.is_none();
    let validated = sc.witness.as_ref().map(|(g, _)| validate_witness(g, pairs).is_witness);
    let candidate = fiber_full && image.holds && cond2;
    let counterexample = candidate && validated != Some(true);
    AuditReport {
        tag: AUDIT_TAG,
        id,
        order: h.order(),
        fiber_full,
        cond1: image.holds,
        cond2,
        witness_cycles: sc.witness.as_ref().map(|(g, _)| g.to_cycle_string()),
        pair_used: sc.witness.as_ref().map(|(_, t)| t.iter().map(|k| k + 1).collect()),
        validated,
        counterexample,
        elapsed_ms: Some(t0.elapsed().as_millis() as u64),
        image: Some(image),
        cond2_failure: sc.cor_fail,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditMode {
    /// Random generated subgroups of coherent conjugates of the corestriction model.
    Sampled { samples: usize, seed: u64, max_draws: usize },
    /// Every subgroup class of the single-pair ambient.
    Exact,
}

#[derive(Clone, Debug)]
pub struct AuditRun {
    pub reports: Vec<AuditReport>,
    /// Draws that failed one of the candidate conditions.
    pub rejected: usize,
    /// Pairwise distinct subgroups among the reports.
    pub distinct: usize,
}

impl AuditRun {
    pub fn candidates(&self) -> impl Iterator<Item = &AuditReport> {
        self.reports.iter().filter(|r| r.fiber_full && r.cond1 && r.cond2)
    }
    pub fn counterexamples(&self) -> impl Iterator<Item = &AuditReport> {
        self.reports.iter().filter(|r| r.counterexample)
    }
}

/// Audit many subgroups. Reports come back in draw order; sampled mode keeps
/// only candidates (all of fiber-fullness, (1), (2)), and drops groups whose
/// order is below `order_floor`.
pub fn audit_all(ambient: &Ambient, mode: AuditMode, order_floor: u128) -> Result<AuditRun> {
    let pairs = ambient.pairs();
    let mut reports = vec![];
    let mut rejected = 0;
    let mut kept: Vec<PermGroup> = vec![];
    if order_floor > ambient.group.order() {
        return Ok(AuditRun { reports, rejected, distinct: 0 });
    }
    match mode {
        AuditMode::Exact => {
            let classes = enumerate_subgroups(&ambient.group, None, None)?;
            for (i, c) in classes.iter().enumerate() {
                if c.order < order_floor {
                    continue;
                }
                reports.push(audit_group(format!("class-{}", i + 1), &c.representative, pairs, ambient.mode));
                kept.push(c.representative.clone());
            }
        }
        AuditMode::Sampled { samples, seed, max_draws } => {
            use rand::Rng;
            let model = corestriction_model(ambient);
            // conjugation by coherent elements preserves conditions (1) and (2)
            let coherent = coherent_subgroup(ambient);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut draw = 0;
            while reports.len() < samples && draw < max_draws {
                draw += 1;
                let c = coherent.random_element(&mut rng);
                let k = rng.gen_range(2..=4);
                let gens: Vec<Perm> = (0..k)
                    .map(|_| {
                        let e = [1, 1, 2, 3, 4, 6][rng.gen_range(0..6)];
                        model.random_element(&mut rng).pow(e).conjugate_by(&c)
                    })
                    .collect();
                let h = PermGroup::generate(&gens)?;
                if h.order() < order_floor {
                    rejected += 1;
                    continue;
                }
                let r = audit_group(format!("draw-{}", draw), &h, pairs, ambient.mode);
                if r.fiber_full && r.cond1 && r.cond2 {
                    reports.push(r);
                    kept.push(h);
                } else {
                    rejected += 1;
                }
            }
        }
    }
    let mut distinct: Vec<&PermGroup> = vec![];
    for h in &kept {
        let same = |o: &&PermGroup| o.order() == h.order() && o.contains_group(h);
        if !distinct.iter().any(same) {
            distinct.push(h);
        }
    }
    let distinct = distinct.len();
    Ok(AuditRun { reports, rejected, distinct })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ambient_orders() {
        assert_eq!(build_ambient(TopMode::S3).group.order(), 5_308_416);
        assert_eq!(build_ambient(TopMode::C3).group.order(), 2_654_208);
        assert_eq!(build_scaled_ambient().group.order(), 96);
    }

    #[test]
    fn model_and_coherent_orders() {
        let a = build_ambient(TopMode::S3);
        assert_eq!(coherent_subgroup(&a).order(), 147_456);
        let m = corestriction_model(&a);
        assert_eq!(m.order(), 9216);
        assert!(a.group.contains_group(&m));
        let c = build_ambient(TopMode::C3);
        assert_eq!(corestriction_model(&c).order(), 4608);
    }

    #[test]
    fn model_is_a_candidate_with_witness() {
        for mode in [TopMode::S3, TopMode::C3] {
            let a = build_ambient(mode);
            let m = corestriction_model(&a);
            let r = audit_group("model".into(), &m, 3, mode);
            assert!(r.fiber_full && r.cond1 && r.cond2, "{:?}", r);
            assert_eq!(r.validated, Some(true));
        }
    }

    #[test]
    fn diagonal_lift_group_has_no_witness() {
        // ι(S3) on all six 4-sets with the top group: (1) and (2) hold yet every
        // localization class vanishes, and the block action is far from full.
        let a = build_ambient(TopMode::S3);
        let mut gens = diagonal_lifts(&a);
        gens.extend(top_gens(&a));
        let h = PermGroup::generate(&gens).unwrap();
        assert_eq!(h.order(), 36);
        let r = audit_group("diag".into(), &h, 3, TopMode::S3);
        assert!(r.cond1 && r.cond2 && !r.fiber_full);
        assert!(r.witness_cycles.is_none());
        assert!(!r.counterexample);
    }

    #[test]
    fn order_floor_above_ambient_is_empty() {
        let a = build_scaled_ambient();
        let run = audit_all(&a, AuditMode::Exact, 97).unwrap();
        assert!(run.reports.is_empty());
    }
}
