//! Witness re-verification straight from the permutation images, using
//! explicit set partitions and brute-force searches instead of the lookup
//! tables the scanner relies on.

use crate::perm::Perm;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WitnessCheck {
    pub block_trivial: bool,
    pub fiber_transposition: bool,
    /// Localization bits `x[k][j]` (pair `k`, cocycle `j`), when defined.
    pub loc_bits: Option<Vec<[u8; 2]>>,
    pub pair_used: Option<Vec<usize>>,
    pub is_witness: bool,
}

type Partition = BTreeSet<BTreeSet<usize>>;

fn pair_partitions() -> Vec<Partition> {
    (1..4)
        .map(|t| {
            let a: BTreeSet<usize> = [0, t].into_iter().collect();
            let b: BTreeSet<usize> = (0..4).filter(|u| !a.contains(u)).collect();
            [a, b].into_iter().collect()
        })
        .collect()
}

fn act(a: &[usize], p: &Partition) -> Partition {
    p.iter().map(|part| part.iter().map(|&x| a[x]).collect()).collect()
}

fn on_partitions(a: &[usize]) -> Vec<usize> {
    let parts = pair_partitions();
    parts.iter().map(|p| parts.iter().position(|q| *q == act(a, p)).unwrap()).collect()
}

fn all_s4() -> Vec<Vec<usize>> {
    let mut out = vec![];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let v = vec![a, b, c, d];
                    let s: BTreeSet<usize> = v.iter().copied().collect();
                    if s.len() == 4 {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

fn mul(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn inv(a: &[usize]) -> Vec<usize> {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x] = i;
    }
    r
}

fn is_klein(v: &[usize]) -> bool {
    let id = (0..4).all(|i| v[i] == i);
    let fpf_involution = (0..4).all(|i| v[i] != i && v[v[i]] == i);
    id || fpf_involution
}

/// Recompute the three witness conditions for `g` on `pairs` blocks of 8.
pub fn validate_witness(g: &Perm, pairs: usize) -> WitnessCheck {
    let n = 8 * pairs;
    let mut out = WitnessCheck {
        block_trivial: false,
        fiber_transposition: false,
        loc_bits: None,
        pair_used: None,
        is_witness: false,
    };
    if g.degree() != n {
        return out;
    }
    out.block_trivial = (0..n).all(|p| g.apply(p) / 8 == p / 8);
    if !out.block_trivial {
        return out;
    }
    let mut labels = vec![];
    for t in 0..2 * pairs {
        let a: Vec<usize> = (0..4).map(|i| g.apply(4 * t + i)).collect();
        if a.iter().any(|&x| x / 4 != t) {
            return out;
        }
        labels.push(a.iter().map(|x| x % 4).collect::<Vec<usize>>());
    }
    let images: Vec<Vec<usize>> = labels.iter().map(|a| on_partitions(a)).collect();
    if images.iter().any(|s| *s != images[0]) {
        return out;
    }
    let s = &images[0];
    let fixed = (0..3).filter(|&i| s[i] == i).count();
    out.fiber_transposition = fixed == 1;
    if !out.fiber_transposition {
        return out;
    }
    let s4 = all_s4();
    let lift = s4.iter().find(|a| a[3] == 3 && on_partitions(a) == *s).unwrap().clone();
    let klein: Vec<Vec<usize>> = s4.iter().filter(|v| is_klein(v)).cloned().collect();
    let moved: Vec<Vec<usize>> =
        klein.iter().map(|w| mul(&mul(&mul(&lift, w), &inv(&lift)), w)).collect();
    let mut bits = vec![];
    for k in 0..pairs {
        let mut row = [0u8; 2];
        for (j, r) in row.iter_mut().enumerate() {
            let a = &labels[2 * k + j];
            let v = mul(a, &inv(&lift));
            assert!(is_klein(&v));
            *r = (!moved.contains(&v)) as u8;
        }
        bits.push(row);
    }
    let used = if pairs == 1 {
        (bits[0][0] | bits[0][1] == 1).then(|| vec![1])
    } else {
        let mut found = None;
        'outer: for k in 0..pairs {
            for l in k + 1..pairs {
                if (bits[k][0] * bits[l][1] + bits[l][0] * bits[k][1]) % 2 == 1 {
                    found = Some(vec![k + 1, l + 1]);
                    break 'outer;
                }
            }
        }
        found
    };
    out.loc_bits = Some(bits);
    out.is_witness = used.is_some();
    out.pair_used = used;
    out
}
