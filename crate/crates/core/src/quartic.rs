//! Square-norm classes of a cubic field and the quartic fields they give.
//!
//! For `α ∈ K₃` with `N(α) = s²`, choose square roots `β_i` of the three
//! conjugates with `β₁β₂β₃ = s`. The numbers `±β₁ ± β₂ ± β₃` with an even
//! number of minus signs are the roots of
//! `x⁴ − 2S₁x² − 8s·x + (S₁² − 4S₂)`, where `S₁, S₂` are the elementary
//! symmetric functions of the conjugates of `α`; the resolvent roots are
//! `−4α_i`, so the resolvent field is `K₃`.

use crate::error::{Error, Result};
use crate::numfield::fp::{factor_u64, is_prime, primes_below};
use crate::numfield::{
    cubic_disc, cubic_integer_roots, divisors, is_square_bigint, is_square_i128, same_field, CubicField, Elem,
    FpPoly, GaloisType, Ideal,
};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuarticGalois {
    S4,
    A4,
    Other,
}

/// Monic quartic `x⁴ + c₃x³ + c₂x² + c₁x + c₀`, stored as `[c₀, c₁, c₂, c₃]`.
pub type Quartic = [i64; 4];

#[derive(Clone, Debug, Serialize)]
pub struct QuarticField {
    pub coeffs: Quartic,
    pub galois: QuarticGalois,
    /// `[a, b, c]` for `y³ + ay² + by + c`, with roots `r₁r₂ + r₃r₄`.
    pub resolvent: [i64; 3],
    pub disc: i128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareNormClass {
    #[serde(serialize_with = "ser_elem")]
    pub alpha: Elem,
    pub norm: String,
    /// Largest prime for which `(α)` was checked to have no square prime factor.
    pub squarefree_checked_to: u64,
    pub squarefree: bool,
}

fn ser_elem<S: serde::Serializer>(e: &Elem, s: S) -> std::result::Result<S::Ok, S::Error> {
    e.clone().map(|x| x.to_string()).serialize(s)
}

pub fn quartic_disc(g: &Quartic) -> i128 {
    cubic_disc(resolvent_cubic(g))
}

/// Resolvent `y³ − c₂y² + (c₁c₃ − 4c₀)y − (c₃²c₀ − 4c₂c₀ + c₁²)`.
pub fn resolvent_cubic(g: &Quartic) -> [i64; 3] {
    let [d, c, b, a] = *g;
    [-b, a * c - 4 * d, -(a * a * d - 4 * b * d + c * c)]
}

fn eval(g: &Quartic, x: i128) -> i128 {
    let mut v = 1i128;
    for &c in g.iter().rev() {
        v = v * x + c as i128;
    }
    v
}

/// Whether the monic quartic factors over Z (hence over Q).
pub fn is_reducible(g: &Quartic) -> bool {
    let [c0, c1, c2, c3] = g.map(|x| x as i128);
    if c0 == 0 {
        return true;
    }
    let ds = divisors(c0.unsigned_abs() as u64);
    if ds.iter().any(|&d| eval(g, d as i128) == 0 || eval(g, -(d as i128)) == 0) {
        return true;
    }
    // (x² + ax + b)(x² + cx + e) with b·e = c₀
    for &d in &ds {
        for b in [d as i128, -(d as i128)] {
            let e = c0 / b;
            if b == e {
                if b * c3 != c1 {
                    continue;
                }
                // a + c = c₃, ac = c₂ − 2b
                let disc = c3 * c3 - 4 * (c2 - 2 * b);
                if disc >= 0 && is_square_i128(disc) {
                    return true;
                }
            } else {
                let num = c1 - b * c3;
                if num % (e - b) != 0 {
                    continue;
                }
                let a = num / (e - b);
                let c = c3 - a;
                if b + e + a * c == c2 {
                    return true;
                }
            }
        }
    }
    false
}

pub fn galois_group_quartic(g: &Quartic) -> Result<QuarticGalois> {
    if is_reducible(g) {
        return Err(Error::Reducible);
    }
    let r = resolvent_cubic(g);
    if !cubic_integer_roots(r).is_empty() {
        return Ok(QuarticGalois::Other);
    }
    Ok(if is_square_i128(quartic_disc(g)) { QuarticGalois::A4 } else { QuarticGalois::S4 })
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusCheck {
    pub primes: usize,
    pub chi_square: f64,
    pub threshold: f64,
    /// Cycle types impossible in the claimed group that were observed.
    pub impossible: usize,
    pub consistent: bool,
}

/// Compare factorization patterns mod the first `n` good primes with the
/// cycle-type distribution of the claimed group.
pub fn frobenius_check(g: &Quartic, claimed: QuarticGalois, n: usize) -> FrobeniusCheck {
    // patterns: 1111, 211, 22, 31, 4
    let expected: [f64; 5] = match claimed {
        QuarticGalois::S4 => [1.0 / 24.0, 6.0 / 24.0, 3.0 / 24.0, 8.0 / 24.0, 6.0 / 24.0],
        QuarticGalois::A4 => [1.0 / 12.0, 0.0, 3.0 / 12.0, 8.0 / 12.0, 0.0],
        QuarticGalois::Other => [0.0; 5],
    };
    let d = quartic_disc(g);
    let mut counts = [0usize; 5];
    let mut used = 0;
    for p in primes_below(1 << 20) {
        if used == n {
            break;
        }
        if d % p as i128 == 0 {
            continue;
        }
        let mut degs = FpPoly::from_ints(p, &[g[0], g[1], g[2], g[3], 1]).factor_degrees();
        degs.sort_unstable();
        let idx = match degs.as_slice() {
            [1, 1, 1, 1] => 0,
            [1, 1, 2] => 1,
            [2, 2] => 2,
            [1, 3] => 3,
            _ => 4,
        };
        counts[idx] += 1;
        used += 1;
    }
    let mut chi = 0.0;
    let mut impossible = 0;
    let mut df = 0;
    for (c, e) in counts.iter().zip(expected) {
        if e == 0.0 {
            impossible += c;
        } else {
            let ex = e * used as f64;
            chi += (*c as f64 - ex).powi(2) / ex;
            df += 1;
        }
    }
    // 0.1% critical values for 4 and 2 degrees of freedom
    let threshold = match df - 1 {
        4 => 18.47,
        2 => 13.82,
        _ => 0.0,
    };
    FrobeniusCheck {
        primes: used,
        chi_square: chi,
        threshold,
        impossible,
        consistent: claimed != QuarticGalois::Other && impossible == 0 && chi <= threshold,
    }
}

fn to_i64(x: BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::TooLarge { order: 0, bound: i64::MAX as u128 })
}

/// `x⁴ − 2S₁x² − 8s·x + (S₁² − 4S₂)` for a square-norm, non-square `α`.
pub fn quartic_from_class(k: &CubicField, alpha: &Elem) -> Result<QuarticField> {
    let n = k.norm(alpha);
    if n.is_negative() || n.is_zero() || !is_square_bigint(&n) {
        return Err(Error::BadInput("norm is not a nonzero square".into()));
    }
    if k.is_square(alpha) {
        return Err(Error::BadInput("α is a square in the cubic field".into()));
    }
    let s = n.sqrt();
    let m = k.mul_matrix(alpha);
    let s1: BigInt = (0..3).map(|i| m[i][i].clone()).sum();
    let s2: BigInt = (0..3)
        .map(|i| {
            let (a, b) = ((i + 1) % 3, (i + 2) % 3);
            &m[a][a] * &m[b][b] - &m[a][b] * &m[b][a]
        })
        .sum();
    let c0 = &s1 * &s1 - BigInt::from(4) * &s2;
    let coeffs = [to_i64(c0)?, to_i64(BigInt::from(-8) * &s)?, to_i64(BigInt::from(-2) * &s1)?, 0];
    if coeffs.iter().any(|c| c.unsigned_abs() > 1 << 40) {
        return Err(Error::TooLarge { order: 0, bound: 1 << 40 });
    }
    let galois = galois_group_quartic(&coeffs).map_err(|_| Error::BadInput("quartic is reducible".into()))?;
    Ok(QuarticField { coeffs, galois, resolvent: resolvent_cubic(&coeffs), disc: quartic_disc(&coeffs) })
}

/// Whether the resolvent of `q` defines `k`.
pub fn resolvent_matches(k: &CubicField, q: &QuarticField) -> bool {
    same_field(k, q.resolvent)
}

/// Field equality for quartics: discriminants agree up to squares and the
/// factorization patterns agree at 50 primes not dividing either.
pub fn same_quartic_field(f: &Quartic, g: &Quartic) -> bool {
    let (df, dg) = (quartic_disc(f), quartic_disc(g));
    if !is_square_bigint(&(BigInt::from(df) * BigInt::from(dg))) {
        return false;
    }
    let mut checked = 0;
    for p in primes_below(1 << 20) {
        if df % p as i128 == 0 || dg % p as i128 == 0 {
            continue;
        }
        let pat = |h: &Quartic| {
            let mut d = FpPoly::from_ints(p, &[h[0], h[1], h[2], h[3], 1]).factor_degrees();
            d.sort_unstable();
            d
        };
        if pat(f) != pat(g) {
            return false;
        }
        checked += 1;
        if checked == 50 {
            return true;
        }
    }
    true
}

/// Whether `α` and `β` lie in the same class of `K₃^× / K₃^{×2}`.
pub fn same_square_class(k: &CubicField, a: &Elem, b: &Elem) -> bool {
    k.is_square(&k.mul(a, b))
}

/// Whether `(α)` has a square prime-ideal factor above some `p ≤ bound`.
fn has_small_square_factor(k: &CubicField, alpha: &Elem, bound: u64) -> bool {
    let n = k.norm(alpha).abs();
    for p in primes_below(bound + 1) {
        if !n.is_zero() && (&n % p).is_zero() && !k.index_divides(p) {
            if let Ok(primes) = k.primes_above(p) {
                for q in primes {
                    if Ideal::prime(k, &q).valuation_of(k, alpha, 2) >= 2 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// One representative per square class among `α` in the box of the given
/// height, preferring representatives without small square factors.
pub fn enumerate_square_norm_classes(k: &CubicField, height: i64) -> Vec<SquareNormClass> {
    let bound = 50;
    let mut cands: Vec<(bool, i64, f64, Elem)> = vec![];
    for a in -height..=height {
        for b in -height..=height {
            for c in -height..=height {
                let x: Elem = [BigInt::from(a), BigInt::from(b), BigInt::from(c)];
                let n = k.norm(&x);
                if n.is_zero() || n.is_negative() || !is_square_bigint(&n) || k.is_square(&x) {
                    continue;
                }
                let h = a.abs().max(b.abs()).max(c.abs());
                let sq = has_small_square_factor(k, &x, bound);
                cands.push((sq, h, k.t2(&x), x));
            }
        }
    }
    cands.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)).then(x.2.total_cmp(&y.2)));
    let mut reps: Vec<SquareNormClass> = vec![];
    for (sq, _, _, x) in cands {
        if reps.iter().any(|r| same_square_class(k, &r.alpha, &x)) {
            continue;
        }
        reps.push(SquareNormClass {
            norm: k.norm(&x).to_string(),
            alpha: x,
            squarefree_checked_to: bound,
            squarefree: !sq,
        });
    }
    reps
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceCensus {
    pub classes: usize,
    pub fields: usize,
    /// `classes / fields`, absent when there are no fields.
    pub ratio: Option<f64>,
    /// Classes whose quartic resolvent did not define `K₃`.
    pub resolvent_failures: usize,
    pub expected_ratio: u32,
}

/// Square classes up to `height`, their quartic fields, and the number of
/// distinct fields among them.
pub fn correspondence_census(k: &CubicField, height: i64) -> Result<(CorrespondenceCensus, Vec<(SquareNormClass, QuarticField)>)> {
    let classes = enumerate_square_norm_classes(k, height);
    let mut pairs = vec![];
    let mut distinct: Vec<Quartic> = vec![];
    let mut failures = 0;
    for cls in classes {
        let q = quartic_from_class(k, &cls.alpha)?;
        if !resolvent_matches(k, &q) {
            failures += 1;
        }
        if !distinct.iter().any(|d| same_quartic_field(d, &q.coeffs)) {
            distinct.push(q.coeffs);
        }
        pairs.push((cls, q));
    }
    let fields = distinct.len();
    let census = CorrespondenceCensus {
        classes: pairs.len(),
        fields,
        ratio: (fields > 0).then(|| pairs.len() as f64 / fields as f64),
        resolvent_failures: failures,
        expected_ratio: match k.galois {
            GaloisType::S3 => 1,
            GaloisType::C3 => 3,
        },
    };
    Ok((census, pairs))
}

/// Distinct prime factors of a quartic discriminant, for reporting.
pub fn disc_primes(g: &Quartic) -> Vec<u64> {
    let d = quartic_disc(g).unsigned_abs();
    match d.to_u64() {
        Some(d) if d > 0 => factor_u64(d).into_iter().map(|(p, _)| p).filter(|&p| is_prime(p)).collect(),
        _ => vec![],
    }
}
