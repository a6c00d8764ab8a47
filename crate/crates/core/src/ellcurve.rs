//! Elliptic curves `y² = x³ + Ax + B` over Q: discriminant, mod-2 image,
//! reduction types, 2-torsion over finite fields and the admissibility test
//! for a cubic field.

use crate::error::{Error, Result};
use crate::numfield::fp::{factor_u64, is_prime};
use crate::numfield::{
    class_group_with, cubic_disc, cubic_integer_roots, is_square_i128, same_field, ClassGroupOptions, CubicField,
    FpPoly, GaloisType, Place,
};
use num_traits::ToPrimitive;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticCurve {
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mod2Image {
    S3,
    C3,
    /// One rational 2-torsion point.
    C2,
    /// Full rational 2-torsion.
    Trivial,
}

impl Mod2Image {
    pub fn order(self) -> usize {
        match self {
            Mod2Image::S3 => 6,
            Mod2Image::C3 => 3,
            Mod2Image::C2 => 2,
            Mod2Image::Trivial => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionKind {
    Good,
    Multiplicative,
    Additive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u32) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalReduction {
    pub p: u64,
    pub kind: ReductionKind,
    pub ord_delta: u32,
    pub parity: Parity,
    /// `p ∈ {2, 3}`, where the `c₄` rule on a short model is not trustworthy.
    pub unreliable: bool,
}

fn ord(mut n: i128, p: u64) -> u32 {
    let p = p as i128;
    let mut v = 0;
    while n != 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

impl EllipticCurve {
    pub fn new(a: i64, b: i64) -> Result<EllipticCurve> {
        if a.unsigned_abs() > 1 << 30 || b.unsigned_abs() > 1 << 40 {
            return Err(Error::BadInput(format!("coefficients ({a}, {b}) too large")));
        }
        let e = EllipticCurve { a, b };
        if e.discriminant() == 0 {
            return Err(Error::Singular);
        }
        Ok(e)
    }

    pub fn discriminant(&self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        -16 * (4 * a * a * a + 27 * b * b)
    }

    pub fn c4(&self) -> i128 {
        -48 * self.a as i128
    }

    /// Coefficients `[0, A, B]` of the 2-division polynomial `x³ + Ax + B`.
    pub fn division_cubic(&self) -> [i64; 3] {
        [0, self.a, self.b]
    }

    /// Divide out every `u` with `u⁴ | A` and `u⁶ | B`; returns the model
    /// and `u`.
    pub fn minimal_model(&self) -> (EllipticCurve, u64) {
        let (mut a, mut b, mut u) = (self.a, self.b, 1u64);
        let g = num_integer::gcd(self.a, self.b).unsigned_abs();
        for (p, _) in factor_u64(g.max(1)) {
            let (p4, p6) = ((p as i64).pow(4), (p as i64).checked_pow(6).unwrap_or(i64::MAX));
            while a % p4 == 0 && b % p6 == 0 {
                a /= p4;
                b /= p6;
                u *= p;
            }
        }
        (EllipticCurve { a, b }, u)
    }

    pub fn mod2_image(&self) -> Mod2Image {
        let g = self.division_cubic();
        match cubic_integer_roots(g).len() {
            0 if is_square_i128(cubic_disc(g)) => Mod2Image::C3,
            0 => Mod2Image::S3,
            1 => Mod2Image::C2,
            _ => Mod2Image::Trivial,
        }
    }

    /// Reduction type at `p` from `ord_p Δ` and `p | c₄`, on the model
    /// after [`EllipticCurve::minimal_model`].
    pub fn reduction_type(&self, p: u64) -> Result<LocalReduction> {
        if !is_prime(p) {
            return Err(Error::BadInput(format!("{p} is not prime")));
        }
        let (m, _) = self.minimal_model();
        let v = ord(m.discriminant(), p);
        let kind = if v == 0 {
            ReductionKind::Good
        } else if m.c4() % p as i128 != 0 {
            ReductionKind::Multiplicative
        } else {
            ReductionKind::Additive
        };
        Ok(LocalReduction { p, kind, ord_delta: v, parity: Parity::of(v), unreliable: p <= 3 })
    }

    /// Bad primes of the normalised model.
    pub fn bad_primes(&self) -> Vec<u64> {
        let (m, _) = self.minimal_model();
        let d = m.discriminant().unsigned_abs();
        factor_u64(d.to_u64().expect("discriminant fits in 64 bits")).into_iter().map(|(p, _)| p).collect()
    }

    /// `dim E(F_{p^f})[2]`: 0, 1 or 2 as the division cubic has 0, 1 or 3
    /// roots in `F_{p^f}`.
    pub fn two_torsion_dim(&self, p: u64, f: u32) -> Result<u8> {
        if p == 2 {
            return Err(Error::BadInput("residue characteristic 2".into()));
        }
        if !is_prime(p) || f == 0 {
            return Err(Error::BadInput(format!("{p}^{f} is not a prime power")));
        }
        if self.discriminant() % p as i128 == 0 {
            return Err(Error::BadInput(format!("bad reduction at {p}")));
        }
        let g = FpPoly::from_ints(p, &[self.b, self.a, 0, 1]);
        let roots: usize = g.factor_degrees().into_iter().filter(|d| f as usize % d == 0).sum();
        Ok(match roots {
            0 => 0,
            1 => 1,
            _ => 2,
        })
    }
}

/// Which parity of `ord_{v₀} Δ` a finite distinguished place must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityMode {
    /// Odd order at a multiplicative place, as in the admissibility definition.
    Odd,
    /// Even order, as in the hypothesis of the main rank theorem.
    Even,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinguishedPlace {
    pub place: Place,
    /// For a finite place: residue degree, ramification index and `ord_{v₀} Δ`.
    pub residue_degree: Option<u32>,
    pub ramification: Option<u32>,
    pub ord_delta: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub curve: EllipticCurve,
    pub cubic: [i64; 3],
    pub galois: GaloisType,
    pub mod2_image: Mod2Image,
    pub class_group_2_rank: usize,
    pub class_number: String,
    pub two_torsion_trivial: bool,
    pub not_contained: bool,
    pub v0: Option<DistinguishedPlace>,
    pub parity_mode: ParityMode,
    /// Bad primes passed over in the place search (2, 3, index divisors).
    pub skipped_primes: Vec<u64>,
    pub admissible: bool,
}

/// Whether `K₃ ⊂ Q(E[2])`: only possible when the 2-division field has
/// degree divisible by 3, and then exactly when the two cubics define the
/// same field.
pub fn k3_in_division_field(e: &EllipticCurve, k: &CubicField) -> bool {
    matches!(e.mod2_image(), Mod2Image::S3 | Mod2Image::C3) && same_field(k, e.division_cubic())
}

pub fn admissible_check(
    e: &EllipticCurve,
    k: &CubicField,
    mode: ParityMode,
    cg_opts: &ClassGroupOptions,
) -> Result<AdmissibilityReport> {
    let cg = class_group_with(k, cg_opts)?;
    let two_rank = cg.two_rank();
    let not_contained = !k3_in_division_field(e, k);
    let (m, _) = e.minimal_model();
    let delta = m.discriminant();
    let mut skipped = vec![];
    let v0 = if delta < 0 {
        Some(DistinguishedPlace { place: Place::Real(0), residue_degree: None, ramification: None, ord_delta: None })
    } else {
        let mut found = None;
        for p in e.bad_primes() {
            if p <= 3 || k.index_divides(p) {
                skipped.push(p);
                continue;
            }
            let red = e.reduction_type(p)?;
            if red.kind != ReductionKind::Multiplicative {
                continue;
            }
            for q in k.primes_above(p)? {
                let o = q.e * red.ord_delta;
                let ok = match mode {
                    ParityMode::Odd => o % 2 == 1,
                    ParityMode::Even => o % 2 == 0,
                };
                if ok {
                    found = Some(DistinguishedPlace {
                        place: Place::Finite(p),
                        residue_degree: Some(q.f),
                        ramification: Some(q.e),
                        ord_delta: Some(o),
                    });
                    break;
                }
            }
            if found.is_some() {
                break;
            }
        }
        found
    };
    let admissible = two_rank == 0 && not_contained && v0.is_some();
    Ok(AdmissibilityReport {
        curve: *e,
        cubic: k.coeffs,
        galois: k.galois,
        mod2_image: e.mod2_image(),
        class_group_2_rank: two_rank,
        class_number: cg.order.to_string(),
        two_torsion_trivial: two_rank == 0,
        not_contained,
        v0,
        parity_mode: mode,
        skipped_primes: skipped,
        admissible,
    })
}
