//! Principality of ideals, and odd powers with generators ≡ 1 in a ray group.

use super::classgroup::ClassGroup;
use super::lattice::Reduced;
use super::ray::{unit_images, RayElem, RayGroup};
use super::units::UnitData;
use super::{CubicField, Elem, Ideal};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

/// A place of the cubic field: a real embedding, or the primes above `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Place {
    Real(usize),
    Finite(u64),
}

/// Real embeddings that must be positive, given the exempt place.
pub fn signed_places(k: &CubicField, v0: Option<Place>) -> Vec<usize> {
    (0..k.r1()).filter(|&i| v0 != Some(Place::Real(i))).collect()
}

/// A generator of `𝔞` if `𝔞` is principal.
///
/// If `𝔞 = (α)` then some unit multiple of `α` has every
/// `|σ_i| ≤ N(𝔞)^{1/3} e^D`, so it has `T2 ≤ 3 N(𝔞)^{2/3} e^{2D}`; every
/// lattice point up to that bound is checked for norm `±N(𝔞)`.
pub fn find_generator(k: &CubicField, units: &UnitData, a: &Ideal, budget: u64) -> Result<Option<Elem>> {
    let n = a.norm();
    if n == BigInt::from(1) {
        return Ok(Some(k.one()));
    }
    let ln = n.to_f64().map(f64::ln).unwrap_or_else(|| n.bits() as f64 * std::f64::consts::LN_2);
    let bound = 3.0 * ((2.0 / 3.0) * ln + 2.0 * units.d_bound).exp() * (1.0 + 1e-6);
    let red = Reduced::new(k, &a.rows);
    let mut best: Option<(f64, Elem)> = None;
    red.enumerate(bound, budget, |x, _| {
        if k.norm(x).abs() == n {
            let t = k.t2(x);
            if best.as_ref().is_none_or(|(bt, _)| t < *bt) {
                best = Some((t, x.clone()));
            }
        }
        true
    })?;
    Ok(best.map(|(_, x)| x))
}

/// `γ = base^power · Π g_j^{e_j}` with `g = (−1, ε_1, …)`.
#[derive(Clone, Debug, Serialize)]
pub struct FactoredGenerator {
    #[serde(serialize_with = "ser_elem")]
    pub base: Elem,
    pub power: u64,
    pub unit_exponents: Vec<i128>,
    /// Power-basis coordinates, when small enough to write out.
    #[serde(serialize_with = "ser_opt_elem")]
    pub expanded: Option<Elem>,
}

fn ser_elem<S: serde::Serializer>(e: &Elem, s: S) -> std::result::Result<S::Ok, S::Error> {
    e.clone().map(|x| x.to_string()).serialize(s)
}

fn ser_opt_elem<S: serde::Serializer>(e: &Option<Elem>, s: S) -> std::result::Result<S::Ok, S::Error> {
    e.as_ref().map(|e| e.clone().map(|x| x.to_string())).serialize(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// An odd power has a generator meeting the congruence and signs.
    Compliant,
    /// The class of the ideal has even order, so no odd power is principal.
    NoOddPowerPrincipal,
    /// Odd powers are principal but no generator meets the congruence,
    /// relative to the units found.
    CongruenceObstructed,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrincipalityResult {
    pub ideal_norm: String,
    pub class_order: String,
    pub principal: bool,
    pub h: Option<u64>,
    pub generator: Option<FactoredGenerator>,
    pub congruence_ok: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct PrincipalityOptions {
    pub node_budget: u64,
    pub h_cap: u64,
    pub closure_budget: usize,
}

impl Default for PrincipalityOptions {
    fn default() -> Self {
        PrincipalityOptions { node_budget: 20_000_000, h_cap: 1 << 40, closure_budget: 1 << 22 }
    }
}

fn signed_pow(ray: &RayGroup, g: &RayElem, e: i128) -> RayElem {
    ray.pow(g, e.rem_euclid(ray.order() as i128) as u128)
}

/// Smallest odd `h` with `𝔞^h = (γ)`, `γ` trivial in `ray`.
pub fn is_principal_with_congruence(
    k: &CubicField,
    cg: &ClassGroup,
    ray: &RayGroup,
    a: &Ideal,
    opts: &PrincipalityOptions,
) -> Result<PrincipalityResult> {
    let c = cg.class_of(k, a, opts.node_budget)?;
    let ord = cg.order_of(&c);
    let mut res = PrincipalityResult {
        ideal_norm: a.norm().to_string(),
        class_order: ord.to_string(),
        principal: false,
        h: None,
        generator: None,
        congruence_ok: false,
        verdict: Verdict::NoOddPowerPrincipal,
    };
    if ord.is_even() {
        return Ok(res);
    }
    let h_a = ord.to_u64().filter(|&h| h <= opts.h_cap).ok_or_else(|| Error::Budget(format!("class order {ord} above cap")))?;
    let ah = a.pow(k, h_a);
    let base = find_generator(k, &cg.units, &ah, opts.node_budget)?
        .ok_or_else(|| Error::Logic("class group says principal but no generator was found".into()))?;
    res.principal = true;
    let gens = unit_images(ray, k, &cg.units.units)?;
    let y = ray.image(k, &base)?;
    let o = ray.order_mod(&y, &gens, opts.closure_budget)?;
    if o % 2 == 0 {
        res.verdict = Verdict::CongruenceObstructed;
        return Ok(res);
    }
    let power = o as u64;
    let logs = ray
        .discrete_log(&ray.pow(&y, o), &gens, opts.closure_budget)?
        .ok_or_else(|| Error::Logic("power lies in the unit image but has no logarithm".into()))?;
    // negate the logarithm, choosing the smaller signed representative mod each order
    let unit_exponents: Vec<i128> = logs
        .iter()
        .zip(&gens)
        .map(|(&l, g)| {
            let og = ray.element_order(g) as i128;
            let e = (-(l as i128)).rem_euclid(og);
            if 2 * e > og {
                e - og
            } else {
                e
            }
        })
        .collect();
    let mut gen = FactoredGenerator { base, power, unit_exponents, expanded: None };
    gen.expanded = expand(k, &cg.units, &gen);
    res.h = Some(h_a * power);
    res.congruence_ok = verify(k, &cg.units, ray, a, h_a, &gen)?;
    if !res.congruence_ok {
        return Err(Error::Logic("generator failed its own verification".into()));
    }
    res.generator = Some(gen);
    res.verdict = Verdict::Compliant;
    Ok(res)
}

/// Expand the factored form when the result stays below about 200 digits.
fn expand(k: &CubicField, units: &UnitData, g: &FactoredGenerator) -> Option<Elem> {
    let base_size = k.t2(&g.base).sqrt().ln().max(0.0) * g.power as f64;
    let unit_size: f64 = g
        .unit_exponents
        .iter()
        .skip(1)
        .zip(&units.logs)
        .map(|(&e, l)| e.unsigned_abs() as f64 * l.iter().fold(0.0f64, |m, x| m.max(x.abs())))
        .sum();
    if base_size + unit_size > 460.0 {
        return None;
    }
    let mut x = k.pow(&g.base, g.power);
    if g.unit_exponents[0].rem_euclid(2) == 1 {
        x = x.map(|c| -c);
    }
    for (&e, u) in g.unit_exponents.iter().skip(1).zip(&units.units) {
        let b = if e < 0 { k.div_exact(&k.one(), u)? } else { u.clone() };
        x = k.mul(&x, &k.pow(&b, e.unsigned_abs() as u64));
    }
    Some(x)
}

/// Check the generator: `(base) = 𝔞^{h_a}` exactly, and the image of `γ`
/// in the ray group is trivial.
pub fn verify(k: &CubicField, units: &UnitData, ray: &RayGroup, a: &Ideal, h_a: u64, g: &FactoredGenerator) -> Result<bool> {
    if k.norm(&g.base).abs() != a.norm().pow(h_a as u32) {
        return Ok(false);
    }
    if Ideal::principal(k, &g.base) != Some(a.pow(k, h_a)) {
        return Ok(false);
    }
    let gens = unit_images(ray, k, &units.units)?;
    let mut z = ray.pow(&ray.image(k, &g.base)?, g.power as u128);
    for (gj, &e) in gens.iter().zip(&g.unit_exponents) {
        z = ray.mul(&z, &signed_pow(ray, gj, e));
    }
    if z != ray.identity() {
        return Ok(false);
    }
    if let Some(x) = &g.expanded {
        return Ok(ray.image(k, x)? == ray.identity());
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::classgroup::class_group;
    use crate::numfield::ray::modulus_for_discriminant;
    use crate::numfield::{cubic_field, elem};

    #[test]
    fn generators_of_principal_ideals() {
        let k = cubic_field([0, -1, -1]).unwrap();
        let cg = class_group(&k).unwrap();
        let two = Ideal::principal(&k, &elem([2, 0, 0])).unwrap();
        assert_eq!(find_generator(&k, &cg.units, &two, 1 << 20).unwrap(), Some(elem([2, 0, 0])));
        let x = elem([7, -3, 2]);
        let id = Ideal::principal(&k, &x).unwrap();
        let g = find_generator(&k, &cg.units, &id, 1 << 20).unwrap().unwrap();
        assert_eq!(Ideal::principal(&k, &g).unwrap(), id);
    }

    #[test]
    fn nonprincipal_class_has_no_generator() {
        let k = cubic_field([0, 4, -1]).unwrap();
        let cg = class_group(&k).unwrap();
        let q = Ideal::prime(&k, &cg.factor_base[0]);
        let c = cg.class_of(&k, &q, 1 << 20).unwrap();
        if !cg.is_trivial(&c) {
            assert_eq!(find_generator(&k, &cg.units, &q, 1 << 22).unwrap(), None);
            let ray = RayGroup::new(&k, 1, vec![]).unwrap();
            let r = is_principal_with_congruence(&k, &cg, &ray, &q, &Default::default()).unwrap();
            assert_eq!(r.verdict, Verdict::NoOddPowerPrincipal);
        }
    }

    #[test]
    fn rational_generator_with_trivial_modulus() {
        let k = cubic_field([0, -1, -1]).unwrap();
        let cg = class_group(&k).unwrap();
        let ray = RayGroup::new(&k, 1, vec![]).unwrap();
        let two = Ideal::principal(&k, &elem([2, 0, 0])).unwrap();
        let r = is_principal_with_congruence(&k, &cg, &ray, &two, &Default::default()).unwrap();
        assert_eq!(r.h, Some(1));
        assert_eq!(r.generator.unwrap().expanded, Some(elem([2, 0, 0])));
    }

    #[test]
    fn degree_two_prime_with_the_curve_modulus() {
        let k = cubic_field([0, -1, -1]).unwrap();
        let cg = class_group(&k).unwrap();
        // y² = x³ + x + 1 has discriminant −16·31
        let m = modulus_for_discriminant(-16 * 31);
        assert_eq!(m, 248);
        let ray = RayGroup::new(&k, m, signed_places(&k, Some(Place::Real(0)))).unwrap();
        let mut compliant = 0;
        for q in k.degree2_primes(100 * 100) {
            let r = is_principal_with_congruence(&k, &cg, &ray, &Ideal::prime(&k, &q), &Default::default()).unwrap();
            assert!(r.principal);
            if r.verdict == Verdict::Compliant {
                compliant += 1;
                assert_eq!(r.h.unwrap() % 2, 1);
                assert!(r.congruence_ok);
            }
        }
        assert!(compliant > 0);
    }
}
