//! `R = (Z[θ]/m)^× × {±1}^s`, the target of the congruence-and-sign test,
//! and membership in the image of the global units.

use super::{fp, CubicField, Elem};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayElem {
    pub r: [u64; 3],
    /// Bit `i` set when the `i`-th signed place is negative.
    pub signs: u8,
}

#[derive(Clone, Debug)]
pub struct RayGroup {
    pub modulus: u64,
    /// Real embeddings (indices into the field's roots) carrying a sign.
    pub signed: Vec<usize>,
    coeffs: [u64; 3],
    order: u128,
}

/// `8 · Π p` over the odd primes dividing `d`.
pub fn modulus_for_discriminant(d: i128) -> u64 {
    let odd: u64 = fp::factor_u64(d.unsigned_abs() as u64).into_iter().filter(|(p, _)| *p != 2).map(|(p, _)| p).product();
    8 * odd
}

impl RayGroup {
    pub fn new(k: &CubicField, modulus: u64, signed: Vec<usize>) -> Result<RayGroup> {
        if modulus == 0 || modulus >= 1 << 31 {
            return Err(Error::BadInput(format!("modulus {modulus} must lie in [1, 2^31)")));
        }
        if signed.iter().any(|&i| i >= k.r1()) || signed.len() > 8 {
            return Err(Error::BadInput("signed places must be real embeddings".into()));
        }
        let coeffs = k.coeffs.map(|c| c.rem_euclid(modulus as i64) as u64);
        let mut order: u128 = 1 << signed.len();
        for (p, e) in fp::factor_u64(modulus) {
            // Z[θ]/p^e has p^{3(e−1)} · #(F_p[x]/f)^× units
            let mut local: u128 = (p as u128).pow(3 * (e - 1));
            for (g, mult) in k.poly_mod(p).factor() {
                let n = (p as u128).pow(g.degree() as u32);
                local *= n.pow(mult) - n.pow(mult - 1);
            }
            order *= local;
        }
        if order >= 1 << 63 {
            return Err(Error::TooLarge { order, bound: 1 << 63 });
        }
        Ok(RayGroup { modulus, signed, coeffs, order })
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn identity(&self) -> RayElem {
        RayElem { r: [1 % self.modulus, 0, 0], signs: 0 }
    }

    /// Image of a field element prime to the modulus.
    pub fn image(&self, k: &CubicField, x: &Elem) -> Result<RayElem> {
        let m = BigInt::from(self.modulus);
        if !k.norm(x).gcd(&m).to_u64().is_some_and(|g| g == 1) {
            return Err(Error::BadInput("element is not prime to the modulus".into()));
        }
        let r = std::array::from_fn(|i| x[i].mod_floor(&m).to_u64().unwrap());
        let neg = k.signs(x);
        let signs = self.signed.iter().enumerate().fold(0u8, |s, (b, &i)| s | ((neg[i] as u8) << b));
        Ok(RayElem { r, signs })
    }

    pub fn mul(&self, x: &RayElem, y: &RayElem) -> RayElem {
        let m = self.modulus as u128;
        let mut t = [0u128; 5];
        for i in 0..3 {
            for j in 0..3 {
                t[i + j] = (t[i + j] + x.r[i] as u128 * y.r[j] as u128) % m;
            }
        }
        // θ³ = −(a θ² + b θ + c)
        let [a, b, c] = self.coeffs.map(|v| v as u128);
        for d in (3..5).rev() {
            let top = t[d];
            t[d] = 0;
            t[d - 1] = (t[d - 1] + (m - top) * a) % m;
            t[d - 2] = (t[d - 2] + (m - top) * b) % m;
            t[d - 3] = (t[d - 3] + (m - top) * c) % m;
        }
        RayElem { r: [t[0] as u64, t[1] as u64, t[2] as u64], signs: x.signs ^ y.signs }
    }

    pub fn pow(&self, x: &RayElem, mut e: u128) -> RayElem {
        let mut r = self.identity();
        let mut b = *x;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    fn sylow(&self) -> Vec<(u64, u32, u128)> {
        fp::factor_u64(self.order as u64)
            .into_iter()
            .map(|(l, v)| (l, v, self.order / (l as u128).pow(v)))
            .collect()
    }

    /// Multiplicative order of `x`.
    pub fn element_order(&self, x: &RayElem) -> u128 {
        let mut o = self.order;
        for (l, _, _) in self.sylow() {
            while o % l as u128 == 0 && self.pow(x, o / l as u128) == self.identity() {
                o /= l as u128;
            }
        }
        o
    }

    /// The subgroup generated by `gens`, projected to its `ℓ`-part, with an
    /// exponent vector for each element.
    pub fn closure(&self, gens: &[RayElem], cofactor: u128, budget: usize) -> Result<HashMap<RayElem, Vec<u64>>> {
        let proj: Vec<RayElem> = gens.iter().map(|g| self.pow(g, cofactor)).collect();
        let mut seen: HashMap<RayElem, Vec<u64>> = HashMap::new();
        let id = self.identity();
        seen.insert(id, vec![0; gens.len()]);
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = vec![];
            for x in &frontier {
                for (j, g) in proj.iter().enumerate() {
                    let y = self.mul(x, g);
                    if !seen.contains_key(&y) {
                        let mut e = seen[x].clone();
                        e[j] += 1;
                        seen.insert(y, e);
                        next.push(y);
                        if seen.len() > budget {
                            return Err(Error::Budget(format!("unit image closure exceeded {budget} elements")));
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(seen)
    }

    /// The subgroup image of `gens` inside the 2-Sylow subgroup.
    pub fn two_part_closure(&self, gens: &[RayElem], budget: usize) -> Result<TwoPart> {
        let cof = self.order >> self.order.trailing_zeros();
        let set = self.closure(gens, cof, budget)?;
        Ok(TwoPart { cofactor: cof, members: set.into_keys().collect() })
    }

    /// Order of `y` in `R / ⟨gens⟩`.
    pub fn order_mod(&self, y: &RayElem, gens: &[RayElem], budget: usize) -> Result<u128> {
        let mut o = 1u128;
        for (l, v, cof) in self.sylow() {
            let sub = self.closure(gens, cof, budget)?;
            let mut z = self.pow(y, cof);
            let mut k = 0;
            while !sub.contains_key(&z) {
                z = self.pow(&z, l as u128);
                k += 1;
                if k > v {
                    return Err(Error::Logic("element order exceeds group exponent".into()));
                }
            }
            o *= (l as u128).pow(k);
        }
        Ok(o)
    }

    /// Exponents `a` with `y = Π gens_j^{a_j}` when `y` lies in `⟨gens⟩`.
    pub fn discrete_log(&self, y: &RayElem, gens: &[RayElem], budget: usize) -> Result<Option<Vec<u128>>> {
        let n = self.order;
        let mut total = vec![0u128; gens.len()];
        for (l, v, cof) in self.sylow() {
            let sub = self.closure(gens, cof, budget)?;
            let Some(e) = sub.get(&self.pow(y, cof)) else { return Ok(None) };
            // w ≡ cof⁻¹ mod ℓ^v, so Σ_ℓ w·cof ≡ 1 mod |R|
            let lv = (l as u128).pow(v);
            let w = inv_mod_u128(cof % lv, lv);
            let c = mulmod_u128(cof, w, n);
            for (t, &ej) in total.iter_mut().zip(e) {
                *t = (*t + mulmod_u128(c, ej as u128, n)) % n;
            }
        }
        Ok(Some(total))
    }
}

pub struct TwoPart {
    /// Odd part of `|R|`; elements are projected by this power.
    pub cofactor: u128,
    members: std::collections::HashSet<RayElem>,
}

impl TwoPart {
    /// Whether an already projected element lies in the unit image.
    pub fn contains(&self, z: &RayElem) -> bool {
        self.members.contains(z)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn mulmod_u128(a: u128, b: u128, m: u128) -> u128 {
    if m < 1 << 64 {
        return (a % m) * (b % m) % m;
    }
    let (mut a, mut b, mut r) = (a % m, b % m, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            r = (r + a) % m;
        }
        a = (a + a) % m;
        b >>= 1;
    }
    r
}

fn inv_mod_u128(a: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u128
}

/// Images of `−1` and the given units.
pub fn unit_images(ray: &RayGroup, k: &CubicField, units: &[Elem]) -> Result<Vec<RayElem>> {
    let mut out = vec![ray.image(k, &super::elem([-1, 0, 0]))?];
    for u in units {
        out.push(ray.image(k, u)?);
    }
    Ok(out)
}

impl RayElem {
    pub fn is_zero_residue(&self) -> bool {
        self.r.iter().all(|x| x.is_zero())
    }
}
