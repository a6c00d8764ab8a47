//! Square-norm ideal censuses.
//!
//! `S3` mode counts squarefree products `𝔟 = Π 𝔮` of degree-2 primes, one
//! per rational prime with splitting `(1,2)`, whose Frobenius in
//! `K₃(E[2])/K₃` has order 3. `C3` mode counts products of pairs `𝔭𝔭′` of
//! degree-1 primes above totally split rational primes, again with
//! Frobenius of order 3; each rational prime offers three pairs. In both
//! modes `N𝔟 = n²` for the squarefree `n` below.

use super::classgroup::{class_group_with, ClassGroupOptions};
use super::principal::{find_generator, signed_places, Place};
use super::ray::{modulus_for_discriminant, unit_images, RayElem, RayGroup, TwoPart};
use super::{fp, frobenius_order_in_m, CubicField, GaloisType, Ideal, Pattern};
use crate::ellcurve::EllipticCurve;
use crate::error::{Error, Result};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CensusMode {
    S3,
    C3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    #[serde(rename = "X")]
    pub x: u64,
    pub count: u64,
    pub count_with_surrogate: Option<u64>,
    /// Number of order-3 elements of `Gal(K₃(E[2])/K₃)`.
    pub s_size: usize,
    /// `[K₃(E[2]) : K₃]`.
    pub m_degree: usize,
}

#[derive(Clone, Debug)]
pub struct CensusPrime {
    pub p: u64,
    /// 2-parts of generator images, one per admissible choice above `p`.
    pub z: Vec<RayElem>,
}

pub struct Surrogate {
    pub ray: RayGroup,
    pub units_image: TwoPart,
    pub class_number: u64,
}

pub struct CensusSetup {
    pub mode: CensusMode,
    pub primes: Vec<CensusPrime>,
    pub surrogate: Option<Surrogate>,
    pub s_size: usize,
    pub m_degree: usize,
    /// Largest `X` the prime list covers.
    pub max_x: u64,
    /// Index divisors skipped by the census.
    pub excluded: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct SurrogateOptions {
    pub v0: Option<Place>,
    pub class_group: ClassGroupOptions,
    pub closure_budget: usize,
}

impl Default for SurrogateOptions {
    fn default() -> Self {
        SurrogateOptions { v0: None, class_group: ClassGroupOptions::default(), closure_budget: 1 << 22 }
    }
}

/// Galois group size of `K₃(E[2])/K₃` and its number of order-3 elements,
/// assuming `K₃` is not the field cut out by the 2-division cubic unless
/// `same_field` says so.
pub fn m_over_k3(e: &EllipticCurve, same_field: bool) -> (usize, usize) {
    let g = e.division_cubic();
    let roots = super::cubic_integer_roots(g).len();
    let d = super::cubic_disc(g);
    let (order, s) = match roots {
        0 if super::is_square_i128(d) => (3, 2),
        0 => (6, 2),
        1 => {
            if super::is_square_i128(d) {
                (1, 0)
            } else {
                (2, 0)
            }
        }
        _ => (1, 0),
    };
    match (same_field, order) {
        (true, 6) => (2, 0),
        (true, 3) => (1, 0),
        _ => (order, s),
    }
}

impl CensusSetup {
    pub fn new(
        k: &CubicField,
        e: &EllipticCurve,
        mode: CensusMode,
        max_x: u64,
        surrogate: Option<&SurrogateOptions>,
    ) -> Result<CensusSetup> {
        let want = match mode {
            CensusMode::S3 => GaloisType::S3,
            CensusMode::C3 => GaloisType::C3,
        };
        if k.galois != want {
            return Err(Error::BadInput(format!("census mode {:?} does not match a {:?} field", mode, k.galois)));
        }
        let de = e.discriminant();
        let same = super::same_field(k, e.division_cubic());
        let (m_degree, s_size) = m_over_k3(e, same);
        let limit = isqrt(max_x.saturating_sub(1)) + 1;
        let mut qualifying = vec![];
        for p in fp::primes_below(limit) {
            if p == 2 || de % p as i128 == 0 || k.disc % p as i128 == 0 {
                continue;
            }
            if k.index_divides(p) {
                continue;
            }
            let st = k.split_type(p)?;
            let above = k.primes_above(p)?;
            let ok = match (mode, st.pattern) {
                (CensusMode::S3, Pattern::OneTwo) => {
                    let q = above.iter().find(|q| q.f == 2).unwrap();
                    frobenius_order_in_m(q, e)? == 3
                }
                (CensusMode::C3, Pattern::Split) => frobenius_order_in_m(&above[0], e)? == 3,
                _ => false,
            };
            if ok {
                qualifying.push((p, above));
            }
        }
        let mut sur = None;
        if let Some(opts) = surrogate {
            let cg = class_group_with(k, &opts.class_group)?;
            let h = cg.order.to_u64().ok_or_else(|| Error::Logic("class number overflow".into()))?;
            if h % 2 == 0 {
                return Err(Error::BadInput("congruence surrogate needs an odd class number".into()));
            }
            let ray = RayGroup::new(k, modulus_for_discriminant(de), signed_places(k, opts.v0))?;
            let gens = unit_images(&ray, k, &cg.units.units)?;
            let two = ray.two_part_closure(&gens, opts.closure_budget)?;
            sur = Some((cg, ray, two, h));
        }
        let primes: Vec<CensusPrime> = qualifying
            .par_iter()
            .map(|(p, above)| {
                let mut z = vec![];
                if let Some((cg, ray, two, h)) = &sur {
                    let ideals: Vec<Ideal> = match mode {
                        CensusMode::S3 => vec![Ideal::prime(k, above.iter().find(|q| q.f == 2).unwrap())],
                        CensusMode::C3 => {
                            let id: Vec<Ideal> = above.iter().map(|q| Ideal::prime(k, q)).collect();
                            vec![id[0].mul(k, &id[1]), id[0].mul(k, &id[2]), id[1].mul(k, &id[2])]
                        }
                    };
                    for a in ideals {
                        let g = find_generator(k, &cg.units, &a.pow(k, *h), cg_budget(&surrogate))?
                            .ok_or_else(|| Error::Logic(format!("no generator for a power of a prime above {p}")))?;
                        z.push(ray.pow(&ray.image(k, &g)?, two.cofactor));
                    }
                }
                Ok(CensusPrime { p: *p, z })
            })
            .collect::<Result<_>>()?;
        Ok(CensusSetup {
            mode,
            primes,
            surrogate: sur.map(|(_, ray, two, h)| Surrogate { ray, units_image: two, class_number: h }),
            s_size,
            m_degree,
            max_x,
            excluded: k.index_primes.clone(),
        })
    }

    pub fn choices(&self) -> u64 {
        match self.mode {
            CensusMode::S3 => 1,
            CensusMode::C3 => 3,
        }
    }
}

fn cg_budget(s: &Option<&SurrogateOptions>) -> u64 {
    s.map_or(0, |o| o.class_group.node_budget)
}

/// Primes `p < bound` not dividing the discriminant, and how many have the
/// splitting pattern the census uses: `(1,2)` in S3 mode, split in C3 mode.
pub fn pattern_fraction(k: &CubicField, mode: CensusMode, bound: u64) -> Result<(u64, u64)> {
    let want = match mode {
        CensusMode::S3 => Pattern::OneTwo,
        CensusMode::C3 => Pattern::Split,
    };
    let mut hits = 0;
    let mut total = 0;
    for p in fp::primes_below(bound) {
        if k.disc % p as i128 == 0 {
            continue;
        }
        total += 1;
        if k.split_type(p)?.pattern == want {
            hits += 1;
        }
    }
    Ok((hits, total))
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `(n, ideals, ideals passing the surrogate)` for every qualifying
/// squarefree `n > 1` with `n² < x_max`.
fn products(setup: &CensusSetup, x_max: u64) -> Vec<(u64, u64, u64)> {
    let limit = isqrt(x_max.saturating_sub(1)); // n ≤ limit ⟺ n² < x_max
    let ps = &setup.primes;
    let sur = setup.surrogate.as_ref();
    let mut out: Vec<(u64, u64, u64)> = (0..ps.len())
        .into_par_iter()
        .flat_map_iter(|top| {
            let mut acc = vec![];
            if ps[top].p <= limit {
                let start: Vec<Option<RayElem>> = match sur {
                    Some(_) => ps[top].z.iter().map(|z| Some(*z)).collect(),
                    None => vec![None],
                };
                dfs(setup, top, ps[top].p, start, limit, &mut acc);
            }
            acc
        })
        .collect();
    out.sort_unstable();
    out
}

/// Extend the product `n` (with one running ray element per choice made so
/// far) by primes below index `below`.
fn dfs(setup: &CensusSetup, below: usize, n: u64, zs: Vec<Option<RayElem>>, limit: u64, acc: &mut Vec<(u64, u64, u64)>) {
    emit(setup, n, &zs, acc);
    for j in (0..below).rev() {
        let p = setup.primes[j].p;
        if n.saturating_mul(p) > limit {
            continue;
        }
        let next: Vec<Option<RayElem>> = match &setup.surrogate {
            None => vec![None],
            Some(s) => zs
                .iter()
                .flat_map(|z| setup.primes[j].z.iter().map(move |w| Some(s.ray.mul(&z.unwrap(), w))))
                .collect(),
        };
        dfs(setup, j, n * p, next, limit, acc);
    }
}

fn emit(setup: &CensusSetup, n: u64, zs: &[Option<RayElem>], acc: &mut Vec<(u64, u64, u64)>) {
    let w = setup.choices().pow(super::fp::factor_u64(n).len() as u32);
    let passing = match &setup.surrogate {
        None => 0,
        Some(s) => zs.iter().filter(|z| s.units_image.contains(&z.unwrap())).count() as u64,
    };
    acc.push((n, w, passing));
}

/// Counts at each `X` in `xs` (each at most `setup.max_x`).
pub fn census(setup: &CensusSetup, xs: &[u64]) -> Result<Vec<CensusRecord>> {
    let x_max = xs.iter().copied().max().unwrap_or(0);
    if x_max > setup.max_x {
        return Err(Error::BadInput(format!("X = {x_max} exceeds the prepared bound {}", setup.max_x)));
    }
    let prods = products(setup, x_max);
    Ok(xs
        .iter()
        .map(|&x| {
            let (mut c, mut cs) = (0u64, 0u64);
            for &(n, w, s) in &prods {
                if (n as u128) * (n as u128) < x as u128 {
                    c += w;
                    cs += s;
                }
            }
            CensusRecord {
                x,
                count: c,
                count_with_surrogate: setup.surrogate.as_ref().map(|_| cs),
                s_size: setup.s_size,
                m_degree: setup.m_degree,
            }
        })
        .collect())
}

/// Powers of two `2^lo, …, 2^hi`.
pub fn census_ladder(lo: u32, hi: u32) -> Vec<u64> {
    (lo..=hi).map(|e| 1u64 << e).collect()
}

/// Independent count by trial factoring every `n` with `n² < x`, deciding
/// each prime by brute-force root counts of both cubics mod `p`.
pub fn count_oracle(k: &CubicField, e: &EllipticCurve, mode: CensusMode, x: u64) -> u64 {
    let roots = |c: [i64; 3], p: u64| -> usize {
        let (a, b, cc) = (c[0].rem_euclid(p as i64) as u64, c[1].rem_euclid(p as i64) as u64, c[2].rem_euclid(p as i64) as u64);
        (0..p)
            .filter(|&t| {
                let v = (((t * t % p) * t % p) + a * (t * t % p) + b * t + cc) % p;
                v == 0
            })
            .count()
    };
    let de = e.discriminant();
    let good = |p: u64| -> bool {
        if p == 2 || de % p as i128 == 0 || k.disc % p as i128 == 0 || k.index_divides(p) {
            return false;
        }
        let rk = roots(k.coeffs, p);
        let re = roots(e.division_cubic(), p);
        match mode {
            CensusMode::S3 => rk == 1 && re == 0,
            CensusMode::C3 => rk == 3 && re == 0,
        }
    };
    let w: u64 = match mode {
        CensusMode::S3 => 1,
        CensusMode::C3 => 3,
    };
    let mut total = 0;
    let mut n = 2u64;
    while (n as u128) * (n as u128) < x as u128 {
        let mut m = n;
        let mut ok = true;
        let mut omega = 0;
        let mut d = 2;
        while d * d <= m && ok {
            if m % d == 0 {
                m /= d;
                ok = m % d != 0 && good(d);
                omega += 1;
            }
            d += 1;
        }
        if ok && m > 1 {
            ok = good(m);
            omega += 1;
        }
        if ok {
            total += w.pow(omega);
        }
        n += 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::cubic_field;

    #[test]
    fn matches_the_oracle() {
        let k = cubic_field([0, -1, -1]).unwrap();
        let e = EllipticCurve::new(1, 1).unwrap();
        let setup = CensusSetup::new(&k, &e, CensusMode::S3, 1 << 20, None).unwrap();
        assert_eq!(&setup.primes.iter().map(|p| p.p).take(4).collect::<Vec<_>>(), &[5, 7, 19, 97]);
        let xs = census_ladder(4, 20);
        let recs = census(&setup, &xs).unwrap();
        for r in &recs {
            assert_eq!(r.count, count_oracle(&k, &e, CensusMode::S3, r.x), "X={}", r.x);
        }
        assert!(recs.windows(2).all(|w| w[0].count <= w[1].count));
        assert_eq!((recs[0].s_size, recs[0].m_degree), (2, 6));
        let c = cubic_field([0, -3, -1]).unwrap();
        let setup = CensusSetup::new(&c, &e, CensusMode::C3, 1 << 18, None).unwrap();
        for r in census(&setup, &census_ladder(8, 18)).unwrap() {
            assert_eq!(r.count, count_oracle(&c, &e, CensusMode::C3, r.x), "X={}", r.x);
        }
    }

    #[test]
    fn degenerate_inputs() {
        let k = cubic_field([0, -1, -1]).unwrap();
        // full rational 2-torsion: the Frobenius target is empty
        let e = EllipticCurve::new(-1, 0).unwrap();
        let setup = CensusSetup::new(&k, &e, CensusMode::S3, 1 << 16, None).unwrap();
        assert!(census(&setup, &[1 << 16]).unwrap().iter().all(|r| r.count == 0));
        let e = EllipticCurve::new(1, 1).unwrap();
        let setup = CensusSetup::new(&k, &e, CensusMode::S3, 1 << 16, None).unwrap();
        assert_eq!(census(&setup, &[25]).unwrap()[0].count, 0);
        assert_eq!(census(&setup, &[26]).unwrap()[0].count, 1);
        assert!(CensusSetup::new(&k, &e, CensusMode::C3, 100, None).is_err());
    }

    #[test]
    fn surrogate_counts_are_bounded_by_plain_counts() {
        let k = cubic_field([0, -1, -1]).unwrap();
        let e = EllipticCurve::new(1, 1).unwrap();
        let opts = SurrogateOptions { v0: Some(Place::Real(0)), ..Default::default() };
        let setup = CensusSetup::new(&k, &e, CensusMode::S3, 1 << 16, Some(&opts)).unwrap();
        for r in census(&setup, &census_ladder(10, 16)).unwrap() {
            let s = r.count_with_surrogate.unwrap();
            assert!(s <= r.count);
        }
    }
}
