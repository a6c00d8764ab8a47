//! Class groups of cubic fields with maximal `Z[θ]`.
//!
//! Relations among prime ideals below the Minkowski bound give a group
//! `G'` surjecting onto the class group. For every prime `ℓ | #G'`, each
//! line of `G'[ℓ]` is represented by a small ideal and tested for
//! principality exactly; principal ones become new relations. Once no line
//! is principal the kernel has no `ℓ`-torsion for any `ℓ`, so `G' ≅ Cl`.

use super::lattice::Reduced;
use super::principal::find_generator;
use super::snf::{smith, RelationLattice, Smith};
use super::units::{find_units, UnitData};
use super::{fp, CubicField, Elem, Ideal, PrimeIdealData};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct ClassGroupOptions {
    /// Largest `|disc|` accepted.
    pub disc_cap: u64,
    pub node_budget: u64,
    /// Largest `#G'` for which representatives are searched.
    pub group_cap: u64,
}

impl Default for ClassGroupOptions {
    fn default() -> Self {
        ClassGroupOptions { disc_cap: 1_000_000, node_budget: 20_000_000, group_cap: 100_000 }
    }
}

#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub factor_base: Vec<PrimeIdealData>,
    pub fb_ideals: Vec<Ideal>,
    /// Invariant factors greater than one, each dividing the next.
    pub invariants: Vec<BigInt>,
    pub order: BigInt,
    pub relations: usize,
    pub units: UnitData,
    smith: Smith,
    /// Position of the first nontrivial invariant inside `smith.diag`.
    offset: usize,
}

/// A class as coordinates modulo `invariants`.
pub type ClassCoords = Vec<BigInt>;

impl ClassGroup {
    pub fn two_rank(&self) -> usize {
        self.invariants.iter().filter(|d| d.is_even()).count()
    }

    pub fn is_odd(&self) -> bool {
        self.order.is_odd()
    }

    /// Coordinates of `Π 𝔭_i^{e_i}` over the factor base.
    pub fn coords_of_exponents(&self, e: &[BigInt]) -> ClassCoords {
        self.invariants
            .iter()
            .enumerate()
            .map(|(t, d)| {
                let col = t + self.offset;
                let s: BigInt = e.iter().zip(&self.smith.v).map(|(x, row)| x * &row[col]).sum();
                s.mod_floor(d)
            })
            .collect()
    }

    /// Factor-base exponents of some ideal in the class with these coordinates.
    pub fn exponents_of_coords(&self, c: &ClassCoords) -> Vec<BigInt> {
        let n = self.factor_base.len();
        let mut e = vec![BigInt::zero(); n];
        for (t, y) in c.iter().enumerate() {
            for (ej, x) in e.iter_mut().zip(&self.smith.v_inv[t + self.offset]) {
                *ej += y * x;
            }
        }
        e
    }

    pub fn order_of(&self, c: &ClassCoords) -> BigInt {
        c.iter().zip(&self.invariants).fold(BigInt::one(), |acc, (y, d)| acc.lcm(&(d / y.gcd(d))))
    }

    pub fn is_trivial(&self, c: &ClassCoords) -> bool {
        c.iter().all(|y| y.is_zero())
    }

    pub fn add(&self, a: &ClassCoords, b: &ClassCoords) -> ClassCoords {
        a.iter().zip(b).zip(&self.invariants).map(|((x, y), d)| (x + y).mod_floor(d)).collect()
    }

    pub fn scale(&self, a: &ClassCoords, k: &BigInt) -> ClassCoords {
        a.iter().zip(&self.invariants).map(|(x, d)| (x * k).mod_floor(d)).collect()
    }

    /// The class of an arbitrary nonzero ideal, via an element `x ∈ 𝔞` whose
    /// cofactor `(x)𝔞⁻¹` is smooth over the factor base.
    pub fn class_of(&self, k: &CubicField, a: &Ideal, budget: u64) -> Result<ClassCoords> {
        if self.invariants.is_empty() {
            return Ok(vec![]);
        }
        let fb_p: Vec<u64> = dedup_primes(&self.factor_base);
        let red = Reduced::new(k, &a.rows);
        let na = a.norm();
        let mut bound = 4.0 * na.to_f64().unwrap().powf(2.0 / 3.0) * (k.disc.unsigned_abs() as f64).powf(1.0 / 3.0);
        let mut spent = 0;
        loop {
            let mut hit: Option<Elem> = None;
            let nodes = red.enumerate(bound, budget - spent.min(budget), |x, _| {
                let n = k.norm(x).abs();
                let (q, r) = n.div_rem(&na);
                if r.is_zero() && smooth_over(&q, &fb_p) {
                    hit = Some(x.clone());
                    return false;
                }
                true
            })?;
            spent += nodes;
            if let Some(x) = hit {
                let mut e = vec![BigInt::zero(); self.factor_base.len()];
                for (i, id) in self.fb_ideals.iter().enumerate() {
                    let vx = id.valuation_of(k, &x, 64);
                    if vx > 0 {
                        let va = ideal_valuation(k, id, a, vx);
                        // the class of 𝔞 is minus that of the cofactor
                        e[i] = -BigInt::from(vx - va);
                    }
                }
                return Ok(self.coords_of_exponents(&e));
            }
            if spent >= budget {
                return Err(Error::Budget("no smooth cofactor found for class computation".into()));
            }
            bound *= 2.0;
        }
    }
}

fn dedup_primes(fb: &[PrimeIdealData]) -> Vec<u64> {
    let mut v: Vec<u64> = fb.iter().map(|q| q.p).collect();
    v.dedup();
    v
}

fn smooth_over(n: &BigInt, primes: &[u64]) -> bool {
    let mut n = n.clone();
    if n.is_zero() {
        return false;
    }
    for &p in primes {
        let bp = BigInt::from(p);
        while n.is_multiple_of(&bp) {
            n /= &bp;
        }
    }
    n.is_one()
}

/// `v_𝔭(𝔞)`, capped.
fn ideal_valuation(k: &CubicField, p: &Ideal, a: &Ideal, cap: u32) -> u32 {
    let mut pk = p.clone();
    let mut v = 0;
    while v < cap && pk.contains_ideal(a) {
        v += 1;
        pk = pk.mul(k, p);
    }
    v
}

struct Builder<'a> {
    k: &'a CubicField,
    fb: Vec<PrimeIdealData>,
    ids: Vec<Ideal>,
    lattice: RelationLattice,
}

impl Builder<'_> {
    fn relation_of(&self, x: &Elem, fb_p: &[u64]) -> Option<Vec<BigInt>> {
        let n = self.k.norm(x).abs();
        if n.is_one() || !smooth_over(&n, fb_p) {
            return None;
        }
        let mut row = vec![BigInt::zero(); self.fb.len()];
        for (i, (q, id)) in self.fb.iter().zip(&self.ids).enumerate() {
            if n.is_multiple_of(&BigInt::from(q.p)) {
                row[i] = BigInt::from(id.valuation_of(self.k, x, 128));
            }
        }
        Some(row)
    }
}

pub fn class_group(k: &CubicField) -> Result<ClassGroup> {
    class_group_with(k, &ClassGroupOptions::default())
}

pub fn class_group_2_rank(k: &CubicField) -> Result<usize> {
    Ok(class_group(k)?.two_rank())
}

pub fn class_group_with(k: &CubicField, opts: &ClassGroupOptions) -> Result<ClassGroup> {
    if let Some(&p) = k.index_primes.first() {
        return Err(Error::IndexDivisor(p));
    }
    if k.disc.unsigned_abs() > opts.disc_cap as u128 {
        return Err(Error::TooLarge { order: k.disc.unsigned_abs(), bound: opts.disc_cap as u128 });
    }
    let units = find_units(k, opts.node_budget)?;
    let mb = k.minkowski_bound();
    let mut b = Builder { k, fb: vec![], ids: vec![], lattice: RelationLattice::new(0) };
    let mut split_rels: Vec<Vec<BigInt>> = vec![];
    for p in fp::primes_below(mb.floor() as u64 + 1) {
        let above = k.primes_above(p)?;
        if above.iter().all(|q| q.norm as f64 > mb) {
            continue;
        }
        let start = b.fb.len();
        for q in above {
            b.ids.push(Ideal::prime(k, &q));
            b.fb.push(q);
        }
        let mut row = vec![BigInt::zero(); start];
        for q in &b.fb[start..] {
            row.push(BigInt::from(q.e));
        }
        split_rels.push(row);
    }
    let n = b.fb.len();
    b.lattice = RelationLattice::new(n);
    let mut relations = 0usize;
    for mut r in split_rels {
        r.resize(n, BigInt::zero());
        b.lattice.insert(&r);
        relations += 1;
    }
    let fb_p = dedup_primes(&b.fb);

    // relations from short elements until the lattice has full rank
    let red = Reduced::new(k, &Ideal::unit().rows);
    let mut bound = 16.0f64;
    let mut spent = 0u64;
    let mut settled = false;
    while n > 0 && !settled {
        let mut fresh = vec![];
        let nodes = red
            .enumerate(bound, opts.node_budget.saturating_sub(spent).max(1), |x, _| {
                if let Some(r) = b.relation_of(x, &fb_p) {
                    fresh.push(r);
                }
                true
            })
            .map_err(|_| Error::Budget(format!("relation search exhausted {} nodes", opts.node_budget)))?;
        spent += nodes;
        let full_before = b.lattice.rank() == n;
        let mut grew = false;
        for r in fresh {
            relations += 1;
            grew |= b.lattice.insert(&r);
        }
        // one further round without growth after reaching full rank
        settled = full_before && !grew;
        if spent >= opts.node_budget && !settled {
            return Err(Error::Budget("class group relations".into()));
        }
        bound *= 2.0;
    }

    let mut cg = finish(b.fb.clone(), b.ids.clone(), smith(b.lattice.matrix(), n), relations, units.clone());
    // certification
    'outer: loop {
        let order = cg.order.to_u64().unwrap_or(u64::MAX);
        if order == 1 {
            break;
        }
        if order > opts.group_cap {
            return Err(Error::TooLarge { order: order as u128, bound: opts.group_cap as u128 });
        }
        let reps = representatives(k, &cg, opts.group_cap)?;
        for (l, _) in fp::factor_u64(order) {
            for line in lines_of_torsion(&cg, l) {
                let (exps, ideal) = reps.get(&line).ok_or_else(|| Error::Budget("class representative search".into()))?;
                if find_generator(k, &units, ideal, opts.node_budget)?.is_some() {
                    let row: Vec<BigInt> = exps.iter().map(|&e| BigInt::from(e)).collect();
                    b.lattice.insert(&row);
                    relations += 1;
                    cg = finish(b.fb.clone(), b.ids.clone(), smith(b.lattice.matrix(), n), relations, units.clone());
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok(cg)
}

fn finish(fb: Vec<PrimeIdealData>, ids: Vec<Ideal>, s: Smith, relations: usize, units: UnitData) -> ClassGroup {
    let offset = s.diag.iter().take_while(|d| d.is_one()).count();
    let invariants: Vec<BigInt> = s.diag[offset..].to_vec();
    let order = invariants.iter().product();
    ClassGroup { factor_base: fb, fb_ideals: ids, invariants, order, relations, units, smith: s, offset }
}

/// One coordinate vector per cyclic subgroup of order `ℓ`.
fn lines_of_torsion(cg: &ClassGroup, l: u64) -> Vec<ClassCoords> {
    let bl = BigInt::from(l);
    let gens: Vec<ClassCoords> = cg
        .invariants
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_multiple_of(&bl))
        .map(|(t, d)| {
            let mut c = vec![BigInt::zero(); cg.invariants.len()];
            c[t] = d / &bl;
            c
        })
        .collect();
    let r = gens.len() as u32;
    let mut out = vec![];
    for idx in 1..l.pow(r) {
        let digits: Vec<u64> = (0..r).map(|i| idx / l.pow(i) % l).collect();
        // normalise: the first nonzero digit is 1
        if digits.iter().find(|&&d| d != 0) != Some(&1) {
            continue;
        }
        let mut c = vec![BigInt::zero(); cg.invariants.len()];
        for (g, &d) in gens.iter().zip(&digits) {
            c = cg.add(&c, &cg.scale(g, &BigInt::from(d)));
        }
        out.push(c);
    }
    out
}

/// Breadth-first products of factor-base primes, keeping the first ideal
/// reached in each class.
fn representatives(
    k: &CubicField,
    cg: &ClassGroup,
    cap: u64,
) -> Result<HashMap<ClassCoords, (Vec<i64>, Ideal)>> {
    let n = cg.factor_base.len();
    let target = cg.order.to_u64().unwrap();
    let mut seen: HashMap<ClassCoords, (Vec<i64>, Ideal)> = HashMap::new();
    let zero = vec![BigInt::zero(); cg.invariants.len()];
    seen.insert(zero.clone(), (vec![0; n], Ideal::unit()));
    let prime_coords: Vec<ClassCoords> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            cg.coords_of_exponents(&e)
        })
        .collect();
    let mut frontier = vec![zero];
    let mut steps = 0u64;
    while (seen.len() as u64) < target {
        let mut next = vec![];
        for c in &frontier {
            for (i, pc) in prime_coords.iter().enumerate() {
                steps += 1;
                if steps > cap * n as u64 * 4 {
                    return Err(Error::Budget("class representative search".into()));
                }
                let nc = cg.add(c, pc);
                if seen.contains_key(&nc) {
                    continue;
                }
                let (e, id) = seen[c].clone();
                let mut e = e;
                e[i] += 1;
                let id = id.mul(k, &cg.fb_ideals[i]);
                seen.insert(nc.clone(), (e, id));
                next.push(nc);
            }
        }
        if next.is_empty() {
            return Err(Error::Logic("factor base does not generate the relation quotient".into()));
        }
        frontier = next;
    }
    Ok(seen)
}
