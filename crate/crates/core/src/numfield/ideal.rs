//! Ideals of `Z[θ]` as lower-triangular Hermite normal forms.

use super::{CubicField, Elem, PrimeIdealData};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Row `i` of `rows` is a basis vector supported on coordinates `0..=i`,
/// with positive diagonal and off-diagonal entries reduced into `[0, d_j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub rows: [Elem; 3],
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<Vec<String>> = self.rows.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "Ideal{:?}", r)
    }
}

/// Hermite normal form of the Z-span of `vecs`, which must have rank 3.
pub fn hnf(vecs: &[Elem]) -> Option<[Elem; 3]> {
    let mut pool: Vec<Elem> = vecs.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut rows: [Option<Elem>; 3] = Default::default();
    for col in (0..3).rev() {
        // gcd-combine all vectors with a nonzero entry in `col`
        let mut pivot: Option<Elem> = None;
        let mut rest = vec![];
        for v in pool.drain(..) {
            if v[col].is_zero() {
                rest.push(v);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(v),
                Some(p) => {
                    let e = p[col].extended_gcd(&v[col]);
                    let (a, b) = (&p[col] / &e.gcd, &v[col] / &e.gcd);
                    let new_p: Elem = std::array::from_fn(|i| &e.x * &p[i] + &e.y * &v[i]);
                    let other: Elem = std::array::from_fn(|i| &a * &v[i] - &b * &p[i]);
                    if other.iter().any(|x| !x.is_zero()) {
                        rest.push(other);
                    }
                    pivot = Some(new_p);
                }
            }
        }
        let mut p = pivot?;
        if p[col].is_negative() {
            p = p.map(|x| -x);
        }
        rows[col] = Some(p);
        pool = rest;
    }
    let mut rows = rows.map(|r| r.unwrap());
    for i in 1..3 {
        for j in (0..i).rev() {
            let q = rows[i][j].div_floor(&rows[j][j]);
            if !q.is_zero() {
                let rj = rows[j].clone();
                for k in 0..=j {
                    rows[i][k] -= &q * &rj[k];
                }
            }
        }
    }
    Some(rows)
}

impl Ideal {
    pub fn unit() -> Ideal {
        Ideal { rows: [super::elem([1, 0, 0]), super::elem([0, 1, 0]), super::elem([0, 0, 1])] }
    }

    /// The Z-lattice spanned by `vecs`, which must be an ideal of full rank.
    pub fn from_z_basis(vecs: &[Elem]) -> Option<Ideal> {
        hnf(vecs).map(|rows| Ideal { rows })
    }

    /// The ideal generated by `gens` as a `Z[θ]`-module.
    pub fn generated(k: &CubicField, gens: &[Elem]) -> Option<Ideal> {
        let mut vecs = vec![];
        for g in gens {
            let mut t = g.clone();
            for _ in 0..3 {
                vecs.push(t.clone());
                t = k.mul(&t, &k.theta());
            }
        }
        Ideal::from_z_basis(&vecs)
    }

    pub fn principal(k: &CubicField, x: &Elem) -> Option<Ideal> {
        Ideal::generated(k, std::slice::from_ref(x))
    }

    /// `(p, g(θ))` for a prime not dividing the index.
    pub fn prime(k: &CubicField, q: &PrimeIdealData) -> Ideal {
        let gen: Elem = if q.factor.len() == 4 {
            // inert: g = f mod p and the prime is (p)
            super::elem([q.p as i64, 0, 0])
        } else {
            std::array::from_fn(|i| BigInt::from(q.factor.get(i).copied().unwrap_or(0)))
        };
        Ideal::generated(k, &[super::elem([q.p as i64, 0, 0]), gen]).expect("p·Z[θ] has full rank")
    }

    pub fn norm(&self) -> BigInt {
        &self.rows[0][0] * &self.rows[1][1] * &self.rows[2][2]
    }

    /// Smallest positive rational integer in the ideal.
    pub fn min_integer(&self) -> BigInt {
        self.rows[0][0].clone()
    }

    pub fn contains(&self, x: &Elem) -> bool {
        let mut r = x.clone();
        for i in (0..3).rev() {
            let (q, rem) = r[i].div_rem(&self.rows[i][i]);
            if !rem.is_zero() {
                return false;
            }
            for k in 0..=i {
                r[k] -= &q * &self.rows[i][k];
            }
        }
        true
    }

    pub fn contains_ideal(&self, o: &Ideal) -> bool {
        o.rows.iter().all(|v| self.contains(v))
    }

    pub fn mul(&self, k: &CubicField, o: &Ideal) -> Ideal {
        let mut vecs = Vec::with_capacity(9);
        for a in &self.rows {
            for b in &o.rows {
                vecs.push(k.mul(a, b));
            }
        }
        // keep entries small: the product contains N(a)N(b)·Z[θ]
        let n = self.norm() * o.norm();
        for i in 0..3 {
            let mut e: Elem = Default::default();
            e[i] = n.clone();
            vecs.push(e);
        }
        let mut vecs: Vec<Elem> = vecs.into_iter().map(|v| v.map(|x| x.mod_floor(&n))).collect();
        vecs.retain(|v| v.iter().any(|x| !x.is_zero()));
        Ideal::from_z_basis(&vecs).expect("product of full-rank ideals")
    }

    pub fn pow(&self, k: &CubicField, mut e: u64) -> Ideal {
        let mut r = Ideal::unit();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(k, &b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(k, &b);
            }
        }
        r
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Basis rows as elements.
    pub fn basis(&self) -> &[Elem; 3] {
        &self.rows
    }

    /// `v_𝔭(x)`, by testing membership in successive powers of `𝔭`.
    pub fn valuation_of(&self, k: &CubicField, x: &Elem, cap: u32) -> u32 {
        let mut pk = self.clone();
        let mut v = 0;
        while v < cap && pk.contains(x) {
            v += 1;
            pk = pk.mul(k, self);
        }
        v
    }
}
