//! Cubic fields `Q(θ)` with `θ³ + a θ² + b θ + c = 0`, their equation order
//! `Z[θ]`, prime splitting, class groups and ideal censuses.
//!
//! Elements are integer coordinate triples in the power basis `1, θ, θ²`.

pub mod census;
pub mod classgroup;
pub mod fit;
pub mod fp;
pub mod ideal;
pub mod lattice;
pub mod principal;
pub mod ray;
pub mod snf;
pub mod units;

pub use census::{census, census_ladder, count_oracle, pattern_fraction, CensusMode, CensusRecord, CensusSetup, SurrogateOptions};
pub use classgroup::{class_group, class_group_2_rank, class_group_with, ClassGroup, ClassGroupOptions};
pub use fit::{fit_exponent, least_squares, FitResult};
pub use fp::FpPoly;
pub use ideal::Ideal;
pub use principal::{find_generator, is_principal_with_congruence, signed_places, Place, PrincipalityOptions, PrincipalityResult, Verdict};
pub use ray::{modulus_for_discriminant, RayGroup};
pub use units::{find_units, UnitData};

use crate::error::{Error, Result};
use fp::{factor_u64, reduce};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

pub type Elem = [BigInt; 3];

pub fn elem(x: [i64; 3]) -> Elem {
    x.map(BigInt::from)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GaloisType {
    S3,
    C3,
}

/// Splitting pattern of a rational prime in a cubic field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Pattern {
    /// (1,1,1)
    Split,
    /// (1,2)
    OneTwo,
    /// (3)
    Inert,
    /// (1²,1)
    RamifiedSquare,
    /// (1³)
    RamifiedCube,
}

impl Pattern {
    pub fn is_ramified(self) -> bool {
        matches!(self, Pattern::RamifiedSquare | Pattern::RamifiedCube)
    }

    pub fn label(self) -> &'static str {
        match self {
            Pattern::Split => "(1,1,1)",
            Pattern::OneTwo => "(1,2)",
            Pattern::Inert => "(3)",
            Pattern::RamifiedSquare => "(1^2,1)",
            Pattern::RamifiedCube => "(1^3)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitType {
    pub p: u64,
    pub pattern: Pattern,
    /// `(degree, multiplicity, monic factor mod p)`, by degree.
    pub factors: Vec<(usize, u32, FpPoly)>,
}

/// A prime ideal `(p, g(θ))` of `Z[θ]` at a prime not dividing the index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeIdealData {
    pub p: u64,
    /// Residue degree.
    pub f: u32,
    /// Ramification index.
    pub e: u32,
    pub norm: u128,
    /// The local factor `g mod p`, low degree first.
    pub factor: Vec<u64>,
    /// Order of Frobenius in `Gal(K₃(E[2])/K₃)`, once computed.
    pub frob_order: Option<u8>,
}

#[derive(Clone, Debug)]
pub struct CubicField {
    /// `[a, b, c]` for `x³ + a x² + b x + c`.
    pub coeffs: [i64; 3],
    pub disc: i128,
    pub galois: GaloisType,
    /// Primes dividing `[O_K : Z[θ]]`.
    pub index_primes: Vec<u64>,
    /// Real roots ascending, then the complex pair with positive imaginary part first.
    roots: [Complex64; 3],
    r1: usize,
}

/// `a²b² − 4b³ − 4a³c − 27c² + 18abc`.
pub fn cubic_disc(c: [i64; 3]) -> i128 {
    let [a, b, c] = c.map(|x| x as i128);
    a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c
}

pub fn is_square_i128(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i128;
    (r.saturating_sub(2)..=r + 2).any(|s| s >= 0 && s * s == n)
}

/// Integer roots of the monic cubic, by the rational root test.
pub fn cubic_integer_roots(c: [i64; 3]) -> Vec<i64> {
    let ev = |x: i128| x * x * x + c[0] as i128 * x * x + c[1] as i128 * x + c[2] as i128;
    if c[2] == 0 {
        let mut v = vec![0];
        // remaining quadratic x² + a x + b
        for r in quadratic_integer_roots(c[0], c[1]) {
            if !v.contains(&r) {
                v.push(r);
            }
        }
        v.sort_unstable();
        return v;
    }
    let mut out = vec![];
    for d in divisors(c[2].unsigned_abs()) {
        for s in [d as i128, -(d as i128)] {
            if ev(s) == 0 {
                out.push(s as i64);
            }
        }
    }
    out.sort_unstable();
    out
}

fn quadratic_integer_roots(a: i64, b: i64) -> Vec<i64> {
    let d = a as i128 * a as i128 - 4 * b as i128;
    if !is_square_i128(d) {
        return vec![];
    }
    let s = (d as f64).sqrt().round() as i128;
    [(-(a as i128) + s), (-(a as i128) - s)].into_iter().filter(|x| x % 2 == 0).map(|x| (x / 2) as i64).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor_u64(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Integer polynomial helpers, low degree first.
fn zpoly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut c = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// Dedekind's criterion: whether `Z[θ]` is maximal at `p`.
pub fn dedekind_maximal(coeffs: [i64; 3], p: u64) -> bool {
    let f: Vec<i128> = vec![coeffs[2] as i128, coeffs[1] as i128, coeffs[0] as i128, 1];
    let fbar = FpPoly::new(p, f.iter().map(|&x| reduce(x, p)).collect());
    let factors = fbar.factor();
    if factors.iter().all(|(_, m)| *m == 1) {
        return true;
    }
    let g = factors.iter().fold(FpPoly::one(p), |acc, (h, _)| acc.mul(h));
    let h = fbar.divrem(&g).0;
    let lift = |q: &FpPoly| q.c.iter().map(|&x| x as i128).collect::<Vec<i128>>();
    let gh = zpoly_mul(&lift(&g), &lift(&h));
    let big_f: Vec<i128> = (0..gh.len().max(f.len()))
        .map(|i| {
            let d = gh.get(i).copied().unwrap_or(0) - f.get(i).copied().unwrap_or(0);
            debug_assert_eq!(d % p as i128, 0);
            d / p as i128
        })
        .collect();
    let fb = FpPoly::new(p, big_f.iter().map(|&x| reduce(x, p)).collect());
    fb.gcd(&g).gcd(&h).degree() == 0
}

fn durand_kerner(coeffs: [i64; 3]) -> [Complex64; 3] {
    let [a, b, c] = coeffs.map(|x| x as f64);
    let f = |z: Complex64| ((z + a) * z + b) * z + c;
    let df = |z: Complex64| (z * 3.0 + 2.0 * a) * z + b;
    let scale = 1.0 + a.abs().max(b.abs()).max(c.abs());
    let seed = Complex64::new(0.4, 0.9);
    let mut z = [seed * scale, seed * seed * scale, seed * seed * seed * scale];
    for _ in 0..500 {
        let prev = z;
        for i in 0..3 {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            z[i] -= f(z[i]) / den;
        }
        if (0..3).all(|i| (z[i] - prev[i]).norm() <= 1e-15 * scale) {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..4 {
            let d = df(*zi);
            if d.norm() > 0.0 {
                *zi -= f(*zi) / d;
            }
        }
    }
    z
}

impl CubicField {
    /// Build from `[a, b, c]`, rejecting reducible cubics.
    pub fn new(coeffs: [i64; 3]) -> Result<CubicField> {
        if coeffs.iter().any(|c| c.unsigned_abs() > 1 << 20) {
            return Err(Error::BadInput(format!("cubic coefficients {:?} exceed 2^20", coeffs)));
        }
        if !cubic_integer_roots(coeffs).is_empty() {
            return Err(Error::Reducible);
        }
        let disc = cubic_disc(coeffs);
        let galois = if is_square_i128(disc) { GaloisType::C3 } else { GaloisType::S3 };
        let mut index_primes = vec![];
        for (p, e) in factor_u64(disc.unsigned_abs() as u64) {
            if e >= 2 && !dedekind_maximal(coeffs, p) {
                index_primes.push(p);
            }
        }
        let mut z = durand_kerner(coeffs);
        let r1 = if disc > 0 { 3 } else { 1 };
        z.sort_by(|x, y| x.im.abs().total_cmp(&y.im.abs()));
        for zi in z.iter_mut().take(r1) {
            zi.im = 0.0;
        }
        let (real, cx) = z.split_at_mut(r1);
        real.sort_by(|x, y| x.re.total_cmp(&y.re));
        if r1 == 1 {
            let w = if cx[0].im > 0.0 { cx[0] } else { cx[1] };
            cx[0] = w;
            cx[1] = w.conj();
        }
        Ok(CubicField { coeffs, disc, galois, index_primes, roots: z, r1 })
    }

    pub fn roots(&self) -> &[Complex64; 3] {
        &self.roots
    }

    /// Number of real embeddings.
    pub fn r1(&self) -> usize {
        self.r1
    }

    /// Rank of the unit group.
    pub fn unit_rank(&self) -> usize {
        self.r1 + (3 - self.r1) / 2 - 1
    }

    /// Whether `Z[θ]` is the full ring of integers.
    pub fn is_maximal(&self) -> bool {
        self.index_primes.is_empty()
    }

    pub fn index_divides(&self, p: u64) -> bool {
        self.index_primes.contains(&p)
    }

    /// The defining polynomial mod `p`.
    pub fn poly_mod(&self, p: u64) -> FpPoly {
        FpPoly::from_ints(p, &[self.coeffs[2], self.coeffs[1], self.coeffs[0], 1])
    }

    pub fn split_type(&self, p: u64) -> Result<SplitType> {
        if !fp::is_prime(p) {
            return Err(Error::BadInput(format!("{p} is not prime")));
        }
        if self.index_divides(p) {
            return Err(Error::IndexDivisor(p));
        }
        let fac = self.poly_mod(p).factor();
        let mut degs: Vec<(usize, u32)> = fac.iter().map(|(g, m)| (g.degree() as usize, *m)).collect();
        degs.sort_unstable();
        let pattern = match degs.as_slice() {
            [(1, 1), (1, 1), (1, 1)] => Pattern::Split,
            [(1, 1), (2, 1)] => Pattern::OneTwo,
            [(3, 1)] => Pattern::Inert,
            [(1, 1), (1, 2)] | [(1, 2), (1, 1)] => Pattern::RamifiedSquare,
            [(1, 3)] => Pattern::RamifiedCube,
            other => return Err(Error::Logic(format!("impossible cubic factorization {:?} mod {p}", other))),
        };
        let factors = fac.into_iter().map(|(g, m)| (g.degree() as usize, m, g)).collect();
        Ok(SplitType { p, pattern, factors })
    }

    /// Prime ideals above `p` by Kummer–Dedekind.
    pub fn primes_above(&self, p: u64) -> Result<Vec<PrimeIdealData>> {
        let st = self.split_type(p)?;
        Ok(st
            .factors
            .into_iter()
            .map(|(d, m, g)| PrimeIdealData {
                p,
                f: d as u32,
                e: m,
                norm: (p as u128).pow(d as u32),
                factor: g.c,
                frob_order: None,
            })
            .collect())
    }

    /// Unramified degree-2 primes with norm `p² < x`.
    pub fn degree2_primes(&self, x: u64) -> Vec<PrimeIdealData> {
        let mut out = vec![];
        for p in fp::primes_below((x as f64).sqrt() as u64 + 2) {
            if (p as u128) * (p as u128) >= x as u128 || self.index_divides(p) {
                continue;
            }
            let primes = self.primes_above(p).expect("index primes skipped");
            if primes.len() == 2 && primes.iter().all(|q| q.e == 1) {
                out.extend(primes.into_iter().filter(|q| q.f == 2));
            }
        }
        out
    }

    pub fn one(&self) -> Elem {
        elem([1, 0, 0])
    }

    pub fn theta(&self) -> Elem {
        elem([0, 1, 0])
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut p: [BigInt; 5] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                p[i + j] += &x[i] * &y[j];
            }
        }
        let [a, b, c] = self.coeffs.map(BigInt::from);
        for k in (3..5).rev() {
            let t = std::mem::take(&mut p[k]);
            p[k - 1] -= &a * &t;
            p[k - 2] -= &b * &t;
            p[k - 3] -= &c * &t;
        }
        let [p0, p1, p2, _, _] = p;
        [p0, p1, p2]
    }

    pub fn pow(&self, x: &Elem, mut e: u64) -> Elem {
        let mut r = self.one();
        let mut b = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Matrix of multiplication by `x`; column `j` is `x·θ^j`.
    pub fn mul_matrix(&self, x: &Elem) -> [[BigInt; 3]; 3] {
        let mut cols = vec![];
        let mut t = x.clone();
        for _ in 0..3 {
            cols.push(t.clone());
            t = self.mul(&t, &self.theta());
        }
        std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
    }

    pub fn norm(&self, x: &Elem) -> BigInt {
        det3(&self.mul_matrix(x))
    }

    pub fn trace(&self, x: &Elem) -> BigInt {
        let m = self.mul_matrix(x);
        &m[0][0] + &m[1][1] + &m[2][2]
    }

    /// `x / y` when the quotient lies in `Z[θ]`.
    pub fn div_exact(&self, x: &Elem, y: &Elem) -> Option<Elem> {
        let m = self.mul_matrix(y);
        let d = det3(&m);
        if d.is_zero() {
            return None;
        }
        let adj = adjugate3(&m);
        let mut out: Elem = Default::default();
        for i in 0..3 {
            let s: BigInt = (0..3).map(|j| &adj[i][j] * &x[j]).sum();
            let (q, r) = s.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            out[i] = q;
        }
        Some(out)
    }

    /// The three complex embeddings, in the order of [`CubicField::roots`].
    pub fn embed(&self, x: &Elem) -> [Complex64; 3] {
        self.embed_f64(&x.clone().map(|c| c.to_f64().unwrap_or(f64::NAN)))
    }

    pub fn embed_f64(&self, x: &[f64; 3]) -> [Complex64; 3] {
        self.roots.map(|r| r * r * x[2] + r * x[1] + x[0])
    }

    /// `Σ |σ(x)|²` over all three embeddings.
    pub fn t2(&self, x: &Elem) -> f64 {
        self.embed(x).iter().map(|z| z.norm_sqr()).sum()
    }

    /// Signs at the real embeddings.
    pub fn signs(&self, x: &Elem) -> Vec<bool> {
        self.embed(x).iter().take(self.r1).map(|z| z.re < 0.0).collect()
    }

    /// Minkowski bound `(4/π)^{r2} · 3!/3³ · √|d|` with `d = disc(f)`, an
    /// upper bound for the field discriminant version.
    pub fn minkowski_bound(&self) -> f64 {
        let r2 = (3 - self.r1) / 2;
        (4.0 / std::f64::consts::PI).powi(r2 as i32) * (6.0 / 27.0) * (self.disc.unsigned_abs() as f64).sqrt()
    }

    /// Square root in `Z[θ]`, found numerically and verified exactly.
    pub fn sqrt(&self, x: &Elem) -> Option<Elem> {
        self.sqrt_scaled(x, 1)
    }

    /// Whether `x` is a square in the field. Square roots of integral
    /// elements are integral, and the index times any integral element lies
    /// in `Z[θ]`.
    pub fn is_square(&self, x: &Elem) -> bool {
        self.sqrt(x).is_some() || (!self.is_maximal() && self.sqrt_scaled(x, self.index_bound()).is_some())
    }

    /// Some `t` with `t² = den²·x`.
    fn sqrt_scaled(&self, x: &Elem, den: u64) -> Option<Elem> {
        if x.iter().all(|c| c.is_zero()) {
            return Some(x.clone());
        }
        let n = self.norm(x);
        if n.is_negative() || !is_square_bigint(&n) {
            return None;
        }
        let emb = self.embed(x);
        if emb.iter().take(self.r1).any(|z| z.re < 0.0) {
            return None;
        }
        let roots: Vec<Complex64> = emb.iter().map(|z| z.sqrt() * den as f64).collect();
        // one sign per real place; the complex sign is absorbed by ±t
        for mask in 0..1usize << self.r1 {
            let mut s = roots.clone();
            for (i, z) in s.iter_mut().enumerate().take(self.r1) {
                if mask >> i & 1 == 1 {
                    *z = -*z;
                }
            }
            if self.r1 == 1 {
                s[2] = s[1].conj();
            }
            let coords = self.coords_from_embeddings(&[s[0], s[1], s[2]]);
            if coords.iter().any(|c| !c.is_finite() || c.abs() > 9e15) {
                continue;
            }
            let cand: Elem = coords.map(|c| BigInt::from(c.round() as i64));
            let d2 = BigInt::from(den) * BigInt::from(den);
            if self.mul(&cand, &cand).iter().zip(x.iter()).all(|(a, b)| *a == b * &d2) {
                return Some(cand);
            }
        }
        None
    }

    /// A multiple of the index `[O_K : Z[θ]]`.
    pub fn index_bound(&self) -> u64 {
        let fac = factor_u64(self.disc.unsigned_abs() as u64);
        self.index_primes
            .iter()
            .map(|&p| p.pow(fac.iter().find(|(q, _)| *q == p).map_or(0, |x| x.1) / 2))
            .product::<u64>()
    }

    /// Solve `Σ x_j r_i^j = s_i` for the power-basis coordinates.
    pub fn coords_from_embeddings(&self, s: &[Complex64; 3]) -> [f64; 3] {
        let r = self.roots;
        // Vandermonde inverse by Lagrange interpolation
        let mut x = [Complex64::new(0.0, 0.0); 3];
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let den = (r[i] - r[j]) * (r[i] - r[k]);
            let w = s[i] / den;
            // (t - r_j)(t - r_k) = t² − (r_j + r_k) t + r_j r_k
            x[0] += w * r[j] * r[k];
            x[1] -= w * (r[j] + r[k]);
            x[2] += w;
        }
        x.map(|z| z.re)
    }
}

pub fn cubic_field(coeffs: [i64; 3]) -> Result<CubicField> {
    CubicField::new(coeffs)
}

pub fn is_square_bigint(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

pub fn det3(m: &[[BigInt; 3]; 3]) -> BigInt {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// `adj(m)` with `m · adj(m) = det(m) · I`.
pub fn adjugate3(m: &[[BigInt; 3]; 3]) -> [[BigInt; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            // cofactor of (j, i)
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        })
    })
}

/// Whether the irreducible cubic `g` defines a field isomorphic to `k`:
/// discriminants agree up to a rational square and the splitting patterns
/// agree at the first 60 primes not dividing either discriminant.
/// Isomorphic fields always pass; a pass for non-isomorphic fields needs
/// the same pattern at every one of those primes.
pub fn same_field(k: &CubicField, g: [i64; 3]) -> bool {
    if !cubic_integer_roots(g).is_empty() {
        return false;
    }
    let dg = cubic_disc(g);
    if !is_square_i128(dg * k.disc) {
        return false;
    }
    let gbar = |p: u64| FpPoly::from_ints(p, &[g[2], g[1], g[0], 1]);
    let mut checked = 0;
    for p in fp::primes_below(100_000) {
        if dg % p as i128 == 0 || k.disc % p as i128 == 0 {
            continue;
        }
        let mut a = k.poly_mod(p).factor_degrees();
        let mut b = gbar(p).factor_degrees();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
        checked += 1;
        if checked == 60 {
            break;
        }
    }
    true
}

/// Frobenius order for a prime of `K₃` in `K₃(g)/K₃`, where `g` is a monic
/// cubic `x³ + a x² + b x + c` with roots generating the extension: the lcm of
/// the degrees of `g` over the residue field of size `p^f`.
pub fn frobenius_order_for(g: [i64; 3], q: &PrimeIdealData) -> Result<u8> {
    let p = q.p;
    if p == 2 || q.e > 1 || cubic_disc(g) % p as i128 == 0 {
        return Err(Error::Ramified(p));
    }
    let gbar = FpPoly::from_ints(p, &[g[2], g[1], g[0], 1]);
    let f = q.f as usize;
    let mut order = 1usize;
    for d in gbar.factor_degrees() {
        let piece = d / num_integer::gcd(d, f);
        order = num_integer::lcm(order, piece);
    }
    Ok(order as u8)
}

/// Frobenius order of `q` in `Gal(K₃(E[2])/K₃)`.
pub fn frobenius_order_in_m(q: &PrimeIdealData, e: &crate::ellcurve::EllipticCurve) -> Result<u8> {
    if e.discriminant() % q.p as i128 == 0 {
        return Err(Error::Ramified(q.p));
    }
    frobenius_order_for(e.division_cubic(), q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminants_and_types() {
        let k = cubic_field([0, -1, -1]).unwrap();
        assert_eq!(k.disc, -23);
        assert_eq!(k.galois, GaloisType::S3);
        assert!(k.is_maximal());
        let c = cubic_field([0, -3, -1]).unwrap();
        assert_eq!(c.disc, 81);
        assert_eq!(c.galois, GaloisType::C3);
        assert!(c.is_maximal());
        assert_eq!(cubic_field([0, -1, 0]).unwrap_err(), Error::Reducible);
        assert_eq!(cubic_field([0, 0, 8]).unwrap_err(), Error::Reducible);
        assert_eq!(cubic_disc([1, 1, 1]), -16);
    }

    #[test]
    fn dedekind_flags_index_divisors() {
        // Dedekind's field: 2 divides the index of every monogenic order
        let k = cubic_field([-1, -2, -8]).unwrap();
        assert_eq!(k.disc, -4 * 503);
        assert!(k.index_divides(2));
        assert_eq!(k.split_type(2).unwrap_err(), Error::IndexDivisor(2));
        // x³ − 2 has p-maximal Z[θ] everywhere
        let m = cubic_field([0, 0, -2]).unwrap();
        assert!(m.is_maximal());
    }

    fn brute_pattern(c: [i64; 3], p: u64) -> Vec<usize> {
        // roots with multiplicity by brute force, then deduce the pattern
        let ev = |x: i128| (x * x * x + c[0] as i128 * x * x + c[1] as i128 * x + c[2] as i128).rem_euclid(p as i128);
        let roots: Vec<i128> = (0..p as i128).filter(|&x| ev(x) == 0).collect();
        match roots.len() {
            0 => vec![3],
            1 => {
                // either (1,2) or a repeated root
                let r = roots[0];
                let d = (3 * r * r + 2 * c[0] as i128 * r + c[1] as i128).rem_euclid(p as i128);
                if d == 0 {
                    vec![1, 1, 1]
                } else {
                    vec![1, 2]
                }
            }
            _ => vec![1, 1, 1],
        }
    }

    #[test]
    fn split_types_against_brute_force() {
        let k = cubic_field([0, -1, -1]).unwrap();
        assert_eq!(k.split_type(5).unwrap().pattern, Pattern::OneTwo);
        assert_eq!(k.split_type(5).unwrap().factors[0].2.roots(), vec![2]);
        assert_eq!(k.split_type(3).unwrap().pattern, Pattern::Inert);
        assert_eq!(k.split_type(23).unwrap().pattern, Pattern::RamifiedSquare);
        for p in fp::primes_below(400) {
            let st = k.split_type(p).unwrap();
            let degs: Vec<usize> = {
                let mut v: Vec<usize> = st.factors.iter().flat_map(|(d, m, _)| vec![*d; *m as usize]).collect();
                v.sort_unstable();
                v
            };
            assert_eq!(degs.iter().sum::<usize>(), 3);
            assert_eq!(degs, brute_pattern(k.coeffs, p), "p = {p}");
            assert_eq!(st.pattern.is_ramified(), k.disc % p as i128 == 0);
        }
    }

    #[test]
    fn degree_two_primes() {
        let k = cubic_field([0, -1, -1]).unwrap();
        let q: Vec<u128> = k.degree2_primes(100).iter().map(|q| q.norm).collect();
        assert_eq!(q, vec![25, 49]);
        assert!(k.degree2_primes(4).is_empty());
    }

    #[test]
    fn element_arithmetic() {
        let k = cubic_field([0, -1, -1]).unwrap();
        let t = k.theta();
        assert_eq!(k.norm(&t), BigInt::from(1));
        assert_eq!(k.mul(&k.mul(&t, &t), &t), elem([1, 1, 0]));
        let x = elem([3, -2, 5]);
        let y = elem([-1, 4, 1]);
        let xy = k.mul(&x, &y);
        assert_eq!(k.norm(&xy), k.norm(&x) * k.norm(&y));
        assert_eq!(k.div_exact(&xy, &y), Some(x.clone()));
        let z: Complex64 = k.embed(&x).iter().product();
        assert!((z.re - k.norm(&x).to_f64().unwrap()).abs() < 1e-6);
        assert_eq!(k.trace(&t), BigInt::from(0));
        assert_eq!(k.sqrt(&k.mul(&x, &x)).map(|s| k.mul(&s, &s)), Some(k.mul(&x, &x)));
        assert!(!k.is_square(&t));
        assert!(k.is_square(&elem([4, 0, 0])));
    }

    #[test]
    fn frobenius_orders() {
        let k = cubic_field([0, -1, -1]).unwrap();
        let q5 = k.primes_above(5).unwrap().into_iter().find(|q| q.f == 2).unwrap();
        // y² = x³ + x + 1 has no 2-torsion root mod 5
        assert_eq!(frobenius_order_for([0, 1, 1], &q5).unwrap(), 3);
        assert_eq!(frobenius_order_for([0, -1, 0], &q5).unwrap(), 1);
        let q23 = &k.primes_above(23).unwrap()[0];
        assert!(frobenius_order_for([0, 1, 1], q23).is_err() || q23.e == 1);
    }
}
