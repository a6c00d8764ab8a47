//! Polynomials over a prime field, coefficients low degree first.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    powmod(a, p - 2, p)
}

/// Deterministic Miller–Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `n` by the sieve of Eratosthenes.
pub fn primes_below(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 3 {
        return vec![];
    }
    let mut comp = vec![false; n];
    let mut out = vec![];
    for i in 2..n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = num_integer::gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

/// Prime factorization `[(p, e)]`, ascending.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    fn go(n: u64, out: &mut Vec<u64>) {
        if n == 1 {
            return;
        }
        if is_prime(n) {
            out.push(n);
            return;
        }
        let d = pollard_rho(n);
        go(d, out);
        go(n / d, out);
    }
    let mut ps = vec![];
    let mut m = n;
    for q in 2..1000u64 {
        while m % q == 0 {
            ps.push(q);
            m /= q;
        }
    }
    go(m, &mut ps);
    ps.sort_unstable();
    let mut out: Vec<(u64, u32)> = vec![];
    for q in ps {
        match out.last_mut() {
            Some((r, e)) if *r == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// `x mod p` for a signed integer.
pub fn reduce(x: i128, p: u64) -> u64 {
    x.rem_euclid(p as i128) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    /// Coefficients, low degree first, no trailing zeros.
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> FpPoly {
        for x in c.iter_mut() {
            *x %= p;
        }
        let mut f = FpPoly { p, c };
        f.trim();
        f
    }

    pub fn from_ints(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::new(p, c.iter().map(|&x| reduce(x as i128, p)).collect())
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> FpPoly {
        FpPoly::new(p, vec![1])
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> FpPoly {
        FpPoly::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| (mulmod(acc, x, self.p) + a) % self.p)
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.lead(), self.p);
        FpPoly::new(self.p, self.c.iter().map(|&a| mulmod(a, inv, self.p)).collect())
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + self.p - o.c.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = invmod(d.lead(), p);
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = mulmod(r[k + dd], inv, p);
            q[k] = coef;
            if coef != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mulmod(coef, b, p)) % p;
                }
            }
        }
        r.truncate(dd);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let c = self.c.iter().enumerate().skip(1).map(|(i, &a)| mulmod(a, i as u64 % self.p, self.p)).collect();
        FpPoly::new(self.p, c)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &FpPoly) -> FpPoly {
        let mut r = FpPoly::one(self.p).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        r
    }

    /// Roots in F_p with multiplicity ignored, ascending.
    pub fn roots(&self) -> Vec<u64> {
        if self.degree() <= 0 {
            return vec![];
        }
        let p = self.p;
        if p < 1 << 12 {
            // cheap enough to evaluate everywhere
            return (0..p).filter(|&x| self.eval(x) == 0).collect();
        }
        let xp = FpPoly::x(p).powmod(p as u128, self);
        let split = self.gcd(&xp.sub(&FpPoly::x(p)));
        let mut out: Vec<u64> = equal_degree(&split, 1, 0x5eed).into_iter().map(|g| (p - g.c[0]) % p).collect();
        out.sort_unstable();
        out
    }

    /// Number of distinct roots in F_p.
    pub fn root_count(&self) -> usize {
        if self.degree() <= 0 {
            return 0;
        }
        let xp = FpPoly::x(self.p).powmod(self.p as u128, self);
        self.gcd(&xp.sub(&FpPoly::x(self.p))).degree() as usize
    }

    fn pth_root(&self) -> FpPoly {
        // only called when every exponent is a multiple of p; a^p = a in F_p
        let p = self.p as usize;
        FpPoly::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    /// Monic irreducible factors with multiplicity, sorted by (degree, coefficients).
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        assert!(!self.is_zero(), "factor of the zero polynomial");
        let mut out = vec![];
        for (g, m) in squarefree(&self.monic()) {
            for (d, part) in distinct_degree(&g) {
                for h in equal_degree(&part, d, 0x5eed + d as u64) {
                    out.push((h, m));
                }
            }
        }
        out.sort_by(|a, b| (a.0.degree(), &a.0.c).cmp(&(b.0.degree(), &b.0.c)));
        out
    }

    /// Sorted degrees of the irreducible factors, one entry per multiplicity.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> =
            self.factor().iter().flat_map(|(g, m)| std::iter::repeat(g.degree() as usize).take(*m as usize)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_irreducible(&self) -> bool {
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }
}

/// Squarefree parts `(g, m)` with `f = Π g^m`.
fn squarefree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    if f.degree() <= 0 {
        return vec![];
    }
    let d = f.derivative();
    if d.is_zero() {
        return squarefree(&f.pth_root()).into_iter().map(|(g, m)| (g, m * p as u32)).collect();
    }
    let mut out = vec![];
    let mut c = f.gcd(&d);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if z.degree() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if c.degree() > 0 {
        for (g, m) in squarefree(&c.pth_root()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Products of all irreducible factors of each degree, for squarefree `f`.
fn distinct_degree(f: &FpPoly) -> Vec<(usize, FpPoly)> {
    let p = f.p;
    let mut out = vec![];
    let mut rest = f.monic();
    let mut h = FpPoly::x(p);
    let mut d = 0;
    while rest.degree() >= 2 * (d as isize + 1) {
        d += 1;
        h = h.powmod(p as u128, &rest);
        let g = rest.gcd(&h.sub(&FpPoly::x(p)));
        if g.degree() > 0 {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    if rest.degree() > 0 {
        out.push((rest.degree() as usize, rest));
    }
    out
}

/// Split a product of distinct irreducibles of degree `d`.
fn equal_degree(f: &FpPoly, d: usize, seed: u64) -> Vec<FpPoly> {
    let p = f.p;
    let n = f.degree() as usize;
    if n == 0 {
        return vec![];
    }
    if n == d {
        return vec![f.monic()];
    }
    if p == 2 || (p as u128).pow(d as u32) < 64 {
        return trial_split(f, d);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = ((p as u128).pow(d as u32) - 1) / 2;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() < 1 {
            continue;
        }
        let b = a.powmod(e, f).sub(&FpPoly::one(p));
        let g = f.gcd(&b);
        if g.degree() > 0 && (g.degree() as usize) < n {
            let mut v = equal_degree(&g, d, rng.gen());
            v.extend(equal_degree(&f.divrem(&g).0, d, rng.gen()));
            return v;
        }
    }
}

/// Trial division by every monic polynomial of degree `d`; for tiny fields.
fn trial_split(f: &FpPoly, d: usize) -> Vec<FpPoly> {
    let p = f.p;
    let mut out = vec![];
    let mut rest = f.monic();
    let total = (p as u128).pow(d as u32);
    for k in 0..total {
        if rest.degree() as usize == d {
            out.push(rest.clone());
            return out;
        }
        let mut c = vec![0u64; d + 1];
        let mut t = k;
        for coef in c.iter_mut().take(d) {
            *coef = (t % p as u128) as u64;
            t /= p as u128;
        }
        c[d] = 1;
        let g = FpPoly::new(p, c);
        let (q, r) = rest.divrem(&g);
        if r.is_zero() {
            out.push(g);
            rest = q;
        }
    }
    if rest.degree() > 0 {
        out.push(rest);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Factor by repeated trial division over all monic polynomials, smallest degree first.
    fn naive_factor(f: &FpPoly) -> Vec<usize> {
        let p = f.p;
        let mut rest = f.monic();
        let mut degs = vec![];
        let mut d = 1;
        while rest.degree() > 0 {
            if (rest.degree() as usize) < 2 * d {
                degs.push(rest.degree() as usize);
                break;
            }
            let mut found = false;
            for k in 0..(p as u128).pow(d as u32) {
                let mut c = vec![0u64; d + 1];
                let mut t = k;
                for coef in c.iter_mut().take(d) {
                    *coef = (t % p as u128) as u64;
                    t /= p as u128;
                }
                c[d] = 1;
                let g = FpPoly::new(p, c);
                let (q, r) = rest.divrem(&g);
                if r.is_zero() {
                    degs.push(d);
                    rest = q;
                    found = true;
                    break;
                }
            }
            if !found {
                d += 1;
            }
        }
        degs.sort_unstable();
        degs
    }

    #[test]
    fn factor_matches_trial_division() {
        let polys: [&[i64]; 6] =
            [&[-1, -1, 0, 1], &[1, 1, 0, 1], &[-1, -1, 0, 0, 1], &[12, 8, 0, 0, 1], &[0, -1, 0, 1], &[1, 0, 2, 0, 1]];
        for p in [2u64, 3, 5, 7, 11, 13, 23, 31, 101, 283] {
            for c in polys {
                let f = FpPoly::from_ints(p, c);
                let got = f.factor();
                let prod = got.iter().fold(FpPoly::one(p), |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(g)));
                assert_eq!(prod, f.monic(), "p={p} f={c:?}");
                assert!(got.iter().all(|(g, _)| naive_factor(g).len() == 1));
                assert_eq!(f.factor_degrees(), naive_factor(&f), "p={p} f={c:?}");
            }
        }
    }

    #[test]
    fn roots_and_patterns() {
        let f = FpPoly::from_ints(5, &[-1, -1, 0, 1]);
        assert_eq!(f.roots(), vec![2]);
        assert_eq!(f.factor_degrees(), vec![1, 2]);
        assert_eq!(FpPoly::from_ints(3, &[-1, -1, 0, 1]).factor_degrees(), vec![3]);
        let g = FpPoly::from_ints(23, &[-1, -1, 0, 1]);
        assert_eq!(g.factor().iter().map(|(_, m)| *m).max(), Some(2));
        let big = 1_000_003u64;
        let h = FpPoly::from_ints(big, &[-6, 11, -6, 1]);
        assert_eq!(h.roots(), vec![1, 2, 3]);
        assert_eq!(h.root_count(), 3);
    }

    #[test]
    fn primality_and_sieve() {
        let ps = primes_below(100);
        assert_eq!(ps.len(), 25);
        assert!((0..100).all(|n| is_prime(n) == ps.contains(&n)));
        assert!(is_prime(1_000_000_007) && !is_prime(1_000_000_007 * 3));
        assert_eq!(factor_u64(1_000_000_007 * 998_244_353), vec![(998_244_353, 1), (1_000_000_007, 1)]);
        assert_eq!(factor_u64(2 * 2 * 23 * 23 * 23), vec![(2, 2), (23, 3)]);
        assert_eq!(factor_u64(1), vec![]);
    }

    #[test]
    fn pth_power_inputs() {
        // (x + 1)^6 over F_3 has zero derivative after the first squarefree step
        let f = FpPoly::from_ints(3, &[1, 1]);
        let g = (0..6).fold(FpPoly::one(3), |a, _| a.mul(&f));
        assert_eq!(g.factor(), vec![(f, 6)]);
    }
}
