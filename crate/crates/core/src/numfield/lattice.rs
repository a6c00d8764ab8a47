//! Short vectors of ideal lattices under `T2(x) = Σ |σ(x)|²`.
//!
//! Bases are first reduced exactly in coefficient space so the floating
//! point stage only sees small entries; the T2 stage is LLL on the Gram
//! matrix followed by Fincke–Pohst enumeration.

use super::{CubicField, Elem};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

fn dot(a: &Elem, b: &Elem) -> BigInt {
    (0..3).map(|i| &a[i] * &b[i]).sum()
}

/// LLL with `δ = 3/4` under the standard inner product, exact arithmetic.
pub fn lll_exact(mut b: [Elem; 3]) -> [Elem; 3] {
    let n = 3;
    let delta = BigRational::new(3.into(), 4.into());
    let gso = |b: &[Elem; 3]| {
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut bstar: Vec<[BigRational; 3]> = vec![];
        let mut norms: Vec<BigRational> = vec![];
        for i in 0..n {
            let mut v: [BigRational; 3] = std::array::from_fn(|k| BigRational::from(b[i][k].clone()));
            for j in 0..i {
                let num: BigRational = (0..3).map(|k| BigRational::from(b[i][k].clone()) * &bstar[j][k]).sum();
                mu[i][j] = num / &norms[j];
                for k in 0..3 {
                    v[k] -= &mu[i][j] * &bstar[j][k];
                }
            }
            norms.push((0..3).map(|k| &v[k] * &v[k]).sum());
            bstar.push(v);
        }
        (mu, norms)
    };
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gso(&b);
            let q = mu[k][j].round().to_integer();
            if !q.is_zero() {
                let bj = b[j].clone();
                for t in 0..3 {
                    b[k][t] -= &q * &bj[t];
                }
            }
        }
        let (mu, norms) = gso(&b);
        if norms[k] >= (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    debug_assert!(b.iter().all(|v| !dot(v, v).is_zero()));
    b
}

/// Gram matrix of T2 on the given basis.
pub fn t2_gram(k: &CubicField, b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let e: Vec<_> = b.iter().map(|v| k.embed_f64(v)).collect();
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|t| (e[i][t] * e[j][t].conj()).re).sum()))
}

/// Floating LLL on a Gram matrix; returns the reduced Gram and the
/// unimodular transform `T` with new basis `c_i = Σ_j T_ij b_j`.
pub fn lll_gram(mut g: [[f64; 3]; 3]) -> ([[f64; 3]; 3], [[i64; 3]; 3]) {
    let n = 3;
    let mut t = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    let gso = |g: &[[f64; 3]; 3]| {
        let mut mu = [[0.0f64; 3]; 3];
        let mut r = [[0.0f64; 3]; 3];
        let mut bn = [0.0f64; 3];
        for i in 0..n {
            for j in 0..i {
                r[i][j] = g[i][j] - (0..j).map(|l| mu[j][l] * r[i][l]).sum::<f64>();
                mu[i][j] = r[i][j] / bn[j];
            }
            bn[i] = g[i][i] - (0..i).map(|l| mu[i][l] * r[i][l]).sum::<f64>();
        }
        (mu, bn)
    };
    // b_k ← b_k − q b_j
    let reduce = |g: &mut [[f64; 3]; 3], t: &mut [[i64; 3]; 3], k: usize, j: usize, q: i64| {
        let qf = q as f64;
        let gkj = g[k][j];
        let gjj = g[j][j];
        for l in 0..n {
            if l != k {
                g[k][l] -= qf * g[j][l];
                g[l][k] = g[k][l];
            }
        }
        g[k][k] += qf * qf * gjj - 2.0 * qf * gkj;
        for l in 0..n {
            t[k][l] -= q * t[j][l];
        }
    };
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 10_000 {
        guard += 1;
        for j in (0..k).rev() {
            let (mu, _) = gso(&g);
            let q = mu[k][j].round();
            if q != 0.0 && q.abs() < 1e15 {
                reduce(&mut g, &mut t, k, j, q as i64);
            }
        }
        let (mu, bn) = gso(&g);
        if bn[k] >= (0.75 - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1] {
            k += 1;
        } else {
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            t.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    (g, t)
}

/// A T2-reduced basis of an ideal lattice, ready for enumeration.
pub struct Reduced {
    pub basis: [Elem; 3],
    gram: [[f64; 3]; 3],
}

impl Reduced {
    pub fn new(k: &CubicField, basis: &[Elem; 3]) -> Reduced {
        let b = lll_exact(basis.clone());
        let bf: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| b[i][j].to_f64().unwrap()));
        let (_, t) = lll_gram(t2_gram(k, &bf));
        let basis: [Elem; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|c| (0..3).map(|j| BigInt::from(t[i][j]) * &b[j][c]).sum())
        });
        // recompute the Gram from the transformed basis to shed rounding drift
        let cf: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| basis[i][j].to_f64().unwrap()));
        Reduced { basis, gram: t2_gram(k, &cf) }
    }

    /// Visit every nonzero `x` with `T2(x) ≤ bound`, one of each `±x` pair.
    /// The visitor returns `false` to stop. Fails when more than `budget`
    /// search nodes are needed.
    pub fn enumerate(&self, bound: f64, budget: u64, mut visit: impl FnMut(&Elem, f64) -> bool) -> Result<u64> {
        let g = &self.gram;
        let n = 3;
        let mut q = [[0.0f64; 3]; 3];
        for i in 0..n {
            q[i][i] = g[i][i] - (0..i).map(|k| q[k][k] * q[k][i] * q[k][i]).sum::<f64>();
            for j in i + 1..n {
                q[i][j] = (g[i][j] - (0..i).map(|k| q[k][k] * q[k][i] * q[k][j]).sum::<f64>()) / q[i][i];
            }
        }
        let slack = bound * (1.0 + 1e-9) + 1e-9;
        let mut nodes = 0u64;
        let mut x = [0i64; 3];
        let mut stop = false;
        // recursive descent from the last coordinate
        #[allow(clippy::too_many_arguments)]
        fn rec(
            i: usize,
            rem: f64,
            x: &mut [i64; 3],
            q: &[[f64; 3]; 3],
            nodes: &mut u64,
            budget: u64,
            stop: &mut bool,
            emit: &mut dyn FnMut(&[i64; 3], f64) -> bool,
            bound: f64,
        ) -> Result<()> {
            let c: f64 = -(i + 1..3).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
            let w = (rem / q[i][i]).max(0.0).sqrt();
            let lo = (c - w).ceil() as i64;
            let hi = (c + w).floor() as i64;
            for v in lo..=hi {
                *nodes += 1;
                if *nodes > budget {
                    return Err(Error::Budget(format!("lattice enumeration exceeded {budget} nodes")));
                }
                x[i] = v;
                // canonical sign: the highest nonzero coordinate is positive
                let top_zero = (i + 1..3).all(|j| x[j] == 0);
                if top_zero && v < 0 {
                    continue;
                }
                let d = v as f64 - c;
                let r = rem - q[i][i] * d * d;
                if r < -1e-9 * bound.max(1.0) {
                    continue;
                }
                if i == 0 {
                    if x.iter().any(|&t| t != 0) && !emit(x, bound - r) {
                        *stop = true;
                        return Ok(());
                    }
                } else {
                    rec(i - 1, r, x, q, nodes, budget, stop, emit, bound)?;
                    if *stop {
                        return Ok(());
                    }
                }
            }
            x[i] = 0;
            Ok(())
        }
        let basis = &self.basis;
        let mut emit = |y: &[i64; 3], t2: f64| {
            let e: Elem = std::array::from_fn(|c| (0..3).map(|j| BigInt::from(y[j]) * &basis[j][c]).sum());
            visit(&e, t2)
        };
        rec(2, slack, &mut x, &q, &mut nodes, budget, &mut stop, &mut emit, slack)?;
        Ok(nodes)
    }
}
