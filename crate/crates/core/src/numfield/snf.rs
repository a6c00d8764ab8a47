//! Smith normal form over Z with the column transform tracked.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Smith form of the row lattice of `a` (rows are relations in `Z^n`).
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal entries `d_0 | d_1 | …`, zero where the rank is deficient.
    pub diag: Vec<BigInt>,
    /// `x ↦ x·V` sends `Z^n / rows(a)` onto `⊕ Z/d_i`.
    pub v: Mat,
    /// Inverse of `v`; row `i` is the exponent vector of the `i`-th cyclic generator.
    pub v_inv: Mat,
}

pub fn smith(mut a: Mat, n: usize) -> Smith {
    let m = a.len();
    let mut v = identity(n);
    let mut vi = identity(n);
    let mut diag = vec![BigInt::zero(); n];
    let col_swap = |a: &mut Mat, v: &mut Mat, vi: &mut Mat, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vi.swap(i, j);
    };
    // new col_i = a·col_i + b·col_j, new col_j = −(q/g)·col_i + (p/g)·col_j
    let col_combine = |a: &mut Mat, v: &mut Mat, vi: &mut Mat, i: usize, j: usize, r: usize| {
        let (p, q) = (a[r][i].clone(), a[r][j].clone());
        if q.is_multiple_of(&p) {
            let f = &q / &p;
            for mat in [&mut *a, &mut *v] {
                for row in mat.iter_mut() {
                    let ci = row[i].clone();
                    row[j] -= &f * ci;
                }
            }
            let rj = vi[j].clone();
            for (x, y) in vi[i].iter_mut().zip(&rj) {
                *x += &f * y;
            }
            return;
        }
        let e = p.extended_gcd(&q);
        let (pg, qg) = (&p / &e.gcd, &q / &e.gcd);
        for mat in [&mut *a, &mut *v] {
            for row in mat.iter_mut() {
                let (ci, cj) = (row[i].clone(), row[j].clone());
                row[i] = &e.x * &ci + &e.y * &cj;
                row[j] = &pg * &cj - &qg * &ci;
            }
        }
        let (ri, rj) = (vi[i].clone(), vi[j].clone());
        vi[i] = ri.iter().zip(&rj).map(|(x, y)| &pg * x + &qg * y).collect();
        vi[j] = ri.iter().zip(&rj).map(|(x, y)| &e.x * y - &e.y * x).collect();
    };
    let row_combine = |a: &mut Mat, i: usize, j: usize, c: usize| {
        let (p, q) = (a[i][c].clone(), a[j][c].clone());
        if q.is_multiple_of(&p) {
            let f = &q / &p;
            let ri = a[i].clone();
            for (y, x) in a[j].iter_mut().zip(&ri) {
                *y -= &f * x;
            }
            return;
        }
        let e = p.extended_gcd(&q);
        let (pg, qg) = (&p / &e.gcd, &q / &e.gcd);
        let (ri, rj) = (a[i].clone(), a[j].clone());
        a[i] = ri.iter().zip(&rj).map(|(x, y)| &e.x * x + &e.y * y).collect();
        a[j] = ri.iter().zip(&rj).map(|(x, y)| &pg * y - &qg * x).collect();
    };
    for t in 0..n.min(m) {
        // smallest nonzero entry as pivot
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in a.iter().enumerate().skip(t) {
            for (c, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(br, bc)| x.abs() < a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((r, c)) = best else { break };
        a.swap(t, r);
        if c != t {
            col_swap(&mut a, &mut v, &mut vi, t, c);
        }
        loop {
            for r in t + 1..m {
                if !a[r][t].is_zero() {
                    row_combine(&mut a, t, r, t);
                }
            }
            for c in t + 1..n {
                if !a[t][c].is_zero() {
                    col_combine(&mut a, &mut v, &mut vi, t, c, t);
                }
            }
            if (t + 1..m).any(|r| !a[r][t].is_zero()) {
                continue;
            }
            // divisibility: fold any offending row into row t
            let piv = a[t][t].clone();
            let bad = (t + 1..m).find(|&r| (t + 1..n).any(|c| !a[r][c].is_multiple_of(&piv)));
            match bad {
                Some(r) => {
                    let rr = a[r].clone();
                    for (x, y) in a[t].iter_mut().zip(rr) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            a[t] = a[t].iter().map(|x| -x).collect();
        }
        diag[t] = a[t][t].clone();
    }
    Smith { diag, v, v_inv: vi }
}

/// A sublattice of `Z^n` in echelon form, reduced modulo its index once it
/// has full rank.
#[derive(Clone, Debug)]
pub struct RelationLattice {
    n: usize,
    rows: Vec<Option<Vec<BigInt>>>,
}

impl RelationLattice {
    pub fn new(n: usize) -> Self {
        RelationLattice { n, rows: vec![None; n] }
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    /// Index in `Z^n` when of full rank.
    pub fn index(&self) -> Option<BigInt> {
        self.rows.iter().map(|r| r.as_ref().map(|r| r.iter().find(|x| !x.is_zero()).unwrap().abs())).product()
    }

    /// Add a vector; returns whether the lattice grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut v: Vec<BigInt> = v.to_vec();
        if let Some(d) = self.index() {
            for x in v.iter_mut() {
                *x = x.mod_floor(&d);
            }
        }
        let before = self.index();
        for col in 0..self.n {
            if v[col].is_zero() {
                continue;
            }
            match self.rows[col].take() {
                None => {
                    if v[col].is_negative() {
                        v = v.iter().map(|x| -x).collect();
                    }
                    self.rows[col] = Some(v);
                    self.reduce();
                    return true;
                }
                Some(b) => {
                    let e = b[col].extended_gcd(&v[col]);
                    let (bg, vg) = (&b[col] / &e.gcd, &v[col] / &e.gcd);
                    let mut nb: Vec<BigInt> = b.iter().zip(&v).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    if nb[col].is_negative() {
                        nb = nb.iter().map(|x| -x).collect();
                    }
                    v = v.iter().zip(&b).map(|(y, x)| &bg * y - &vg * x).collect();
                    self.rows[col] = Some(nb);
                }
            }
        }
        self.reduce();
        self.index() != before
    }

    fn reduce(&mut self) {
        let Some(d) = self.index() else { return };
        for r in self.rows.iter_mut().flatten() {
            for x in r.iter_mut() {
                *x = x.mod_floor(&d);
            }
        }
        // the pivots may have become ≡ 0 only if d divides them, which cannot
        // happen for a pivot strictly dividing the index; restore d itself otherwise
        for (c, r) in self.rows.iter_mut().enumerate() {
            if let Some(r) = r {
                if r[c].is_zero() {
                    r[c] = d.clone();
                }
            }
        }
    }

    pub fn matrix(&self) -> Mat {
        self.rows.iter().flatten().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn matmul(a: &Mat, b: &Mat) -> Mat {
        a.iter()
            .map(|row| (0..b[0].len()).map(|j| row.iter().zip(b).map(|(x, br)| x * &br[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn invariants_and_transforms() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(a.clone(), 3);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert_eq!(matmul(&s.v, &s.v_inv), identity(3));
        // every relation maps into ⊕ d_i Z
        for row in matmul(&a, &s.v) {
            for (x, d) in row.iter().zip(&s.diag) {
                assert!(x.is_multiple_of(d));
            }
        }
        let s = smith(m(&[&[4, 0], &[0, 6]]), 2);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(12)]);
        let mut lat = RelationLattice::new(3);
        for row in &a {
            lat.insert(row);
        }
        assert_eq!(lat.index(), Some(BigInt::from(144)));
        assert_eq!(smith(lat.matrix(), 3).diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let s = smith(m(&[&[3, 0, 0]]), 3);
        assert_eq!(s.diag[0], BigInt::from(3));
        assert!(s.diag[1].is_zero());
    }
}
