//! Permutations on `{1..n}` and permutation groups held as stabilizer chains.
//!
//! Points are 1-indexed at every public boundary (cycle strings, image arrays)
//! and 0-indexed in storage. Composition applies the right factor first:
//! `compose(p, q)(x) = p(q(x))`.

mod chain;
mod products;
mod subgroups;

pub use chain::PermGroup;
pub use products::{fiber_product, s4_onto_s3, wreath_product, BlockStructure, QuotientMap};
pub use subgroups::{conjugacy_classes, enumerate_subgroups, ConjugacyClass, SubgroupClass};

use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Default ceiling on group order for exhaustive class computations.
pub const CLASS_BOUND: u128 = 10_000_000;
/// Default ceiling on group order for the exact subgroup lattice.
pub const LATTICE_BOUND: u128 = 10_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= 256, "degree above 256 is not supported");
        Perm { img: (0..n).map(|i| i as u8).collect() }
    }

    /// Build from 0-indexed images, checking bijectivity.
    pub fn from_images0(img: Vec<usize>) -> Result<Perm> {
        let n = img.len();
        if n > 256 {
            return Err(Error::BadInput("degree above 256".into()));
        }
        let mut seen = vec![false; n];
        for &x in &img {
            if x >= n || seen[x] {
                return Err(Error::BadInput(format!("images {:?} do not form a permutation", img)));
            }
            seen[x] = true;
        }
        Ok(Perm { img: img.into_iter().map(|x| x as u8).collect() })
    }

    /// Build from 1-indexed images, the serialized form.
    pub fn from_images(img: &[usize]) -> Result<Perm> {
        if img.iter().any(|&x| x == 0) {
            return Err(Error::BadInput("image arrays are 1-indexed".into()));
        }
        Perm::from_images0(img.iter().map(|&x| x - 1).collect())
    }

    /// Parse a cycle string such as `"(1 2 3)(4 5)"` or `"(1,2)"` on `n` points.
    pub fn from_cycles(n: usize, s: &str) -> Result<Perm> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let mut rest = s.trim();
        if rest == "()" || rest.is_empty() {
            return Perm::from_images0(img);
        }
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::BadInput(format!("cycle string {:?}", s)))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::BadInput(format!("unclosed cycle in {:?}", s)))?;
            let pts: Vec<usize> = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::BadInput(format!("point {:?}", t))))
                .collect::<Result<_>>()?;
            for &p in &pts {
                if p == 0 || p > n || seen[p - 1] {
                    return Err(Error::BadInput(format!("bad or repeated point {} in {:?}", p, s)));
                }
                seen[p - 1] = true;
            }
            for w in 0..pts.len() {
                img[pts[w] - 1] = pts[(w + 1) % pts.len()] - 1;
            }
            rest = open[close + 1..].trim_start();
        }
        Perm::from_images0(img)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// Image of the 0-indexed point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images0(&self) -> &[u8] {
        &self.img
    }

    /// 1-indexed image array.
    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ q`: apply `q`, then `self`.
    #[inline]
    pub fn compose(&self, q: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), q.degree());
        Perm { img: q.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    /// Write `self ∘ q` into `out`, reusing its allocation.
    #[inline]
    pub fn compose_into(&self, q: &Perm, out: &mut Perm) {
        out.img.clear();
        out.img.extend(q.img.iter().map(|&x| self.img[x as usize]));
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { img: inv }
    }

    /// `c ∘ self ∘ c⁻¹`.
    pub fn conjugate_by(&self, c: &Perm) -> Perm {
        let mut img = vec![0u8; self.img.len()];
        for i in 0..self.img.len() {
            img[c.img[i] as usize] = c.img[self.img[i] as usize];
        }
        Perm { img }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Cycles of length at least two, each starting at its least point, 0-indexed.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Sorted cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(|c| c.len()).sum();
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.extend(std::iter::repeat(1).take(self.degree() - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// 1-indexed cycle notation, `"()"` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cyc = self.cycles();
        if cyc.is_empty() {
            return "()".to_string();
        }
        cyc.iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect()
    }

    /// Place `self` on points `offset..offset+degree` of a degree-`n` permutation.
    pub fn shifted(&self, offset: usize, n: usize) -> Perm {
        let mut img: Vec<u8> = (0..n).map(|i| i as u8).collect();
        for (i, &x) in self.img.iter().enumerate() {
            img[offset + i] = (offset + x as usize) as u8;
        }
        Perm { img }
    }

    /// Restrict to points `offset..offset+len`, which must be an invariant set.
    pub fn restrict(&self, offset: usize, len: usize) -> Option<Perm> {
        let mut img = Vec::with_capacity(len);
        for i in offset..offset + len {
            let x = self.apply(i);
            if x < offset || x >= offset + len {
                return None;
            }
            img.push((x - offset) as u8);
        }
        Some(Perm { img })
    }
}

/// `p ∘ q`.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    p.compose(q)
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Perm, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm::from_images(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_right_factor_first() {
        let p = Perm::from_cycles(3, "(1 2 3)").unwrap();
        let q = Perm::from_cycles(3, "(1 2)").unwrap();
        assert_eq!(compose(&p, &q).to_cycle_string(), "(1 3)");
    }

    #[test]
    fn cycle_string_round_trip() {
        let p = Perm::from_cycles(6, "(1,4)(2 6 3)").unwrap();
        assert_eq!(p.to_cycle_string(), "(1 4)(2 6 3)");
        assert_eq!(Perm::from_cycles(6, &p.to_cycle_string()).unwrap(), p);
        assert_eq!(p.images(), vec![4, 6, 2, 1, 5, 3]);
        assert_eq!(Perm::from_images(&p.images()).unwrap(), p);
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Perm::from_cycles(3, "(1 2 2)").is_err());
        assert!(Perm::from_cycles(3, "(1 4)").is_err());
        assert!(Perm::from_images(&[1, 1, 2]).is_err());
    }

    #[test]
    fn conjugation_matches_definition() {
        let p = Perm::from_cycles(5, "(1 2 3)").unwrap();
        let c = Perm::from_cycles(5, "(1 5)(2 4)").unwrap();
        assert_eq!(p.conjugate_by(&c), c.compose(&p).compose(&c.inverse()));
    }
}
