use super::Perm;
use crate::error::{Error, Result};
use rand::Rng;
use rayon::prelude::*;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    pos: Vec<u32>,
    trans: Vec<Perm>,
    trans_inv: Vec<Perm>,
}

impl Level {
    fn new(base: usize, n: usize) -> Level {
        let mut l = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            pos: vec![NONE; n],
            trans: Vec::new(),
            trans_inv: Vec::new(),
        };
        l.rebuild(n);
        l
    }

    fn rebuild(&mut self, n: usize) {
        self.pos.iter_mut().for_each(|p| *p = NONE);
        self.orbit = vec![self.base];
        self.trans = vec![Perm::identity(n)];
        self.pos[self.base] = 0;
        let mut k = 0;
        while k < self.orbit.len() {
            let pt = self.orbit[k];
            for g in &self.gens {
                let q = g.apply(pt);
                if self.pos[q] == NONE {
                    self.pos[q] = self.orbit.len() as u32;
                    self.orbit.push(q);
                    self.trans.push(g.compose(&self.trans[k]));
                }
            }
            k += 1;
        }
        self.trans_inv = self.trans.iter().map(|t| t.inverse()).collect();
    }
}

/// A permutation group with a base and strong generating set built by
/// deterministic Schreier–Sims. Every element factors uniquely as
/// `u_1 ∘ u_2 ∘ … ∘ u_k` with `u_i` drawn from the transversal of level `i`;
/// that factorization gives each element a rank in `0..order`.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// Group generated by `gens`. Errors on an empty list or on mixed degrees.
    pub fn generate(gens: &[Perm]) -> Result<PermGroup> {
        let first = gens.first().ok_or(Error::EmptyGenerators)?;
        let n = first.degree();
        for g in gens {
            if g.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, found: g.degree() });
            }
        }
        Ok(PermGroup::build(n, gens.to_vec()))
    }

    pub fn trivial(n: usize) -> PermGroup {
        PermGroup::build(n, vec![Perm::identity(n)])
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = vec![];
        if n >= 2 {
            gens.push(Perm::from_images0((0..n).map(|i| if i < 2 { 1 - i } else { i }).collect()).unwrap());
        }
        if n >= 3 {
            gens.push(Perm::from_images0((0..n).map(|i| (i + 1) % n).collect()).unwrap());
        }
        if gens.is_empty() {
            return PermGroup::trivial(n);
        }
        PermGroup::build(n, gens)
    }

    pub fn alternating(n: usize) -> PermGroup {
        if n < 3 {
            return PermGroup::trivial(n);
        }
        let gens: Vec<Perm> = (0..n - 2)
            .map(|k| {
                let mut img: Vec<usize> = (0..n).collect();
                img[k] = k + 1;
                img[k + 1] = k + 2;
                img[k + 2] = k;
                Perm::from_images0(img).unwrap()
            })
            .collect();
        PermGroup::build(n, gens)
    }

    /// Cyclic group generated by the `n`-cycle.
    pub fn cyclic(n: usize) -> PermGroup {
        PermGroup::build(n, vec![Perm::from_images0((0..n).map(|i| (i + 1) % n).collect()).unwrap()])
    }

    fn build(n: usize, gens: Vec<Perm>) -> PermGroup {
        let mut grp = PermGroup { degree: n, gens, levels: Vec::new() };
        let moving: Vec<Perm> = grp.gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if moving.is_empty() {
            return grp;
        }
        let b = first_moved(&moving[0]).unwrap();
        let mut top = Level::new(b, n);
        top.gens = moving;
        top.rebuild(n);
        grp.levels.push(top);
        grp.schreier_sims();
        grp
    }

    fn schreier_sims(&mut self) {
        let n = self.degree;
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut found: Option<(Perm, usize)> = None;
            'scan: for idx in 0..self.levels[lvl].orbit.len() {
                for x in 0..self.levels[lvl].gens.len() {
                    let l = &self.levels[lvl];
                    let x = &l.gens[x];
                    let img = x.apply(l.orbit[idx]);
                    let s = l.trans_inv[l.pos[img] as usize].compose(&x.compose(&l.trans[idx]));
                    let (h, j) = self.strip(s, lvl + 1);
                    if !h.is_identity() {
                        found = Some((h, j));
                        break 'scan;
                    }
                }
            }
            match found {
                None => i -= 1,
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let b = first_moved(&h).expect("non-identity residue");
                        self.levels.push(Level::new(b, n));
                    }
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(h.clone());
                        self.levels[l].rebuild(n);
                    }
                    i = j as isize;
                }
            }
        }
    }

    /// Sift `g` from level `from`; returns the residue and the level where it stopped.
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for j in from..self.levels.len() {
            let l = &self.levels[j];
            let b = g.apply(l.base);
            let p = l.pos[b];
            if p == NONE {
                return (g, j);
            }
            g = l.trans_inv[p as usize].compose(&g);
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.strip(g.clone(), 0).0.is_identity()
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Rank of a member in the transversal factorization, `None` for non-members.
    pub fn rank(&self, g: &Perm) -> Option<u64> {
        let mut g = g.clone();
        let mut r: u64 = 0;
        for l in &self.levels {
            let p = l.pos[g.apply(l.base)];
            if p == NONE {
                return None;
            }
            r = r * l.orbit.len() as u64 + p as u64;
            g = l.trans_inv[p as usize].compose(&g);
        }
        if g.is_identity() {
            Some(r)
        } else {
            None
        }
    }

    /// Inverse of [`PermGroup::rank`].
    pub fn unrank(&self, mut r: u64) -> Perm {
        let mut idx = vec![0usize; self.levels.len()];
        for (j, l) in self.levels.iter().enumerate().rev() {
            let m = l.orbit.len() as u64;
            idx[j] = (r % m) as usize;
            r /= m;
        }
        let mut g = self.identity();
        for (j, l) in self.levels.iter().enumerate() {
            g = g.compose(&l.trans[idx[j]]);
        }
        g
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        let mut g = self.identity();
        for l in &self.levels {
            let k = rng.gen_range(0..l.orbit.len());
            g = g.compose(&l.trans[k]);
        }
        g
    }

    /// Number of parts in the coset partition used for streaming: the left cosets
    /// of the first stabilizer in the chain.
    pub fn coset_count(&self) -> usize {
        self.levels.first().map(|l| l.orbit.len()).unwrap_or(1)
    }

    /// Visit every element of coset `c` in rank order.
    pub fn for_each_in_coset<F: FnMut(&Perm)>(&self, c: usize, mut f: F) {
        if self.levels.is_empty() {
            f(&self.identity());
            return;
        }
        let start = self.levels[0].trans[c].clone();
        let mut scratch: Vec<Perm> = (0..=self.levels.len()).map(|_| self.identity()).collect();
        scratch[1] = start;
        self.walk(1, &mut scratch, &mut f);
    }

    fn walk<F: FnMut(&Perm)>(&self, depth: usize, scratch: &mut [Perm], f: &mut F) {
        if depth == self.levels.len() {
            f(&scratch[depth]);
            return;
        }
        let l = &self.levels[depth];
        for t in &l.trans {
            let (head, tail) = scratch.split_at_mut(depth + 1);
            head[depth].compose_into(t, &mut tail[0]);
            self.walk(depth + 1, scratch, f);
        }
    }

    /// Visit every element in rank order.
    pub fn for_each<F: FnMut(&Perm)>(&self, mut f: F) {
        for c in 0..self.coset_count() {
            self.for_each_in_coset(c, &mut f);
        }
    }

    /// Fold every coset in parallel and return the per-coset results in coset order.
    pub fn par_map_cosets<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize, &PermGroup) -> T + Sync + Send,
    {
        (0..self.coset_count()).into_par_iter().map(|c| f(c, self)).collect()
    }

    /// All elements in rank order.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = Vec::with_capacity(self.order().min(1 << 24) as usize);
        self.for_each(|g| out.push(g.clone()));
        out
    }

    /// `self` as a subgroup of `S_n`: every point orbit.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut seen = vec![false; n];
        let mut out = vec![];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orb = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < orb.len() {
                for g in &self.gens {
                    let q = g.apply(orb[k]);
                    if !seen[q] {
                        seen[q] = true;
                        orb.push(q);
                    }
                }
                k += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Subgroup generated by `gens`, reducing the list greedily to those that enlarge it.
    pub fn subgroup_greedy(n: usize, gens: impl IntoIterator<Item = Perm>) -> PermGroup {
        let mut kept: Vec<Perm> = vec![];
        let mut cur = PermGroup::trivial(n);
        for g in gens {
            if !cur.contains(&g) {
                kept.push(g);
                cur = PermGroup::build(n, kept.clone());
            }
        }
        cur
    }
}

fn first_moved(g: &Perm) -> Option<usize> {
    (0..g.degree()).find(|&i| g.apply(i) != i)
}
