use super::{Perm, PermGroup, CLASS_BOUND};
use crate::error::{Error, Result};
use std::collections::HashSet;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Perm,
    pub size: u64,
}

/// Conjugacy classes by exhaustive orbit computation, in order of the least
/// rank in each class. `bound` caps the group order (default [`CLASS_BOUND`]).
pub fn conjugacy_classes(g: &PermGroup, bound: Option<u128>) -> Result<Vec<ConjugacyClass>> {
    let bound = bound.unwrap_or(CLASS_BOUND);
    let order = g.order();
    if order > bound {
        return Err(Error::TooLarge { order, bound });
    }
    let n = order as usize;
    let gens: Vec<(Perm, Perm)> = g
        .generators()
        .iter()
        .filter(|s| !s.is_identity())
        .map(|s| (s.clone(), s.inverse()))
        .collect();
    let mut seen = vec![false; n];
    let mut out = vec![];
    for r in 0..n {
        if seen[r] {
            continue;
        }
        let rep = g.unrank(r as u64);
        seen[r] = true;
        let mut size = 1u64;
        let mut stack = vec![rep.clone()];
        while let Some(x) = stack.pop() {
            for (s, _) in &gens {
                let y = x.conjugate_by(s);
                let k = g.rank(&y).expect("conjugate stays in the group") as usize;
                if !seen[k] {
                    seen[k] = true;
                    size += 1;
                    stack.push(y);
                }
            }
        }
        out.push(ConjugacyClass { representative: rep, size });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: PermGroup,
    pub order: u128,
    /// Number of subgroups in the conjugacy class.
    pub class_size: usize,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Indexed<'a> {
    g: &'a PermGroup,
    elems: Vec<Perm>,
}

impl Indexed<'_> {
    fn idx(&self, x: &Perm) -> usize {
        self.g.rank(x).expect("member") as usize
    }

    /// Element set of the subgroup generated by the given element indices.
    fn closure(&self, gens: &[usize]) -> Bits {
        let n = self.elems.len();
        let mut bits = Bits::new(n);
        let id = self.idx(&self.g.identity());
        bits.set(id);
        let mut list = vec![id];
        let mut k = 0;
        while k < list.len() {
            let x = &self.elems[list[k]];
            for &s in gens {
                let y = self.idx(&self.elems[s].compose(x));
                if !bits.get(y) {
                    bits.set(y);
                    list.push(y);
                }
            }
            k += 1;
        }
        bits
    }

    fn members(&self, b: &Bits) -> Vec<usize> {
        (0..self.elems.len()).filter(|&i| b.get(i)).collect()
    }

    fn conjugate(&self, members: &[usize], c: usize) -> Bits {
        let mut out = Bits::new(self.elems.len());
        let c = &self.elems[c];
        for &m in members {
            out.set(self.idx(&self.elems[m].conjugate_by(c)));
        }
        out
    }
}

/// Subgroups up to conjugacy, exact for groups of order at most `bound`
/// (default [`super::LATTICE_BOUND`]). Classes are found by extending class
/// representatives by one element at a time, which reaches every subgroup
/// through a chain of one-generator extensions. Subgroups above `order_cap`
/// are skipped. Output is ordered by subgroup order, then discovery.
pub fn enumerate_subgroups(
    g: &PermGroup,
    order_cap: Option<u128>,
    bound: Option<u128>,
) -> Result<Vec<SubgroupClass>> {
    let bound = bound.unwrap_or(super::LATTICE_BOUND);
    let order = g.order();
    if order > bound {
        return Err(Error::TooLarge { order, bound });
    }
    let cap = order_cap.unwrap_or(order) as usize;
    let ix = Indexed { g, elems: g.elements() };
    let n = ix.elems.len();
    let mut seen: HashSet<Bits> = HashSet::new();
    // (element set, generator indices, class size)
    let mut reps: Vec<(Bits, Vec<usize>, usize)> = vec![];

    let register = |bits: Bits, gens: Vec<usize>, seen: &mut HashSet<Bits>, reps: &mut Vec<_>| {
        let members = ix.members(&bits);
        let mut class = HashSet::new();
        for c in 0..n {
            class.insert(ix.conjugate(&members, c));
        }
        let size = class.len();
        seen.extend(class);
        reps.push((bits, gens, size));
    };

    let trivial = ix.closure(&[]);
    register(trivial, vec![], &mut seen, &mut reps);
    let mut k = 0;
    while k < reps.len() {
        let (bits, gens) = (reps[k].0.clone(), reps[k].1.clone());
        let members = ix.members(&bits);
        let mut covered = Bits::new(n);
        for x in 0..n {
            if bits.get(x) || covered.get(x) {
                continue;
            }
            // ⟨K, x⟩ = ⟨K, h x⟩ for h in K, so one element per coset suffices
            for &h in &members {
                covered.set(ix.idx(&ix.elems[h].compose(&ix.elems[x])));
            }
            let mut ext = gens.clone();
            ext.push(x);
            let l = ix.closure(&ext);
            if l.count() > cap || seen.contains(&l) {
                continue;
            }
            register(l, ext, &mut seen, &mut reps);
        }
        k += 1;
    }
    let mut out: Vec<SubgroupClass> = reps
        .into_iter()
        .map(|(bits, gens, size)| {
            let gp: Vec<Perm> = gens.iter().map(|&i| ix.elems[i].clone()).collect();
            let representative =
                if gp.is_empty() { PermGroup::trivial(g.degree()) } else { PermGroup::generate(&gp).unwrap() };
            SubgroupClass { representative, order: bits.count() as u128, class_size: size }
        })
        .collect();
    out.sort_by_key(|c| c.order);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(g: &PermGroup) -> Vec<u64> {
        let mut v: Vec<u64> = conjugacy_classes(g, None).unwrap().iter().map(|c| c.size).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn class_sizes_of_small_groups() {
        assert_eq!(sizes(&PermGroup::symmetric(4)), vec![1, 3, 6, 6, 8]);
        assert_eq!(sizes(&PermGroup::alternating(4)), vec![1, 3, 4, 4]);
        assert_eq!(sizes(&PermGroup::trivial(4)), vec![1]);
        assert_eq!(sizes(&PermGroup::symmetric(5)), vec![1, 10, 15, 20, 20, 24, 30]);
    }

    #[test]
    fn subgroup_counts() {
        let s4 = enumerate_subgroups(&PermGroup::symmetric(4), None, None).unwrap();
        assert_eq!(s4.len(), 11);
        assert_eq!(s4.iter().map(|c| c.class_size).sum::<usize>(), 30);
        let a4 = enumerate_subgroups(&PermGroup::alternating(4), None, None).unwrap();
        assert_eq!(a4.len(), 5);
        assert_eq!(a4.iter().map(|c| c.class_size).sum::<usize>(), 10);
        let t = enumerate_subgroups(&PermGroup::trivial(3), None, None).unwrap();
        assert_eq!(t.len(), 1);
        let s5 = enumerate_subgroups(&PermGroup::symmetric(5), None, None).unwrap();
        assert_eq!(s5.len(), 19);
        assert_eq!(s5.iter().map(|c| c.class_size).sum::<usize>(), 156);
    }

    #[test]
    fn order_cap_and_bound() {
        let s4 = enumerate_subgroups(&PermGroup::symmetric(4), Some(4), None).unwrap();
        assert!(s4.iter().all(|c| c.order <= 4));
        assert_eq!(s4.len(), 7);
        let e = enumerate_subgroups(&PermGroup::symmetric(8), None, None).unwrap_err();
        assert!(matches!(e, Error::TooLarge { .. }));
        assert!(matches!(conjugacy_classes(&PermGroup::symmetric(5), Some(100)), Err(Error::TooLarge { .. })));
    }
}
