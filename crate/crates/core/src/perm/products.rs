use super::{Perm, PermGroup};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap};

/// A homomorphism onto a permutation quotient, given by the images of the
/// source generators. Construction tabulates the map and rejects assignments
/// that do not respect the relations of the source.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub source: PermGroup,
    pub target_degree: usize,
    table: HashMap<Perm, Perm>,
}

impl QuotientMap {
    pub fn new(source: &PermGroup, images: &[Perm]) -> Result<QuotientMap> {
        let gens = source.generators();
        if images.len() != gens.len() {
            return Err(Error::BadInput(format!(
                "{} generator images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let k = images.first().map(|p| p.degree()).unwrap_or(1);
        if let Some(bad) = images.iter().find(|p| p.degree() != k) {
            return Err(Error::DegreeMismatch { expected: k, found: bad.degree() });
        }
        let mut table = HashMap::new();
        let id = source.identity();
        table.insert(id.clone(), Perm::identity(k));
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            let fx = table[&x].clone();
            for (g, q) in gens.iter().zip(images) {
                let y = g.compose(&x);
                let fy = q.compose(&fx);
                match table.get(&y) {
                    Some(prev) if *prev != fy => {
                        return Err(Error::BadInput("generator images do not define a homomorphism".into()))
                    }
                    Some(_) => {}
                    None => {
                        table.insert(y.clone(), fy);
                        queue.push(y);
                    }
                }
            }
        }
        Ok(QuotientMap { source: source.clone(), target_degree: k, table })
    }

    /// The map to the trivial group of degree 1.
    pub fn trivial(source: &PermGroup) -> QuotientMap {
        let imgs = vec![Perm::identity(1); source.generators().len()];
        QuotientMap::new(source, &imgs).expect("trivial map is a homomorphism")
    }

    pub fn apply(&self, g: &Perm) -> Option<&Perm> {
        self.table.get(g)
    }

    pub fn image_order(&self) -> usize {
        let mut v: Vec<&Perm> = self.table.values().collect();
        v.sort();
        v.dedup();
        v.len()
    }

    fn fibers(&self) -> BTreeMap<Perm, Vec<Perm>> {
        let mut out: BTreeMap<Perm, Vec<Perm>> = BTreeMap::new();
        for (g, q) in &self.table {
            out.entry(q.clone()).or_default().push(g.clone());
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }
}

/// The fiber product `G ×_Q H` acting on the disjoint union of the two point
/// sets: pairs `(g, h)` with equal quotient images.
pub fn fiber_product(phi_g: &QuotientMap, phi_h: &QuotientMap) -> Result<PermGroup> {
    if phi_g.target_degree != phi_h.target_degree {
        return Err(Error::DegreeMismatch { expected: phi_g.target_degree, found: phi_h.target_degree });
    }
    let m = phi_g.source.degree();
    let n = phi_h.source.degree();
    let fg = phi_g.fibers();
    let fh = phi_h.fibers();
    let mut expected: u128 = 0;
    let mut pairs = vec![];
    for (q, xs) in &fg {
        if let Some(ys) = fh.get(q) {
            expected += (xs.len() * ys.len()) as u128;
            for x in xs {
                for y in ys {
                    pairs.push(join(x, y, m, n));
                }
            }
        }
    }
    let grp = PermGroup::subgroup_greedy(m + n, pairs);
    if grp.order() != expected {
        return Err(Error::Logic(format!("fiber product order {} != {}", grp.order(), expected)));
    }
    Ok(grp)
}

fn join(x: &Perm, y: &Perm, m: usize, n: usize) -> Perm {
    let mut img: Vec<usize> = x.images0().iter().map(|&v| v as usize).collect();
    img.extend(y.images0().iter().map(|&v| v as usize + m));
    debug_assert_eq!(img.len(), m + n);
    Perm::from_images0(img).unwrap()
}

/// `blocks` consecutive blocks of `block_size` points each.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub block_size: usize,
    pub blocks: usize,
}

impl BlockStructure {
    pub fn block_of(&self, point: usize) -> usize {
        point / self.block_size
    }

    /// Induced permutation of the blocks, `None` if `g` does not preserve them.
    pub fn block_action(&self, g: &Perm) -> Option<Perm> {
        let mut img = Vec::with_capacity(self.blocks);
        for k in 0..self.blocks {
            let base = k * self.block_size;
            let t = self.block_of(g.apply(base));
            for i in 1..self.block_size {
                if self.block_of(g.apply(base + i)) != t {
                    return None;
                }
            }
            img.push(t);
        }
        Perm::from_images0(img).ok()
    }
}

/// `G ≀ top` in its imprimitive action on `top.degree()` blocks of `G.degree()` points.
pub fn wreath_product(g: &PermGroup, top: &PermGroup) -> (PermGroup, BlockStructure) {
    let m = g.degree();
    let b = top.degree();
    let n = m * b;
    let mut gens = vec![];
    for k in 0..b {
        for x in g.generators() {
            if !x.is_identity() {
                gens.push(x.shifted(k * m, n));
            }
        }
    }
    for t in top.generators() {
        if t.is_identity() {
            continue;
        }
        let img: Vec<usize> = (0..n).map(|p| t.apply(p / m) * m + p % m).collect();
        gens.push(Perm::from_images0(img).unwrap());
    }
    if gens.is_empty() {
        gens.push(Perm::identity(n));
    }
    let w = PermGroup::generate(&gens).expect("non-empty, equal degree");
    (w, BlockStructure { block_size: m, blocks: b })
}

/// S4 → S3 via the action on the three pair partitions of {1,2,3,4}.
pub fn s4_onto_s3(s4: &PermGroup) -> QuotientMap {
    let parts = [[0usize, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let imgs: Vec<Perm> = s4
        .generators()
        .iter()
        .map(|g| {
            let img: Vec<usize> = parts
                .iter()
                .map(|p| {
                    let e = key(g.apply(p[0]), g.apply(p[1]));
                    parts
                        .iter()
                        .position(|q| key(q[0], q[1]) == e || key(q[2], q[3]) == e)
                        .unwrap()
                })
                .collect();
            Perm::from_images0(img).unwrap()
        })
        .collect();
    QuotientMap::new(s4, &imgs).unwrap()
}
