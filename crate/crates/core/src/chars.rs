//! Exact character theory for small permutation groups, aimed at S4 and A4.
//!
//! Values live in Q(ω) with ω a primitive cube root of unity, which covers
//! every character of S4 and A4. Irreducibles are found by reducing a pool
//! of induced and product characters against those already found.

use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, enumerate_subgroups, Perm, PermGroup};
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::collections::VecDeque;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// An element `a + bω` of Q(ω), where `ω² = −1 − ω`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cyc {
    pub a: Rational64,
    pub b: Rational64,
}

impl Cyc {
    pub fn new(a: Rational64, b: Rational64) -> Cyc {
        Cyc { a, b }
    }

    pub fn int(n: i64) -> Cyc {
        Cyc { a: Rational64::from_integer(n), b: Rational64::zero() }
    }

    pub fn rational(r: Rational64) -> Cyc {
        Cyc { a: r, b: Rational64::zero() }
    }

    pub fn omega() -> Cyc {
        Cyc { a: Rational64::zero(), b: Rational64::one() }
    }

    /// `ζ^k` for a root of unity of order `n ∈ {1, 2, 3, 6}`.
    pub fn root_of_unity(n: u64, k: u64) -> Cyc {
        // −ω² = 1 + ω has order 6
        let base = match n {
            1 => Cyc::int(1),
            2 => Cyc::int(-1),
            3 => Cyc::omega(),
            6 => Cyc::int(1) + Cyc::omega(),
            _ => panic!("Q(ω) holds no primitive {n}-th root of unity"),
        };
        (0..k % n).fold(Cyc::int(1), |acc, _| acc * base)
    }

    pub fn conj(self) -> Cyc {
        Cyc { a: self.a - self.b, b: -self.b }
    }

    pub fn scale(self, r: Rational64) -> Cyc {
        Cyc { a: self.a * r, b: self.b * r }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_rational(self) -> Option<Rational64> {
        self.b.is_zero().then_some(self.a)
    }

    /// Whether both coordinates are integers, i.e. the value lies in Z[ω].
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }
}

impl Add for Cyc {
    type Output = Cyc;
    fn add(self, o: Cyc) -> Cyc {
        Cyc { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for Cyc {
    type Output = Cyc;
    fn sub(self, o: Cyc) -> Cyc {
        Cyc { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { a: -self.a, b: -self.b }
    }
}

impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, o: Cyc) -> Cyc {
        let bd = self.b * o.b;
        Cyc { a: self.a * o.a - bd, b: self.a * o.b + self.b * o.a - bd }
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.b {
            b if b.is_zero() => return write!(f, "{}", self.a),
            b if b == Rational64::one() => "ω".to_string(),
            b if b == -Rational64::one() => "-ω".to_string(),
            b => format!("{b}ω"),
        };
        if self.a.is_zero() {
            write!(f, "{b}")
        } else if self.b.is_negative() {
            write!(f, "{}{}", self.a, b)
        } else {
            write!(f, "{}+{}", self.a, b)
        }
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Cyc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Conjugacy classes of a group with an element-to-class lookup.
pub struct Classes {
    pub name: String,
    pub group: PermGroup,
    pub representatives: Vec<Perm>,
    pub sizes: Vec<u64>,
    class_of_rank: Vec<u32>,
}

impl fmt::Debug for Classes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Classes({}, {:?})", self.name, self.representatives)
    }
}

/// Largest group handled; the element-to-class table is dense.
pub const CHAR_BOUND: u128 = 100_000;

impl Classes {
    pub fn new(name: &str, group: PermGroup) -> Result<Arc<Classes>> {
        let cls = conjugacy_classes(&group, Some(CHAR_BOUND))?;
        let n = group.order() as usize;
        let mut class_of_rank = vec![u32::MAX; n];
        let elems = group.elements();
        for (i, c) in cls.iter().enumerate() {
            for x in &elems {
                // conjugates of the representative
                let y = c.representative.conjugate_by(x);
                class_of_rank[group.rank(&y).unwrap() as usize] = i as u32;
            }
        }
        Ok(Arc::new(Classes {
            name: name.to_string(),
            representatives: cls.iter().map(|c| c.representative.clone()).collect(),
            sizes: cls.iter().map(|c| c.size).collect(),
            group,
            class_of_rank,
        }))
    }

    pub fn s4() -> Arc<Classes> {
        Classes::new("S4", PermGroup::symmetric(4)).unwrap()
    }

    pub fn a4() -> Arc<Classes> {
        Classes::new("A4", PermGroup::alternating(4)).unwrap()
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.group.order() as u64
    }

    pub fn class_of(&self, g: &Perm) -> Option<usize> {
        self.group.rank(g).map(|r| self.class_of_rank[r as usize] as usize)
    }

    fn same(self: &Arc<Self>, other: &Arc<Classes>) -> bool {
        Arc::ptr_eq(self, other) || (self.name == other.name && self.representatives == other.representatives)
    }
}

/// A function on conjugacy classes, in the order of [`Classes::representatives`].
#[derive(Clone)]
pub struct ClassFunction {
    pub classes: Arc<Classes>,
    pub values: Vec<Cyc>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, o: &ClassFunction) -> bool {
        self.classes.same(&o.classes) && self.values == o.values
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.classes.name, self.values)
    }
}

impl Serialize for ClassFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

impl ClassFunction {
    pub fn from_fn(classes: &Arc<Classes>, f: impl Fn(&Perm) -> Cyc) -> ClassFunction {
        ClassFunction { classes: classes.clone(), values: classes.representatives.iter().map(f).collect() }
    }

    pub fn from_ints(classes: &Arc<Classes>, v: &[i64]) -> Result<ClassFunction> {
        if v.len() != classes.len() {
            return Err(Error::BadInput(format!("{} values for {} classes", v.len(), classes.len())));
        }
        Ok(ClassFunction { classes: classes.clone(), values: v.iter().map(|&x| Cyc::int(x)).collect() })
    }

    pub fn trivial(classes: &Arc<Classes>) -> ClassFunction {
        ClassFunction::from_fn(classes, |_| Cyc::int(1))
    }

    pub fn regular(classes: &Arc<Classes>) -> ClassFunction {
        let n = classes.order() as i64;
        ClassFunction::from_fn(classes, |g| Cyc::int(if g.is_identity() { n } else { 0 }))
    }

    pub fn zero(classes: &Arc<Classes>) -> ClassFunction {
        ClassFunction::from_fn(classes, |_| Cyc::int(0))
    }

    /// Value at an arbitrary group element.
    pub fn at(&self, g: &Perm) -> Option<Cyc> {
        self.classes.class_of(g).map(|i| self.values[i])
    }

    /// Value at the identity.
    pub fn degree(&self) -> Cyc {
        let id = self.classes.class_of(&self.classes.group.identity()).unwrap();
        self.values[id]
    }

    /// Size of `{g : χ(g) = χ(1)}`.
    pub fn kernel_order(&self) -> u64 {
        let d = self.degree();
        self.values.iter().zip(&self.classes.sizes).filter(|(v, _)| **v == d).map(|(_, s)| s).sum()
    }

    pub fn conj(&self) -> ClassFunction {
        self.map(|v| v.conj())
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.b.is_zero())
    }

    pub fn scale(&self, r: Rational64) -> ClassFunction {
        self.map(|v| v.scale(r))
    }

    fn map(&self, f: impl Fn(Cyc) -> Cyc) -> ClassFunction {
        ClassFunction { classes: self.classes.clone(), values: self.values.iter().map(|&v| f(v)).collect() }
    }

    fn zip(&self, o: &ClassFunction, f: impl Fn(Cyc, Cyc) -> Cyc) -> Result<ClassFunction> {
        if !self.classes.same(&o.classes) {
            return Err(Error::BadInput(format!("class functions on {} and {}", self.classes.name, o.classes.name)));
        }
        Ok(ClassFunction {
            classes: self.classes.clone(),
            values: self.values.iter().zip(&o.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, o: &ClassFunction) -> Result<ClassFunction> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &ClassFunction) -> Result<ClassFunction> {
        self.zip(o, |a, b| a - b)
    }

    /// Pointwise product, the character of the tensor product.
    pub fn mul(&self, o: &ClassFunction) -> Result<ClassFunction> {
        self.zip(o, |a, b| a * b)
    }

    /// Values on the elements of `h` in `h`'s own classes.
    pub fn restrict(&self, h: &Arc<Classes>) -> Result<ClassFunction> {
        let vals = h
            .representatives
            .iter()
            .map(|g| self.at(g).ok_or_else(|| Error::BadInput(format!("{} is not in {}", g, self.classes.name))))
            .collect::<Result<_>>()?;
        Ok(ClassFunction { classes: h.clone(), values: vals })
    }
}

/// `(1/|G|) Σ_g a(g)·conj(b(g))`.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Cyc> {
    let p = a.zip(&b.conj(), |x, y| x * y)?;
    let total = p
        .values
        .iter()
        .zip(&a.classes.sizes)
        .fold(Cyc::int(0), |acc, (&v, &s)| acc + v.scale(Rational64::from_integer(s as i64)));
    Ok(total.scale(Rational64::new(1, a.classes.order() as i64)))
}

fn check_subgroup(classes: &Classes, h: &PermGroup) -> Result<()> {
    if h.degree() != classes.group.degree() || !classes.group.contains_group(h) {
        return Err(Error::BadInput(format!("subgroup of order {} is not inside {}", h.order(), classes.name)));
    }
    Ok(())
}

/// Induce `λ` from `h` to the ambient group. The value at `g` is
/// `|G| / (|H|·|g^G|) · Σ_{x ∈ H ∩ g^G} λ(x)`.
pub fn induce(classes: &Arc<Classes>, h: &PermGroup, lambda: impl Fn(&Perm) -> Cyc) -> Result<ClassFunction> {
    check_subgroup(classes, h)?;
    let mut sums = vec![Cyc::int(0); classes.len()];
    h.for_each(|x| {
        let i = classes.class_of(x).unwrap();
        sums[i] = sums[i] + lambda(x);
    });
    let (g, ho) = (classes.order() as i64, h.order() as i64);
    let values = sums
        .into_iter()
        .zip(&classes.sizes)
        .map(|(s, &c)| s.scale(Rational64::new(g, ho * c as i64)))
        .collect();
    Ok(ClassFunction { classes: classes.clone(), values })
}

/// The permutation character of `G` on the cosets of `h`.
pub fn induce_trivial(classes: &Arc<Classes>, h: &PermGroup) -> Result<ClassFunction> {
    induce(classes, h, |_| Cyc::int(1))
}

/// Multiplicity of each irreducible in `f`.
pub fn decompose(table: &[ClassFunction], f: &ClassFunction) -> Result<Vec<Cyc>> {
    table.iter().map(|chi| inner_product(f, chi)).collect()
}

/// Irreducible characters, sorted by degree with the trivial character first.
pub fn character_table(classes: &Arc<Classes>) -> Result<Vec<ClassFunction>> {
    let order = classes.order() as i64;
    let mut pool: VecDeque<ClassFunction> = VecDeque::new();
    for sub in enumerate_subgroups(&classes.group, None, Some(CHAR_BOUND))? {
        pool.push_back(induce_trivial(classes, &sub.representative)?);
    }
    // linear characters of cyclic subgroups whose values stay in Q(ω)
    for rep in &classes.representatives {
        let n = rep.order();
        if n == 2 || n == 3 || n == 6 {
            let c = PermGroup::generate(std::slice::from_ref(rep))?;
            let powers: Vec<Perm> = (0..n).map(|k| rep.pow(k)).collect();
            let lam = |x: &Perm| Cyc::root_of_unity(n, powers.iter().position(|p| p == x).unwrap() as u64);
            pool.push_back(induce(classes, &c, lam)?);
        }
    }

    let mut irr: Vec<ClassFunction> = vec![];
    let mut stale: Vec<ClassFunction> = vec![];
    let mut filled: i64 = 0;
    while filled < order {
        let Some(psi) = pool.pop_front() else {
            return Err(Error::Logic(format!(
                "character pool for {} exhausted with Σ dim² = {filled} < {order}",
                classes.name
            )));
        };
        let mut r = psi;
        for chi in &irr {
            let m = inner_product(&r, chi)?;
            r = r.zip(chi, |a, b| a - m * b)?;
        }
        let norm = inner_product(&r, &r)?;
        if norm.is_zero() {
            continue;
        }
        if norm != Cyc::int(1) {
            stale.push(r);
            continue;
        }
        if r.degree().a.is_negative() {
            r = r.scale(-Rational64::one());
        }
        let d = r.degree().to_rational().and_then(|d| d.is_integer().then(|| *d.numer()));
        let d = d.ok_or_else(|| Error::Logic(format!("irreducible of degree {}", r.degree())))?;
        filled += d * d;
        pool.push_back(r.conj());
        for chi in &irr {
            pool.push_back(r.mul(chi)?);
        }
        pool.push_back(r.mul(&r)?);
        irr.push(r);
        pool.extend(stale.drain(..));
    }
    if filled != order {
        return Err(Error::Logic(format!("Σ dim² = {filled} overshoots {order}")));
    }
    let key = |c: &ClassFunction| {
        let t = c.values.iter().all(|v| *v == Cyc::int(1));
        (c.degree(), !t, c.values.clone())
    };
    irr.sort_by_key(key);
    Ok(irr)
}

/// Stabilizer of the last point.
pub fn point_stabilizer(g: &PermGroup) -> PermGroup {
    let n = g.degree();
    let fixing = g.elements().into_iter().filter(|x| x.apply(n - 1) == n - 1);
    PermGroup::subgroup_greedy(n, fixing)
}

/// The induced-character bookkeeping behind the rank-growth identity for
/// `G ∈ {S4, A4}`: the quartic point stabilizer `H_K`, the cubic subgroup
/// `H_K3` with `Ind = 1 + θ`, and the index-6 subgroup `H_M` with
/// `Ind = 1 + θ + χ_std`.
#[derive(Clone, Debug)]
pub struct IdentitySetup {
    pub classes: Arc<Classes>,
    pub table: Vec<ClassFunction>,
    pub trivial: ClassFunction,
    /// The three-dimensional constituent of the permutation character.
    pub std: ClassFunction,
    /// Degree-2 character with kernel of order 4; irreducible for S4, the
    /// sum of the two non-real linear characters for A4.
    pub theta: ClassFunction,
    pub h_k: PermGroup,
    pub h_k3: PermGroup,
    pub h_m: PermGroup,
    /// Every subgroup class of index 6, with whether its induced character
    /// equals `1 + θ + χ_std`.
    pub h_m_candidates: Vec<(PermGroup, bool)>,
    pub ind_k: ClassFunction,
    pub ind_k3: ClassFunction,
    pub ind_m: ClassFunction,
}

impl IdentitySetup {
    pub fn s4() -> Result<IdentitySetup> {
        IdentitySetup::new(Classes::s4())
    }

    pub fn a4() -> Result<IdentitySetup> {
        IdentitySetup::new(Classes::a4())
    }

    pub fn new(classes: Arc<Classes>) -> Result<IdentitySetup> {
        let table = character_table(&classes)?;
        let trivial = ClassFunction::trivial(&classes);
        let h_k = point_stabilizer(&classes.group);
        let ind_k = induce_trivial(&classes, &h_k)?;
        let std = ind_k.sub(&trivial)?;
        if inner_product(&std, &std)? != Cyc::int(1) || std.degree() != Cyc::int(3) {
            return Err(Error::Logic(format!("permutation character of {} is not 1 + irreducible", classes.name)));
        }
        let mut degree_two: Vec<ClassFunction> = table.iter().filter(|c| c.degree() == Cyc::int(2)).cloned().collect();
        for c in table.iter().filter(|c| c.degree() == Cyc::int(1) && !c.is_real()) {
            if c.values < c.conj().values {
                degree_two.push(c.add(&c.conj())?);
            }
        }
        let theta = degree_two
            .into_iter()
            .find(|c| c.kernel_order() == 4)
            .ok_or_else(|| Error::Logic(format!("{} has no degree-2 character with kernel of order 4", classes.name)))?;
        let one_theta = trivial.add(&theta)?;
        let target_m = one_theta.add(&std)?;

        let subs = enumerate_subgroups(&classes.group, None, Some(CHAR_BOUND))?;
        let order = classes.order() as u128;
        let mut h_k3 = None;
        let mut h_m_candidates = vec![];
        for s in &subs {
            let ind = induce_trivial(&classes, &s.representative)?;
            if s.order * 3 == order && ind == one_theta && h_k3.is_none() {
                h_k3 = Some(s.representative.clone());
            }
            if s.order * 6 == order {
                h_m_candidates.push((s.representative.clone(), ind == target_m));
            }
        }
        let h_k3 = h_k3.ok_or_else(|| Error::Logic("no index-3 subgroup induces 1 + θ".into()))?;
        let h_m = h_m_candidates
            .iter()
            .find(|(_, ok)| *ok)
            .map(|(g, _)| g.clone())
            .ok_or_else(|| Error::Logic("no index-6 subgroup induces 1 + θ + χ_std".into()))?;
        Ok(IdentitySetup {
            ind_k3: induce_trivial(&classes, &h_k3)?,
            ind_m: induce_trivial(&classes, &h_m)?,
            classes,
            table,
            trivial,
            std,
            theta,
            h_k,
            h_k3,
            h_m,
            h_m_candidates,
            ind_k,
        })
    }

    /// `(⟨Ind_K, χ⟩ − ⟨1, χ⟩, ⟨Ind_M, χ⟩ − ⟨Ind_K3, χ⟩)`.
    pub fn rank_growth_identity(&self, chi: &ClassFunction) -> Result<(Cyc, Cyc)> {
        let lhs = inner_product(&self.ind_k, chi)? - inner_product(&self.trivial, chi)?;
        let rhs = inner_product(&self.ind_m, chi)? - inner_product(&self.ind_k3, chi)?;
        Ok((lhs, rhs))
    }

    /// Class functions that are 1 on one class and 0 elsewhere.
    pub fn class_indicators(&self) -> Vec<ClassFunction> {
        (0..self.classes.len())
            .map(|i| {
                let mut f = ClassFunction::zero(&self.classes);
                f.values[i] = Cyc::int(1);
                f
            })
            .collect()
    }
}
