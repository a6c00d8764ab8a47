//! Independent units from short-element searches.

use super::lattice::Reduced;
use super::{CubicField, Elem, Ideal};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, Serialize)]
pub struct UnitData {
    /// Multiplicatively independent units; fundamental whenever the search
    /// radius reaches a fundamental system.
    #[serde(serialize_with = "ser_elems")]
    pub units: Vec<Elem>,
    /// `log|σ_i(u)|` for the three embeddings.
    pub logs: Vec<[f64; 3]>,
    /// `½ Σ_j max_i |log|σ_i(u_j)||`: any element can be moved by a unit so
    /// that every embedding is within `e^D` of `|N|^{1/3}`.
    pub d_bound: f64,
    pub regulator: f64,
    /// Largest T2 radius searched.
    pub search_radius: f64,
}

pub(crate) fn ser_elems<S: serde::Serializer>(v: &[Elem], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    let strs: Vec<[String; 3]> = v.iter().map(|e| e.clone().map(|x| x.to_string())).collect();
    strs.serialize(s)
}

pub fn log_embeddings(k: &CubicField, x: &Elem) -> [f64; 3] {
    k.embed(x).map(|z| z.norm().ln())
}

fn log_norm(l: &[f64; 3]) -> f64 {
    l.iter().map(|x| x * x).sum::<f64>().sqrt()
}

struct Basis<'a> {
    k: &'a CubicField,
    units: Vec<Elem>,
    logs: Vec<[f64; 3]>,
}

impl Basis<'_> {
    fn inverse(&self, u: &Elem) -> Elem {
        self.k.div_exact(&self.k.one(), u).expect("units are invertible")
    }

    fn times_power(&self, v: &Elem, u: &Elem, e: i64) -> Elem {
        let base = if e < 0 { self.inverse(u) } else { u.clone() };
        self.k.mul(v, &self.k.pow(&base, e.unsigned_abs()))
    }

    /// Coordinates of a log vector in the current basis (first `r` coordinates suffice).
    fn coords(&self, l: &[f64; 3]) -> Vec<f64> {
        match self.logs.len() {
            1 => vec![l[0] / self.logs[0][0]],
            2 => {
                let (a, b) = (self.logs[0], self.logs[1]);
                let det = a[0] * b[1] - a[1] * b[0];
                vec![(l[0] * b[1] - l[1] * b[0]) / det, (a[0] * l[1] - a[1] * l[0]) / det]
            }
            _ => vec![],
        }
    }

    fn det(&self) -> f64 {
        match self.logs.len() {
            1 => self.logs[0][0].abs(),
            2 => (self.logs[0][0] * self.logs[1][1] - self.logs[0][1] * self.logs[1][0]).abs(),
            _ => 0.0,
        }
    }

    /// Fold `v` into the lattice; returns whether the basis changed.
    fn absorb(&mut self, v: &Elem, rank: usize) -> bool {
        let lv = log_embeddings(self.k, v);
        if log_norm(&lv) < 1e-7 {
            return false;
        }
        if self.logs.len() < rank {
            let independent = match self.logs.len() {
                0 => true,
                _ => (self.logs[0][0] * lv[1] - self.logs[0][1] * lv[0]).abs() > 1e-6,
            };
            if independent {
                self.units.push(v.clone());
                self.logs.push(lv);
                return true;
            }
            // dependent on the first unit in rank 2: reduce in one dimension
            let t = if self.logs[0][0].abs() > self.logs[0][1].abs() {
                lv[0] / self.logs[0][0]
            } else {
                lv[1] / self.logs[0][1]
            };
            let r = t.round();
            if (t - r).abs() < 1e-6 {
                return false;
            }
            let w = self.times_power(v, &self.units[0].clone(), -(r as i64));
            self.units[0] = w.clone();
            self.logs[0] = log_embeddings(self.k, &w);
            return true;
        }
        let c = self.coords(&lv);
        let rounded: Vec<f64> = c.iter().map(|x| x.round()).collect();
        if c.iter().zip(&rounded).all(|(x, r)| (x - r).abs() < 1e-6) {
            return false;
        }
        let mut w = v.clone();
        for (j, r) in rounded.iter().enumerate() {
            if *r != 0.0 {
                w = self.times_power(&w, &self.units[j].clone(), -(*r as i64));
            }
        }
        let lw = log_embeddings(self.k, &w);
        let cw = self.coords(&lw);
        // replace the basis vector whose coordinate is largest; the volume
        // shrinks by that coordinate, at most 1/2
        let j = (0..cw.len()).max_by(|&a, &b| cw[a].abs().total_cmp(&cw[b].abs())).unwrap();
        let before = self.det();
        self.units[j] = w;
        self.logs[j] = lw;
        debug_assert!(self.det() < before);
        true
    }

    /// Size-reduce the second unit against the first.
    fn gauss(&mut self) {
        if self.logs.len() != 2 {
            return;
        }
        loop {
            if log_norm(&self.logs[1]) < log_norm(&self.logs[0]) {
                self.units.swap(0, 1);
                self.logs.swap(0, 1);
            }
            let (a, b) = (self.logs[0], self.logs[1]);
            let m = (0..3).map(|i| a[i] * b[i]).sum::<f64>() / (0..3).map(|i| a[i] * a[i]).sum::<f64>();
            let r = m.round();
            if r == 0.0 {
                break;
            }
            let w = self.times_power(&self.units[1].clone(), &self.units[0].clone(), -(r as i64));
            let lw = log_embeddings(self.k, &w);
            if log_norm(&lw) >= log_norm(&b) - 1e-9 {
                break;
            }
            self.logs[1] = lw;
            self.units[1] = w;
        }
    }
}

/// Search elements with `T2 ≤ B` for growing `B`, collecting units directly
/// and as ratios of elements generating the same small ideal, until a full
/// system of independent units is found.
pub fn find_units(k: &CubicField, node_budget: u64) -> Result<UnitData> {
    let rank = k.unit_rank();
    let red = Reduced::new(k, &Ideal::unit().rows);
    let mut basis = Basis { k, units: vec![], logs: vec![] };
    let mut radius = 8.0f64;
    let mut spent = 0u64;
    loop {
        let mut found: Vec<Elem> = vec![];
        let mut by_ideal: HashMap<Ideal, Elem> = HashMap::new();
        let nodes = red
            .enumerate(radius, node_budget.saturating_sub(spent).max(1), |x, _| {
                let n = k.norm(x).abs();
                if n.is_one() {
                    found.push(x.clone());
                } else if n <= BigInt::from(64) {
                    let id = Ideal::principal(k, x).unwrap();
                    match by_ideal.get(&id) {
                        Some(y) => {
                            if let Some(u) = k.div_exact(x, y) {
                                found.push(u);
                            }
                        }
                        None => {
                            by_ideal.insert(id, x.clone());
                        }
                    }
                }
                true
            })
            .map_err(|_| Error::Budget(format!("unit search exhausted {node_budget} nodes at T2 radius {radius}")))?;
        spent += nodes;
        found.sort_by(|a, b| k.t2(a).total_cmp(&k.t2(b)));
        let mut changed = true;
        while changed {
            changed = false;
            for u in &found {
                changed |= basis.absorb(u, rank);
            }
        }
        basis.gauss();
        if basis.units.len() == rank {
            let d_bound =
                0.5 * basis.logs.iter().map(|l| l.iter().fold(0.0f64, |m, x| m.max(x.abs()))).sum::<f64>();
            let regulator = basis.det();
            return Ok(UnitData { units: basis.units, logs: basis.logs, d_bound, regulator, search_radius: radius });
        }
        if spent >= node_budget {
            return Err(Error::Budget(format!("no full unit system within T2 radius {radius}")));
        }
        radius *= 4.0;
    }
}
