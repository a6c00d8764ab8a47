//! Dimension bookkeeping for 2-Selmer groups under quadratic twists.
//!
//! Selmer dimensions are taken as inputs; everything here is exact
//! arithmetic on those inputs.

use crate::error::{Error, Result};
use crate::numfield::{CensusMode, CensusRecord};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Data attached to a twist `E^F/L` relative to `E/L` and the set `T` of
/// places where `F/L` ramifies and `E(L_𝔭)[2] ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelmerLedger {
    pub dim_sel: u64,
    /// Dimension of the image of `Sel₂(E/L)` under localization at `T`.
    pub dim_vt: u64,
    /// `dim H¹_f` at each place of `T`.
    #[serde(default)]
    pub local_dims: Vec<u64>,
    #[serde(default)]
    pub torsion_dim: Option<u64>,
    #[serde(default)]
    pub sha_dim: Option<u64>,
}

impl SelmerLedger {
    pub fn local_total(&self) -> u64 {
        self.local_dims.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        let total = self.local_total();
        if self.dim_vt > self.dim_sel.min(total) {
            return Err(Error::InconsistentLedger(format!(
                "localization image has dimension {} but dim Sel = {} and the local sum is {}",
                self.dim_vt, self.dim_sel, total
            )));
        }
        Ok(())
    }

    /// `dim (⊕ H¹_f) / V_T`, the bound on the slack `d`.
    pub fn quotient_dim(&self) -> u64 {
        self.local_total() - self.dim_vt
    }
}

/// All values of `dim Sel₂(E^F/L) = dim Sel − dim V_T + d` with
/// `0 ≤ d ≤ q` and `d ≡ q (mod 2)`, `q` the quotient dimension.
pub fn twist_dim_relation(l: &SelmerLedger) -> Result<BTreeSet<u64>> {
    l.validate()?;
    let q = l.quotient_dim();
    let base = l.dim_sel - l.dim_vt;
    Ok((0..=q).filter(|d| (q - d) % 2 == 0).map(|d| base + d).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum TwistDim {
    Exact(u64),
    Range(BTreeSet<u64>),
}

/// Exact `dim Sel − 2·dim V_T + Σ local` when the quotient has dimension at
/// most 1, else the full relation.
pub fn corollary_cases(l: &SelmerLedger) -> Result<TwistDim> {
    l.validate()?;
    if l.quotient_dim() <= 1 {
        Ok(TwistDim::Exact(l.dim_sel + l.local_total() - 2 * l.dim_vt))
    } else {
        twist_dim_relation(l).map(TwistDim::Range)
    }
}

/// One application of the −2 step: `dim V_T = 2` with two one-dimensional
/// local terms.
pub fn descent_step(dim_sel: u64) -> Result<u64> {
    if dim_sel < 2 {
        return Err(Error::InconsistentLedger(format!("cannot lower dimension {dim_sel} by 2")));
    }
    let l = SelmerLedger { dim_sel, dim_vt: 2, local_dims: vec![1, 1], torsion_dim: None, sha_dim: None };
    match corollary_cases(&l)? {
        TwistDim::Exact(v) => Ok(v),
        TwistDim::Range(_) => unreachable!("quotient is zero"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ladder {
    pub start: u64,
    pub endpoint: u64,
    pub steps: u64,
    pub path: Vec<u64>,
    /// Each step assumes a twist realizing a two-dimensional localization
    /// image on a pair of places, as produced by the wreath audit.
    pub assumptions: Vec<String>,
}

pub fn descent_ladder(start: i64) -> Result<Ladder> {
    if start < 0 {
        return Err(Error::BadInput(format!("negative Selmer dimension {start}")));
    }
    let start = start as u64;
    let mut path = vec![start];
    let mut cur = start;
    while cur >= 2 {
        cur = descent_step(cur)?;
        path.push(cur);
    }
    let steps = (path.len() - 1) as u64;
    let assumptions = (1..=steps)
        .map(|i| format!("step {i}: twist with transposition Frobenius at a pair T and dim V_T = 2 exists"))
        .collect();
    Ok(Ladder { start, endpoint: cur, steps, path, assumptions })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankBound {
    pub max_rank: u64,
    /// Exact rank when it is determined by the inputs.
    pub rank: Option<u64>,
    /// Set when the rank value depends on a parity conjecture.
    pub assumes_parity: bool,
    /// Whether `dim Sel = rank + torsion + sha` was checked with all terms supplied.
    pub decomposition_checked: bool,
}

/// `rk ≤ dim Sel − dim E[2]`, exact when `Ш[2]` is supplied.
pub fn rank_bound(l: &SelmerLedger) -> Result<RankBound> {
    let tors = l.torsion_dim.unwrap_or(0);
    let sha = l.sha_dim.unwrap_or(0);
    if tors + sha > l.dim_sel {
        return Err(Error::InconsistentLedger(format!(
            "torsion {tors} plus Sha {sha} exceeds dim Sel {}",
            l.dim_sel
        )));
    }
    let max_rank = l.dim_sel - tors;
    let (rank, decomposition_checked) = match (l.torsion_dim, l.sha_dim) {
        (Some(_), Some(_)) => (Some(l.dim_sel - tors - sha), true),
        _ if max_rank == 0 => (Some(0), false),
        // Ш[2] has even dimension when Ш is finite, so rank ≡ max_rank mod 2
        _ if max_rank == 1 => (Some(1), false),
        _ => (None, false),
    };
    let assumes_parity = rank.is_some_and(|r| r > 0);
    Ok(RankBound { max_rank, rank, assumes_parity, decomposition_checked })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRecord {
    pub id: String,
    pub predicted: BTreeSet<u64>,
    #[serde(default)]
    pub exact: Option<u64>,
    pub conductor_norm: u64,
}

impl TwistRecord {
    pub fn new(id: impl Into<String>, ledger: &SelmerLedger, exact: Option<u64>, conductor_norm: u64) -> Result<Self> {
        let predicted = twist_dim_relation(ledger)?;
        if let Some(e) = exact {
            if !predicted.contains(&e) {
                return Err(Error::InconsistentLedger(format!("dimension {e} outside predicted set {predicted:?}")));
            }
        }
        Ok(TwistRecord { id: id.into(), predicted, exact, conductor_norm })
    }
}

/// Exponent `a` in `X^{1/2} / (log X)^a` indexed by the Galois type of the
/// cubic field and of `K₃(E[2])/K₃`.
pub fn log_exponent(field: CensusMode, m_group: CensusMode) -> (u32, u32) {
    match (field, m_group) {
        (CensusMode::S3, CensusMode::S3) => (5, 6),
        (CensusMode::S3, CensusMode::C3) => (2, 3),
        (CensusMode::C3, CensusMode::S3) => (8, 9),
        (CensusMode::C3, CensusMode::C3) => (7, 9),
    }
}

/// Galois type of `K₃(E[2])/K₃` from its degree.
pub fn m_group_of_degree(m_degree: usize) -> Result<CensusMode> {
    match m_degree {
        6 => Ok(CensusMode::S3),
        3 => Ok(CensusMode::C3),
        d => Err(Error::BadInput(format!("K₃(E[2])/K₃ has degree {d}, need S3 or C3"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionPoint {
    #[serde(rename = "X")]
    pub x: u64,
    pub lower_bound: u64,
    /// `X^{1/2} / (log X)^a`, the predicted growth shape.
    pub shape: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistCountProjection {
    pub target_dim: u64,
    pub exponent: (u32, u32),
    pub curve: Vec<ProjectionPoint>,
    pub assumptions: Vec<String>,
}

/// Census counts read as a lower-bound curve for the number of twists with
/// Selmer dimension `r`, given a seed twist of that dimension.
pub fn twist_count_projection(
    records: &[CensusRecord],
    r: u64,
    field: CensusMode,
    field_galois_matches: bool,
) -> Result<TwistCountProjection> {
    if !field_galois_matches {
        return Err(Error::BadInput(format!("cubic field is not of type {field:?}")));
    }
    let m = match records.first() {
        Some(rec) => m_group_of_degree(rec.m_degree)?,
        None => {
            return Ok(TwistCountProjection {
                target_dim: r,
                exponent: (0, 1),
                curve: vec![],
                assumptions: vec![],
            })
        }
    };
    let exponent = log_exponent(field, m);
    let a = exponent.0 as f64 / exponent.1 as f64;
    let curve = records
        .iter()
        .map(|rec| {
            let x = rec.x as f64;
            ProjectionPoint { x: rec.x, lower_bound: rec.count_with_surrogate.unwrap_or(rec.count), shape: x.sqrt() / x.ln().powf(a) }
        })
        .collect();
    Ok(TwistCountProjection {
        target_dim: r,
        exponent,
        curve,
        assumptions: vec![format!("a square-norm twist with dim Sel_2 = {r} exists")],
    })
}
