//! Least-squares fits of census growth.

use super::census::CensusRecord;
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct FitResult {
    /// Slope of `ln count` against `ln X`.
    pub slope: f64,
    pub slope_rms: f64,
    /// `κ` in `count ≈ C · X^{1/2} / (ln X)^κ`.
    pub log_exponent: f64,
    pub log_rms: f64,
    pub points: usize,
}

/// Ordinary least squares `y ≈ a + b x`; returns `(a, b, rms residual)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let rms = (xs.iter().zip(ys).map(|(x, y)| (y - a - b * x).powi(2)).sum::<f64>() / n).sqrt();
    (a, b, rms)
}

/// Fit on the records with a positive count, which must number at least
/// five and span at least two decades of `X`.
pub fn fit_exponent(records: &[CensusRecord]) -> Result<FitResult> {
    let pts: Vec<(f64, f64)> =
        records.iter().filter(|r| r.count > 0 && r.x > 1).map(|r| ((r.x as f64).ln(), (r.count as f64).ln())).collect();
    if pts.len() < 5 {
        return Err(Error::BadInput(format!("{} usable records, need at least 5", pts.len())));
    }
    let (lo, hi) = pts.iter().fold((f64::MAX, f64::MIN), |(lo, hi), p| (lo.min(p.0), hi.max(p.0)));
    if hi - lo < 2.0 * std::f64::consts::LN_10 - 1e-9 {
        return Err(Error::BadInput("records span less than two decades".into()));
    }
    let lx: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ly: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let (_, slope, slope_rms) = least_squares(&lx, &ly);
    let llx: Vec<f64> = lx.iter().map(|x| x.ln()).collect();
    let resid: Vec<f64> = lx.iter().zip(&ly).map(|(x, y)| y - 0.5 * x).collect();
    let (_, b, log_rms) = least_squares(&llx, &resid);
    Ok(FitResult { slope, slope_rms, log_exponent: -b, log_rms, points: pts.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(f: impl Fn(f64) -> f64) -> Vec<CensusRecord> {
        (10..=40)
            .map(|e| {
                let x = 1u64 << e;
                CensusRecord { x, count: f(x as f64).round() as u64, count_with_surrogate: None, s_size: 2, m_degree: 6 }
            })
            .collect()
    }

    #[test]
    fn recovers_planted_exponents() {
        let r = fit_exponent(&synthetic(|x| 1000.0 * x.sqrt())).unwrap();
        assert!((r.slope - 0.5).abs() < 1e-6);
        assert!(r.log_exponent.abs() < 1e-3);
        let r = fit_exponent(&synthetic(|x| 1000.0 * x.sqrt() / x.ln().powf(5.0 / 6.0))).unwrap();
        assert!((r.log_exponent - 5.0 / 6.0).abs() < 1e-3, "{r:?}");
        assert!(r.log_rms < 1e-3);
    }

    #[test]
    fn rejects_thin_data() {
        let mut recs = synthetic(|x| x.sqrt());
        recs.truncate(4);
        assert!(fit_exponent(&recs).is_err());
        let narrow: Vec<_> = synthetic(|x| x.sqrt()).into_iter().take(6).collect();
        assert!(fit_exponent(&narrow).is_err());
    }
}
