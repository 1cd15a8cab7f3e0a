//! Least-squares power-law fits.

use serde::Serialize;

use crate::error::{Error, Result};

/// A fitted line `ln count = slope * ln H + intercept`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// The `(ln H, ln count)` pairs that entered the fit.
    pub points: Vec<(f64, f64)>,
    /// Root-mean-square deviation of the points from the line.
    pub residual: f64,
}

/// Fits `count ~ C * H^slope` to `(H, count)` samples. Samples with a
/// non-positive count or height carry no logarithm and are skipped.
pub fn fit_power_law<I>(samples: I) -> Result<FitResult>
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let points: Vec<(f64, f64)> = samples
        .into_iter()
        .filter(|&(h, c)| h > 0.0 && c > 0.0)
        .map(|(h, c)| (h.ln(), c.ln()))
        .collect();
    fit_line(points)
}

fn fit_line(points: Vec<(f64, f64)>) -> Result<FitResult> {
    let m = points.len();
    if m < 2 {
        return Err(Error::InsufficientData(m));
    }
    let mf = m as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / mf;
    let my = points.iter().map(|p| p.1).sum::<f64>() / mf;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData(1));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (points
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum::<f64>()
        / mf)
        .sqrt();
    Ok(FitResult {
        slope,
        intercept,
        points,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let fit = fit_power_law([(10.0, 100.0), (100.0, 10_000.0)]).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        let samples = [10.0, 20.0, 40.0, 80.0, 160.0].map(|h: f64| (h, 7.0 * h.powf(1.5)));
        let fit = fit_power_law(samples).unwrap();
        assert!((fit.slope - 1.5).abs() < 1e-9);
        assert!((fit.intercept - 7f64.ln()).abs() < 1e-9);
        assert!(fit.residual < 1e-9);
    }

    #[test]
    fn zero_counts_are_skipped() {
        assert_eq!(fit_power_law([(10.0, 0.0), (20.0, 5.0)]), Err(Error::InsufficientData(1)));
        assert_eq!(fit_power_law([(10.0, 5.0), (10.0, 6.0)]), Err(Error::InsufficientData(1)));
    }
}
