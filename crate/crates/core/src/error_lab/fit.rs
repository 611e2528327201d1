use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Errors at or below this value are treated as numerically zero.
pub const DEGENERATE_ERROR: f64 = 1e-13;

/// `n` points spaced evenly in `log t` over `[t_min, t_max]`.
pub fn log_time_grid(t_min: f64, t_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0) || !t_min.is_finite() {
        return Err(Error::invalid("t_min", t_min, "must be positive"));
    }
    if !(t_max > t_min) || !t_max.is_finite() {
        return Err(Error::invalid("t_max", t_max, "must exceed t_min"));
    }
    if n < 2 {
        return Err(Error::invalid("grid points", n as f64, "need at least 2"));
    }
    let (a, b) = (t_min.ln(), t_max.ln());
    let mut grid: Vec<f64> = (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect();
    grid[0] = t_min;
    grid[n - 1] = t_max;
    Ok(grid)
}

/// Ten log-spaced times in `[pi/(4||H||), pi/(2||H||)]`.
pub fn default_fit_grid(norm: f64) -> Result<Vec<f64>> {
    if !(norm > 0.0) {
        return Err(Error::ZeroHamiltonian);
    }
    log_time_grid(PI / (4.0 * norm), PI / (2.0 * norm), 10)
}

/// Power law `err = w t^p` fitted in log space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerLawFit {
    /// Constant of the fixed-slope fit.
    pub w: f64,
    /// `r^2` of the fixed-slope fit on log residuals, clamped to `[0, 1]`.
    pub r_squared: f64,
    /// Slope of the unconstrained least-squares line.
    pub free_slope: f64,
}

/// Fixed-slope fit `ln err = ln w + p ln t`, plus a free-slope check.
pub fn fit_power_law(times: &[f64], errors: &[f64], p: f64) -> Result<PowerLawFit> {
    if times.len() != errors.len() {
        return Err(Error::DimensionMismatch {
            expected: times.len(),
            found: errors.len(),
        });
    }
    if times.len() < 2 {
        return Err(Error::Unfittable("need at least two points".into()));
    }
    if let Some((i, e)) = errors
        .iter()
        .enumerate()
        .find(|(_, e)| !(e.abs() > DEGENERATE_ERROR) || !e.is_finite())
    {
        return Err(Error::Unfittable(format!(
            "error {e:e} at grid point {i} is below {DEGENERATE_ERROR:e}"
        )));
    }
    let n = times.len() as f64;
    let lt: Vec<f64> = times.iter().map(|t| t.ln()).collect();
    let le: Vec<f64> = errors.iter().map(|e| e.abs().ln()).collect();

    let ln_w = lt.iter().zip(&le).map(|(t, e)| e - p * t).sum::<f64>() / n;
    let mean_e = le.iter().sum::<f64>() / n;
    let ss_tot: f64 = le.iter().map(|e| (e - mean_e).powi(2)).sum();
    let ss_res: f64 = lt.iter().zip(&le).map(|(t, e)| (e - ln_w - p * t).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else if ss_res == 0.0 {
        1.0
    } else {
        0.0
    };

    let mean_t = lt.iter().sum::<f64>() / n;
    let sxx: f64 = lt.iter().map(|t| (t - mean_t).powi(2)).sum();
    let sxy: f64 = lt.iter().zip(&le).map(|(t, e)| (t - mean_t) * (e - mean_e)).sum();
    if !(sxx > 0.0) {
        return Err(Error::Unfittable("grid times are not distinct".into()));
    }
    Ok(PowerLawFit {
        w: ln_w.exp(),
        r_squared,
        free_slope: sxy / sxx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_log_spaced() {
        let g = log_time_grid(0.1, 1.0, 10).unwrap();
        assert_eq!(g.len(), 10);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[9], 1.0);
        let ratios: Vec<f64> = g.windows(2).map(|w| w[1] / w[0]).collect();
        for r in &ratios {
            assert!((r - ratios[0]).abs() < 1e-12);
        }
        assert!(log_time_grid(0.0, 1.0, 10).is_err());
        assert!(log_time_grid(1.0, 1.0, 10).is_err());
    }

    #[test]
    fn exact_power_law_is_recovered() {
        let t = log_time_grid(0.2, 0.4, 10).unwrap();
        let e: Vec<f64> = t.iter().map(|t| 0.3 * t * t).collect();
        let fit = fit_power_law(&t, &e, 2.0).unwrap();
        assert!((fit.w - 0.3).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert!((fit.free_slope - 2.0).abs() < 1e-10);
    }

    #[test]
    fn wrong_slope_lowers_r_squared() {
        let t = log_time_grid(0.2, 0.4, 10).unwrap();
        let e: Vec<f64> = t.iter().map(|t| t.powi(3)).collect();
        let fit = fit_power_law(&t, &e, 2.0).unwrap();
        assert!(fit.r_squared < 0.9);
        assert!((fit.free_slope - 3.0).abs() < 1e-10);
    }

    #[test]
    fn degenerate_errors_are_unfittable() {
        let t = [0.1, 0.2];
        assert!(matches!(fit_power_law(&t, &[1e-3, 1e-14], 2.0), Err(Error::Unfittable(_))));
    }
}
