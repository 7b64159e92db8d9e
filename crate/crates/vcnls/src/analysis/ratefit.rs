//! Least-squares power-law fits on log–log axes, used to extract decay
//! and blow-up rates from sampled ladders.

use crate::{Error, Result};

/// Fitted line `ln y = slope · ln x + intercept`.
#[derive(Debug, Clone, Copy)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of ln y around the fitted line; near zero
    /// when the data is a clean power law.
    pub rms_residual: f64,
}

/// Fits `y ≈ e^intercept · x^slope` by least squares in log space.
///
/// Requires matching lengths, at least two samples, strictly positive
/// finite data, and abscissae that do not all coincide.
pub fn fit_loglog(xs: &[f64], ys: &[f64]) -> Result<LogLogFit> {
    if xs.len() != ys.len() {
        return Err(Error::invalid(format!(
            "mismatched sample lengths {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::invalid(format!(
            "a rate fit needs at least two samples, got {}",
            xs.len()
        )));
    }
    for (&x, &y) in xs.iter().zip(ys) {
        if !(x > 0.0 && x.is_finite() && y > 0.0 && y.is_finite()) {
            return Err(Error::invalid(format!(
                "log–log fit needs positive finite samples, got ({x}, {y})"
            )));
        }
    }

    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mean_x = lx.iter().sum::<f64>() / n;
    let mean_y = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|l| (l - mean_x) * (l - mean_x)).sum();
    let sxy: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(&a, &b)| (a - mean_x) * (b - mean_y))
        .sum();
    if sxx < 1e-24 {
        return Err(Error::DegenerateFit(format!(
            "abscissae are (nearly) identical, ln-variance = {sxx:.3e}"
        )));
    }

    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let rms_residual = (lx
        .iter()
        .zip(&ly)
        .map(|(&a, &b)| {
            let r = b - (slope * a + intercept);
            r * r
        })
        .sum::<f64>()
        / n)
        .sqrt();

    Ok(LogLogFit {
        slope,
        intercept,
        rms_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exact_power_law_is_recovered() {
        let xs = [1.0f64, 0.5, 0.25, 0.125, 0.01];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(2.5)).collect();
        let fit = fit_loglog(&xs, &ys).unwrap();
        assert_relative_eq!(fit.slope, 2.5, max_relative = 1e-12);
        assert_relative_eq!(fit.intercept, 3.0_f64.ln(), max_relative = 1e-12);
        assert!(fit.rms_residual < 1e-13);
    }

    #[test]
    fn negative_exponents_work_too() {
        let xs = [1e-1f64, 1e-2, 1e-3, 1e-4];
        let ys: Vec<f64> = xs.iter().map(|x| 0.7 * x.powf(-0.25)).collect();
        let fit = fit_loglog(&xs, &ys).unwrap();
        assert_relative_eq!(fit.slope, -0.25, max_relative = 1e-12);
    }

    #[test]
    fn residual_reflects_scatter() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys = [1.0, 2.2, 3.7, 8.5];
        let fit = fit_loglog(&xs, &ys).unwrap();
        assert!(fit.rms_residual > 1e-3);
    }

    #[test]
    fn validation_errors() {
        assert!(fit_loglog(&[1.0], &[2.0]).is_err());
        assert!(fit_loglog(&[1.0, 2.0], &[1.0]).is_err());
        assert!(fit_loglog(&[1.0, -2.0], &[1.0, 1.0]).is_err());
        assert!(fit_loglog(&[1.0, 1.0], &[1.0, 2.0]).is_err());
        assert!(matches!(
            fit_loglog(&[3.0, 3.0, 3.0], &[1.0, 2.0, 3.0]),
            Err(Error::DegenerateFit(_))
        ));
    }
}
