//! Uniform spatial grids on an interval bounded away from the singular
//! axis x = 0, and complex-valued fields sampled on them.

use num_complex::Complex64;

use crate::{Error, Result};

/// Uniform grid of `n ≥ 3` nodes on `[x_min, x_max]` with `0 < x_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl SpatialGrid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return Err(Error::invalid("grid bounds must be finite"));
        }
        if !(0.0 < x_min && x_min < x_max) {
            return Err(Error::invalid(format!(
                "need 0 < x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n < 3 {
            return Err(Error::invalid(format!("need at least 3 nodes, got {n}")));
        }
        Ok(SpatialGrid { x_min, x_max, n })
    }

    /// Grid with approximately the requested spacing (node count rounded).
    pub fn with_spacing(x_min: f64, x_max: f64, spacing: f64) -> Result<Self> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::invalid(format!("spacing must be > 0, got {spacing}")));
        }
        let n = ((x_max - x_min) / spacing).round() as usize + 1;
        Self::new(x_min, x_max, n)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    /// Node i, computed as `x_min + i · spacing`.
    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.n);
        self.x_min + i as f64 * self.spacing()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }
}

/// Complex field sampled on a [`SpatialGrid`] at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: SpatialGrid,
    values: Vec<Complex64>,
    time: f64,
}

impl ComplexField {
    pub fn new(grid: SpatialGrid, values: Vec<Complex64>, time: f64) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        if !time.is_finite() {
            return Err(Error::invalid(format!("time must be finite, got {time}")));
        }
        if let Some(i) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::invalid(format!(
                "non-finite sample at node {i} (x = {})",
                grid.node(i)
            )));
        }
        Ok(ComplexField { grid, values, time })
    }

    /// Samples `f(x)` on every node.
    pub fn from_fn(grid: SpatialGrid, time: f64, mut f: impl FnMut(f64) -> Complex64) -> Result<Self> {
        let values = grid.nodes().map(&mut f).collect();
        Self::new(grid, values, time)
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> Complex64 {
        self.values[i]
    }

    /// |u| at node i.
    pub fn modulus(&self, i: usize) -> f64 {
        self.values[i].norm()
    }

    /// arg u at node i, in (−π, π].
    pub fn phase(&self, i: usize) -> f64 {
        self.values[i].arg()
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    /// Trapezoid-rule mass ∫|u|² dx over the grid interval.
    pub fn mass(&self) -> f64 {
        self.integrate_samples(|v| v.norm_sqr())
    }

    /// Trapezoid-rule ∫|u|^p dx over the grid interval.
    pub fn lp_pth_power(&self, p: f64) -> f64 {
        self.integrate_samples(|v| v.norm().powf(p))
    }

    /// Trapezoid-rule L_p norm on the grid interval.
    pub fn lp_norm(&self, p: f64) -> f64 {
        self.lp_pth_power(p).powf(1.0 / p)
    }

    /// Relative L₂ distance to `other` on the same grid.
    pub fn rel_l2_error(&self, other: &ComplexField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::invalid("fields live on different grids"));
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..self.values.len() {
            let w = self.trapezoid_weight(i);
            num += w * (self.values[i] - other.values[i]).norm_sqr();
            den += w * other.values[i].norm_sqr();
        }
        if den == 0.0 {
            return Err(Error::domain("reference field is identically zero"));
        }
        Ok((num / den).sqrt())
    }

    fn trapezoid_weight(&self, i: usize) -> f64 {
        let h = self.grid.spacing();
        if i == 0 || i + 1 == self.values.len() {
            0.5 * h
        } else {
            h
        }
    }

    fn integrate_samples(&self, f: impl Fn(&Complex64) -> f64) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| self.trapezoid_weight(i) * f(v))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(SpatialGrid::new(0.1, 10.0, 3).is_ok());
        assert!(SpatialGrid::new(0.0, 10.0, 3).is_err());
        assert!(SpatialGrid::new(-1.0, 10.0, 3).is_err());
        assert!(SpatialGrid::new(5.0, 1.0, 3).is_err());
        assert!(SpatialGrid::new(0.1, 10.0, 2).is_err());
    }

    #[test]
    fn nodes_are_affine_in_the_index() {
        let g = SpatialGrid::new(0.5, 2.5, 5).unwrap();
        assert_eq!(g.spacing(), 0.5);
        for i in 0..5 {
            // Same expression, so this must hold bit-for-bit.
            assert_eq!(g.node(i), 0.5 + i as f64 * g.spacing());
        }
        assert_eq!(g.node(0), 0.5);
        assert_eq!(g.node(4), 2.5);
    }

    #[test]
    fn with_spacing_rounds_to_nodes() {
        let g = SpatialGrid::with_spacing(0.05, 10.0, 1e-3).unwrap();
        assert_eq!(g.len(), 9951);
        assert!((g.spacing() - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn field_rejects_bad_input() {
        let g = SpatialGrid::new(1.0, 2.0, 3).unwrap();
        assert!(ComplexField::new(g, vec![Complex64::new(0.0, 0.0); 2], 0.0).is_err());
        let mut vals = vec![Complex64::new(0.0, 0.0); 3];
        vals[1] = Complex64::new(f64::NAN, 0.0);
        assert!(ComplexField::new(g, vals, 0.0).is_err());
    }

    #[test]
    fn trapezoid_mass_of_constant_field() {
        let g = SpatialGrid::new(1.0, 3.0, 21).unwrap();
        let f = ComplexField::from_fn(g, 0.0, |_| Complex64::new(0.0, 2.0)).unwrap();
        // ∫ |2i|² over an interval of length 2.
        assert!((f.mass() - 8.0).abs() < 1e-12);
        assert!((f.lp_norm(2.0) - 8.0f64.sqrt()).abs() < 1e-12);
    }
}
