use rayon::prelude::*;

use crate::error::{Error, Result};

/// A decoherence function value with its evaluation error estimate
/// (quadrature error or Monte-Carlo standard error; zero for closed forms).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self { value, error: 0.0 }
    }
}

/// Decoherence function tabulated on a time grid, with cubic Hermite
/// interpolation between nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct DecoherenceFunction {
    grid: Vec<f64>,
    values: Vec<f64>,
    errors: Vec<f64>,
    slopes: Vec<f64>,
}

/// Evaluate `f` on every node of `grid` (in parallel) and keep the table.
pub fn memoize_on_grid<F>(f: F, grid: &[f64]) -> Result<DecoherenceFunction>
where
    F: Fn(f64) -> Result<Estimate> + Sync,
{
    if grid.len() < 2 {
        return Err(Error::InvalidParams("grid needs at least two nodes".into()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParams("grid must be strictly increasing".into()));
    }
    let evaluated: Vec<Estimate> = grid.par_iter().map(|&t| f(t)).collect::<Result<_>>()?;
    if let Some(bad) = evaluated.iter().position(|e| !e.value.is_finite()) {
        return Err(Error::NumericalFailure(format!(
            "non-finite decoherence value at t = {}",
            grid[bad]
        )));
    }
    let values: Vec<f64> = evaluated.iter().map(|e| e.value).collect();
    let errors = evaluated.iter().map(|e| e.error).collect();
    let slopes = finite_difference(&values, grid);
    Ok(DecoherenceFunction {
        grid: grid.to_vec(),
        values,
        errors,
        slopes,
    })
}

/// Central differences on interior nodes (non-uniform three-point stencil),
/// first-order one-sided at the ends.
pub fn finite_difference(values: &[f64], grid: &[f64]) -> Vec<f64> {
    let n = values.len();
    assert_eq!(n, grid.len());
    if n < 2 {
        return vec![0.0; n];
    }
    let mut d = vec![0.0; n];
    let step = |i: usize| values[i + 1] - values[i];
    for i in 1..n - 1 {
        let h0 = grid[i] - grid[i - 1];
        let h1 = grid[i + 1] - grid[i];
        d[i] = (h0 * h0 * step(i) + h1 * h1 * step(i - 1)) / (h0 * h1 * (h0 + h1));
    }
    // first-order ends keep the sign of the adjacent increment
    d[0] = step(0) / (grid[1] - grid[0]);
    d[n - 1] = step(n - 2) / (grid[n - 1] - grid[n - 2]);
    d
}

impl DecoherenceFunction {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn errors(&self) -> &[f64] {
        &self.errors
    }

    /// Finite-difference time derivative at the nodes.
    pub fn node_derivatives(&self) -> &[f64] {
        &self.slopes
    }

    /// Interpolated value; `t` must lie inside the grid.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let (lo, hi) = (self.grid[0], self.grid[self.grid.len() - 1]);
        if !(t >= lo && t <= hi) {
            return Err(Error::InvalidParams(format!(
                "t = {t} outside tabulated range [{lo}, {hi}]"
            )));
        }
        let k = match self.grid.binary_search_by(|x| x.total_cmp(&t)) {
            Ok(k) => return Ok(self.values[k]),
            Err(k) => k - 1,
        };
        let h = self.grid[k + 1] - self.grid[k];
        let s = (t - self.grid[k]) / h;
        let (s2, s3) = (s * s, s * s * s);
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        Ok(h00 * self.values[k]
            + h10 * h * self.slopes[k]
            + h01 * self.values[k + 1]
            + h11 * h * self.slopes[k + 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(n: usize, hi: f64) -> Vec<f64> {
        (0..n).map(|i| hi * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn interpolation_hits_nodes_and_tracks_smooth_functions() {
        let grid = uniform(201, 3.0);
        let f = memoize_on_grid(|t| Ok(Estimate::exact(t.sin())), &grid).unwrap();
        assert_eq!(f.eval(grid[17]).unwrap(), grid[17].sin());
        for i in 0..500 {
            let t = 3.0 * i as f64 / 499.0;
            // the end slopes are first order, so the end cells are looser
            let tol = if t < grid[1] || t > grid[199] { 1e-5 } else { 1e-6 };
            assert!((f.eval(t).unwrap() - t.sin()).abs() < tol, "t = {t}");
        }
        let d = f.node_derivatives();
        assert!((d[100] - grid[100].cos()).abs() < 1e-4);
    }

    #[test]
    fn out_of_range_and_bad_grid() {
        let grid = uniform(10, 1.0);
        let f = memoize_on_grid(|t| Ok(Estimate::exact(t)), &grid).unwrap();
        assert!(f.eval(1.5).is_err());
        assert!(memoize_on_grid(|t| Ok(Estimate::exact(t)), &[0.0, 0.0]).is_err());
        assert!(memoize_on_grid(|_| Ok(Estimate::exact(f64::NAN)), &grid).is_err());
    }

    #[test]
    fn three_point_stencil_is_exact_for_quadratics() {
        let grid = vec![0.0, 0.1, 0.35, 0.4, 1.0];
        let v: Vec<f64> = grid.iter().map(|t| 3.0 * t * t - t).collect();
        let d = finite_difference(&v, &grid);
        for i in 1..4 {
            assert!((d[i] - (6.0 * grid[i] - 1.0)).abs() < 1e-12);
        }
    }
}
