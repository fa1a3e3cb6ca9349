//! Grid verification of the analytic inequalities behind the binomial sum
//! estimates: the piecewise gap function and the two-term interpolation
//! bound. These are proved rigorously elsewhere; the checks here are
//! regression-grade numerical confirmation with explicit resolution and
//! tolerance.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{Error, Result};

/// Resolution and tolerance of a grid sweep.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct GridSpec {
    /// Largest K for the interpolation sweep; K starts at one step.
    pub k_max: f64,
    /// Step between consecutive x (or K) grid points.
    pub k_step: f64,
    /// Largest integer m whose piece (or exponent) is swept.
    pub m_max: u32,
    /// Step between consecutive λ grid points in [0, 1).
    pub lambda_step: f64,
    /// Margins down to −slack still count as passing.
    pub slack: f64,
}

impl GridSpec {
    /// Default grid for the gap sweep: x resolution 1e-3 over the pieces
    /// up to m = 8, tolerance 1e-9.
    pub fn default_gap() -> Self {
        GridSpec {
            k_max: 50.0,
            k_step: 1e-3,
            m_max: 8,
            lambda_step: 1.0 / 64.0,
            slack: 1e-9,
        }
    }

    /// Default grid for the interpolation sweep: K ∈ (0, 50] in steps of
    /// 1/16, λ in steps of 1/64, m up to 8, tolerance 1e-9.
    pub fn default_interp() -> Self {
        GridSpec {
            k_max: 50.0,
            k_step: 1.0 / 16.0,
            m_max: 8,
            lambda_step: 1.0 / 64.0,
            slack: 1e-9,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.k_step > 0.0 && self.k_max >= 2.0 * self.k_step) {
            return Err(Error::invalid(
                "step must be positive and give at least two grid points".to_string(),
            ));
        }
        if !(self.lambda_step > 0.0 && self.lambda_step <= 0.5) {
            return Err(Error::invalid(
                "lambda step must lie in (0, 1/2] to give at least two points".to_string(),
            ));
        }
        if !(0.0..=1e-6).contains(&self.slack) {
            return Err(Error::invalid("slack must lie in [0, 1e-6]".to_string()));
        }
        Ok(())
    }
}

/// The piecewise gap function: 1 + x − e^{x/e} on [0, e), and
/// (x/m)^m + (x/(m+1))^{m+1} − e^{x/e} on [me, (m+1)e) for m ≥ 1.
pub fn piecewise_f(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::invalid(format!("need x >= 0, got {x}")));
    }
    let exp_term = (x / E).exp();
    if x < E {
        return Ok(1.0 + x - exp_term);
    }
    let m = (x / E).floor();
    Ok((x / m).powf(m) + (x / (m + 1.0)).powf(m + 1.0) - exp_term)
}

/// Outcome of one grid sweep. `worst_point` lists the coordinates of the
/// worst margin: [part, x] for the gap sweep, [m, lambda, K] for the
/// interpolation sweep.
#[derive(Clone, Debug, Serialize)]
pub struct GridReport {
    pub proposition: &'static str,
    pub points_checked: u64,
    pub worst_margin: f64,
    pub worst_point: Vec<f64>,
    pub pass: bool,
}

struct Sweep {
    points: u64,
    worst: f64,
    at: Vec<f64>,
}

impl Sweep {
    fn new() -> Self {
        Sweep {
            points: 0,
            worst: f64::INFINITY,
            at: Vec::new(),
        }
    }

    fn record(&mut self, margin: f64, point: &[f64]) {
        self.points += 1;
        if margin < self.worst {
            self.worst = margin;
            self.at = point.to_vec();
        }
    }

    fn into_report(self, proposition: &'static str, slack: f64) -> GridReport {
        GridReport {
            proposition,
            points_checked: self.points,
            pass: self.points > 0 && self.worst >= -slack,
            worst_margin: self.worst,
            worst_point: self.at,
        }
    }
}

/// Checks the three lower bounds on the gap function at grid resolution:
/// f(x) ≥ x/e on [0, e); f(x) ≥ e²/4 + (2 − e/4)(x − e) on [e, 2e); and
/// for each 2 ≤ m ≤ m_max and x ∈ [me, (m+1)e),
/// e^{x/e} − min{(x/m)^m, (x/(m+1))^{m+1}} ≤ (1/m) · min{…}.
pub fn verify_gap_bounds(grid: &GridSpec) -> Result<GridReport> {
    grid.validate()?;
    let mut sweep = Sweep::new();
    let mut x = 0.0;
    while x < E {
        sweep.record(piecewise_f(x)? - x / E, &[1.0, x]);
        x += grid.k_step;
    }
    let mut x = E;
    while x < 2.0 * E {
        let line = E * E / 4.0 + (2.0 - E / 4.0) * (x - E);
        sweep.record(piecewise_f(x)? - line, &[2.0, x]);
        x += grid.k_step;
    }
    for m in 2..=grid.m_max.max(2) {
        let mf = m as f64;
        let mut x = mf * E;
        while x < (mf + 1.0) * E {
            let smaller = (x / mf).powf(mf).min((x / (mf + 1.0)).powf(mf + 1.0));
            let margin = (1.0 + 1.0 / mf) * smaller - (x / E).exp();
            sweep.record(margin, &[3.0, x]);
            x += grid.k_step;
        }
    }
    Ok(sweep.into_report("gap-bounds", grid.slack))
}

/// Two-term interpolation: for K on the grid and λ ∈ [0, 1),
/// (K/m)^m + (K/(m+1))^{m+1} ≥ (K/(m+λ))^{m+λ} for 1 ≤ m ≤ m_max, and
/// 1 + K ≥ (K/λ)^λ for m = 0, where (K/λ)^λ at λ = 0 means its limit 1.
pub fn verify_interpolation(grid: &GridSpec) -> Result<GridReport> {
    grid.validate()?;
    let mut sweep = Sweep::new();
    let lambdas: Vec<f64> = {
        let mut v = Vec::new();
        let mut j = 0u32;
        loop {
            let l = j as f64 * grid.lambda_step;
            if l >= 1.0 {
                break;
            }
            v.push(l);
            j += 1;
        }
        v
    };
    let mut k = grid.k_step;
    while k <= grid.k_max {
        for &lambda in &lambdas {
            let fractional = |base: f64| {
                if base == 0.0 {
                    1.0
                } else {
                    (k / base).powf(base)
                }
            };
            sweep.record(1.0 + k - fractional(lambda), &[0.0, lambda, k]);
            for m in 1..=grid.m_max {
                let mf = m as f64;
                let lhs = (k / mf).powf(mf) + (k / (mf + 1.0)).powf(mf + 1.0);
                let rhs = (k / (mf + lambda)).powf(mf + lambda);
                sweep.record(lhs - rhs, &[mf, lambda, k]);
            }
        }
        k += grid.k_step;
    }
    Ok(sweep.into_report("interpolation", grid.slack))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_function_values() {
        assert_eq!(piecewise_f(0.0).unwrap(), 0.0);
        assert!((piecewise_f(E).unwrap() - E * E / 4.0).abs() < 1e-12);
        assert!(piecewise_f(1.0).unwrap() >= 1.0 / E);
        assert!(piecewise_f(-0.5).is_err());
        // the piece index follows the interval [me, (m+1)e)
        let x = 2.5 * E;
        let by_hand = (x / 2.0).powi(2) + (x / 3.0).powi(3) - (x / E).exp();
        assert!((piecewise_f(x).unwrap() - by_hand).abs() < 1e-12);
    }

    #[test]
    fn gap_grid_passes() {
        let report = verify_gap_bounds(&GridSpec::default_gap()).unwrap();
        assert!(
            report.pass,
            "worst {} at {:?}",
            report.worst_margin, report.worst_point
        );
        assert!(report.points_checked > 20_000);
        assert!(report.worst_margin >= -1e-9);
    }

    #[test]
    fn interpolation_grid_passes() {
        let report = verify_interpolation(&GridSpec::default_interp()).unwrap();
        assert!(
            report.pass,
            "worst {} at {:?}",
            report.worst_margin, report.worst_point
        );
        assert!(report.points_checked > 100_000);
    }

    #[test]
    fn interpolation_spot_values() {
        // m = 1, K = e, λ = 1/2: both sides evaluated directly
        let lhs = E + (E / 2.0) * (E / 2.0);
        let rhs = (E / 1.5_f64).powf(1.5);
        assert!((lhs - 4.565).abs() < 1e-3);
        assert!((rhs - 2.439).abs() < 1e-3);
        assert!(lhs >= rhs);
        // m = 0, λ = 0: the right side means its limit 1
        let report = verify_interpolation(&GridSpec {
            k_max: 1.0,
            k_step: 0.25,
            m_max: 0,
            lambda_step: 0.5,
            slack: 0.0,
        })
        .unwrap();
        assert!(report.pass);
    }

    #[test]
    fn grid_validation() {
        let mut bad = GridSpec::default_gap();
        bad.slack = 1.0;
        assert!(verify_gap_bounds(&bad).is_err());
        let mut bad = GridSpec::default_interp();
        bad.k_step = -1.0;
        assert!(verify_interpolation(&bad).is_err());
        let mut bad = GridSpec::default_interp();
        bad.lambda_step = 0.9;
        assert!(verify_interpolation(&bad).is_err());
    }

    #[test]
    fn reports_serialize() {
        let report = verify_gap_bounds(&GridSpec::default_gap()).unwrap();
        let doc: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(doc["proposition"], "gap-bounds");
        assert!(doc["points_checked"].as_u64().unwrap() > 0);
        assert_eq!(doc["pass"], true);
    }
}
