//! Uniform time and frequency grids.

use crate::{Error, Result};

/// Uniform grid on [0, T] with N steps (N + 1 nodes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub horizon: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn new(horizon: f64, steps: usize) -> Result<Self> {
        if !(horizon > 0.0) {
            return Err(Error::InvalidGrid(format!("horizon must be > 0, got {horizon}")));
        }
        if steps < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 steps, got {steps}")));
        }
        Ok(Self { horizon, steps })
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.steps as f64
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.dt()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.time(i))
    }

    /// Node index of t, or an error when t is off the grid (relative
    /// tolerance 1e-9 of a step).
    pub fn index_of(&self, t: f64) -> Result<usize> {
        let dt = self.dt();
        let i = (t / dt).round();
        if i < 0.0 || i > self.steps as f64 || (t - i * dt).abs() > 1e-9 * dt {
            return Err(Error::OffGrid { t, dt });
        }
        Ok(i as usize)
    }

    /// Same grid with the step halved (for convergence checks).
    pub fn refined(&self) -> Self {
        Self {
            horizon: self.horizon,
            steps: self.steps * 2,
        }
    }

    /// Resolution warning: the step must resolve both the dressed splitting
    /// 2Ω and the reservoir memory, dt · max(2Ω, 1/τ_c) < 0.2.
    pub fn resolution_warning(&self, two_omega: f64, inv_tau_c: f64) -> Option<String> {
        let fastest = two_omega.abs().max(inv_tau_c.abs());
        let product = self.dt() * fastest;
        (product >= 0.2).then(|| {
            format!(
                "dt = {:.4} under-resolves the fastest scale {:.4} (dt*scale = {:.3} >= 0.2)",
                self.dt(),
                fastest,
                product
            )
        })
    }
}

/// Uniform frequency grid (absolute frequencies).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl FrequencyGrid {
    pub fn new(start: f64, stop: f64, points: usize) -> Result<Self> {
        if !(stop > start) {
            return Err(Error::InvalidGrid(format!(
                "frequency grid needs stop > start, got [{start}, {stop}]"
            )));
        }
        if points < 3 {
            return Err(Error::InvalidGrid(format!(
                "frequency grid needs at least 3 points, got {points}"
            )));
        }
        Ok(Self { start, stop, points })
    }

    /// Default window around a carrier: [ω₀ − 4Ω, ω₀ + 4Ω] with 801 points,
    /// falling back to a ±width window when the splitting is zero (undriven).
    pub fn around(carrier: f64, omega: f64, fallback_halfwidth: f64) -> Self {
        let half = if omega > 0.0 { 4.0 * omega } else { fallback_halfwidth };
        Self {
            start: carrier - half,
            stop: carrier + half,
            points: 801,
        }
    }

    pub fn bin(&self) -> f64 {
        (self.stop - self.start) / (self.points - 1) as f64
    }

    pub fn value(&self, i: usize) -> f64 {
        self.start + i as f64 * self.bin()
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}
