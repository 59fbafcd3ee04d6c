//! Reservoir memory kernels α(τ) and their frequency-domain transforms.
//!
//! The kernel is the environment two-point function that drives dissipation;
//! its decay time τ_c is what separates Markovian (τ_c ≈ 0) from structured
//! reservoirs. Variants:
//!
//! - `Markov`: α(τ) = Γ δ(τ). No pointwise value exists; every consumer goes
//!   through the analytic path (memory coefficients equal Γ with full
//!   endpoint weight, Laplace transform is flat).
//! - `PeriodicBand3D`: g² e^{-iAτ} J₀³(Bτ/3), the closed form for a cubic
//!   lattice with a cosine band of center A and half-width B.
//! - `ParabolicEdge`: √β e^{i(π/4 - ω_c τ)} / τ^{3/2}, the band-edge
//!   long-time form. The τ^{-3/2} divergence at the origin is not
//!   integrable, so the kernel is frozen at its τ_min value below τ_min.
//! - `Tabulated`: uniform samples loaded from CSV, linearly interpolated,
//!   zero beyond the table.
//!
//! Kernels carry absolute frequencies; dynamics run in a rotating frame and
//! set `frame_shift` so every evaluation is multiplied by e^{+i·shift·τ}.

use crate::grid::TimeGrid;
use crate::special::bessel_j0;
use crate::{Error, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::{FRAC_PI_4, PI};

#[derive(Debug, Clone, PartialEq)]
pub enum KernelShape {
    Markov {
        gamma: f64,
    },
    PeriodicBand3D {
        /// Coupling amplitude g₃D (the kernel scales as g₃D²).
        g3d: f64,
        /// Band center A.
        center: f64,
        /// Band half-width B; the band spans [A − B, A + B].
        half_width: f64,
    },
    ParabolicEdge {
        /// √β, the τ^{-3/2} amplitude.
        sqrt_beta: f64,
        /// Band-edge frequency ω_c.
        edge: f64,
        /// Short-time cutoff; α is frozen at α(τ_min) for τ < τ_min.
        tau_min: f64,
    },
    Tabulated {
        /// Uniform τ spacing of the samples.
        dtau: f64,
        /// α at τ = 0, dτ, 2dτ, …
        values: Vec<C64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationKernel {
    pub shape: KernelShape,
    /// Rotating-frame bookkeeping: evaluations carry e^{+i·frame_shift·τ}.
    pub frame_shift: f64,
}

impl CorrelationKernel {
    pub fn new(shape: KernelShape) -> Result<Self> {
        match &shape {
            KernelShape::Markov { gamma } if *gamma < 0.0 => {
                return Err(Error::KernelParameter(format!("gamma must be >= 0, got {gamma}")))
            }
            KernelShape::PeriodicBand3D { g3d, half_width, .. } => {
                if *g3d < 0.0 {
                    return Err(Error::KernelParameter(format!("g3d must be >= 0, got {g3d}")));
                }
                if *half_width <= 0.0 {
                    return Err(Error::KernelParameter(format!(
                        "half_width must be > 0, got {half_width}"
                    )));
                }
            }
            KernelShape::ParabolicEdge { tau_min, .. } if *tau_min <= 0.0 => {
                return Err(Error::KernelParameter(format!(
                    "tau_min must be > 0, got {tau_min}"
                )));
            }
            KernelShape::Tabulated { dtau, values } => {
                if *dtau <= 0.0 {
                    return Err(Error::TabulatedKernel(format!(
                        "spacing must be > 0, got {dtau}"
                    )));
                }
                if values.len() < 2 {
                    return Err(Error::TabulatedKernel("need at least 2 samples".into()));
                }
            }
            _ => {}
        }
        Ok(Self { shape, frame_shift: 0.0 })
    }

    pub fn with_frame_shift(mut self, shift: f64) -> Self {
        self.frame_shift = shift;
        self
    }

    pub fn is_markov(&self) -> bool {
        matches!(self.shape, KernelShape::Markov { .. })
    }

    pub fn markov_gamma(&self) -> Option<f64> {
        match self.shape {
            KernelShape::Markov { gamma } => Some(gamma),
            _ => None,
        }
    }

    /// α(τ) for τ ≥ 0 (one-sided; negative lags are never requested).
    pub fn evaluate(&self, tau: f64) -> Result<C64> {
        let bare = match &self.shape {
            KernelShape::Markov { .. } => return Err(Error::MarkovPointwise),
            KernelShape::PeriodicBand3D { g3d, center, half_width } => {
                let j = bessel_j0(half_width * tau / 3.0);
                C64::from_polar(g3d * g3d * j * j * j, -center * tau)
            }
            KernelShape::ParabolicEdge { sqrt_beta, edge, tau_min } => {
                let t_eff = tau.max(*tau_min);
                C64::from_polar(sqrt_beta / t_eff.powf(1.5), FRAC_PI_4 - edge * tau)
            }
            KernelShape::Tabulated { dtau, values } => {
                let x = tau / dtau;
                let i = x.floor() as usize;
                if i + 1 >= values.len() {
                    if i == values.len() - 1 && (x - i as f64).abs() < 1e-9 {
                        values[i]
                    } else {
                        C64::new(0.0, 0.0)
                    }
                } else {
                    let w = x - i as f64;
                    values[i] * (1.0 - w) + values[i + 1] * w
                }
            }
        };
        Ok(bare * C64::from_polar(1.0, self.frame_shift * tau))
    }

    /// Kernel samples on all grid nodes (frame shift included).
    pub fn samples(&self, grid: &TimeGrid) -> Result<Vec<C64>> {
        (0..grid.len()).map(|i| self.evaluate(grid.time(i))).collect()
    }

    /// Inverse correlation-time estimate used for grid-resolution warnings:
    /// the fastest frequency content the quadrature must resolve, in the
    /// kernel's working frame.
    pub fn inverse_correlation_time(&self) -> f64 {
        match &self.shape {
            KernelShape::Markov { .. } => 0.0,
            KernelShape::PeriodicBand3D { center, half_width, .. } => {
                (center - self.frame_shift).abs() + half_width
            }
            KernelShape::ParabolicEdge { edge, tau_min, .. } => {
                (edge - self.frame_shift).abs() + 0.1 / tau_min
            }
            KernelShape::Tabulated { dtau, values } => {
                // Dominant rotation from the lag-1 autophase plus a decay rate
                // from the 5% envelope crossing.
                let mut acc = C64::new(0.0, 0.0);
                for w in values.windows(2) {
                    acc += w[1] * w[0].conj();
                }
                let rotation = (acc.arg() / dtau).abs();
                let peak = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
                let decay_idx = values
                    .iter()
                    .position(|z| z.norm() < 0.05 * peak)
                    .unwrap_or(values.len());
                let decay = 1.0 / (decay_idx.max(1) as f64 * dtau);
                rotation + decay
            }
        }
    }

    /// A tabulated all-zero kernel (decoupled reservoir) on the given span.
    pub fn decoupled(span: f64) -> Self {
        Self {
            shape: KernelShape::Tabulated {
                dtau: span / 16.0,
                values: vec![C64::new(0.0, 0.0); 17],
            },
            frame_shift: 0.0,
        }
    }

    /// Load a tabulated kernel from CSV with a header line and rows
    /// `tau,re,im`. The τ column must start at 0 and be uniformly spaced.
    pub fn from_csv(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut taus = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if lineno == 0 || line.trim().is_empty() {
                continue; // header
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::TabulatedKernel(format!(
                    "line {}: expected 3 columns tau,re,im, got {}",
                    lineno + 1,
                    fields.len()
                )));
            }
            let parse = |s: &str, what: &str| {
                s.parse::<f64>().map_err(|_| {
                    Error::TabulatedKernel(format!("line {}: bad {what} '{s}'", lineno + 1))
                })
            };
            taus.push(parse(fields[0], "tau")?);
            values.push(C64::new(parse(fields[1], "re")?, parse(fields[2], "im")?));
        }
        if taus.len() < 2 {
            return Err(Error::TabulatedKernel("need at least 2 data rows".into()));
        }
        if taus[0].abs() > 1e-12 {
            return Err(Error::TabulatedKernel(format!(
                "tau column must start at 0, got {}",
                taus[0]
            )));
        }
        let dtau = taus[1] - taus[0];
        for (i, w) in taus.windows(2).enumerate() {
            let step = w[1] - w[0];
            if (step - dtau).abs() > 1e-9 * dtau.abs().max(1e-300) {
                return Err(Error::TabulatedKernel(format!(
                    "non-uniform tau spacing at row {} ({} vs {})",
                    i + 2,
                    step,
                    dtau
                )));
            }
        }
        Self::new(KernelShape::Tabulated { dtau, values })
    }
}

/// Prefix memory coefficients F(φ; t) = ∫₀^t α(τ) e^{iφτ} dτ on a grid,
/// accumulated incrementally by trapezoid (O(1) per step once the kernel
/// samples are in hand). The Markov kernel short-circuits to the analytic
/// full-endpoint-weight value F = Γ for every t > 0.
#[derive(Debug, Clone)]
pub struct MemoryTable {
    pub phases: Vec<f64>,
    /// `values[p][i]` = F(phases[p]; t_i).
    pub values: Vec<Vec<C64>>,
}

impl MemoryTable {
    pub fn compute(kernel: &CorrelationKernel, phases: &[f64], grid: &TimeGrid) -> Result<Self> {
        if let Some(gamma) = kernel.markov_gamma() {
            let g = C64::new(gamma, 0.0);
            let values = phases
                .iter()
                .map(|_| {
                    let mut v = vec![g; grid.len()];
                    v[0] = C64::new(0.0, 0.0);
                    v
                })
                .collect();
            return Ok(Self { phases: phases.to_vec(), values });
        }
        let samples = kernel.samples(grid)?;
        let dt = grid.dt();
        let values = phases
            .iter()
            .map(|&phase| {
                let mut acc = C64::new(0.0, 0.0);
                let mut out = Vec::with_capacity(grid.len());
                out.push(acc);
                let mut prev = samples[0]; // e^{i phase 0} = 1
                for i in 1..grid.len() {
                    let cur = samples[i] * C64::from_polar(1.0, phase * grid.time(i));
                    acc += (prev + cur) * (0.5 * dt);
                    out.push(acc);
                    prev = cur;
                }
                out
            })
            .collect();
        Ok(Self { phases: phases.to_vec(), values })
    }

    pub fn at(&self, phase_idx: usize, node: usize) -> C64 {
        self.values[phase_idx][node]
    }
}

/// Single memory coefficient F(φ; t); t must be a grid node.
pub fn memory_coefficient(
    kernel: &CorrelationKernel,
    phase: f64,
    t: f64,
    grid: &TimeGrid,
) -> Result<C64> {
    let idx = grid.index_of(t)?;
    let table = MemoryTable::compute(kernel, &[phase], grid)?;
    Ok(table.at(0, idx))
}

/// How far to integrate a Laplace transform.
#[derive(Debug, Clone, Copy)]
pub enum LaplaceHorizon {
    Finite(f64),
    /// Extend the window in doubling blocks until the running integral
    /// changes by less than `tol` relative, or the cap is hit.
    Auto { tol: f64, cap: f64 },
}

/// Result of a kernel Laplace transform, with tail-convergence metadata.
#[derive(Debug, Clone, Copy)]
pub struct LaplaceValue {
    pub value: C64,
    /// Relative change of the running integral over the last window.
    pub tail_change: f64,
    pub converged: bool,
}

/// One-sided transform α(ω) = ∫₀^T α(τ) e^{+iωτ} dτ.
///
/// Sign convention: the transform "at ω" pairs e^{+iωτ} with the kernel, so
/// a reservoir line at absolute frequency ω₀ produces a peak of α(ω) at
/// ω = ω₀. The transform "at −ω" is its conjugate pairing. ω is measured in
/// the kernel's working frame (subtract `frame_shift` from absolute
/// frequencies, or equivalently pass detunings for a shifted kernel).
pub fn kernel_laplace(
    kernel: &CorrelationKernel,
    omega: f64,
    horizon: LaplaceHorizon,
) -> Result<LaplaceValue> {
    if let Some(gamma) = kernel.markov_gamma() {
        return Ok(LaplaceValue {
            value: C64::new(gamma, 0.0),
            tail_change: 0.0,
            converged: true,
        });
    }
    let fastest = (omega.abs() + kernel.inverse_correlation_time() + 1.0).max(1.0);
    let dtau = (2.0 * PI / fastest) / 64.0;
    let integrate_to = |t_end: f64| -> Result<(C64, f64)> {
        let steps = (t_end / dtau).ceil() as usize;
        let steps = steps.max(16);
        let h = t_end / steps as f64;
        let mut acc = C64::new(0.0, 0.0);
        let mut acc_90 = C64::new(0.0, 0.0);
        let cut = (0.9 * steps as f64) as usize;
        let mut prev = kernel.evaluate(0.0)?;
        for i in 1..=steps {
            let tau = i as f64 * h;
            let cur = kernel.evaluate(tau)? * C64::from_polar(1.0, omega * tau);
            acc += (prev + cur) * (0.5 * h);
            if i == cut {
                acc_90 = acc;
            }
            prev = cur;
        }
        let tail = (acc - acc_90).norm() / acc.norm().max(1e-300);
        Ok((acc, tail))
    };
    match horizon {
        LaplaceHorizon::Finite(t_end) => {
            let (value, tail_change) = integrate_to(t_end)?;
            Ok(LaplaceValue { value, tail_change, converged: tail_change <= 1e-3 })
        }
        LaplaceHorizon::Auto { tol, cap } => {
            let mut t_end = (64.0 * 2.0 * PI / fastest).min(cap);
            let (mut value, mut tail) = integrate_to(t_end)?;
            while t_end < cap {
                t_end = (2.0 * t_end).min(cap);
                let (next, next_tail) = integrate_to(t_end)?;
                tail = (next - value).norm() / next.norm().max(1e-300);
                value = next;
                let _ = next_tail;
                if tail < tol {
                    return Ok(LaplaceValue { value, tail_change: tail, converged: true });
                }
            }
            Ok(LaplaceValue { value, tail_change: tail, converged: tail < tol })
        }
    }
}

/// Numerically inverted spectral density J(ω) over a frequency grid.
///
/// J(ω) = (1/π) Re ∫₀^W α(τ) e^{iωτ} dτ, the two-sided inversion of the
/// kernel using α(−τ) = α*(τ). For the Markov kernel the analytic flat
/// density Γ/(2π) is returned (the δ sits at the integration boundary, so
/// the two-sided convention halves the one-sided weight). A consistency
/// probe for band support in tests, not part of the spectrum pipelines.
pub fn spectral_density_check(
    kernel: &CorrelationKernel,
    omegas: &[f64],
    window: f64,
) -> Result<Vec<(f64, f64)>> {
    if let Some(gamma) = kernel.markov_gamma() {
        return Ok(omegas.iter().map(|&w| (w, gamma / (2.0 * PI))).collect());
    }
    let resolution = omegas
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(f64::INFINITY, f64::min);
    if resolution.is_finite() && window * resolution < 2.0 * PI {
        return Err(Error::WindowTooShort { window, resolution });
    }
    omegas
        .iter()
        .map(|&w| {
            let lap = kernel_laplace(kernel, w, LaplaceHorizon::Finite(window))?;
            Ok((w, lap.value.re / PI))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::adaptive_simpson;

    fn band_kernel() -> CorrelationKernel {
        CorrelationKernel::new(KernelShape::PeriodicBand3D {
            g3d: 1.0,
            center: 1.0,
            half_width: 1.0,
        })
        .unwrap()
    }

    #[test]
    fn band_kernel_at_zero() {
        // J0(0) = 1, so alpha(0) = g^2.
        let k = band_kernel();
        let v = k.evaluate(0.0).unwrap();
        assert!((v - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn markov_pointwise_rejected() {
        let k = CorrelationKernel::new(KernelShape::Markov { gamma: 0.5 }).unwrap();
        assert!(matches!(k.evaluate(1.0), Err(Error::MarkovPointwise)));
    }

    #[test]
    fn envelope_slope_is_minus_three_halves() {
        // Log-log least-squares fit through the local maxima of |alpha(tau)|
        // over tau in [50, 500]; the Bessel asymptotics force slope -3/2.
        let k = band_kernel();
        let slope = envelope_slope(&k, 50.0, 500.0);
        assert!(
            (slope + 1.5).abs() < 0.1,
            "envelope slope {slope}, want -1.5 +- 0.1"
        );
    }

    /// Least-squares log-log slope of the |alpha| envelope maxima.
    pub(crate) fn envelope_slope(k: &CorrelationKernel, t0: f64, t1: f64) -> f64 {
        let maxima = envelope_maxima(k, t0, t1);
        assert!(maxima.len() > 10, "too few envelope maxima");
        let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
        for &(t, v) in &maxima {
            let (x, y) = (t.ln(), v.ln());
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        let n = maxima.len() as f64;
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    }

    pub(crate) fn envelope_maxima(
        k: &CorrelationKernel,
        t0: f64,
        t1: f64,
    ) -> Vec<(f64, f64)> {
        let dt = 0.02;
        let n = ((t1 - t0) / dt) as usize;
        let samples: Vec<f64> = (0..=n)
            .map(|i| k.evaluate(t0 + i as f64 * dt).unwrap().norm())
            .collect();
        let mut maxima = Vec::new();
        for i in 1..n {
            if samples[i] > samples[i - 1] && samples[i] >= samples[i + 1] {
                maxima.push((t0 + i as f64 * dt, samples[i]));
            }
        }
        maxima
    }

    #[test]
    fn parabolic_tracks_band_edge_asymptotics() {
        // With sqrt(beta) = g^2 (6/B)^{3/2} / 8, the parabolic kernel is the
        // lower band-edge component of the 3D kernel's Hankel asymptotics —
        // whose amplitude over tau^{-3/2} carries an extra (1/pi)^{3/2}. The
        // ratio of |alpha_parabolic| to the full 3D envelope is therefore the
        // constant pi^{3/2}/8 ≈ 0.696, not 1: the two kernels share the
        // power law exactly while the printed constant absorbs pi^{3/2}.
        let g3d: f64 = 1.0;
        let b: f64 = 1.0;
        let sqrt_beta = g3d * g3d * (6.0 / b).powf(1.5) / 8.0;
        let par = CorrelationKernel::new(KernelShape::ParabolicEdge {
            sqrt_beta,
            edge: 0.0,
            tau_min: 0.1,
        })
        .unwrap();
        let band = band_kernel();
        let expected = std::f64::consts::PI.powf(1.5) / 8.0;
        for &(t, env) in envelope_maxima(&band, 100.0, 1000.0).iter().step_by(7) {
            let ratio = par.evaluate(t).unwrap().norm() / env;
            assert!(
                (ratio / expected - 1.0).abs() < 0.10,
                "at tau={t}: ratio {ratio}, want {expected} within 10%"
            );
        }
        // Same decay law: |alpha_parabolic| is monotone (its own envelope),
        // so fit the log-log slope on raw samples.
        let (mut sx, mut sy, mut sxx, mut sxy, mut n) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for i in 0..200 {
            let t = 50.0 * (10.0f64).powf(i as f64 / 199.0);
            let (x, y) = (t.ln(), par.evaluate(t).unwrap().norm().ln());
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            n += 1.0;
        }
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!((slope + 1.5).abs() < 1e-9);
    }

    #[test]
    fn parabolic_frozen_below_tau_min() {
        let k = CorrelationKernel::new(KernelShape::ParabolicEdge {
            sqrt_beta: 1.0,
            edge: 0.3,
            tau_min: 0.2,
        })
        .unwrap();
        let at_min = k.evaluate(0.2).unwrap().norm();
        for tau in [0.0, 0.05, 0.15] {
            assert!((k.evaluate(tau).unwrap().norm() - at_min).abs() < 1e-12);
        }
    }

    #[test]
    fn memory_coefficient_markov_full_weight() {
        let k = CorrelationKernel::new(KernelShape::Markov { gamma: 0.7 }).unwrap();
        let grid = TimeGrid::new(10.0, 100).unwrap();
        for (phase, t) in [(0.0, 0.1), (2.2, 5.0), (-1.0, 10.0)] {
            let f = memory_coefficient(&k, phase, t, &grid).unwrap();
            assert!((f - C64::new(0.7, 0.0)).norm() < 1e-15);
        }
        let f0 = memory_coefficient(&k, 1.0, 0.0, &grid).unwrap();
        assert!(f0.norm() < 1e-15);
    }

    #[test]
    fn memory_coefficient_zero_at_origin() {
        let grid = TimeGrid::new(10.0, 64).unwrap();
        let f = memory_coefficient(&band_kernel(), 0.8, 0.0, &grid).unwrap();
        assert!(f.norm() < 1e-15);
    }

    #[test]
    fn memory_coefficient_off_grid_errors() {
        let grid = TimeGrid::new(10.0, 100).unwrap();
        assert!(memory_coefficient(&band_kernel(), 0.0, 0.123, &grid).is_err());
    }

    #[test]
    fn incremental_matches_batch_trapezoid() {
        let k = band_kernel().with_frame_shift(0.4);
        let grid = TimeGrid::new(20.0, 400).unwrap();
        let phase = 1.1;
        let table = MemoryTable::compute(&k, &[phase], &grid).unwrap();
        // Batch trapezoid over the same nodes.
        let samples = k.samples(&grid).unwrap();
        let dt = grid.dt();
        for idx in [1, 37, 200, 400] {
            let mut batch = C64::new(0.0, 0.0);
            for i in 0..idx {
                let a = samples[i] * C64::from_polar(1.0, phase * grid.time(i));
                let b = samples[i + 1] * C64::from_polar(1.0, phase * grid.time(i + 1));
                batch += (a + b) * (0.5 * dt);
            }
            assert!((table.at(0, idx) - batch).norm() < 1e-12);
        }
    }

    #[test]
    fn memory_coefficient_converges_to_laplace() {
        // F(0; t) for large t approaches the zero-frequency Laplace value,
        // cross-checked against independent adaptive quadrature. The
        // trapezoid error is O(dt^2) ~ 3e-5 at dt = 0.02 and must shrink 4x
        // when the step halves.
        let k = band_kernel();
        let re = adaptive_simpson(&|t| k.evaluate(t).unwrap().re, 0.0, 400.0, 1e-9);
        let im = adaptive_simpson(&|t| k.evaluate(t).unwrap().im, 0.0, 400.0, 1e-9);
        let exact = C64::new(re, im);
        let err_at = |steps: usize| {
            let grid = TimeGrid::new(400.0, steps).unwrap();
            (memory_coefficient(&k, 0.0, 400.0, &grid).unwrap() - exact).norm()
        };
        let coarse = err_at(20_000);
        let fine = err_at(40_000);
        assert!(coarse < 2e-4, "trapezoid error {coarse} too large");
        assert!(fine < 0.3 * coarse, "no O(dt^2) convergence: {coarse} -> {fine}");
    }

    #[test]
    fn laplace_markov_flat() {
        let k = CorrelationKernel::new(KernelShape::Markov { gamma: 0.3 }).unwrap();
        for w in [-5.0, 0.0, 2.0] {
            let lap = kernel_laplace(&k, w, LaplaceHorizon::Finite(10.0)).unwrap();
            assert!((lap.value - C64::new(0.3, 0.0)).norm() < 1e-15);
            assert!(lap.converged);
        }
    }

    #[test]
    fn laplace_band_support() {
        // |alpha(omega)| is largest inside [A-B, A+B] = [0, 2] and tiny far
        // below the band.
        let k = band_kernel();
        let horizon = LaplaceHorizon::Finite(800.0);
        let in_band: f64 = [0.3, 0.7, 1.0, 1.5]
            .iter()
            .map(|&w| kernel_laplace(&k, w, horizon).unwrap().value.norm())
            .fold(0.0, f64::max);
        // Outside the band only the principal-value tail survives; it falls
        // off as 1/detuning, so "far below" means several bandwidths away.
        let below = kernel_laplace(&k, -9.0, horizon).unwrap().value.norm();
        let above = kernel_laplace(&k, 11.0, horizon).unwrap().value.norm();
        assert!(below < 0.05 * in_band, "below-gap leakage {below} vs peak {in_band}");
        assert!(above < 0.05 * in_band);
        // And just outside the edge the transform is already well below the
        // in-band peak.
        let near_below = kernel_laplace(&k, -0.5, horizon).unwrap().value.norm();
        assert!(near_below < 0.5 * in_band);
    }

    #[test]
    fn spectral_density_band_support_and_positivity() {
        let k = band_kernel();
        let omegas: Vec<f64> = (0..121).map(|i| -1.0 + i as f64 * 0.035).collect();
        let table = spectral_density_check(&k, &omegas, 600.0).unwrap();
        let inside: f64 = table
            .iter()
            .filter(|(w, _)| *w > 0.0 && *w < 2.0)
            .map(|(_, j)| j.abs())
            .sum();
        let outside: f64 = table
            .iter()
            .filter(|(w, _)| *w <= 0.0 || *w >= 2.0)
            .map(|(_, j)| j.abs())
            .sum();
        assert!(outside < 0.05 * inside, "leakage {outside} vs {inside}");
        let min = table.iter().map(|(_, j)| *j).fold(f64::INFINITY, f64::min);
        let max = table.iter().map(|(_, j)| *j).fold(0.0, f64::max);
        assert!(min > -0.02 * max, "density dips to {min} (max {max})");
    }

    #[test]
    fn spectral_density_markov_flat() {
        let k = CorrelationKernel::new(KernelShape::Markov { gamma: 1.4 }).unwrap();
        let table = spectral_density_check(&k, &[-1.0, 0.0, 3.0], 100.0).unwrap();
        for (_, j) in table {
            assert!((j - 1.4 / (2.0 * PI)).abs() < 1e-15);
        }
    }

    #[test]
    fn spectral_density_window_too_short() {
        let omegas = vec![0.0, 0.001];
        assert!(matches!(
            spectral_density_check(&band_kernel(), &omegas, 50.0),
            Err(Error::WindowTooShort { .. })
        ));
    }

    #[test]
    fn frame_shift_rotates_samples() {
        let k = band_kernel();
        let shifted = band_kernel().with_frame_shift(0.9);
        let tau = 2.5;
        let want = k.evaluate(tau).unwrap() * C64::from_polar(1.0, 0.9 * tau);
        assert!((shifted.evaluate(tau).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn tabulated_csv_roundtrip() {
        let dir = std::env::temp_dir().join("pcfluor_kernel_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("kernel.csv");
        let mut text = String::from("tau,re,im\n");
        for i in 0..32 {
            let tau = i as f64 * 0.25;
            text.push_str(&format!("{},{},{}\n", tau, (-tau).exp(), -0.1 * tau));
        }
        std::fs::write(&path, text).unwrap();
        let k = CorrelationKernel::from_csv(&path).unwrap();
        let v = k.evaluate(1.0).unwrap();
        assert!((v - C64::new((-1.0f64).exp(), -0.1)).norm() < 1e-12);
        // interpolation halfway between nodes
        let v = k.evaluate(0.125).unwrap();
        let want = 0.5 * ((0.0f64).exp() + (-0.25f64).exp());
        assert!((v.re - want).abs() < 1e-12);
    }

    #[test]
    fn tabulated_csv_rejects_nonuniform() {
        let dir = std::env::temp_dir().join("pcfluor_kernel_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.csv");
        std::fs::write(&path, "tau,re,im\n0,1,0\n0.1,0.9,0\n0.3,0.8,0\n").unwrap();
        assert!(CorrelationKernel::from_csv(&path).is_err());
    }
}
