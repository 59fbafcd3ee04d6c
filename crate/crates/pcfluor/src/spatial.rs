//! Distance-dependent detector kernel 𝒮(ω) for the photonic crystal.
//!
//! Near a parabolic band edge ω(k) = ω_c + 𝒜(k − k₀)², the far-field
//! transform of the atom–detector propagator is
//!
//!   𝒮(ω) = Q 2π² / (i d 𝒜) · e^{−d/l}     (gap side, ω < ω_c)
//!   𝒮(ω) = Q 2π² / (i d 𝒜) · e^{−i d/l}   (band side, ω > ω_c)
//!
//! with localization length l = sqrt(𝒜 / |ω − ω_c|). In the gap the emission
//! is evanescent and decays exponentially with the detector distance d; in
//! the band only a propagation phase accumulates, so |𝒮| is d-independent
//! apart from the 1/d geometric factor.

use crate::{Error, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Distances below this many lattice periods violate the far-field
/// assumption behind the analytic kernel; evaluation still proceeds but a
/// warning is attached to run metadata.
pub const FAR_FIELD_FLOOR: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialKernelTransform {
    /// Complex prefactor Q (geometry, dipole orientations, lattice volume).
    pub q: C64,
    /// Dispersion curvature 𝒜 > 0.
    pub curvature: f64,
    /// Band-edge frequency ω_c.
    pub edge: f64,
    /// Atom–detector distance in lattice periods, d > 0.
    pub distance: f64,
}

impl SpatialKernelTransform {
    pub fn new(q: C64, curvature: f64, edge: f64, distance: f64) -> Result<Self> {
        if distance <= 0.0 {
            return Err(Error::NonPositiveDistance(distance));
        }
        if curvature <= 0.0 {
            return Err(Error::KernelParameter(format!(
                "dispersion curvature must be > 0, got {curvature}"
            )));
        }
        Ok(Self { q, curvature, edge, distance })
    }

    /// Localization length l(ω) = sqrt(𝒜 / |ω − ω_c|).
    pub fn localization_length(&self, omega: f64) -> f64 {
        (self.curvature / (omega - self.edge).abs()).sqrt()
    }

    /// 𝒮(ω) at absolute frequency ω. At ω = ω_c both branches reduce to the
    /// common prefactor (l → ∞).
    pub fn evaluate(&self, omega: f64) -> C64 {
        let prefactor = C64::new(self.q.re, self.q.im) * 2.0 * PI * PI
            / (C64::new(0.0, 1.0) * self.distance * self.curvature);
        if omega == self.edge {
            return prefactor;
        }
        let x = self.distance / self.localization_length(omega);
        if omega < self.edge {
            prefactor * (-x).exp()
        } else {
            prefactor * C64::from_polar(1.0, -x)
        }
    }

    /// Warning when the far-field assumption is stretched.
    pub fn far_field_warning(&self) -> Option<String> {
        (self.distance < FAR_FIELD_FLOOR).then(|| {
            format!(
                "detector distance d = {} is below the far-field floor of {} lattice periods",
                self.distance, FAR_FIELD_FLOOR
            )
        })
    }

    pub fn with_distance(&self, distance: f64) -> Result<Self> {
        Self::new(self.q, self.curvature, self.edge, distance)
    }
}

/// One symmetry point of the band edge, with the dipole angles θ (emitter)
/// and θ_D (detector) measured from k₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryPoint {
    pub k0: [f64; 3],
    pub theta: f64,
    pub theta_d: f64,
}

/// Geometric prefactor Q = γ (a/2π)³ Σᵢ e^{i k₀ⁱ·d} sin²θᵢ sin²θᵢ^D over the
/// symmetry points of the band edge.
pub fn q_constant(
    gamma_scale: f64,
    lattice_period: f64,
    points: &[SymmetryPoint],
    displacement: [f64; 3],
) -> Result<C64> {
    if points.is_empty() {
        return Err(Error::EmptySymmetryPoints);
    }
    let d_norm = displacement.iter().map(|x| x * x).sum::<f64>().sqrt();
    if d_norm <= 0.0 {
        return Err(Error::NonPositiveDistance(d_norm));
    }
    let cell = (lattice_period / (2.0 * PI)).powi(3);
    let mut sum = C64::new(0.0, 0.0);
    for p in points {
        let phase = p.k0[0] * displacement[0] + p.k0[1] * displacement[1] + p.k0[2] * displacement[2];
        let weight = p.theta.sin().powi(2) * p.theta_d.sin().powi(2);
        sum += C64::from_polar(weight, phase);
    }
    Ok(sum * gamma_scale * cell)
}
