//! Operator algebra of the dressed two-level atom.
//!
//! Everything downstream works in the dressed basis {|1̃⟩, |2̃⟩}: the basis
//! that diagonalizes the atom + laser Hamiltonian in the frame rotating at
//! the laser frequency. The free dressed Hamiltonian is H̃_S = Ω R₃ with
//! R₃ = R₂₂ − R₁₁, so Heisenberg free rotation is a pure phase on the
//! off-diagonal matrix units. The coupling operator to the radiation field
//! is L = cs R₃ + c² R₁₂ − s² R₂₁, which reduces to σ₁₂ when the laser is
//! switched off.

use crate::{Error, Result};
use num_complex::Complex64 as C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A 2×2 complex operator on the dressed two-level space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemOperator {
    /// Row-major entries; `m[i][j]` = ⟨ĩ+1|X|j̃+1⟩.
    pub m: [[C64; 2]; 2],
}

impl SystemOperator {
    pub const fn new(m: [[C64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn zero() -> Self {
        Self::new([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    /// R₁₁ = |1̃⟩⟨1̃|
    pub fn r11() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ZERO]])
    }

    /// R₁₂ = |1̃⟩⟨2̃| (dressed lowering operator)
    pub fn r12() -> Self {
        Self::new([[ZERO, ONE], [ZERO, ZERO]])
    }

    /// R₂₁ = |2̃⟩⟨1̃|
    pub fn r21() -> Self {
        Self::new([[ZERO, ZERO], [ONE, ZERO]])
    }

    /// R₂₂ = |2̃⟩⟨2̃|
    pub fn r22() -> Self {
        Self::new([[ZERO, ZERO], [ZERO, ONE]])
    }

    /// R₃ = R₂₂ − R₁₁ (dressed inversion)
    pub fn r3() -> Self {
        Self::new([[-ONE, ZERO], [ZERO, ONE]])
    }

    pub fn adjoint(&self) -> Self {
        Self::new([
            [self.m[0][0].conj(), self.m[1][0].conj()],
            [self.m[0][1].conj(), self.m[1][1].conj()],
        ])
    }

    pub fn scale(&self, z: C64) -> Self {
        let mut out = *self;
        for row in &mut out.m {
            for e in row {
                *e *= z;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] += other.m[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] =
                    self.m[i][0] * other.m[0][j] + self.m[i][1] * other.m[1][j];
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest |X - X†| entry; 0 for hermitian operators.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.sub(&self.adjoint());
        d.m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Expectation value ⟨ψ|X|ψ⟩ for a (dressed-basis) state vector.
    pub fn expectation(&self, psi: &[C64; 2]) -> C64 {
        let mut v = [ZERO; 2];
        for i in 0..2 {
            v[i] = self.m[i][0] * psi[0] + self.m[i][1] * psi[1];
        }
        psi[0].conj() * v[0] + psi[1].conj() * v[1]
    }
}

/// XY − YX.
pub fn commutator(x: &SystemOperator, y: &SystemOperator) -> SystemOperator {
    x.mul(y).sub(&y.mul(x))
}

/// The fixed expansion basis (E₁, E₂, E₃, E₄) = (R₁₁, R₁₂, R₂₁, R₂₂).
///
/// Matrix units make both directions of the expansion trivial: the
/// coefficient of R_{ij} is the matrix entry (i, j). Index bookkeeping for
/// products and adjoints lives here so the dynamics module never touches
/// raw 2×2 indices.
pub struct OperatorBasis;

impl OperatorBasis {
    pub const DIM: usize = 4;

    pub fn element(k: usize) -> SystemOperator {
        match k {
            0 => SystemOperator::r11(),
            1 => SystemOperator::r12(),
            2 => SystemOperator::r21(),
            3 => SystemOperator::r22(),
            _ => panic!("basis index out of range"),
        }
    }

    /// Coefficients c_k with X = Σ_k c_k E_k.
    pub fn expand(x: &SystemOperator) -> [C64; 4] {
        [x.m[0][0], x.m[0][1], x.m[1][0], x.m[1][1]]
    }

    pub fn reconstruct(c: &[C64; 4]) -> SystemOperator {
        SystemOperator::new([[c[0], c[1]], [c[2], c[3]]])
    }

    /// Index of E_k† in the basis (adjoint swaps R₁₂ ↔ R₂₁).
    pub fn adjoint_index(k: usize) -> usize {
        match k {
            1 => 2,
            2 => 1,
            k => k,
        }
    }

    /// Product closure E_k E_m = μ E_j: returns Some((j, μ)) or None when the
    /// product vanishes. For matrix units μ is always 1.
    pub fn product(k: usize, m: usize) -> Option<usize> {
        let (ki, kj) = (k / 2, k % 2);
        let (mi, mj) = (m / 2, m % 2);
        (kj == mi).then_some(ki * 2 + mj)
    }
}

/// Dressing parameters of a laser-driven atom.
///
/// Ω = sqrt(ε² + Δ_SL²/4) is the generalized Rabi frequency; the dressed
/// splitting is 2Ω. The mixing angle φ ∈ [0, π/2] fixes c = cos φ ≥ 0 and
/// s = sin φ ≥ 0 (any other branch only rephases the dressed states).
#[derive(Debug, Clone, Copy)]
pub struct DressedAtom {
    /// Bare Rabi coupling ε ≥ 0.
    pub rabi: f64,
    /// Atom–laser detuning Δ_SL = ω_S − ω_L.
    pub detuning: f64,
    /// Laser frequency ω_L.
    pub laser_freq: f64,
    /// Generalized Rabi frequency Ω.
    pub omega: f64,
    /// cos φ
    pub c: f64,
    /// sin φ
    pub s: f64,
    /// Mixing angle φ.
    pub phi: f64,
}

/// Build the dressed parameters from (ε, Δ_SL, ω_L).
///
/// sin²φ = ½ [1 − sgn(Δ_SL)/sqrt(ε²/Δ_SL² + 1)], with sgn(0) ≡ 0 so that
/// exact resonance gives the symmetric mixing c = s = 1/√2.
pub fn dressed_parameters(rabi: f64, detuning: f64, laser_freq: f64) -> Result<DressedAtom> {
    if rabi < 0.0 {
        return Err(Error::NegativeRabi(rabi));
    }
    if rabi == 0.0 && detuning == 0.0 {
        return Err(Error::DegenerateDressing);
    }
    let omega = (rabi * rabi + 0.25 * detuning * detuning).sqrt();
    let sin2phi = if detuning == 0.0 {
        0.5
    } else {
        let ratio = 1.0 / (rabi * rabi / (detuning * detuning) + 1.0).sqrt();
        0.5 * (1.0 - detuning.signum() * ratio)
    };
    let sin2phi = sin2phi.clamp(0.0, 1.0);
    let s = sin2phi.sqrt();
    let c = (1.0 - sin2phi).sqrt();
    Ok(DressedAtom {
        rabi,
        detuning,
        laser_freq,
        omega,
        c,
        s,
        phi: s.asin(),
    })
}

impl DressedAtom {
    /// Free dressed Hamiltonian H̃_S = Ω R₃.
    pub fn hamiltonian(&self) -> SystemOperator {
        SystemOperator::r3().scale(C64::new(self.omega, 0.0))
    }

    /// Bare excited state |2⟩ written in the dressed basis: |2⟩ = s|1̃⟩ + c|2̃⟩.
    pub fn bare_excited(&self) -> [C64; 2] {
        [C64::new(self.s, 0.0), C64::new(self.c, 0.0)]
    }

    /// Bare ground state |1⟩ = c|1̃⟩ − s|2̃⟩.
    pub fn bare_ground(&self) -> [C64; 2] {
        [C64::new(self.c, 0.0), C64::new(-self.s, 0.0)]
    }
}

/// Reservoir coupling operator L = cs R₃ + c² R₁₂ − s² R₂₁.
pub fn coupling_operator(atom: &DressedAtom) -> SystemOperator {
    let (c, s) = (atom.c, atom.s);
    SystemOperator::r3()
        .scale(C64::new(c * s, 0.0))
        .add(&SystemOperator::r12().scale(C64::new(c * c, 0.0)))
        .sub(&SystemOperator::r21().scale(C64::new(s * s, 0.0)))
}

/// Named bare atomic operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BareOperator {
    Sigma12,
    Sigma21,
    Sigma3,
}

impl std::str::FromStr for BareOperator {
    type Err = Error;
    fn from_str(name: &str) -> Result<Self> {
        match name {
            "sigma12" => Ok(Self::Sigma12),
            "sigma21" => Ok(Self::Sigma21),
            "sigma3" => Ok(Self::Sigma3),
            other => Err(Error::UnknownOperator(other.to_string())),
        }
    }
}

/// Bare atomic operators expressed in the dressed basis:
///
/// σ₁₂ = cs R₃ + c² R₁₂ − s² R₂₁
/// σ₂₁ = cs R₃ − s² R₁₂ + c² R₂₁
/// σ₃  = (c² − s²) R₃ − 2cs (R₁₂ + R₂₁)
pub fn bare_from_dressed(op: BareOperator, atom: &DressedAtom) -> SystemOperator {
    let (c, s) = (atom.c, atom.s);
    let re = |x: f64| C64::new(x, 0.0);
    match op {
        BareOperator::Sigma12 => SystemOperator::r3()
            .scale(re(c * s))
            .add(&SystemOperator::r12().scale(re(c * c)))
            .sub(&SystemOperator::r21().scale(re(s * s))),
        BareOperator::Sigma21 => SystemOperator::r3()
            .scale(re(c * s))
            .sub(&SystemOperator::r12().scale(re(s * s)))
            .add(&SystemOperator::r21().scale(re(c * c))),
        BareOperator::Sigma3 => SystemOperator::r3()
            .scale(re(c * c - s * s))
            .sub(&SystemOperator::r12().add(&SystemOperator::r21()).scale(re(2.0 * c * s))),
    }
}

const HERMITICITY_TOL: f64 = 1e-12;

/// Heisenberg free rotation V_t X = e^{iH_S t} X e^{-iH_S t}.
///
/// For H_S diagonal in the working basis (always true for H̃_S = Ω R₃) the
/// rotation is an exact phase on each matrix unit. A general hermitian H_S
/// goes through the closed-form 2×2 exponential via its Pauli decomposition;
/// both paths are exact, no stepping involved.
pub fn heisenberg_rotate(
    x: &SystemOperator,
    t: f64,
    h: &SystemOperator,
) -> Result<SystemOperator> {
    let defect = h.hermiticity_defect();
    if defect > HERMITICITY_TOL * (1.0 + h.norm()) {
        return Err(Error::NonHermitian(defect));
    }
    let offdiag = h.m[0][1].norm() + h.m[1][0].norm();
    if offdiag <= 1e-15 * (1.0 + h.norm()) {
        let e1 = h.m[0][0].re;
        let e2 = h.m[1][1].re;
        let phase = |a: f64, b: f64| C64::from_polar(1.0, (a - b) * t);
        return Ok(SystemOperator::new([
            [x.m[0][0], x.m[0][1] * phase(e1, e2)],
            [x.m[1][0] * phase(e2, e1), x.m[1][1]],
        ]));
    }
    // H = a I + b·σ with real a, b; e^{iHt} = e^{iat}(cos|b|t I + i sin|b|t b̂·σ).
    let a = 0.5 * (h.m[0][0].re + h.m[1][1].re);
    let bx = h.m[0][1].re;
    let by = -h.m[0][1].im;
    let bz = 0.5 * (h.m[0][0].re - h.m[1][1].re);
    let bn = (bx * bx + by * by + bz * bz).sqrt();
    let (cos, sin) = ((bn * t).cos(), (bn * t).sin());
    let (ux, uy, uz) = (bx / bn, by / bn, bz / bn);
    let i = C64::new(0.0, 1.0);
    let u = SystemOperator::new([
        [
            C64::new(cos, 0.0) + i * sin * uz,
            i * sin * C64::new(ux, -uy),
        ],
        [
            i * sin * C64::new(ux, uy),
            C64::new(cos, 0.0) - i * sin * uz,
        ],
    ])
    .scale(C64::from_polar(1.0, a * t));
    Ok(u.mul(x).mul(&u.adjoint()))
}
