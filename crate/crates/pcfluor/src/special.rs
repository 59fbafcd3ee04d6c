//! Small special-function kit: Bessel J₀ on the real line, the complete
//! elliptic integral K, and an adaptive Simpson quadrature.
//!
//! J₀ only ever appears with a real argument here (the band kernel is
//! g² e^{-iAτ} J₀³(Bτ/3)), so no complex Bessel evaluation is needed.

use std::f64::consts::PI;

/// Bessel function of the first kind, order zero, for real x.
///
/// Power series below |x| = 14, Hankel asymptotic expansion above. The
/// crossover keeps the series free of catastrophic cancellation while the
/// asymptotic tail already delivers ~1e-10 absolute accuracy at x = 14.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 14.0 {
        // J0(x) = sum_m (-1)^m (x/2)^{2m} / (m!)^2
        let q = 0.25 * ax * ax;
        let mut term = 1.0;
        let mut sum = 1.0;
        for m in 1..=48u32 {
            term *= -q / ((m * m) as f64);
            sum += term;
            if term.abs() < 1e-17 * sum.abs().max(1.0) {
                break;
            }
        }
        sum
    } else {
        // Hankel expansion: J0(x) ~ sqrt(2/(pi x)) [P(z) cos(chi) - Q(z) sin(chi)],
        // chi = x - pi/4, z = 1/(8x). Coefficients are a_k(0) * 8^k with
        // a_k(0) = (-1)(-9)...(-(2k-1)^2) / (k! 8^k), truncated after z^7.
        let z = 1.0 / (8.0 * ax);
        let z2 = z * z;
        let p = 1.0 + z2 * (-4.5 + z2 * (459.375 + z2 * -150_077.8125));
        let q = z * (-1.0 + z2 * (37.5 + z2 * (-7_441.875 + z2 * 3_623_307.1875)));
        let chi = ax - 0.25 * PI;
        (2.0 / (PI * ax)).sqrt() * (p * chi.cos() - q * chi.sin())
    }
}

/// Complete elliptic integral of the first kind, K(k), modulus convention
/// (K(0) = π/2, K(k) → ∞ as k → 1). Computed by the arithmetic-geometric
/// mean, which converges quadratically.
pub fn elliptic_k(k: f64) -> f64 {
    assert!((0.0..1.0).contains(&k), "elliptic_k: modulus out of [0,1)");
    let mut a = 1.0;
    let mut b = (1.0 - k * k).sqrt();
    for _ in 0..60 {
        if (a - b).abs() < 1e-16 * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    0.5 * PI / a
}

/// Adaptive Simpson quadrature of a real function on [a, b].
///
/// Used as an independent cross-check for the trapezoid kernel integrals and
/// for the band density of states. Tolerance is absolute.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 40)
}
