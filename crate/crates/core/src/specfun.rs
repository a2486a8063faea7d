//! Scalar special functions: log-gamma, digamma, harmonic numbers, the
//! hyperfactorial sum `Σ j log j`, and the sine integral.
//!
//! All functions are pure and safe to call from any thread.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Euler–Mascheroni constant, 0.57721566490153286061...
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_741_78;

/// Digamma recurses upward until the argument reaches this value.
const DIGAMMA_ASYMPTOTIC_MIN: f64 = 10.0;

/// Below this the sine integral uses its Taylor series.
const SI_SERIES_MAX: f64 = 16.0;

/// Largest `n` for which `harmonic` sums the terms directly.
const HARMONIC_DIRECT_MAX: u64 = 1000;

/// A function value together with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialValue {
    pub value: f64,
    pub abs_error_bound: f64,
}

/// `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: u64) -> f64 {
    if n <= HARMONIC_DIRECT_MAX {
        // smallest terms first
        (1..=n).rev().map(|k| 1.0 / k as f64).sum()
    } else {
        psi(n as f64 + 1.0) + EULER_GAMMA
    }
}

/// Digamma function `ψ(x) = Γ'(x)/Γ(x)`.
///
/// Fails on the poles `x ∈ {0, -1, -2, ...}`.
pub fn digamma(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Pole {
            function: "digamma",
            at: x,
        });
    }
    if !x.is_finite() {
        return Err(Error::domain("x", x, "digamma needs a finite argument"));
    }
    Ok(psi(x))
}

pub fn digamma_value(x: f64) -> Result<SpecialValue> {
    let value = digamma(x)?;
    Ok(SpecialValue {
        value,
        abs_error_bound: 1e-13_f64.max(4.0 * f64::EPSILON * value.abs()),
    })
}

/// Unchecked digamma; NaN on the poles.
pub(crate) fn psi(x: f64) -> f64 {
    if x <= 0.0 {
        if x == x.floor() {
            return f64::NAN;
        }
        // reflection: ψ(x) = ψ(1 - x) - π / tan(πx)
        return psi(1.0 - x) - PI / (PI * x).tan();
    }
    let mut z = x;
    let mut shift = CompensatedSum::new();
    while z < DIGAMMA_ASYMPTOTIC_MIN {
        shift.add(-1.0 / z);
        z += 1.0;
    }
    let r = 1.0 / z;
    let r2 = r * r;
    // ln z - 1/(2z) - Σ B_2k / (2k z^2k), k = 1..7
    let series = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0
                    - r2 * (1.0 / 240.0
                        - r2 * (1.0 / 132.0 - r2 * (691.0 / 32760.0 - r2 / 12.0))))));
    shift.add(z.ln());
    shift.add(-0.5 * r);
    shift.add(-series);
    shift.value()
}

/// `log Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("x", x, "log_gamma needs x > 0"));
    }
    Ok(ln_gamma(x))
}

/// Unchecked `log Γ(x)` for positive `x`.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut z = x;
    let mut product = 1.0;
    while z < 10.0 {
        product *= z;
        z += 1.0;
    }
    stirling(z) - product.ln()
}

fn stirling(z: f64) -> f64 {
    let r = 1.0 / z;
    let r2 = r * r;
    let series = r
        * (1.0 / 12.0
            - r2 * (1.0 / 360.0
                - r2 * (1.0 / 1260.0
                    - r2 * (1.0 / 1680.0
                        - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360_360.0 - r2 / 156.0))))));
    (z - 0.5) * z.ln() - z + LN_2PI_HALF + series
}

/// `(log |Γ(x)|, sign Γ(x))` for any non-pole real `x`.
pub(crate) fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (ln_gamma(x), 1.0);
    }
    if x == x.floor() {
        return (f64::INFINITY, f64::NAN);
    }
    // Γ(x) Γ(1 - x) = π / sin(πx)
    let s = (PI * x).sin();
    (PI.ln() - s.abs().ln() - ln_gamma(1.0 - x), s.signum())
}

/// `Σ_{j=1}^{n} j log j`, summed with compensation.
pub fn sum_j_log_j(n: u64) -> f64 {
    (2..=n)
        .map(|j| {
            let j = j as f64;
            j * j.ln()
        })
        .collect::<CompensatedSum>()
        .value()
}

/// Large-`n` expansion of [`sum_j_log_j`] without its constant term:
/// `n² log n / 2 − n²/4 + n log n / 2 + log n / 12`.
pub fn sum_j_log_j_asymptotic(n: u64) -> f64 {
    let n = n as f64;
    let ln = n.ln();
    0.5 * n * n * ln - 0.25 * n * n + 0.5 * n * ln + ln / 12.0
}

/// Sine integral `Si(x) = ∫_0^x sin t / t dt`. Odd in `x`.
pub fn sine_integral(x: f64) -> f64 {
    if x < 0.0 {
        return -sine_integral(-x);
    }
    if x == 0.0 {
        return 0.0;
    }
    if x < SI_SERIES_MAX {
        si_series(x)
    } else {
        si_continued_fraction(x)
    }
}

pub fn sine_integral_value(x: f64) -> SpecialValue {
    SpecialValue {
        value: sine_integral(x),
        abs_error_bound: 1e-10,
    }
}

fn si_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x; // (-1)^k x^(2k+1) / (2k+1)!
    let mut acc = CompensatedSum::new();
    acc.add(term);
    for k in 1..200 {
        let m = (2 * k) as f64;
        term *= -x2 / (m * (m + 1.0));
        let contribution = term / (m + 1.0);
        acc.add(contribution);
        if contribution.abs() < 1e-18 * acc.value().abs() {
            break;
        }
    }
    acc.value()
}

/// Lentz evaluation of the continued fraction for `E1(ix)`; then
/// `Si(x) = π/2 + Im(e^{-ix} h)`.
fn si_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..10_000 {
        let a = -((i - 1) as f64).powi(2);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    let h = Complex64::new(x.cos(), -x.sin()) * h;
    FRAC_PI_2 + h.im
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn harmonic_small_values() {
        assert_eq!(harmonic(0), 0.0);
        assert_eq!(harmonic(1), 1.0);
        assert!(close(harmonic(4), 25.0 / 12.0, 1e-15));
    }

    #[test]
    fn harmonic_branches_agree_at_switch() {
        let direct: f64 = (1..=2000u64).rev().map(|k| 1.0 / k as f64).sum();
        assert!(close(harmonic(2000), direct, 1e-13));
        assert!(close(harmonic(1000), psi(1001.0) + EULER_GAMMA, 1e-13));
    }

    #[test]
    fn digamma_reference_values() {
        // mpmath at 40 digits
        assert!(close(digamma(1.0).unwrap(), -0.577_215_664_901_532_86, 1e-14));
        assert!(close(digamma(2.0).unwrap(), 1.0 - EULER_GAMMA, 1e-14));
        assert!(close(
            digamma(0.5).unwrap(),
            -EULER_GAMMA - 2.0 * 2f64.ln(),
            1e-13
        ));
        assert!(close(digamma(0.5).unwrap(), -1.963_510_026_021_423_5, 1e-13));
        assert!(close(digamma(3.7).unwrap(), 1.167_153_539_361_511_4, 1e-13));
        assert!(close(digamma(-0.5).unwrap(), 0.036_489_973_978_576_52, 1e-13));
    }

    #[test]
    fn digamma_poles_are_errors() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(digamma(x), Err(Error::Pole { .. })));
        }
        assert!(psi(-3.0).is_nan());
    }

    #[test]
    fn log_gamma_reference_values() {
        assert!(close(log_gamma(1.0).unwrap(), 0.0, 1e-14));
        assert!(close(log_gamma(2.0).unwrap(), 0.0, 1e-14));
        assert!(close(log_gamma(0.5).unwrap(), 0.5 * PI.ln(), 1e-14));
        assert!(close(log_gamma(7.3).unwrap(), 7.147_892_523_022_249, 1e-13));
        assert!(close(log_gamma(0.01).unwrap(), 4.599_479_878_042_022, 1e-13));
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-2.5).is_err());
    }

    #[test]
    fn signed_log_gamma_on_negative_axis() {
        // Γ(-1/2) = -2√π
        let (l, s) = ln_gamma_signed(-0.5);
        assert_eq!(s, -1.0);
        assert!(close(l, (2.0 * PI.sqrt()).ln(), 1e-14));
        // Γ(-3/2) = 4√π / 3
        let (l, s) = ln_gamma_signed(-1.5);
        assert_eq!(s, 1.0);
        assert!(close(l, (4.0 * PI.sqrt() / 3.0).ln(), 1e-14));
    }

    #[test]
    fn sum_j_log_j_values() {
        assert_eq!(sum_j_log_j(1), 0.0);
        assert!(close(sum_j_log_j(2), 2.0 * 2f64.ln(), 1e-15));
        assert!(close(sum_j_log_j(10), 102.082_830_551_934_93, 1e-12));
    }

    #[test]
    fn sine_integral_reference_values() {
        assert_eq!(sine_integral(0.0), 0.0);
        assert!(close(sine_integral(PI), 1.851_937_051_982_466_2, 1e-12));
        assert!(close(sine_integral(5.0), 1.549_931_244_944_674_1, 1e-12));
        assert!(close(sine_integral(16.0), 1.631_302_268_270_032_9, 1e-11));
        assert!(close(sine_integral(30.0), 1.566_756_540_030_351_1, 1e-12));
        assert!(close(sine_integral(1e6), 1.570_795_390_043_119_1, 1e-12));
        assert!(close(sine_integral(1e6), FRAC_PI_2, 1e-6));
        assert!(close(sine_integral(-PI), -sine_integral(PI), 0.0));
    }

    #[test]
    fn sine_integral_continuous_across_switch() {
        let below = sine_integral(SI_SERIES_MAX - 1e-9);
        let above = sine_integral(SI_SERIES_MAX + 1e-9);
        assert!(close(below, above, 1e-10));
    }
}
