//! Exact formulas for the expected energy of the Gegenbauer projection
//! processes and the integrals it is assembled from.
//!
//! `n` is the degree of the kernel, so a process with `n + 1` points.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::quadrature;
use crate::specfun::{digamma, harmonic, ln_gamma_signed};
use crate::sum::CompensatedSum;

/// Which closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    /// Expected energy at `λ = 0`.
    ChebyshevEnergy,
    /// First double integral at `λ = 0`.
    ChebyshevL1,
    /// Kernel-squared double integral at `λ = 0`.
    ChebyshevL2,
    /// Endpoint log integral, any `λ`.
    EndpointLog,
    /// `∫ C_k² (1−x²)^{λ−1/2} (1−x)^s`.
    PowerMoment,
    /// `∫ Ĉ_k² w log(1−x)`.
    LogMoment,
    /// Mixed Chebyshev moments.
    MixedMoment,
    /// Cosine–log integrals on the circle.
    CosLog,
    /// Sum of odd harmonic numbers.
    HarmonicBlock,
}

impl FormulaId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormulaId::ChebyshevEnergy => "chebyshev-energy",
            FormulaId::ChebyshevL1 => "chebyshev-l1",
            FormulaId::ChebyshevL2 => "chebyshev-l2",
            FormulaId::EndpointLog => "endpoint-log",
            FormulaId::PowerMoment => "power-moment",
            FormulaId::LogMoment => "log-moment",
            FormulaId::MixedMoment => "mixed-moment",
            FormulaId::CosLog => "cos-log",
            FormulaId::HarmonicBlock => "harmonic-block",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormValue {
    pub value: f64,
    pub formula_id: FormulaId,
}

/// Expected energy of the `npts`-point Chebyshev projection process
/// (`npts = n + 1`, `n ≥ 1`).
pub fn e0_exact(npts: usize) -> Result<f64> {
    if npts < 2 {
        return Err(Error::domain("npts", npts as f64, "need npts >= 2"));
    }
    let n = (npts - 1) as u64;
    let nf = n as f64;
    let np1 = nf + 1.0;
    let mut bracket = CompensatedSum::new();
    bracket.add(np1 * LN_2);
    bracket.add(0.75 * harmonic(n));
    bracket.add(nf * harmonic(2 * n - 1));
    bracket.add(0.5 * harmonic(2 * n));
    bracket.add(-nf);
    bracket.add(0.5);
    Ok(np1 * np1 * LN_2 - bracket.value())
}

/// `L₁` at `λ = 0`: `(n+1)² log 2 + H_n / 4`.
pub fn l1_cheb(n: usize) -> f64 {
    let np1 = (n + 1) as f64;
    np1 * np1 * LN_2 + harmonic(n as u64) / 4.0
}

/// `L₂` at `λ = 0`, `n ≥ 1`.
pub fn l2_cheb(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("n", 0.0, "need n >= 1"));
    }
    let n = n as u64;
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    acc.add((nf + 1.0) * LN_2);
    acc.add(harmonic(n));
    acc.add(nf * harmonic(2 * n - 1));
    acc.add(harmonic(2 * n) / 2.0);
    acc.add(-nf);
    acc.add(0.5);
    Ok(acc.value())
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > -0.5) || !lambda.is_finite() {
        return Err(Error::domain("lambda", lambda, "need lambda > -1/2"));
    }
    Ok(())
}

/// `L₃(λ, n) = ∫ K(x,x) log(1/(1−x²)) w(x) dx`.
pub fn l3_exact(lambda: f64, n: usize) -> Result<f64> {
    check_lambda(lambda)?;
    let nf = n as f64;
    if lambda == 0.0 {
        return Ok(2.0 * (nf + 1.0) * LN_2 + harmonic(n as u64));
    }
    let l = lambda;
    let base = digamma(l + 0.5)?;
    let first = (nf + 1.0) * (digamma(nf + l + 1.0)? - base);
    let bracket = digamma(nf + l + 0.5)? - base - 2.0 * digamma(2.0 * nf + 2.0 * l + 1.0)?
        + 2.0 * digamma(nf + 2.0 * l + 1.0)?;
    Ok(first - (nf + 2.0 * l) * bracket)
}

/// `∫ Ĉ_k² w log(1 − x) dx` for `λ ≠ 0`.
pub fn gegenbauer_log_moment(lambda: f64, k: usize) -> Result<f64> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Err(Error::Unsupported(
            "log moment at lambda = 0; use the Chebyshev branch of l3_exact".into(),
        ));
    }
    let kf = k as f64;
    let l = lambda;
    Ok(-2.0 * digamma(2.0 * l + 2.0 * kf)? + digamma(2.0 * l + kf)? + LN_2
        + digamma(l + kf + 0.5)?
        - 1.0 / (2.0 * kf + 2.0 * l))
}

/// `∫ C_k(x)² (1−x²)^{λ−1/2} dx` with the classical normalisation of `C_k^λ`.
pub fn gegenbauer_norm(lambda: f64, k: usize) -> Result<f64> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Err(Error::Unsupported("C_k^0 vanishes identically for k >= 1".into()));
    }
    let kf = k as f64;
    let (lg_num, s_num) = ln_gamma_signed(2.0 * lambda + kf);
    let (lg_lam, _) = ln_gamma_signed(lambda);
    let (lg_fact, _) = ln_gamma_signed(kf + 1.0);
    let log = PI.ln() + (1.0 - 2.0 * lambda) * LN_2 + lg_num - lg_fact - (kf + lambda).abs().ln()
        - 2.0 * lg_lam;
    Ok(s_num * (kf + lambda).signum() * log.exp())
}

/// `∫ C_k(x)² (1−x²)^{λ−1/2} (1−x)^s dx` for `s ∈ [0, 1)`, from a
/// terminating hypergeometric sum. At `s = 0` this is [`gegenbauer_norm`].
pub fn jacobi_power_moment(lambda: f64, k: usize, s: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Err(Error::Unsupported("power moment at lambda = 0".into()));
    }
    if !(0.0..1.0).contains(&s) {
        return Err(Error::domain("s", s, "need 0 <= s < 1"));
    }
    if s == 0.0 {
        return gegenbauer_norm(lambda, k);
    }
    let l = lambda;
    let kf = k as f64;
    // prefactor in log space: (log |·|, sign)
    let mut log = (s + 2.0 * l) * LN_2;
    let mut sign = 1.0;
    let mut mul = |x: f64, power: f64| {
        let (lg, sg) = ln_gamma_signed(x);
        log += power * lg;
        if power.rem_euclid(2.0) != 0.0 {
            sign *= sg;
        }
    };
    mul(s + l + 0.5, 1.0);
    mul(l + 0.5, 1.0);
    mul(kf - s, 1.0);
    mul(kf + 2.0 * l, 2.0);
    mul(kf + 1.0, -2.0);
    mul(-s, -1.0);
    mul(2.0 * l + s + kf + 1.0, -1.0);
    mul(2.0 * l, -2.0);
    let prefactor = sign * log.exp();

    let mut term = 1.0;
    let mut series = CompensatedSum::new();
    series.add(term);
    for j in 1..=k {
        let m = (j - 1) as f64;
        // s − k + 1 + m, kept exact as s → 0 in the last step
        let near_s = s - (k - j) as f64;
        term *= (-kf + m) * (kf + 2.0 * l + m) * (s + l + 0.5 + m) * (s + 1.0 + m)
            / ((m + 1.0) * (l + 0.5 + m) * (2.0 * l + s + kf + 1.0 + m) * near_s);
        series.add(term);
    }
    Ok(prefactor * series.value())
}

/// Mixed Chebyshev moment: `1/(4k)` on the diagonal `k = ℓ ≥ 1`, else 0.
pub fn j_moment(k: usize, l: usize) -> f64 {
    if k == l && k >= 1 {
        1.0 / (4.0 * k as f64)
    } else {
        0.0
    }
}

/// Integrand family for [`cos_log_integral`]:
/// `(1/π) ∫_{−π}^{π} f(α) log(1/√(2 − 2cos α)) dα`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosLogKind {
    /// `f = cos(kα)`
    Plain,
    /// `f = cos²(kα)`
    Squared,
    /// `f = cos(kα) cos(ℓα)` with `k > ℓ ≥ 1`
    Mixed { l: usize },
}

pub fn cos_log_integral(k: usize, kind: CosLogKind) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain("k", 0.0, "need k >= 1"));
    }
    let kf = k as f64;
    match kind {
        CosLogKind::Plain => Ok(1.0 / kf),
        CosLogKind::Squared => Ok(1.0 / (4.0 * kf)),
        CosLogKind::Mixed { l } => {
            if l < 1 || l >= k {
                return Err(Error::domain("l", l as f64, "need k > l >= 1"));
            }
            let lf = l as f64;
            Ok(0.5 * (1.0 / (kf - lf) + 1.0 / (kf + lf)))
        }
    }
}

/// `Σ_{k=2}^{n} H_{2k−1}` in closed form.
pub fn harmonic_block_sum(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("n", n as f64, "need n >= 2"));
    }
    let n = n as u64;
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    acc.add(nf * harmonic(2 * n - 1));
    acc.add(harmonic(2 * n) / 2.0);
    acc.add(-harmonic(n) / 4.0);
    acc.add(-nf);
    acc.add(-0.5);
    Ok(acc.value())
}

/// How [`corollary_comparison`] evaluates the expected energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComparisonMode {
    /// Closed forms; `λ = 0` only.
    Exact,
    /// Singular quadrature at the given tolerance.
    Numeric { tol: f64 },
}

/// Energies of two `(n+3)`-point processes: the Gegenbauer projection
/// process itself, and the `(n+1)`-point process with both endpoints
/// `±1` added.
pub fn corollary_comparison(lambda: f64, n: usize, mode: ComparisonMode) -> Result<(f64, f64)> {
    check_lambda(lambda)?;
    let endpoints = -2.0 * LN_2;
    match mode {
        ComparisonMode::Exact => {
            if lambda != 0.0 {
                return Err(Error::Unsupported(
                    "exact comparison is only available at lambda = 0".into(),
                ));
            }
            let with_all = e0_exact(n + 3)?;
            let with_ends = endpoints + e0_exact(n + 1)? + 2.0 * l3_exact(0.0, n)?;
            Ok((with_all, with_ends))
        }
        ComparisonMode::Numeric { tol } => {
            let with_all = quadrature::expected_energy_numeric(lambda, n + 2, tol)?.value;
            let bulk = quadrature::expected_energy_numeric(lambda, n, tol)?.value;
            let ends = quadrature::integrate_l3(lambda, n, tol)?.value;
            Ok((with_all, endpoints + bulk + 2.0 * ends))
        }
    }
}
