//! Gegenbauer and Jacobi(1,1) polynomials, the weight `w^λ`, and the
//! Christoffel–Darboux projection kernel `K_n^λ`.
//!
//! Conventions: `w^λ(x) = Γ(λ+1) / (√π Γ(λ+1/2)) · (1 − x²)^{λ−1/2}` is a
//! probability density on `[-1, 1]`, `C_k^λ` are the classical Gegenbauer
//! polynomials and `Ĉ_k^λ = γ_k C_k^λ` are orthonormal with respect to
//! `w^λ`. At `λ = 0` the family degenerates to Chebyshev: `Ĉ_0 = 1`,
//! `Ĉ_k = √2 T_k`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{ln_gamma, ln_gamma_signed};

/// The Gegenbauer index `λ > -1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerParam {
    lambda: f64,
    is_chebyshev: bool,
}

impl GegenbauerParam {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= -0.5 {
            return Err(Error::domain("lambda", lambda, "need lambda > -1/2"));
        }
        Ok(Self {
            lambda,
            is_chebyshev: lambda == 0.0,
        })
    }

    pub fn chebyshev() -> Self {
        Self {
            lambda: 0.0,
            is_chebyshev: true,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn is_chebyshev(&self) -> bool {
        self.is_chebyshev
    }

    /// `Γ(λ+1) / (√π Γ(λ+1/2))`, the normalizing constant of `w^λ`.
    pub fn weight_constant(&self) -> f64 {
        (ln_gamma(self.lambda + 1.0) - ln_gamma(self.lambda + 0.5)).exp() / PI.sqrt()
    }

    /// True when `sin^{2λ} θ` is analytic on `[0, π]`, i.e. `2λ` is a
    /// non-negative integer. Otherwise `w^λ dx` has an algebraic endpoint
    /// singularity in the angle variable.
    pub fn has_smooth_angular_weight(&self) -> bool {
        let two_lambda = 2.0 * self.lambda;
        two_lambda >= 0.0 && two_lambda == two_lambda.round()
    }

    /// Off-diagonal entry `b_k` (`k ≥ 1`) of the Jacobi matrix of `w^λ`, so
    /// that `x Ĉ_k = b_{k+1} Ĉ_{k+1} + b_k Ĉ_{k-1}` up to the sign of `Ĉ_k`.
    pub fn jacobi_offdiagonal(&self, k: usize) -> f64 {
        assert!(k >= 1);
        let l = self.lambda;
        if k == 1 {
            return (0.5 / (1.0 + l)).sqrt();
        }
        let k = k as f64;
        (k * (k + 2.0 * l - 1.0) / (4.0 * (k + l) * (k + l - 1.0))).sqrt()
    }
}

/// The probability weight `w^λ(x)`.
pub fn weight(param: &GegenbauerParam, x: f64) -> Result<f64> {
    let l = param.lambda();
    if x.abs() > 1.0 || (x.abs() == 1.0 && l < 0.5) || x.is_nan() {
        return Err(Error::domain("x", x, "weight undefined at or beyond ±1"));
    }
    let one_minus_x2 = (1.0 - x) * (1.0 + x);
    Ok(param.weight_constant() * one_minus_x2.powf(l - 0.5))
}

/// `C_k^λ(x)` by the three-term recurrence, or `T_k(x)` at `λ = 0`.
pub fn gegenbauer(param: &GegenbauerParam, k: usize, x: f64) -> f64 {
    if param.is_chebyshev() {
        return chebyshev_t(k, x);
    }
    let l = param.lambda();
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 2.0 * l * x;
    for j in 1..k {
        let j = j as f64;
        let next = (2.0 * (j + l) * x * cur - (j + 2.0 * l - 1.0) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn chebyshev_t(k: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = x;
    for _ in 1..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial `P_m^{(1,1)}(x)`; `P_m^{(1,1)}(1) = m + 1`.
pub fn jacobi11(m: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..m {
        let k = k as f64;
        // (k+1)(k+3) P_{k+1} = (2k+3)(k+2) x P_k − (k+1)(k+2) P_{k−1}
        let next = ((2.0 * k + 3.0) * (k + 2.0) * x * cur - (k + 1.0) * (k + 2.0) * prev)
            / ((k + 1.0) * (k + 3.0));
        prev = cur;
        cur = next;
    }
    cur
}

/// Precomputed constants for the rank-`(n+1)` projection kernel at fixed `(λ, n)`.
#[derive(Debug, Clone)]
pub struct KernelContext {
    param: GegenbauerParam,
    n: usize,
    log_norm_constants: Vec<f64>,
    cd_prefactor: Option<(f64, f64)>,
    /// `b_1, ..., b_{n+1}`
    offdiag: Vec<f64>,
}

impl KernelContext {
    pub fn new(param: GegenbauerParam, n: usize) -> Self {
        let l = param.lambda();
        let log_norm_constants = (0..=n)
            .map(|k| {
                if param.is_chebyshev() {
                    if k == 0 {
                        0.0
                    } else {
                        0.5 * 2f64.ln()
                    }
                } else {
                    // γ_k² = k! (k+λ) / (λ (2λ)_k)
                    let log_poch = log_abs_pochhammer(2.0 * l, k);
                    0.5 * (ln_gamma(k as f64 + 1.0) + (k as f64 + l).abs().ln()
                        - l.abs().ln()
                        - log_poch)
                }
            })
            .collect();
        // (n+1)! / (2λ (2λ)_n), sign tracked separately for λ < 0
        let cd_prefactor = (!param.is_chebyshev()).then(|| {
            let poch_sign = if l < 0.0 && n >= 1 { -1.0 } else { 1.0 };
            let sign = l.signum() * poch_sign;
            let log = ln_gamma(n as f64 + 2.0) - (2.0 * l).abs().ln() - log_abs_pochhammer(2.0 * l, n);
            (sign, log)
        });
        let offdiag = (1..=n + 1).map(|k| param.jacobi_offdiagonal(k)).collect();
        Self {
            param,
            n,
            log_norm_constants,
            cd_prefactor,
            offdiag,
        }
    }

    pub fn param(&self) -> &GegenbauerParam {
        &self.param
    }

    pub fn lambda(&self) -> f64 {
        self.param.lambda()
    }

    /// Highest basis index; the kernel projects onto `n + 1` functions.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `log γ_k^λ` for `k = 0..=n` (at `λ = 0`: `0, log √2, log √2, ...`).
    pub fn log_norm_constants(&self) -> &[f64] {
        &self.log_norm_constants
    }

    /// `(sign, log |·|)` of `(n+1)! / (2λ (2λ)_n)`; `None` at `λ = 0`.
    pub fn cd_prefactor(&self) -> Option<(f64, f64)> {
        self.cd_prefactor
    }

    /// Below this separation the kernel is summed directly instead of
    /// using the Christoffel–Darboux quotient.
    pub fn cd_switch_threshold(&self) -> f64 {
        1e-3 * (2.0 / (self.n as f64 + 1.0))
    }

    /// `Ĉ_k^λ(x) = γ_k C_k^λ(x)`.
    pub fn gegenbauer_normalized(&self, k: usize, x: f64) -> Result<f64> {
        if k > self.n {
            return Err(Error::IndexOutOfRange {
                index: k,
                max: self.n,
            });
        }
        Ok(self.log_norm_constants[k].exp() * gegenbauer(&self.param, k, x))
    }

    /// Fills `out[k]` with the orthonormal basis value at `x`, `k = 0..out.len()`,
    /// `out.len() ≤ n + 2`. Signs follow a positive leading coefficient, which
    /// differs from `Ĉ_k` by `(-1)` for `λ < 0`, `k ≥ 1`; all quadratic
    /// quantities (the kernel) are unaffected.
    pub fn basis_values(&self, x: f64, out: &mut [f64]) {
        assert!(out.len() <= self.n + 2);
        let mut prev = 0.0;
        let mut cur = 1.0;
        let mut b_prev = 0.0;
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = cur;
            let b_next = self.offdiag[k.min(self.n)];
            let next = (x * cur - b_prev * prev) / b_next;
            prev = cur;
            cur = next;
            b_prev = b_next;
        }
    }

    /// `K_n(x, x) = Σ_k Ĉ_k(x)²`.
    pub fn kernel_diag(&self, x: f64) -> f64 {
        let mut prev = 0.0;
        let mut cur = 1.0;
        let mut b_prev = 0.0;
        let mut sum = 0.0;
        for &b_next in &self.offdiag[..=self.n] {
            sum += cur * cur;
            let next = (x * cur - b_prev * prev) / b_next;
            prev = cur;
            cur = next;
            b_prev = b_next;
        }
        sum
    }

    /// `K_n(x, y) = Σ_{k=0}^{n} Ĉ_k(x) Ĉ_k(y)`.
    ///
    /// Uses the Christoffel–Darboux quotient
    /// `b_{n+1} (p_{n+1}(x) p_n(y) − p_n(x) p_{n+1}(y)) / (x − y)` when
    /// `|x − y|` exceeds [`Self::cd_switch_threshold`], the direct sum otherwise.
    pub fn kernel(&self, x: f64, y: f64) -> f64 {
        // symmetric by construction: order the arguments
        let (x, y) = if x <= y { (x, y) } else { (y, x) };
        let (mut px_prev, mut px) = (0.0, 1.0);
        let (mut py_prev, mut py) = (0.0, 1.0);
        let mut b_prev = 0.0;
        let mut direct = 0.0;
        for &b_next in &self.offdiag[..=self.n] {
            direct += px * py;
            let nx = (x * px - b_prev * px_prev) / b_next;
            let ny = (y * py - b_prev * py_prev) / b_next;
            px_prev = px;
            px = nx;
            py_prev = py;
            py = ny;
            b_prev = b_next;
        }
        if (x - y).abs() <= self.cd_switch_threshold() {
            direct
        } else {
            // after the loop: p{x,y}_prev = p_n, p{x,y} = p_{n+1}
            b_prev * (px * py_prev - px_prev * py) / (x - y)
        }
    }
}

/// `log |(a)_k|` for `a > -1`, `a ≠ 0`.
fn log_abs_pochhammer(a: f64, k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    ln_gamma_signed(a + k as f64).0 - ln_gamma_signed(a).0
}
