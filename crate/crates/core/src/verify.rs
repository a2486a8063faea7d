//! Self-checks: every closed form against an independent numerical route.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::closedform::{self, CosLogKind};
use crate::error::Result;
use crate::fekete;
use crate::orthopoly::{GegenbauerParam, KernelContext};
use crate::quadrature::{self, AnglePoint, Grading};
use crate::report::CheckRow;
use crate::specfun::{self, EULER_GAMMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemmas,
    Kernels,
    All,
}

pub fn run_suite(suite: Suite) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    if matches!(suite, Suite::Lemmas | Suite::All) {
        rows.extend(lemma_checks()?);
    }
    if matches!(suite, Suite::Kernels | Suite::All) {
        rows.extend(kernel_checks()?);
    }
    Ok(rows)
}

/// `(1/π) ∫_{−π}^{π} f(α) log(1/√(2 − 2cos α)) dα` by graded quadrature.
pub fn cos_log_quadrature<F: Fn(f64) -> f64>(f: F, frequency: usize) -> Result<f64> {
    // even integrand; log(1/(2 sin(α/2))) is singular at α = 0 only
    let r = quadrature::integrate_graded(
        0.0,
        PI,
        Grading {
            base_panels: frequency + 4,
            left: Some(0.0),
            right: None,
        },
        |p| f(p.x) * -(2.0 * (0.5 * p.from_left).sin()).ln(),
        1e-12,
    )?;
    Ok(2.0 * r.value / PI)
}

/// `∫_0^x Si(t)/t dt` by composite Gauss–Legendre, about two panels per period.
pub fn sine_integral_integral(x: f64) -> f64 {
    let panels = ((x / PI).ceil() as usize).max(4);
    quadrature::composite_gauss_legendre(
        |t| {
            if t == 0.0 {
                1.0
            } else {
                specfun::sine_integral(t) / t
            }
        },
        0.0,
        x,
        panels,
    )
}

/// `∫ Ĉ_k² w log(1 − x) dx` by graded quadrature in `θ`.
pub fn log_moment_quadrature(lambda: f64, k: usize) -> Result<f64> {
    let param = GegenbauerParam::new(lambda)?;
    let ctx = KernelContext::new(param, k);
    let c = param.weight_constant();
    let beta = if param.has_smooth_angular_weight() { 0.0 } else { 2.0 * lambda };
    let r = quadrature::integrate_angle(
        k + 4,
        beta,
        |p: AnglePoint| {
            let v = ctx.gegenbauer_normalized(k, p.x).unwrap_or(f64::NAN);
            // 1 − cos θ = 2 sin²(θ/2), from sin θ and the sign of x
            let one_minus_x = if p.x <= 0.0 { 1.0 - p.x } else { p.sin * p.sin / (1.0 + p.x) };
            let weight = if param.is_chebyshev() { c } else { c * p.sin.powf(2.0 * lambda) };
            v * v * weight * one_minus_x.ln()
        },
        1e-12,
    )?;
    Ok(r.value)
}

fn lemma_checks() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for k in 1..=8usize {
        let kf = k as f64;
        let plain = cos_log_quadrature(|a| (kf * a).cos(), k)?;
        rows.push(CheckRow::new(
            format!("cos-log/plain/k={k}"),
            closedform::cos_log_integral(k, CosLogKind::Plain)?,
            plain,
            1e-7,
        ));
        let squared = cos_log_quadrature(|a| (kf * a).cos().powi(2), 2 * k)?;
        rows.push(CheckRow::new(
            format!("cos-log/squared/k={k}"),
            closedform::cos_log_integral(k, CosLogKind::Squared)?,
            squared,
            1e-7,
        ));
        for l in 1..k {
            let lf = l as f64;
            let mixed = cos_log_quadrature(|a| (kf * a).cos() * (lf * a).cos(), k + l)?;
            rows.push(CheckRow::new(
                format!("cos-log/mixed/k={k}/l={l}"),
                closedform::cos_log_integral(k, CosLogKind::Mixed { l })?,
                mixed,
                1e-7,
            ));
        }
    }
    for n in [2usize, 3, 10, 100, 1000, 10_000] {
        let direct = crate::sum::compensated_sum((2..=n as u64).map(|k| specfun::harmonic(2 * k - 1)));
        rows.push(CheckRow::new(
            format!("harmonic-block/n={n}"),
            closedform::harmonic_block_sum(n)?,
            direct,
            1e-9,
        ));
    }
    let log_sine = quadrature::integrate_graded(
        0.0,
        PI,
        Grading::both(4, 0.0, 0.0),
        |p| -(2.0 * p.from_left.min(p.from_right).sin()).ln(),
        1e-13,
    )?;
    rows.push(CheckRow::new("log-sine-integral", 0.0, log_sine.value, 1e-8));
    let x = 1e4;
    let residual = sine_integral_integral(x) - (FRAC_PI_2 * x.ln() + EULER_GAMMA * FRAC_PI_2);
    rows.push(CheckRow::new("sine-integral-log/x=1e4", 0.0, residual, 1e-3));
    for k in 0..=4usize {
        for l in 0..=4usize {
            let j = quadrature::integrate_mixed_moment(k, l, 1e-9)?;
            rows.push(CheckRow::new(
                format!("mixed-moment/k={k}/l={l}"),
                closedform::j_moment(k, l),
                j.value,
                1e-6,
            ));
        }
    }
    for (lambda, k) in [(1.0, 1usize), (-0.25, 2), (0.7, 3), (2.5, 4)] {
        rows.push(CheckRow::new(
            format!("log-moment/lambda={lambda}/k={k}"),
            closedform::gegenbauer_log_moment(lambda, k)?,
            log_moment_quadrature(lambda, k)?,
            1e-8,
        ));
    }
    for (lambda, n) in [(-0.25, 3usize), (0.0, 4), (0.5, 2), (1.0, 6), (2.5, 4)] {
        rows.push(CheckRow::new(
            format!("endpoint-log/lambda={lambda}/n={n}"),
            closedform::l3_exact(lambda, n)?,
            quadrature::integrate_l3(lambda, n, 1e-10)?.value,
            1e-7,
        ));
    }
    for n in 2..=30usize {
        let exact = fekete::epsilon_exact(n)?;
        rows.push(CheckRow::new(
            format!("fekete-energy/n={n}"),
            exact,
            fekete::log_energy(&fekete::fekete_points(n)?)?,
            1e-8 * exact.abs().max(1.0),
        ));
    }
    Ok(rows)
}

fn kernel_checks() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for (lambda, n) in [(0.0, 5usize), (-0.25, 4), (0.5, 7), (1.5, 10)] {
        let param = GegenbauerParam::new(lambda)?;
        let ctx = KernelContext::new(param, n);
        let rule = quadrature::gauss_rule(lambda, n + 1)?;
        rows.push(CheckRow::new(
            format!("trace/lambda={lambda}/n={n}"),
            (n + 1) as f64,
            rule.integrate(|x| ctx.kernel_diag(x)),
            1e-10,
        ));
        for y in [-0.9, 0.1, 0.6] {
            rows.push(CheckRow::new(
                format!("reproducing/lambda={lambda}/n={n}/y={y}"),
                ctx.kernel_diag(y),
                rule.integrate(|x| ctx.kernel(x, y).powi(2)),
                1e-10 * ctx.kernel_diag(y),
            ));
        }
    }
    for n in 1..=4usize {
        rows.push(CheckRow::new(
            format!("chebyshev-l1/n={n}"),
            closedform::l1_cheb(n),
            quadrature::integrate_l1(0.0, n, 1e-9)?.value,
            1e-7,
        ));
        rows.push(CheckRow::new(
            format!("chebyshev-l2/n={n}"),
            closedform::l2_cheb(n)?,
            quadrature::integrate_l2(0.0, n, 1e-9)?.value,
            1e-7,
        ));
    }
    Ok(rows)
}
