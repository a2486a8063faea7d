//! Acceptance suite: ten end-to-end criteria, one PASS/FAIL line each.
//! Exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::time::{Duration, Instant};

use logdpp::closedform::{self, ComparisonMode};
use logdpp::dpp::{self, DppSampler};
use logdpp::fekete;
use logdpp::quadrature::{self, Grading};
use logdpp::specfun::{harmonic, EULER_GAMMA};
use logdpp::sum::CompensatedSum;
use logdpp::verify;

type Outcome = Result<String, String>;

/// Id, description, time limit in seconds, check.
type Criterion = (&'static str, &'static str, u64, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within_time(limit: Duration, start: Instant, outcome: Outcome) -> Outcome {
    let elapsed = start.elapsed();
    match outcome {
        Ok(d) if elapsed <= limit => Ok(format!("{d}; {:.1}s", elapsed.as_secs_f64())),
        Ok(d) => Err(format!("{d}; took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs())),
        Err(d) => Err(format!("{d}; {:.1}s", elapsed.as_secs_f64())),
    }
}

fn fekete_minimal_energy() -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=60usize {
        let exact = fekete::epsilon_exact(n).map_err(|e| e.to_string())?;
        let points = fekete::fekete_points(n).map_err(|e| e.to_string())?;
        let direct = fekete::log_energy(&points).map_err(|e| e.to_string())?;
        worst = worst.max((direct - exact).abs() / exact.abs().max(1.0));
    }
    check(worst <= 1e-8, format!("max scaled deviation {worst:.2e} (n = 2..60)"))
}

fn fekete_asymptotic_tail() -> Outcome {
    let tail = |n: usize| -> Result<f64, String> {
        Ok(fekete::epsilon_exact(n).map_err(|e| e.to_string())?
            - fekete::epsilon_asymptotic(n).map_err(|e| e.to_string())?)
    };
    let t = [tail(100)?, tail(1000)?, tail(10_000)?];
    let d1 = (t[1] - t[0]).abs();
    let d2 = (t[2] - t[1]).abs();
    check(
        d1 < 0.05 && d2 < 0.05,
        format!("tails {:.5} {:.5} {:.5}, decade changes {d1:.2e} {d2:.2e}", t[0], t[1], t[2]),
    )
}

fn chebyshev_closed_vs_quadrature() -> Outcome {
    let mut worst_l = 0.0f64;
    let mut worst_e = 0.0f64;
    for n in 1..=8usize {
        let tol = quadrature::default_tol(n);
        let l1 = quadrature::integrate_l1(0.0, n, tol).map_err(|e| e.to_string())?.value;
        let l2 = quadrature::integrate_l2(0.0, n, tol).map_err(|e| e.to_string())?.value;
        let e = quadrature::expected_energy_numeric(0.0, n, tol)
            .map_err(|e| e.to_string())?
            .value;
        worst_l = worst_l
            .max((l1 - closedform::l1_cheb(n)).abs())
            .max((l2 - closedform::l2_cheb(n).map_err(|e| e.to_string())?).abs());
        worst_e = worst_e.max((e - closedform::e0_exact(n + 1).map_err(|e| e.to_string())?).abs());
    }
    check(
        worst_l <= 1e-5 && worst_e <= 2e-5,
        format!("max |ΔL1|,|ΔL2| = {worst_l:.2e}, max |ΔE| = {worst_e:.2e} (n = 1..8)"),
    )
}

fn universality_trend() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for lambda in [0.5, 1.5] {
        let mut scaled = Vec::new();
        for n in [10usize, 20, 40] {
            let e = quadrature::expected_energy_numeric(lambda, n, 1e-4)
                .map_err(|e| e.to_string())?
                .value;
            let nf = n as f64;
            let leading = (nf + 1.0).powi(2) * LN_2 - (nf + 1.0) * (nf + 1.0).ln()
                + (1.0 - EULER_GAMMA - 2.0 * LN_2) * nf;
            scaled.push((e - leading).abs() / nf);
        }
        ok &= scaled.windows(2).all(|w| w[1] < w[0]);
        details.push(format!(
            "λ={lambda}: |r|/n = {:.4} {:.4} {:.4}",
            scaled[0], scaled[1], scaled[2]
        ));
    }
    check(ok, details.join("; "))
}

fn endpoint_log_integral() -> Outcome {
    let mut worst = 0.0f64;
    for lambda in [-0.25, 0.5, 1.0, 2.5] {
        for n in 0..=10usize {
            let exact = closedform::l3_exact(lambda, n).map_err(|e| e.to_string())?;
            let quad = quadrature::integrate_l3(lambda, n, 1e-10)
                .map_err(|e| e.to_string())?
                .value;
            worst = worst.max((exact - quad).abs());
        }
    }
    let branch_exact = (0..=10usize).all(|n| {
        closedform::l3_exact(0.0, n).ok() == Some(2.0 * (n as f64 + 1.0) * LN_2 + harmonic(n as u64))
    });
    check(
        worst <= 1e-7 && branch_exact,
        format!("max deviation {worst:.2e}; λ=0 branch exact: {branch_exact}"),
    )
}

fn mixed_moments() -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..=4usize {
        for l in 0..=4usize {
            let j = quadrature::integrate_mixed_moment(k, l, 1e-9)
                .map_err(|e| e.to_string())?
                .value;
            worst = worst.max((j - closedform::j_moment(k, l)).abs());
        }
    }
    check(worst <= 1e-6, format!("max deviation {worst:.2e} (k, l ≤ 4)"))
}

fn appendix_lemmas() -> Outcome {
    let mut worst_cos = 0.0f64;
    for k in 1..=8usize {
        let kf = k as f64;
        let plain = verify::cos_log_quadrature(|a| (kf * a).cos(), k).map_err(|e| e.to_string())?;
        let squared =
            verify::cos_log_quadrature(|a| (kf * a).cos().powi(2), 2 * k).map_err(|e| e.to_string())?;
        worst_cos = worst_cos
            .max((plain - 1.0 / kf).abs())
            .max((squared - 1.0 / (4.0 * kf)).abs());
        for l in 1..k {
            let lf = l as f64;
            let mixed = verify::cos_log_quadrature(|a| (kf * a).cos() * (lf * a).cos(), k + l)
                .map_err(|e| e.to_string())?;
            worst_cos = worst_cos.max((mixed - 0.5 * (1.0 / (kf - lf) + 1.0 / (kf + lf))).abs());
        }
    }
    // running sum of H_{2k-1}, compared at every n
    let mut worst_block = 0.0f64;
    let mut running = CompensatedSum::new();
    for n in 2..=10_000usize {
        running.add(harmonic(2 * n as u64 - 1));
        let closed = closedform::harmonic_block_sum(n).map_err(|e| e.to_string())?;
        worst_block = worst_block.max((running.value() - closed).abs());
    }
    let log_sine = quadrature::integrate_graded(
        0.0,
        PI,
        Grading::both(4, 0.0, 0.0),
        |p| -(2.0 * p.from_left.min(p.from_right).sin()).ln(),
        1e-13,
    )
    .map_err(|e| e.to_string())?
    .value;
    let x = 1e4;
    let residual = verify::sine_integral_integral(x) - (FRAC_PI_2 * x.ln() + EULER_GAMMA * FRAC_PI_2);
    check(
        worst_cos <= 1e-7 && worst_block <= 1e-9 && log_sine.abs() <= 1e-8 && residual.abs() <= 1e-3,
        format!(
            "cos-log {worst_cos:.2e}, harmonic block {worst_block:.2e}, log-sine {:.2e}, Si residual {:.2e}",
            log_sine.abs(),
            residual.abs()
        ),
    )
}

fn sampler_statistics() -> Outcome {
    const SAMPLES: usize = 100_000;
    let mut details = Vec::new();
    let mut ok = true;
    for (lambda, n) in [(0.0, 1usize), (0.0, 3), (1.0, 3)] {
        let sampler = DppSampler::new(lambda, n).map_err(|e| e.to_string())?;
        let est = dpp::mc_expected_energy(&sampler, SAMPLES, 2024).map_err(|e| e.to_string())?;
        let reference = if lambda == 0.0 {
            closedform::e0_exact(n + 1).map_err(|e| e.to_string())?
        } else {
            quadrature::expected_energy_numeric(lambda, n, 1e-9)
                .map_err(|e| e.to_string())?
                .value
        };
        let z = (est.mean - reference) / est.std_error;
        ok &= z.abs() <= 4.0;
        details.push(format!("λ={lambda} n={n}: z={z:+.2}"));
    }
    for (lambda, n) in [(0.0, 4usize), (1.0, 3)] {
        let sampler = DppSampler::new(lambda, n).map_err(|e| e.to_string())?;
        let h = dpp::intensity_histogram(&sampler, SAMPLES, 20, 99).map_err(|e| e.to_string())?;
        ok &= h.p_value > 0.001;
        details.push(format!("χ² p(λ={lambda}, n={n})={:.3}", h.p_value));
    }
    check(ok, details.join(", "))
}

fn extremes_comparison() -> Outcome {
    let mut logs = Vec::new();
    let mut gaps = Vec::new();
    let mut ordered = true;
    for n in 5..=40usize {
        let (with_all, with_ends) =
            closedform::corollary_comparison(0.0, n, ComparisonMode::Exact).map_err(|e| e.to_string())?;
        ordered &= with_all < with_ends;
        logs.push((n as f64).ln());
        gaps.push(with_ends - with_all);
    }
    let m = logs.len() as f64;
    let mx = logs.iter().sum::<f64>() / m;
    let my = gaps.iter().sum::<f64>() / m;
    let sxy: f64 = logs.iter().zip(&gaps).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = gaps.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = sxy * sxy / (sxx * syy);
    check(
        ordered && slope > 0.0 && r2 > 0.99,
        format!("ordered: {ordered}, slope {slope:.4}, R² {r2:.5}"),
    )
}

fn excess_constant() -> Outcome {
    let n = 100usize;
    let minimum = fekete::epsilon_exact(n + 1).map_err(|e| e.to_string())?;
    let mut details = Vec::new();
    let mut ok = true;
    for lambda in [0.0, 0.5, 1.0] {
        let e = quadrature::expected_energy_numeric(lambda, n, 1e-4)
            .map_err(|e| e.to_string())?
            .value;
        let excess = (e - minimum) / n as f64;
        ok &= (0.32..=0.53).contains(&excess);
        details.push(format!("λ={lambda}: {excess:.4}"));
    }
    check(ok, format!("excess per point {} (1 − γ = {:.4})", details.join(", "), 1.0 - EULER_GAMMA))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1", "Fekete energy equals the exact minimum", 5, fekete_minimal_energy),
        ("AC2", "minimum minus asymptotic expansion is O(1)", 1, fekete_asymptotic_tail),
        ("AC3", "Chebyshev closed forms vs singular quadrature", 60, chebyshev_closed_vs_quadrature),
        ("AC4", "universality remainder is o(n)", 600, universality_trend),
        ("AC5", "endpoint log integral closed form vs quadrature", 30, endpoint_log_integral),
        ("AC6", "mixed Chebyshev moments", 60, mixed_moments),
        ("AC7", "circle log integrals, harmonic sums, Si asymptotics", 60, appendix_lemmas),
        ("AC8", "sampler energy and intensity statistics", 300, sampler_statistics),
        ("AC9", "with-endpoints process has larger energy by O(log n)", 5, extremes_comparison),
        ("AC10", "excess over the minimum per point at n = 100", 600, excess_constant),
    ];
    let mut failures = 0;
    for (id, name, limit_s, run) in criteria {
        let start = Instant::now();
        let outcome = within_time(Duration::from_secs(limit_s), start, run());
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {id} {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
