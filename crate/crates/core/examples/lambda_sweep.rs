//! Expected energy across the Gegenbauer family against the minimal energy of
//! the same number of points, written as CSV.

use std::time::Instant;

use logdpp::fekete;
use logdpp::quadrature;
use logdpp::report::{Method, Quantity, Report, ReportRow};

fn main() -> logdpp::Result<()> {
    let n = 30;
    let mut report = Report::default();
    report.push(ReportRow {
        method: Method::EpsilonExact,
        quantity: Quantity::Energy,
        lambda: None,
        n_points: n + 1,
        value: fekete::epsilon_exact(n + 1)?,
        error: None,
        runtime_ms: 0,
    });
    for step in 0..=8 {
        let lambda = -0.25 + 0.25 * step as f64;
        let start = Instant::now();
        let e = quadrature::expected_energy_numeric(lambda, n, 1e-6)?;
        report.push(ReportRow {
            method: Method::Quadrature,
            quantity: Quantity::Energy,
            lambda: Some(lambda),
            n_points: n + 1,
            value: e.value,
            error: Some(e.error_estimate),
            runtime_ms: start.elapsed().as_millis() as u64,
        });
    }
    print!("{}", report.to_csv());

    let minimum = report.rows[0].value;
    println!();
    for row in &report.rows[1..] {
        println!(
            "lambda = {:>5}: excess per point {:.4}",
            row.lambda.unwrap_or(f64::NAN),
            (row.value - minimum) / n as f64
        );
    }
    Ok(())
}
