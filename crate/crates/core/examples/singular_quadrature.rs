//! The double integrals behind the expected energy, computed by graded
//! Gauss-Legendre quadrature and compared with closed forms where they exist.

use std::time::Instant;

use logdpp::{closedform, quadrature};

fn main() -> logdpp::Result<()> {
    for n in [2usize, 5, 10, 25] {
        let start = Instant::now();
        let e = quadrature::expected_energy_numeric(0.0, n, 1e-9)?;
        let exact = closedform::e0_exact(n + 1)?;
        println!(
            "lambda = 0, n = {n:>2}: quad {:.12}  exact {:.12}  |diff| {:.1e}  est {:.1e}  evals {}  {:?}",
            e.value,
            exact,
            (e.value - exact).abs(),
            e.error_estimate,
            e.evaluations,
            start.elapsed()
        );
    }

    for lambda in [-0.25, 0.5, 1.0, 2.5] {
        let n = 6;
        let quad = quadrature::integrate_l3(lambda, n, 1e-12)?;
        let exact = closedform::l3_exact(lambda, n)?;
        println!(
            "L3(lambda = {lambda:>5}, n = {n}): quad {:.14}  exact {:.14}",
            quad.value, exact
        );
    }

    // one-dimensional Gauss-Gegenbauer rules come from the same recurrence
    let rule = quadrature::gauss_rule(1.5, 6)?;
    println!("\nGauss rule, lambda = 1.5, 6 nodes:");
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        println!("  {x:+.15}  {w:.15}");
    }
    Ok(())
}
