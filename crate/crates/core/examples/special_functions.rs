//! Special functions used throughout: digamma, log-gamma, harmonic numbers and
//! the sine integral.

use logdpp::specfun::{self, EULER_GAMMA};

fn main() -> logdpp::Result<()> {
    for x in [0.25, 0.5, 1.0, 3.5, 10.0] {
        println!(
            "x = {x:>5}: psi {:+.15}  lgamma {:+.15}",
            specfun::digamma(x)?,
            specfun::log_gamma(x)?
        );
    }
    // reflection handles negative non-integers
    println!("psi(-0.5) = {:+.15}", specfun::digamma(-0.5)?);
    println!("psi(1) + gamma = {:.2e}", specfun::digamma(1.0)? + EULER_GAMMA);

    for n in [1u64, 10, 1_000, 1_000_000] {
        let h = specfun::harmonic(n);
        println!("H_{n} = {h:.15}  (H_n - ln n = {:.15})", h - (n as f64).ln());
    }

    for x in [0.5, 2.0, 10.0, 100.0, 1e4] {
        let si = specfun::sine_integral_value(x);
        println!("Si({x}) = {:.15}  (bound {:.1e})", si.value, si.abs_error_bound);
    }
    Ok(())
}
