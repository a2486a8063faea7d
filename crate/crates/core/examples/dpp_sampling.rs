//! Exact sampling from the Gegenbauer projection process, a Monte Carlo
//! estimate of its expected energy, and a binned intensity check.

use logdpp::dpp::{self, DppSampler};
use logdpp::fekete;
use logdpp::quadrature;

fn main() -> logdpp::Result<()> {
    let lambda = 1.0;
    let n = 5;
    let sampler = DppSampler::new(lambda, n)?;
    println!("rank {} projection process, lambda = {lambda}", sampler.rank());

    for index in 0..3 {
        let cfg = sampler.sample(7, index)?;
        let pts: Vec<String> = cfg.points().iter().map(|x| format!("{x:+.4}")).collect();
        println!("sample {index}: [{}]  energy {:.4}", pts.join(", "), fekete::log_energy(&cfg)?);
    }

    // step through one draw by hand
    let mut rng = DppSampler::stream(7, 99);
    let mut state = sampler.start();
    while state.remaining() > 0 {
        let mass = state.conditional_mass();
        let x = state.step(&mut rng)?;
        println!("  residual mass {mass:.6} -> drew {x:+.6}");
    }

    let mc = dpp::mc_expected_energy(&sampler, 20_000, 1)?;
    let quad = quadrature::expected_energy_numeric(lambda, n, 1e-9)?;
    println!(
        "\nMonte Carlo {:.5} +/- {:.5} ({} samples), quadrature {:.8}",
        mc.mean, mc.std_error, mc.num_samples, quad.value
    );

    let hist = dpp::intensity_histogram(&sampler, 20_000, 12, 3)?;
    for b in &hist.bins {
        println!("  [{:+.3}, {:+.3}): empirical {:.4}  expected {:.4}", b.lo, b.hi, b.empirical, b.theoretical);
    }
    println!(
        "chi-square {:.2} on {} dof, p = {:.3}",
        hist.chi_square, hist.degrees_of_freedom, hist.p_value
    );
    Ok(())
}
