//! Minimal logarithmic energy on [-1, 1]: direct evaluation at the Fekete
//! points next to the exact product formula and its large-n expansion.

use logdpp::fekete::{self, EnergyMethod};

fn main() -> logdpp::Result<()> {
    let points = fekete::fekete_points(7)?;
    println!("Fekete points for n = 7:");
    for x in points.points() {
        println!("  {x:+.15}");
    }

    let report = fekete::energy_report(&[3, 5, 10, 20, 50, 100])?;
    println!("\n{:>5} {:>20} {:>20} {:>20}", "n", "direct", "exact", "asymptotic");
    let mut ns: Vec<usize> = report.rows.iter().map(|r| r.n).collect();
    ns.dedup();
    for n in ns {
        let get = |m: EnergyMethod| {
            report
                .rows
                .iter()
                .find(|r| r.n == n && r.method == m)
                .map_or(f64::NAN, |r| r.value)
        };
        println!(
            "{n:>5} {:>20.12} {:>20.12} {:>20.12}",
            get(EnergyMethod::FeketeDirect),
            get(EnergyMethod::EpsilonExact),
            get(EnergyMethod::EpsilonAsymptotic),
        );
    }

    // the exact-minus-asymptotic gap settles to a constant
    for n in [100usize, 1_000, 10_000, 100_000] {
        let gap = fekete::epsilon_exact(n)? - fekete::epsilon_asymptotic(n)?;
        println!("n = {n:>6}: exact - asymptotic = {gap:.8}");
    }
    Ok(())
}
