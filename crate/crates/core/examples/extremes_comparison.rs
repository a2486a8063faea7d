//! Two ways to put n + 3 points on [-1, 1] with the arcsine process: sample all
//! of them, or sample n + 1 and pin the endpoints. Pinning costs about c log n.

use logdpp::closedform::{self, ComparisonMode};

fn main() -> logdpp::Result<()> {
    println!("{:>4} {:>16} {:>16} {:>10}", "n", "all random", "pinned ends", "gap");
    for n in [5usize, 10, 20, 40, 80, 160] {
        let (all, pinned) = closedform::corollary_comparison(0.0, n, ComparisonMode::Exact)?;
        println!("{n:>4} {all:>16.8} {pinned:>16.8} {:>10.5}", pinned - all);
    }

    // away from lambda = 0 the comparison needs quadrature; check that path first
    let exact = closedform::corollary_comparison(0.0, 8, ComparisonMode::Exact)?;
    let numeric = closedform::corollary_comparison(0.0, 8, ComparisonMode::Numeric { tol: 1e-8 })?;
    println!("\nlambda = 0, n = 8: exact {exact:.8?}, numeric {numeric:.8?}");
    let (all, pinned) = closedform::corollary_comparison(1.0, 8, ComparisonMode::Numeric { tol: 1e-8 })?;
    println!("lambda = 1, n = 8: all random {all:.8}, pinned ends {pinned:.8}");
    Ok(())
}
