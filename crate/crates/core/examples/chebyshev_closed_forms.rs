//! Closed forms for the arcsine (lambda = 0) ensemble.

use logdpp::closedform;

fn main() -> logdpp::Result<()> {
    println!("{:>4} {:>18} {:>18} {:>18} {:>18}", "n", "L1", "L2", "E = L1 - L2", "L3");
    for n in [1usize, 2, 3, 5, 10, 20, 50] {
        let l1 = closedform::l1_cheb(n);
        let l2 = closedform::l2_cheb(n)?;
        let e = closedform::e0_exact(n + 1)?;
        let l3 = closedform::l3_exact(0.0, n)?;
        println!("{n:>4} {l1:>18.12} {l2:>18.12} {e:>18.12} {l3:>18.12}");
    }

    println!("\nmixed moments J(k, l):");
    for k in 0..=3 {
        let row: Vec<String> = (0..=3).map(|l| format!("{:8.5}", closedform::j_moment(k, l))).collect();
        println!("  k = {k}: {}", row.join(" "));
    }
    Ok(())
}
