//! Eigenvalues of symmetric tridiagonal matrices by Sturm-sequence bisection.
//!
//! Used for Golub–Welsch: the nodes of a Gauss rule (and the zeros of the
//! orthogonal polynomial) are the eigenvalues of the Jacobi matrix.

/// Number of eigenvalues strictly below `shift`, from the signs of the
/// LDLᵀ pivots of `T - shift·I`.
pub fn sturm_count(diagonal: &[f64], off_diagonal: &[f64], shift: f64) -> usize {
    const PIVOT_GUARD: f64 = 1e-300;
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diagonal.len() {
        let coupling = if i == 0 {
            0.0
        } else {
            off_diagonal[i - 1] * off_diagonal[i - 1] / q
        };
        q = diagonal[i] - shift - coupling;
        if q == 0.0 {
            q = -PIVOT_GUARD;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues, ascending.
///
/// `off_diagonal.len()` must be `diagonal.len() - 1` (or zero for an empty matrix).
pub fn eigenvalues(diagonal: &[f64], off_diagonal: &[f64]) -> Vec<f64> {
    let n = diagonal.len();
    assert!(
        n == 0 || off_diagonal.len() == n - 1,
        "off-diagonal length must be n - 1"
    );
    if n == 0 {
        return Vec::new();
    }

    // Gershgorin enclosure
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { off_diagonal[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off_diagonal[i].abs() } else { 0.0 };
        lo = lo.min(diagonal[i] - left - right);
        hi = hi.max(diagonal[i] + left + right);
    }

    (0..n)
        .map(|k| bisect_kth(diagonal, off_diagonal, k, lo, hi))
        .collect()
}

fn bisect_kth(diagonal: &[f64], off_diagonal: &[f64], k: usize, lo: f64, hi: f64) -> f64 {
    let (mut a, mut b) = (lo, hi);
    for _ in 0..2200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if sturm_count(diagonal, off_diagonal, mid) > k {
            b = mid;
        } else {
            a = mid;
        }
    }
    0.5 * (a + b)
}
