//! Fekete points of `[-1, 1]`, the pairwise logarithmic energy, and the
//! minimal energy `ε_n` in exact and asymptotic form.

use crate::error::{Error, Result};
use crate::orthopoly::{jacobi11, GegenbauerParam};
use crate::specfun::sum_j_log_j;
use crate::sum::CompensatedSum;
use crate::tridiag;

/// Points closer than this are treated as coincident by [`log_energy`].
pub const DUPLICATE_THRESHOLD: f64 = 1e-15;

const NEWTON_STEP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Fekete,
    DppSample,
    Manual,
}

/// A sorted point set in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfiguration {
    points: Vec<f64>,
    provenance: Provenance,
}

impl PointConfiguration {
    /// Sorts `points` and checks that they lie in `[-1, 1]` and are distinct.
    pub fn new(mut points: Vec<f64>, provenance: Provenance) -> Result<Self> {
        for &p in &points {
            if !(-1.0..=1.0).contains(&p) {
                return Err(Error::domain("point", p, "points must lie in [-1, 1]"));
            }
        }
        points.sort_by(f64::total_cmp);
        for w in points.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePoint {
                    a: w[0],
                    b: w[1],
                    threshold: 0.0,
                });
            }
        }
        Ok(Self { points, provenance })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `−Σ_{i≠j} log|x_i − x_j|`, every unordered pair counted twice.
pub fn log_energy(cfg: &PointConfiguration) -> Result<f64> {
    log_energy_of(cfg.points())
}

/// [`log_energy`] on a sorted slice.
pub(crate) fn log_energy_of(points: &[f64]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::domain(
            "len",
            points.len() as f64,
            "energy needs at least two points",
        ));
    }
    let mut acc = CompensatedSum::new();
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            let gap = (b - a).abs();
            if gap < DUPLICATE_THRESHOLD {
                return Err(Error::DuplicatePoint {
                    a,
                    b,
                    threshold: DUPLICATE_THRESHOLD,
                });
            }
            acc.add(gap.ln());
        }
    }
    Ok(-2.0 * acc.value())
}

/// Zeros of `P_m^{(1,1)}`, ascending and exactly symmetric.
pub fn jacobi11_zeros(m: usize) -> Vec<f64> {
    if m == 0 {
        return Vec::new();
    }
    // (1 − x²) is w^λ at λ = 3/2
    let param = GegenbauerParam::new(1.5).expect("valid parameter");
    let offdiag: Vec<f64> = (1..m).map(|k| param.jacobi_offdiagonal(k)).collect();
    let mut zeros = tridiag::eigenvalues(&vec![0.0; m], &offdiag);
    for z in zeros.iter_mut() {
        let p = jacobi11(m, *z);
        let dp = (jacobi11(m, *z + NEWTON_STEP) - jacobi11(m, *z - NEWTON_STEP)) / (2.0 * NEWTON_STEP);
        if dp != 0.0 && p.is_finite() {
            *z -= p / dp;
        }
    }
    for i in 0..m / 2 {
        let j = m - 1 - i;
        let half = 0.5 * (zeros[j] - zeros[i]);
        zeros[i] = -half;
        zeros[j] = half;
    }
    if m % 2 == 1 {
        zeros[m / 2] = 0.0;
    }
    zeros
}

/// The `n`-point Fekete set: `±1` and the zeros of `P_{n−2}^{(1,1)}`.
pub fn fekete_points(n: usize) -> Result<PointConfiguration> {
    if n < 2 {
        return Err(Error::domain("n", n as f64, "need n >= 2"));
    }
    let mut points = Vec::with_capacity(n);
    points.push(-1.0);
    points.extend(jacobi11_zeros(n - 2));
    points.push(1.0);
    Ok(PointConfiguration {
        points,
        provenance: Provenance::Fekete,
    })
}

/// Minimal energy of `n` points in closed form.
pub fn epsilon_exact(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("n", n as f64, "need n >= 2"));
    }
    let nf = n as f64;
    let ln2 = std::f64::consts::LN_2;
    let mut acc = CompensatedSum::new();
    acc.add(-nf * (nf - 1.0) * ln2);
    acc.add(-3.0 * (nf - 1.0) * (nf - 1.0).ln());
    acc.add(-nf * nf.ln());
    acc.add(-4.0 * sum_j_log_j((n - 2) as u64));
    acc.add(sum_j_log_j((2 * n - 2) as u64));
    Ok(acc.value())
}

/// Leading terms `n² log 2 − n log n − 2n log 2 − (log n)/4` of the minimal energy.
pub fn epsilon_asymptotic(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("n", n as f64, "need n >= 2"));
    }
    let nf = n as f64;
    let ln2 = std::f64::consts::LN_2;
    Ok(ln2 * nf * nf - nf * nf.ln() - 2.0 * ln2 * nf - 0.25 * nf.ln())
}

/// `log` of the discriminant of `P_m^{(1,1)}`, from its product formula.
pub fn discriminant_log(m: usize) -> Result<f64> {
    if m < 1 {
        return Err(Error::domain("m", m as f64, "need m >= 1"));
    }
    let mf = m as f64;
    let n = mf + 2.0;
    let mut acc = CompensatedSum::new();
    acc.add(-mf * (mf - 1.0) * std::f64::consts::LN_2);
    for j in 1..=m {
        let j = j as f64;
        acc.add((j - 2.0 * n + 6.0) * j.ln());
        acc.add(2.0 * (j - 1.0) * (j + 1.0).ln());
        acc.add((n - 2.0 - j) * (n + j).ln());
    }
    Ok(acc.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EnergyMethod {
    FeketeDirect,
    EpsilonExact,
    EpsilonAsymptotic,
}

impl EnergyMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            EnergyMethod::FeketeDirect => "fekete-direct",
            EnergyMethod::EpsilonExact => "epsilon-exact",
            EnergyMethod::EpsilonAsymptotic => "epsilon-asymptotic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyRow {
    pub method: EnergyMethod,
    pub n: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EnergyReport {
    pub rows: Vec<EnergyRow>,
}

/// Three rows per `n`: the direct energy of the Fekete points, the exact
/// minimum, and its asymptotic expansion.
pub fn energy_report(n_list: &[usize]) -> Result<EnergyReport> {
    let mut rows = Vec::with_capacity(3 * n_list.len());
    for &n in n_list {
        rows.push(EnergyRow {
            method: EnergyMethod::FeketeDirect,
            n,
            value: log_energy(&fekete_points(n)?)?,
        });
        rows.push(EnergyRow {
            method: EnergyMethod::EpsilonExact,
            n,
            value: epsilon_exact(n)?,
        });
        rows.push(EnergyRow {
            method: EnergyMethod::EpsilonAsymptotic,
            n,
            value: epsilon_asymptotic(n)?,
        });
    }
    Ok(EnergyReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn small_configurations() {
        assert_eq!(fekete_points(2).unwrap().points(), &[-1.0, 1.0]);
        assert_eq!(fekete_points(3).unwrap().points(), &[-1.0, 0.0, 1.0]);
        let p4 = fekete_points(4).unwrap();
        let a = 1.0 / 5f64.sqrt();
        assert!((p4.points()[1] + a).abs() < 1e-15);
        assert!((p4.points()[2] - a).abs() < 1e-15);
        assert!(fekete_points(1).is_err());
    }

    #[test]
    fn energy_of_small_sets() {
        let two = PointConfiguration::new(vec![1.0, -1.0], Provenance::Manual).unwrap();
        assert!((log_energy(&two).unwrap() + 2.0 * LN_2).abs() < 1e-15);
        let three = fekete_points(3).unwrap();
        assert!((log_energy(&three).unwrap() + 2.0 * LN_2).abs() < 1e-15);
        // zeros ±1/√5
        let e4 = log_energy(&fekete_points(4).unwrap()).unwrap();
        assert!((e4 + 0.270_576_604_548_8).abs() < 1e-12);
    }

    #[test]
    fn duplicates_rejected() {
        assert!(PointConfiguration::new(vec![0.1, 0.1], Provenance::Manual).is_err());
        assert!(PointConfiguration::new(vec![0.1, 1.5], Provenance::Manual).is_err());
        assert!(matches!(
            log_energy_of(&[0.2, 0.2 + 1e-16]),
            Err(Error::DuplicatePoint { .. })
        ));
    }

    #[test]
    fn epsilon_small_n() {
        assert!((epsilon_exact(2).unwrap() + 2.0 * LN_2).abs() < 1e-15);
        assert!((epsilon_exact(3).unwrap() + 2.0 * LN_2).abs() < 1e-14);
        assert!((epsilon_exact(4).unwrap() + 0.270_576_604_548_8).abs() < 1e-12);
    }

    #[test]
    fn epsilon_asymptotic_plug_in() {
        let ten = 10f64;
        let expected = 100.0 * LN_2 - 10.0 * ten.ln() - 20.0 * LN_2 - 0.25 * ten.ln();
        assert_eq!(epsilon_asymptotic(10).unwrap(), expected);
    }

    #[test]
    fn discriminant_against_zeros() {
        assert!(discriminant_log(1).unwrap().abs() < 1e-15);
        assert!((discriminant_log(2).unwrap() - (45.0f64 / 4.0).ln()).abs() < 1e-14);
        for m in 2..=20usize {
            let zeros = jacobi11_zeros(m);
            // κ = 2^{-m} binom(2m+2, m)
            let mut log_kappa = -(m as f64) * LN_2;
            for i in 0..m {
                log_kappa += ((2 * m + 2 - i) as f64).ln() - ((i + 1) as f64).ln();
            }
            let mut log_vdm = 0.0;
            for i in 0..m {
                for j in i + 1..m {
                    log_vdm += 2.0 * (zeros[j] - zeros[i]).ln();
                }
            }
            let direct = (2 * m - 2) as f64 * log_kappa + log_vdm;
            let formula = discriminant_log(m).unwrap();
            assert!((direct - formula).abs() < 1e-8, "m={m}: {direct} vs {formula}");
        }
    }

    #[test]
    fn discriminant_identity_gives_epsilon() {
        // ε_n = −2 log 2 − 4 log(n−1) + 2(n−1) log κ − log D
        for n in 4..=30usize {
            let m = n - 2;
            let mut log_kappa = -(m as f64) * LN_2;
            for i in 0..m {
                log_kappa += ((2 * m + 2 - i) as f64).ln() - ((i + 1) as f64).ln();
            }
            let via_disc = -2.0 * LN_2 - 4.0 * ((n - 1) as f64).ln()
                + 2.0 * (n - 1) as f64 * log_kappa
                - discriminant_log(m).unwrap();
            let exact = epsilon_exact(n).unwrap();
            assert!((via_disc - exact).abs() < 1e-9 * exact.abs().max(1.0), "n={n}");
        }
    }

    #[test]
    fn report_layout() {
        let r = energy_report(&[2, 3, 4]).unwrap();
        assert_eq!(r.rows.len(), 9);
        for chunk in r.rows.chunks(3) {
            assert!((chunk[0].value - chunk[1].value).abs() < 1e-10);
        }
        let r = energy_report(&[50]).unwrap();
        assert!((r.rows[0].value - r.rows[1].value).abs() <= 1e-8 * r.rows[1].value.abs());
    }
}
