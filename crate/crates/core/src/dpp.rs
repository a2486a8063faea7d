//! Exact sampling of the `(n+1)`-point Gegenbauer projection process and
//! Monte Carlo estimates of its logarithmic energy.
//!
//! Points are drawn one at a time. With `Φ(x) = (Ĉ_0(x), …, Ĉ_n(x))` and
//! `e_1, …, e_t` an orthonormal basis of the span of `Φ` at the points chosen
//! so far, the next point has density
//!
//! ```text
//! (|Φ(x)|² − Σ_j ⟨e_j, Φ(x)⟩²) w(x) / (n + 1 − t).
//! ```
//!
//! The residual `|Φ|² − Σ⟨e_j, Φ⟩²` is tracked on a fixed Gauss–Legendre grid
//! in `θ = arccos x` (graded toward the ends when `w` is singular there).
//! A draw picks a panel from the tabulated masses and then inverts the
//! in-panel distribution function by safeguarded Newton.
//!
//! Sample `i` of a run with seed `s` uses `ChaCha8Rng::seed_from_u64(s)` on
//! stream `i`, so samples can be generated in any order or in parallel.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::fekete::{log_energy, PointConfiguration, Provenance};
use crate::orthopoly::{GegenbauerParam, KernelContext};
use crate::quadrature::{self, Anchor, AnglePoint, Grading, Panel};
use crate::sum::pairwise_sum;

/// Residuals in `[-CLAMP · max(1, K(x,x)), 0)` are rounding and set to 0.
pub const NEGATIVE_DENSITY_CLAMP: f64 = 1e-12;

const GRID_DEPTH: usize = 4;
/// Largest double below 1.
const OPEN_EDGE: f64 = 1.0 - f64::EPSILON / 2.0;
const NEWTON_MAX_ITER: usize = 100;

#[derive(Debug, Clone, Copy)]
struct GridNode {
    x: f64,
    /// Gauss weight × Jacobian × `c_λ sin^{2λ}θ`.
    mass_weight: f64,
}

/// Tabulated basis on the sampling grid for one `(λ, n)`.
#[derive(Debug, Clone)]
pub struct DppSampler {
    ctx: KernelContext,
    weight_constant: f64,
    panels: Vec<Panel>,
    nodes: Vec<GridNode>,
    /// `nodes.len() × (n+1)`, row-major.
    basis: Vec<f64>,
    diag: Vec<f64>,
}

fn angle_point(panel: &Panel, distance: f64) -> AnglePoint {
    match panel.anchor {
        Anchor::Left => AnglePoint::from_distances(distance, PI - distance),
        Anchor::Right => AnglePoint::from_distances(PI - distance, distance),
    }
}

impl DppSampler {
    pub fn new(lambda: f64, n: usize) -> Result<Self> {
        let param = GegenbauerParam::new(lambda)?;
        let ctx = KernelContext::new(param, n);
        let rank = n + 1;
        let base_panels = n + 8;
        let grading = if param.has_smooth_angular_weight() {
            Grading {
                base_panels,
                left: None,
                right: None,
            }
        } else {
            Grading::both(base_panels, 2.0 * lambda, 2.0 * lambda)
        };
        let panels = grading.mesh(PI, GRID_DEPTH);
        let c = param.weight_constant();
        let mut nodes = Vec::with_capacity(panels.len() * 16);
        let mut basis = Vec::with_capacity(panels.len() * 16 * rank);
        let mut diag = Vec::with_capacity(panels.len() * 16);
        let mut row = vec![0.0; rank];
        for panel in &panels {
            for (d, w) in panel.nodes() {
                let p = angle_point(panel, d);
                ctx.basis_values(p.x, &mut row);
                nodes.push(GridNode {
                    x: p.x,
                    mass_weight: w * angular_weight(&param, c, &p),
                });
                diag.push(row.iter().map(|v| v * v).sum());
                basis.extend_from_slice(&row);
            }
        }
        Ok(Self {
            ctx,
            weight_constant: c,
            panels,
            nodes,
            basis,
            diag,
        })
    }

    pub fn context(&self) -> &KernelContext {
        &self.ctx
    }

    pub fn lambda(&self) -> f64 {
        self.ctx.lambda()
    }

    /// Number of points per sample, `n + 1`.
    pub fn rank(&self) -> usize {
        self.ctx.n() + 1
    }

    pub fn grid_size(&self) -> usize {
        self.nodes.len()
    }

    /// Empty state, ready to draw the first point.
    pub fn start(&self) -> SamplerState<'_> {
        SamplerState {
            sampler: self,
            selected: Vec::with_capacity(self.rank()),
            directions: Vec::with_capacity(self.rank()),
            residual: self.diag.clone(),
        }
    }

    /// The random stream used for sample `index` of a run seeded with `seed`.
    pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        rng
    }

    /// One draw of the `n + 1` points.
    pub fn sample_with<R: Rng>(&self, rng: &mut R) -> Result<PointConfiguration> {
        let mut state = self.start();
        while state.remaining() > 0 {
            state.step(rng)?;
        }
        PointConfiguration::new(state.selected, Provenance::DppSample)
    }

    /// Sample `index` of the run seeded with `seed`.
    pub fn sample(&self, seed: u64, index: u64) -> Result<PointConfiguration> {
        self.sample_with(&mut Self::stream(seed, index))
    }
}

fn angular_weight(param: &GegenbauerParam, c: f64, p: &AnglePoint) -> f64 {
    if param.is_chebyshev() {
        c
    } else {
        c * p.sin.powf(2.0 * param.lambda())
    }
}

fn clamp_residual(r: f64, scale: f64, x: f64) -> Result<f64> {
    if r >= 0.0 {
        Ok(r)
    } else if r >= -NEGATIVE_DENSITY_CLAMP * scale.max(1.0) {
        Ok(0.0)
    } else {
        Err(Error::NegativeConditionalDensity { x, density: r })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A partially drawn sample.
#[derive(Debug, Clone)]
pub struct SamplerState<'a> {
    sampler: &'a DppSampler,
    selected: Vec<f64>,
    directions: Vec<Vec<f64>>,
    residual: Vec<f64>,
}

impl SamplerState<'_> {
    pub fn selected(&self) -> &[f64] {
        &self.selected
    }

    pub fn remaining(&self) -> usize {
        self.sampler.rank() - self.selected.len()
    }

    /// Integral of the current conditional density over the sampling grid;
    /// 1 up to quadrature error while points remain.
    pub fn conditional_mass(&self) -> f64 {
        let mass: Vec<f64> = self
            .residual
            .iter()
            .zip(&self.sampler.nodes)
            .map(|(r, node)| r * node.mass_weight)
            .collect();
        pairwise_sum(&mass) / self.remaining() as f64
    }

    /// Residual `|Φ(x)|² − Σ_j ⟨e_j, Φ(x)⟩²` at an arbitrary point.
    fn residual_at(&self, x: f64, row: &mut [f64]) -> Result<f64> {
        self.sampler.ctx.basis_values(x, row);
        let full: f64 = row.iter().map(|v| v * v).sum();
        let projected: f64 = self.directions.iter().map(|e| dot(e, row).powi(2)).sum();
        clamp_residual(full - projected, full, x)
    }

    /// Density in the panel variable `σ`.
    fn panel_density(&self, panel: &Panel, s: f64, row: &mut [f64]) -> Result<f64> {
        let (d, jac) = panel.map(s);
        let p = angle_point(panel, d);
        let param = self.sampler.ctx.param();
        Ok(self.residual_at(p.x, row)? * jac * angular_weight(param, self.sampler.weight_constant, &p))
    }

    /// Mass of `[0, s]` in the panel variable.
    fn panel_partial_mass(&self, panel: &Panel, s: f64, row: &mut [f64]) -> Result<f64> {
        let mut acc = 0.0;
        for &(node, w) in quadrature::reference_rule() {
            acc += w * self.panel_density(panel, s * node, row)?;
        }
        Ok(s * acc)
    }

    /// Solve `mass([0, s]) = target` inside a panel.
    fn invert_panel(&self, panel: &Panel, target: f64, total: f64, row: &mut [f64]) -> Result<f64> {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut s = if total > 0.0 { (target / total).clamp(0.0, 1.0) } else { 0.5 };
        for _ in 0..NEWTON_MAX_ITER {
            let f = self.panel_partial_mass(panel, s, row)? - target;
            if f.abs() <= 1e-15 * total {
                break;
            }
            if f > 0.0 {
                hi = s;
            } else {
                lo = s;
            }
            if hi - lo <= f64::EPSILON {
                break;
            }
            let slope = self.panel_density(panel, s, row)?;
            let newton = s - f / slope;
            s = if slope > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
        }
        Ok(s)
    }

    /// Draw the next point and condition on it.
    pub fn step<R: Rng>(&mut self, rng: &mut R) -> Result<f64> {
        if self.remaining() == 0 {
            return Err(Error::Unsupported("sample already complete".into()));
        }
        let sampler = self.sampler;
        let rank = sampler.rank();
        let per_panel = quadrature::reference_rule().len();
        let masses: Vec<f64> = self
            .residual
            .chunks(per_panel)
            .zip(sampler.nodes.chunks(per_panel))
            .map(|(r, nodes)| r.iter().zip(nodes).map(|(r, n)| r * n.mass_weight).sum())
            .collect();
        let mut cumulative = Vec::with_capacity(masses.len());
        let mut running = 0.0;
        for m in &masses {
            running += m;
            cumulative.push(running);
        }
        let u = rng.random::<f64>() * running;
        let mut index = cumulative.partition_point(|&c| c <= u);
        if index >= masses.len() {
            index = masses.iter().rposition(|&m| m > 0.0).unwrap_or(masses.len() - 1);
        }
        let before = if index == 0 { 0.0 } else { cumulative[index - 1] };
        let target = (u - before).clamp(0.0, masses[index]);

        let panel = &sampler.panels[index];
        let mut row = vec![0.0; rank];
        let s = self.invert_panel(panel, target, masses[index], &mut row)?;
        let (d, _) = panel.map(s);
        // cos θ rounds to ±1 within ~1e-8 of an end; keep points in the open interval
        let x = angle_point(panel, d).x.clamp(-OPEN_EDGE, OPEN_EDGE);

        // new orthonormal direction, Gram–Schmidt twice
        sampler.ctx.basis_values(x, &mut row);
        let full: f64 = row.iter().map(|v| v * v).sum();
        let mut v = row.clone();
        for _ in 0..2 {
            for e in &self.directions {
                let c = dot(e, &v);
                for (vi, ei) in v.iter_mut().zip(e) {
                    *vi -= c * ei;
                }
            }
        }
        let norm2 = dot(&v, &v);
        if !(norm2 > NEGATIVE_DENSITY_CLAMP * full.max(1.0)) {
            return Err(Error::NegativeConditionalDensity { x, density: norm2 });
        }
        let norm = norm2.sqrt();
        v.iter_mut().for_each(|vi| *vi /= norm);

        for (i, r) in self.residual.iter_mut().enumerate() {
            let phi = &sampler.basis[i * rank..(i + 1) * rank];
            let c = dot(&v, phi);
            *r = clamp_residual(*r - c * c, sampler.diag[i], sampler.nodes[i].x)?;
        }
        self.directions.push(v);
        self.selected.push(x);
        Ok(x)
    }
}

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub num_samples: usize,
}

/// Mean and standard error of a sample, reduced in a fixed order.
pub fn estimate(values: &[f64]) -> Result<McEstimate> {
    let count = values.len();
    if count < 2 {
        return Err(Error::domain("num_samples", count as f64, "need at least 2 samples"));
    }
    let mean = pairwise_sum(values) / count as f64;
    let squares: Vec<f64> = values.iter().map(|v| (v - mean).powi(2)).collect();
    let variance = pairwise_sum(&squares) / (count - 1) as f64;
    Ok(McEstimate {
        mean,
        std_error: (variance / count as f64).sqrt(),
        num_samples: count,
    })
}

/// Monte Carlo estimate of the expected logarithmic energy. Bit-identical
/// for a fixed `(seed, num_samples)` regardless of the thread count.
pub fn mc_expected_energy(sampler: &DppSampler, num_samples: usize, seed: u64) -> Result<McEstimate> {
    if num_samples < 2 {
        return Err(Error::domain("num_samples", num_samples as f64, "need at least 2 samples"));
    }
    let energies = (0..num_samples as u64)
        .into_par_iter()
        .map(|i| log_energy(&sampler.sample(seed, i)?))
        .collect::<Result<Vec<f64>>>()?;
    estimate(&energies)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    /// Mean number of points per sample in the bin.
    pub empirical: f64,
    /// `∫_bin K(x,x) w(x) dx`.
    pub theoretical: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntensityHistogram {
    pub bins: Vec<HistogramBin>,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// One-point intensity `K(x,x) w(x)` integrated over `[a, b] ⊂ [-1, 1]`.
pub fn intensity_mass(ctx: &KernelContext, a: f64, b: f64) -> Result<f64> {
    for (name, v) in [("a", a), ("b", b)] {
        if !(-1.0..=1.0).contains(&v) {
            return Err(Error::domain(name, v, "must lie in [-1, 1]"));
        }
    }
    if b <= a {
        return Ok(0.0);
    }
    Ok(intensity_cdf(ctx, b)? - intensity_cdf(ctx, a)?)
}

/// Intensity mass of `[-1, x]`, always integrated from the nearer endpoint so
/// that the singular end is graded and the free end stays away from it.
fn intensity_cdf(ctx: &KernelContext, x: f64) -> Result<f64> {
    if x <= 0.0 {
        intensity_near_end(ctx, x.acos(), PI, false)
    } else {
        Ok(ctx.n() as f64 + 1.0 - intensity_near_end(ctx, 0.0, x.acos(), true)?)
    }
}

/// `∫ K(x,x) w(x) dx` over `θ ∈ [lo, hi]`, where exactly one of the limits
/// is an endpoint of `[0, π]`.
fn intensity_near_end(ctx: &KernelContext, theta_lo: f64, theta_hi: f64, at_zero: bool) -> Result<f64> {
    if theta_hi <= theta_lo {
        return Ok(0.0);
    }
    let param = *ctx.param();
    let c = param.weight_constant();
    let beta = if param.has_smooth_angular_weight() { 0.0 } else { 2.0 * param.lambda() };
    let grading = Grading {
        base_panels: ((theta_hi - theta_lo) * (ctx.n() + 2) as f64 / PI).ceil() as usize + 1,
        left: at_zero.then_some(beta),
        right: (!at_zero).then_some(beta),
    };
    let r = quadrature::integrate_graded(
        theta_lo,
        theta_hi,
        grading,
        |p| {
            let point = if at_zero {
                AnglePoint::from_distances(p.from_left, PI - p.x)
            } else {
                AnglePoint::from_distances(p.x, p.from_right)
            };
            ctx.kernel_diag(point.x) * angular_weight(&param, c, &point)
        },
        1e-13,
    )?;
    Ok(r.value)
}

/// Histogram of sampled points on `bins` equal bins of `[-1, 1]` against the
/// one-point intensity, with a chi-square goodness-of-fit test on
/// `bins − 1` degrees of freedom.
pub fn intensity_histogram(
    sampler: &DppSampler,
    num_samples: usize,
    bins: usize,
    seed: u64,
) -> Result<IntensityHistogram> {
    if bins < 10 {
        return Err(Error::domain("bins", bins as f64, "need at least 10 bins"));
    }
    if num_samples < 1 {
        return Err(Error::domain("num_samples", 0.0, "need at least 1 sample"));
    }
    let width = 2.0 / bins as f64;
    let samples = (0..num_samples as u64)
        .into_par_iter()
        .map(|i| sampler.sample(seed, i))
        .collect::<Result<Vec<_>>>()?;
    let mut counts = vec![0u64; bins];
    for cfg in &samples {
        for &x in cfg.points() {
            let k = (((x + 1.0) / width) as usize).min(bins - 1);
            counts[k] += 1;
        }
    }
    let mut rows = Vec::with_capacity(bins);
    let mut chi_square = 0.0;
    for (k, &count) in counts.iter().enumerate() {
        let lo = -1.0 + k as f64 * width;
        let hi = if k + 1 == bins { 1.0 } else { lo + width };
        let theoretical = intensity_mass(sampler.context(), lo, hi)?;
        let expected = theoretical * num_samples as f64;
        chi_square += (count as f64 - expected).powi(2) / expected;
        rows.push(HistogramBin {
            lo,
            hi,
            empirical: count as f64 / num_samples as f64,
            theoretical,
        });
    }
    let degrees_of_freedom = bins - 1;
    let dist = ChiSquared::new(degrees_of_freedom as f64)
        .map_err(|e| Error::Unsupported(format!("chi-square distribution: {e}")))?;
    Ok(IntensityHistogram {
        bins: rows,
        chi_square,
        degrees_of_freedom,
        p_value: dist.sf(chi_square),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intensity_mass_near_singular_ends() {
        // n = 0: mass of [1 − ε, 1] is c 2^{λ−1/2} ε^{λ+1/2} / (λ + 1/2) + O(ε^{λ+3/2})
        let lambda = -0.3;
        let param = GegenbauerParam::new(lambda).unwrap();
        let ctx = KernelContext::new(param, 0);
        let c = param.weight_constant();
        let tail = |eps: f64| c * 2f64.powf(lambda - 0.5) * eps.powf(lambda + 0.5) / (lambda + 0.5);
        for b in [1.0 - 1e-9, 1.0 - 1e-12] {
            // exact offsets of the rounded bounds
            let eps = 1.0 - b;
            let tail = tail(eps);
            let below = intensity_mass(&ctx, -1.0, b).unwrap();
            let above = intensity_mass(&ctx, b, 1.0).unwrap();
            let from_left = intensity_mass(&ctx, -1.0, -b).unwrap();
            assert!((1.0 - below - tail).abs() < 1e-10, "eps={eps}: {below}");
            assert!((above - tail).abs() < 1e-10);
            assert!((from_left - tail).abs() < 1e-10);
        }
        assert_eq!(intensity_mass(&ctx, -1.0, -1.0).unwrap(), 0.0);
        assert!(intensity_mass(&ctx, -1.5, 0.0).is_err());
    }

    #[test]
    fn conditional_masses_are_normalised() {
        for (lambda, n) in [(0.0, 4), (-0.25, 3), (1.0, 5), (2.5, 2)] {
            let sampler = DppSampler::new(lambda, n).unwrap();
            let mut rng = DppSampler::stream(7, 0);
            let mut state = sampler.start();
            while state.remaining() > 0 {
                let mass = state.conditional_mass();
                assert!((mass - 1.0).abs() < 1e-6, "λ={lambda} n={n}: {mass}");
                state.step(&mut rng).unwrap();
            }
        }
    }

    #[test]
    fn samples_have_rank_many_distinct_points() {
        let sampler = DppSampler::new(0.7, 6).unwrap();
        for i in 0..50 {
            let cfg = sampler.sample(3, i).unwrap();
            assert_eq!(cfg.len(), 7);
            assert!(cfg.points().windows(2).all(|w| w[0] < w[1]));
            assert!(cfg.points().iter().all(|x| x.abs() < 1.0));
            assert_eq!(cfg.provenance(), Provenance::DppSample);
        }
    }

    #[test]
    fn repeatable_per_stream() {
        let sampler = DppSampler::new(-0.25, 3).unwrap();
        assert_eq!(sampler.sample(11, 5).unwrap(), sampler.sample(11, 5).unwrap());
        assert_ne!(sampler.sample(11, 5).unwrap(), sampler.sample(11, 6).unwrap());
    }

    #[test]
    fn intensity_trace() {
        let ctx = KernelContext::new(GegenbauerParam::chebyshev(), 4);
        let total: f64 = (0..10)
            .map(|k| intensity_mass(&ctx, -1.0 + 0.2 * k as f64, -0.8 + 0.2 * k as f64).unwrap())
            .sum();
        assert!((total - 5.0).abs() < 1e-9);
        let uniform = KernelContext::new(GegenbauerParam::new(0.5).unwrap(), 0);
        let m = intensity_mass(&uniform, 0.2, 0.4).unwrap();
        assert!((m - 0.1).abs() < 1e-13);
    }

    #[test]
    fn estimate_needs_two_values() {
        assert!(estimate(&[1.0]).is_err());
        let e = estimate(&[1.0, 3.0]).unwrap();
        assert_eq!(e.mean, 2.0);
        assert!((e.std_error - 1.0).abs() < 1e-15);
    }
}
