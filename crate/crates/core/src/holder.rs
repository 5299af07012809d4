//! Log-Hölder weights and sampled seminorm estimates.
//!
//! Every estimate here is a maximum of difference quotients over a finite set
//! of point pairs, so it is a lower bound for the true seminorm. Pairs are
//! stratified into dyadic bands of `|h|` so that the logarithmic factor of the
//! weight is actually visible; uniform sampling would almost never produce a
//! pair with `|h| < 1e-3`.
//!
//! Points are slices of complex coordinates. A real interval coordinate is
//! stored as a complex number with zero imaginary part. On products the gap
//! `|h|` is the Euclidean norm of the stacked coordinate increments.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A point of a (product) sample domain.
pub type Point = Vec<Complex64>;

/// `h^α |ln h|^ν` for `0 < h < 1`.
pub fn log_holder_weight(h: f64, alpha: f64, nu: f64) -> Result<f64> {
    if !(h > 0.0 && h < 1.0) {
        return Err(invalid(format!("weight needs 0 < h < 1, got {h}")));
    }
    Ok(weight_unchecked(h, alpha, nu))
}

#[inline]
fn weight_unchecked(h: f64, alpha: f64, nu: f64) -> f64 {
    let w = h.powf(alpha);
    if nu == 0.0 {
        w
    } else {
        w * (-h.ln()).powf(nu)
    }
}

/// `r0 = min{e^{-ν/α}, 1/2}`. On `(0, r0]` the weight is increasing, which is
/// what lets a product increment be split into its two legs.
pub fn recombination_radius(alpha: f64, nu: f64) -> f64 {
    (-nu / alpha).exp().min(0.5)
}

/// One coordinate of a sample domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SampleDomain {
    /// Closed real interval `[a, b]`.
    Interval { a: f64, b: f64 },
    /// Open disc.
    Disc { center: Complex64, radius: f64 },
    /// Circle; pairs move along the curve and `|h|` is the chord.
    Circle { center: Complex64, radius: f64 },
}

impl SampleDomain {
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(invalid(format!("interval [{a}, {b}] is empty")));
        }
        Ok(Self::Interval { a, b })
    }

    pub fn disc(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(invalid(format!("disc radius must be positive, got {radius}")));
        }
        Ok(Self::Disc { center, radius })
    }

    pub fn unit_disc() -> Self {
        Self::Disc {
            center: Complex64::new(0.0, 0.0),
            radius: 1.0,
        }
    }

    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(invalid(format!("circle radius must be positive, got {radius}")));
        }
        Ok(Self::Circle { center, radius })
    }

    /// Deterministic base point used for the first pair of every band: the
    /// left endpoint, the centre, or the point at angle 0.
    pub fn anchor(&self) -> Complex64 {
        match *self {
            Self::Interval { a, .. } => Complex64::new(a, 0.0),
            Self::Disc { center, .. } => center,
            Self::Circle { center, radius } => center + radius,
        }
    }

    pub fn contains(&self, p: Complex64) -> bool {
        match *self {
            Self::Interval { a, b } => p.im == 0.0 && p.re >= a && p.re <= b,
            Self::Disc { center, radius } => (p - center).norm() < radius,
            Self::Circle { center, radius } => {
                ((p - center).norm() - radius).abs() <= 1e-12 * radius.max(1.0)
            }
        }
    }

    /// A deterministic grid of `k` (roughly) points, used for frozen variables.
    /// Interval grids include both endpoints; disc grids include the centre.
    pub fn grid(&self, k: usize) -> Vec<Complex64> {
        let k = k.max(2);
        match *self {
            Self::Interval { a, b } => (0..k)
                .map(|i| Complex64::new(a + (b - a) * i as f64 / (k - 1) as f64, 0.0))
                .collect(),
            Self::Circle { center, radius } => (0..k)
                .map(|i| center + Complex64::from_polar(radius, TAU * i as f64 / k as f64))
                .collect(),
            Self::Disc { center, radius } => {
                let rings = ((k - 1) / 8).max(1);
                let mut pts = vec![center];
                for r in 1..=rings {
                    let rho = radius * r as f64 / (rings + 1) as f64;
                    for q in 0..8 {
                        pts.push(center + Complex64::from_polar(rho, TAU * q as f64 / 8.0));
                    }
                }
                pts
            }
        }
    }

    /// Move `base` by `d` in the direction picked by `dir` (a sign for
    /// intervals and circles, an angle for discs). `None` if it leaves.
    fn step(&self, base: Complex64, d: f64, dir: f64) -> Option<Complex64> {
        let p = match *self {
            Self::Interval { .. } => base + d * dir.signum(),
            Self::Disc { .. } => base + Complex64::from_polar(d, dir),
            Self::Circle { center, radius } => {
                if d > 2.0 * radius {
                    return None;
                }
                let delta = 2.0 * (d / (2.0 * radius)).asin();
                center + (base - center) * Complex64::from_polar(1.0, delta * dir.signum())
            }
        };
        self.contains(p).then_some(p)
    }

    fn random_point<R: Rng>(&self, rng: &mut R) -> Complex64 {
        match *self {
            Self::Interval { a, b } => Complex64::new(rng.gen_range(a..=b), 0.0),
            Self::Disc { center, radius } => {
                let rho = radius * rng.gen::<f64>().sqrt();
                center + Complex64::from_polar(rho, rng.gen_range(0.0..TAU))
            }
            Self::Circle { center, radius } => {
                center + Complex64::from_polar(radius, rng.gen_range(0.0..TAU))
            }
        }
    }

    fn random_dir<R: Rng>(&self, rng: &mut R) -> f64 {
        match self {
            Self::Disc { .. } => rng.gen_range(0.0..TAU),
            _ => {
                if rng.gen::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// Seeded point-pair generator with dyadic `|h|` bands.
///
/// Pair `i` lands in band `j = i mod J + 1`, that is
/// `|h| ∈ (h_cap 2^{-j}, h_cap 2^{1-j}]`. The first pairs of each band are
/// deterministic (anchor point, `|h|` at the top of the band, one per
/// coordinate); the others come from a generator keyed on `(seed, i)`, so a
/// larger budget always yields a superset of pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSampler {
    pub factors: Vec<SampleDomain>,
    pub bands: usize,
    pub h_cap: f64,
    pub seed: u64,
}

const MAX_ATTEMPTS: usize = 64;

impl PairSampler {
    pub fn new(factors: Vec<SampleDomain>, seed: u64) -> Result<Self> {
        Self::with_bands(factors, 20, 0.5, seed)
    }

    pub fn with_bands(factors: Vec<SampleDomain>, bands: usize, h_cap: f64, seed: u64) -> Result<Self> {
        if factors.is_empty() {
            return Err(invalid("pair sampler needs at least one coordinate"));
        }
        if bands == 0 {
            return Err(invalid("pair sampler needs at least one band"));
        }
        if !(h_cap > 0.0 && h_cap < 1.0) {
            return Err(invalid(format!("h_cap must lie in (0, 1), got {h_cap}")));
        }
        Ok(Self {
            factors,
            bands,
            h_cap,
            seed,
        })
    }

    pub fn single(domain: SampleDomain, seed: u64) -> Result<Self> {
        Self::new(vec![domain], seed)
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    /// Bounds `(lo, hi]` of band `j` (1-based).
    pub fn band_bounds(&self, j: usize) -> (f64, f64) {
        let hi = self.h_cap * 0.5f64.powi(j as i32 - 1);
        (0.5 * hi, hi)
    }

    /// The `i`-th pair, or `None` if no admissible pair was found for it.
    pub fn pair(&self, i: usize) -> Option<(Point, Point)> {
        let m = self.dim();
        let j = i % self.bands + 1;
        let k = i / self.bands;
        let (lo, hi) = self.band_bounds(j);
        if k < m {
            let base: Point = self.factors.iter().map(SampleDomain::anchor).collect();
            let mut other = base.clone();
            for dir in [1.0, -1.0] {
                let dir = match self.factors[k] {
                    SampleDomain::Disc { .. } if dir < 0.0 => std::f64::consts::PI,
                    SampleDomain::Disc { .. } => 0.0,
                    _ => dir,
                };
                if let Some(p) = self.factors[k].step(base[k], hi, dir) {
                    other[k] = p;
                    return Some((base, other));
                }
            }
            // The anchor cannot host this gap; fall through to random draws.
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(i as u64);
        'attempt: for _ in 0..MAX_ATTEMPTS {
            let mag = hi * 0.5f64.powf(rng.gen::<f64>());
            let split = random_unit_vector(&mut rng, m);
            let mut base = Vec::with_capacity(m);
            let mut other = Vec::with_capacity(m);
            for (dom, share) in self.factors.iter().zip(&split) {
                let b = dom.random_point(&mut rng);
                let d = mag * share;
                let o = if d == 0.0 {
                    b
                } else {
                    match dom.step(b, d, dom.random_dir(&mut rng)) {
                        Some(o) => o,
                        None => continue 'attempt,
                    }
                };
                base.push(b);
                other.push(o);
            }
            let g = gap(&base, &other);
            if g > 0.0 && g <= self.h_cap && g > 0.5 * lo {
                return Some((base, other));
            }
        }
        None
    }

    /// All admissible pairs among the first `budget` indices.
    pub fn pairs(&self, budget: usize) -> Vec<(Point, Point)> {
        (0..budget)
            .into_par_iter()
            .filter_map(|i| self.pair(i))
            .collect()
    }
}

fn random_unit_vector<R: Rng>(rng: &mut R, m: usize) -> Vec<f64> {
    if m == 1 {
        return vec![1.0];
    }
    loop {
        let v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 && n <= 1.0 {
            return v.into_iter().map(|x| (x / n).abs()).collect();
        }
    }
}

/// Euclidean product-metric distance between two points.
pub fn gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Maximum quotient within one dyadic band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandMax {
    pub band_j: usize,
    pub h_mid: f64,
    pub max_quotient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeminormEstimate {
    pub value: f64,
    /// `(w, w + h)`; `None` only when every quotient vanished.
    pub witness: Option<(Point, Point)>,
    pub alpha: f64,
    pub nu: f64,
    pub pair_count: usize,
    pub h_cap: f64,
    pub bands: Vec<BandMax>,
}

impl SeminormEstimate {
    /// `|h|` of the witness pair.
    pub fn witness_gap(&self) -> Option<f64> {
        self.witness.as_ref().map(|(a, b)| gap(a, b))
    }
}

/// Band index of a gap relative to `h_cap`: `|h| ∈ (h_cap 2^{-j}, h_cap 2^{1-j}]`.
pub fn band_of(h: f64, h_cap: f64) -> usize {
    let x = (h_cap / h).log2();
    (x.floor() as i64 + 1).max(1) as usize
}

/// `|a - b| / (|h|^α |ln |h||^ν)`.
pub fn pair_quotient(a: Complex64, b: Complex64, h: f64, alpha: f64, nu: f64) -> Result<f64> {
    Ok((a - b).norm() / log_holder_weight(h, alpha, nu)?)
}

/// Seminorm estimate over an explicit list of pairs. Pairs with a vanishing
/// gap are skipped; gaps above `h_cap` are rejected.
pub fn estimate_over_pairs<F>(
    f: &F,
    pairs: &[(Point, Point)],
    alpha: f64,
    nu: f64,
    h_cap: f64,
) -> Result<SeminormEstimate>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync + ?Sized,
{
    if pairs.is_empty() {
        return Err(Error::EmptySample);
    }
    let quotients: Vec<Option<(f64, f64)>> = pairs
        .par_iter()
        .map(|(a, b)| -> Result<Option<(f64, f64)>> {
            let h = gap(a, b);
            if h == 0.0 {
                return Ok(None);
            }
            if h > h_cap * (1.0 + 1e-12) {
                return Err(invalid(format!("pair gap {h} exceeds h_cap {h_cap}")));
            }
            let fa = f(a);
            let fb = f(b);
            for v in [fa, fb] {
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::NonFinite(h));
                }
            }
            Ok(Some((h, pair_quotient(fb, fa, h, alpha, nu)?)))
        })
        .collect::<Result<_>>()?;

    let mut best: Option<(usize, f64)> = None;
    let mut bands: std::collections::BTreeMap<usize, f64> = Default::default();
    let mut count = 0;
    for (i, q) in quotients.iter().enumerate() {
        let Some((h, q)) = *q else { continue };
        count += 1;
        let slot = bands.entry(band_of(h, h_cap)).or_insert(0.0);
        *slot = slot.max(q);
        if q > 0.0 && best.is_none_or(|(_, b)| q > b) {
            best = Some((i, q));
        }
    }
    if count == 0 {
        return Err(Error::EmptySample);
    }
    Ok(SeminormEstimate {
        value: best.map_or(0.0, |(_, q)| q),
        witness: best.map(|(i, _)| pairs[i].clone()),
        alpha,
        nu,
        pair_count: count,
        h_cap,
        bands: bands
            .into_iter()
            .map(|(j, q)| BandMax {
                band_j: j,
                h_mid: h_cap * 0.5f64.powi(j as i32) * std::f64::consts::SQRT_2,
                max_quotient: q,
            })
            .collect(),
    })
}

/// Sampled `H^ν` seminorm of `f` with `budget` stratified pairs.
pub fn seminorm_estimate<F>(
    f: &F,
    sampler: &PairSampler,
    alpha: f64,
    nu: f64,
    budget: usize,
) -> Result<SeminormEstimate>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync + ?Sized,
{
    let pairs = sampler.pairs(budget);
    estimate_over_pairs(f, &pairs, alpha, nu, sampler.h_cap)
}

/// Shared knobs for the two-variable estimators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub alpha: f64,
    pub nu: f64,
    /// Pairs per slice sampler.
    pub budget: usize,
    pub bands: usize,
    pub h_cap: f64,
    pub seed: u64,
    /// Grid size for the frozen variable.
    pub frozen: usize,
}

impl EstimatorConfig {
    pub fn new(alpha: f64, nu: f64, budget: usize, seed: u64) -> Self {
        Self {
            alpha,
            nu,
            budget,
            bands: 20,
            h_cap: 0.5,
            seed,
            frozen: 9,
        }
    }
}

/// `sup_λ H_D[f(·, λ)]` and `sup_z H_Λ[f(z, ·)]`, with full-point witnesses `[z, λ]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceSeminorms {
    pub d_part: SeminormEstimate,
    pub lambda_part: SeminormEstimate,
}

fn slice_pairs(
    moving: &SampleDomain,
    frozen: &SampleDomain,
    moving_first: bool,
    cfg: &EstimatorConfig,
    h_cap: f64,
) -> Result<Vec<(Point, Point)>> {
    let sampler = PairSampler::with_bands(vec![moving.clone()], cfg.bands, h_cap, cfg.seed)?;
    let one = sampler.pairs(cfg.budget);
    let grid = frozen.grid(cfg.frozen);
    let mut out = Vec::with_capacity(one.len() * grid.len());
    for &c in &grid {
        for (a, b) in &one {
            if moving_first {
                out.push((vec![a[0], c], vec![b[0], c]));
            } else {
                out.push((vec![c, a[0]], vec![c, b[0]]));
            }
        }
    }
    Ok(out)
}

/// Slice seminorms of `f(z, λ)` on `D × Λ`; `f` receives `[z, λ]`.
pub fn slice_seminorms<F>(
    f: &F,
    d: &SampleDomain,
    lambda: &SampleDomain,
    cfg: &EstimatorConfig,
) -> Result<SliceSeminorms>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync + ?Sized,
{
    let dp = slice_pairs(d, lambda, true, cfg, cfg.h_cap)?;
    let lp = slice_pairs(lambda, d, false, cfg, cfg.h_cap)?;
    Ok(SliceSeminorms {
        d_part: estimate_over_pairs(f, &dp, cfg.alpha, cfg.nu, cfg.h_cap)?,
        lambda_part: estimate_over_pairs(f, &lp, cfg.alpha, cfg.nu, cfg.h_cap)?,
    })
}

/// Both sides of the slice recombination inequality on `|h| ≤ r0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecombinationReport {
    pub lhs: f64,
    pub rhs: f64,
    pub sup_norm: f64,
    pub d_part: f64,
    pub lambda_part: f64,
    pub r0: f64,
    pub pair_count: usize,
    pub violation: bool,
}

/// Joint seminorm estimate versus `‖f‖_C + sup_λ H_D + sup_z H_Λ`, all on
/// `|h| ≤ r0`. The slice parts also see both legs `(z,λ)→(z+h₁,λ)→(z+h₁,λ+h₂)`
/// of every joint pair, so on this range a violation can only come from
/// rounding.
pub fn recombination_check<F>(
    f: &F,
    d: &SampleDomain,
    lambda: &SampleDomain,
    cfg: &EstimatorConfig,
) -> Result<RecombinationReport>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync + ?Sized,
{
    let (alpha, nu) = (cfg.alpha, cfg.nu);
    let r0 = recombination_radius(alpha, nu).min(cfg.h_cap);
    let joint = PairSampler::with_bands(vec![d.clone(), lambda.clone()], cfg.bands, r0, cfg.seed)?
        .pairs(cfg.budget);
    let mut dp = slice_pairs(d, lambda, true, cfg, r0)?;
    let mut lp = slice_pairs(lambda, d, false, cfg, r0)?;
    for (a, b) in &joint {
        let mid = vec![b[0], a[1]];
        if mid[0] != a[0] {
            dp.push((a.clone(), mid.clone()));
        }
        if mid[1] != b[1] {
            lp.push((mid, b.clone()));
        }
    }
    let lhs = estimate_over_pairs(f, &joint, alpha, nu, r0)?;
    let dpart = estimate_over_pairs(f, &dp, alpha, nu, r0)?;
    let lpart = estimate_over_pairs(f, &lp, alpha, nu, r0)?;

    let sup_norm = joint
        .par_iter()
        .chain(dp.par_iter())
        .chain(lp.par_iter())
        .map(|(a, b)| f(a).norm().max(f(b).norm()))
        .reduce(|| 0.0, f64::max);

    let rhs = sup_norm + dpart.value + lpart.value;
    Ok(RecombinationReport {
        lhs: lhs.value,
        rhs,
        sup_norm,
        d_part: dpart.value,
        lambda_part: lpart.value,
        r0,
        pair_count: lhs.pair_count,
        violation: lhs.value > rhs * (1.0 + 1e-12) + 1e-15,
    })
}

/// Quotients of consecutive samples `(x_i, v_i)`, `(x_{i+1}, v_{i+1})`.
pub fn consecutive_quotients(
    points: &[Point],
    values: &[Complex64],
    alpha: f64,
    nu: f64,
) -> Result<Vec<f64>> {
    if points.len() != values.len() {
        return Err(Error::GridMismatch(format!(
            "{} points but {} values",
            points.len(),
            values.len()
        )));
    }
    points
        .windows(2)
        .zip(values.windows(2))
        .map(|(p, v)| pair_quotient(v[1], v[0], gap(&p[0], &p[1]), alpha, nu))
        .collect()
}

/// Inf-convolution `w ↦ min_{η ∈ E} g(η) + M |w − η|^α` of real data on a
/// finite set `E`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HolderExtension {
    points: Vec<Point>,
    values: Vec<f64>,
    m: f64,
    alpha: f64,
}

impl HolderExtension {
    pub fn new(points: Vec<Point>, values: Vec<f64>, m: f64, alpha: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySample);
        }
        if points.len() != values.len() {
            return Err(Error::GridMismatch(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        if !(m >= 0.0 && m.is_finite()) {
            return Err(invalid(format!("extension constant must be nonnegative, got {m}")));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(invalid(format!("alpha must lie in (0, 1], got {alpha}")));
        }
        let dim = points[0].len();
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::GridMismatch("sample points of mixed dimension".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(*v));
        }
        Ok(Self {
            points,
            values,
            m,
            alpha,
        })
    }

    pub fn eval(&self, w: &[Complex64]) -> f64 {
        self.points
            .iter()
            .zip(&self.values)
            .map(|(p, g)| g + self.m * gap(w, p).powf(self.alpha))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn constant(&self) -> f64 {
        self.m
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn half_interval() -> SampleDomain {
        SampleDomain::interval(0.0, 0.5).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_abs_diff_eq!(log_holder_weight(0.5, 1.0, 0.0).unwrap(), 0.5);
        let e = std::f64::consts::E;
        assert_abs_diff_eq!(log_holder_weight(1.0 / e, 1.0, 1.0).unwrap(), 0.367_879_441_171_442_3, epsilon = 1e-15);
        assert_abs_diff_eq!(
            log_holder_weight(e.powi(-2), 0.5, 2.0).unwrap(),
            4.0 / e,
            epsilon = 1e-14
        );
        assert!(log_holder_weight(1.0, 0.5, 0.0).is_err());
        assert!(log_holder_weight(0.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn constant_function_has_zero_seminorm() {
        let s = PairSampler::single(SampleDomain::unit_disc(), 3).unwrap();
        let est = seminorm_estimate(&|_: &[Complex64]| re(7.0), &s, 0.5, 1.0, 400).unwrap();
        assert_eq!(est.value, 0.0);
        assert!(est.witness.is_none());
        assert!(est.pair_count > 300);
    }

    #[test]
    fn identity_on_half_interval() {
        let s = PairSampler::single(half_interval(), 11).unwrap();
        let f = |p: &[Complex64]| p[0];
        let lip = seminorm_estimate(&f, &s, 1.0, 0.0, 500).unwrap();
        assert_abs_diff_eq!(lip.value, 1.0, epsilon = 1e-12);

        let log = seminorm_estimate(&f, &s, 1.0, 1.0, 500).unwrap();
        assert_abs_diff_eq!(log.value, 1.0 / std::f64::consts::LN_2, epsilon = 1e-12);
        assert_abs_diff_eq!(log.witness_gap().unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn every_band_is_populated_and_pairs_respect_the_cap() {
        let s = PairSampler::with_bands(vec![SampleDomain::unit_disc(), half_interval()], 12, 0.25, 5).unwrap();
        let pairs = s.pairs(12 * 10);
        let mut seen = [0usize; 13];
        for (a, b) in &pairs {
            let h = gap(a, b);
            assert!(h > 0.0 && h <= 0.25 * (1.0 + 1e-12));
            assert!(s.factors[0].contains(a[0]) && s.factors[0].contains(b[0]));
            assert!(s.factors[1].contains(a[1]) && s.factors[1].contains(b[1]));
            seen[band_of(h, 0.25).min(12)] += 1;
        }
        assert!(seen[1..].iter().all(|&c| c > 0), "{seen:?}");
    }

    #[test]
    fn circle_pairs_stay_on_the_circle() {
        let dom = SampleDomain::circle(Complex64::new(1.0, -1.0), 0.75).unwrap();
        let s = PairSampler::single(dom.clone(), 9).unwrap();
        for (a, b) in s.pairs(200) {
            assert!(dom.contains(a[0]) && dom.contains(b[0]));
        }
    }

    #[test]
    fn sampler_is_deterministic_and_nested() {
        let s = PairSampler::single(SampleDomain::unit_disc(), 42).unwrap();
        let small = s.pairs(100);
        let large = s.pairs(300);
        assert_eq!(small, s.pairs(100));
        assert_eq!(&large[..small.len()], &small[..]);
        let other = PairSampler::single(SampleDomain::unit_disc(), 43).unwrap();
        assert_ne!(small, other.pairs(100));
    }

    #[test]
    fn band_index_matches_bounds() {
        let s = PairSampler::single(half_interval(), 0).unwrap();
        for j in 1..15 {
            let (lo, hi) = s.band_bounds(j);
            assert_eq!(band_of(hi, 0.5), j);
            assert_eq!(band_of(lo * 1.0001, 0.5), j);
            assert_eq!(band_of(lo, 0.5), j + 1);
        }
    }

    #[test]
    fn slice_examples() {
        let sq = half_interval();
        let cfg = EstimatorConfig::new(1.0, 0.0, 400, 1);
        let zl = |p: &[Complex64]| p[0] * p[1];
        let s = slice_seminorms(&zl, &sq, &sq, &cfg).unwrap();
        assert_abs_diff_eq!(s.d_part.value, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(s.lambda_part.value, 0.5, epsilon = 1e-12);

        let g = |p: &[Complex64]| re(p[0].re.sin());
        let s = slice_seminorms(&g, &sq, &sq, &cfg).unwrap();
        assert_eq!(s.lambda_part.value, 0.0);
        assert!(s.d_part.value <= 1.0 + 1e-12);

        let cfg = EstimatorConfig::new(0.5, 0.0, 400, 1);
        let root = |p: &[Complex64]| re(p[1].norm().sqrt());
        let s = slice_seminorms(&root, &sq, &SampleDomain::unit_disc(), &cfg).unwrap();
        assert_abs_diff_eq!(s.lambda_part.value, 1.0, epsilon = 1e-3);
        let (a, b) = s.lambda_part.witness.unwrap();
        assert!(a[1].norm().min(b[1].norm()) < 1e-12, "witness should touch λ = 0");
    }

    #[test]
    fn recombination_examples() {
        let sq = half_interval();
        let cfg = EstimatorConfig::new(1.0, 0.0, 300, 2);
        let one = recombination_check(&|_: &[Complex64]| re(1.0), &sq, &sq, &cfg).unwrap();
        assert_eq!(one.lhs, 0.0);
        assert_abs_diff_eq!(one.rhs, 1.0);
        assert!(!one.violation);

        let sum = |p: &[Complex64]| p[0] + p[1];
        let r = recombination_check(&sum, &sq, &sq, &cfg).unwrap();
        assert!(r.lhs <= 2.0f64.sqrt() + 1e-12 && r.lhs <= r.rhs && !r.violation);

        for (budget, seed) in [(50, 0), (400, 1), (2000, 2)] {
            let cfg = EstimatorConfig::new(0.5, 1.0, budget, seed);
            let sc = |p: &[Complex64]| p[0].sin() * p[1].cos();
            let r = recombination_check(&sc, &SampleDomain::unit_disc(), &SampleDomain::unit_disc(), &cfg).unwrap();
            assert!(!r.violation, "{r:?}");
            assert_abs_diff_eq!(r.r0, (-2.0f64).exp(), epsilon = 1e-15);
        }
    }

    #[test]
    fn extension_examples() {
        let c = HolderExtension::new(vec![vec![re(0.0)], vec![re(1.0)]], vec![2.5, 2.5], 3.0, 0.5).unwrap();
        assert_abs_diff_eq!(c.eval(&[Complex64::new(0.3, 0.7)]), 2.5 + 3.0 * 0.58f64.sqrt().sqrt());
        assert_abs_diff_eq!(c.eval(&[re(1.0)]), 2.5);

        let single = HolderExtension::new(vec![vec![re(0.0)]], vec![0.0], 1.0, 0.5).unwrap();
        for w in [Complex64::new(0.25, 0.0), Complex64::new(-3.0, 4.0)] {
            assert_abs_diff_eq!(single.eval(&[w]), w.norm().sqrt(), epsilon = 1e-15);
        }
        assert!(matches!(
            HolderExtension::new(vec![], vec![], 1.0, 0.5),
            Err(Error::EmptySample)
        ));
    }

    #[test]
    fn consecutive_quotient_of_root() {
        let pts: Vec<Point> = (1..6).map(|j| vec![re(0.5f64.powi(j))]).collect();
        let vals: Vec<Complex64> = pts.iter().map(|p| re(p[0].re.sqrt())).collect();
        let q = consecutive_quotients(&pts, &vals, 0.5, 0.0).unwrap();
        // (√(2x) − √x)/√x is the same at every level.
        for v in &q {
            assert_abs_diff_eq!(*v, 2f64.sqrt() - 1.0, epsilon = 1e-14);
        }
    }

    proptest! {
        #[test]
        fn budget_monotone(seed in 0u64..1000, b in 10usize..200) {
            let s = PairSampler::single(SampleDomain::unit_disc(), seed).unwrap();
            let f = |p: &[Complex64]| Complex64::new(p[0].re.abs().powf(0.3), p[0].im);
            let lo = seminorm_estimate(&f, &s, 0.5, 0.5, b).unwrap();
            let hi = seminorm_estimate(&f, &s, 0.5, 0.5, 2 * b).unwrap();
            prop_assert!(hi.value >= lo.value);
        }

        #[test]
        fn extension_is_holder(
            pts in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0, -2.0f64..2.0), 1..12),
            w1 in (-2.0f64..2.0, -2.0f64..2.0),
            w2 in (-2.0f64..2.0, -2.0f64..2.0),
            alpha in 0.1f64..1.0,
            m in 0.0f64..5.0,
        ) {
            let e = HolderExtension::new(
                pts.iter().map(|p| vec![Complex64::new(p.0, p.1)]).collect(),
                pts.iter().map(|p| p.2).collect(),
                m,
                alpha,
            ).unwrap();
            let a = [Complex64::new(w1.0, w1.1)];
            let b = [Complex64::new(w2.0, w2.1)];
            let lhs = (e.eval(&a) - e.eval(&b)).abs();
            prop_assert!(lhs <= m * gap(&a, &b).powf(alpha) * (1.0 + 1e-12) + 1e-12);
        }

        #[test]
        fn embedding_chain(seed in 0u64..500, mu in 0.01f64..3.0, nu in -1.0f64..2.0) {
            let s = PairSampler::single(SampleDomain::unit_disc(), seed).unwrap();
            let f = |p: &[Complex64]| Complex64::new(p[0].norm().sqrt(), 0.0);
            let base = seminorm_estimate(&f, &s, 0.5, nu, 120).unwrap();
            let more = seminorm_estimate(&f, &s, 0.5, nu + mu, 120).unwrap();
            prop_assert!(more.value <= base.value * std::f64::consts::LN_2.powf(-mu) * (1.0 + 1e-12));
        }

        #[test]
        fn slices_are_dominated_by_the_union(seed in 0u64..200) {
            let cfg = EstimatorConfig { frozen: 5, ..EstimatorConfig::new(0.7, 0.5, 60, seed) };
            let d = SampleDomain::unit_disc();
            let f = |p: &[Complex64]| (p[0] * p[1]).exp() + p[1].conj();
            let s = slice_seminorms(&f, &d, &d, &cfg).unwrap();
            let mut union = slice_pairs(&d, &d, true, &cfg, cfg.h_cap).unwrap();
            union.extend(slice_pairs(&d, &d, false, &cfg, cfg.h_cap).unwrap());
            union.extend(PairSampler::with_bands(vec![d.clone(), d.clone()], 20, 0.5, seed).unwrap().pairs(60));
            let full = estimate_over_pairs(&f, &union, 0.7, 0.5, 0.5).unwrap();
            prop_assert!(s.d_part.value.max(s.lambda_part.value) <= full.value);
        }
    }
}
