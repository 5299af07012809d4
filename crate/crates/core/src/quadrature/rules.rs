//! One-dimensional rules: Gauss–Legendre nodes and a globally adaptive
//! Gauss–Kronrod (7, 15) integrator for complex-valued integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of a quadrature: the value, the number of integrand evaluations and
/// the difference between the rule and its embedded lower-order companion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub node_count: usize,
    pub refinement_estimate: f64,
}

/// Stopping rule for adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Hard cap on integrand evaluations.
    pub max_evals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_evals: 1 << 20,
        }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            ..Self::default()
        }
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1], ascending nodes.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        // Tricomi initial guess, then Newton on the three-term recurrence.
        let mut x = ((i as f64 + 0.75) / (nf + 0.5) * PI).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[m - 1] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p, d)
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (
        x.iter().map(|t| mid + half * t).collect(),
        w.iter().map(|v| v * half).collect(),
    )
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<Complex64> {
        let v = f(x);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(x))
        }
    };
    let fc = eval(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut res_abs = fc.norm() * WGK[7];
    let mut fv1 = [Complex64::new(0.0, 0.0); 7];
    let mut fv2 = [Complex64::new(0.0, 0.0); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += (f1 + f2) * WGK[j];
        res_abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).norm();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let habs = half.abs();
    let value = kronrod * half;
    res_abs *= habs;
    res_asc *= habs;
    let mut error = ((kronrod - gauss) * half).norm();
    if res_asc != 0.0 && error != 0.0 {
        let scale = (200.0 * error / res_asc).powf(1.5);
        error = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if floor > error {
        error = floor;
    }
    Ok(Segment { a, b, value, error })
}

/// Globally adaptive Gauss–Kronrod integration of a complex integrand on a
/// union of consecutive intervals given by `breaks` (at least two points).
///
/// Segments are bisected worst-first. Integrable endpoint singularities are
/// handled by repeated bisection; the integrand is never evaluated at a
/// segment endpoint.
pub fn integrate_adaptive<F>(mut f: F, breaks: &[f64], opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Complex64,
{
    if breaks.len() < 2 {
        return Err(Error::InvalidParameter(
            "adaptive integration needs at least two break points".into(),
        ));
    }
    let mut heap = BinaryHeap::new();
    let mut evals = 0usize;
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    for w in breaks.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let seg = gk15(&mut f, w[0], w[1])?;
        evals += 15;
        total += seg.value;
        total_err += seg.error;
        heap.push(seg);
    }
    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * total.norm());
        if total_err <= tol {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        let width = (worst.b - worst.a).abs();
        let scale = worst.a.abs().max(worst.b.abs()).max(1e-300);
        if width <= 64.0 * f64::EPSILON * scale || mid == worst.a || mid == worst.b {
            // Roundoff limit: nothing more to gain here.
            heap.push(worst);
            break;
        }
        if evals + 30 > opts.max_evals {
            heap.push(worst);
            return Err(Error::Convergence {
                tolerance: tol,
                estimate: total_err,
                evaluations: evals,
            });
        }
        let left = gk15(&mut f, worst.a, mid)?;
        let right = gk15(&mut f, mid, worst.b)?;
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed accumulated cancellation in the running totals.
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for s in heap.iter() {
        value += s.value;
        err += s.error;
    }
    Ok(QuadratureResult {
        value,
        node_count: evals,
        refinement_estimate: err,
    })
}

/// Real-valued convenience wrapper around [`integrate_adaptive`].
pub fn integrate_real<F>(mut f: F, breaks: &[f64], opts: &QuadOptions) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let r = integrate_adaptive(|x| Complex64::new(f(x), 0.0), breaks, opts)?;
    Ok((r.value.re, r.refinement_estimate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_rule_integrates_polynomials_exactly() {
        for n in [1, 2, 5, 16, 33, 64] {
            let (x, w) = gauss_legendre(n);
            let sum_w: f64 = w.iter().sum();
            assert_abs_diff_eq!(sum_w, 2.0, epsilon = 1e-13);
            // x^(2n-2) integrates to 2/(2n-1)
            let deg = 2 * n - 2;
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert_abs_diff_eq!(q, 2.0 / (deg as f64 + 1.0), epsilon = 1e-13);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let r = integrate_real(|x| x.powf(-0.5), &[0.0, 1.0], &QuadOptions::default()).unwrap();
        assert_abs_diff_eq!(r.0, 2.0, epsilon = 1e-10);
        let r = integrate_real(|x| x.sqrt() * x.ln(), &[0.0, 1.0], &QuadOptions::default()).unwrap();
        assert_abs_diff_eq!(r.0, -4.0 / 9.0, epsilon = 1e-11);
    }

    #[test]
    fn adaptive_reports_nonfinite() {
        let err = integrate_real(|_| f64::NAN, &[0.0, 1.0], &QuadOptions::default());
        assert!(matches!(err, Err(Error::NonFinite(_))));
    }

    #[test]
    fn adaptive_smooth_oscillatory() {
        let r = integrate_adaptive(
            |x| Complex64::new(0.0, 3.0 * x).exp(),
            &[0.0, 2.0 * PI],
            &QuadOptions::default(),
        )
        .unwrap();
        assert!(r.value.norm() < 1e-12);
        assert!(r.refinement_estimate >= 0.0);
    }
}
