//! Integration primitives: periodic trapezoid contour integrals, principal
//! value Cauchy integrals by singularity subtraction, polar area integrals on
//! discs and the log-weighted one-dimensional integrals behind the cut-off bounds.

pub mod rules;

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use rules::{gauss_legendre, gauss_legendre_on, integrate_adaptive, integrate_real, QuadOptions, QuadratureResult};

use crate::error::{invalid, Error, Result};
use crate::geometry::{log_cutoff, BoundarySystem, Contour, Disc};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn finite(v: Complex64) -> bool {
    v.re.is_finite() && v.im.is_finite()
}

/// Periodic trapezoid rule `(2π/n) Σ f(p(s_i)) p'(s_i)`.
///
/// The refinement estimate compares against the rule on every other node.
pub fn contour_integral<F>(f: F, c: &Contour) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Complex64,
{
    let n = c.n();
    let h = TAU / n as f64;
    let mut even = Complex64::new(0.0, 0.0);
    let mut odd = Complex64::new(0.0, 0.0);
    for (i, node) in c.nodes().iter().enumerate() {
        let v = f(node.point);
        if !finite(v) {
            return Err(Error::NonFinite(node.s));
        }
        if i % 2 == 0 {
            even += v * node.deriv;
        } else {
            odd += v * node.deriv;
        }
    }
    let value = (even + odd) * h;
    let coarse = even * (2.0 * h);
    Ok(QuadratureResult {
        value,
        node_count: n,
        refinement_estimate: (value - coarse).norm(),
    })
}

/// `∫_0^{2π} g(s) ds` for a 2π-periodic `g` that may be singular (or sharply
/// peaked) at `focus`. Both half-periods are folded onto `(0, π]` so the
/// trouble spot sits at the origin of the local coordinate.
pub fn periodic_integral_at<G>(g: G, focus: f64, opts: &QuadOptions) -> Result<QuadratureResult>
where
    G: Fn(f64) -> Complex64,
{
    integrate_adaptive(|u| g(focus + u) + g(focus - u), &[0.0, PI], opts)
}

/// Adaptive version of [`contour_integral`] centred at parameter `focus`.
pub fn contour_integral_adaptive<F>(f: F, c: &Contour, focus: f64, opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Complex64,
{
    periodic_integral_at(|s| f(c.point(s)) * c.deriv(s), focus, opts)
}

/// Principal value `(1/2πi) PV∫_{∂D} f(ζ)/(ζ - t) dζ` at a boundary point `t`.
///
/// Computed as `(1/2πi)∫ (f(ζ) - f(t))/(ζ - t) dζ + f(t)/2`; the subtracted
/// integrand is bounded for Hölder `f` and the owning contour is integrated
/// adaptively in local coordinates around `t`, so the singular point itself
/// is never sampled.
pub fn pv_cauchy<F>(f: F, t: Complex64, bs: &BoundarySystem, opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Complex64,
{
    let (owner, st, dist) = bs.closest_point(t);
    let scale = bs.contours()[owner].arclength();
    if dist > 1e-8 * scale.max(1.0) {
        return Err(Error::NotOnBoundary { point: t, distance: dist });
    }
    let c = &bs.contours()[owner];
    let tp = c.point(st);
    let ft = f(tp);
    if !finite(ft) {
        return Err(Error::NonFinite(st));
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut evals = 0;
    let mut est = 0.0;
    for (k, ck) in bs.contours().iter().enumerate() {
        let focus = if k == owner { st } else { ck.closest_point(tp).0 };
        let r = periodic_integral_at(
            |s| {
                let z = ck.point(s);
                let dz = z - tp;
                if dz.norm() == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                (f(z) - ft) / dz * ck.deriv(s)
            },
            focus,
            opts,
        )?;
        total += r.value;
        evals += r.node_count;
        est += r.refinement_estimate;
    }
    Ok(QuadratureResult {
        value: total / (TAU * I) + ft * 0.5,
        node_count: evals,
        refinement_estimate: est / TAU,
    })
}

/// Node-based principal value for sampled data on a single contour: periodic
/// trapezoid on `(f_k - f_i)/(ζ_k - ζ_i)` with the singular node's term set
/// to zero, plus `f_i/2`.
pub fn pv_cauchy_nodes(values: &[Complex64], i: usize, c: &Contour) -> Result<Complex64> {
    if values.len() != c.n() {
        return Err(Error::GridMismatch(format!(
            "{} samples for a {}-node contour",
            values.len(),
            c.n()
        )));
    }
    let nodes = c.nodes();
    let (ti, fi) = (nodes[i].point, values[i]);
    let h = TAU / c.n() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, node) in nodes.iter().enumerate() {
        if k == i {
            continue;
        }
        let v = (values[k] - fi) / (node.point - ti) * node.deriv;
        if !finite(v) {
            return Err(Error::NonFinite(node.s));
        }
        acc += v;
    }
    Ok(acc * h / (TAU * I) + fi * 0.5)
}

/// Resolution of the polar area rule: trapezoid in angle, Gauss–Legendre
/// along each ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarResolution {
    pub rays: usize,
    pub radial: usize,
}

impl PolarResolution {
    pub fn new(rays: usize, radial: usize) -> Result<Self> {
        if rays < 4 || radial < 1 {
            return Err(invalid(format!("polar resolution {rays}x{radial} too small")));
        }
        Ok(Self { rays, radial })
    }
}

/// Distance from an interior point `z` to the circle bounding `disc` along
/// direction `e^{iφ}`.
pub fn ray_length(disc: &Disc, z: Complex64, phi: f64) -> f64 {
    let w = z - disc.center;
    let dir = Complex64::from_polar(1.0, phi);
    let b = (w.conj() * dir).re;
    let c = w.norm_sqr() - disc.radius * disc.radius;
    -b + (b * b - c).sqrt()
}

/// Solid Cauchy transform `-(1/π) ∬_D f(ζ)/(ζ - z) dA(ζ)` on a disc.
///
/// Polar coordinates centred at `z` cancel the kernel singularity:
/// `ζ = z + ρe^{iφ}` gives `-(1/π) ∫ e^{-iφ} ∫_0^{R(φ)} f dρ dφ`.
pub fn area_cauchy<F>(f: F, z: Complex64, disc: &Disc, res: PolarResolution) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    if !disc.contains(z) {
        return Err(Error::OutsideDomain(z));
    }
    let (x, w) = gauss_legendre(res.radial);
    let dphi = TAU / res.rays as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..res.rays {
        let phi = m as f64 * dphi;
        let dir = Complex64::from_polar(1.0, phi);
        let r = ray_length(disc, z, phi);
        let mut ray = Complex64::new(0.0, 0.0);
        for (xi, wi) in x.iter().zip(&w) {
            let rho = 0.5 * r * (xi + 1.0);
            let v = f(z + dir * rho);
            if !finite(v) {
                return Err(Error::NonFinite(phi));
            }
            ray += v * (0.5 * r * wi);
        }
        acc += ray * dir.conj();
    }
    Ok(-acc * dphi / PI)
}

/// Which of the two log-weighted integrals to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum LogWeightMode {
    /// `∫_0^h s^{α-1}|ln s|^ν ds`, for `h` up to the cut-off of `(α, ν)`.
    NearZero,
    /// `∫_h^{h0} s^{α-2}|ln s|^ν ds`.
    ToH0 { h0: f64 },
}

/// Log-weighted integrals, evaluated in the variable `u = -ln s`.
pub fn log_weight_integral(h: f64, alpha: f64, nu: f64, mode: LogWeightMode) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) || !nu.is_finite() {
        return Err(invalid(format!("invalid weight parameters alpha={alpha}, nu={nu}")));
    }
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-13,
        max_evals: 1 << 20,
    };
    match mode {
        LogWeightMode::NearZero => {
            let h0 = log_cutoff(alpha, nu);
            if !(h > 0.0 && h <= h0) {
                return Err(invalid(format!("h = {h} outside (0, {h0}]")));
            }
            // s^{α-1}|ln s|^ν ds = e^{-αu} u^ν du on [u0, ∞)
            let u0 = -h.ln();
            let g = |u: f64| (-alpha * u).exp() * u.powf(nu);
            let peak = (nu / alpha).max(u0);
            let width = (1.0 / alpha).max(1.0);
            let mut total = 0.0;
            let mut a = u0;
            loop {
                let b = if a < peak { peak.min(a + width) } else { a + width };
                let b = if b <= a { a + width } else { b };
                let (piece, _) = integrate_real(g, &[a, b], &opts)?;
                total += piece;
                a = b;
                if a > peak && g(a) < 1e-16 * total && piece < 1e-16 * total {
                    break;
                }
            }
            Ok(total)
        }
        LogWeightMode::ToH0 { h0 } => {
            if !(h0 > 0.0 && h0 < 1.0) {
                return Err(invalid(format!("cut-off h0 = {h0} outside (0, 1)")));
            }
            if !(h > 0.0 && h <= h0) {
                return Err(invalid(format!("h = {h} outside (0, {h0}]")));
            }
            // s^{α-2}|ln s|^ν ds = e^{(1-α)u} u^ν du on [-ln h0, -ln h]
            let (u1, u0) = (-h0.ln(), -h.ln());
            if u0 == u1 {
                return Ok(0.0);
            }
            let g = |u: f64| ((1.0 - alpha) * u).exp() * u.powf(nu);
            let (v, _) = integrate_real(g, &[u1, u0], &opts)?;
            Ok(v)
        }
    }
}
