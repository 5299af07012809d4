//! Solution operator for `∂̄u = f` on a product of discs,
//! `u = T₁f₁ + T₂S₁f₂ + ⋯ + T_nS₁⋯S_{n-1}f_n`, with finite-difference
//! residual checks and the contour-integral witness of the branch-point
//! example.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{make_circle, BoundarySystem, Disc, ProductDomain};
use crate::holder::Point;
use crate::operators::{field, slice_s_field, slice_t_field, Field, GridFunction, GridRole};
use crate::quadrature::{contour_integral, PolarResolution, QuadOptions};

/// A (0,1)-form `Σ f_j dz̄_j` on a product of discs.
#[derive(Clone)]
pub struct Form01 {
    domain: Arc<ProductDomain>,
    discs: Vec<Disc>,
    components: Vec<Field>,
}

impl std::fmt::Debug for Form01 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Form01").field("discs", &self.discs).finish()
    }
}

impl Form01 {
    pub fn new(domain: Arc<ProductDomain>, components: Vec<Field>) -> Result<Self> {
        if components.len() != domain.dim() {
            return Err(Error::GridMismatch(format!(
                "{} components on a {}-factor domain",
                components.len(),
                domain.dim()
            )));
        }
        let discs = domain
            .factors()
            .iter()
            .enumerate()
            .map(|(j, f)| f.as_disc().ok_or_else(|| invalid(format!("factor {j} is not a disc"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            domain,
            discs,
            components,
        })
    }

    pub fn domain(&self) -> &Arc<ProductDomain> {
        &self.domain
    }

    pub fn discs(&self) -> &[Disc] {
        &self.discs
    }

    pub fn components(&self) -> &[Field] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.discs.len()
    }

    /// `a·self + b·other` on the same domain.
    pub fn combine(&self, a: Complex64, other: &Form01, b: Complex64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::GridMismatch("forms on different domains".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| {
                let (f, g) = (f.clone(), g.clone());
                field(move |p| a * f(p) + b * g(p))
            })
            .collect();
        Self::new(self.domain.clone(), components)
    }
}

/// Quadrature knobs of the solution operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DbarResolution {
    /// Nodes on each boundary circle used by the `S_l`.
    pub contour_nodes: usize,
    /// Polar rule of each `T_j`.
    pub polar: PolarResolution,
    pub quad: QuadOptions,
}

impl DbarResolution {
    pub fn new(contour_nodes: usize, rays: usize, radial: usize) -> Result<Self> {
        if contour_nodes < 8 || !contour_nodes.is_multiple_of(2) {
            return Err(invalid(format!("contour resolution {contour_nodes} must be even and ≥ 8")));
        }
        Ok(Self {
            contour_nodes,
            polar: PolarResolution::new(rays, radial)?,
            quad: QuadOptions::with_tol(1e-11),
        })
    }
}

/// `u` as a field: the sum over `j` of `T_j S_1 ⋯ S_{j-1} f_j`, applying the
/// `S_l` in increasing slot order before the area transform.
pub fn solution_field(form: &Form01, res: &DbarResolution) -> Result<Field> {
    let boundaries = form
        .discs
        .iter()
        .map(|d| BoundarySystem::single(make_circle(d.center, d.radius, res.contour_nodes)?))
        .collect::<Result<Vec<_>>>()?;
    let terms: Vec<Field> = form
        .components
        .iter()
        .enumerate()
        .map(|(j, fj)| {
            let mut g = fj.clone();
            for (l, bs) in boundaries.iter().enumerate().take(j) {
                g = slice_s_field(l, g, bs.clone(), res.quad);
            }
            slice_t_field(j, g, form.discs[j], res.polar)
        })
        .collect();
    Ok(field(move |p| terms.iter().map(|t| t(p)).sum()))
}

/// `u` sampled on the interior tensor grid of the form's domain, with the
/// solution field as closure.
pub fn solve_dbar(form: &Form01, res: &DbarResolution) -> Result<GridFunction> {
    let u = solution_field(form, res)?;
    GridFunction::sample(form.domain.clone(), vec![GridRole::Interior; form.dim()], u)
}

/// Central-difference `∂/∂z̄_j = ½(∂_x + i∂_y)` in slot `j`.
pub fn wirtinger_dbar<F>(u: &F, j: usize, z: &[Complex64], h: f64, discs: &[Disc]) -> Result<Complex64>
where
    F: Fn(&[Complex64]) -> Complex64 + ?Sized,
{
    if !(h > 0.0) {
        return Err(invalid(format!("step must be positive, got {h}")));
    }
    if j >= z.len() || discs.len() != z.len() {
        return Err(Error::GridMismatch(format!("slot {j} of a {}-point", z.len())));
    }
    let mut vals = [Complex64::new(0.0, 0.0); 4];
    for (v, step) in vals.iter_mut().zip([
        Complex64::new(h, 0.0),
        Complex64::new(-h, 0.0),
        Complex64::new(0.0, h),
        Complex64::new(0.0, -h),
    ]) {
        let mut q = z.to_vec();
        q[j] += step;
        if !discs[j].contains(q[j]) {
            return Err(Error::OutsideDomain(q[j]));
        }
        *v = u(&q);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite(h));
        }
    }
    let i = Complex64::new(0.0, 1.0);
    Ok((vals[0] - vals[1] + i * (vals[2] - vals[3])) / (4.0 * h))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// Per component: `max |∂̄_j u - f_j| / (1 + |f_j|)` over the nodes.
    pub max_rel_err: Vec<f64>,
    pub nodes: Vec<Point>,
}

impl ResidualReport {
    pub fn max(&self) -> f64 {
        self.max_rel_err.iter().cloned().fold(0.0, f64::max)
    }
}

pub fn residual_report<F>(form: &Form01, u: &F, nodes: &[Point], h: f64) -> Result<ResidualReport>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync + ?Sized,
{
    let per_node: Vec<Vec<f64>> = nodes
        .par_iter()
        .map(|z| {
            (0..form.dim())
                .map(|j| {
                    let d = wirtinger_dbar(u, j, z, h, &form.discs)?;
                    let fj = form.components[j](z);
                    Ok((d - fj).norm() / (1.0 + fj.norm()))
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let mut max_rel_err = vec![0.0; form.dim()];
    for row in &per_node {
        for (m, e) in max_rel_err.iter_mut().zip(row) {
            *m = f64::max(*m, *e);
        }
    }
    Ok(ResidualReport {
        max_rel_err,
        nodes: nodes.to_vec(),
    })
}

/// Tensor grid of test points at distance at least `clearance` from every
/// boundary circle: the centre plus `rays` points on each of `rings` circles
/// of radius up to `radius - clearance`.
pub fn clearance_nodes(discs: &[Disc], clearance: f64, rings: usize, rays: usize) -> Result<Vec<Point>> {
    let per: Vec<Vec<Complex64>> = discs
        .iter()
        .map(|d| {
            let reach = d.radius - clearance;
            if reach < 0.0 {
                return Err(invalid(format!("clearance {clearance} exceeds radius {}", d.radius)));
            }
            let mut pts = vec![d.center];
            for k in 1..=rings {
                let rho = reach * k as f64 / rings as f64;
                for m in 0..rays {
                    let phase = TAU * (m as f64 + 0.5 * (k % 2) as f64) / rays as f64;
                    pts.push(d.center + Complex64::from_polar(rho, phase));
                }
            }
            Ok(pts)
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Point> = vec![Vec::new()];
    for axis in &per {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |z| {
                    let mut q = p.clone();
                    q.push(*z);
                    q
                })
            })
            .collect();
    }
    Ok(out)
}

/// `(w)^{k+α} log^ν(w)` with `w = z₁ - 1` and `arg w` taken in `(π/2, 3π/2)`;
/// 0 at `w = 0`.
pub fn branch_power(z1: Complex64, k: u32, alpha: f64, nu: f64) -> Complex64 {
    let w = z1 - 1.0;
    if w.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut arg = w.arg();
    if arg < 0.0 {
        arg += TAU;
    }
    let log = Complex64::new(w.norm().ln(), arg);
    let power = (log * (k as f64 + alpha)).exp();
    let log_power = if nu.fract() == 0.0 && nu.abs() < 64.0 {
        log.powi(nu as i32)
    } else {
        (log.ln() * nu).exp()
    };
    power * log_power
}

/// `f = (z₁ - 1)^{k+α} log^ν(z₁ - 1) dz̄₂` on the unit bidisc, sampled on
/// `interior` grid points in both factors.
pub fn example_form(k: u32, alpha: f64, nu: f64, domain: Arc<ProductDomain>) -> Result<Form01> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if domain.dim() != 2 {
        return Err(Error::GridMismatch("the example lives on a bidisc".into()));
    }
    Form01::new(
        domain,
        vec![
            field(|_| Complex64::new(0.0, 0.0)),
            field(move |p| branch_power(p[0], k, alpha, nu)),
        ],
    )
}

/// `(πi/2)(ξ - 1)^{k+α} log^ν(ξ - 1)`, the witness of the example.
pub fn witness_closed_form(xi: Complex64, k: u32, alpha: f64, nu: f64) -> Complex64 {
    Complex64::new(0.0, 0.5 * PI) * branch_power(xi, k, alpha, nu)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub xi: Complex64,
    pub w: Complex64,
    pub closed_form: Option<Complex64>,
    pub abs_err: Option<f64>,
}

/// `w(ξ) = ∮_{|z₂| = 1/2} u(ξ, z₂) dz₂` with an `m`-node trapezoid rule.
pub fn example_witness<F>(
    u: &F,
    xis: &[Complex64],
    m: usize,
    closed: Option<&(dyn Fn(Complex64) -> Complex64 + Sync)>,
) -> Result<Vec<WitnessRow>>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync + ?Sized,
{
    if let Some(xi) = xis.iter().find(|x| x.norm() >= 1.0) {
        return Err(Error::OutsideDomain(*xi));
    }
    let circle = make_circle(Complex64::new(0.0, 0.0), 0.5, m)?;
    xis.par_iter()
        .map(|&xi| {
            let w = contour_integral(|z2| u(&[xi, z2]), &circle)?.value;
            let cf = closed.map(|c| c(xi));
            Ok(WitnessRow {
                xi,
                w,
                closed_form: cf,
                abs_err: cf.map(|c| (c - w).norm()),
            })
        })
        .collect()
}
