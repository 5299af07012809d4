//! Tumanov's example of a Hölder function on `∂Δ × Δ` whose Cauchy integral
//! in the first variable loses a full logarithm of regularity in `λ`.
//!
//! With `r = |λ|` the boundary data in the angle `θ` of `ζ = e^{iθ}` is
//!
//! ```text
//!            r^α        on [-π, -√r]
//! f(θ, λ) =  |θ|^{2α}   on [-√r, 0]
//!            θ^α        on [0, r]
//!            r^α        on [r, π]
//! ```
//!
//! and `2πi·Sf(1, λ)` splits into a smooth cotangent correction, the
//! singular middle integral `∫ f/θ dθ = r^α/(2α) + ½ r^α |ln r|` and the
//! mean `(i/2)∫ f dθ`. The `r^α |ln r|` term is what breaks `C^α` in `λ`.

use std::f64::consts::{LN_2, PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::holder::{HolderExtension, Point};
use crate::operators::{field, Field};
use crate::quadrature::{integrate_real, QuadOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TumanovParams {
    pub alpha: f64,
    pub lambdas: Vec<Complex64>,
    /// Angular resolution for sampled boundary grids.
    pub theta_nodes: usize,
}

impl TumanovParams {
    /// Dyadic real parameters `2^{-j}` for `j = j_min..=j_max`.
    pub fn dyadic(alpha: f64, j_min: u32, j_max: u32, theta_nodes: usize) -> Result<Self> {
        let p = Self {
            alpha,
            lambdas: (j_min..=j_max)
                .map(|j| Complex64::new(0.5f64.powi(j as i32), 0.0))
                .collect(),
            theta_nodes,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if let Some(l) = self.lambdas.iter().find(|l| l.norm() >= 1.0) {
            return Err(invalid(format!("parameter {l} is outside the unit disc")));
        }
        Ok(())
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    Ok(())
}

fn check_lambda(lambda: Complex64) -> Result<f64> {
    let r = lambda.norm();
    if !(r < 1.0) {
        return Err(invalid(format!("parameter {lambda} is outside the unit disc")));
    }
    Ok(r)
}

#[inline]
fn boundary_unchecked(theta: f64, r: f64, alpha: f64) -> f64 {
    let sr = r.sqrt();
    if theta <= -sr {
        r.powf(alpha)
    } else if theta <= 0.0 {
        (-theta).powf(2.0 * alpha)
    } else if theta <= r {
        theta.powf(alpha)
    } else {
        r.powf(alpha)
    }
}

/// The boundary data at angle `θ ∈ [-π, π]`. Only `|λ|` matters.
pub fn tumanov_boundary(theta: f64, lambda: Complex64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let r = check_lambda(lambda)?;
    if !(theta.abs() <= PI) {
        return Err(invalid(format!("angle {theta} is outside [-π, π]")));
    }
    Ok(boundary_unchecked(theta, r, alpha))
}

/// Closed form of `∫_{-π}^{π} f(θ, λ)/θ dθ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MiddleTerm {
    pub value: f64,
    /// Set when `λ = 0`, where the value 0 is the limit rather than a formula.
    pub at_zero: bool,
}

pub fn tumanov_middle_closed_form(lambda: Complex64, alpha: f64) -> Result<MiddleTerm> {
    check_alpha(alpha)?;
    let r = check_lambda(lambda)?;
    if r == 0.0 {
        return Ok(MiddleTerm {
            value: 0.0,
            at_zero: true,
        });
    }
    let ra = r.powf(alpha);
    Ok(MiddleTerm {
        value: ra / (2.0 * alpha) + 0.5 * ra * r.ln().abs(),
        at_zero: false,
    })
}

fn breaks(r: f64) -> Vec<f64> {
    if r == 0.0 {
        vec![-PI, 0.0, PI]
    } else {
        vec![-PI, -r.sqrt(), 0.0, r, PI]
    }
}

/// Adaptive quadrature of the middle integral, split at the branch points.
pub fn tumanov_middle_quadrature(lambda: Complex64, alpha: f64, opts: &QuadOptions) -> Result<f64> {
    check_alpha(alpha)?;
    let r = check_lambda(lambda)?;
    let (v, _) = integrate_real(|t| boundary_unchecked(t, r, alpha) / t, &breaks(r), opts)?;
    Ok(v)
}

/// Closed form of `∫_{-π}^{π} f(θ, λ) dθ`.
pub fn tumanov_total_closed_form(lambda: Complex64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let r = check_lambda(lambda)?;
    let ra = r.powf(alpha);
    Ok(ra * (PI - r.sqrt()) + r.powf(alpha + 0.5) / (2.0 * alpha + 1.0) + r.powf(alpha + 1.0) / (alpha + 1.0) + ra * (PI - r))
}

pub fn tumanov_total_quadrature(lambda: Complex64, alpha: f64, opts: &QuadOptions) -> Result<f64> {
    check_alpha(alpha)?;
    let r = check_lambda(lambda)?;
    let (v, _) = integrate_real(|t| boundary_unchecked(t, r, alpha), &breaks(r), opts)?;
    Ok(v)
}

/// `cot(θ/2) - 2/θ`, continuous at 0 with value 0.
pub fn cot_correction(theta: f64) -> f64 {
    if theta.abs() < 1e-4 {
        let t3 = theta * theta * theta;
        -theta / 6.0 - t3 / 360.0
    } else {
        1.0 / (0.5 * theta).tan() - 2.0 / theta
    }
}

/// The three pieces of `2πi·Sf(1, λ)` and `Sf(1, λ)` itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SAtOne {
    /// `Sf(1, λ)` (principal value; equals the boundary value since `f(0, λ) = 0`).
    pub value: Complex64,
    /// `½ ∫ f (cot(θ/2) - 2/θ) dθ`.
    pub correction: f64,
    /// `∫ f/θ dθ` from the closed form.
    pub middle: f64,
    /// `∫ f dθ` by quadrature.
    pub total: f64,
}

impl SAtOne {
    /// `Sf(1, λ)` without the middle term, the part that stays `C^α` in `λ`.
    pub fn regular_part(&self) -> Complex64 {
        (Complex64::new(self.correction, 0.5 * self.total)) / Complex64::new(0.0, TAU)
    }
}

pub fn tumanov_s_at_one(lambda: Complex64, alpha: f64, opts: &QuadOptions) -> Result<SAtOne> {
    check_alpha(alpha)?;
    let r = check_lambda(lambda)?;
    let b = breaks(r);
    let (corr, _) = integrate_real(|t| boundary_unchecked(t, r, alpha) * cot_correction(t), &b, opts)?;
    let correction = 0.5 * corr;
    let middle = tumanov_middle_closed_form(lambda, alpha)?.value;
    let (total, _) = integrate_real(|t| boundary_unchecked(t, r, alpha), &b, opts)?;
    let two_pi_i_s = Complex64::new(correction + middle, 0.5 * total);
    Ok(SAtOne {
        value: two_pi_i_s / Complex64::new(0.0, TAU),
        correction,
        middle,
        total,
    })
}

/// One row of the divergence table at `λ = 2^{-j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceRow {
    pub j: u32,
    pub lambda: f64,
    pub s: Complex64,
    /// `q_j = |Sf(1, 2^{-j}) - Sf(1, 0)| / (2^{-jα} (j ln 2)^μ)`, one per `μ`.
    pub q: Vec<f64>,
}

/// Quotients against the base point `Sf(1, 0) = 0` for `j = 2..=J`.
pub fn remark_divergence_experiment(alpha: f64, mus: &[f64], j_max: u32, opts: &QuadOptions) -> Result<Vec<DivergenceRow>> {
    check_alpha(alpha)?;
    if j_max < 4 {
        return Err(invalid(format!("need J ≥ 4, got {j_max}")));
    }
    if let Some(mu) = mus.iter().find(|m| !m.is_finite()) {
        return Err(invalid(format!("non-finite log exponent {mu}")));
    }
    let base = tumanov_s_at_one(Complex64::new(0.0, 0.0), alpha, opts)?.value;
    (2..=j_max)
        .into_par_iter()
        .map(|j| {
            let lambda = 0.5f64.powi(j as i32);
            let s = tumanov_s_at_one(Complex64::new(lambda, 0.0), alpha, opts)?.value;
            let diff = (s - base).norm();
            let q = mus
                .iter()
                .map(|mu| diff / (lambda.powf(alpha) * (j as f64 * LN_2).powf(*mu)))
                .collect();
            Ok(DivergenceRow { j, lambda, s, q })
        })
        .collect()
}

/// Hölder extension of the boundary data from a sampled `∂Δ × Δ` grid.
///
/// On `|z₁| = 1` the exact boundary formula is returned; elsewhere the
/// inf-convolution over the grid.
#[derive(Debug, Clone)]
pub struct TumanovExtension {
    alpha: f64,
    ext: HolderExtension,
}

impl TumanovExtension {
    /// `theta_nodes` angles times the given parameter points; the constant
    /// `m` should dominate the Hölder constant of the data on that set.
    pub fn new(alpha: f64, theta_nodes: usize, lambdas: &[Complex64], m: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let (points, values) = Self::sample_grid(alpha, theta_nodes, lambdas)?;
        Ok(Self {
            alpha,
            ext: HolderExtension::new(points, values, m, alpha)?,
        })
    }

    /// The sample set `E` with its data.
    pub fn sample_grid(alpha: f64, theta_nodes: usize, lambdas: &[Complex64]) -> Result<(Vec<Point>, Vec<f64>)> {
        if theta_nodes < 4 {
            return Err(invalid("need at least four angles"));
        }
        let mut points = Vec::with_capacity(theta_nodes * lambdas.len());
        let mut values = Vec::with_capacity(points.capacity());
        for &l in lambdas {
            let r = check_lambda(l)?;
            for k in 0..theta_nodes {
                let theta = -PI + TAU * k as f64 / theta_nodes as f64;
                points.push(vec![Complex64::from_polar(1.0, theta), l]);
                values.push(boundary_unchecked(theta, r, alpha));
            }
        }
        Ok((points, values))
    }

    pub fn eval(&self, p: &[Complex64]) -> f64 {
        let z = p[0];
        if (z.norm() - 1.0).abs() <= 1e-12 {
            let r = p[1].norm().min(1.0 - f64::EPSILON);
            boundary_unchecked(z.arg(), r, self.alpha)
        } else {
            self.ext.eval(p)
        }
    }

    pub fn into_field(self) -> Field {
        field(move |p| Complex64::new(self.eval(p), 0.0))
    }
}

/// The boundary data as a field on `∂Δ × Δ` (angle taken from slot 0,
/// parameter from slot 1). Suitable wherever only boundary values are read.
pub fn tumanov_boundary_field(alpha: f64) -> Field {
    field(move |p| {
        let r = p[1].norm();
        if r >= 1.0 {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        Complex64::new(boundary_unchecked(p[0].arg(), r, alpha), 0.0)
    })
}
