//! Self-check suites run by `verify`. Each case compares a computed value
//! with a closed form or a proven bound.

use std::f64::consts::TAU;

use cauchy_core::geometry::{inner_normal, make_circle, make_fourier_contour, BoundarySystem, Disc, HolderIndex};
use cauchy_core::operators::{cauchy_interior, plemelj_boundary, solid_cauchy};
use cauchy_core::quadrature::{log_weight_integral, pv_cauchy, LogWeightMode, PolarResolution, QuadOptions};
use cauchy_core::Complex64;

use crate::cli::Suite;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub suite: &'static str,
    pub case: String,
    pub error: f64,
    pub tolerance: f64,
}

impl CaseResult {
    pub fn pass(&self) -> bool {
        self.error <= self.tolerance
    }
}

pub fn run(suite: Suite) -> Result<Vec<CaseResult>> {
    Ok(match suite {
        Suite::Cauchy => cauchy_reproduction()?,
        Suite::Pv => pv_identity()?,
        Suite::Plemelj => plemelj_consistency()?,
        Suite::Area => area_closed_form()?,
        Suite::LogWeight => log_weight_bounds()?,
        Suite::All => {
            let mut all = cauchy_reproduction()?;
            all.extend(pv_identity()?);
            all.extend(plemelj_consistency()?);
            all.extend(area_closed_form()?);
            all.extend(log_weight_bounds()?);
            all
        }
    })
}

pub fn to_csv(rows: &[CaseResult]) -> String {
    let mut s = String::from("suite,case,error,tolerance,pass\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{:.6e},{:.1e},{}\n",
            r.suite,
            r.case,
            r.error,
            r.tolerance,
            r.pass()
        ));
    }
    s
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Twenty points at distance at least 0.1 from the unit circle.
pub fn interior_probe_points() -> Vec<Complex64> {
    (0..20)
        .map(|k| {
            let rho = 0.05 + 0.85 * (k % 5) as f64 / 4.0;
            Complex64::from_polar(rho, 0.37 + TAU * k as f64 / 20.0)
        })
        .collect()
}

fn unit_boundary(n: usize) -> Result<BoundarySystem> {
    Ok(BoundarySystem::single(make_circle(c(0.0, 0.0), 1.0, n)?)?)
}

fn cauchy_reproduction() -> Result<Vec<CaseResult>> {
    let bs = unit_boundary(512)?;
    let opts = QuadOptions::default();
    let pts = interior_probe_points();
    (0..=8)
        .map(|d| {
            let mut err: f64 = 0.0;
            for &z in &pts {
                let v = cauchy_interior(|w| w.powi(d), z, &bs, &opts)?.value;
                err = err.max((v - z.powi(d)).norm());
            }
            Ok(CaseResult {
                suite: "cauchy",
                case: format!("z^{d}"),
                error: err,
                tolerance: 1e-10,
            })
        })
        .collect()
}

fn pv_identity() -> Result<Vec<CaseResult>> {
    let opts = QuadOptions::default();
    let circle = make_circle(c(0.0, 0.0), 1.0, 256)?;
    let ellipse = make_fourier_contour(&[(1, c(0.75, 0.0)), (-1, c(0.25, 0.0))], 256)?;
    [("circle", circle), ("ellipse", ellipse)]
        .into_iter()
        .map(|(name, contour)| {
            let bs = BoundarySystem::single(contour.clone())?;
            let mut err: f64 = 0.0;
            for node in contour.nodes() {
                let v = pv_cauchy(|_| c(1.0, 0.0), node.point, &bs, &opts)?.value;
                err = err.max((v - c(0.5, 0.0)).norm());
            }
            Ok(CaseResult {
                suite: "pv",
                case: format!("{name}_256"),
                error: err,
                tolerance: 1e-10,
            })
        })
        .collect()
}

/// Interior values of `S[ζ̄ + ζ²]` along the inner normal, extrapolated to
/// the boundary, against `Φ`.
pub fn plemelj_extrapolation_errors(points: usize) -> Result<Vec<(Complex64, f64)>> {
    let contour = make_circle(c(0.0, 0.0), 1.0, 256)?;
    let bs = BoundarySystem::single(contour.clone())?;
    let opts = QuadOptions::with_tol(1e-12);
    let f = |z: Complex64| z.conj() + z * z;
    let (d1, d2) = (2e-3, 1e-3);
    (0..points)
        .map(|k| {
            let s = 0.1 + TAU * k as f64 / points as f64;
            let t = contour.point(s);
            let n = inner_normal(&contour, s);
            let v1 = cauchy_interior(f, t + n * d1, &bs, &opts)?.value;
            let v2 = cauchy_interior(f, t + n * d2, &bs, &opts)?.value;
            let limit = v2 + (v2 - v1) * (d2 / (d1 - d2));
            let phi = plemelj_boundary(f, t, &bs, &opts)?.value;
            Ok((t, (limit - phi).norm()))
        })
        .collect()
}

fn plemelj_consistency() -> Result<Vec<CaseResult>> {
    Ok(plemelj_extrapolation_errors(16)?
        .into_iter()
        .enumerate()
        .map(|(k, (_, e))| CaseResult {
            suite: "plemelj",
            case: format!("t{k}"),
            error: e,
            tolerance: 1e-4,
        })
        .collect())
}

fn area_closed_form() -> Result<Vec<CaseResult>> {
    let disc = Disc::unit();
    let res = PolarResolution::new(256, 64)?;
    (0..10)
        .map(|k| {
            let z = Complex64::from_polar(0.09 * k as f64, 0.7 * k as f64);
            let v = solid_cauchy(|_| c(1.0, 0.0), z, &disc, res)?;
            Ok(CaseResult {
                suite: "area",
                case: format!("z{k}"),
                error: (v - z.conj()).norm(),
                tolerance: 1e-7,
            })
        })
        .collect()
}

/// Parameter sets of the log-weight bound check.
pub const LOG_WEIGHT_CASES: [(f64, f64); 4] = [(0.5, 1.0), (0.5, -1.0), (1.0, 1.0), (0.9, 2.0)];

/// Bound violations of both log-weight integral families over 50
/// geometric `h ∈ (0, h0]`. The error column is the worst ratio
/// `integral / bound - 1`, clamped at 0, so a pass means no violation.
fn log_weight_bounds() -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for (alpha, nu) in LOG_WEIGHT_CASES {
        let h0 = HolderIndex::new(0, alpha, nu)?.h0();
        let hs: Vec<f64> = (0..50).map(|k| h0 * 10f64.powf(-12.0 * k as f64 / 49.0)).collect();
        let mut near: f64 = 0.0;
        let mut far: f64 = 0.0;
        for &h in &hs {
            let lh = h.ln().abs();
            let c_near = if nu > 0.0 { 2.0 / alpha } else { 1.0 / alpha };
            let v = log_weight_integral(h, alpha, nu, LogWeightMode::NearZero)?;
            near = near.max(v / (c_near * h.powf(alpha) * lh.powf(nu)) - 1.0);
            if h < h0 {
                let v = log_weight_integral(h, alpha, nu, LogWeightMode::ToH0 { h0 })?;
                let bound = if alpha < 1.0 {
                    2.0 / (1.0 - alpha) * h.powf(alpha - 1.0) * lh.powf(nu)
                } else {
                    lh.powf(nu + 1.0) / (nu + 1.0)
                };
                far = far.max(v / bound - 1.0);
            }
        }
        for (family, worst) in [("near_zero", near), ("to_h0", far)] {
            out.push(CaseResult {
                suite: "log_weight",
                case: format!("{family}_a{alpha}_n{nu}"),
                error: worst.max(0.0),
                tolerance: 0.0,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probe_points_keep_their_distance() {
        for z in interior_probe_points() {
            assert!(1.0 - z.norm() >= 0.1 - 1e-15);
        }
    }

    #[test]
    fn log_weight_suite_has_no_violations() {
        let rows = run(Suite::LogWeight).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(CaseResult::pass), "{rows:?}");
    }
}
