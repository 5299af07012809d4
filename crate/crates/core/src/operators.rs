//! Cauchy integral `S`, its boundary value `Φ = PV + f/2`, the solid
//! transform `T` and their slice versions on product domains.
//!
//! Slice operators work on [`GridFunction`]s. When a grid function carries a
//! closure, operators evaluate it off-grid and return a grid function whose
//! own closure applies the operator at any point; this is how the terms of
//! the product-domain solution operator are composed without interpolating.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{BoundarySystem, Disc, ProductDomain};
use crate::quadrature::{
    area_cauchy, contour_integral, periodic_integral_at, pv_cauchy, pv_cauchy_nodes, PolarResolution,
    QuadOptions, QuadratureResult,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Function of all coordinates of a product domain. A NaN result signals
/// that the value could not be computed.
pub type Field = Arc<dyn Fn(&[Complex64]) -> Complex64 + Send + Sync>;

pub fn field<F>(f: F) -> Field
where
    F: Fn(&[Complex64]) -> Complex64 + Send + Sync + 'static,
{
    Arc::new(f)
}

fn finite(v: Complex64) -> bool {
    v.re.is_finite() && v.im.is_finite()
}

fn nan() -> Complex64 {
    Complex64::new(f64::NAN, f64::NAN)
}

/// Interior points at least this many node gaps from the boundary use the
/// plain trapezoid rule. On a circle with `n` nodes the rule then errs by
/// about `(1 - 12π/n)^n ≈ e^{-38}` for data analytic near the contour.
const FAR_FIELD: f64 = 6.0;

/// `Sf(z) = (1/2πi) ∫_{∂D} f(ζ)/(ζ - z) dζ` for `z` inside.
///
/// Far from the boundary this is the trapezoid rule on the contour nodes,
/// accepted when it agrees with the rule on every other node. Otherwise
/// (near the boundary, or rough data) `f(t*)` at the nearest boundary point
/// is subtracted (its integral is exactly `f(t*)`) and the remainder is
/// integrated adaptively around `t*` so the kernel peak is resolved.
pub fn cauchy_interior<F>(f: F, z: Complex64, bs: &BoundarySystem, opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Complex64,
{
    if !bs.contains(z) {
        return Err(Error::OutsideDomain(z));
    }
    let (owner, st, dist) = bs.closest_point(z);
    let mut total = Complex64::new(0.0, 0.0);
    let mut evals = 0;
    let mut est = 0.0;
    if dist >= FAR_FIELD * bs.max_node_gap() {
        for c in bs.contours() {
            let r = contour_integral(|zeta| f(zeta) / (zeta - z), c)?;
            total += r.value;
            evals += r.node_count;
            est += r.refinement_estimate;
        }
        let value = total / (TAU * I);
        let tol = opts.abs_tol.max(opts.rel_tol * value.norm());
        if est / TAU <= 100.0 * tol {
            return Ok(QuadratureResult {
                value,
                node_count: evals,
                refinement_estimate: est / TAU,
            });
        }
        total = Complex64::new(0.0, 0.0);
        est = 0.0;
    }
    let tstar = bs.contours()[owner].point(st);
    let ft = f(tstar);
    if !finite(ft) {
        return Err(Error::NonFinite(st));
    }
    for (k, c) in bs.contours().iter().enumerate() {
        let focus = if k == owner { st } else { c.closest_point(z).0 };
        let r = periodic_integral_at(|s| (f(c.point(s)) - ft) / (c.point(s) - z) * c.deriv(s), focus, opts)?;
        total += r.value;
        evals += r.node_count;
        est += r.refinement_estimate;
    }
    Ok(QuadratureResult {
        value: ft + total / (TAU * I),
        node_count: evals,
        refinement_estimate: est / TAU,
    })
}

/// `Φf(t) = PV Sf(t) + f(t)/2`, the nontangential limit of `Sf` at `t ∈ ∂D`.
pub fn plemelj_boundary<F>(f: F, t: Complex64, bs: &BoundarySystem, opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Complex64,
{
    let (owner, st, _) = bs.closest_point(t);
    let ft = f(bs.contours()[owner].point(st));
    let mut r = pv_cauchy(&f, t, bs, opts)?;
    r.value += ft * 0.5;
    Ok(r)
}

/// `Tf(z) = -(1/π) ∬_D f(ζ)/(ζ - z) dA(ζ)` on a disc.
pub fn solid_cauchy<F>(f: F, z: Complex64, disc: &Disc, res: PolarResolution) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    area_cauchy(f, z, disc, res)
}

/// Whether a factor of a grid function is sampled on interior or boundary nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridRole {
    Interior,
    Boundary,
}

/// Samples on a tensor grid over a product domain, stored flat in row-major
/// order (last factor fastest), with an optional closure for off-grid values.
#[derive(Clone)]
pub struct GridFunction {
    domain: Arc<ProductDomain>,
    roles: Vec<GridRole>,
    nodes: Vec<Vec<Complex64>>,
    values: Vec<Complex64>,
    closure: Option<Field>,
}

impl fmt::Debug for GridFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridFunction")
            .field("shape", &self.shape())
            .field("roles", &self.roles)
            .field("closure", &self.closure.is_some())
            .finish()
    }
}

/// Serializable snapshot of a grid function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRecord {
    pub shape: Vec<usize>,
    pub roles: Vec<GridRole>,
    pub nodes: Vec<Vec<[f64; 2]>>,
    pub values: Vec<[f64; 2]>,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn role_nodes(domain: &ProductDomain, roles: &[GridRole]) -> Result<Vec<Vec<Complex64>>> {
    if roles.len() != domain.dim() {
        return Err(Error::GridMismatch(format!(
            "{} roles for a {}-factor domain",
            roles.len(),
            domain.dim()
        )));
    }
    Ok(domain
        .factors()
        .iter()
        .zip(roles)
        .map(|(f, r)| match r {
            GridRole::Interior => f.interior.clone(),
            GridRole::Boundary => f.boundary_nodes(),
        })
        .collect())
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * shape[k + 1];
    }
    s
}

impl GridFunction {
    /// Evaluate `f` on the grid picked by `roles` and keep `f` as the closure.
    pub fn sample(domain: Arc<ProductDomain>, roles: Vec<GridRole>, f: Field) -> Result<Self> {
        let nodes = role_nodes(&domain, &roles)?;
        let mut g = Self {
            domain,
            roles,
            nodes,
            values: Vec::new(),
            closure: Some(f.clone()),
        };
        let values: Vec<Complex64> = (0..g.len()).into_par_iter().map(|k| f(&g.point(k))).collect();
        if let Some(k) = values.iter().position(|v| !finite(*v)) {
            return Err(Error::NonFinite(k as f64));
        }
        g.values = values;
        Ok(g)
    }

    /// Grid function from precomputed values, without a closure.
    pub fn from_values(domain: Arc<ProductDomain>, roles: Vec<GridRole>, values: Vec<Complex64>) -> Result<Self> {
        let nodes = role_nodes(&domain, &roles)?;
        let len: usize = nodes.iter().map(Vec::len).product();
        if values.len() != len {
            return Err(Error::GridMismatch(format!("{} values for {} grid nodes", values.len(), len)));
        }
        if let Some(k) = values.iter().position(|v| !finite(*v)) {
            return Err(Error::NonFinite(k as f64));
        }
        Ok(Self {
            domain,
            roles,
            nodes,
            values,
            closure: None,
        })
    }

    pub fn domain(&self) -> &Arc<ProductDomain> {
        &self.domain
    }

    pub fn roles(&self) -> &[GridRole] {
        &self.roles
    }

    pub fn shape(&self) -> Vec<usize> {
        self.nodes.iter().map(Vec::len).collect()
    }

    pub fn nodes(&self, j: usize) -> &[Complex64] {
        &self.nodes[j]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn closure(&self) -> Option<&Field> {
        self.closure.as_ref()
    }

    pub fn without_closure(mut self) -> Self {
        self.closure = None;
        self
    }

    /// Tensor index of flat position `k`.
    pub fn multi_index(&self, mut k: usize) -> Vec<usize> {
        let shape = self.shape();
        let mut idx = vec![0; shape.len()];
        for d in (0..shape.len()).rev() {
            idx[d] = k % shape[d];
            k /= shape[d];
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        strides(&self.shape()).iter().zip(idx).map(|(s, i)| s * i).sum()
    }

    /// Coordinates of flat position `k`.
    pub fn point(&self, k: usize) -> Vec<Complex64> {
        self.multi_index(k)
            .iter()
            .zip(&self.nodes)
            .map(|(&i, n)| n[i])
            .collect()
    }

    pub fn at(&self, idx: &[usize]) -> Complex64 {
        self.values[self.flat_index(idx)]
    }

    /// Off-grid value through the closure.
    pub fn eval(&self, p: &[Complex64]) -> Result<Complex64> {
        let f = self
            .closure
            .as_ref()
            .ok_or_else(|| invalid("grid function has no closure for off-grid evaluation"))?;
        let v = f(p);
        if finite(v) {
            Ok(v)
        } else {
            Err(Error::NonFinite(p.first().map_or(0.0, |z| z.norm())))
        }
    }

    pub fn record(&self) -> GridRecord {
        GridRecord {
            shape: self.shape(),
            roles: self.roles.clone(),
            nodes: self.nodes.iter().map(|n| n.iter().copied().map(pair).collect()).collect(),
            values: self.values.iter().copied().map(pair).collect(),
        }
    }

    /// Rebuild from a snapshot; node lists must match the domain's grids.
    pub fn from_record(domain: Arc<ProductDomain>, rec: &GridRecord) -> Result<Self> {
        let values = rec.values.iter().map(|v| Complex64::new(v[0], v[1])).collect();
        let g = Self::from_values(domain, rec.roles.clone(), values)?;
        if g.shape() != rec.shape {
            return Err(Error::GridMismatch(format!("shape {:?} vs {:?}", rec.shape, g.shape())));
        }
        Ok(g)
    }

    /// CSV for two-factor grids: `i,j,z1_re,z1_im,z2_re,z2_im,re,im`.
    pub fn to_csv(&self) -> Result<String> {
        if self.nodes.len() != 2 {
            return Err(Error::GridMismatch("CSV export needs exactly two factors".into()));
        }
        let mut out = String::from("i,j,z1_re,z1_im,z2_re,z2_im,re,im\n");
        for k in 0..self.len() {
            let idx = self.multi_index(k);
            let p = self.point(k);
            let v = self.values[k];
            out.push_str(&format!(
                "{},{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}\n",
                idx[0], idx[1], p[0].re, p[0].im, p[1].re, p[1].im, v.re, v.im
            ));
        }
        Ok(out)
    }
}

/// Where a slice Cauchy integral is evaluated in its own factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SliceTarget {
    Interior,
    Boundary,
}

/// `f(p)` with slot `j` replaced by `z`. Low-dimensional points are copied
/// to the stack; this sits in the innermost loop of every slice operator.
fn eval_with_slot(f: &Field, p: &[Complex64], j: usize, z: Complex64) -> Complex64 {
    const STACK: usize = 8;
    if p.len() <= STACK {
        let mut buf = [Complex64::new(0.0, 0.0); STACK];
        buf[..p.len()].copy_from_slice(p);
        buf[j] = z;
        f(&buf[..p.len()])
    } else {
        let mut q = p.to_vec();
        q[j] = z;
        f(&q)
    }
}

/// `S_j` as a field: the Cauchy integral of `f` in slot `j` over `bs`, with
/// the other slots taken from the evaluation point. Points on `∂D_j` get the
/// boundary value `Φ`.
pub fn slice_s_field(j: usize, f: Field, bs: BoundarySystem, opts: QuadOptions) -> Field {
    let tol = 1e-9 * bs.min_arclength().max(1.0);
    field(move |p: &[Complex64]| {
        let g = |zeta: Complex64| eval_with_slot(&f, p, j, zeta);
        let r = if bs.contains(p[j]) && bs.distance(p[j]) > tol {
            cauchy_interior(g, p[j], &bs, &opts)
        } else {
            plemelj_boundary(g, p[j], &bs, &opts)
        };
        r.map_or_else(|_| nan(), |r| r.value)
    })
}

/// `T_j` as a field on a disc factor.
pub fn slice_t_field(j: usize, f: Field, disc: Disc, res: PolarResolution) -> Field {
    field(move |p: &[Complex64]| {
        solid_cauchy(|zeta| eval_with_slot(&f, p, j, zeta), p[j], &disc, res).unwrap_or_else(|_| nan())
    })
}

fn check_factor(f: &GridFunction, j: usize) -> Result<()> {
    if j >= f.roles.len() {
        return Err(Error::GridMismatch(format!("factor {j} of a {}-factor grid", f.roles.len())));
    }
    Ok(())
}

/// `S_j f` on the grid of `f` with factor `j` replaced by its interior or
/// boundary nodes.
///
/// With a closure the integral is evaluated adaptively per node and the
/// result carries the `S_j` closure. Without one, the boundary samples are
/// used directly: trapezoid sums for interior targets, node principal values
/// for boundary targets.
pub fn slice_s(j: usize, f: &GridFunction, target: SliceTarget, opts: &QuadOptions) -> Result<GridFunction> {
    check_factor(f, j)?;
    if f.roles[j] != GridRole::Boundary {
        return Err(Error::GridMismatch(format!("factor {j} is not sampled on boundary nodes")));
    }
    let factor = f.domain.factor(j);
    let bs = factor.boundary.clone();
    let mut roles = f.roles.clone();
    roles[j] = match target {
        SliceTarget::Interior => GridRole::Interior,
        SliceTarget::Boundary => GridRole::Boundary,
    };
    let nodes = role_nodes(&f.domain, &roles)?;
    let mut out = GridFunction {
        domain: f.domain.clone(),
        roles,
        nodes,
        values: Vec::new(),
        closure: None,
    };

    let values: Vec<Complex64> = if let Some(inner) = &f.closure {
        let s = slice_s_field(j, inner.clone(), bs, *opts);
        let vals: Vec<Complex64> = (0..out.len()).into_par_iter().map(|k| s(&out.point(k))).collect();
        out.closure = Some(s);
        vals
    } else {
        let in_shape = f.shape();
        let nb = in_shape[j];
        let stride_in = strides(&in_shape);
        let contours = bs.contours();
        (0..out.len())
            .into_par_iter()
            .map(|k| {
                let idx = out.multi_index(k);
                let fibre = |m: usize| {
                    let mut q = idx.clone();
                    q[j] = m;
                    f.values[q.iter().zip(&stride_in).map(|(a, b)| a * b).sum::<usize>()]
                };
                let samples: Vec<Complex64> = (0..nb).map(fibre).collect();
                fibre_cauchy(&samples, contours, target, idx[j], out.nodes[j][idx[j]])
            })
            .collect::<Result<_>>()?
    };
    if let Some(k) = values.iter().position(|v| !finite(*v)) {
        return Err(Error::NonFinite(k as f64));
    }
    out.values = values;
    Ok(out)
}

/// Cauchy integral of sampled boundary data (all contours, concatenated).
fn fibre_cauchy(
    samples: &[Complex64],
    contours: &[crate::geometry::Contour],
    target: SliceTarget,
    node: usize,
    z: Complex64,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut offset = 0;
    let mut own = None;
    for (ci, c) in contours.iter().enumerate() {
        let part = &samples[offset..offset + c.n()];
        let is_owner = target == SliceTarget::Boundary && node >= offset && node < offset + c.n();
        if is_owner {
            own = Some((ci, node - offset, offset));
        } else {
            let h = TAU / c.n() as f64;
            for (v, nd) in part.iter().zip(c.nodes()) {
                acc += v / (nd.point - z) * nd.deriv * h;
            }
        }
        offset += c.n();
    }
    let mut value = acc / (TAU * I);
    if let Some((ci, i, off)) = own {
        let c = &contours[ci];
        let part = &samples[off..off + c.n()];
        // PV on the owning contour plus f/2 gives Φ.
        value += pv_cauchy_nodes(part, i, c)? + part[i] * 0.5;
    }
    Ok(value)
}

/// `T_j f` at the interior nodes of disc factor `j`; needs the closure of `f`
/// because the polar rule samples off-grid points.
pub fn slice_t(j: usize, f: &GridFunction, res: PolarResolution) -> Result<GridFunction> {
    check_factor(f, j)?;
    let disc = f
        .domain
        .factor(j)
        .as_disc()
        .ok_or_else(|| invalid(format!("factor {j} is not a disc")))?;
    let inner = f
        .closure
        .clone()
        .ok_or_else(|| invalid("area transform needs a closure for polar nodes"))?;
    let mut roles = f.roles.clone();
    roles[j] = GridRole::Interior;
    let nodes = role_nodes(&f.domain, &roles)?;
    let t = slice_t_field(j, inner, disc, res);
    let mut out = GridFunction {
        domain: f.domain.clone(),
        roles,
        nodes,
        values: Vec::new(),
        closure: Some(t.clone()),
    };
    let values: Vec<Complex64> = (0..out.len()).into_par_iter().map(|k| t(&out.point(k))).collect();
    if let Some(k) = values.iter().position(|v| !finite(*v)) {
        return Err(Error::NonFinite(k as f64));
    }
    out.values = values;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{inner_normal, make_circle, make_fourier_contour, Factor};
    use crate::holder::{seminorm_estimate, PairSampler, SampleDomain};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit(n: usize) -> BoundarySystem {
        BoundarySystem::single(make_circle(c(0.0, 0.0), 1.0, n).unwrap()).unwrap()
    }

    fn opts() -> QuadOptions {
        QuadOptions::with_tol(1e-13)
    }

    #[test]
    fn interior_examples() {
        let bs = unit(256);
        let one = cauchy_interior(|_| c(1.0, 0.0), c(0.3, 0.0), &bs, &opts()).unwrap();
        assert_abs_diff_eq!(one.value.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(one.value.im, 0.0, epsilon = 1e-12);
        let conj = cauchy_interior(|z: Complex64| z.conj(), c(0.0, 0.5), &bs, &opts()).unwrap();
        assert!(conj.value.norm() < 1e-10);
        let sq = cauchy_interior(|z: Complex64| z * z, c(0.2, 0.0), &bs, &opts()).unwrap();
        assert!((sq.value - 0.04).norm() < 1e-12);
    }

    #[test]
    fn interior_near_boundary_is_refined() {
        let bs = unit(64);
        for eps in [1e-2, 1e-4, 1e-6] {
            let z = Complex64::from_polar(1.0 - eps, 0.7);
            let r = cauchy_interior(|w: Complex64| w.exp() + w.conj(), z, &bs, &opts()).unwrap();
            assert!((r.value - z.exp()).norm() < 1e-10, "eps {eps}: {}", (r.value - z.exp()).norm());
        }
        assert!(matches!(
            cauchy_interior(|w| w, c(1.5, 0.0), &bs, &opts()),
            Err(Error::OutsideDomain(_))
        ));
    }

    #[test]
    fn interior_on_annulus() {
        let outer = make_circle(c(0.0, 0.0), 2.0, 128).unwrap();
        let inner = make_circle(c(0.0, 0.0), 0.5, 128).unwrap().reversed();
        let bs = BoundarySystem::new(vec![outer, inner]).unwrap();
        // Laurent data: S reproduces functions holomorphic on the closed annulus.
        let f = |z: Complex64| z * z + 1.0 / z;
        for z in [c(1.0, 0.0), c(0.0, -1.5), c(0.55, 0.1)] {
            let r = cauchy_interior(f, z, &bs, &opts()).unwrap();
            assert!((r.value - f(z)).norm() < 1e-10);
        }
    }

    #[test]
    fn plemelj_examples() {
        let bs = unit(256);
        let t = c(1.0, 0.0);
        let one = plemelj_boundary(|_| c(1.0, 0.0), t, &bs, &opts()).unwrap();
        assert_abs_diff_eq!(one.value.re, 1.0, epsilon = 1e-14);
        let id = plemelj_boundary(|z| z, t, &bs, &opts()).unwrap();
        assert!((id.value - 1.0).norm() < 1e-10);
        let conj = plemelj_boundary(|z: Complex64| z.conj(), t, &bs, &opts()).unwrap();
        assert!(conj.value.norm() < 1e-8);
    }

    #[test]
    fn plemelj_matches_normal_limit_on_ellipse() {
        let ellipse = make_fourier_contour(&[(1, c(0.75, 0.0)), (-1, c(0.25, 0.0))], 256).unwrap();
        let bs = BoundarySystem::single(ellipse.clone()).unwrap();
        // Non-holomorphic data so that Φf differs from f.
        let f = |z: Complex64| z.conj() * z.conj() + z;
        for s in [0.0, 1.0, 2.5, 4.0] {
            let t = ellipse.point(s);
            let n = inner_normal(&ellipse, s);
            let v1 = cauchy_interior(f, t + n * 1e-2, &bs, &opts()).unwrap().value;
            let v2 = cauchy_interior(f, t + n * 1e-3, &bs, &opts()).unwrap().value;
            let extrapolated = v2 + (v2 - v1) * (1e-3 / (1e-2 - 1e-3));
            let phi = plemelj_boundary(f, t, &bs, &opts()).unwrap().value;
            assert!((extrapolated - phi).norm() < 1e-4, "s = {s}: {}", (extrapolated - phi).norm());
        }
    }

    fn bidisc(interior: usize) -> Arc<ProductDomain> {
        let d = Disc::unit();
        let grid = d.polar_grid(2, interior / 2);
        Arc::new(
            ProductDomain::new(vec![
                Factor::disc(d, 64, grid.clone()).unwrap(),
                Factor::disc(d, 64, grid).unwrap(),
            ])
            .unwrap(),
        )
    }

    #[test]
    fn slice_s_is_linear_in_the_parameter() {
        let dom = bidisc(8);
        let g = |z: Complex64| (z * 0.5).exp() + z.conj();
        let f = GridFunction::sample(
            dom.clone(),
            vec![GridRole::Boundary, GridRole::Interior],
            field(move |p| p[1] * g(p[0])),
        )
        .unwrap();
        for with_closure in [true, false] {
            let f = if with_closure { f.clone() } else { f.clone().without_closure() };
            let out = slice_s(0, &f, SliceTarget::Interior, &opts()).unwrap();
            assert_eq!(out.shape(), vec![8, 8]);
            for k in 0..out.len() {
                let p = out.point(k);
                // The trapezoid on 64 nodes at radius 3/4 is good to ~(3/4)^64.
                let tol = if with_closure { 1e-10 } else { 1e-6 };
                assert!((out.values()[k] - p[1] * (p[0] * 0.5).exp()).norm() < tol);
            }
            assert_eq!(out.closure().is_some(), with_closure);
        }
    }

    #[test]
    fn slice_s_of_constant_and_boundary_target() {
        let dom = bidisc(8);
        let f = GridFunction::sample(dom.clone(), vec![GridRole::Boundary, GridRole::Boundary], field(|_| c(1.0, 0.0)))
            .unwrap();
        let inner = slice_s(0, &f, SliceTarget::Interior, &opts()).unwrap();
        assert!(inner.values().iter().all(|v| (v - 1.0).norm() < 1e-12));

        let zbar = GridFunction::sample(dom, vec![GridRole::Boundary, GridRole::Interior], field(|p| p[0].conj() + p[0]))
            .unwrap();
        let a = slice_s(0, &zbar, SliceTarget::Boundary, &opts()).unwrap();
        let b = slice_s(0, &zbar.clone().without_closure(), SliceTarget::Boundary, &opts()).unwrap();
        for k in 0..a.len() {
            let t = a.point(k)[0];
            assert!((a.values()[k] - t).norm() < 1e-9);
            // Node principal value is first-order accurate.
            assert!((b.values()[k] - t).norm() < 0.1);
        }
    }

    #[test]
    fn slice_t_examples() {
        let dom = bidisc(8);
        let res = PolarResolution::new(64, 32).unwrap();
        let one = GridFunction::sample(dom.clone(), vec![GridRole::Interior; 2], field(|_| c(1.0, 0.0))).unwrap();
        let t1 = slice_t(0, &one, res).unwrap();
        for k in 0..t1.len() {
            assert!((t1.values()[k] - t1.point(k)[0].conj()).norm() < 1e-8);
        }
        let zero = GridFunction::sample(dom.clone(), vec![GridRole::Interior; 2], field(|_| c(0.0, 0.0))).unwrap();
        assert!(slice_t(1, &zero, res).unwrap().values().iter().all(|v| v.norm() == 0.0));

        let z2 = GridFunction::sample(dom.clone(), vec![GridRole::Interior; 2], field(|p| p[1])).unwrap();
        let t = slice_t(0, &z2, res).unwrap();
        for k in 0..t.len() {
            let p = t.point(k);
            assert!((t.values()[k] - p[1] * p[0].conj()).norm() < 1e-8);
        }
        assert!(slice_t(0, &z2.without_closure(), res).is_err());
    }

    #[test]
    fn grid_record_round_trip_and_csv() {
        let dom = bidisc(4);
        let f = GridFunction::sample(dom.clone(), vec![GridRole::Interior, GridRole::Boundary], field(|p| p[0] * p[1]))
            .unwrap();
        let rec = f.record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: GridRecord = serde_json::from_str(&json).unwrap();
        let g = GridFunction::from_record(dom, &back).unwrap();
        assert_eq!(g.values(), f.values());
        assert_eq!(g.shape(), vec![4, 64]);
        let csv = g.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 1 + 4 * 64);
        assert_eq!(g.at(&[1, 5]), g.values()[g.flat_index(&[1, 5])]);
        assert_eq!(g.multi_index(69), vec![1, 5]);
    }

    #[test]
    fn analytic_projection_ratio_is_bounded_in_degree() {
        // Random trigonometric data with coefficients ~ |k|^{-1-α}; Φ keeps
        // the nonnegative frequencies. The seminorm ratio must not drift
        // with the degree.
        let alpha = 0.5;
        let bs = unit(256);
        let circle = SampleDomain::circle(c(0.0, 0.0), 1.0).unwrap();
        let sampler = PairSampler::with_bands(vec![circle], 10, 0.5, 17).unwrap();
        let mut ratios = Vec::new();
        for degree in [4i32, 8, 16, 32] {
            let mut rng = ChaCha8Rng::seed_from_u64(degree as u64);
            let coeffs: Vec<(i32, Complex64)> = (-degree..=degree)
                .map(|k| {
                    let scale = (1.0 + k.abs() as f64).powf(-1.0 - alpha);
                    (k, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale)
                })
                .collect();
            let data = {
                let coeffs = coeffs.clone();
                move |z: Complex64| coeffs.iter().map(|(k, a)| a * z.powi(*k)).sum::<Complex64>()
            };
            let fz = {
                let data = data.clone();
                move |p: &[Complex64]| data(p[0])
            };
            let sf = {
                let bs = bs.clone();
                move |p: &[Complex64]| plemelj_boundary(&data, p[0], &bs, &QuadOptions::with_tol(1e-11)).unwrap().value
            };
            let nf = seminorm_estimate(&fz, &sampler, alpha, 0.0, 300).unwrap().value;
            let ns = seminorm_estimate(&sf, &sampler, alpha, 0.0, 300).unwrap().value;
            ratios.push(ns / nf);
        }
        let max = ratios.iter().cloned().fold(0.0, f64::max);
        let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(max < 5.0 && max / min < 3.0, "{ratios:?}");
    }
}
