//! Smooth Jordan-curve boundaries, finite boundary systems and product
//! domains, together with the geometric constants (chord-arc constant,
//! minimal arclength, contour separation, log cut-off) the Cauchy-integral
//! estimates depend on.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quadrature::rules::gauss_legendre_on;

/// Analytic description of a closed curve `g: [0, 2π) -> C`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Shape {
    Circle { center: Complex64, radius: f64 },
    /// `g(s) = Σ c_k e^{iks}`, stored as `(k, c_k)` pairs.
    Fourier { coefficients: Vec<(i32, Complex64)> },
}

impl Shape {
    fn point(&self, s: f64) -> Complex64 {
        match self {
            Shape::Circle { center, radius } => center + Complex64::from_polar(*radius, s),
            Shape::Fourier { coefficients } => coefficients
                .iter()
                .map(|(k, c)| c * Complex64::from_polar(1.0, *k as f64 * s))
                .sum(),
        }
    }

    fn deriv(&self, s: f64) -> Complex64 {
        match self {
            Shape::Circle { radius, .. } => Complex64::new(0.0, *radius) * Complex64::from_polar(1.0, s),
            Shape::Fourier { coefficients } => coefficients
                .iter()
                .map(|(k, c)| c * Complex64::new(0.0, *k as f64) * Complex64::from_polar(1.0, *k as f64 * s))
                .sum(),
        }
    }
}

/// Traversal direction relative to the enclosed domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Domain on the left (counter-clockwise for an outer boundary).
    Positive,
    Negative,
}

/// One precomputed trapezoid node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub s: f64,
    pub point: Complex64,
    pub deriv: Complex64,
}

/// A parametrized closed Jordan curve with tabulated nodes `s_i = 2πi/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    shape: Shape,
    orientation: Orientation,
    nodes: Vec<Node>,
    arclength: f64,
}

/// Serialized form: `{kind, params..., n, orientation}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    #[serde(flatten)]
    pub shape: Shape,
    pub n: usize,
    #[serde(default = "positive")]
    pub orientation: Orientation,
}

fn positive() -> Orientation {
    Orientation::Positive
}

impl Serialize for Contour {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.spec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Contour {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let spec = ContourSpec::deserialize(deserializer)?;
        Contour::from_spec(&spec).map_err(serde::de::Error::custom)
    }
}

/// Positively oriented circle `center + radius·e^{is}` with `n` nodes.
pub fn make_circle(center: Complex64, radius: f64, n: usize) -> Result<Contour> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(invalid(format!("circle radius must be positive, got {radius}")));
    }
    check_node_count(n)?;
    Contour::build(Shape::Circle { center, radius }, n, Orientation::Positive)
}

/// Closed curve from a finite Fourier series `p(s) = Σ c_k e^{iks}`.
///
/// Rejects parametrizations whose derivative vanishes at a node or whose node
/// polygon crosses itself.
pub fn make_fourier_contour(coefficients: &[(i32, Complex64)], n: usize) -> Result<Contour> {
    check_node_count(n)?;
    if coefficients.iter().all(|(k, c)| *k == 0 || c.norm() == 0.0) {
        return Err(Error::DegenerateContour("no non-constant Fourier mode".into()));
    }
    let shape = Shape::Fourier {
        coefficients: coefficients.to_vec(),
    };
    let c = Contour::build(shape, n, Orientation::Positive)?;
    c.check_injective()?;
    Ok(c)
}

fn check_node_count(n: usize) -> Result<()> {
    if n < 8 || !n.is_multiple_of(2) {
        return Err(invalid(format!("node count must be even and at least 8, got {n}")));
    }
    Ok(())
}

impl Contour {
    fn build(shape: Shape, n: usize, orientation: Orientation) -> Result<Self> {
        let mut c = Contour {
            shape,
            orientation,
            nodes: Vec::with_capacity(n),
            arclength: 0.0,
        };
        let h = TAU / n as f64;
        for i in 0..n {
            let s = i as f64 * h;
            let node = Node {
                s,
                point: c.point(s),
                deriv: c.deriv(s),
            };
            if !(node.deriv.norm() > 1e-12 * (1.0 + node.point.norm())) {
                return Err(Error::DegenerateContour(format!(
                    "vanishing derivative at s = {s}"
                )));
            }
            c.nodes.push(node);
        }
        c.arclength = h * c.nodes.iter().map(|nd| nd.deriv.norm()).sum::<f64>();
        if !(c.arclength > 0.0) || !c.arclength.is_finite() {
            return Err(Error::DegenerateContour("non-positive arclength".into()));
        }
        Ok(c)
    }

    pub fn from_spec(spec: &ContourSpec) -> Result<Self> {
        let c = match &spec.shape {
            Shape::Circle { center, radius } => make_circle(*center, *radius, spec.n)?,
            Shape::Fourier { coefficients } => make_fourier_contour(coefficients, spec.n)?,
        };
        Ok(match spec.orientation {
            Orientation::Positive => c,
            Orientation::Negative => c.reversed(),
        })
    }

    pub fn spec(&self) -> ContourSpec {
        ContourSpec {
            shape: self.shape.clone(),
            n: self.nodes.len(),
            orientation: self.orientation,
        }
    }

    /// The same curve traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let orientation = match self.orientation {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        };
        Contour::build(self.shape.clone(), self.nodes.len(), orientation)
            .expect("reversal preserves validity")
    }

    /// Same curve with a different node count.
    pub fn with_nodes(&self, n: usize) -> Result<Self> {
        check_node_count(n)?;
        Contour::build(self.shape.clone(), n, self.orientation)
    }

    pub fn point(&self, s: f64) -> Complex64 {
        match self.orientation {
            Orientation::Positive => self.shape.point(s),
            Orientation::Negative => self.shape.point(-s),
        }
    }

    pub fn deriv(&self, s: f64) -> Complex64 {
        match self.orientation {
            Orientation::Positive => self.shape.deriv(s),
            Orientation::Negative => -self.shape.deriv(-s),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn arclength(&self) -> f64 {
        self.arclength
    }

    /// Largest chord between consecutive nodes.
    pub fn node_gap(&self) -> f64 {
        let n = self.nodes.len();
        (0..n)
            .map(|i| (self.nodes[(i + 1) % n].point - self.nodes[i].point).norm())
            .fold(0.0, f64::max)
    }

    /// Arclength of the parameter interval `[a, b]` (a ≤ b, any length).
    pub fn arc_between(&self, a: f64, b: f64) -> f64 {
        let pieces = (((b - a) / TAU) * 64.0).ceil().max(1.0) as usize;
        let h = (b - a) / pieces as f64;
        (0..pieces)
            .map(|k| {
                let (x, w) = gauss_legendre_on(16, a + k as f64 * h, a + (k + 1) as f64 * h);
                x.iter().zip(&w).map(|(s, w)| w * self.deriv(*s).norm()).sum::<f64>()
            })
            .sum()
    }

    /// Closest boundary parameter to `z` and the distance: dense sampling at
    /// four times the node resolution followed by golden-section refinement.
    pub fn closest_point(&self, z: Complex64) -> (f64, f64) {
        if let Shape::Circle { center, radius } = self.shape {
            let w = z - center;
            let s = match self.orientation {
                Orientation::Positive => w.arg(),
                Orientation::Negative => -w.arg(),
            };
            return (s.rem_euclid(TAU), (w.norm() - radius).abs());
        }
        let m = 4 * self.nodes.len();
        let h = TAU / m as f64;
        let mut best = (0.0, f64::INFINITY);
        for i in 0..m {
            let s = i as f64 * h;
            let d = (self.point(s) - z).norm();
            if d < best.1 {
                best = (s, d);
            }
        }
        let dist = |s: f64| (self.point(s) - z).norm_sqr();
        let (mut a, mut b) = (best.0 - h, best.0 + h);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = b - g * (b - a);
        let mut x2 = a + g * (b - a);
        let (mut f1, mut f2) = (dist(x1), dist(x2));
        for _ in 0..80 {
            if f1 < f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = dist(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = dist(x2);
            }
            if (b - a).abs() < 1e-15 {
                break;
            }
        }
        let s = 0.5 * (a + b);
        let d = dist(s).sqrt();
        if d < best.1 {
            (s.rem_euclid(TAU), d)
        } else {
            (best.0, best.1)
        }
    }

    /// Winding number of the contour around `z` (as traversed).
    pub fn winding_number(&self, z: Complex64) -> i32 {
        if let Shape::Circle { center, radius } = self.shape {
            let r = (z - center).norm();
            if r < radius {
                return match self.orientation {
                    Orientation::Positive => 1,
                    Orientation::Negative => -1,
                };
            }
            if r > radius {
                return 0;
            }
        }
        let n = self.nodes.len();
        let mut total = 0.0;
        for i in 0..n {
            let a = self.nodes[i].point - z;
            let b = self.nodes[(i + 1) % n].point - z;
            total += (b / a).arg();
        }
        (total / TAU).round() as i32
    }

    fn check_injective(&self) -> Result<()> {
        // Pairwise node distances first: non-neighbouring nodes must not coincide.
        let n = self.nodes.len();
        let gap = self.node_gap();
        for i in 0..n {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if (self.nodes[i].point - self.nodes[j].point).norm() < 1e-9 * gap {
                    return Err(Error::SelfIntersection(i, j));
                }
            }
        }
        // Then proper crossings of non-adjacent polygon edges.
        let p: Vec<Complex64> = self.nodes.iter().map(|nd| nd.point).collect();
        for i in 0..n {
            let (a, b) = (p[i], p[(i + 1) % n]);
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = (p[j], p[(j + 1) % n]);
                if segments_cross(a, b, c, d) {
                    return Err(Error::SelfIntersection(i, j));
                }
            }
        }
        Ok(())
    }
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn segments_cross(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Max over sampled pairs of (shorter arc)/(chord), with `m ≥ n` samples at
/// `s_i = 2πi/m`.
pub fn chord_arc_constant(c: &Contour, m: usize) -> Result<f64> {
    if m < c.n() {
        return Err(invalid(format!("sampling density {m} below node count {}", c.n())));
    }
    let h = TAU / m as f64;
    let pts: Vec<Complex64> = (0..m).map(|i| c.point(i as f64 * h)).collect();
    // cumulative arclength at the samples
    let mut cum = vec![0.0; m + 1];
    for i in 0..m {
        let (x, w) = gauss_legendre_on(16, i as f64 * h, (i + 1) as f64 * h);
        cum[i + 1] = cum[i] + x.iter().zip(&w).map(|(s, w)| w * c.deriv(*s).norm()).sum::<f64>();
    }
    let total = cum[m];
    let mut worst: f64 = 1.0;
    for i in 0..m {
        for j in (i + 1)..m {
            let chord = (pts[j] - pts[i]).norm();
            let along = cum[j] - cum[i];
            let arc = along.min(total - along);
            if chord <= 1e-14 * total {
                return Err(Error::DegenerateContour(format!(
                    "coincident samples {i} and {j}"
                )));
            }
            worst = worst.max(arc / chord);
        }
    }
    Ok(worst)
}

/// Admissible index `(k, α, ν)` of a Log-Hölder space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderIndex {
    pub k: u32,
    pub alpha: f64,
    pub nu: f64,
}

impl HolderIndex {
    pub fn new(k: u32, alpha: f64, nu: f64) -> Result<Self> {
        let idx = Self { k, alpha, nu };
        idx.validate()?;
        Ok(idx)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(invalid(format!("alpha must lie in (0, 1], got {}", self.alpha)));
        }
        if !self.nu.is_finite() {
            return Err(invalid("nu must be finite"));
        }
        if self.alpha == 1.0 && self.nu < 0.0 {
            return Err(invalid("alpha = 1 requires nu >= 0 (the space is trivial otherwise)"));
        }
        Ok(())
    }

    /// Cut-off `min{e^{-2ν/α}, e^{2ν/(1-α)}, 1/2}`; the middle term is
    /// dropped for α = 1.
    pub fn h0(&self) -> f64 {
        log_cutoff(self.alpha, self.nu)
    }

    /// Radius `min{e^{-ν/α}, 1/2}` on which `s^α|ln s|^ν` is nondecreasing.
    pub fn r0(&self) -> f64 {
        (-self.nu / self.alpha).exp().min(0.5)
    }
}

pub(crate) fn log_cutoff(alpha: f64, nu: f64) -> f64 {
    let mut h0 = (-2.0 * nu / alpha).exp().min(0.5);
    if alpha < 1.0 {
        h0 = h0.min((2.0 * nu / (1.0 - alpha)).exp());
    }
    h0
}

/// Constants of a boundary system (flat JSON record).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryConstants {
    pub s0: f64,
    pub delta0: f64,
    pub h0: f64,
    pub c0: f64,
}

/// Finite union of pairwise disjoint contours bounding a planar domain.
///
/// The outer contour is positively oriented; holes are traversed negatively
/// so that the domain is always on the left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Contour>", into = "Vec<Contour>")]
pub struct BoundarySystem {
    contours: Vec<Contour>,
    c0: f64,
    s0: f64,
    delta0: f64,
}

impl TryFrom<Vec<Contour>> for BoundarySystem {
    type Error = Error;
    fn try_from(v: Vec<Contour>) -> Result<Self> {
        BoundarySystem::new(v)
    }
}

impl From<BoundarySystem> for Vec<Contour> {
    fn from(b: BoundarySystem) -> Self {
        b.contours
    }
}

impl BoundarySystem {
    pub fn new(contours: Vec<Contour>) -> Result<Self> {
        if contours.is_empty() {
            return Err(invalid("boundary system needs at least one contour"));
        }
        let s0 = contours.iter().map(Contour::arclength).fold(f64::INFINITY, f64::min);
        let mut c0: f64 = 1.0;
        for c in &contours {
            c0 = c0.max(chord_arc_constant(c, 2 * c.n())?);
        }
        let delta0 = if contours.len() == 1 {
            diameter(&contours[0])
        } else {
            let mut d = f64::INFINITY;
            for i in 0..contours.len() {
                for j in (i + 1)..contours.len() {
                    d = d.min(contour_distance(&contours[i], &contours[j]));
                }
            }
            d
        };
        if !(delta0 > 0.0) {
            return Err(Error::DegenerateContour("contours intersect".into()));
        }
        Ok(Self {
            contours,
            c0,
            s0,
            delta0,
        })
    }

    pub fn single(c: Contour) -> Result<Self> {
        Self::new(vec![c])
    }

    pub fn contours(&self) -> &[Contour] {
        &self.contours
    }

    pub fn chord_arc(&self) -> f64 {
        self.c0
    }

    pub fn min_arclength(&self) -> f64 {
        self.s0
    }

    pub fn separation(&self) -> f64 {
        self.delta0
    }

    pub fn max_node_gap(&self) -> f64 {
        self.contours.iter().map(Contour::node_gap).fold(0.0, f64::max)
    }

    /// Closest boundary point: `(contour index, parameter, distance)`.
    pub fn closest_point(&self, z: Complex64) -> (usize, f64, f64) {
        self.contours
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (s, d) = c.closest_point(z);
                (i, s, d)
            })
            .min_by(|a, b| a.2.total_cmp(&b.2))
            .expect("non-empty boundary system")
    }

    pub fn distance(&self, z: Complex64) -> f64 {
        self.closest_point(z).2
    }

    /// Strictly inside and off the boundary.
    ///
    /// Near a contour the node polygon cuts corners, so there the side of the
    /// true curve decides: the domain lies to the left of every traversed
    /// contour. Farther out the winding numbers must sum to one.
    pub fn contains(&self, z: Complex64) -> bool {
        let (idx, s, d) = self.closest_point(z);
        if d <= 1e-13 * (1.0 + z.norm()) {
            return false;
        }
        let c = &self.contours[idx];
        if d < 2.0 * c.node_gap() {
            let left = Complex64::new(0.0, 1.0) * c.deriv(s);
            return ((z - c.point(s)).conj() * left).re > 0.0;
        }
        let w: i32 = self.contours.iter().map(|c| c.winding_number(z)).sum();
        w == 1
    }
}

fn diameter(c: &Contour) -> f64 {
    let pts: Vec<Complex64> = c.nodes().iter().map(|n| n.point).collect();
    let mut d: f64 = 0.0;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            d = d.max((pts[i] - pts[j]).norm());
        }
    }
    d
}

fn contour_distance(a: &Contour, b: &Contour) -> f64 {
    let mut best = (0usize, 0usize, f64::INFINITY);
    for (i, p) in a.nodes().iter().enumerate() {
        for (j, q) in b.nodes().iter().enumerate() {
            let d = (p.point - q.point).norm();
            if d < best.2 {
                best = (i, j, d);
            }
        }
    }
    // alternating projections from the best node pair
    let mut p = a.nodes()[best.0].point;
    let mut d = best.2;
    for _ in 0..8 {
        let (sb, _) = b.closest_point(p);
        let q = b.point(sb);
        let (sa, da) = a.closest_point(q);
        p = a.point(sa);
        d = d.min(da);
    }
    d
}

/// Geometric constants for `bs` with cut-off taken from `idx`.
pub fn boundary_constants(bs: &BoundarySystem, idx: &HolderIndex) -> Result<BoundaryConstants> {
    idx.validate()?;
    Ok(BoundaryConstants {
        s0: bs.min_arclength(),
        delta0: bs.separation(),
        h0: idx.h0(),
        c0: bs.chord_arc(),
    })
}

/// Membership in the nontangential region
/// `{ z : |z - t| ≤ min(4 dist(z, ∂D), δ₀/4) }`.
pub fn nontangential_contains(t: Complex64, z: Complex64, bs: &BoundarySystem) -> Result<bool> {
    let dt = bs.distance(t);
    let tol = 1e-8 * (1.0 + t.norm());
    if dt > tol {
        return Err(Error::NotOnBoundary { point: t, distance: dt });
    }
    if !bs.contains(z) {
        return Err(Error::OutsideDomain(z));
    }
    let dz = bs.distance(z);
    Ok((z - t).norm() <= (4.0 * dz).min(bs.separation() / 4.0))
}

/// Planar disc `{|z - center| < radius}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disc {
    pub center: Complex64,
    pub radius: f64,
}

impl Disc {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(invalid(format!("disc radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn unit() -> Self {
        Self {
            center: Complex64::new(0.0, 0.0),
            radius: 1.0,
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() < self.radius
    }

    pub fn boundary(&self, n: usize) -> Result<Contour> {
        make_circle(self.center, self.radius, n)
    }

    /// Interior polar grid: `rings` radii `radius·(k - 1/2)/rings` times
    /// `rays` angles.
    pub fn polar_grid(&self, rings: usize, rays: usize) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(rings * rays);
        for k in 0..rings {
            let r = self.radius * (k as f64 + 0.5) / rings as f64;
            for m in 0..rays {
                let th = TAU * m as f64 / rays as f64;
                out.push(self.center + Complex64::from_polar(r, th));
            }
        }
        out
    }
}

/// Planar factor of a product domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SliceDomain {
    Disc(Disc),
    Bounded(BoundarySystem),
}

/// One factor of a product domain with its interior and boundary grids.
#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    pub domain: SliceDomain,
    pub boundary: BoundarySystem,
    pub interior: Vec<Complex64>,
}

impl Factor {
    pub fn disc(disc: Disc, boundary_nodes: usize, interior: Vec<Complex64>) -> Result<Self> {
        let boundary = BoundarySystem::single(disc.boundary(boundary_nodes)?)?;
        Self::checked(SliceDomain::Disc(disc), boundary, interior)
    }

    pub fn bounded(boundary: BoundarySystem, interior: Vec<Complex64>) -> Result<Self> {
        Self::checked(SliceDomain::Bounded(boundary.clone()), boundary, interior)
    }

    fn checked(domain: SliceDomain, boundary: BoundarySystem, interior: Vec<Complex64>) -> Result<Self> {
        let f = Self {
            domain,
            boundary,
            interior,
        };
        if let Some(z) = f.interior.iter().find(|z| !f.contains(**z)) {
            return Err(Error::OutsideDomain(*z));
        }
        Ok(f)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match &self.domain {
            SliceDomain::Disc(d) => d.contains(z),
            SliceDomain::Bounded(bs) => bs.contains(z),
        }
    }

    /// Boundary nodes of all contours, in contour order.
    pub fn boundary_nodes(&self) -> Vec<Complex64> {
        self.boundary
            .contours()
            .iter()
            .flat_map(|c| c.nodes().iter().map(|n| n.point))
            .collect()
    }

    pub fn as_disc(&self) -> Option<Disc> {
        match self.domain {
            SliceDomain::Disc(d) => Some(d),
            SliceDomain::Bounded(_) => None,
        }
    }
}

/// Cartesian product `D_1 × ⋯ × D_n` of planar factors.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductDomain {
    factors: Vec<Factor>,
}

impl ProductDomain {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(invalid("product domain needs at least one factor"));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor(&self, j: usize) -> &Factor {
        &self.factors[j]
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn contains(&self, z: &[Complex64]) -> bool {
        z.len() == self.factors.len() && self.factors.iter().zip(z).all(|(f, z)| f.contains(*z))
    }
}

/// Unit vector pointing into the domain at parameter `s` of a positively
/// oriented curve (left normal `i·p'/|p'|`).
pub fn inner_normal(c: &Contour, s: f64) -> Complex64 {
    let d = c.deriv(s);
    Complex64::new(0.0, 1.0) * d / d.norm()
}
