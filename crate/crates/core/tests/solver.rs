//! End-to-end checks of the composed ∂̄ solution operator.

use std::sync::Arc;

use cauchy_core::dbar::{
    branch_power, clearance_nodes, example_form, residual_report, solution_field, DbarResolution, Form01,
};
use cauchy_core::geometry::{Disc, Factor, ProductDomain};
use cauchy_core::holder::{estimate_over_pairs, PairSampler, SampleDomain};
use cauchy_core::operators::field;
use cauchy_core::quadrature::QuadOptions;
use cauchy_core::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit_polydisc(n: usize) -> Arc<ProductDomain> {
    let factors = (0..n)
        .map(|_| Factor::disc(Disc::unit(), 64, vec![c(0.0, 0.0)]).unwrap())
        .collect();
    Arc::new(ProductDomain::new(factors).unwrap())
}

/// The branch point on the boundary keeps the inner Cauchy integrals on the
/// adaptive path; 1e-8 is ample for the tolerances checked here.
fn loose(mut res: DbarResolution) -> DbarResolution {
    res.quad = QuadOptions::with_tol(1e-8);
    res
}

#[test]
fn example_residual_away_from_the_branch_point() {
    let form = example_form(0, 0.5, 1.0, unit_polydisc(2)).unwrap();
    let u = solution_field(&form, &loose(DbarResolution::new(256, 32, 16).unwrap())).unwrap();
    let nodes = clearance_nodes(form.discs(), 0.25, 1, 2).unwrap();
    let rep = residual_report(&form, &*u, &nodes, 1e-3).unwrap();
    assert!(rep.max() <= 1e-2, "{:?}", rep.max_rel_err);
}

/// For `f = ∂̄ exp(z̄₁z̄₂)` the polar rule is the only discretization that
/// matters, and its error falls as the resolution doubles.
#[test]
fn residual_falls_with_polar_resolution() {
    let form = Form01::new(
        unit_polydisc(2),
        vec![
            field(|p| p[1].conj() * (p[0] * p[1]).conj().exp()),
            field(|p| p[0].conj() * (p[0] * p[1]).conj().exp()),
        ],
    )
    .unwrap();
    let nodes = clearance_nodes(form.discs(), 0.5, 1, 2).unwrap();
    let residual = |rays: usize, radial: usize| {
        let u = solution_field(&form, &DbarResolution::new(64, rays, radial).unwrap()).unwrap();
        residual_report(&form, &*u, &nodes, 1e-3).unwrap().max()
    };
    let levels = [residual(8, 2), residual(16, 4), residual(32, 8)];
    assert!(levels[0] > levels[1] && levels[1] > levels[2], "{levels:?}");
    assert!(levels[2] < 1e-6, "{levels:?}");
}

#[test]
fn three_factor_separable_form() {
    let form = Form01::new(
        unit_polydisc(3),
        vec![
            field(|p| (p[1] * p[2]).conj()),
            field(|p| (p[0] * p[2]).conj()),
            field(|p| (p[0] * p[1]).conj()),
        ],
    )
    .unwrap();
    let u = solution_field(&form, &DbarResolution::new(64, 16, 4).unwrap()).unwrap();
    for p in [
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.2, 0.1), c(-0.3, 0.2), c(0.1, -0.4)],
        [c(-0.1, -0.3), c(0.25, 0.0), c(0.0, 0.35)],
    ] {
        let exact = (p[0] * p[1] * p[2]).conj();
        assert!((u(&p) - exact).norm() < 1e-10, "{p:?}");
    }
    let nodes = vec![vec![c(0.1, 0.0), c(0.0, -0.2), c(-0.15, 0.1)]];
    let rep = residual_report(&form, &*u, &nodes, 1e-3).unwrap();
    assert!(rep.max() < 1e-8, "{:?}", rep.max_rel_err);
}

/// Log-loss family: `f = (z₁ - 1)^α dz̄₂` for several α. The estimated
/// `(α, ν+1)` seminorm of `u` over the `(α, ν)` seminorm of `f` (ν = 0)
/// stays bounded across the family. The theorem gives no constant; 5 leaves
/// room over the observed spread (about 1.8 to 3.2).
#[test]
fn seminorm_ratio_is_bounded_across_the_family() {
    let domain = unit_polydisc(2);
    let sample = SampleDomain::disc(c(0.0, 0.0), 0.95).unwrap();
    let sampler = PairSampler::with_bands(vec![sample.clone(), sample], 8, 0.5, 3).unwrap();
    let pairs = sampler.pairs(64);
    let mut ratios = Vec::new();
    for alpha in [0.3, 0.5, 0.7] {
        let form = example_form(0, alpha, 0.0, domain.clone()).unwrap();
        let u = solution_field(&form, &loose(DbarResolution::new(128, 16, 8).unwrap())).unwrap();
        let f2 = field(move |p| branch_power(p[0], 0, alpha, 0.0));
        let hu = estimate_over_pairs(&*u, &pairs, alpha, 1.0, 0.5).unwrap().value;
        let hf = estimate_over_pairs(&*f2, &pairs, alpha, 0.0, 0.5).unwrap().value;
        assert!(hu.is_finite() && hf > 0.0);
        ratios.push(hu / hf);
    }
    assert!(ratios.iter().all(|r| *r < 5.0), "{ratios:?}");
}
