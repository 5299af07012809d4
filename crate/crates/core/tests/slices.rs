use std::f64::consts::PI;

use cauchy_core::counterexample::{tumanov_boundary_field, tumanov_s_at_one, tumanov_total_closed_form};
use cauchy_core::geometry::{make_circle, BoundarySystem};
use cauchy_core::operators::slice_s_field;
use cauchy_core::quadrature::QuadOptions;
use cauchy_core::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The generic slice operator, evaluated at the boundary point ζ = 1 with the
/// counterexample data, agrees with the closed-form split used for the
/// divergence table.
#[test]
fn boundary_slice_matches_closed_form_split() {
    let alpha = 0.5;
    let opts = QuadOptions::with_tol(1e-11);
    let bs = BoundarySystem::single(make_circle(c(0.0, 0.0), 1.0, 256).unwrap()).unwrap();
    let s = slice_s_field(0, tumanov_boundary_field(alpha), bs, opts);
    for j in 4..=10 {
        let lambda = 0.5f64.powi(j);
        let generic = s(&[c(1.0, 0.0), c(lambda, 0.0)]);
        let split = tumanov_s_at_one(c(lambda, 0.0), alpha, &QuadOptions::with_tol(1e-12)).unwrap().value;
        assert!(
            (generic - split).norm() < 1e-3,
            "j = {j}: slice {generic} vs split {split}"
        );
    }
}

/// The imaginary part of `2πi·Sf(1, λ)` is half the mean of the data; with
/// the closed-form total this pins `Re Sf(1, λ)` independently.
#[test]
fn real_part_is_the_mean_of_the_data() {
    let alpha = 0.5;
    for j in [4, 7, 10] {
        let lambda = c(0.5f64.powi(j), 0.0);
        let s = tumanov_s_at_one(lambda, alpha, &QuadOptions::with_tol(1e-12)).unwrap().value;
        let total = tumanov_total_closed_form(lambda, alpha).unwrap();
        assert!((s.re - total / (4.0 * PI)).abs() < 1e-10, "j = {j}");
    }
}

/// Only `|λ|` enters the data, so the boundary value is rotation invariant
/// in the parameter.
#[test]
fn parameter_phase_is_irrelevant() {
    let opts = QuadOptions::with_tol(1e-12);
    let a = tumanov_s_at_one(c(0.01, 0.0), 0.3, &opts).unwrap().value;
    let b = tumanov_s_at_one(Complex64::from_polar(0.01, 2.0), 0.3, &opts).unwrap().value;
    assert!((a - b).norm() < 1e-13);
}
