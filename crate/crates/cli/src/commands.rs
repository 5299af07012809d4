use std::sync::Arc;

use cauchy_core::counterexample::{remark_divergence_experiment, tumanov_s_at_one};
use cauchy_core::dbar::{
    clearance_nodes, example_form, example_witness, residual_report, solution_field, solve_dbar, witness_closed_form,
    DbarResolution, Form01,
};
use cauchy_core::geometry::{make_circle, make_fourier_contour, BoundarySystem, Contour, Disc, Factor, ProductDomain};
use cauchy_core::holder::{seminorm_estimate, PairSampler, SampleDomain};
use cauchy_core::operators::{cauchy_interior, field, plemelj_boundary, solid_cauchy, Field};
use cauchy_core::quadrature::{PolarResolution, QuadOptions};
use cauchy_core::Complex64;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use crate::cli::{
    Cli, Command, Curve, DataFunction, DbarArgs, DbarCommand, FormKind, OperatorArgs, OperatorKind, SampleFunction,
    SeminormArgs, TumanovArgs, VerifyArgs, WitnessArgs,
};
use crate::config::{self, require, require_power_of_two, Overrides};
use crate::report::{csv_document, emit, json_document, Header, Outcome};
use crate::{suites, CliError, Result};

/// Merge the config file into the flags, run, and write the report.
pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    let overrides = match &cli.config {
        Some(p) => config::load(p)?,
        None => Overrides::default(),
    };
    let name = cli.command.name();
    if let Some(c) = &overrides.command {
        if c != name {
            return Err(CliError::Config(format!("config is for `{c}`, not `{name}`")));
        }
    }
    let seed = overrides.seed.unwrap_or(cli.seed);
    let ctx = Ctx {
        name,
        seed,
        timestamp: cli.timestamp,
        overrides,
    };
    let outcome = match &cli.command {
        Command::Verify(a) => verify(&ctx, &ctx.merge(a)?)?,
        Command::Tumanov(a) => tumanov(&ctx, &ctx.merge(a)?)?,
        Command::Seminorm(a) => seminorm(&ctx, &ctx.merge(a)?)?,
        Command::Operators(a) => operators(&ctx, &ctx.merge(a)?)?,
        Command::Dbar { action } => match action {
            DbarCommand::Solve(a) => dbar_solve(&ctx, &ctx.merge(a)?)?,
            DbarCommand::Residual(a) => dbar_residual(&ctx, &ctx.merge(a)?)?,
            DbarCommand::Witness(a) => dbar_witness(&ctx, &ctx.merge(a)?)?,
        },
    };
    emit(&cli.output, &outcome.document)?;
    Ok(outcome)
}

struct Ctx {
    name: &'static str,
    seed: u64,
    timestamp: bool,
    overrides: Overrides,
}

impl Ctx {
    fn merge<T: Serialize + DeserializeOwned>(&self, args: &T) -> Result<T> {
        config::merge(args, &self.overrides)
    }

    fn header<T: Serialize>(&self, args: &T) -> Result<Header> {
        let canonical = config::canonical(self.name, self.seed, args)?;
        Ok(Header::new(self.name, config::sha256_hex(&canonical), self.seed, self.timestamp))
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.17e},{:.17e}", z.re, z.im)
}

fn verify(ctx: &Ctx, a: &VerifyArgs) -> Result<Outcome> {
    let rows = suites::run(a.suite)?;
    let failed = rows.iter().filter(|r| !r.pass()).count();
    let mut h = ctx.header(a)?;
    h.note("cases", rows.len());
    h.note("failed", failed);
    Ok(Outcome {
        document: csv_document(&h, &suites::to_csv(&rows)),
        passed: failed == 0,
    })
}

fn tumanov(ctx: &Ctx, a: &TumanovArgs) -> Result<Outcome> {
    require(a.alpha > 0.0 && a.alpha < 1.0, format!("alpha must lie in (0, 1), got {}", a.alpha))?;
    require(!a.mu.is_empty(), "need at least one mu")?;
    require(a.tolerance > 0.0, "tolerance must be positive")?;
    let rows = remark_divergence_experiment(a.alpha, &a.mu, a.j_max, &QuadOptions::with_tol(a.tolerance))?;
    let mut body = String::from("j,lambda,S_value_re,S_value_im");
    for mu in &a.mu {
        body.push_str(&format!(",q_mu_{mu}"));
    }
    body.push('\n');
    for r in &rows {
        body.push_str(&format!("{},{:.17e},{}", r.j, r.lambda, fmt_c(r.s)));
        for q in &r.q {
            body.push_str(&format!(",{q:.17e}"));
        }
        body.push('\n');
    }
    Ok(Outcome {
        document: csv_document(&ctx.header(a)?, &body),
        passed: true,
    })
}

/// Parameter of the counterexample data sampled by `seminorm --function tumanov-s`.
const TUMANOV_ALPHA: f64 = 0.5;

fn sample_function(kind: SampleFunction) -> Result<(SampleDomain, Field)> {
    Ok(match kind {
        SampleFunction::Identity => (SampleDomain::interval(0.0, 0.5)?, field(|p| p[0])),
        SampleFunction::SqrtAbs => (SampleDomain::unit_disc(), field(|p| c(p[0].norm().sqrt(), 0.0))),
        SampleFunction::TumanovS => {
            let opts = QuadOptions::with_tol(1e-12);
            (
                SampleDomain::interval(0.0, 0.5)?,
                field(move |p| {
                    tumanov_s_at_one(p[0], TUMANOV_ALPHA, &opts).map_or(c(f64::NAN, f64::NAN), |s| s.value)
                }),
            )
        }
        SampleFunction::Branch => (
            SampleDomain::unit_disc(),
            field(|p| cauchy_core::dbar::branch_power(p[0], 0, 0.5, 1.0)),
        ),
    })
}

fn seminorm(ctx: &Ctx, a: &SeminormArgs) -> Result<Outcome> {
    require(a.alpha > 0.0 && a.alpha <= 1.0, format!("alpha must lie in (0, 1], got {}", a.alpha))?;
    require(a.nu.is_finite(), "nu must be finite")?;
    require_power_of_two("budget", a.budget)?;
    let (domain, f) = sample_function(a.function)?;
    let sampler = PairSampler::with_bands(vec![domain], a.bands, a.h_cap, ctx.seed)?;
    let est = seminorm_estimate(&*f, &sampler, a.alpha, a.nu, a.budget)?;
    let mut h = ctx.header(a)?;
    h.note("value", format!("{:.17e}", est.value));
    h.note("pair_count", est.pair_count);
    if let Some((p, q)) = &est.witness {
        h.note("witness", format!("{} -> {}", fmt_c(p[0]), fmt_c(q[0])));
    }
    let mut body = String::from("band_j,h_mid,max_quotient\n");
    for b in &est.bands {
        body.push_str(&format!("{},{:.17e},{:.17e}\n", b.band_j, b.h_mid, b.max_quotient));
    }
    Ok(Outcome {
        document: csv_document(&h, &body),
        passed: true,
    })
}

fn data(kind: DataFunction) -> fn(Complex64) -> Complex64 {
    match kind {
        DataFunction::One => |_| c(1.0, 0.0),
        DataFunction::Z => |z| z,
        DataFunction::Zbar => |z| z.conj(),
        DataFunction::ZbarPlusZ2 => |z| z.conj() + z * z,
        DataFunction::Exp => |z| z.exp(),
    }
}

/// Closed form of the operator on the unit disc, or on any domain when the
/// data is holomorphic and the operator is `S` or `Φ`.
fn exact(op: OperatorKind, kind: DataFunction, curve: Curve, z: Complex64) -> Option<Complex64> {
    let holomorphic = matches!(kind, DataFunction::One | DataFunction::Z | DataFunction::Exp);
    match op {
        OperatorKind::S | OperatorKind::Phi if holomorphic => Some(data(kind)(z)),
        OperatorKind::S | OperatorKind::Phi if curve == Curve::Circle => match kind {
            DataFunction::Zbar => Some(c(0.0, 0.0)),
            DataFunction::ZbarPlusZ2 => Some(z * z),
            _ => None,
        },
        OperatorKind::T => match kind {
            DataFunction::One => Some(z.conj()),
            DataFunction::Z => Some(c(z.norm_sqr() - 1.0, 0.0)),
            DataFunction::Zbar => Some(z.conj() * z.conj() * 0.5),
            DataFunction::ZbarPlusZ2 => Some(z.conj() * z.conj() * 0.5 + z * z * z.conj() - z),
            DataFunction::Exp => None,
        },
        _ => None,
    }
}

fn curve(kind: Curve, n: usize) -> Result<Contour> {
    Ok(match kind {
        Curve::Circle => make_circle(c(0.0, 0.0), 1.0, n)?,
        Curve::Ellipse => make_fourier_contour(&[(1, c(0.75, 0.0)), (-1, c(0.25, 0.0))], n)?,
    })
}

fn operators(ctx: &Ctx, a: &OperatorArgs) -> Result<Outcome> {
    require_power_of_two("n", a.n)?;
    require_power_of_two("rays", a.rays)?;
    require_power_of_two("radial", a.radial)?;
    require(a.points > 0, "need at least one evaluation point")?;
    require(a.ring > 0.0 && a.ring < 1.0, format!("ring must lie in (0, 1), got {}", a.ring))?;
    require(
        a.op != OperatorKind::T || a.domain == Curve::Circle,
        "the solid transform is implemented on discs only",
    )?;
    let contour = curve(a.domain, a.n)?;
    let bs = BoundarySystem::single(contour.clone())?;
    let opts = QuadOptions::default();
    let f = data(a.function);
    let res = PolarResolution::new(a.rays, a.radial)?;
    let mut body = String::from("x_re,x_im,value_re,value_im,exact_re,exact_im,abs_err\n");
    let mut worst: Option<f64> = None;
    for k in 0..a.points {
        let s = std::f64::consts::TAU * (k as f64 + 0.25) / a.points as f64;
        let x = match a.op {
            OperatorKind::Phi => contour.point(s),
            _ => contour.point(s) * a.ring,
        };
        let v = match a.op {
            OperatorKind::S => cauchy_interior(f, x, &bs, &opts)?.value,
            OperatorKind::Phi => plemelj_boundary(f, x, &bs, &opts)?.value,
            OperatorKind::T => solid_cauchy(f, x, &Disc::unit(), res)?,
        };
        let e = exact(a.op, a.function, a.domain, x);
        body.push_str(&format!("{},{}", fmt_c(x), fmt_c(v)));
        match e {
            Some(e) => {
                let err = (v - e).norm();
                worst = Some(worst.unwrap_or(0.0).max(err));
                body.push_str(&format!(",{},{err:.6e}\n", fmt_c(e)));
            }
            None => body.push_str(",,,\n"),
        }
    }
    let mut h = ctx.header(a)?;
    if let Some(w) = worst {
        h.note("max_abs_err", format!("{w:.6e}"));
    }
    Ok(Outcome {
        document: csv_document(&h, &body),
        passed: true,
    })
}

fn check_dbar(a: &DbarArgs) -> Result<()> {
    require_power_of_two("contour_nodes", a.contour_nodes)?;
    require_power_of_two("rays", a.rays)?;
    require_power_of_two("radial", a.radial)?;
    require(a.radii.len() == 2, "the solver runs on a bidisc: give two radii")?;
    require(a.h > 0.0, "finite-difference step must be positive")?;
    require(a.grid_rings > 0 && a.grid_rays > 0, "sample grid must be nonempty")
}

fn bidisc(a: &DbarArgs) -> Result<Arc<ProductDomain>> {
    let factors = a
        .radii
        .iter()
        .map(|&r| {
            let d = Disc::new(c(0.0, 0.0), r)?;
            Ok(Factor::disc(d, a.contour_nodes, d.polar_grid(a.grid_rings, a.grid_rays))?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(ProductDomain::new(factors)?))
}

fn build_form(a: &DbarArgs, domain: Arc<ProductDomain>) -> Result<Form01> {
    Ok(match a.form {
        FormKind::Unit => Form01::new(domain, vec![field(|_| c(1.0, 0.0)), field(|_| c(0.0, 0.0))])?,
        FormKind::Separable => Form01::new(domain, vec![field(|p| p[1].conj()), field(|p| p[0].conj())])?,
        FormKind::Example => example_form(a.k, a.alpha, a.nu, domain)?,
    })
}

/// The solution the operator must return for the polynomial forms on
/// centred discs.
fn exact_solution(kind: FormKind, p: &[Complex64]) -> Option<Complex64> {
    match kind {
        FormKind::Unit => Some(p[0].conj()),
        FormKind::Separable => Some(p[0].conj() * p[1].conj()),
        FormKind::Example => None,
    }
}

fn dbar_solve(ctx: &Ctx, a: &DbarArgs) -> Result<Outcome> {
    check_dbar(a)?;
    let form = build_form(a, bidisc(a)?)?;
    let res = DbarResolution::new(a.contour_nodes, a.rays, a.radial)?;
    let u = solve_dbar(&form, &res)?;
    if let Some(bad) = u.values().iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(CliError::Numerical(format!("solution is not finite at grid node {bad}")));
    }
    let mut h = ctx.header(a)?;
    let errs: Option<Vec<f64>> = (0..u.len())
        .map(|k| exact_solution(a.form, &u.point(k)).map(|e| (u.values()[k] - e).norm()))
        .collect();
    if let Some(errs) = errs {
        h.note("max_abs_err", format!("{:.6e}", errs.iter().cloned().fold(0.0, f64::max)));
    }
    let body = serde_json::to_value(u.record()).map_err(|e| CliError::Numerical(e.to_string()))?;
    Ok(Outcome {
        document: json_document(&h, body),
        passed: true,
    })
}

fn dbar_residual(ctx: &Ctx, a: &DbarArgs) -> Result<Outcome> {
    check_dbar(a)?;
    let form = build_form(a, bidisc(a)?)?;
    let res = DbarResolution::new(a.contour_nodes, a.rays, a.radial)?;
    let u = solution_field(&form, &res)?;
    let nodes = clearance_nodes(form.discs(), a.clearance, a.grid_rings, a.grid_rays)?;
    let report = residual_report(&form, &*u, &nodes, a.h)?;
    if !report.max().is_finite() {
        return Err(CliError::Numerical("residual is not finite".into()));
    }
    let mut h = ctx.header(a)?;
    h.note("max_rel_err", format!("{:.6e}", report.max()));
    let body = json!({
        "max_rel_err": report.max_rel_err,
        "max": report.max(),
        "nodes": report.nodes.iter().map(|p| p.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        document: json_document(&h, body),
        passed: true,
    })
}

/// The fixed witness sample points plus `1 - 2^{-j}`, `j = 3..=approach`.
pub fn witness_points(approach: u32) -> Vec<Complex64> {
    let mut xis = vec![c(0.0, 0.0), c(0.0, 0.5), c(0.0, -0.5), c(-0.5, 0.0), c(0.9, 0.0)];
    xis.extend((3..=approach).map(|j| c(1.0 - 0.5f64.powi(j as i32), 0.0)));
    xis
}

fn dbar_witness(ctx: &Ctx, a: &WitnessArgs) -> Result<Outcome> {
    require_power_of_two("m", a.m)?;
    require_power_of_two("contour_nodes", a.contour_nodes)?;
    require_power_of_two("rays", a.rays)?;
    require_power_of_two("radial", a.radial)?;
    let factors = (0..2)
        .map(|_| Factor::disc(Disc::unit(), a.contour_nodes, vec![c(0.0, 0.0)]))
        .collect::<cauchy_core::Result<Vec<_>>>()?;
    let form = example_form(a.k, a.alpha, a.nu, Arc::new(ProductDomain::new(factors)?))?;
    let res = DbarResolution::new(a.contour_nodes, a.rays, a.radial)?;
    let u = solution_field(&form, &res)?;
    let (k, alpha, nu) = (a.k, a.alpha, a.nu);
    let closed = move |xi: Complex64| witness_closed_form(xi, k, alpha, nu);
    let rows = example_witness(&*u, &witness_points(a.approach), a.m, Some(&closed))?;
    let mut worst: f64 = 0.0;
    let mut body = String::from("xi_re,xi_im,w_re,w_im,closed_form_re,closed_form_im,abs_err\n");
    for r in &rows {
        let cf = r.closed_form.unwrap_or(c(f64::NAN, f64::NAN));
        let err = r.abs_err.unwrap_or(f64::NAN);
        if !err.is_finite() {
            return Err(CliError::Numerical(format!("witness is not finite at xi = {}", r.xi)));
        }
        worst = worst.max(err);
        body.push_str(&format!("{},{},{},{err:.6e}\n", fmt_c(r.xi), fmt_c(r.w), fmt_c(cf)));
    }
    let mut h = ctx.header(a)?;
    h.note("max_abs_err", format!("{worst:.6e}"));
    Ok(Outcome {
        document: csv_document(&h, &body),
        passed: true,
    })
}
