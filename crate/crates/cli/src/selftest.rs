//! Fast numeric checks against closed forms.

use gaussradon::coord::{Hyperplane, Subspace};
use gaussradon::support::{plane_directions, DEFAULT_CHORD_NODES, DEFAULT_TOL};
use gaussradon::{
    ball_mass_estimate, classical_sinogram, disintegrate_eval, f_n_eval, radon_closed, radon_mc, radon_quadrature,
    support_recover, BumpFunction, CoordVec, DualBall, ExponentialFunctional, HermiteBasis, GaussHermite,
    QuadratureSpec,
};
use num_complex::Complex64;

use crate::commands::Ctx;
use crate::error::{CliError, CliResult};
use crate::SelftestArgs;

struct Check {
    name: &'static str,
    error: f64,
    bound: f64,
}

fn e(n: usize) -> CoordVec {
    CoordVec::unit(n).expect("positive index")
}

fn checks(samples: u64, tol: f64) -> gaussradon::Result<Vec<Check>> {
    let mut out = Vec::new();
    let phi = ExponentialFunctional::real_exponential(&e(1).scale(0.7))
        .add(&ExponentialFunctional::real_exponential(&e(2).scale(-0.4)).scale(Complex64::new(0.5, -1.0)));
    let plane = Hyperplane::normalized(0.8, &e(1).add(&e(2).scale(2.0)).add(&e(3)))?;
    let closed = radon_closed(&phi, &plane.to_affine()).value;

    // hyperplane display, term by term
    let oracle: Complex64 = phi
        .terms()
        .iter()
        .map(|t| {
            let vw: Complex64 = t.w.iter().map(|(i, w)| w * plane.normal().get(i)).sum();
            t.coeff * (plane.alpha() * vw - 0.5 * vw * vw).exp()
        })
        .sum();
    out.push(Check { name: "closed_form", error: (closed - oracle).norm(), bound: tol * oracle.norm() });

    let quad = radon_quadrature(&phi, &plane, &QuadratureSpec::default())?.value;
    out.push(Check { name: "quadrature", error: (quad - closed).norm(), bound: tol * closed.norm() });

    let mc = radon_mc(&phi, &plane.to_affine(), 4, samples, 1)?;
    out.push(Check { name: "monte_carlo", error: (mc.value - closed).norm(), bound: 4.0 * mc.stderr });

    let inner = Subspace::span(&[e(2).sub(&e(1).scale(2.0))])?;
    let dis = disintegrate_eval(&phi, &plane.to_affine(), &inner, 4, samples, 2)?;
    out.push(Check { name: "disintegration", error: (dis.value - closed).norm(), bound: 4.0 * dis.stderr });

    let x = e(1).scale(0.3).add(&e(4).scale(-1.0));
    let tower = f_n_eval(&phi, &x, 4);
    out.push(Check { name: "tower", error: (tower - phi.evaluate(&x)).norm(), bound: 0.0 });

    let unit = DualBall::new(1, CoordVec::zero(), 1.0)?;
    let mass = ball_mass_estimate(&unit, &Default::default(), 1, samples, 3)?;
    out.push(Check { name: "ball_mass", error: (mass.estimate - 0.954_499_736_103_641_6).abs(), bound: 4.0 * mass.stderr });

    let basis = HermiteBasis::new(6)?;
    let rule = GaussHermite::new(60)?;
    let gram = (1..=6)
        .flat_map(|m| (1..=6).map(move |n| (m, n)))
        .map(|(m, n)| {
            let ip: f64 = rule
                .nodes()
                .iter()
                .zip(rule.lebesgue_weights())
                .map(|(&t, &w)| w * basis.eval(m, t).unwrap_or(f64::NAN) * basis.eval(n, t).unwrap_or(f64::NAN))
                .sum();
            (ip - if m == n { 1.0 } else { 0.0 }).abs()
        })
        .fold(0.0, f64::max);
    out.push(Check { name: "hermite_orthonormal", error: gram, bound: tol });

    let bump = BumpFunction::new(vec![0.0, 0.0], 1.0)?;
    let offsets: Vec<f64> = (-30..=30).map(|k| k as f64 * 0.05).collect();
    let sino = classical_sinogram(&bump, &plane_directions(12), &offsets, DEFAULT_CHORD_NODES)?;
    let leak = sino.rows.iter().filter(|r| r.alpha.abs() >= 1.05 - 1e-12).map(|r| r.value.norm()).fold(0.0, f64::max);
    out.push(Check { name: "bump_zero_off_support", error: leak, bound: 0.0 });
    let slab = support_recover(&sino, DEFAULT_TOL)
        .constraints
        .iter()
        .map(|c| if c.degenerate { f64::INFINITY } else { (c.alpha_lo + 1.0).abs().max((c.alpha_hi - 1.0).abs()) })
        .fold(0.0, f64::max);
    out.push(Check { name: "bump_recovery", error: slab, bound: 0.05 + 1e-12 });
    Ok(out)
}

pub fn run(ctx: &Ctx, a: SelftestArgs) -> CliResult<()> {
    let samples = a.n.unwrap_or(100_000);
    let tol = a.tol.unwrap_or(1e-8);
    if samples < 2 {
        return Err(CliError::invalid("n", "selftest needs at least 2 samples"));
    }
    if !(tol > 0.0) {
        return Err(CliError::invalid("tol", "must be > 0"));
    }
    let results = checks(samples, tol)?;
    let mut text = String::new();
    let mut failed = 0;
    for c in &results {
        let pass = c.error <= c.bound;
        failed += usize::from(!pass);
        text.push_str(&format!(
            "{} {} error={} bound={}\n",
            if pass { "PASS" } else { "FAIL" },
            c.name,
            gaussradon::format::format_f64(c.error),
            gaussradon::format::format_f64(c.bound)
        ));
    }
    ctx.emit(&text)?;
    if failed > 0 {
        return Err(CliError::SelftestFailed(failed));
    }
    Ok(())
}
