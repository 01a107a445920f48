mod common;

use gaussradon::coord::{AffineSubspace, EigenSchedule, Subspace};
use gaussradon::{monte_carlo_mean, ComplexCoordVec, CoordVec, ExponentialFunctional, GaussianSampler, Term};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::{e, random_complex_vec, random_vec, rel_err, rng};

fn random_phi(r: &mut ChaCha8Rng, terms: usize, dim: usize, scale: f64) -> ExponentialFunctional {
    ExponentialFunctional::from_terms((0..terms).map(|_| Term {
        coeff: Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)),
        w: random_complex_vec(r, dim, scale),
    }))
}

#[test]
fn product_is_pointwise() {
    let mut r = rng(1);
    for _ in 0..100 {
        let phi = random_phi(&mut r, 3, 4, 0.8);
        let psi = random_phi(&mut r, 3, 4, 0.8);
        let x = random_vec(&mut r, 5, 1.5);
        let lhs = phi.multiply(&psi).evaluate(&x);
        let rhs = phi.evaluate(&x) * psi.evaluate(&x);
        assert!(rel_err(lhs, rhs) <= 1e-12, "{lhs} vs {rhs}");
    }
}

#[test]
fn translation_matches_shifted_evaluation() {
    let t = ExponentialFunctional::real_exponential(&e(1)).translate(&e(2));
    let mut r = rng(2);
    for _ in 0..20 {
        let x = random_vec(&mut r, 4, 2.0);
        let lhs = t.evaluate(&x);
        let rhs = ExponentialFunctional::real_exponential(&e(1)).evaluate(&x.add(&e(2)));
        assert!(rel_err(lhs, rhs) <= 1e-12);
    }
}

#[test]
fn translation_composes() {
    let mut r = rng(3);
    for _ in 0..50 {
        let phi = random_phi(&mut r, 4, 3, 1.0);
        let (y1, y2) = (random_vec(&mut r, 3, 1.0), random_vec(&mut r, 3, 1.0));
        let twice = phi.translate(&y1).translate(&y2);
        let once = phi.translate(&y1.add(&y2));
        assert_eq!(twice.terms().len(), once.terms().len());
        for (a, b) in twice.terms().iter().zip(once.terms()) {
            assert_eq!(a.w, b.w);
            assert!(rel_err(a.coeff, b.coeff) <= 1e-14);
        }
    }
}

#[test]
fn s_transform_is_linear() {
    let mut r = rng(4);
    for _ in 0..50 {
        let (phi, psi) = (random_phi(&mut r, 3, 3, 1.0), random_phi(&mut r, 3, 3, 1.0));
        let (a, b) = (Complex64::new(0.3, -1.2), Complex64::new(-2.0, 0.5));
        let z = random_complex_vec(&mut r, 3, 1.0);
        let lhs = phi.scale(a).add(&psi.scale(b)).s_transform(&z);
        let rhs = a * phi.s_transform(&z) + b * psi.s_transform(&z);
        assert!((lhs - rhs).norm() <= 1e-14 * (a.norm() + b.norm()) * 10.0);
    }
}

#[test]
fn s_transform_matches_measure() {
    // S phi(z) = E[c_z(x) phi(x)] under the standard measure, for real z
    let phi = ExponentialFunctional::real_exponential(&e(1))
        .add(&ExponentialFunctional::real_exponential(&e(2).scale(-0.5)).scale(Complex64::new(0.0, 2.0)));
    let sampler = GaussianSampler::new(AffineSubspace::linear(Subspace::whole()), 3, 9).unwrap();
    for z in [e(1).scale(0.5), e(2).add(&e(3)), CoordVec::zero()] {
        let cz = ExponentialFunctional::real_exponential(&z);
        let est = monte_carlo_mean(1_000_000, |i| {
            let x = sampler.draw(i);
            cz.evaluate_dense(&x) * phi.evaluate_dense(&x)
        });
        let want = phi.s_transform(&z.to_complex());
        assert!(est.agrees_with(want, 4.0), "{} vs {}", est.mean, want);
    }
}

fn golden_max(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    f(0.5 * (a + b))
}

#[test]
fn growth_constant_matches_line_search() {
    let s = EigenSchedule::Shifted;
    let phi = ExponentialFunctional::real_exponential(&e(1));
    // log|c_{e_1}(t e_1)| - |t e_1|_{-1}^2 / 2 = t - 1/2 - t^2/8
    let best = golden_max(-20.0, 20.0, |t| phi.evaluate(&e(1).scale(t)).norm().ln() - 0.5 * (t / 2.0).powi(2));
    assert!((best - 1.5).abs() < 1e-12);
    assert!((phi.growth_constant(1, &s).ln() - best).abs() < 1e-12);
}

#[test]
fn growth_bound_holds_on_random_points() {
    let s = EigenSchedule::Shifted;
    let mut r = rng(6);
    let mut violations = 0;
    for k in 0..1000 {
        let phi = random_phi(&mut r, 1 + k % 4, 4, 1.5);
        let x = random_vec(&mut r, 6, 6.0);
        let p = (k % 3 + 1) as u32;
        let bound = phi.growth_constant(p, &s).ln() + 0.5 * s.weighted_sq(&x, -(p as i32));
        if phi.evaluate(&x).norm().ln() > bound + 1e-12 {
            violations += 1;
        }
    }
    assert_eq!(violations, 0);
}

#[test]
fn convergence_criterion_sanity() {
    // w_n -> w: S c_{w_n} -> S c_w pointwise with a uniform bound C e^{|z|_1^2 / 2}
    let s = EigenSchedule::Shifted;
    let w = random_complex_vec(&mut rng(7), 3, 1.0);
    let delta = ComplexCoordVec::basis(2, Complex64::new(1.0, -1.0)).unwrap();
    let seq: Vec<ComplexCoordVec> = (1..=12).map(|k| w.add(&delta.scale(1.0 / 2f64.powi(k)))).collect();
    let log_c = seq.iter().map(|wn| 0.5 * s.weighted_sq(wn, -1)).fold(0.0, f64::max);
    let mut r = rng(8);
    let grid: Vec<ComplexCoordVec> = (0..20).map(|_| random_complex_vec(&mut r, 4, 1.5)).collect();
    let mut prev = f64::INFINITY;
    for wn in &seq {
        let phi_n = ExponentialFunctional::exponential(wn.clone());
        let phi = ExponentialFunctional::exponential(w.clone());
        let mut worst = 0.0f64;
        for z in &grid {
            let v = phi_n.s_transform(z);
            assert!(v.norm().ln() <= log_c + 0.5 * s.weighted_sq(z, 1) + 1e-12);
            worst = worst.max((v - phi.s_transform(z)).norm());
        }
        assert!(worst < prev);
        prev = worst;
    }
    assert!(prev < 1e-2);
}
