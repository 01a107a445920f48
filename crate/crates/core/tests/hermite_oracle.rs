mod common;

use gaussradon::{hermite_eval, norm_p, CoordVec, GaussHermite, HermiteBasis};

use common::{random_vec, rng, simpson};

fn l2_inner(basis: &HermiteBasis, m: usize, n: usize, rule: &GaussHermite) -> f64 {
    rule.nodes()
        .iter()
        .zip(rule.lebesgue_weights())
        .map(|(&t, &w)| w * basis.eval(m, t).unwrap() * basis.eval(n, t).unwrap())
        .sum()
}

#[test]
fn orthonormal_under_200_node_rule() {
    let basis = HermiteBasis::new(12).unwrap();
    let rule = GaussHermite::new(200).unwrap();
    for m in 1..=12 {
        for n in 1..=12 {
            let want = if m == n { 1.0 } else { 0.0 };
            assert!((l2_inner(&basis, m, n, &rule) - want).abs() <= 1e-8, "<phi_{m}, phi_{n}>");
        }
    }
}

#[test]
fn orthonormal_under_simpson() {
    // independent of the Gauss-Hermite machinery
    let basis = HermiteBasis::new(6).unwrap();
    for m in 1..=6 {
        for n in m..=6 {
            let ip = simpson(-20.0, 20.0, 20_000, |t| basis.eval(m, t).unwrap() * basis.eval(n, t).unwrap());
            let want = if m == n { 1.0 } else { 0.0 };
            assert!((ip - want).abs() <= 1e-8, "<phi_{m}, phi_{n}> = {ip}");
        }
    }
}

#[test]
fn basis_invariant_rule_size() {
    let basis = HermiteBasis::new(20).unwrap();
    let rule = GaussHermite::new(HermiteBasis::quadrature_nodes(20)).unwrap();
    for m in 1..=20 {
        for n in 1..=20 {
            let want = if m == n { 1.0 } else { 0.0 };
            assert!((l2_inner(&basis, m, n, &rule) - want).abs() <= 1e-8);
        }
    }
}

fn oscillator_residual(basis: &HermiteBasis, n: usize, t: f64, h: f64) -> f64 {
    let f = |s: f64| hermite_eval(basis, n, s).unwrap();
    let d2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
    -d2 + (t * t / 4.0 + 0.5) * f(t)
}

#[test]
fn first_function_solves_eigen_equation() {
    let basis = HermiteBasis::new(2).unwrap();
    let h = 1e-3;
    let worst = (0..=1000)
        .map(|k| -5.0 + 0.01 * k as f64)
        .map(|t| (oscillator_residual(&basis, 1, t, h) - 2.0 * basis.eval(1, t).unwrap()).abs())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-5, "residual {worst}");
}

#[test]
fn rayleigh_quotients_match_eigenvalues() {
    let basis = HermiteBasis::new(8).unwrap();
    for n in 1..=8 {
        let f = |t: f64| basis.eval(n, t).unwrap();
        let num = simpson(-15.0, 15.0, 6000, |t| f(t) * oscillator_residual(&basis, n, t, 1e-3));
        let den = simpson(-15.0, 15.0, 6000, |t| f(t) * f(t));
        let q = num / den;
        assert!((q - (n + 1) as f64).abs() <= 1e-4, "n={n}: {q}");
        assert_eq!(basis.eigenvalue(n), (n + 1) as f64);
    }
}

#[test]
fn parseval_at_truncation() {
    let basis = HermiteBasis::new(10).unwrap();
    let rule = GaussHermite::new(80).unwrap();
    let l2 = |x: &CoordVec| {
        let vals = basis.synth(x, rule.nodes()).unwrap();
        vals.iter().zip(rule.lebesgue_weights()).map(|(v, w)| w * v * v).sum::<f64>().sqrt()
    };
    let two = CoordVec::unit(1).unwrap().add(&CoordVec::unit(2).unwrap());
    assert!((l2(&two) - 2f64.sqrt()).abs() <= 1e-6);
    let mut r = rng(11);
    for _ in 0..50 {
        let x = random_vec(&mut r, 10, 2.0);
        assert!((l2(&x) - norm_p(&x, 0)).abs() <= 1e-6);
    }
}
