mod common;

use common::{c, poly_from_roots};
use num_complex::Complex64;
use polyzeta::analytic::{cauchy_derivative, count_zeros_rect, winding_number, AnalyticFunction, WindingOptions};
use polyzeta::dirichlet::{DirichletTerm, TailMajorant};
use polyzeta::geometry::{ComplexRect, Disk};
use polyzeta::poly::ComposedFunction;
use polyzeta::rouche::{
    align_search, aux_monomial_target, aux_monomial_target_scaled, aux_poly_target, jet_log_solve, rouche_check,
    solve_theta, tau_scan, tau_scan_with, ScanOptions, TauGrid,
};
use polyzeta::series::PowerSeries;
use polyzeta::zeta::{zeta_derivative, zeta_function, ZetaParams};
use polyzeta::{Error, Polynomial, Series};
use proptest::prelude::*;

fn winding_on(f: &AnalyticFunction<f64>, disk: Disk<f64>) -> i64 {
    winding_number(f, &disk.into(), &WindingOptions::default()).unwrap().winding
}

fn complex(scale: f64) -> impl Strategy<Value = Complex64> {
    (-scale..scale, -scale..scale).prop_map(|(a, b)| c(a, b))
}

/// `s e^{c s}` with `c = -k / alpha` and its derivatives in closed form.
fn monomial_base(alpha: Complex64, k: usize) -> AnalyticFunction<f64> {
    let cc = -c(k as f64, 0.0) / alpha;
    AnalyticFunction::from_jet("s e^(cs)", 64, move |s, m| {
        let e = (cc * s).exp();
        Ok((0..=m).map(|j| if j == 0 { s * e } else { cc.powi(j as i32 - 1) * (cc * s + j as f64) * e }).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jet_log_round_trips(c0 in (0.1f64..10.0, -3.1f64..3.1), rest in prop::collection::vec(complex(1.0), 1..=6)) {
        let c0 = Complex64::from_polar(c0.0, c0.1);
        let mut jet = vec![c0];
        jet.extend(rest.iter().map(|u| c0 * u));
        let b = jet_log_solve(&jet).unwrap();
        let p = PowerSeries::new(b);
        let rho = p.coeffs.iter().enumerate().skip(1).map(|(j, a)| a.norm().powf(1.0 / j as f64)).fold(0.0, f64::max);
        let f = AnalyticFunction::from_fn("exp p", move |s| Ok(p.eval(s).exp()));
        for (k, want) in jet.iter().enumerate() {
            let got = cauchy_derivative(&f, c(0.0, 0.0), k, 0.5 / (1.0 + rho)).unwrap();
            prop_assert!((got - want).norm() <= 1e-9 * want.norm().max(c0.norm()), "order {}: {} vs {}", k, got, want);
        }
    }

    #[test]
    fn theta_solutions_are_nonzero_with_small_residual(
        coeffs in prop::collection::vec(complex(3.0), 2..=4),
        degs in prop::collection::vec(prop::collection::vec(0u32..=2, 2), 4),
        alpha in (0.6f64..2.0, -30.0f64..30.0),
    ) {
        let terms: Vec<(Vec<u32>, Series)> = coeffs.iter().zip(&degs).map(|(a, d)| (d.clone(), Series::constant(*a))).collect();
        let p = Polynomial::new(2, terms).unwrap();
        match solve_theta(&p, c(alpha.0, alpha.1)) {
            Ok(sol) => {
                prop_assert!(sol.residual < 1e-9 * (1.0 + sol.theta.iter().map(|t| t.norm()).fold(0.0, f64::max).powi(4)));
                prop_assert!(sol.theta.iter().all(|t| t.norm() > 0.0));
            }
            Err(e) => prop_assert!(matches!(e, Error::DegenerateAtAlpha | Error::NoNonzeroRoot), "{:?}", e),
        }
    }

    #[test]
    fn passing_certificates_preserve_root_counts(
        roots in prop::collection::vec((-1.5f64..1.5, -1.5f64..1.5), 1..5),
        moves in prop::collection::vec(complex(0.2), 4),
    ) {
        // A and Z are polynomials with known roots; Rouche must never pass with different counts
        let a_roots: Vec<Complex64> = roots.iter().map(|&(x, y)| c(x, y)).collect();
        let z_roots: Vec<Complex64> = a_roots.iter().zip(&moves).map(|(r, m)| r + m).collect();
        let disk = Disk::new(c(0.0, 0.0), 1.0).unwrap();
        prop_assume!(a_roots.iter().all(|r| (r.norm() - 1.0).abs() > 1e-3));
        let (ar, zr) = (a_roots.clone(), z_roots.clone());
        let a = AnalyticFunction::from_fn("A", move |s| Ok(poly_from_roots(&ar, s)));
        let z = AnalyticFunction::from_fn("Z", move |s| Ok(poly_from_roots(&zr, s)));
        let cert = rouche_check(&z, &a, &disk, 256).unwrap();
        if cert.pass {
            let inside = |rs: &[Complex64]| rs.iter().filter(|r| r.norm() < 1.0).count() as i64;
            prop_assert_eq!(cert.winding, Some(inside(&a_roots)));
            prop_assert_eq!(inside(&a_roots), inside(&z_roots));
        }
    }
}

#[test]
fn rouche_examples() {
    let id = AnalyticFunction::from_fn("s", |s: Complex64| Ok(s));
    let shifted = AnalyticFunction::from_fn("s+0.1", |s: Complex64| Ok(s + 0.1));
    let far = AnalyticFunction::from_fn("s+2", |s: Complex64| Ok(s + 2.0));
    let unit = Disk::new(c(0.0, 0.0), 1.0).unwrap();
    let pass = rouche_check(&id, &shifted, &unit, 64).unwrap();
    assert!(pass.pass && pass.winding == Some(1));
    assert!(!rouche_check(&far, &id, &unit, 64).unwrap().pass);
    let on_circle = AnalyticFunction::from_fn("s-1", |s: Complex64| Ok(s - 1.0));
    assert_eq!(rouche_check(&id, &on_circle, &unit, 64).unwrap_err(), Error::TargetVanishesOnCircle);
}

#[test]
fn monomial_target_has_one_simple_zero() {
    let alpha = c(0.75, 0.0);
    let a = aux_monomial_target(alpha, 2).unwrap();
    assert_eq!(winding_on(&a, Disk::new(alpha, 0.1).unwrap()), 1);
    // A(s, alpha, k) is the k-th derivative of s e^{-ks/alpha}
    for k in 1..=4 {
        let a = aux_monomial_target(c(0.8, 0.3), k).unwrap();
        let base = monomial_base(c(0.8, 0.3), k);
        let base = AnalyticFunction::from_fn("b", move |s| base.eval(s));
        for s in [c(0.0, 0.0), c(0.5, -0.2)] {
            let want = cauchy_derivative(&base, s, k, 0.2).unwrap();
            assert!((a.eval(s).unwrap() - want).norm() < 1e-9 * (1.0 + want.norm()));
        }
    }
    assert_eq!(aux_monomial_target(c(0.0, 0.0), 1).unwrap_err(), Error::ZeroAlpha);
}

#[test]
fn polynomial_target_vanishes_at_alpha() {
    let alpha = c(0.75, 2.0);
    let p = Polynomial::new(
        2,
        vec![(vec![1, 0], Series::unit()), (vec![0, 1], Series::unit())],
    )
    .unwrap();
    let a = aux_poly_target(&p, alpha).unwrap();
    assert!(a.eval(alpha).unwrap().norm() < 1e-8);
    assert!(winding_on(&a, Disk::new(alpha, 0.05).unwrap()) >= 1);
    // a Dirichlet coefficient makes D(s) depend on s without moving the zero
    let d = Series::new(vec![DirichletTerm { a: c(0.5, 0.0), lambda: 2f64.ln() }], TailMajorant::Zero).unwrap();
    let p2 = Polynomial::new(2, vec![(vec![1, 0], Series::unit()), (vec![0, 1], d)]).unwrap();
    assert!(aux_poly_target(&p2, alpha).unwrap().eval(alpha).unwrap().norm() < 1e-8);
}

#[test]
fn squared_polynomial_target_has_double_zero() {
    // (X_0 - 1)^2
    let x0 = Polynomial::variable(0, 1).unwrap();
    let minus_one = Polynomial::constant(1, Series::constant(c(-1.0, 0.0))).unwrap();
    let p = x0.add(&minus_one).unwrap().pow(2).unwrap();
    let alpha = c(0.75, 2.0);
    let a = aux_poly_target(&p, alpha).unwrap();
    assert_eq!(winding_on(&a, Disk::new(alpha, 0.05).unwrap()), 2);
}

#[test]
fn self_approximation_passes_at_zero_shift() {
    let alpha = c(0.75, 0.0);
    let f = ComposedFunction::new(Polynomial::variable(1, 2).unwrap(), monomial_base(alpha, 1));
    let a = aux_monomial_target(alpha, 1).unwrap();
    let disk = Disk::new(alpha, 0.1).unwrap();
    let scan = tau_scan(&f, &a, &disk, (0.0, 1.0), 0.1).unwrap();
    let first = &scan.certificates[0];
    assert!(first.pass && first.tau == 0.0);
    assert!(first.max_diff <= 1e-15 * first.min_target);
    let z = first.mapped_zero.unwrap();
    assert!((z - alpha).norm() < 1e-8);
}

#[test]
fn hit_fraction_shrinks_with_the_radius_in_the_synthetic_case() {
    let alpha = c(0.75, 0.0);
    let f = ComposedFunction::new(Polynomial::variable(1, 2).unwrap(), monomial_base(alpha, 1));
    let a = aux_monomial_target(alpha, 1).unwrap();
    let fractions: Vec<f64> = [0.3, 0.2, 0.1]
        .iter()
        .map(|&r| tau_scan(&f, &a, &Disk::new(alpha, r).unwrap(), (-1.0, 1.0), 0.01).unwrap().hit_fraction)
        .collect();
    assert!(fractions[0] > 0.0);
    assert!(fractions.windows(2).all(|w| w[1] <= w[0]), "{fractions:?}");
}

#[test]
fn scaled_zeta_derivative_scan_finds_a_confirmed_zero() {
    let zp = ZetaParams::default();
    let alpha = c(0.75, 0.5);
    let disk = Disk::new(alpha, 0.1).unwrap();
    let f = ComposedFunction::new(Polynomial::variable(1, 2).unwrap(), zeta_function(zp));
    let a = aux_monomial_target_scaled(alpha, 1, c(-2.917, -1.945)).unwrap();
    let grid = TauGrid::new(94.0, 95.5, 0.1).unwrap();
    let scan = tau_scan_with(&f, &a, &disk, &grid, 0, &ScanOptions::default(), &mut |_| Ok(())).unwrap();
    let pass = scan.passes().next().expect("a passing shift near 94.8");
    let z = pass.mapped_zero.unwrap();
    assert!(zeta_derivative(z, 1, &zp).unwrap().norm() < 1e-6);
    assert!(z.re > 0.5 && z.re < 1.0);
    // confirmed by an independent count around the mapped zero
    let box_ = ComplexRect::new(z.re - 0.01, z.re + 0.01, z.im - 0.01, z.im + 0.01).unwrap();
    let d1 = polyzeta::zeta::zeta_derivative_function(1, zp);
    assert_eq!(count_zeros_rect(&d1, &box_).unwrap().count, 1);
}

#[test]
fn alignment_search() {
    let (l2, l3) = (2f64.ln(), 3f64.ln());
    let hits = align_search(&[l2, l3], 1, 0.05, (0.01, 1e4), 0.01).unwrap();
    assert!(!hits.is_empty());
    let tau = hits[0];
    for l in [l2, l3] {
        let x = tau * l / std::f64::consts::TAU;
        assert!((x - x.round()).abs() < 0.05);
    }
    assert_eq!(align_search(&[l2, l3], 3, 0.1, (0.0, 0.0), 0.01).unwrap(), vec![0.0]);
    // one frequency: hits sit within 0.2 pi of multiples of 2 pi
    for tau in align_search(&[1.0], 1, 0.1, (0.0, 50.0), 0.01).unwrap() {
        let n = (tau / std::f64::consts::TAU).round();
        assert!((tau - n * std::f64::consts::TAU).abs() < 0.2 * std::f64::consts::PI + 1e-12);
    }
}
