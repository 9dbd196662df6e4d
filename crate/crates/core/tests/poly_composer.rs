mod common;

use common::c;
use num_complex::Complex64;
use polyzeta::analytic::cauchy_derivative;
use polyzeta::dirichlet::{DirichletTerm, TailMajorant};
use polyzeta::poly::{as_analytic, differentiate_composed, ComposedFunction};
use polyzeta::zeta::{zeta_function, ZetaParams};
use polyzeta::{Polynomial, Series};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Series> {
    let z = (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| c(a, b));
    prop_oneof![
        z.clone().prop_map(Series::constant),
        (z, 0.0f64..2.0).prop_map(|(a, lambda)| Series::new(vec![DirichletTerm { a, lambda }], TailMajorant::Zero).unwrap()),
    ]
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec((prop::collection::vec(0u32..=2, n), coeff()), 1..=3)
            .prop_map(move |terms| Polynomial::new(n, terms).unwrap())
    })
}

fn zeta_composed(p: Polynomial) -> ComposedFunction<f64> {
    ComposedFunction::new(p, zeta_function(ZetaParams::default()))
}

fn rel(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / (1.0 + y.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn symbolic_derivative_matches_contour_integral(
        p in polynomial(),
        k in 1usize..=2,
        sigma in 0.6f64..0.9,
        t in 5.0f64..60.0,
    ) {
        let s = c(sigma, t);
        let dp = differentiate_composed(&p, k).unwrap();
        let symbolic = zeta_composed(dp).eval(s).unwrap();
        let f = as_analytic(&zeta_composed(p));
        let contour = cauchy_derivative(&f, s, k, 0.05).unwrap();
        prop_assert!(rel(symbolic, contour) < 1e-7, "{} vs {}", symbolic, contour);
    }

    #[test]
    fn jet_agrees_with_symbolic_derivatives(p in polynomial(), sigma in 0.6f64..2.0, t in 2.0f64..60.0) {
        let s = c(sigma, t);
        let f = zeta_composed(p.clone());
        let jet = f.jet(s, 2).unwrap();
        for (k, v) in jet.iter().enumerate() {
            let want = zeta_composed(differentiate_composed(&p, k).unwrap()).eval(s).unwrap();
            prop_assert!(rel(*v, want) < 1e-10);
        }
    }

    #[test]
    fn shift_moves_the_argument(p in polynomial(), sigma in 0.6f64..2.0, t in -20.0f64..20.0, tau in -200.0f64..200.0) {
        let f = zeta_composed(p);
        let s = c(sigma, t);
        prop_assert!(rel(f.with_shift(tau).eval(s).unwrap(), f.eval(s + c(0.0, tau)).unwrap()) < 1e-12);
    }
}

#[test]
fn second_derivative_of_zeta_squared() {
    // (L^2)'' = 2 L L'' + 2 L'^2
    let sq = Polynomial::variable(0, 1).unwrap().pow(2).unwrap();
    let d2 = differentiate_composed(&sq, 2).unwrap();
    let zp = ZetaParams::default();
    let s = c(0.7, 21.0);
    let z = zeta_function(zp).derivatives(s, 2).unwrap();
    let want = z[0] * z[2] * 2.0 + z[1] * z[1] * 2.0;
    assert!(rel(zeta_composed(d2).eval(s).unwrap(), want) < 1e-12);
}
