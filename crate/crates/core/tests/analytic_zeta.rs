mod common;

use common::{c, critical_line_zeros};
use polyzeta::analytic::{count_zeros_rect, localize_zeros, winding_number, WindingOptions};
use polyzeta::geometry::ComplexRect;
use polyzeta::zeta::{zeta_function, ZetaParams};

#[test]
fn zeta_zeros_below_thirty() {
    let f = zeta_function(ZetaParams::default());
    let r = ComplexRect::new(0.0, 1.0, 0.0, 30.0).unwrap();
    let rep = count_zeros_rect(&f, &r).unwrap();
    assert_eq!(rep.count, 3);
    // the pole at the corner forces an outward perturbation
    assert!(rep.perturbation > 0.0);
    let inner = ComplexRect::new(0.2, 0.8, 1.0, 30.0).unwrap();
    assert_eq!(winding_number(&f, &inner.into(), &WindingOptions::default()).unwrap().winding, 3);
}

#[test]
fn zeta_zeros_below_one_hundred_match_critical_line_scan() {
    let f = zeta_function(ZetaParams::default());
    let r = ComplexRect::new(0.0, 1.0, 0.0, 100.0).unwrap();
    let t0 = std::time::Instant::now();
    let rep = count_zeros_rect(&f, &r).unwrap();
    eprintln!("count {} samples {} in {:?}", rep.count, rep.samples_used, t0.elapsed());
    let oracle = critical_line_zeros(1.0, 100.0, 0.01);
    assert_eq!(oracle.len(), 29);
    assert_eq!(rep.count, oracle.len());
}

#[test]
fn first_zero_localized() {
    let f = zeta_function(ZetaParams::default());
    let r = ComplexRect::new(0.0, 1.0, 10.0, 15.0).unwrap();
    let rep = localize_zeros(&f, &r, 1e-8).unwrap();
    assert_eq!(rep.zeros.len(), 1);
    let z = rep.zeros[0];
    assert_eq!(z.multiplicity, 1);
    assert!((z.location - c(0.5, 14.134_725_141_734_693)).norm() < 1e-9);
    assert!(z.residual < 1e-8);
}
