use super::AnalyticFunction;
use crate::error::{Error, Result};
use crate::scalar::{factorial, Real, C};

const START_NODES: usize = 64;
const MAX_NODES: usize = 1 << 14;

/// Radius used when the caller does not pick one: half the distance to the nearest
/// declared pole or domain edge, capped at 0.25.
pub fn default_cauchy_radius<T: Real>(f: &AnalyticFunction<T>, s: C<T>) -> Result<T> {
    let mut d = f.domain().distance_to_boundary(s);
    if !f.domain().contains(s) {
        d = T::infinity();
    }
    for p in f.poles() {
        d = d.min((s - p.location).norm());
    }
    let r = T::lit(0.25).min(d / T::lit(2.0));
    if !(r > T::zero()) {
        return Err(Error::PoleInDisk { re: s.re.as_f64(), im: s.im.as_f64() });
    }
    Ok(r)
}

/// `f^(k)(s)` by the trapezoidal rule on the circle `|z - s| = radius`.
///
/// Node count starts at 64 and doubles until two successive estimates agree to 1e-11
/// (relative), which happens geometrically fast for functions analytic on the disk.
pub fn cauchy_derivative<T: Real>(f: &AnalyticFunction<T>, s: C<T>, k: usize, radius: T) -> Result<C<T>> {
    if !(radius > T::zero()) {
        return Err(Error::InvalidInput(format!("cauchy radius must be positive, got {radius}")));
    }
    for p in f.poles() {
        if (p.location - s).norm() <= radius * (T::one() + T::lit(1e-12)) {
            return Err(Error::PoleInDisk { re: p.location.re.as_f64(), im: p.location.im.as_f64() });
        }
    }
    let scale = factorial::<T>(k) / radius.powi(k as i32);
    let node = |j: usize, m: usize| -> Result<(C<T>, T)> {
        let theta = T::TAU() * T::from_usize_lossy(j) / T::from_usize_lossy(m);
        let w = C::from_polar(T::one(), theta);
        let v = f.eval(s + w * radius)?;
        // v * w^{-k}
        Ok((v * C::from_polar(T::one(), -theta * T::from_usize_lossy(k)), v.norm()))
    };

    let mut m = START_NODES;
    let mut sum = C::new(T::zero(), T::zero());
    let mut mag = T::zero();
    for j in 0..m {
        let (z, a) = node(j, m)?;
        sum = sum + z;
        mag = mag + a;
    }
    let mut est = sum * (scale / T::from_usize_lossy(m));
    let tol = T::lit(1e-11);
    while m < MAX_NODES {
        let m2 = 2 * m;
        for j in (1..m2).step_by(2) {
            let (z, a) = node(j, m2)?;
            sum = sum + z;
            mag = mag + a;
        }
        let next = sum * (scale / T::from_usize_lossy(m2));
        let typical = scale * mag / T::from_usize_lossy(m2);
        let diff = (next - est).norm();
        m = m2;
        est = next;
        if diff <= tol * next.norm() || diff <= T::lit(1e-13) * typical {
            return Ok(est);
        }
    }
    Err(Error::NonConvergence(format!("cauchy quadrature for order {k} did not settle at {MAX_NODES} nodes")))
}

/// [`cauchy_derivative`] with [`default_cauchy_radius`].
pub fn cauchy_derivative_auto<T: Real>(f: &AnalyticFunction<T>, s: C<T>, k: usize) -> Result<C<T>> {
    let r = default_cauchy_radius(f, s)?;
    cauchy_derivative(f, s, k, r)
}

/// Sup bound `k! 2^k eps / (r' - r)^k` on `|f^(k) - g^(k)|` over the inner disk of radius
/// `r`, given `|f - g| < eps` on the concentric disk of radius `r'`.
pub fn derivative_error_bound<T: Real>(eps: T, r: T, r_prime: T, k: usize) -> Result<T> {
    if !(r > T::zero() && r < r_prime) {
        return Err(Error::InvalidRadii { r: r.as_f64(), r_prime: r_prime.as_f64() });
    }
    if !(eps >= T::zero()) {
        return Err(Error::InvalidInput(format!("eps must be non-negative, got {eps}")));
    }
    let two_k = T::lit(2.0).powi(k as i32);
    Ok(factorial::<T>(k) * two_k * eps / (r_prime - r).powi(k as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::Pole;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn cube_second_derivative() {
        let f = AnalyticFunction::from_fn("cube", |s: C<f64>| Ok(s * s * s));
        let d = cauchy_derivative(&f, c(2.0, 0.0), 2, 0.25).unwrap();
        assert!((d - c(12.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn exp_fifth_derivative_at_origin() {
        let f = AnalyticFunction::from_fn("exp", |s: C<f64>| Ok(s.exp()));
        let d = cauchy_derivative(&f, c(0.0, 0.0), 5, 0.25).unwrap();
        assert!((d - c(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn pole_inside_circle_is_rejected() {
        let f = AnalyticFunction::from_fn("inv", |s: C<f64>| Ok(c(1.0, 0.0) / (s - c(1.0, 0.0))))
            .with_poles(vec![Pole::exact(c(1.0, 0.0), 1)]);
        assert!(matches!(cauchy_derivative(&f, c(0.9, 0.0), 1, 0.25), Err(Error::PoleInDisk { .. })));
        let r = default_cauchy_radius(&f, c(0.9, 0.0)).unwrap();
        assert!((r - 0.05).abs() < 1e-12);
        let d = cauchy_derivative(&f, c(0.9, 0.0), 1, r).unwrap();
        assert!((d - c(-100.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn error_bound_values() {
        assert!((derivative_error_bound(0.1f64, 0.1, 0.3, 0).unwrap() - 0.1).abs() < 1e-15);
        assert!((derivative_error_bound(0.1f64, 0.1, 0.3, 1).unwrap() - 1.0).abs() < 1e-12);
        let eps = 0.01f64;
        let b2 = derivative_error_bound(eps, 0.2, 0.7, 2).unwrap();
        assert!((b2 - 8.0 * eps / 0.25).abs() < 1e-14);
        assert!(matches!(derivative_error_bound(0.1, 0.3, 0.3, 1), Err(Error::InvalidRadii { .. })));
        assert!(matches!(derivative_error_bound(0.1, 0.5, 0.3, 1), Err(Error::InvalidRadii { .. })));
    }
}
