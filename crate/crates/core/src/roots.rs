//! Roots of univariate complex polynomials (Aberth-Ehrlich iteration).

use crate::error::{Error, Result};
use crate::scalar::{cx, Real, C};

fn horner<T: Real>(coeffs: &[C<T>], z: C<T>) -> (C<T>, C<T>) {
    let mut p = cx(T::zero(), T::zero());
    let mut dp = cx(T::zero(), T::zero());
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + *c;
    }
    (p, dp)
}

/// All roots of `sum coeffs[i] z^i`, with multiplicity. Exact zero roots (vanishing low
/// coefficients) are returned as exact zeros.
pub fn polynomial_roots<T: Real>(coeffs: &[C<T>]) -> Result<Vec<C<T>>> {
    let mut hi = coeffs.len();
    while hi > 0 && coeffs[hi - 1].norm() == T::zero() {
        hi -= 1;
    }
    if hi == 0 {
        return Err(Error::InvalidInput("identically zero polynomial has no isolated roots".into()));
    }
    let mut lo = 0;
    while coeffs[lo].norm() == T::zero() {
        lo += 1;
    }
    let mut roots = vec![cx(T::zero(), T::zero()); lo];
    let p = &coeffs[lo..hi];
    let n = p.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    if n == 1 {
        roots.push(-p[0] / p[1]);
        return Ok(roots);
    }

    // initial guesses on a circle of the Cauchy-bound radius, rotated off the axes
    let lead = p[n].norm();
    let radius = p[..n].iter().fold(T::zero(), |m, c| m.max(c.norm() / lead)).powf(T::one() / T::from_usize_lossy(n))
        .max(T::lit(1e-3));
    let mut z: Vec<C<T>> = (0..n)
        .map(|k| {
            let angle = T::TAU() * T::from_usize_lossy(k) / T::from_usize_lossy(n) + T::lit(0.4);
            C::from_polar(radius, angle)
        })
        .collect();
    let tol = T::epsilon() * T::lit(8.0);
    for _ in 0..500 {
        let mut moved = T::zero();
        for i in 0..n {
            let (v, dv) = horner(p, z[i]);
            if v.norm() == T::zero() {
                continue;
            }
            let ratio = v / dv;
            let mut repulsion = cx(T::zero(), T::zero());
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > T::zero() {
                        repulsion = repulsion + cx(T::one(), T::zero()) / d;
                    }
                }
            }
            let step = ratio / (cx(T::one(), T::zero()) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] = z[i] - step;
                moved = moved.max(step.norm() / T::one().max(z[i].norm()));
            }
        }
        if moved <= tol {
            break;
        }
    }
    roots.extend(z);
    Ok(roots)
}
