//! Composite Gauss-Legendre quadrature on the real line for complex integrands.

use once_cell::sync::Lazy;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{cx, Real, C};

/// Panel width before adaptive halving.
pub const PANEL_WIDTH: f64 = 0.5;
/// Default relative disagreement tolerated between a panel and its two halves.
pub const DEFAULT_TOL: f64 = 1e-6;
const MAX_DEPTH: u32 = 30;

/// 16-point Gauss-Legendre nodes and weights on `[-1, 1]`.
static GL16: Lazy<Vec<(f64, f64)>> = Lazy::new(|| legendre_rule(16));

fn legendre_rule(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn gl16<T: Real, F>(f: &F, a: T, b: T) -> Result<C<T>>
where
    F: Fn(T) -> Result<C<T>> + Sync,
{
    let mid = (a + b) / T::lit(2.0);
    let half = (b - a) / T::lit(2.0);
    let mut acc = cx(T::zero(), T::zero());
    for &(x, w) in GL16.iter() {
        acc = acc + f(mid + half * T::lit(x))? * T::lit(w);
    }
    Ok(acc * half)
}

fn adaptive<T: Real, F>(f: &F, a: T, b: T, whole: C<T>, tol: T, depth: u32) -> Result<C<T>>
where
    F: Fn(T) -> Result<C<T>> + Sync,
{
    let m = (a + b) / T::lit(2.0);
    let left = gl16(f, a, m)?;
    let right = gl16(f, m, b)?;
    let halves = left + right;
    if (halves - whole).norm() <= tol * T::one().max(halves.norm()) {
        return Ok(halves);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature(format!("no convergence on [{a}, {b}] after {MAX_DEPTH} halvings")));
    }
    Ok(adaptive(f, a, m, left, tol, depth + 1)? + adaptive(f, m, b, right, tol, depth + 1)?)
}

/// Pairwise (tree) sum, independent of how the terms were scheduled.
pub fn pairwise_sum<T: Real>(xs: &[C<T>]) -> C<T> {
    match xs.len() {
        0 => cx(T::zero(), T::zero()),
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// `int_a^b f(t) dt` over panels of width at most 0.5, each refined by halving until it
/// agrees with its two halves to `tol` (relative, floored at one).
pub fn integrate<T: Real, F>(f: F, a: T, b: T, tol: T) -> Result<C<T>>
where
    F: Fn(T) -> Result<C<T>> + Sync,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Quadrature("infinite integration limits".into()));
    }
    if a == b {
        return Ok(cx(T::zero(), T::zero()));
    }
    if b < a {
        return Ok(-integrate(f, b, a, tol)?);
    }
    let width = T::lit(PANEL_WIDTH);
    let panels = ((b - a) / width).ceil().to_usize().unwrap_or(1).max(1);
    let h = (b - a) / T::from_usize_lossy(panels);
    let parts: Vec<C<T>> = (0..panels)
        .into_par_iter()
        .map(|i| {
            let lo = a + h * T::from_usize_lossy(i);
            let hi = if i + 1 == panels { b } else { lo + h };
            let whole = gl16(&f, lo, hi)?;
            adaptive(&f, lo, hi, whole, tol, 0)
        })
        .collect::<Result<_>>()?;
    Ok(pairwise_sum(&parts))
}

/// Logarithmic integral with lower limit 2: `Li(x) = int_2^x dy / log y`.
pub fn li<T: Real>(x: T) -> Result<T> {
    if !(x > T::one()) {
        return Err(Error::InvalidInput(format!("Li(x) needs x > 1, got {x}")));
    }
    Ok(integrate(|y: T| Ok(cx(T::one() / y.ln(), T::zero())), T::lit(2.0), x, T::lit(1e-10))?.re)
}
