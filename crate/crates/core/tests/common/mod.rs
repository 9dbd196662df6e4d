//! Reference computations that share no code with the library.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Borwein's accelerated alternating series for eta, turned into zeta.
///
/// Uses `n = 1.8 |t| + 60` terms so that the `(3 + sqrt 8)^-n e^{pi |t|}` truncation
/// term is far below double precision; weights are accumulated in log space.
pub fn eta_zeta(s: Complex64) -> Complex64 {
    let n = (1.8 * s.im.abs()) as usize + 60;
    let nf = n as f64;
    // log of (n+i-1)! 4^i / ((n-i)! (2i)!), built from successive ratios
    let mut log_terms = Vec::with_capacity(n + 1);
    let mut lt = -ln_factorial(n) + nf.ln(); // i = 0: (n-1)!/n! = 1/n, times n later cancels
    log_terms.push(lt);
    for i in 1..=n {
        let fi = i as f64;
        lt += ((nf + fi - 1.0) * 4.0 * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0))).ln();
        log_terms.push(lt);
    }
    let top = log_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_terms.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = weights.iter().sum();
    // d_k / d_n as a running partial sum
    let mut partial = 0.0;
    let mut eta = c(0.0, 0.0);
    for k in 0..n {
        partial += weights[k];
        let dk = partial / total;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = (-s * ((k + 1) as f64).ln()).exp();
        eta += term * (sign * (1.0 - dk));
    }
    let denom = c(1.0, 0.0) - (c(1.0, 0.0) - s).scale(2f64.ln()).exp();
    eta / denom
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|i| (i as f64).ln()).sum()
}

/// `sum_{n>=1} (-log n)^k n^-s` for `Re s > 1`: direct sum to `n_terms` plus an
/// integral tail with two boundary corrections.
pub fn direct_zeta(s: Complex64, k: usize, n_terms: usize) -> Complex64 {
    let f = |x: f64| -> Complex64 { (-s * x.ln()).exp() * (-x.ln()).powi(k as i32) };
    let mut sum = c(0.0, 0.0);
    for n in 1..=n_terms {
        sum += f(n as f64);
    }
    let big_n = n_terms as f64;
    let l = big_n.ln();
    let a = s - c(1.0, 0.0);
    // int_N^inf (log x)^k x^-s dx = e^{-aL} sum_j k!/(k-j)! L^{k-j} / a^{j+1}
    let mut integral = c(0.0, 0.0);
    let mut falling = 1.0;
    for j in 0..=k {
        if j > 0 {
            falling *= (k + 1 - j) as f64;
        }
        integral += a.powi(-(j as i32) - 1) * (falling * l.powi((k - j) as i32));
    }
    integral *= (-a * l).exp();
    if k % 2 == 1 {
        integral = -integral;
    }
    // derivative of f at N
    let lk = |p: i32| if p < 0 { 0.0 } else { l.powi(p) };
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let fprime = (-(s + 1.0) * l).exp() * (sign * (k as f64 * lk(k as i32 - 1))) - (-(s + 1.0) * l).exp() * s * (sign * lk(k as i32));
    sum + integral - f(big_n) * 0.5 - fprime / 12.0
}

/// Hardy's Z(t) with zeta from [`eta_zeta`] and the Stirling expansion of theta.
pub fn hardy_z(t: f64) -> f64 {
    let theta = t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t.powi(3));
    (c(0.0, theta).exp() * eta_zeta(c(0.5, t))).re
}

/// Ordinates of sign changes of Z(t) on `(t_min, t_max)` by a uniform grid, each refined by bisection.
pub fn critical_line_zeros(t_min: f64, t_max: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut a = t_min.max(1.0);
    let mut za = hardy_z(a);
    while a < t_max {
        let b = (a + step).min(t_max);
        let zb = hardy_z(b);
        if za.signum() != zb.signum() {
            let (mut lo, mut hi, mut zlo) = (a, b, za);
            for _ in 0..50 {
                let mid = 0.5 * (lo + hi);
                let zm = hardy_z(mid);
                if zm.signum() == zlo.signum() {
                    lo = mid;
                    zlo = zm;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        a = b;
        za = zb;
    }
    out
}

/// Polynomial with the given roots, as a plain closure.
pub fn poly_from_roots(roots: &[Complex64], s: Complex64) -> Complex64 {
    roots.iter().fold(c(1.0, 0.0), |acc, r| acc * (s - r))
}
