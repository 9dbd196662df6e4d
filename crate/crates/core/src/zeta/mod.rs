//! Riemann zeta function, its derivatives and its reciprocal by Euler-Maclaurin summation.
//!
//! `zeta(s) = sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
//!          + sum_{j=1}^{nu} B_{2j}/(2j)! (s)(s+1)...(s+2j-2) N^{-s-2j+1}`
//!
//! Derivatives are obtained by carrying every term as a truncated Taylor series in the
//! offset `h` (so `n^{-s-h} = n^{-s} e^{-h log n}` and so on), which is exact
//! term-by-term differentiation of the same formula.

mod bernoulli;
mod moebius;

pub use bernoulli::{bernoulli_even, MAX_TERMS as MAX_BERNOULLI_TERMS};
pub use moebius::MoebiusTable;

use num_complex::Complex64;

use crate::analytic::{cauchy_derivative, AnalyticFunction, Pole};
use crate::error::{Error, Result};
use crate::series::PowerSeries;
use bernoulli::EULER_MACLAURIN_WEIGHTS;

/// Highest derivative order served natively by the zeta handles.
pub const MAX_NATIVE_ORDER: usize = 32;

/// Truncation controls for Euler-Maclaurin summation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZetaParams {
    /// Cutoff `N`; `None` picks `max(10, ceil(|t|/2) + 10)` from the imaginary part.
    pub truncation_n: Option<usize>,
    /// Correction depth `nu`, at most [`MAX_BERNOULLI_TERMS`].
    pub bernoulli_terms: usize,
}

impl Default for ZetaParams {
    fn default() -> Self {
        Self { truncation_n: None, bernoulli_terms: 12 }
    }
}

impl ZetaParams {
    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.truncation_n {
            if n < 2 {
                return Err(Error::ParamOutOfRange(format!("zeta.truncation_N must be >= 2, got {n}")));
            }
        }
        if self.bernoulli_terms == 0 || self.bernoulli_terms > MAX_BERNOULLI_TERMS {
            return Err(Error::ParamOutOfRange(format!(
                "zeta.bernoulli_terms must be in 1..={MAX_BERNOULLI_TERMS}, got {}",
                self.bernoulli_terms
            )));
        }
        Ok(())
    }

    /// Cutoff used at imaginary part `t`.
    pub fn cutoff(&self, t: f64) -> usize {
        self.truncation_n
            .unwrap_or_else(|| 10usize.max((t.abs() / 2.0).ceil() as usize + 10))
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Taylor coefficients of `zeta(s + h)` up to `h^k`.
fn zeta_series(s: Complex64, k: usize, params: &ZetaParams) -> Result<PowerSeries<f64>> {
    params.validate()?;
    if (s - c(1.0, 0.0)).norm() <= 1e-14 {
        return Err(Error::PoleAtOne);
    }
    let len = k + 1;
    let n_cut = params.cutoff(s.im);
    let mut acc = vec![c(0.0, 0.0); len];
    for n in 1..n_cut {
        let ln = (n as f64).ln();
        let mut term = (-s * ln).exp();
        for (j, a) in acc.iter_mut().enumerate() {
            *a += term;
            term *= -ln / (j + 1) as f64;
        }
    }

    let big_n = n_cut as f64;
    let ln_n = big_n.ln();
    // N^{-s-h}
    let n_pow = PowerSeries::exp_linear(-s * ln_n, c(-ln_n, 0.0), len);

    // 1 / (s - 1 + h)
    let w = s - c(1.0, 0.0);
    let mut inv = Vec::with_capacity(len);
    let mut q = c(1.0, 0.0) / w;
    for _ in 0..len {
        inv.push(q);
        q = -q / w;
    }
    let mut tail = n_pow.mul(&PowerSeries::new(inv)).scale(c(big_n, 0.0));
    tail = tail.add(&n_pow.scale(c(0.5, 0.0)));

    // rising factorial (s+h)(s+1+h)...(s+2j-2+h) grown two factors at a time
    let mut rising = PowerSeries::linear(s, len);
    let mut n_factor = 1.0 / big_n;
    for j in 1..=params.bernoulli_terms {
        if j > 1 {
            let a = PowerSeries::linear(s + (2 * j - 3) as f64, len);
            let b = PowerSeries::linear(s + (2 * j - 2) as f64, len);
            rising = rising.mul(&a).mul(&b);
            n_factor /= big_n * big_n;
        }
        let weight = EULER_MACLAURIN_WEIGHTS[j - 1] * n_factor;
        tail = tail.add(&rising.mul(&n_pow).scale(c(weight, 0.0)));
    }

    let out = PowerSeries::new(acc).add(&tail);
    if out.coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Evaluation(format!("zeta series not finite at {s}")));
    }
    Ok(out)
}

/// `[zeta(s), zeta'(s), ..., zeta^(k)(s)]`.
pub fn zeta_jet(s: Complex64, k: usize, params: &ZetaParams) -> Result<Vec<Complex64>> {
    Ok(zeta_series(s, k, params)?.derivatives())
}

/// `zeta(s)`, meromorphic with a simple pole at `s = 1`.
pub fn zeta(s: Complex64, params: &ZetaParams) -> Result<Complex64> {
    Ok(zeta_series(s, 0, params)?.coeffs[0])
}

/// `zeta^(k)(s)`.
pub fn zeta_derivative(s: Complex64, k: usize, params: &ZetaParams) -> Result<Complex64> {
    Ok(zeta_jet(s, k, params)?[k])
}

// (s-1) zeta(s) = 1 + g0 (s-1) - g1 (s-1)^2 + ..., Stieltjes constants
const STIELTJES_0: f64 = 0.577_215_664_901_532_9;
const STIELTJES_1: f64 = -0.072_815_845_483_676_72;
const NEAR_ONE: f64 = 1e-4;

/// `1 / zeta(s)` by division; continued by its zero at `s = 1`.
pub fn zeta_reciprocal(s: Complex64, params: &ZetaParams) -> Result<Complex64> {
    let x = s - c(1.0, 0.0);
    if x.norm() < NEAR_ONE {
        return Ok(x / (c(1.0, 0.0) + x * STIELTJES_0 - x * x * STIELTJES_1));
    }
    let z = zeta(s, params)?;
    if z.norm() <= 1e-12 {
        return Err(Error::NearZeroOfZeta { re: s.re, im: s.im });
    }
    Ok(c(1.0, 0.0) / z)
}

/// `[1/zeta, (1/zeta)', ...]` at `s`.
pub fn zeta_reciprocal_jet(s: Complex64, k: usize, params: &ZetaParams) -> Result<Vec<Complex64>> {
    if (s - c(1.0, 0.0)).norm() < 1e-3 {
        // the Taylor expansion of zeta is poor this close to its pole; integrate around it
        let params = *params;
        let f = AnalyticFunction::from_fn("1/zeta", move |z| zeta_reciprocal(z, &params));
        let mut out = vec![zeta_reciprocal(s, &params)?];
        for order in 1..=k {
            out.push(cauchy_derivative(&f, s, order, 0.25)?);
        }
        return Ok(out);
    }
    let series = zeta_series(s, k, params)?;
    if series.coeffs[0].norm() <= 1e-12 {
        return Err(Error::NearZeroOfZeta { re: s.re, im: s.im });
    }
    Ok(series.recip()?.derivatives())
}

/// `zeta` as an [`AnalyticFunction`] with native derivatives.
pub fn zeta_function(params: ZetaParams) -> AnalyticFunction<f64> {
    AnalyticFunction::from_jet("zeta", MAX_NATIVE_ORDER, move |s, k| zeta_jet(s, k, &params))
        .with_poles(vec![Pole::exact(c(1.0, 0.0), 1)])
}

/// `zeta^(k)` as an [`AnalyticFunction`]; pole of order `k + 1` at `s = 1`.
pub fn zeta_derivative_function(k: usize, params: ZetaParams) -> AnalyticFunction<f64> {
    let name = if k == 0 { "zeta".to_string() } else { format!("zeta^({k})") };
    AnalyticFunction::from_jet(name, MAX_NATIVE_ORDER, move |s, m| Ok(zeta_jet(s, k + m, &params)?.split_off(k)))
        .with_poles(vec![Pole::exact(c(1.0, 0.0), k as u32 + 1)])
}

/// `1/zeta` as an [`AnalyticFunction`]. Its poles (zeros of zeta) are not declared;
/// evaluation near one fails with [`Error::NearZeroOfZeta`].
pub fn zeta_reciprocal_function(params: ZetaParams) -> AnalyticFunction<f64> {
    AnalyticFunction::from_jet("1/zeta", MAX_NATIVE_ORDER, move |s, k| zeta_reciprocal_jet(s, k, &params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p() -> ZetaParams {
        ZetaParams::default()
    }

    #[test]
    fn basel_and_reciprocal() {
        let z = zeta(c(2.0, 0.0), &p()).unwrap();
        assert!((z - c(PI * PI / 6.0, 0.0)).norm() < 1e-13);
        let r = zeta_reciprocal(c(2.0, 0.0), &p()).unwrap();
        assert!((r.re - 6.0 / (PI * PI)).abs() < 1e-13);
    }

    #[test]
    fn values_left_of_the_line() {
        assert!((zeta(c(0.0, 0.0), &p()).unwrap() - c(-0.5, 0.0)).norm() < 1e-13);
        assert!((zeta(c(-1.0, 0.0), &p()).unwrap() - c(-1.0 / 12.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn pole_is_rejected() {
        assert_eq!(zeta(c(1.0, 0.0), &p()), Err(Error::PoleAtOne));
        assert_eq!(zeta_derivative(c(1.0, 0.0), 2, &p()), Err(Error::PoleAtOne));
    }

    #[test]
    fn first_derivative_at_two() {
        let d = zeta_derivative(c(2.0, 0.0), 1, &p()).unwrap();
        assert!((d.re + 0.937_548_254_315_843_8).abs() < 1e-12);
        assert!(d.im.abs() < 1e-14);
    }

    #[test]
    fn odd_derivatives_negative_on_real_axis() {
        for k in [1, 3, 5] {
            let d = zeta_derivative(c(1.7, 0.0), k, &p()).unwrap();
            assert!(d.re < 0.0 && d.im.abs() < 1e-12);
        }
    }

    #[test]
    fn reciprocal_is_continuous_through_one() {
        let a = zeta_reciprocal(c(1.0 + 2e-4, 0.0), &p()).unwrap();
        let b = zeta_reciprocal(c(1.0 + 5e-5, 0.0), &p()).unwrap();
        assert!((a.re - 2e-4 * (1.0 - STIELTJES_0 * 2e-4)).abs() < 1e-11);
        assert!((b.re - 5e-5 * (1.0 - STIELTJES_0 * 5e-5)).abs() < 1e-12);
        assert_eq!(zeta_reciprocal(c(1.0, 0.0), &p()).unwrap(), c(0.0, 0.0));
        let jet = zeta_reciprocal_jet(c(1.0, 0.0), 1, &p()).unwrap();
        assert!((jet[1] - c(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn derivative_handle_declares_higher_pole() {
        let f = zeta_derivative_function(2, p());
        assert_eq!(f.poles()[0].order, 3);
        let v = f.eval(c(2.0, 0.0)).unwrap();
        let direct = zeta_derivative(c(2.0, 0.0), 2, &p()).unwrap();
        assert_eq!(v, direct);
    }

    #[test]
    fn params_are_validated() {
        let bad = ZetaParams { truncation_n: Some(1), ..ZetaParams::default() };
        assert!(zeta(c(2.0, 0.0), &bad).is_err());
        let bad = ZetaParams { bernoulli_terms: 31, ..ZetaParams::default() };
        assert!(zeta(c(2.0, 0.0), &bad).is_err());
        assert_eq!(p().cutoff(2000.0), 1010);
        assert_eq!(p().cutoff(3.0), 12);
    }
}
