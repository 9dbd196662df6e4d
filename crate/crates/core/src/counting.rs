//! Zero-density sweeps, Berndt and Levinson-Montgomery comparisons, and mean values.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::analytic::{count_zeros, AnalyticFunction, CountOptions, ZeroReport};
use crate::dirichlet::{ds_eval, mean_square_predicted, GeneralDirichletSeries};
use crate::error::{Error, Result};
use crate::geometry::ComplexRect;
use crate::quad::{integrate, li, DEFAULT_TOL};
use crate::zeta::{zeta_derivative, ZetaParams};

/// Horizontal extent of the rectangle used for `N_k(T)`: all complex zeros of low
/// derivatives of zeta at moderate height lie inside `(-1, 4)`.
pub const NK_SIGMA: (f64, f64) = (-1.0, 4.0);

/// Ordinary least-squares line `y = slope x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual.
    pub residual: f64,
}

/// OLS fit with free intercept; `None` with fewer than two distinct abscissae.
pub fn ols_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return None;
    }
    let mx = xs[..n].iter().sum::<f64>() / n as f64;
    let my = ys[..n].iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs[..n].iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs[..n].iter().zip(&ys[..n]).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs[..n].iter().zip(&ys[..n]).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum();
    Some(LinearFit { slope, intercept, residual: (ss / n as f64).sqrt() })
}

/// Zero counts in `(sigma_1, sigma_2) x (0, T)` over a grid of heights.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySweep {
    pub function: String,
    pub strip: (f64, f64),
    pub t_grid: Vec<f64>,
    /// `None` where counting failed; see `errors`.
    pub counts: Vec<Option<usize>>,
    pub errors: Vec<Option<String>>,
    /// Fit over the successful points.
    pub fit: Option<LinearFit>,
}

impl DensitySweep {
    fn points(&self, upto: usize) -> (Vec<f64>, Vec<f64>) {
        self.t_grid[..upto]
            .iter()
            .zip(&self.counts[..upto])
            .filter_map(|(t, c)| c.map(|c| (*t, c as f64)))
            .unzip()
    }

    pub fn complete(&self) -> bool {
        self.counts.iter().all(Option::is_some)
    }

    pub fn strictly_increasing(&self) -> bool {
        self.complete() && self.counts.windows(2).all(|w| w[0] < w[1])
    }

    /// Header line then `T,count,slope_so_far` rows; failed points leave `count` empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("T,count,slope_so_far\n");
        for (i, t) in self.t_grid.iter().enumerate() {
            let (xs, ys) = self.points(i + 1);
            let slope = ols_fit(&xs, &ys).map(|f| f.slope.to_string()).unwrap_or_default();
            let count = self.counts[i].map(|c| c.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{t},{count},{slope}");
        }
        out
    }

    /// Two whitespace-separated columns `T count`, failed points skipped.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (t, c) in self.t_grid.iter().zip(&self.counts) {
            if let Some(c) = c {
                let _ = writeln!(out, "{t} {c}");
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "function": self.function,
            "strip": [self.strip.0, self.strip.1],
            "t_grid": self.t_grid,
            "counts": self.counts,
            "errors": self.errors,
            "fit": self.fit.map(|f| json!({"slope": f.slope, "intercept": f.intercept, "residual": f.residual})),
        })
    }
}

/// Counts zeros of `f` in `(sigma_1, sigma_2) x (0, T)` for every `T` in the grid, each
/// rectangle independently, then fits a line through `(T, count)`.
pub fn density_sweep(f: &AnalyticFunction<f64>, strip: (f64, f64), t_grid: &[f64]) -> Result<DensitySweep> {
    density_sweep_with(f, strip, t_grid, &CountOptions::default())
}

pub fn density_sweep_with(
    f: &AnalyticFunction<f64>,
    strip: (f64, f64),
    t_grid: &[f64],
    opts: &CountOptions<f64>,
) -> Result<DensitySweep> {
    if !(strip.0 < strip.1) {
        return Err(Error::InvalidInput(format!("empty strip ({}, {})", strip.0, strip.1)));
    }
    if t_grid.windows(2).any(|w| !(w[0] < w[1])) || t_grid.iter().any(|t| !(*t > 0.0)) {
        return Err(Error::InvalidInput("T grid must be positive and increasing".into()));
    }
    let results: Vec<Result<usize>> = t_grid
        .par_iter()
        .map(|&t| {
            let rect = ComplexRect::new(strip.0, strip.1, 0.0, t)?;
            Ok(count_zeros(f, &rect.into(), opts)?.count)
        })
        .collect();
    let counts: Vec<Option<usize>> = results.iter().map(|r| r.as_ref().ok().copied()).collect();
    let errors = results.iter().map(|r| r.as_ref().err().map(|e| e.to_string())).collect();
    let mut sweep = DensitySweep {
        function: f.name().to_string(),
        strip,
        t_grid: t_grid.to_vec(),
        counts,
        errors,
        fit: None,
    };
    let (xs, ys) = sweep.points(t_grid.len());
    sweep.fit = ols_fit(&xs, &ys);
    Ok(sweep)
}

/// `T log T / 2 pi - (1 + log 4 pi) T / 2 pi`, the main term of `N_k(T)` for every `k`.
pub fn berndt_main_term(t: f64) -> f64 {
    t * t.ln() / TAU - (1.0 + (4.0 * PI).ln()) * t / TAU
}

/// `kT log log(T/2pi) - 2 pi k Li(T/2pi) + (log 2 - 2k log log 2) T/2`.
pub fn lm_predicted(k: u32, t: f64) -> Result<f64> {
    let k = f64::from(k);
    let x = t / TAU;
    if !(x > 2.0) {
        return Err(Error::InvalidInput(format!("T/2pi must exceed 2 for Li, got {x}")));
    }
    Ok(k * t * x.ln().ln() - TAU * k * li(x)? + (2f64.ln() - 2.0 * k * 2f64.ln().ln()) * t / 2.0)
}

/// `(2 pi sum (beta - 1/2), predicted)` over the zeros with `0 < gamma <= T` in `zeros`,
/// counted with multiplicity.
pub fn lm_weighted_sum(k: u32, t: f64, zeros: &ZeroReport<f64>) -> Result<(f64, f64)> {
    if !zeros.fully_resolved() {
        return Err(Error::IncompleteZeroSet);
    }
    let empirical = TAU
        * zeros
            .zeros
            .iter()
            .filter(|z| z.location.im > 0.0 && z.location.im <= t)
            .map(|z| f64::from(z.multiplicity) * (z.location.re - 0.5))
            .sum::<f64>();
    Ok((empirical, lm_predicted(k, t)?))
}

/// Outcome of a mean-value integral.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanValueResult {
    /// Abscissa (the first one, `eta`, for the Ingham form).
    pub sigma: f64,
    /// Second abscissa for the Ingham form.
    pub theta: Option<f64>,
    pub u: u32,
    pub v: u32,
    pub t: f64,
    pub integral_over_t: Complex64,
    pub predicted: Option<Complex64>,
    pub rel_error: Option<f64>,
}

impl MeanValueResult {
    /// Attaches a prediction and the relative error against it.
    pub fn with_prediction(mut self, predicted: Complex64) -> Self {
        self.predicted = Some(predicted);
        self.rel_error = (predicted.norm() > 0.0).then(|| (self.integral_over_t - predicted).norm() / predicted.norm());
        self
    }

    pub fn to_json(&self) -> Value {
        let c = |z: Complex64| json!({"re": z.re, "im": z.im});
        json!({
            "sigma": self.sigma,
            "theta": self.theta,
            "u": self.u,
            "v": self.v,
            "T": self.t,
            "integral_over_T": c(self.integral_over_t),
            "predicted": self.predicted.map(c),
            "rel_error": self.rel_error,
        })
    }
}

/// `(1/T) int_0^T |f(sigma + it)|^2 dt`; no prediction attached.
pub fn mean_square_integral(f: &AnalyticFunction<f64>, sigma: f64, t: f64) -> Result<MeanValueResult> {
    mean_square_integral_with(f, sigma, t, DEFAULT_TOL)
}

/// [`mean_square_integral`] with an explicit quadrature tolerance.
pub fn mean_square_integral_with(f: &AnalyticFunction<f64>, sigma: f64, t: f64, tol: f64) -> Result<MeanValueResult> {
    if !(sigma > 0.5) {
        return Err(Error::HypothesisViolation(format!("mean square needs sigma > 1/2, got {sigma}")));
    }
    if !(t > 0.0) {
        return Err(Error::InvalidInput(format!("T must be positive, got {t}")));
    }
    for p in f.poles() {
        if (p.location.re - sigma).abs() < 1e-12 && p.location.im >= 0.0 && p.location.im <= t {
            return Err(Error::InvalidInput("declared pole on the integration segment".into()));
        }
    }
    let total = integrate(|y| Ok(Complex64::new(f.eval(Complex64::new(sigma, y))?.norm_sqr(), 0.0)), 0.0, t, tol)?;
    Ok(MeanValueResult {
        sigma,
        theta: None,
        u: 0,
        v: 0,
        t,
        integral_over_t: total / t,
        predicted: None,
        rel_error: None,
    })
}

/// Mean square of a Dirichlet series, predicted by `sum |a_n|^2 e^{-2 lambda_n sigma}`.
pub fn mean_square_integral_series(a: &GeneralDirichletSeries<f64>, sigma: f64, t: f64, tol: f64) -> Result<MeanValueResult> {
    let series = a.clone();
    let f = AnalyticFunction::from_fn("series", move |s| Ok(ds_eval(&series, s).0));
    let (predicted, _) = mean_square_predicted(a, sigma);
    Ok(mean_square_integral_with(&f, sigma, t, tol)?.with_prediction(Complex64::new(predicted, 0.0)))
}

/// `(1/T) int_1^T zeta^(u)(eta + it) zeta^(v)(theta - it) dt` against `zeta^(u+v)(eta + theta)`.
pub fn ingham_integral(u: u32, v: u32, eta: f64, theta: f64, t: f64) -> Result<MeanValueResult> {
    ingham_integral_with(u, v, eta, theta, t, &ZetaParams::default(), DEFAULT_TOL)
}

pub fn ingham_integral_with(
    u: u32,
    v: u32,
    eta: f64,
    theta: f64,
    t: f64,
    params: &ZetaParams,
    tol: f64,
) -> Result<MeanValueResult> {
    if !(eta > -0.5 && theta > -0.5) {
        return Err(Error::HypothesisViolation(format!("need eta, theta > -1/2 (got {eta}, {theta})")));
    }
    if !(eta + theta > 1.0) {
        return Err(Error::HypothesisViolation(format!("need eta + theta > 1 (got {})", eta + theta)));
    }
    if !(t > 1.0) {
        return Err(Error::InvalidInput(format!("T must exceed 1, got {t}")));
    }
    let integrand = |y: f64| {
        let a = zeta_derivative(Complex64::new(eta, y), u as usize, params)?;
        let b = zeta_derivative(Complex64::new(theta, -y), v as usize, params)?;
        Ok(a * b)
    };
    let total = integrate(integrand, 1.0, t, tol)?;
    let predicted = zeta_derivative(Complex64::new(eta + theta, 0.0), (u + v) as usize, params)?;
    Ok(MeanValueResult {
        sigma: eta,
        theta: Some(theta),
        u,
        v,
        t,
        integral_over_t: total / t,
        predicted: None,
        rel_error: None,
    }
    .with_prediction(predicted))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ols_recovers_line() {
        let f = ols_fit(&[1.0, 2.0, 3.0], &[3.0, 5.0, 7.0]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-14 && (f.intercept - 1.0).abs() < 1e-14 && f.residual < 1e-14);
        assert!(ols_fit(&[1.0], &[1.0]).is_none());
    }

    #[test]
    fn berndt_values() {
        assert!((berndt_main_term(200.0) - 56.25).abs() < 0.01);
        let mut prev = berndt_main_term(50.0);
        for i in 1..=195 {
            let v = berndt_main_term(50.0 + 10.0 * i as f64);
            assert!(v > prev);
            prev = v;
        }
        assert!(berndt_main_term(200.0) > 2.0 * berndt_main_term(100.0));
    }

    #[test]
    fn unit_mean_square_is_one() {
        let one = AnalyticFunction::from_fn("1", |_| Ok(Complex64::new(1.0, 0.0)));
        for t in [0.3, 7.0, 50.0] {
            let r = mean_square_integral(&one, 0.75, t).unwrap();
            assert!((r.integral_over_t.re - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn ingham_hypotheses() {
        assert!(matches!(ingham_integral(0, 0, 0.3, 0.3, 100.0), Err(Error::HypothesisViolation(_))));
        assert!(matches!(ingham_integral(0, 0, -0.6, 2.0, 100.0), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn csv_layout() {
        let s = DensitySweep {
            function: "f".into(),
            strip: (0.5, 1.0),
            t_grid: vec![10.0, 20.0, 30.0],
            counts: vec![Some(1), None, Some(5)],
            errors: vec![None, Some("x".into()), None],
            fit: None,
        };
        let csv = s.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "T,count,slope_so_far");
        assert_eq!(lines[1], "10,1,");
        assert_eq!(lines[2], "20,,");
        assert_eq!(lines[3], "30,5,0.2");
        assert!(!s.complete());
    }
}
