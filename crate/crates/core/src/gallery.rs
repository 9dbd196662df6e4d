//! Ready-made functions built from zeta, with declared poles and expected zero behaviour.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::analytic::{count_zeros_disk, AnalyticFunction, Pole, ZeroReport};
use crate::dirichlet::GeneralDirichletSeries;
use crate::error::{Error, Result};
use crate::geometry::{ComplexRect, Disk};
use crate::poly::{as_analytic, ComposedFunction, DirichletPolynomial};
use crate::scalar::binomial;
use crate::series::PowerSeries;
use crate::zeta::{
    zeta_derivative_function, zeta_function, zeta_jet, zeta_reciprocal_jet, ZetaParams, MAX_NATIVE_ORDER,
};

/// Largest `m` accepted for `Z_m`.
pub const MAX_M: usize = 6;
/// Largest `|Im s|` the gallery entries are validated for.
pub const MAX_HEIGHT: f64 = 2000.0;
/// Default `C` for `G(s) = zeta(s) + C s`.
pub const DEFAULT_G_CONSTANT: Complex64 = Complex64::new(8.0, 8.0);
/// Disk for the shifted `(1 - 9^{9(s - 3/4)}) zeta(s)` check: centre `3/4`, radius `0.2`.
pub const REMARK1_CENTER: f64 = 0.75;
pub const REMARK1_RADIUS: f64 = 0.2;

/// Parameters by name (`k`, `m`, `C`); real parameters use the real part.
pub type Params = BTreeMap<String, Complex64>;

/// A region with the expected zero count relation, checkable by the counting engine.
#[derive(Debug, Clone, PartialEq)]
pub struct Claim {
    pub region: ComplexRect<f64>,
    /// `"eq"` or `"gt"`.
    pub relation: &'static str,
    pub count: usize,
}

impl Claim {
    pub fn holds(&self, count: usize) -> bool {
        match self.relation {
            "eq" => count == self.count,
            _ => count > self.count,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"region": self.region.to_json(), "relation": self.relation, "count": self.count})
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub formula: &'static str,
    /// Parameter names with defaults.
    pub params: Vec<(&'static str, Complex64)>,
    pub expectation: &'static str,
    pub claims: Vec<Claim>,
}

impl GalleryEntry {
    pub fn to_json(&self) -> Value {
        let params: serde_json::Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.to_string(), json!({"re": v.re, "im": v.im})))
            .collect();
        json!({
            "name": self.name,
            "formula": self.formula,
            "params": params,
            "expectation": self.expectation,
            "claims": self.claims.iter().map(Claim::to_json).collect::<Vec<_>>(),
        })
    }
}

fn rect(a: f64, b: f64, c: f64, d: f64) -> ComplexRect<f64> {
    ComplexRect { sigma_min: a, sigma_max: b, t_min: c, t_max: d }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// All entries, in a fixed order.
pub fn entries() -> Vec<GalleryEntry> {
    vec![
        GalleryEntry {
            name: "zeta_k",
            formula: "zeta^(k)(s)",
            params: vec![("k", Complex64::new(1.0, 0.0))],
            expectation: "for k = 1 no zeros with 0 < Re s < 1/2 at moderate height",
            claims: vec![Claim { region: rect(0.0, 0.5, 0.0, 200.0), relation: "eq", count: 0 }],
        },
        GalleryEntry {
            name: "mu",
            formula: "zeta(s) zeta''(s) - zeta'(s)^2",
            params: vec![],
            expectation: "pole of order at most 4 at s = 1; zeros in (0.51, 0.99) x (0, T) grow with T",
            claims: vec![Claim { region: rect(0.51, 0.99, 0.0, 400.0), relation: "gt", count: 0 }],
        },
        GalleryEntry {
            name: "Z_m",
            formula: "(1/zeta(s)) sum_{n=0}^{[m/2]} C(m+1, 2n+1) 2^{m-2n} zeta(s - m + 2n)",
            params: vec![("m", Complex64::new(1.0, 0.0))],
            expectation: "height zeta of projective space; for m = 1 equals 4 zeta(s-1)/zeta(s); poles at s = m+1-2n",
            claims: vec![],
        },
        GalleryEntry {
            name: "G",
            formula: "zeta(s) + C s",
            params: vec![("C", DEFAULT_G_CONSTANT)],
            expectation: "no zeros with Re s > 1/18 and Im s >= 1 for |C| > 10 and -19/2 <= Re C <= 17/2; \
                          the simple pole forces one zero next to s = 1 (about 0.9379+0.0661i for C = 8+8i)",
            claims: vec![
                Claim { region: rect(0.2, 2.0, 1.0, 200.0), relation: "eq", count: 0 },
                Claim { region: rect(0.9, 0.98, 0.0, 0.2), relation: "eq", count: 1 },
            ],
        },
        GalleryEntry {
            name: "F_plus",
            formula: "s - 1 + 2 pi zeta(s-1)/zeta(s+1)",
            params: vec![],
            expectation: "all complex zeros on Re s = 1/2",
            claims: vec![
                Claim { region: rect(0.55, 1.45, 0.0, 50.0), relation: "eq", count: 0 },
                Claim { region: rect(-0.45, 0.45, 0.0, 50.0), relation: "eq", count: 0 },
                Claim { region: rect(0.45, 0.55, 0.0, 50.0), relation: "gt", count: 0 },
            ],
        },
        GalleryEntry {
            name: "F_minus",
            formula: "s - 1 - 2 pi zeta(s-1)/zeta(s+1)",
            params: vec![],
            expectation: "all complex zeros on Re s = 1/2",
            claims: vec![
                Claim { region: rect(0.55, 1.45, 0.0, 50.0), relation: "eq", count: 0 },
                Claim { region: rect(-0.45, 0.45, 0.0, 50.0), relation: "eq", count: 0 },
                Claim { region: rect(0.45, 0.55, 0.0, 50.0), relation: "gt", count: 0 },
            ],
        },
        GalleryEntry {
            name: "remark1",
            formula: "(1 - 9^{9(s - 3/4)}) zeta(s) + 2",
            params: vec![],
            expectation: "every vertical shift of F - 2 has a zero in the disk |s - 3/4| < 0.2",
            claims: vec![],
        },
        GalleryEntry {
            name: "exp_zeta",
            formula: "exp(zeta(s))",
            params: vec![],
            expectation: "never vanishes, although it is not a polynomial in zeta",
            claims: vec![Claim { region: rect(0.55, 0.95, 0.0, 100.0), relation: "eq", count: 0 }],
        },
    ]
}

pub fn describe(name: &str) -> Result<GalleryEntry> {
    entries().into_iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

fn param(params: &Params, name: &str, default: Complex64) -> Complex64 {
    params.get(name).copied().unwrap_or(default)
}

fn small_int(params: &Params, name: &str, default: usize, max: usize) -> Result<usize> {
    let v = param(params, name, Complex64::new(default as f64, 0.0));
    if v.im != 0.0 || v.re.fract() != 0.0 || v.re < 0.0 || v.re > max as f64 {
        return Err(Error::ParamOutOfRange(format!("{name} must be an integer in [0, {max}], got {v}")));
    }
    Ok(v.re as usize)
}

fn height_guard(f: AnalyticFunction<f64>) -> AnalyticFunction<f64> {
    f.with_domain(rect(f64::NEG_INFINITY, f64::INFINITY, -MAX_HEIGHT, MAX_HEIGHT))
}

/// The `mu` polynomial `X_0 X_2 - X_1^2`.
pub fn mu_polynomial() -> DirichletPolynomial<f64> {
    let c = |re| GeneralDirichletSeries::constant(Complex64::new(re, 0.0));
    DirichletPolynomial::new(3, vec![(vec![1, 0, 1], c(1.0)), (vec![0, 2, 0], c(-1.0))])
        .expect("mu polynomial is within caps")
}

fn jet_fn(
    name: String,
    poles: Vec<Pole<f64>>,
    f: impl Fn(Complex64, usize) -> Result<Vec<Complex64>> + Send + Sync + 'static,
) -> AnalyticFunction<f64> {
    AnalyticFunction::from_jet(name, MAX_NATIVE_ORDER, f).with_poles(poles)
}

fn series(d: Vec<Complex64>) -> PowerSeries<f64> {
    PowerSeries::from_derivatives(&d)
}

/// `Z_m` by the binomial sum; poles of `zeta(s - m + 2n)` at `s = m + 1 - 2n` (none for
/// the `n = m/2` term, which is identically one after division).
pub fn z_m(m: usize, zp: ZetaParams) -> Result<AnalyticFunction<f64>> {
    if m == 0 || m > MAX_M {
        return Err(Error::ParamOutOfRange(format!("m must lie in [1, {MAX_M}], got {m}")));
    }
    let terms: Vec<(f64, f64)> = (0..=m / 2)
        .map(|n| (binomial::<f64>(m + 1, 2 * n + 1) * 2f64.powi((m - 2 * n) as i32), (2 * n) as f64 - m as f64))
        .collect();
    let poles = terms
        .iter()
        .filter(|(_, shift)| *shift != 0.0)
        .map(|(_, shift)| Pole::exact(Complex64::new(1.0 - shift, 0.0), 1))
        .collect();
    let f = jet_fn(format!("Z_{m}"), poles, move |s, k| {
        let mut sum = PowerSeries::zero(k + 1);
        for &(c, shift) in &terms {
            let part = if shift == 0.0 {
                series(zeta_jet(s, k, &zp)?)
            } else {
                series(zeta_jet(s + shift, k, &zp)?)
            };
            sum = sum.add(&part.scale(Complex64::new(c, 0.0)));
        }
        Ok(sum.mul(&series(zeta_reciprocal_jet(s, k, &zp)?)).derivatives())
    });
    Ok(if m >= 2 {
        // zeros of zeta become poles; validated only where zeta has none
        f.with_domain(rect(m as f64 - 0.5, m as f64, -MAX_HEIGHT, MAX_HEIGHT))
    } else {
        height_guard(f)
    })
}

/// `s - 1 + sign 2 pi zeta(s - 1) / zeta(s + 1)`.
pub fn f_pm(sign: f64, zp: ZetaParams) -> AnalyticFunction<f64> {
    let name = if sign > 0.0 { "F_plus" } else { "F_minus" };
    height_guard(jet_fn(name.into(), vec![Pole::exact(Complex64::new(2.0, 0.0), 1)], move |s, k| {
        let one = Complex64::new(1.0, 0.0);
        let ratio = series(zeta_jet(s - one, k, &zp)?).mul(&series(zeta_reciprocal_jet(s + one, k, &zp)?));
        let mut out = ratio.scale(Complex64::new(sign * std::f64::consts::TAU, 0.0));
        out = out.add(&PowerSeries::linear(s - one, k + 1));
        Ok(out.derivatives())
    }))
}

/// `(1 - 9^{9(s + i tau - 3/4)}) zeta(s + i tau) + offset`.
pub fn remark1(tau: f64, offset: Complex64, zp: ZetaParams) -> AnalyticFunction<f64> {
    let b = 9.0 * 9f64.ln();
    let shift = Complex64::new(0.0, tau);
    jet_fn("remark1".into(), vec![Pole::exact(Complex64::new(1.0, -tau), 1)], move |s, k| {
        let z = s + shift;
        let e = PowerSeries::exp_linear((z - REMARK1_CENTER) * b, Complex64::new(b, 0.0), k + 1);
        let mut factor = e.scale(Complex64::new(-1.0, 0.0));
        factor.coeffs[0] += Complex64::new(1.0, 0.0);
        let mut out = factor.mul(&series(zeta_jet(z, k, &zp)?));
        out.coeffs[0] += offset;
        Ok(out.derivatives())
    })
}

/// `exp(zeta(s))`; the singularity at `s = 1` is essential, so no pole is declared.
pub fn exp_zeta(zp: ZetaParams) -> AnalyticFunction<f64> {
    height_guard(jet_fn("exp_zeta".into(), vec![], move |s, k| {
        Ok(series(zeta_jet(s, k, &zp)?).exp().derivatives())
    }))
}

/// `zeta(s) + C s`.
pub fn g_function(c: Complex64, zp: ZetaParams) -> AnalyticFunction<f64> {
    height_guard(jet_fn(format!("G[C={c}]"), vec![Pole::exact(Complex64::new(1.0, 0.0), 1)], move |s, k| {
        let mut out = series(zeta_jet(s, k, &zp)?);
        out = out.add(&PowerSeries::linear(s, k + 1).scale(c));
        Ok(out.derivatives())
    }))
}

/// Builds entry `name`; unknown parameter names are rejected.
pub fn build(name: &str, params: &Params) -> Result<AnalyticFunction<f64>> {
    build_with(name, params, ZetaParams::default())
}

pub fn build_with(name: &str, params: &Params, zp: ZetaParams) -> Result<AnalyticFunction<f64>> {
    let entry = describe(name)?;
    if let Some(bad) = params.keys().find(|k| !entry.params.iter().any(|(p, _)| p == k)) {
        return Err(Error::ParamOutOfRange(format!("{name} takes no parameter `{bad}`")));
    }
    match name {
        "zeta_k" => {
            let k = small_int(params, "k", 1, MAX_NATIVE_ORDER)?;
            Ok(height_guard(if k == 0 { zeta_function(zp) } else { zeta_derivative_function(k, zp) }))
        }
        "mu" => Ok(height_guard(as_analytic(&ComposedFunction::new(mu_polynomial(), zeta_function(zp))))),
        "Z_m" => z_m(small_int(params, "m", 1, MAX_M)?, zp),
        "G" => Ok(g_function(param(params, "C", DEFAULT_G_CONSTANT), zp)),
        "F_plus" => Ok(f_pm(1.0, zp)),
        "F_minus" => Ok(f_pm(-1.0, zp)),
        "remark1" => Ok(height_guard(remark1(0.0, Complex64::new(2.0, 0.0), zp))),
        "exp_zeta" => Ok(exp_zeta(zp)),
        _ => Err(Error::UnknownEntry(name.to_string())),
    }
}

/// Counts zeros of `F(s + i tau) - 2 = (1 - 9^{9(s + i tau - 3/4)}) zeta(s + i tau)` in the
/// disk `|s - 3/4| < 0.2`.
pub fn remark1_disk_check(tau: f64) -> Result<ZeroReport<f64>> {
    let f = remark1(tau, zero(), ZetaParams::default());
    count_zeros_disk(&f, &Disk::new(Complex64::new(REMARK1_CENTER, 0.0), REMARK1_RADIUS)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn every_entry_builds_and_evaluates() {
        let points = [c(2.5, 0.3), c(0.7, 14.0), c(1.5, -3.0)];
        for e in entries() {
            let mut p = Params::new();
            if e.name == "Z_m" {
                p.insert("m".into(), c(1.0, 0.0));
            }
            let f = build(e.name, &p).unwrap();
            for s in points {
                let v = f.eval(s).unwrap();
                assert!(v.re.is_finite() && v.im.is_finite(), "{} at {s}", e.name);
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(build("nope", &Params::new()).err(), Some(Error::UnknownEntry("nope".into())));
        let mut p = Params::new();
        p.insert("m".into(), c(7.0, 0.0));
        assert!(matches!(build("Z_m", &p), Err(Error::ParamOutOfRange(_))));
        p.insert("m".into(), c(1.5, 0.0));
        assert!(matches!(build("Z_m", &p), Err(Error::ParamOutOfRange(_))));
        let mut q = Params::new();
        q.insert("x".into(), c(1.0, 0.0));
        assert!(matches!(build("mu", &q), Err(Error::ParamOutOfRange(_))));
    }

    #[test]
    fn z_m_poles() {
        let f = z_m(4, ZetaParams::default()).unwrap();
        let locs: Vec<f64> = f.poles().iter().map(|p| p.location.re).collect();
        assert_eq!(locs, vec![5.0, 3.0]);
    }

    #[test]
    fn remark1_at_zero_shift_vanishes_at_centre() {
        let f = remark1(0.0, zero(), ZetaParams::default());
        assert!(f.eval(c(0.75, 0.0)).unwrap().norm() < 1e-14);
    }
}
