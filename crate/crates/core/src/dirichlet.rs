//! General Dirichlet series `sum a_n e^{-lambda_n s}` truncated to finitely many terms,
//! with a caller-declared majorant for the dropped tail.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{cx, is_finite, Real, C};

/// Default number of stored terms for ordinary series.
pub const DEFAULT_ORDINARY_TERMS: usize = 10_000;
/// Default bound on pairwise products in [`ring_mul`].
pub const DEFAULT_MUL_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletTerm<T> {
    pub a: C<T>,
    pub lambda: T,
}

/// Upper bound on `sum_{dropped} |a_n| e^{-lambda_n sigma}` as a function of `sigma`.
#[derive(Debug, Clone, PartialEq)]
pub enum TailMajorant<T> {
    /// Nothing was dropped.
    Zero,
    /// `A e^{-Lambda sigma}` for `sigma > 1/2`.
    Exponential { a: T, lambda: T },
    /// Ordinary series with `|c_n| <= C n^theta` cut after `n = cutoff` and evaluated at
    /// `sigma + shift`: integral test `C N^{1+theta-sigma'} / (sigma' - theta - 1)`,
    /// infinite when `sigma' <= 1 + theta`.
    PowerLaw { c: T, theta: T, cutoff: T, shift: T },
    Sum(Arc<TailMajorant<T>>, Arc<TailMajorant<T>>),
    /// Tail of the product of two truncated series.
    Product(Arc<GeneralDirichletSeries<T>>, Arc<GeneralDirichletSeries<T>>),
    /// `factor * inner`; `heuristic` marks bounds that are not rigorous.
    Scaled { factor: T, inner: Arc<TailMajorant<T>>, heuristic: bool },
}

fn mul_bound<T: Real>(x: T, y: T) -> T {
    if x == T::zero() || y == T::zero() {
        T::zero()
    } else {
        x * y
    }
}

impl<T: Real> TailMajorant<T> {
    pub fn bound(&self, sigma: T) -> T {
        let half = T::lit(0.5);
        match self {
            TailMajorant::Zero => T::zero(),
            TailMajorant::Exponential { a, lambda } => {
                if sigma > half {
                    *a * (-*lambda * sigma).exp()
                } else {
                    T::infinity()
                }
            }
            TailMajorant::PowerLaw { c, theta, cutoff, shift } => {
                let sp = sigma + *shift;
                let excess = sp - *theta - T::one();
                if sigma <= half || excess <= T::zero() {
                    T::infinity()
                } else {
                    *c * cutoff.powf(-excess) / excess
                }
            }
            TailMajorant::Sum(a, b) => a.bound(sigma) + b.bound(sigma),
            TailMajorant::Product(l, r) => {
                let (tl, tr) = (l.tail.bound(sigma), r.tail.bound(sigma));
                let (al, ar) = (l.abs_sum(sigma), r.abs_sum(sigma));
                mul_bound(al, tr) + mul_bound(tl, ar) + mul_bound(tl, tr)
            }
            TailMajorant::Scaled { factor, inner, .. } => mul_bound(*factor, inner.bound(sigma)),
        }
    }

    /// Upper bound on `sum_{dropped} |a_n|^2 e^{-2 lambda_n sigma}`. Power-law tails use
    /// the integral test on the squared terms; other forms fall back to `bound^2`.
    pub fn square_bound(&self, sigma: T) -> T {
        match self {
            TailMajorant::PowerLaw { c, theta, cutoff, shift } => {
                let two = T::lit(2.0);
                let excess = two * (sigma + *shift) - two * *theta - T::one();
                if sigma <= T::lit(0.5) || excess <= T::zero() {
                    T::infinity()
                } else {
                    *c * *c * cutoff.powf(-excess) / excess
                }
            }
            _ => {
                let b = self.bound(sigma);
                b * b
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            TailMajorant::Zero => true,
            TailMajorant::Exponential { a, .. } => *a == T::zero(),
            TailMajorant::PowerLaw { c, .. } => *c == T::zero(),
            TailMajorant::Sum(a, b) => a.is_zero() && b.is_zero(),
            TailMajorant::Product(l, r) => l.tail.is_zero() && r.tail.is_zero(),
            TailMajorant::Scaled { factor, inner, .. } => *factor == T::zero() || inner.is_zero(),
        }
    }

    /// True when any component is a heuristic guard rather than a proven bound.
    pub fn is_heuristic(&self) -> bool {
        match self {
            TailMajorant::Zero | TailMajorant::Exponential { .. } | TailMajorant::PowerLaw { .. } => false,
            TailMajorant::Sum(a, b) => a.is_heuristic() || b.is_heuristic(),
            TailMajorant::Product(l, r) => l.tail.is_heuristic() || r.tail.is_heuristic(),
            TailMajorant::Scaled { heuristic, inner, .. } => *heuristic || inner.is_heuristic(),
        }
    }

    fn sum(a: Self, b: Self) -> Self {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => TailMajorant::Zero,
            (true, false) => b,
            (false, true) => a,
            _ => TailMajorant::Sum(Arc::new(a), Arc::new(b)),
        }
    }

    fn scaled(self, factor: T, heuristic: bool) -> Self {
        if self.is_zero() {
            return TailMajorant::Zero;
        }
        if factor == T::one() && !heuristic {
            return self;
        }
        TailMajorant::Scaled { factor, inner: Arc::new(self), heuristic }
    }

    pub fn to_json(&self) -> Value {
        match self {
            TailMajorant::Zero => json!({"A": 0.0, "Lambda": 0.0}),
            TailMajorant::Exponential { a, lambda } => json!({"A": a.as_f64(), "Lambda": lambda.as_f64()}),
            TailMajorant::PowerLaw { c, theta, cutoff, shift } => json!({"power_law": {
                "C": c.as_f64(), "theta": theta.as_f64(), "cutoff": cutoff.as_f64(), "shift": shift.as_f64()
            }}),
            TailMajorant::Sum(a, b) => json!({"sum": [a.to_json(), b.to_json()]}),
            TailMajorant::Product(l, r) => json!({"product": [l.to_json(), r.to_json()]}),
            TailMajorant::Scaled { factor, inner, heuristic } => json!({"scaled": {
                "factor": factor.as_f64(), "heuristic": heuristic, "inner": inner.to_json()
            }}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let num = |v: &Value, key: &str| -> Result<T> {
            v.get(key)
                .and_then(Value::as_f64)
                .map(T::lit)
                .ok_or_else(|| Error::InvalidInput(format!("tail field `{key}` missing or not a number")))
        };
        if let Some(p) = v.get("power_law") {
            return Ok(TailMajorant::PowerLaw {
                c: num(p, "C")?,
                theta: num(p, "theta")?,
                cutoff: num(p, "cutoff")?,
                shift: num(p, "shift")?,
            });
        }
        if let Some(arr) = v.get("sum").and_then(Value::as_array) {
            if arr.len() != 2 {
                return Err(Error::InvalidInput("tail `sum` needs two entries".into()));
            }
            return Ok(TailMajorant::Sum(Arc::new(Self::from_json(&arr[0])?), Arc::new(Self::from_json(&arr[1])?)));
        }
        if let Some(arr) = v.get("product").and_then(Value::as_array) {
            if arr.len() != 2 {
                return Err(Error::InvalidInput("tail `product` needs two entries".into()));
            }
            return Ok(TailMajorant::Product(
                Arc::new(GeneralDirichletSeries::from_json(&arr[0])?),
                Arc::new(GeneralDirichletSeries::from_json(&arr[1])?),
            ));
        }
        if let Some(s) = v.get("scaled") {
            let inner = s.get("inner").ok_or_else(|| Error::InvalidInput("scaled tail lacks `inner`".into()))?;
            return Ok(TailMajorant::Scaled {
                factor: num(s, "factor")?,
                inner: Arc::new(Self::from_json(inner)?),
                heuristic: s.get("heuristic").and_then(Value::as_bool).unwrap_or(true),
            });
        }
        let a = num(v, "A")?;
        let lambda = num(v, "Lambda")?;
        if a < T::zero() {
            return Err(Error::InvalidInput("tail constant A must be non-negative".into()));
        }
        if a == T::zero() {
            Ok(TailMajorant::Zero)
        } else {
            Ok(TailMajorant::Exponential { a, lambda })
        }
    }
}

/// Declared growth `|c_n| <= c n^theta` of ordinary-series coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Growth<T> {
    pub c: T,
    pub theta: T,
}

/// Truncated general Dirichlet series with strictly increasing exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralDirichletSeries<T> {
    terms: Vec<DirichletTerm<T>>,
    tail: TailMajorant<T>,
}

fn merge_tolerance<T: Real>(lambda: T) -> T {
    T::lit(1e-12) * T::one().max(lambda.abs())
}

impl<T: Real> GeneralDirichletSeries<T> {
    /// Sorts by exponent, merges exponents that agree to `1e-12` relative and drops
    /// zero coefficients.
    pub fn new(terms: Vec<DirichletTerm<T>>, tail: TailMajorant<T>) -> Result<Self> {
        if terms.iter().any(|t| !is_finite(t.a) || !t.lambda.is_finite()) {
            return Err(Error::InvalidInput("series term is not finite".into()));
        }
        let s = Self { terms: normalize(terms), tail };
        // abscissa guard on the stored part
        if !s.abs_sum(T::lit(0.51)).is_finite() {
            return Err(Error::InvalidInput("series overflows at sigma = 0.51".into()));
        }
        Ok(s)
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new(), tail: TailMajorant::Zero }
    }

    /// The constant `c` (one term at exponent 0).
    pub fn constant(c: C<T>) -> Self {
        Self::single(c, T::zero())
    }

    pub fn unit() -> Self {
        Self::constant(cx(T::one(), T::zero()))
    }

    /// `a e^{-lambda s}`.
    pub fn single(a: C<T>, lambda: T) -> Self {
        Self { terms: normalize(vec![DirichletTerm { a, lambda }]), tail: TailMajorant::Zero }
    }

    pub fn terms(&self) -> &[DirichletTerm<T>] {
        &self.terms
    }

    pub fn tail(&self) -> &TailMajorant<T> {
        &self.tail
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// No stored terms and a vanishing tail.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.tail.is_zero()
    }

    /// `Some(c)` when the series is the constant `c` (single exponent 0, no tail).
    pub fn as_constant(&self) -> Option<C<T>> {
        if !self.tail.is_zero() {
            return None;
        }
        match self.terms.as_slice() {
            [] => Some(cx(T::zero(), T::zero())),
            [t] if t.lambda == T::zero() => Some(t.a),
            _ => None,
        }
    }

    /// `sum |a_n| e^{-lambda_n sigma}` over stored terms.
    pub fn abs_sum(&self, sigma: T) -> T {
        self.terms.iter().fold(T::zero(), |acc, t| acc + t.a.norm() * (-t.lambda * sigma).exp())
    }

    /// Largest `|lambda_n|` among stored terms.
    pub fn max_abs_lambda(&self) -> T {
        self.terms.iter().fold(T::zero(), |m, t| m.max(t.lambda.abs()))
    }

    /// `c * A`.
    pub fn scale(&self, c: C<T>) -> Self {
        if c.norm() == T::zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|t| DirichletTerm { a: t.a * c, lambda: t.lambda }).collect(),
            tail: self.tail.clone().scaled(c.norm(), false),
        }
    }

    /// The series of `s -> A(s + i tau)`: `a_n -> a_n e^{-i lambda_n tau}`.
    pub fn rotated(&self, tau: T) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| DirichletTerm { a: t.a * C::from_polar(T::one(), -t.lambda * tau), lambda: t.lambda })
                .collect(),
            tail: self.tail.clone(),
        }
    }

    /// `[A(s), A'(s), ..., A^(k)(s)]` of the stored part.
    pub fn jet(&self, s: C<T>, k: usize) -> Vec<C<T>> {
        let mut out = vec![cx(T::zero(), T::zero()); k + 1];
        for t in &self.terms {
            let mut v = t.a * (-s * t.lambda).exp();
            for o in out.iter_mut() {
                *o = *o + v;
                v = v * (-t.lambda);
            }
        }
        out
    }

    /// Dense JSON form: `{"terms":[{"a_re","a_im","lambda"}],"tail":{...}}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| json!({"a_re": t.a.re.as_f64(), "a_im": t.a.im.as_f64(), "lambda": t.lambda.as_f64()}))
            .collect();
        json!({"terms": terms, "tail": self.tail.to_json()})
    }

    /// Accepts the dense form or `{"ordinary":{"coeffs":[...],"shift":..,"growth":{"C","theta"}}}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        if let Some(o) = v.get("ordinary") {
            let coeffs = o
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidInput("ordinary series needs a `coeffs` array".into()))?
                .iter()
                .map(complex_from_json::<T>)
                .collect::<Result<Vec<_>>>()?;
            let shift = o.get("shift").and_then(Value::as_f64).map(T::lit).unwrap_or_else(T::zero);
            let growth = match o.get("growth") {
                Some(g) => Some(Growth {
                    c: g.get("C").and_then(Value::as_f64).map(T::lit).ok_or_else(|| Error::InvalidInput("growth needs `C`".into()))?,
                    theta: g
                        .get("theta")
                        .and_then(Value::as_f64)
                        .map(T::lit)
                        .ok_or_else(|| Error::InvalidInput("growth needs `theta`".into()))?,
                }),
                None => None,
            };
            return make_ordinary(&coeffs, shift, growth);
        }
        let arr = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("series JSON needs `terms` or `ordinary`".into()))?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let f = |k: &str| t.get(k).and_then(Value::as_f64);
            let lambda = f("lambda").ok_or_else(|| Error::InvalidInput("term lacks `lambda`".into()))?;
            terms.push(DirichletTerm {
                a: cx(T::lit(f("a_re").unwrap_or(0.0)), T::lit(f("a_im").unwrap_or(0.0))),
                lambda: T::lit(lambda),
            });
        }
        let tail = match v.get("tail") {
            Some(Value::Null) | None => TailMajorant::Zero,
            Some(t) => TailMajorant::from_json(t)?,
        };
        Self::new(terms, tail)
    }
}

fn complex_from_json<T: Real>(v: &Value) -> Result<C<T>> {
    match v {
        Value::Number(n) => Ok(cx(T::lit(n.as_f64().unwrap_or(f64::NAN)), T::zero())),
        Value::Array(a) if a.len() == 2 => match (a[0].as_f64(), a[1].as_f64()) {
            (Some(re), Some(im)) => Ok(cx(T::lit(re), T::lit(im))),
            _ => Err(Error::InvalidInput("complex pair must hold two numbers".into())),
        },
        Value::Object(_) => {
            let re = v.get("re").and_then(Value::as_f64).unwrap_or(0.0);
            let im = v.get("im").and_then(Value::as_f64).unwrap_or(0.0);
            Ok(cx(T::lit(re), T::lit(im)))
        }
        _ => Err(Error::InvalidInput(format!("cannot read complex number from {v}"))),
    }
}

fn normalize<T: Real>(mut terms: Vec<DirichletTerm<T>>) -> Vec<DirichletTerm<T>> {
    terms.sort_by(|x, y| x.lambda.partial_cmp(&y.lambda).unwrap_or(std::cmp::Ordering::Equal));
    let mut out: Vec<DirichletTerm<T>> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if (t.lambda - last.lambda).abs() <= merge_tolerance(last.lambda) => last.a = last.a + t.a,
            _ => out.push(t),
        }
    }
    out.retain(|t| t.a.norm() != T::zero());
    out
}

/// `sum_n c_n n^{-(s + shift)}`, stored as `a_n = c_n n^{-shift}`, `lambda_n = log n`.
///
/// With `growth = Some(..)` the coefficients are checked against the declared bound and
/// the series carries the integral-test tail for the dropped `n > len`; with `None` the
/// series is treated as finite.
pub fn make_ordinary<T: Real>(coeffs: &[C<T>], shift: T, growth: Option<Growth<T>>) -> Result<GeneralDirichletSeries<T>> {
    let mut terms = Vec::with_capacity(coeffs.len());
    for (i, c) in coeffs.iter().enumerate() {
        let n = T::from_usize_lossy(i + 1);
        if let Some(g) = growth {
            let cap = g.c * n.powf(g.theta) * (T::one() + T::lit(1e-12));
            if c.norm() > cap {
                return Err(Error::GrowthViolation { index: i + 1 });
            }
        }
        let ln = n.ln();
        terms.push(DirichletTerm { a: *c * (-shift * ln).exp(), lambda: ln });
    }
    let tail = match growth {
        Some(g) => TailMajorant::PowerLaw { c: g.c, theta: g.theta, cutoff: T::from_usize_lossy(coeffs.len()), shift },
        None => TailMajorant::Zero,
    };
    GeneralDirichletSeries::new(terms, tail)
}

/// Partial sum of `zeta(s)` with `n_terms` terms and the `|c_n| <= 1` tail.
pub fn partial_zeta<T: Real>(n_terms: usize) -> GeneralDirichletSeries<T> {
    let ones = vec![cx(T::one(), T::zero()); n_terms];
    make_ordinary(&ones, T::zero(), Some(Growth { c: T::one(), theta: T::zero() })).expect("unit coefficients")
}

pub fn ring_add<T: Real>(a: &GeneralDirichletSeries<T>, b: &GeneralDirichletSeries<T>) -> GeneralDirichletSeries<T> {
    let mut terms = a.terms.clone();
    terms.extend_from_slice(&b.terms);
    GeneralDirichletSeries { terms: normalize(terms), tail: TailMajorant::sum(a.tail.clone(), b.tail.clone()) }
}

pub fn ring_mul<T: Real>(a: &GeneralDirichletSeries<T>, b: &GeneralDirichletSeries<T>) -> Result<GeneralDirichletSeries<T>> {
    ring_mul_with_budget(a, b, DEFAULT_MUL_BUDGET)
}

pub fn ring_mul_with_budget<T: Real>(
    a: &GeneralDirichletSeries<T>,
    b: &GeneralDirichletSeries<T>,
    budget: usize,
) -> Result<GeneralDirichletSeries<T>> {
    let needed = a.len().saturating_mul(b.len());
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut terms = Vec::with_capacity(needed);
    for x in &a.terms {
        for y in &b.terms {
            terms.push(DirichletTerm { a: x.a * y.a, lambda: x.lambda + y.lambda });
        }
    }
    let tail = if a.tail.is_zero() && b.tail.is_zero() {
        TailMajorant::Zero
    } else {
        TailMajorant::Product(Arc::new(a.clone()), Arc::new(b.clone()))
    };
    Ok(GeneralDirichletSeries { terms: normalize(terms), tail })
}

/// Termwise `k`-th derivative `a_n (-lambda_n)^k`. The tail majorant is multiplied by
/// `max(1, max |lambda_n|)^k` and flagged heuristic.
pub fn ds_derivative<T: Real>(a: &GeneralDirichletSeries<T>, k: usize) -> GeneralDirichletSeries<T> {
    let terms = a
        .terms
        .iter()
        .map(|t| DirichletTerm { a: t.a * (-t.lambda).powi(k as i32), lambda: t.lambda })
        .collect();
    let guard = T::one().max(a.max_abs_lambda()).powi(k as i32);
    let tail = if k == 0 { a.tail.clone() } else { a.tail.clone().scaled(guard, true) };
    GeneralDirichletSeries { terms: normalize(terms), tail }
}

/// Value of the stored part at `s` and the tail bound at `Re s` (infinite for `Re s <= 1/2`).
pub fn ds_eval<T: Real>(a: &GeneralDirichletSeries<T>, s: C<T>) -> (C<T>, T) {
    let value = a.terms.iter().fold(cx(T::zero(), T::zero()), |acc, t| acc + t.a * (-s * t.lambda).exp());
    (value, a.tail.bound(s.re))
}

/// Carlson mean square `sum |a_n|^2 e^{-2 lambda_n sigma}` over stored terms, with a
/// bound on the dropped part.
pub fn mean_square_predicted<T: Real>(a: &GeneralDirichletSeries<T>, sigma: T) -> (T, T) {
    let two = T::lit(2.0);
    let v = a.terms.iter().fold(T::zero(), |acc, t| acc + t.a.norm_sqr() * (-two * t.lambda * sigma).exp());
    (v, a.tail.square_bound(sigma))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn single_term_remark_one_series() {
        // 9^{9(s - 3/4)} = 9^{-27/4} e^{-(-9 log 9) s}
        let l9 = 9f64.ln();
        let a = GeneralDirichletSeries::single(c((-6.75 * l9).exp(), 0.0), -9.0 * l9);
        let (v, tail) = ds_eval(&a, c(0.75, 0.0));
        assert!((v - c(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(tail, 0.0);
    }

    #[test]
    fn merges_and_prunes() {
        let a = GeneralDirichletSeries::single(c(1.0, 2.0), 1.0);
        let b = GeneralDirichletSeries::single(c(-1.0, 1.0), 1.0 + 1e-15);
        let s = ring_add(&a, &b);
        assert_eq!(s.len(), 1);
        assert_eq!(s.terms()[0].a, c(0.0, 3.0));
        let z = ring_add(&partial_zeta::<f64>(50), &partial_zeta::<f64>(50).scale(c(-1.0, 0.0)));
        assert!(z.is_empty());
    }

    #[test]
    fn identities() {
        let a = partial_zeta::<f64>(30);
        assert_eq!(ring_add(&a, &GeneralDirichletSeries::zero()).terms(), a.terms());
        assert_eq!(ring_mul(&a, &GeneralDirichletSeries::unit()).unwrap().terms(), a.terms());
        let p = ring_mul(&GeneralDirichletSeries::single(c(2.0, 0.0), 0.5), &GeneralDirichletSeries::single(c(0.0, 3.0), 1.5)).unwrap();
        assert_eq!(p.terms(), &[DirichletTerm { a: c(0.0, 6.0), lambda: 2.0 }]);
    }

    #[test]
    fn mul_budget() {
        let a = partial_zeta::<f64>(100);
        assert!(matches!(ring_mul_with_budget(&a, &a, 9_999), Err(Error::BudgetExceeded { needed: 10_000, .. })));
    }

    #[test]
    fn derivative_rules() {
        assert!(ds_derivative(&GeneralDirichletSeries::<f64>::unit(), 1).is_empty());
        let d = ds_derivative(&GeneralDirichletSeries::single(c(1.0, 0.0), 3.0), 2);
        assert_eq!(d.terms(), &[DirichletTerm { a: c(9.0, 0.0), lambda: 3.0 }]);
        let z = ds_derivative(&partial_zeta::<f64>(10), 1);
        assert!(z.tail().is_heuristic());
    }

    #[test]
    fn partial_zeta_tail() {
        let a = partial_zeta::<f64>(10_000);
        let (v, tail) = ds_eval(&a, c(2.0, 0.0));
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!((v.re - exact).abs() <= tail);
        assert!(tail <= 1e-4 + 1e-12);
        assert!(ds_eval(&a, c(0.75, 0.0)).1.is_infinite());
        assert!(ds_eval(&a, c(0.4, 0.0)).1.is_infinite());
    }

    #[test]
    fn growth_is_checked() {
        let coeffs = vec![c(1.0, 0.0), c(5.0, 0.0)];
        let g = Growth { c: 1.0, theta: 0.5 };
        assert_eq!(make_ordinary(&coeffs, 0.0, Some(g)), Err(Error::GrowthViolation { index: 2 }));
    }

    #[test]
    fn mean_square_of_single_term() {
        let a = GeneralDirichletSeries::single(c(3.0, 4.0), 0.7);
        let (v, t) = mean_square_predicted(&a, 0.9);
        assert!((v - 25.0 * (-2.0f64 * 0.7 * 0.9).exp()).abs() < 1e-13);
        assert_eq!(t, 0.0);
        assert_eq!(mean_square_predicted(&GeneralDirichletSeries::<f64>::zero(), 0.9).0, 0.0);
        let (v, t) = mean_square_predicted(&partial_zeta::<f64>(10_000), 0.75);
        assert!((v + t - 2.612_375_348_685_488).abs() < t);
        assert!(t <= 0.02 + 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let a = ring_mul(&partial_zeta::<f64>(5), &GeneralDirichletSeries::single(c(1.0, -1.0), 0.25)).unwrap();
        let back = GeneralDirichletSeries::<f64>::from_json(&a.to_json()).unwrap();
        assert_eq!(back.terms(), a.terms());
        for sigma in [0.6, 1.5, 3.0] {
            assert_eq!(back.tail().bound(sigma), a.tail().bound(sigma));
        }
        let o: Value = serde_json::from_str(r#"{"ordinary":{"coeffs":[1,[0,1],{"re":2}],"shift":1}}"#).unwrap();
        let s = GeneralDirichletSeries::<f64>::from_json(&o).unwrap();
        assert_eq!(s.len(), 3);
        let e: Value = serde_json::from_str(r#"{"terms":[{"a_re":1,"a_im":0,"lambda":2}],"tail":{"A":0.5,"Lambda":3}}"#).unwrap();
        let s = GeneralDirichletSeries::<f64>::from_json(&e).unwrap();
        assert!((s.tail().bound(1.0) - 0.5 * (-3.0f64).exp()).abs() < 1e-15);
    }
}
