//! Polynomials `P_s(X_0, ..., X_l)` with general Dirichlet series coefficients, and their
//! composition with a base function `X_j = L^(j)(s)`.

mod composed;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::dirichlet::{ds_derivative, ring_add, ring_mul, GeneralDirichletSeries};
use crate::error::{Error, Result};
use crate::scalar::{cx, Real, C};
use crate::series::PowerSeries;

pub use composed::{as_analytic, differentiate_composed, eval_composed, ComposedFunction};

/// Highest derivative variable index `l`.
pub const MAX_L: usize = 6;
pub const MAX_TOTAL_DEGREE: u32 = 8;
pub const MAX_TERMS: usize = 512;

/// Multi-degree `(d_0, ..., d_l)`.
pub type MultiDegree = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyClass {
    /// One term containing some `X_j` with `j >= 1`.
    MonomialWithDerivative,
    /// One term in `X_0` alone (or a constant).
    MonomialPlain,
    NonMonomial,
}

impl PolyClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            PolyClass::MonomialWithDerivative => "monomial_with_derivative",
            PolyClass::MonomialPlain => "monomial_plain",
            PolyClass::NonMonomial => "non_monomial",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletPolynomial<T> {
    num_vars: usize,
    terms: BTreeMap<MultiDegree, GeneralDirichletSeries<T>>,
}

fn check_caps(num_vars: usize, deg: &[u32]) -> Result<()> {
    if num_vars == 0 || num_vars > MAX_L + 1 {
        return Err(Error::DegreeCapExceeded(format!("{num_vars} variables (at most {})", MAX_L + 1)));
    }
    let total: u32 = deg.iter().sum();
    if total > MAX_TOTAL_DEGREE {
        return Err(Error::DegreeCapExceeded(format!("total degree {total} > {MAX_TOTAL_DEGREE}")));
    }
    Ok(())
}

impl<T: Real> DirichletPolynomial<T> {
    /// Builds from `(degree, coefficient)` pairs; repeated degrees are added and
    /// coefficients without stored terms dropped. Degree vectors shorter than `num_vars`
    /// are padded with zeros.
    pub fn new(num_vars: usize, terms: Vec<(MultiDegree, GeneralDirichletSeries<T>)>) -> Result<Self> {
        let mut map: BTreeMap<MultiDegree, GeneralDirichletSeries<T>> = BTreeMap::new();
        for (mut deg, coeff) in terms {
            if deg.len() > num_vars {
                if deg[num_vars..].iter().any(|&d| d > 0) {
                    return Err(Error::InvalidInput(format!("degree {deg:?} uses more than {num_vars} variables")));
                }
                deg.truncate(num_vars);
            }
            deg.resize(num_vars, 0);
            check_caps(num_vars, &deg)?;
            let merged = match map.remove(&deg) {
                Some(prev) => ring_add(&prev, &coeff),
                None => coeff,
            };
            map.insert(deg, merged);
        }
        map.retain(|_, c| !c.is_empty());
        if map.len() > MAX_TERMS {
            return Err(Error::DegreeCapExceeded(format!("{} terms > {MAX_TERMS}", map.len())));
        }
        Ok(Self { num_vars, terms: map })
    }

    /// The polynomial `X_j` in `num_vars` variables.
    pub fn variable(j: usize, num_vars: usize) -> Result<Self> {
        let mut deg = vec![0; num_vars.max(j + 1)];
        deg[j] = 1;
        Self::new(num_vars.max(j + 1), vec![(deg, GeneralDirichletSeries::unit())])
    }

    /// The constant polynomial `D(s)`.
    pub fn constant(num_vars: usize, coeff: GeneralDirichletSeries<T>) -> Result<Self> {
        Self::new(num_vars, vec![(vec![0; num_vars], coeff)])
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Highest derivative index `l = num_vars - 1`.
    pub fn l(&self) -> usize {
        self.num_vars - 1
    }

    pub fn terms(&self) -> &BTreeMap<MultiDegree, GeneralDirichletSeries<T>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|d| d.iter().sum()).max().unwrap_or(0)
    }

    /// Same polynomial over `n` variables (`n` at least the highest variable used + 1).
    pub fn with_num_vars(&self, n: usize) -> Result<Self> {
        Self::new(n, self.terms.iter().map(|(d, c)| (d.clone(), c.clone())).collect())
    }

    /// Drops trailing variables that appear in no term.
    pub fn trimmed(&self) -> Self {
        let used = self
            .terms
            .keys()
            .map(|d| d.iter().rposition(|&x| x > 0).map_or(1, |p| p + 1))
            .max()
            .unwrap_or(1);
        self.with_num_vars(used).expect("trimming keeps caps")
    }

    pub fn classify(&self) -> PolyClass {
        match self.terms.len() {
            1 => {
                let deg = self.terms.keys().next().expect("one term");
                if deg.iter().skip(1).any(|&d| d > 0) {
                    PolyClass::MonomialWithDerivative
                } else {
                    PolyClass::MonomialPlain
                }
            }
            0 => PolyClass::MonomialPlain,
            _ => PolyClass::NonMonomial,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.num_vars.max(other.num_vars);
        let mut all: Vec<_> = self.terms.iter().map(|(d, c)| (d.clone(), c.clone())).collect();
        all.extend(other.terms.iter().map(|(d, c)| (d.clone(), c.clone())));
        Self::new(n, all)
    }

    pub fn scale(&self, c: &GeneralDirichletSeries<T>) -> Result<Self> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (d, a) in &self.terms {
            out.push((d.clone(), ring_mul(a, c)?));
        }
        Self::new(self.num_vars, out)
    }

    pub fn neg(&self) -> Self {
        Self {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(d, c)| (d.clone(), c.scale(cx(-T::one(), T::zero())))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.num_vars.max(other.num_vars);
        let mut out = Vec::new();
        for (da, ca) in &self.terms {
            for (db, cb) in &other.terms {
                let deg: MultiDegree = (0..n)
                    .map(|j| da.get(j).copied().unwrap_or(0) + db.get(j).copied().unwrap_or(0))
                    .collect();
                check_caps(n, &deg)?;
                out.push((deg, ring_mul(ca, cb)?));
            }
        }
        Self::new(n, out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(self.num_vars, GeneralDirichletSeries::unit())?;
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// One application of `d/ds` to `P_s(L, L', ..., L^(l))`, as a polynomial in
    /// `X_0, ..., X_{l+1}`.
    fn differentiate_once(&self) -> Result<Self> {
        let n = self.num_vars + 1;
        if n > MAX_L + 1 {
            return Err(Error::DegreeCapExceeded(format!("derivative needs X_{} (l <= {MAX_L})", n - 1)));
        }
        let mut out: Vec<(MultiDegree, GeneralDirichletSeries<T>)> = Vec::new();
        for (deg, coeff) in &self.terms {
            let mut base = deg.clone();
            base.push(0);
            let dc = ds_derivative(coeff, 1);
            if !dc.is_empty() {
                out.push((base.clone(), dc));
            }
            for j in 0..deg.len() {
                if deg[j] == 0 {
                    continue;
                }
                let mut d = base.clone();
                d[j] -= 1;
                d[j + 1] += 1;
                let factor = T::from_u32(deg[j]).expect("small degree");
                out.push((d, coeff.scale(cx(factor, T::zero()))));
            }
        }
        let p = Self::new(n, out)?;
        if p.terms.len() > MAX_TERMS {
            return Err(Error::TermBudgetExceeded(p.terms.len()));
        }
        Ok(p)
    }

    /// `d^k/ds^k P_s(L(s))` expressed as a polynomial in `X_0, ..., X_{l+k}`.
    pub fn differentiate(&self, k: usize) -> Result<Self> {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.differentiate_once()?;
        }
        Ok(p)
    }

    /// Coefficient values `D(s)` paired with their degrees.
    pub fn coefficients_at(&self, s: C<T>) -> Vec<(&MultiDegree, C<T>)> {
        self.terms.iter().map(|(d, c)| (d, c.jet(s, 0)[0])).collect()
    }

    /// `sum D(s) x_0^{d_0} ... x_l^{d_l}` with `x` supplied (`x.len() >= num_vars`).
    pub fn eval_with(&self, s: C<T>, x: &[C<T>]) -> C<T> {
        let mut acc = cx(T::zero(), T::zero());
        for (deg, coeff) in &self.terms {
            let mut v = coeff.jet(s, 0)[0];
            for (j, &d) in deg.iter().enumerate() {
                if d > 0 {
                    v = v * x[j].powu(d);
                }
            }
            acc = acc + v;
        }
        acc
    }

    /// Taylor coefficients of `h -> P_{s+h}(x_0(h), ...)` up to `h^m`, where `x[j]`
    /// holds the Taylor coefficients of `X_j` at `s`.
    pub fn eval_series(&self, s: C<T>, x: &[PowerSeries<T>], m: usize) -> PowerSeries<T> {
        let len = m + 1;
        let mut acc = PowerSeries::zero(len);
        for (deg, coeff) in &self.terms {
            let mut term = PowerSeries::from_derivatives(&coeff.jet(s, m));
            for (j, &d) in deg.iter().enumerate() {
                for _ in 0..d {
                    term = term.mul(&x[j]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// `{"l":..,"terms":[{"deg":[..],"coeff":<series>}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(d, c)| json!({"deg": d, "coeff": c.to_json()})).collect();
        json!({"l": self.l(), "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let l = v.get("l").and_then(Value::as_u64).ok_or_else(|| Error::InvalidInput("polynomial needs `l`".into()))? as usize;
        let arr = v.get("terms").and_then(Value::as_array).ok_or_else(|| Error::InvalidInput("polynomial needs `terms`".into()))?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let deg = t
                .get("deg")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidInput("term needs `deg`".into()))?
                .iter()
                .map(|d| d.as_u64().map(|x| x as u32).ok_or_else(|| Error::InvalidInput("degree must be a non-negative integer".into())))
                .collect::<Result<Vec<u32>>>()?;
            let coeff = match t.get("coeff") {
                Some(c) => GeneralDirichletSeries::from_json(c)?,
                None => GeneralDirichletSeries::unit(),
            };
            terms.push((deg, coeff));
        }
        Self::new(l + 1, terms)
    }
}

fn fmt_complex<T: Real>(f: &mut fmt::Formatter<'_>, c: C<T>) -> fmt::Result {
    let sign = if c.im.is_sign_negative() { '-' } else { '+' };
    write!(f, "({:?}{}{:?}i)", c.re, sign, c.im.abs())
}

/// Expression syntax: terms joined by ` + `, each `coeff*D0^2*D1`; constant coefficients
/// print as `(re+imi)`, others as `series{<json>}`.
impl<T: Real> fmt::Display for DirichletPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "(0.0+0.0i)");
        }
        for (i, (deg, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (j, &d) in deg.iter().enumerate() {
                match d {
                    0 => {}
                    1 => factors.push(format!("D{j}")),
                    _ => factors.push(format!("D{j}^{d}")),
                }
            }
            let unit = coeff.as_constant() == Some(cx(T::one(), T::zero()));
            if !(unit && !factors.is_empty()) {
                match coeff.as_constant() {
                    Some(c) => fmt_complex(f, c)?,
                    None => write!(f, "series{}", coeff.to_json())?,
                }
                if !factors.is_empty() {
                    write!(f, "*")?;
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
