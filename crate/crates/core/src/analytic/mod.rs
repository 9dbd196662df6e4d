//! Contour machinery: analytic function handles, winding numbers, argument-principle
//! counting, zero localization and Cauchy-integral derivatives.

mod cauchy;
mod count;
mod localize;
mod winding;

use std::fmt;
use std::sync::Arc;

pub use cauchy::{cauchy_derivative, cauchy_derivative_auto, default_cauchy_radius, derivative_error_bound};
pub use count::{count_zeros, count_zeros_disk, count_zeros_rect, CountOptions, LocatedZero, ZeroReport};
pub use localize::{localize_zeros, localize_zeros_with, LocalizeOptions};
pub use winding::{winding_number, WindingOptions, WindingResult};

use crate::error::{Error, Result};
use crate::geometry::ComplexRect;
use crate::scalar::{is_finite, Real, C};

/// Returns `[f(s), f'(s), ..., f^(k)(s)]`.
pub type JetFn<T> = dyn Fn(C<T>, usize) -> Result<Vec<C<T>>> + Send + Sync;

/// Declared pole of an [`AnalyticFunction`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole<T> {
    pub location: C<T>,
    pub order: u32,
    /// `false` when `order` is only an upper bound; counting then measures the true order.
    pub exact: bool,
}

impl<T: Real> Pole<T> {
    pub fn exact(location: C<T>, order: u32) -> Self {
        Self { location, order, exact: true }
    }

    pub fn at_most(location: C<T>, order: u32) -> Self {
        Self { location, order, exact: false }
    }
}

/// Evaluatable meromorphic function with optional native derivatives.
#[derive(Clone)]
pub struct AnalyticFunction<T> {
    name: String,
    jet: Arc<JetFn<T>>,
    max_derivative_order: usize,
    poles: Vec<Pole<T>>,
    domain: ComplexRect<T>,
}

impl<T: Real> fmt::Debug for AnalyticFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFunction")
            .field("name", &self.name)
            .field("max_derivative_order", &self.max_derivative_order)
            .field("poles", &self.poles)
            .finish()
    }
}

impl<T: Real> AnalyticFunction<T> {
    /// Handle from a plain value function; derivatives fall back to Cauchy quadrature.
    pub fn from_fn<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(C<T>) -> Result<C<T>> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            jet: Arc::new(move |s, _| Ok(vec![f(s)?])),
            max_derivative_order: 0,
            poles: Vec::new(),
            domain: ComplexRect::plane(),
        }
    }

    /// Handle whose jet function supplies derivatives up to `max_order` natively.
    pub fn from_jet<F>(name: impl Into<String>, max_order: usize, jet: F) -> Self
    where
        F: Fn(C<T>, usize) -> Result<Vec<C<T>>> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            jet: Arc::new(jet),
            max_derivative_order: max_order,
            poles: Vec::new(),
            domain: ComplexRect::plane(),
        }
    }

    pub fn with_poles(mut self, poles: Vec<Pole<T>>) -> Self {
        self.poles = poles;
        self
    }

    pub fn with_domain(mut self, domain: ComplexRect<T>) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn poles(&self) -> &[Pole<T>] {
        &self.poles
    }

    pub fn domain(&self) -> &ComplexRect<T> {
        &self.domain
    }

    pub fn max_derivative_order(&self) -> usize {
        self.max_derivative_order
    }

    fn check_pole(&self, s: C<T>) -> Result<()> {
        for p in &self.poles {
            let tol = T::epsilon() * T::lit(16.0) * T::one().max(p.location.norm());
            if (s - p.location).norm() <= tol {
                return Err(Error::Evaluation(format!(
                    "{} evaluated at declared pole {}",
                    self.name, p.location
                )));
            }
        }
        Ok(())
    }

    /// `f(s)`.
    pub fn eval(&self, s: C<T>) -> Result<C<T>> {
        self.check_pole(s)?;
        let v = (self.jet)(s, 0)?;
        let z = *v
            .first()
            .ok_or_else(|| Error::Evaluation(format!("{} returned an empty jet", self.name)))?;
        if !is_finite(z) {
            return Err(Error::Evaluation(format!("{} is not finite at {s}", self.name)));
        }
        Ok(z)
    }

    /// `[f(s), f'(s), ..., f^(k)(s)]`, native where available, Cauchy quadrature beyond.
    pub fn derivatives(&self, s: C<T>, k: usize) -> Result<Vec<C<T>>> {
        self.check_pole(s)?;
        let native = k.min(self.max_derivative_order);
        let mut out = (self.jet)(s, native)?;
        out.truncate(native + 1);
        if out.len() != native + 1 {
            return Err(Error::Evaluation(format!("{} returned a short jet", self.name)));
        }
        if k > native {
            let r = default_cauchy_radius(self, s)?;
            for order in native + 1..=k {
                out.push(cauchy_derivative(self, s, order, r)?);
            }
        }
        if out.iter().any(|z| !is_finite(*z)) {
            return Err(Error::Evaluation(format!("{} jet is not finite at {s}", self.name)));
        }
        Ok(out)
    }

    /// `f^(k)(s)`.
    pub fn derivative(&self, s: C<T>, k: usize) -> Result<C<T>> {
        Ok(self.derivatives(s, k)?[k])
    }

    /// `s -> f(s + i tau)`, with poles and domain moved accordingly.
    pub fn shifted(&self, tau: T) -> Self {
        let inner = Arc::clone(&self.jet);
        let shift = C::new(T::zero(), tau);
        let poles = self
            .poles
            .iter()
            .map(|p| Pole { location: p.location - shift, ..*p })
            .collect();
        let d = self.domain;
        Self {
            name: format!("{}(s+{}i)", self.name, tau),
            jet: Arc::new(move |s, k| inner(s + shift, k)),
            max_derivative_order: self.max_derivative_order,
            poles,
            domain: ComplexRect { t_min: d.t_min - tau, t_max: d.t_max - tau, ..d },
        }
    }
}
