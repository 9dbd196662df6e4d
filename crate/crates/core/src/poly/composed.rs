use std::sync::Arc;

use super::DirichletPolynomial;
use crate::analytic::{AnalyticFunction, Pole};
use crate::error::Result;
use crate::scalar::{cx, Real, C};
use crate::series::PowerSeries;

/// `Z(s) = P_{s+i tau}(L(s+i tau), L'(s+i tau), ..., L^(l)(s+i tau))`.
#[derive(Clone)]
pub struct ComposedFunction<T> {
    pub poly: DirichletPolynomial<T>,
    pub base: AnalyticFunction<T>,
    pub tau: T,
}

impl<T: Real> std::fmt::Debug for ComposedFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ComposedFunction")
            .field("poly", &self.poly.to_string())
            .field("base", &self.base.name())
            .field("tau", &self.tau)
            .finish()
    }
}

impl<T: Real> ComposedFunction<T> {
    pub fn new(poly: DirichletPolynomial<T>, base: AnalyticFunction<T>) -> Self {
        Self { poly, base, tau: T::zero() }
    }

    pub fn with_shift(&self, tau: T) -> Self {
        Self { tau, ..self.clone() }
    }

    fn point(&self, s: C<T>) -> C<T> {
        s + cx(T::zero(), self.tau)
    }

    pub fn eval(&self, s: C<T>) -> Result<C<T>> {
        let z = self.point(s);
        let x = self.base.derivatives(z, self.poly.l())?;
        Ok(self.poly.eval_with(z, &x))
    }

    /// `[Z(s), Z'(s), ..., Z^(m)(s)]` from the base jet of order `l + m`.
    pub fn jet(&self, s: C<T>, m: usize) -> Result<Vec<C<T>>> {
        let z = self.point(s);
        let l = self.poly.l();
        let base = self.base.derivatives(z, l + m)?;
        let x: Vec<PowerSeries<T>> = (0..=l).map(|j| PowerSeries::from_derivatives(&base[j..=j + m])).collect();
        Ok(self.poly.eval_series(z, &x, m).derivatives())
    }

    /// Pole order bound at a base pole of order `q`: `max over terms of sum d_j (q + j)`.
    fn pole_order(&self, q: u32) -> u32 {
        self.poly
            .terms()
            .keys()
            .map(|deg| deg.iter().enumerate().map(|(j, &d)| d * (q + j as u32)).sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Declared poles: base poles moved by `-i tau`. The order is exact only for a single
    /// term with a constant coefficient over an exact base pole; otherwise it is an upper
    /// bound that counting measures.
    pub fn poles(&self) -> Vec<Pole<T>> {
        let single_constant = self.poly.terms().len() == 1
            && self.poly.terms().values().all(|c| c.as_constant().is_some());
        let shift = cx(T::zero(), self.tau);
        self.base
            .poles()
            .iter()
            .filter_map(|p| {
                let order = self.pole_order(p.order);
                if order == 0 {
                    return None;
                }
                let location = p.location - shift;
                Some(if single_constant && p.exact { Pole::exact(location, order) } else { Pole::at_most(location, order) })
            })
            .collect()
    }
}

/// Evaluates the composition at `s` (that is, at `s + i tau` of the unshifted function).
pub fn eval_composed<T: Real>(f: &ComposedFunction<T>, s: C<T>) -> Result<C<T>> {
    f.eval(s)
}

/// `d^k/ds^k P_s(L(s))` as a polynomial in `X_0, ..., X_{l+k}`.
pub fn differentiate_composed<T: Real>(p: &DirichletPolynomial<T>, k: usize) -> Result<DirichletPolynomial<T>> {
    p.differentiate(k)
}

/// Adapter to [`AnalyticFunction`]; native derivative order is whatever the base
/// supplies beyond `l`.
pub fn as_analytic<T: Real>(f: &ComposedFunction<T>) -> AnalyticFunction<T> {
    let native = f.base.max_derivative_order().saturating_sub(f.poly.l());
    let poles = f.poles();
    let d = *f.base.domain();
    let domain = crate::geometry::ComplexRect { t_min: d.t_min - f.tau, t_max: d.t_max - f.tau, ..d };
    let name = if f.tau == T::zero() {
        format!("{} o {}", f.poly, f.base.name())
    } else {
        format!("({} o {})(s+{}i)", f.poly, f.base.name(), f.tau)
    };
    let inner = Arc::new(f.clone());
    AnalyticFunction::from_jet(name, native, move |s, m| if m == 0 { Ok(vec![inner.eval(s)?]) } else { inner.jet(s, m) })
        .with_poles(poles)
        .with_domain(domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::GeneralDirichletSeries;
    use crate::zeta::{zeta_derivative, zeta_function, ZetaParams};

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    fn konst(re: f64) -> GeneralDirichletSeries<f64> {
        GeneralDirichletSeries::constant(c(re, 0.0))
    }

    #[test]
    fn identity_polynomial_is_zeta() {
        let p = DirichletPolynomial::variable(0, 1).unwrap();
        let f = ComposedFunction::new(p, zeta_function(ZetaParams::default()));
        let v = eval_composed(&f, c(2.0, 0.0)).unwrap();
        assert!((v.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
        let a = as_analytic(&f);
        assert_eq!(a.poles(), &[Pole::exact(c(1.0, 0.0), 1)]);
    }

    #[test]
    fn mu_pole_bound_and_jet() {
        let p = DirichletPolynomial::new(3, vec![(vec![1, 0, 1], konst(1.0)), (vec![0, 2, 0], konst(-1.0))]).unwrap();
        let f = ComposedFunction::new(p, zeta_function(ZetaParams::default()));
        assert_eq!(f.poles(), vec![Pole::at_most(c(1.0, 0.0), 4)]);
        let s = c(0.7, 3.0);
        let zp = ZetaParams::default();
        let d = |k| zeta_derivative(s, k, &zp).unwrap();
        let want1 = d(0) * d(3) - d(1) * d(2);
        let jet = f.jet(s, 1).unwrap();
        assert!((jet[0] - (d(0) * d(2) - d(1) * d(1))).norm() < 1e-12);
        assert!((jet[1] - want1).norm() < 1e-10);
    }

    #[test]
    fn shift_is_reparametrization() {
        let p = DirichletPolynomial::new(2, vec![(vec![0, 1], konst(1.0)), (vec![1, 0], konst(1.0))]).unwrap();
        let f = ComposedFunction::new(p, zeta_function(ZetaParams::default()));
        let g = f.with_shift(7.5);
        let s = c(0.6, 1.0);
        assert_eq!(g.eval(s).unwrap(), f.eval(s + c(0.0, 7.5)).unwrap());
        assert_eq!(g.poles()[0].location, c(1.0, -7.5));
    }
}
