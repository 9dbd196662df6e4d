use serde_json::{json, Value};

use super::winding::{winding_number, WindingOptions};
use super::AnalyticFunction;
use crate::error::{Error, Result};
use crate::geometry::{ComplexRect, Contour, Disk};
use crate::scalar::{Real, C};

/// A localized zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocatedZero<T> {
    pub location: C<T>,
    pub multiplicity: u32,
    /// `|f(location)|`.
    pub residual: T,
    /// `false` for a cluster that could not be split nor polished.
    pub converged: bool,
}

/// Result of counting (and optionally localizing) zeros inside a contour.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroReport<T> {
    /// Contour actually integrated over (after any outward perturbation).
    pub region: Contour<T>,
    pub requested: Contour<T>,
    /// Outward offset applied to dodge a boundary zero; zero when none was needed.
    pub perturbation: T,
    /// Zeros with multiplicity: winding number plus enclosed pole orders.
    pub count: usize,
    pub winding: i64,
    pub pole_order_inside: u32,
    pub zeros: Vec<LocatedZero<T>>,
    pub boundary_min_modulus: T,
    pub samples_used: usize,
}

impl<T: Real> ZeroReport<T> {
    pub fn to_json(&self) -> Value {
        let zeros: Vec<Value> = self
            .zeros
            .iter()
            .map(|z| {
                json!({
                    "re": z.location.re.as_f64(),
                    "im": z.location.im.as_f64(),
                    "mult": z.multiplicity,
                    "residual": z.residual.as_f64(),
                })
            })
            .collect();
        json!({
            "region": self.region.to_json(),
            "count": self.count,
            "zeros": zeros,
            "boundary_min_modulus": self.boundary_min_modulus.as_f64(),
            "samples_used": self.samples_used,
            "perturbation": self.perturbation.as_f64(),
        })
    }

    /// True when every reported zero converged and multiplicities add up to the count.
    pub fn fully_resolved(&self) -> bool {
        self.zeros.iter().all(|z| z.converged)
            && self.zeros.iter().map(|z| z.multiplicity as usize).sum::<usize>() == self.count
    }
}

#[derive(Debug, Clone)]
pub struct CountOptions<T> {
    pub winding: WindingOptions<T>,
    /// Outward offsets tried in turn when the contour hits a zero or pole.
    pub perturbations: Vec<T>,
}

impl<T: Real> Default for CountOptions<T> {
    fn default() -> Self {
        Self {
            winding: WindingOptions::default(),
            perturbations: [1e-4, 3e-4, 1e-3, 3e-3].iter().map(|&d| T::lit(d)).collect(),
        }
    }
}

fn measured_pole_order<T: Real>(f: &AnalyticFunction<T>, contour: &Contour<T>, p: C<T>, opts: &WindingOptions<T>) -> Result<u32> {
    let mut rho = T::lit(1e-3).min(contour.distance_to_curve(p) / T::lit(2.0));
    for q in f.poles() {
        let d = (q.location - p).norm();
        if d > T::zero() {
            rho = rho.min(d / T::lit(2.0));
        }
    }
    let disk = Disk::new(p, rho)?;
    let small = WindingOptions { zero_threshold: T::zero(), ..*opts };
    let w = winding_number(f, &disk.into(), &small)?;
    Ok((-w.winding).max(0) as u32)
}

fn count_once<T: Real>(f: &AnalyticFunction<T>, contour: &Contour<T>, opts: &WindingOptions<T>) -> Result<ZeroReport<T>> {
    let w = winding_number(f, contour, opts)?;
    let mut poles = 0u32;
    for p in f.poles() {
        if contour.encloses(p.location) {
            poles += if p.exact { p.order } else { measured_pole_order(f, contour, p.location, opts)? };
        }
    }
    let count = w.winding + i64::from(poles);
    if count < 0 {
        return Err(Error::NonConvergence(format!(
            "negative zero count (winding {}, enclosed pole order {poles})",
            w.winding
        )));
    }
    Ok(ZeroReport {
        region: *contour,
        requested: *contour,
        perturbation: T::zero(),
        count: count as usize,
        winding: w.winding,
        pole_order_inside: poles,
        zeros: Vec::new(),
        boundary_min_modulus: w.min_modulus,
        samples_used: w.samples,
    })
}

/// Counts zeros (with multiplicity) of `f` inside `contour` by the argument principle.
///
/// When the contour passes through a zero or pole it is pushed outward by each offset in
/// `opts.perturbations` in turn; the adjustment is recorded in the report.
pub fn count_zeros<T: Real>(f: &AnalyticFunction<T>, contour: &Contour<T>, opts: &CountOptions<T>) -> Result<ZeroReport<T>> {
    let mut last = None;
    let attempts = std::iter::once(T::zero()).chain(opts.perturbations.iter().copied());
    for d in attempts {
        let c = if d > T::zero() { contour.expanded(d) } else { *contour };
        match count_once(f, &c, &opts.winding) {
            Ok(mut rep) => {
                rep.requested = *contour;
                rep.perturbation = d;
                return Ok(rep);
            }
            Err(e @ Error::BoundaryZero { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or(Error::BoundaryZero { min_modulus: 0.0 }))
}

pub fn count_zeros_rect<T: Real>(f: &AnalyticFunction<T>, region: &ComplexRect<T>) -> Result<ZeroReport<T>> {
    count_zeros(f, &Contour::Rect(*region), &CountOptions::default())
}

pub fn count_zeros_disk<T: Real>(f: &AnalyticFunction<T>, disk: &Disk<T>) -> Result<ZeroReport<T>> {
    count_zeros(f, &Contour::Circle(*disk), &CountOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::Pole;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn s_squared_plus_one_upper_half() {
        let f = AnalyticFunction::from_fn("s^2+1", |s: C<f64>| Ok(s * s + c(1.0, 0.0)));
        let r = ComplexRect::new(-2.0, 2.0, 0.0, 2.0).unwrap();
        let rep = count_zeros_rect(&f, &r).unwrap();
        assert_eq!(rep.count, 1);
        assert_eq!(rep.perturbation, 0.0);
    }

    #[test]
    fn declared_pole_is_compensated() {
        let f = AnalyticFunction::from_fn("inv", |s: C<f64>| Ok(c(1.0, 0.0) / (s - c(1.0, 0.0))))
            .with_poles(vec![Pole::exact(c(1.0, 0.0), 1)]);
        let r = ComplexRect::new(0.0, 2.0, -1.0, 1.0).unwrap();
        let rep = count_zeros_rect(&f, &r).unwrap();
        assert_eq!(rep.winding, -1);
        assert_eq!(rep.count, 0);
    }

    #[test]
    fn upper_bound_pole_order_is_measured() {
        // true order 1, declared as "at most 3"
        let f = AnalyticFunction::from_fn("inv", |s: C<f64>| Ok((s - c(0.5, 0.5)) / (s - c(1.0, 0.0))))
            .with_poles(vec![Pole::at_most(c(1.0, 0.0), 3)]);
        let r = ComplexRect::new(0.0, 2.0, -1.0, 1.0).unwrap();
        assert_eq!(count_zeros_rect(&f, &r).unwrap().count, 1);
    }

    #[test]
    fn zero_on_edge_is_perturbed_outward() {
        let f = AnalyticFunction::from_fn("lin", |s: C<f64>| Ok(s - c(1.0, 0.5)));
        let r = ComplexRect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let rep = count_zeros_rect(&f, &r).unwrap();
        assert_eq!(rep.count, 1);
        assert_eq!(rep.perturbation, 1e-4);
        let js = rep.to_json();
        assert_eq!(js["count"], 1);
        assert!(js["zeros"].as_array().unwrap().is_empty());
        assert!(js.get("boundary_min_modulus").is_some());
        assert!(js.get("samples_used").is_some());
    }
}
