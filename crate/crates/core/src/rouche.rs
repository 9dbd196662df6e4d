//! Jet interpolation by `exp(p)`, auxiliary targets with a prescribed zero, numerical
//! Rouche certificates and the scan over vertical shifts.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::analytic::{
    localize_zeros_with, winding_number, AnalyticFunction, LocalizeOptions, LocatedZero, WindingOptions,
};
use crate::dirichlet::ds_eval;
use crate::error::{Error, Result};
use crate::geometry::{ComplexRect, Disk};
use crate::poly::{as_analytic, ComposedFunction, DirichletPolynomial, PolyClass};
use crate::roots::polynomial_roots;
use crate::scalar::{cx, Real, C};
use crate::series::PowerSeries;

/// Default number of circle samples before refinement.
pub const DEFAULT_CIRCLE_SAMPLES: usize = 256;
/// Default shift grid step.
pub const DEFAULT_TAU_STEP: f64 = 0.05;
const MAX_CIRCLE_SAMPLES: usize = 1 << 16;
const TARGET_MAX_ORDER: usize = 64;
const PIN_ATTEMPTS: usize = 8;

/// Coefficients `b_0, ..., b_m` of `p` with `exp(p(h))` having derivative jet `c` at `h = 0`.
///
/// `b_0` uses the principal branch of the logarithm.
pub fn jet_log_solve<T: Real>(c: &[C<T>]) -> Result<Vec<C<T>>> {
    if c.is_empty() {
        return Err(Error::InvalidInput("empty jet".into()));
    }
    Ok(PowerSeries::from_derivatives(c).log()?.coeffs)
}

/// `f(s) = exp(sum_j b_j (s - alpha)^j)`, optionally multiplied by `s`.
///
/// The prefactor form with `coeffs = [eta alpha, eta]` is `s e^{eta s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPolyTarget<T> {
    pub center: C<T>,
    pub coeffs: Vec<C<T>>,
    pub linear_prefactor: bool,
}

impl<T: Real> ExpPolyTarget<T> {
    pub fn new(center: C<T>, coeffs: Vec<C<T>>) -> Self {
        Self { center, coeffs, linear_prefactor: false }
    }

    /// Interpolates the jet `theta` at `center`.
    pub fn from_jet(center: C<T>, theta: &[C<T>]) -> Result<Self> {
        Ok(Self::new(center, jet_log_solve(theta)?))
    }

    /// `s e^{eta s}` written around `center`.
    pub fn prefactor(center: C<T>, eta: C<T>) -> Self {
        Self { center, coeffs: vec![eta * center, eta], linear_prefactor: true }
    }

    /// `[f(s), ..., f^(m)(s)]`.
    pub fn jet(&self, s: C<T>, m: usize) -> Vec<C<T>> {
        let len = m + 1;
        let h = PowerSeries::linear(s - self.center, len);
        let mut q = PowerSeries::zero(len);
        for b in self.coeffs.iter().rev() {
            q = q.mul(&h);
            q.coeffs[0] = q.coeffs[0] + *b;
        }
        let mut f = q.exp();
        if self.linear_prefactor {
            f = f.mul(&PowerSeries::linear(s, len));
        }
        f.derivatives()
    }

    pub fn eval(&self, s: C<T>) -> C<T> {
        self.jet(s, 0)[0]
    }

    pub fn as_analytic(&self) -> AnalyticFunction<T> {
        let me = self.clone();
        AnalyticFunction::from_jet("exp-poly target", TARGET_MAX_ORDER, move |s, m| Ok(me.jet(s, m)))
    }
}

/// `A(s, alpha, k) = d^k/ds^k s e^{-k s / alpha}`, which vanishes only at `s = alpha`.
pub fn aux_monomial_target<T: Real>(alpha: C<T>, k: usize) -> Result<AnalyticFunction<T>> {
    aux_monomial_target_scaled(alpha, k, cx(T::one(), T::zero()))
}

/// `amplitude * A(s, alpha, k)`; same zero set, different size on the circle.
pub fn aux_monomial_target_scaled<T: Real>(alpha: C<T>, k: usize, amplitude: C<T>) -> Result<AnalyticFunction<T>> {
    if alpha.norm() == T::zero() {
        return Err(Error::ZeroAlpha);
    }
    if k == 0 {
        return Err(Error::InvalidInput("derivative order k must be at least 1".into()));
    }
    if amplitude.norm() == T::zero() {
        return Err(Error::InvalidInput("amplitude must be nonzero".into()));
    }
    let kk = T::from_usize_lossy(k);
    let c = -cx(kk, T::zero()) / alpha;
    // m-th derivative of s e^{cs} is c^{m-1} (c s + m) e^{cs}; here m = k + j
    let name = format!("A(s, {alpha}, {k})");
    Ok(AnalyticFunction::from_jet(name, TARGET_MAX_ORDER, move |s, m| {
        let e = (c * s).exp() * amplitude;
        Ok((0..=m)
            .map(|j| {
                let order = k + j;
                c.powi(order as i32 - 1) * (c * s + T::from_usize_lossy(order)) * e
            })
            .collect())
    }))
}

/// Nonzero `theta_0, ..., theta_l` solving `sum D_d(alpha) prod theta_j^{d_j} = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSolution<T> {
    pub theta: Vec<C<T>>,
    pub residual: T,
    /// Index of the variable solved for; the others were pinned.
    pub solved_for: usize,
    /// Pinning attempt that succeeded (0 means all pins equal to one).
    pub attempt: usize,
}

fn pin<T: Real>(j: usize, attempt: usize) -> C<T> {
    let step = T::lit(0.37) * T::from_usize_lossy(attempt * j.max(1));
    cx(T::one(), step)
}

fn theta_sum<T: Real>(terms: &[(Vec<u32>, C<T>)], theta: &[C<T>]) -> (C<T>, T) {
    let mut sum = cx(T::zero(), T::zero());
    let mut scale = T::zero();
    for (deg, d) in terms {
        let v = deg.iter().zip(theta).fold(*d, |acc, (&e, t)| acc * t.powu(e));
        sum = sum + v;
        scale = scale + v.norm();
    }
    (sum, scale)
}

fn solve_in<T: Real>(terms: &[(Vec<u32>, C<T>)], v: usize, attempt: usize) -> Option<ThetaSolution<T>> {
    let n = terms[0].0.len();
    let mut theta: Vec<C<T>> = (0..n).map(|j| pin(j, attempt)).collect();
    let top = terms.iter().map(|(d, _)| d[v] as usize).max().unwrap_or(0);
    let mut e = vec![cx(T::zero(), T::zero()); top + 1];
    for (deg, d) in terms {
        let rest = deg
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != v)
            .fold(*d, |acc, (j, &p)| acc * theta[j].powu(p));
        let slot = deg[v] as usize;
        e[slot] = e[slot] + rest;
    }
    let size = e.iter().fold(T::zero(), |m, c| m.max(c.norm()));
    let floor = size * T::lit(1e-12);
    if size == T::zero() {
        return None;
    }
    for c in e.iter_mut() {
        if c.norm() <= floor {
            *c = cx(T::zero(), T::zero());
        }
    }
    let roots = polynomial_roots(&e).ok()?;
    let tiny = T::lit(1e-8);
    let mut best: Option<C<T>> = None;
    for r in roots {
        if r.norm() > tiny && best.map_or(true, |b| r.norm() < b.norm()) {
            best = Some(r);
        }
    }
    let mut z = best?;
    // polish against the univariate polynomial
    for _ in 0..3 {
        let (p, dp) = e.iter().rev().fold((cx(T::zero(), T::zero()), cx(T::zero(), T::zero())), |(p, dp), c| {
            (p * z + *c, dp * z + p)
        });
        if dp.norm() == T::zero() {
            break;
        }
        let next = z - p / dp;
        if !(next.re.is_finite() && next.im.is_finite()) {
            break;
        }
        z = next;
    }
    theta[v] = z;
    let (sum, scale) = theta_sum(terms, &theta);
    let ok = sum.norm() < T::lit(1e-9) * T::one().max(scale);
    ok.then(|| ThetaSolution { theta, residual: sum.norm(), solved_for: v, attempt })
}

/// Solves the theta equation at `alpha`: pins all variables but one and takes the
/// smallest nonzero root of the remaining univariate polynomial.
///
/// Pins start at one and are re-drawn as `1 + a j 0.37 i` on attempt `a`, for up to eight
/// attempts; `theta_0` is solved for first, then the other variables in order.
pub fn solve_theta<T: Real>(p: &DirichletPolynomial<T>, alpha: C<T>) -> Result<ThetaSolution<T>> {
    let eps = T::lit(1e-10);
    let terms: Vec<(Vec<u32>, C<T>)> = p
        .coefficients_at(alpha)
        .into_iter()
        .filter(|(_, v)| v.norm() > eps)
        .map(|(d, v)| (d.clone(), v))
        .collect();
    if terms.len() < 2 || p.classify() != PolyClass::NonMonomial {
        return Err(Error::DegenerateAtAlpha);
    }
    for v in 0..p.num_vars() {
        if terms.iter().all(|(d, _)| d[v] == 0) {
            continue;
        }
        for attempt in 0..PIN_ATTEMPTS {
            if let Some(sol) = solve_in(&terms, v, attempt) {
                return Ok(sol);
            }
        }
    }
    Err(Error::NoNonzeroRoot)
}

/// `A(s, alpha; f) = sum D_d(s) prod (f^(j)(s))^{d_j}` with `f = exp(p)` interpolating the
/// solved thetas at `alpha`; vanishes at `alpha` by construction.
///
/// `p` carries one extra term `(s - alpha)^{l+1}` beyond the interpolated jet. Without it
/// `A` can vanish identically, e.g. `f + f'` for `f = exp(b_0 - (s - alpha))`.
pub fn aux_poly_target<T: Real>(p: &DirichletPolynomial<T>, alpha: C<T>) -> Result<AnalyticFunction<T>> {
    let sol = solve_theta(p, alpha)?;
    let mut f = ExpPolyTarget::from_jet(alpha, &sol.theta)?;
    f.coeffs.push(cx(T::one(), T::zero()));
    let composed = ComposedFunction::new(p.clone(), f.as_analytic());
    Ok(as_analytic(&composed).with_name(format!("A(s, {alpha}; f)")))
}

/// Outcome of comparing `Z` with a target `A` on a circle.
#[derive(Debug, Clone, PartialEq)]
pub struct RoucheCertificate<T> {
    pub disk: Disk<T>,
    pub tau: T,
    /// Sampled `max |Z - A|` on the circle.
    pub max_diff: T,
    /// Sampled `min |A|` on the circle.
    pub min_target: T,
    pub pass: bool,
    pub samples: usize,
    /// Common winding number, computed for passes only.
    pub winding: Option<i64>,
    /// A zero of the (shifted) function inside the disk, for passes.
    pub zero_inside: Option<LocatedZero<T>>,
    /// `zero_inside + i tau`, a zero of the unshifted composition.
    pub mapped_zero: Option<C<T>>,
    /// `|composition(mapped_zero)|`.
    pub mapped_residual: Option<T>,
    /// Why this shift could not be assessed, if it could not.
    pub note: Option<String>,
}

impl<T: Real> RoucheCertificate<T> {
    fn failed(disk: Disk<T>, tau: T, note: String) -> Self {
        Self {
            disk,
            tau,
            max_diff: T::nan(),
            min_target: T::nan(),
            pass: false,
            samples: 0,
            winding: None,
            zero_inside: None,
            mapped_zero: None,
            mapped_residual: None,
            note: Some(note),
        }
    }

    pub fn to_json(&self) -> Value {
        let opt = |x: Option<T>| x.map(|v| v.as_f64());
        json!({
            "tau": self.tau.as_f64(),
            "disk": self.disk.to_json(),
            "max_diff": self.max_diff.as_f64(),
            "min_target": self.min_target.as_f64(),
            "pass": self.pass,
            "samples": self.samples,
            "winding": self.winding,
            "zero_inside": self.zero_inside.map(|z| json!({"re": z.location.re.as_f64(), "im": z.location.im.as_f64()})),
            "mapped_zero": self.mapped_zero.map(|z| json!({"re": z.re.as_f64(), "im": z.im.as_f64()})),
            "mapped_residual": opt(self.mapped_residual),
            "note": self.note,
        })
    }
}

fn circle_extrema<T: Real>(z: &AnalyticFunction<T>, a: &AnalyticFunction<T>, disk: &Disk<T>, n: usize) -> Result<(T, T)> {
    let vals: Vec<(T, T)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let s = disk.point(T::TAU() * T::from_usize_lossy(i) / T::from_usize_lossy(n));
            let av = a.eval(s).map_err(|_| Error::TargetVanishesOnCircle)?;
            let zv = z.eval(s)?;
            Ok(((zv - av).norm(), av.norm()))
        })
        .collect::<Result<_>>()?;
    Ok(vals.iter().fold((T::zero(), T::infinity()), |(mx, mn), &(d, m)| (mx.max(d), mn.min(m))))
}

/// Samples `max |Z - A|` and `min |A|` on the circle of `disk`, doubling the sample count
/// until both extrema move by less than 1e-3 relative or the decision has a margin above
/// ten percent. A pass is confirmed by computing both winding numbers.
pub fn rouche_check<T: Real>(
    z: &AnalyticFunction<T>,
    a: &AnalyticFunction<T>,
    disk: &Disk<T>,
    samples: usize,
) -> Result<RoucheCertificate<T>> {
    let mut n = samples.max(8);
    let (mut max_diff, mut min_target) = circle_extrema(z, a, disk, n)?;
    let settled = |mx: T, mn: T| (mx / mn - T::one()).abs() > T::lit(0.1);
    let rel = |x: T, y: T| (x - y).abs() <= T::lit(1e-3) * x.abs().max(y.abs());
    if !(min_target > T::zero()) {
        return Err(Error::TargetVanishesOnCircle);
    }
    if !settled(max_diff, min_target) {
        while n < MAX_CIRCLE_SAMPLES {
            n *= 2;
            let (mx, mn) = circle_extrema(z, a, disk, n)?;
            let stable = rel(mx, max_diff) && rel(mn, min_target);
            max_diff = mx;
            min_target = mn;
            if !(min_target > T::zero()) {
                return Err(Error::TargetVanishesOnCircle);
            }
            if stable || settled(max_diff, min_target) {
                break;
            }
        }
    }
    let pass = max_diff < min_target;
    let mut cert = RoucheCertificate {
        disk: *disk,
        tau: T::zero(),
        max_diff,
        min_target,
        pass,
        samples: n,
        winding: None,
        zero_inside: None,
        mapped_zero: None,
        mapped_residual: None,
        note: None,
    };
    if pass {
        let opts = WindingOptions::default();
        let wz = winding_number(z, &(*disk).into(), &opts)?.winding;
        let wa = winding_number(a, &(*disk).into(), &opts)?.winding;
        if wz != wa {
            return Err(Error::NonConvergence(format!(
                "circle samples satisfy the Rouche inequality but windings differ ({wz} vs {wa})"
            )));
        }
        cert.winding = Some(wz);
        if wz > 0 {
            cert.zero_inside = zero_in_disk(z, disk);
        }
    }
    Ok(cert)
}

fn zero_in_disk<T: Real>(f: &AnalyticFunction<T>, disk: &Disk<T>) -> Option<LocatedZero<T>> {
    let opts = LocalizeOptions { strict: false, ..LocalizeOptions::default() };
    let rep = localize_zeros_with(f, &disk.bounding_rect(), &opts).ok()?;
    rep.zeros
        .into_iter()
        .filter(|z| disk.contains(z.location))
        .min_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap_or(std::cmp::Ordering::Equal))
}

/// Uniform shift grid `start + i step`, `i < len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauGrid<T> {
    pub start: T,
    pub step: T,
    pub len: usize,
}

impl<T: Real> TauGrid<T> {
    /// Grid covering the closed range `[lo, hi]`.
    pub fn new(lo: T, hi: T, step: T) -> Result<Self> {
        if !(step > T::zero()) || !step.is_finite() {
            return Err(Error::InvalidInput(format!("tau step must be positive, got {step}")));
        }
        if !(hi >= lo) {
            return Err(Error::InvalidInput("empty tau range".into()));
        }
        let n = ((hi - lo) / step + T::lit(1e-9)).floor().to_usize().unwrap_or(0) + 1;
        Ok(Self { start: lo, step, len: n })
    }

    pub fn at(&self, i: usize) -> T {
        self.start + self.step * T::from_usize_lossy(i)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauScan<T> {
    /// One certificate per grid point, sorted by `tau`.
    pub certificates: Vec<RoucheCertificate<T>>,
    /// Passing shifts over grid size.
    pub hit_fraction: T,
}

impl<T: Real> TauScan<T> {
    pub fn passes(&self) -> impl Iterator<Item = &RoucheCertificate<T>> {
        self.certificates.iter().filter(|c| c.pass)
    }
}

/// Scan settings beyond the grid itself.
#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub samples: usize,
    /// Grid points per parallel batch (and per checkpoint callback).
    pub batch: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { samples: DEFAULT_CIRCLE_SAMPLES, batch: 1000 }
    }
}

fn certify_shift<T: Real>(f: &ComposedFunction<T>, a: &AnalyticFunction<T>, disk: &Disk<T>, tau: T, samples: usize) -> RoucheCertificate<T> {
    let shifted = f.with_shift(tau);
    if f.poly.classify() == PolyClass::MonomialWithDerivative {
        // the coefficient must not vanish on the circle for the monomial comparison
        if let Some(d) = f.poly.terms().values().next() {
            let worst = (0..64).fold(T::infinity(), |m, i| {
                let s = disk.point(T::TAU() * T::from_usize_lossy(i) / T::lit(64.0)) + cx(T::zero(), tau);
                m.min(ds_eval(d, s).0.norm())
            });
            if !(worst > T::lit(1e-12)) {
                return RoucheCertificate::failed(*disk, tau, Error::CoefficientVanishesOnCircle.to_string());
            }
        }
    }
    let z = as_analytic(&shifted);
    match rouche_check(&z, a, disk, samples) {
        Ok(mut cert) => {
            cert.tau = tau;
            if let Some(zero) = cert.zero_inside {
                let mapped = zero.location + cx(T::zero(), tau);
                cert.mapped_zero = Some(mapped);
                cert.mapped_residual = f.eval(mapped).ok().map(|v| v.norm());
            }
            cert
        }
        Err(e) => RoucheCertificate::failed(*disk, tau, e.to_string()),
    }
}

/// Rouche certificates for `F(s + i tau)` against `A` over the grid, in parallel batches.
///
/// `first` skips grid points already done (resuming a checkpointed scan); `on_batch`
/// receives each finished batch in grid order.
pub fn tau_scan_with<T: Real>(
    f: &ComposedFunction<T>,
    a: &AnalyticFunction<T>,
    disk: &Disk<T>,
    grid: &TauGrid<T>,
    first: usize,
    opts: &ScanOptions,
    on_batch: &mut dyn FnMut(&[RoucheCertificate<T>]) -> Result<()>,
) -> Result<TauScan<T>> {
    // A does not depend on tau, so a target vanishing on the circle is fatal once
    let probe = (0..opts.samples.max(8)).fold(T::infinity(), |m, i| {
        let s = disk.point(T::TAU() * T::from_usize_lossy(i) / T::from_usize_lossy(opts.samples.max(8)));
        m.min(a.eval(s).map(|v| v.norm()).unwrap_or(T::zero()))
    });
    if !(probe > T::zero()) {
        return Err(Error::TargetVanishesOnCircle);
    }
    let mut certificates = Vec::with_capacity(grid.len.saturating_sub(first));
    let batch = opts.batch.max(1);
    let mut i = first;
    while i < grid.len {
        let end = (i + batch).min(grid.len);
        let chunk: Vec<RoucheCertificate<T>> = (i..end)
            .into_par_iter()
            .map(|j| certify_shift(f, a, disk, grid.at(j), opts.samples))
            .collect();
        on_batch(&chunk)?;
        certificates.extend(chunk);
        i = end;
    }
    let hits = certificates.iter().filter(|c| c.pass).count();
    let hit_fraction = if certificates.is_empty() {
        T::zero()
    } else {
        T::from_usize_lossy(hits) / T::from_usize_lossy(certificates.len())
    };
    Ok(TauScan { certificates, hit_fraction })
}

/// [`tau_scan_with`] over `[lo, hi]` with default options.
pub fn tau_scan<T: Real>(
    f: &ComposedFunction<T>,
    a: &AnalyticFunction<T>,
    disk: &Disk<T>,
    tau_range: (T, T),
    step: T,
) -> Result<TauScan<T>> {
    let grid = TauGrid::new(tau_range.0, tau_range.1, step)?;
    tau_scan_with(f, a, disk, &grid, 0, &ScanOptions::default(), &mut |_| Ok(()))
}

fn dist_to_int<T: Real>(x: T) -> T {
    (x - x.round()).abs()
}

/// Grid shifts with `|| tau lambda / (2 pi M) || < delta` for every `lambda`, where `||.||`
/// is the distance to the nearest integer.
///
/// The exponents are used as given: rational dependence among them cannot be decided
/// from floating-point values, so no independent basis is extracted.
pub fn align_search<T: Real>(lambdas: &[T], m: u32, delta: T, tau_range: (T, T), step: T) -> Result<Vec<T>> {
    if lambdas.is_empty() {
        return Err(Error::InvalidInput("no exponents given".into()));
    }
    if m == 0 {
        return Err(Error::InvalidInput("modulus M must be at least 1".into()));
    }
    if !(delta > T::zero() && delta < T::lit(0.5)) {
        return Err(Error::InvalidInput(format!("delta must lie in (0, 1/2), got {delta}")));
    }
    let grid = TauGrid::new(tau_range.0, tau_range.1, step)?;
    let scale: Vec<T> = lambdas.iter().map(|&l| l / (T::TAU() * T::from_u32(m).unwrap_or_else(T::one))).collect();
    Ok((0..grid.len)
        .into_par_iter()
        .map(|i| grid.at(i))
        .filter(|&tau| scale.iter().all(|&w| dist_to_int(tau * w) < delta))
        .collect())
}

/// A centre in `rect` where at least two coefficient series exceed 1e-6 in modulus,
/// chosen among 100 grid points to maximize the second-largest coefficient modulus.
pub fn suggest_alpha<T: Real>(p: &DirichletPolynomial<T>, rect: &ComplexRect<T>) -> Result<C<T>> {
    let n = 10;
    let mut best: Option<(T, C<T>)> = None;
    for i in 0..n {
        for j in 0..n {
            let fx = (T::from_usize_lossy(i) + T::lit(0.5)) / T::from_usize_lossy(n);
            let fy = (T::from_usize_lossy(j) + T::lit(0.5)) / T::from_usize_lossy(n);
            let s = cx(rect.sigma_min + rect.width() * fx, rect.t_min + rect.height() * fy);
            let mut mods: Vec<T> = p.coefficients_at(s).iter().map(|(_, v)| v.norm()).collect();
            mods.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
            if mods.len() >= 2 && mods[1] > T::lit(1e-6) && best.map_or(true, |(m, _)| mods[1] > m) {
                best = Some((mods[1], s));
            }
        }
    }
    best.map(|(_, s)| s).ok_or(Error::DegenerateAtAlpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::cauchy_derivative;
    use crate::dirichlet::GeneralDirichletSeries;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    fn konst(re: f64) -> GeneralDirichletSeries<f64> {
        GeneralDirichletSeries::constant(c(re, 0.0))
    }

    #[test]
    fn jet_log_known_cases() {
        let b = jet_log_solve(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(b.iter().all(|z| z.norm() < 1e-15));
        let b = jet_log_solve(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((b[1] - c(1.0, 0.0)).norm() < 1e-15 && b[2].norm() < 1e-15);
        let b = jet_log_solve(&[c(2.0, 0.0), c(3.0, 0.0), c(5.0, 0.0)]).unwrap();
        assert!((b[0] - c(2f64.ln(), 0.0)).norm() < 1e-12);
        assert!((b[1] - c(1.5, 0.0)).norm() < 1e-12);
        assert!((b[2] - c(0.125, 0.0)).norm() < 1e-12);
        assert_eq!(jet_log_solve(&[c(0.0, 0.0), c(1.0, 0.0)]), Err(Error::ZeroLeadingJet));
    }

    #[test]
    fn monomial_target_formula() {
        let alpha = c(0.75, 0.0);
        let a = aux_monomial_target(alpha, 1).unwrap();
        assert!(a.eval(alpha).unwrap().norm() < 1e-15);
        let s = c(0.3, 0.2);
        let want = (-s / 0.75).exp() * (0.75 - s) / 0.75;
        assert!((a.eval(s).unwrap() - want).norm() < 1e-14);
        for k in 1..5usize {
            let alpha = c(0.6, 1.3);
            let a = aux_monomial_target(alpha, k).unwrap();
            let kf = k as f64;
            let want0 = kf.powi(k as i32) * alpha.powi(1 - k as i32) * if k % 2 == 1 { 1.0 } else { -1.0 };
            assert!((a.eval(c(0.0, 0.0)).unwrap() - want0).norm() < 1e-11 * want0.norm());
            // against Cauchy differentiation of s e^{-ks/alpha}
            let g = AnalyticFunction::from_fn("g", move |s: C<f64>| Ok(s * (-s * kf / alpha).exp()));
            let z = c(0.2, -0.4);
            let d = cauchy_derivative(&g, z, k, 0.5).unwrap();
            assert!((a.eval(z).unwrap() - d).norm() < 1e-9 * d.norm().max(1.0));
            // native jet against Cauchy of A itself
            let j = a.derivatives(z, 2).unwrap();
            let d2 = cauchy_derivative(&g, z, k + 2, 0.5).unwrap();
            assert!((j[2] - d2).norm() < 1e-8 * d2.norm().max(1.0));
        }
        assert!(matches!(aux_monomial_target(c(0.0, 0.0), 1), Err(Error::ZeroAlpha)));
    }

    #[test]
    fn theta_examples() {
        let p = DirichletPolynomial::new(2, vec![(vec![1, 0], konst(1.0)), (vec![0, 1], konst(1.0))]).unwrap();
        let s = solve_theta(&p, c(0.5, 0.0)).unwrap();
        assert!((s.theta[0] + 1.0).norm() < 1e-14 && s.theta[1] == c(1.0, 0.0));
        let p = DirichletPolynomial::new(2, vec![(vec![2, 0], konst(2.0)), (vec![0, 1], konst(3.0))]).unwrap();
        let s = solve_theta(&p, c(0.5, 0.0)).unwrap();
        assert!(s.theta[0].re.abs() < 1e-12 && (s.theta[0].im.abs() - 1.5f64.sqrt()).abs() < 1e-12);
        let p = DirichletPolynomial::new(1, vec![(vec![2], konst(1.0))]).unwrap();
        assert_eq!(solve_theta(&p, c(0.5, 0.0)), Err(Error::DegenerateAtAlpha));
    }

    #[test]
    fn theta_repins_when_pinned_equation_has_only_zero_root() {
        // X_0 X_1 - X_0 X_2: with all pins 1 the equation in theta_0 is identically zero
        let p = DirichletPolynomial::new(
            3,
            vec![(vec![1, 1, 0], konst(1.0)), (vec![1, 0, 1], konst(-1.0))],
        )
        .unwrap();
        // every pin gives theta_0 (theta_1 - theta_2) = 0; falls through to solving in X_1
        let s = solve_theta(&p, c(0.5, 0.0)).unwrap();
        assert!(s.residual < 1e-9);
        assert!(s.theta.iter().all(|t| t.norm() > 0.0));
        assert_ne!(s.solved_for, 0);
    }

    #[test]
    fn exp_poly_target_matches_jet() {
        let theta = [c(2.0, 1.0), c(-1.0, 0.5), c(0.3, 0.0), c(0.0, 2.0)];
        let f = ExpPolyTarget::from_jet(c(0.7, 3.0), &theta).unwrap();
        let j = f.jet(c(0.7, 3.0), 3);
        for (a, b) in j.iter().zip(theta.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
        let g = ExpPolyTarget::prefactor(c(0.5, 0.0), c(-2.0, 0.0));
        let s = c(0.3, 0.4);
        assert!((g.eval(s) - s * (s * -2.0).exp()).norm() < 1e-14);
    }

    #[test]
    fn rouche_trivial_cases() {
        let z = AnalyticFunction::from_fn("s", |s: C<f64>| Ok(s));
        let a = AnalyticFunction::from_fn("s+0.1", |s: C<f64>| Ok(s + 0.1));
        let unit = Disk::new(c(0.0, 0.0), 1.0).unwrap();
        let cert = rouche_check(&z, &a, &unit, 256).unwrap();
        assert!(cert.pass && cert.winding == Some(1));
        assert!((cert.max_diff - 0.1).abs() < 1e-12);
        let z2 = AnalyticFunction::from_fn("s+2", |s: C<f64>| Ok(s + 2.0));
        let cert = rouche_check(&z2, &z, &unit, 256).unwrap();
        assert!(!cert.pass);
        let on = AnalyticFunction::from_fn("s-1", |s: C<f64>| Ok(s - 1.0));
        assert_eq!(rouche_check(&z, &on, &unit, 256), Err(Error::TargetVanishesOnCircle));
    }

    #[test]
    fn align_search_cases() {
        let hits = align_search(&[2.0f64.ln(), 3.0f64.ln()], 1, 0.05, (0.0, 10.0), 0.01).unwrap();
        assert_eq!(hits[0], 0.0);
        let hits = align_search(&[1.0], 1, 0.1, (0.0, 20.0), 0.01).unwrap();
        for t in hits {
            let n = (t / std::f64::consts::TAU).round();
            assert!((t - std::f64::consts::TAU * n).abs() < 0.2 * std::f64::consts::PI + 1e-12);
        }
    }
}
