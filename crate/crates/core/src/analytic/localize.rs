use super::count::{count_zeros, CountOptions, LocatedZero, ZeroReport};
use super::winding::{winding_number, WindingOptions};
use super::AnalyticFunction;
use crate::error::{Error, Result};
use crate::geometry::{ComplexRect, Contour, Disk};
use crate::scalar::{Real, C};

#[derive(Debug, Clone)]
pub struct LocalizeOptions<T> {
    /// Residual tolerance `|f(z)|` for an accepted zero.
    pub tol: T,
    pub count: CountOptions<T>,
    /// Quadrisection stops below this side length.
    pub min_side: T,
    pub newton_max_iter: usize,
    /// Fail with [`Error::ClusterUnresolved`] instead of reporting an unconverged cluster.
    pub strict: bool,
}

impl<T: Real> Default for LocalizeOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(1e-8),
            count: CountOptions::default(),
            min_side: T::lit(1e-6),
            newton_max_iter: 50,
            strict: true,
        }
    }
}

/// Counts and localizes the zeros of `f` in `region`, with multiplicities.
pub fn localize_zeros<T: Real>(f: &AnalyticFunction<T>, region: &ComplexRect<T>, tol: T) -> Result<ZeroReport<T>> {
    localize_zeros_with(f, region, &LocalizeOptions { tol, ..LocalizeOptions::default() })
}

pub fn localize_zeros_with<T: Real>(
    f: &AnalyticFunction<T>,
    region: &ComplexRect<T>,
    opts: &LocalizeOptions<T>,
) -> Result<ZeroReport<T>> {
    let mut report = count_zeros(f, &Contour::Rect(*region), &opts.count)?;
    let rect = match report.region {
        Contour::Rect(r) => r,
        Contour::Circle(_) => unreachable!("rectangle requested"),
    };
    let mut zeros = Vec::new();
    split_and_polish(f, rect, report.count, opts, 0, &mut zeros)?;
    zeros.sort_by(|a, b| {
        a.location
            .im
            .partial_cmp(&b.location.im)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.location.re.partial_cmp(&b.location.re).unwrap_or(std::cmp::Ordering::Equal))
    });
    report.zeros = zeros;
    Ok(report)
}

const MAX_LEVELS: usize = 64;

fn split_and_polish<T: Real>(
    f: &AnalyticFunction<T>,
    rect: ComplexRect<T>,
    count: usize,
    opts: &LocalizeOptions<T>,
    level: usize,
    out: &mut Vec<LocatedZero<T>>,
) -> Result<()> {
    if count == 0 {
        return Ok(());
    }
    if let Some(z) = polish(f, &rect, count, opts)? {
        out.push(z);
        return Ok(());
    }
    if rect.max_side() > opts.min_side && level < MAX_LEVELS {
        if let Some(children) = partition(f, &rect, count, opts)? {
            for (child, n) in children {
                split_and_polish(f, child, n, opts, level + 1, out)?;
            }
            return Ok(());
        }
    }
    let c = rect.center();
    if opts.strict {
        return Err(Error::ClusterUnresolved { re: c.re.as_f64(), im: c.im.as_f64(), winding: count as i64 });
    }
    let residual = f.eval(c).map(|v| v.norm()).unwrap_or(T::infinity());
    out.push(LocatedZero { location: c, multiplicity: count as u32, residual, converged: false });
    Ok(())
}

/// Quadrisects `rect`, nudging the split lines until no child edge hits a zero and the
/// child counts add up to the parent count.
fn partition<T: Real>(
    f: &AnalyticFunction<T>,
    rect: &ComplexRect<T>,
    count: usize,
    opts: &LocalizeOptions<T>,
) -> Result<Option<Vec<(ComplexRect<T>, usize)>>> {
    let strict = CountOptions { winding: opts.count.winding, perturbations: Vec::new() };
    for &frac in &[0.5, 0.4629, 0.5371, 0.4193, 0.5807, 0.3711] {
        let fr = T::lit(frac);
        let mut kids = Vec::with_capacity(4);
        let mut total = 0usize;
        let mut ok = true;
        for child in rect.split(fr, fr) {
            match count_zeros(f, &Contour::Rect(child), &strict) {
                Ok(rep) => {
                    total += rep.count;
                    if rep.count > 0 {
                        kids.push((child, rep.count));
                    }
                }
                Err(Error::BoundaryZero { .. }) => {
                    ok = false;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if ok && total == count {
            return Ok(Some(kids));
        }
    }
    Ok(None)
}

/// Newton iteration (multiplicity-corrected) from the centre, followed by a shrinking-disk
/// multiplicity check. `None` means the caller should subdivide further.
fn polish<T: Real>(
    f: &AnalyticFunction<T>,
    rect: &ComplexRect<T>,
    count: usize,
    opts: &LocalizeOptions<T>,
) -> Result<Option<LocatedZero<T>>> {
    let diag = (rect.width() * rect.width() + rect.height() * rect.height()).sqrt();
    let m = T::from_usize_lossy(count);
    let mut z = rect.center();
    let mut converged = false;
    for _ in 0..opts.newton_max_iter {
        let jet = match f.derivatives(z, 1) {
            Ok(j) => j,
            Err(_) => return Ok(None),
        };
        if jet[0].norm() == T::zero() {
            converged = true;
            break;
        }
        if jet[1].norm() == T::zero() {
            return Ok(None);
        }
        let step = jet[0] / jet[1] * m;
        z = z - step;
        if (z - rect.center()).norm() > diag * T::lit(2.0) {
            return Ok(None);
        }
        if step.norm() <= T::lit(4.0) * T::epsilon() * T::one().max(z.norm()) {
            converged = true;
            break;
        }
    }
    let residual = match f.eval(z) {
        Ok(v) => v.norm(),
        Err(_) => return Ok(None),
    };
    if !(converged || residual <= opts.tol * T::lit(1e-3)) || residual > opts.tol {
        return Ok(None);
    }
    let slack = diag * T::lit(1e-9);
    if !rect.contains_closed(z, slack) {
        return Ok(None);
    }
    match isolating_multiplicity(f, z, diag, opts)? {
        Some(mult) if mult as usize == count => Ok(Some(LocatedZero { location: z, multiplicity: mult, residual, converged: true })),
        _ => Ok(None),
    }
}

/// Winding number of the isolating disk around `z`, shrunk until its radius is at most
/// `10 tol`. Returns `None` when the winding is not stable while shrinking.
fn isolating_multiplicity<T: Real>(f: &AnalyticFunction<T>, z: C<T>, diag: T, opts: &LocalizeOptions<T>) -> Result<Option<u32>> {
    let target = opts.tol * T::lit(10.0);
    let mut r = (diag / T::lit(2.0)).max(target);
    let small = WindingOptions { zero_threshold: T::zero(), ..opts.count.winding };
    let mut last: Option<i64> = None;
    loop {
        let disk = Disk::new(z, r)?;
        let w = match winding_number(f, &disk.into(), &small) {
            Ok(w) => w.winding,
            Err(Error::BoundaryZero { .. }) | Err(Error::NonConvergence(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        if w < 1 {
            return Ok(None);
        }
        if let Some(prev) = last {
            if prev != w {
                return Ok(None);
            }
        }
        last = Some(w);
        if r <= target {
            break;
        }
        r = (r / T::lit(8.0)).max(target);
    }
    Ok(last.map(|w| w as u32))
}
