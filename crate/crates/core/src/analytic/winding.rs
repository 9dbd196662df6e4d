use rayon::prelude::*;

use super::AnalyticFunction;
use crate::error::{Error, Result};
use crate::geometry::Contour;
use crate::scalar::{phase_step, Real, C};

/// Sampling policy for [`winding_number`].
#[derive(Debug, Clone, Copy)]
pub struct WindingOptions<T> {
    /// Initial samples per rectangle edge (four times this on a circle).
    pub base_samples: usize,
    /// Minimum initial samples per unit of contour length.
    pub min_density: T,
    /// Hard budget on function evaluations.
    pub max_samples: usize,
    /// A sample with `|f|` below this is reported as a boundary zero when the Newton step
    /// `|f / f'|` is below it as well; small but steep values are not zeros.
    pub zero_threshold: T,
}

impl<T: Real> Default for WindingOptions<T> {
    fn default() -> Self {
        Self {
            base_samples: 64,
            min_density: T::lit(10.0),
            max_samples: 1 << 20,
            zero_threshold: T::lit(1e-9),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingResult<T> {
    pub winding: i64,
    /// Phase sum in turns before rounding.
    pub raw_turns: T,
    pub min_modulus: T,
    pub samples: usize,
}

#[derive(Clone, Copy)]
enum Piece<T> {
    Line(C<T>, C<T>),
    Arc { center: C<T>, radius: T, start: T, end: T },
}

impl<T: Real> Piece<T> {
    fn at(&self, u: T) -> C<T> {
        match *self {
            Piece::Line(a, b) => a + (b - a) * u,
            Piece::Arc { center, radius, start, end } => {
                center + C::from_polar(radius, start + (end - start) * u)
            }
        }
    }

    fn length(&self) -> T {
        match *self {
            Piece::Line(a, b) => (b - a).norm(),
            Piece::Arc { radius, start, end, .. } => radius * (end - start).abs(),
        }
    }
}

fn pieces<T: Real>(contour: &Contour<T>, opts: &WindingOptions<T>) -> Vec<Piece<T>> {
    let mut out = Vec::new();
    match contour {
        Contour::Rect(r) => {
            let c = r.corners();
            for i in 0..4 {
                let edge = Piece::Line(c[i], c[(i + 1) % 4]);
                let n = segments_for(edge.length(), opts.base_samples, opts.min_density);
                let step = T::one() / T::from_usize_lossy(n);
                for j in 0..n {
                    let a = edge.at(step * T::from_usize_lossy(j));
                    let b = if j + 1 == n { c[(i + 1) % 4] } else { edge.at(step * T::from_usize_lossy(j + 1)) };
                    out.push(Piece::Line(a, b));
                }
            }
        }
        Contour::Circle(d) => {
            let tau = T::TAU();
            let n = segments_for(d.radius * tau, 4 * opts.base_samples, opts.min_density);
            let step = tau / T::from_usize_lossy(n);
            for j in 0..n {
                out.push(Piece::Arc {
                    center: d.center,
                    radius: d.radius,
                    start: step * T::from_usize_lossy(j),
                    end: if j + 1 == n { tau } else { step * T::from_usize_lossy(j + 1) },
                });
            }
        }
    }
    out
}

fn segments_for<T: Real>(length: T, base: usize, density: T) -> usize {
    let by_density = (length * density).ceil().to_usize().unwrap_or(base);
    base.max(by_density).max(1)
}

struct SegmentOutcome<T> {
    turns: T,
    min_modulus: T,
    samples: usize,
}

const MAX_DEPTH: usize = 48;

/// `f(s)` and the phase rate `|f'/f|` (zero when `f` has no native derivative).
fn sample<T: Real>(f: &AnalyticFunction<T>, s: C<T>, threshold: T) -> Result<(C<T>, T)> {
    let native = f.max_derivative_order() >= 1;
    let jet = if native { f.derivatives(s, 1) } else { f.eval(s).map(|v| vec![v]) };
    let jet = match jet {
        Ok(j) => j,
        // a pole (or any singular evaluation) on the contour is handled like a boundary zero
        Err(_) => return Err(Error::BoundaryZero { min_modulus: 0.0 }),
    };
    let v = jet[0];
    let m = v.norm();
    if m == T::zero() {
        return Err(Error::BoundaryZero { min_modulus: 0.0 });
    }
    if m < threshold {
        let d = if native { Ok(jet[1]) } else { f.derivative(s, 1) };
        match d {
            Ok(d) if m >= threshold * d.norm() => {}
            _ => return Err(Error::BoundaryZero { min_modulus: m.as_f64() }),
        }
    }
    let rate = if native { jet[1].norm() / m } else { T::zero() };
    Ok((v, rate))
}

/// Distance from `p` to the chord from `a` to `b`.
fn chord_distance<T: Real>(a: C<T>, b: C<T>, p: C<T>) -> T {
    let d = b - a;
    let l2 = d.norm_sqr();
    if l2 == T::zero() {
        return (p - a).norm();
    }
    let u = ((p - a) * d.conj()).re / l2;
    (p - (a + d * u.max(T::zero()).min(T::one()))).norm()
}

/// A declared pole of order `q` at distance `d` turns the phase by about `q L / d` along a
/// piece of length `L`; pieces longer than `d / q` are split regardless of the sampled step.
fn too_close_to_pole<T: Real>(f: &AnalyticFunction<T>, a: C<T>, b: C<T>) -> bool {
    let len = (b - a).norm();
    f.poles()
        .iter()
        .any(|p| len * T::from_u32(p.order).unwrap_or_else(T::one) > chord_distance(a, b, p.location))
}

fn refine_segment<T: Real>(
    f: &AnalyticFunction<T>,
    piece: Piece<T>,
    (fa, ra): (C<T>, T),
    (fb, rb): (C<T>, T),
    opts: &WindingOptions<T>,
    floor: T,
) -> Result<SegmentOutcome<T>> {
    let half_pi = T::FRAC_PI_2();
    let mut stack = vec![(T::zero(), fa, ra, T::one(), fb, rb, 0usize)];
    let mut total = T::zero();
    let mut min_mod = fa.norm().min(fb.norm());
    let mut samples = 0usize;
    let len = piece.length();
    while let Some((u0, f0, r0, u1, f1, r1, depth)) = stack.pop() {
        let d = phase_step(f0, f1);
        // the rate bound catches whole turns that the wrapped difference cannot see
        let slow = len * (u1 - u0) * r0.max(r1) < T::PI();
        if d.abs() < half_pi && slow && !too_close_to_pole(f, piece.at(u0), piece.at(u1)) {
            total = total + d;
            continue;
        }
        if depth >= MAX_DEPTH || len * (u1 - u0) < floor {
            return Err(Error::BoundaryZero { min_modulus: min_mod.as_f64() });
        }
        if samples >= opts.max_samples {
            return Err(Error::NonConvergence(format!(
                "contour sample budget of {} exhausted",
                opts.max_samples
            )));
        }
        let um = (u0 + u1) / T::lit(2.0);
        let (fm, rm) = sample(f, piece.at(um), opts.zero_threshold)?;
        samples += 1;
        min_mod = min_mod.min(fm.norm());
        // second half pushed first so the first half is summed first
        stack.push((um, fm, rm, u1, f1, r1, depth + 1));
        stack.push((u0, f0, r0, um, fm, rm, depth + 1));
    }
    Ok(SegmentOutcome { turns: total / T::TAU(), min_modulus: min_mod, samples })
}

/// Winding number of `f` along the positively oriented `contour`.
///
/// Consecutive phase samples are refined until they differ by less than pi/2 and, for functions
/// with a native derivative, until `|f'/f|` times the step is below pi. A zero or
/// pole on the contour (modulus below the threshold, singular evaluation, or refinement
/// collapsing onto a point) is reported as [`Error::BoundaryZero`].
pub fn winding_number<T: Real>(
    f: &AnalyticFunction<T>,
    contour: &Contour<T>,
    opts: &WindingOptions<T>,
) -> Result<WindingResult<T>> {
    let scale = contour.scale();
    let floor = scale * T::lit(1e-13);
    for p in f.poles() {
        if contour.distance_to_curve(p.location) <= scale * T::lit(1e-9) {
            return Err(Error::BoundaryZero { min_modulus: 0.0 });
        }
    }
    let pcs = pieces(contour, opts);
    // all piece endpoints; piece i runs from node i to node i+1 (closed)
    let nodes: Vec<C<T>> = pcs.iter().map(|p| p.at(T::zero())).collect();
    let values: Vec<(C<T>, T)> = nodes
        .par_iter()
        .map(|&s| sample(f, s, opts.zero_threshold))
        .collect::<Result<_>>()?;
    let n = pcs.len();
    let outcomes: Vec<SegmentOutcome<T>> = (0..n)
        .into_par_iter()
        .map(|i| refine_segment(f, pcs[i], values[i], values[(i + 1) % n], opts, floor))
        .collect::<Result<_>>()?;

    let mut turns = T::zero();
    let mut min_mod = T::infinity();
    let mut samples = n;
    for o in &outcomes {
        turns = turns + o.turns;
        min_mod = min_mod.min(o.min_modulus);
        samples += o.samples;
    }
    if samples > opts.max_samples {
        return Err(Error::NonConvergence(format!(
            "contour used {samples} samples, budget {}",
            opts.max_samples
        )));
    }
    let rounded = turns.round();
    if (turns - rounded).abs() >= T::lit(0.25) {
        return Err(Error::NonConvergence(format!(
            "phase sum {} turns is not near an integer",
            turns
        )));
    }
    Ok(WindingResult {
        winding: rounded.to_i64().unwrap_or(0),
        raw_turns: turns,
        min_modulus: min_mod,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ComplexRect, Disk};

    fn poly(roots: Vec<C<f64>>) -> AnalyticFunction<f64> {
        AnalyticFunction::from_fn("poly", move |s| Ok(roots.iter().fold(C::new(1.0, 0.0), |acc, r| acc * (s - r))))
    }

    #[test]
    fn single_enclosed_root() {
        let f = poly(vec![C::new(0.3, 0.3)]);
        let r = ComplexRect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let w = winding_number(&f, &r.into(), &WindingOptions::default()).unwrap();
        assert_eq!(w.winding, 1);
        assert!((w.raw_turns - 1.0).abs() < 1e-9);
    }

    #[test]
    fn multiplicities_add() {
        let f = poly(vec![C::new(0.3, 0.3), C::new(0.7, 0.6)]);
        let r = ComplexRect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(winding_number(&f, &r.into(), &WindingOptions::default()).unwrap().winding, 2);
    }

    #[test]
    fn simple_pole_winds_negatively() {
        let f = AnalyticFunction::from_fn("inv", |s: C<f64>| Ok(C::new(1.0, 0.0) / (s - C::new(1.0, 0.0))));
        let d = Disk::new(C::new(1.0, 0.0), 0.5).unwrap();
        assert_eq!(winding_number(&f, &d.into(), &WindingOptions::default()).unwrap().winding, -1);
    }

    #[test]
    fn zero_on_boundary_is_reported() {
        let f = poly(vec![C::new(0.5, 0.0)]);
        let r = ComplexRect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let err = winding_number(&f, &r.into(), &WindingOptions::default()).unwrap_err();
        assert!(matches!(err, Error::BoundaryZero { .. }));
    }

    #[test]
    fn nearby_outside_root_triggers_refinement() {
        // root just outside the left edge; coarse sampling alone would see a half turn jump
        let f = poly(vec![C::new(-1e-6, 0.37)]);
        let r = ComplexRect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let w = winding_number(&f, &r.into(), &WindingOptions::default()).unwrap();
        assert_eq!(w.winding, 0);
        assert!(w.samples > 4 * 64);
    }

    #[test]
    fn budget_exhaustion_is_nonconvergence() {
        let f = poly(vec![C::new(-1e-7, 0.37)]);
        let r = ComplexRect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let opts = WindingOptions { max_samples: 260, ..WindingOptions::default() };
        assert!(matches!(winding_number(&f, &r.into(), &opts), Err(Error::NonConvergence(_))));
    }

    #[test]
    fn works_in_single_precision() {
        let f = AnalyticFunction::<f32>::from_fn("p32", |s| Ok((s - C::new(0.25f32, 0.5)) * (s - C::new(0.75f32, 0.5))));
        let r = ComplexRect::new(0.0f32, 1.0, 0.0, 1.0).unwrap();
        let opts = WindingOptions { zero_threshold: 1e-5f32, ..WindingOptions::default() };
        assert_eq!(winding_number(&f, &r.into(), &opts).unwrap().winding, 2);
    }
}
