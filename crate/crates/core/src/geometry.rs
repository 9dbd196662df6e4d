//! Rectangles and disks in the complex plane.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{cx, Real, C};

/// Axis-aligned rectangle `sigma_min < Re s < sigma_max`, `t_min < Im s < t_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRect<T> {
    pub sigma_min: T,
    pub sigma_max: T,
    pub t_min: T,
    pub t_max: T,
}

impl<T: Real> ComplexRect<T> {
    pub fn new(sigma_min: T, sigma_max: T, t_min: T, t_max: T) -> Result<Self> {
        if !(sigma_min < sigma_max) || !(t_min < t_max) {
            return Err(Error::InvalidInput(format!(
                "degenerate rectangle [{sigma_min}, {sigma_max}] x [{t_min}, {t_max}]"
            )));
        }
        Ok(Self { sigma_min, sigma_max, t_min, t_max })
    }

    /// The whole plane, used as the validity domain of entire functions.
    pub fn plane() -> Self {
        Self {
            sigma_min: T::neg_infinity(),
            sigma_max: T::infinity(),
            t_min: T::neg_infinity(),
            t_max: T::infinity(),
        }
    }

    pub fn width(&self) -> T {
        self.sigma_max - self.sigma_min
    }

    pub fn height(&self) -> T {
        self.t_max - self.t_min
    }

    pub fn center(&self) -> C<T> {
        let two = T::lit(2.0);
        cx((self.sigma_min + self.sigma_max) / two, (self.t_min + self.t_max) / two)
    }

    /// Strict interior test.
    pub fn contains(&self, s: C<T>) -> bool {
        s.re > self.sigma_min && s.re < self.sigma_max && s.im > self.t_min && s.im < self.t_max
    }

    /// Closed-region test with a slack `eps` on every side.
    pub fn contains_closed(&self, s: C<T>, eps: T) -> bool {
        s.re >= self.sigma_min - eps
            && s.re <= self.sigma_max + eps
            && s.im >= self.t_min - eps
            && s.im <= self.t_max + eps
    }

    /// Distance from an interior point to the boundary (zero outside).
    pub fn distance_to_boundary(&self, s: C<T>) -> T {
        if !self.contains(s) {
            return T::zero();
        }
        (s.re - self.sigma_min)
            .min(self.sigma_max - s.re)
            .min(s.im - self.t_min)
            .min(self.t_max - s.im)
    }

    /// Distance from `s` to the closest point of the boundary curve.
    pub fn distance_to_edge(&self, s: C<T>) -> T {
        let clamp_re = s.re.max(self.sigma_min).min(self.sigma_max);
        let clamp_im = s.im.max(self.t_min).min(self.t_max);
        if self.contains(s) {
            return self.distance_to_boundary(s);
        }
        (cx(clamp_re, clamp_im) - s).norm()
    }

    /// Grows the rectangle by `d` on every side.
    pub fn expanded(&self, d: T) -> Self {
        Self {
            sigma_min: self.sigma_min - d,
            sigma_max: self.sigma_max + d,
            t_min: self.t_min - d,
            t_max: self.t_max + d,
        }
    }

    /// Corners in counter-clockwise order starting from the lower left.
    pub fn corners(&self) -> [C<T>; 4] {
        [
            cx(self.sigma_min, self.t_min),
            cx(self.sigma_max, self.t_min),
            cx(self.sigma_max, self.t_max),
            cx(self.sigma_min, self.t_max),
        ]
    }

    /// Splits at fractions `fx`, `fy` of the width/height into four children.
    pub fn split(&self, fx: T, fy: T) -> [Self; 4] {
        let xm = self.sigma_min + self.width() * fx;
        let ym = self.t_min + self.height() * fy;
        [
            Self { sigma_min: self.sigma_min, sigma_max: xm, t_min: self.t_min, t_max: ym },
            Self { sigma_min: xm, sigma_max: self.sigma_max, t_min: self.t_min, t_max: ym },
            Self { sigma_min: xm, sigma_max: self.sigma_max, t_min: ym, t_max: self.t_max },
            Self { sigma_min: self.sigma_min, sigma_max: xm, t_min: ym, t_max: self.t_max },
        ]
    }

    pub fn max_side(&self) -> T {
        self.width().max(self.height())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "rect",
            "sigma_min": self.sigma_min.as_f64(),
            "sigma_max": self.sigma_max.as_f64(),
            "t_min": self.t_min.as_f64(),
            "t_max": self.t_max.as_f64(),
        })
    }
}

/// Closed disk `|s - center| <= radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk<T> {
    pub center: C<T>,
    pub radius: T,
}

impl<T: Real> Disk<T> {
    pub fn new(center: C<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("disk radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn contains(&self, s: C<T>) -> bool {
        (s - self.center).norm() < self.radius
    }

    /// Point on the circle at angle `theta`.
    pub fn point(&self, theta: T) -> C<T> {
        self.center + C::from_polar(self.radius, theta)
    }

    /// Concentric disk with another radius.
    pub fn with_radius(&self, radius: T) -> Result<Self> {
        Self::new(self.center, radius)
    }

    /// Smallest axis-aligned rectangle containing the disk.
    pub fn bounding_rect(&self) -> ComplexRect<T> {
        ComplexRect {
            sigma_min: self.center.re - self.radius,
            sigma_max: self.center.re + self.radius,
            t_min: self.center.im - self.radius,
            t_max: self.center.im + self.radius,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "disk",
            "re": self.center.re.as_f64(),
            "im": self.center.im.as_f64(),
            "radius": self.radius.as_f64(),
        })
    }
}

/// Closed, positively oriented contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contour<T> {
    Rect(ComplexRect<T>),
    Circle(Disk<T>),
}

impl<T: Real> Contour<T> {
    /// Strict interior test.
    pub fn encloses(&self, s: C<T>) -> bool {
        match self {
            Contour::Rect(r) => r.contains(s),
            Contour::Circle(d) => d.contains(s),
        }
    }

    /// Distance from `s` to the contour curve.
    pub fn distance_to_curve(&self, s: C<T>) -> T {
        match self {
            Contour::Rect(r) => r.distance_to_edge(s),
            Contour::Circle(d) => ((s - d.center).norm() - d.radius).abs(),
        }
    }

    /// Characteristic length, used to scale refinement floors.
    pub fn scale(&self) -> T {
        match self {
            Contour::Rect(r) => r.max_side(),
            Contour::Circle(d) => d.radius,
        }
    }

    /// Contour grown outward by `d`.
    pub fn expanded(&self, d: T) -> Self {
        match self {
            Contour::Rect(r) => Contour::Rect(r.expanded(d)),
            Contour::Circle(disk) => Contour::Circle(Disk { center: disk.center, radius: disk.radius + d }),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Contour::Rect(r) => r.to_json(),
            Contour::Circle(d) => d.to_json(),
        }
    }
}

impl<T> From<ComplexRect<T>> for Contour<T> {
    fn from(r: ComplexRect<T>) -> Self {
        Contour::Rect(r)
    }
}

impl<T> From<Disk<T>> for Contour<T> {
    fn from(d: Disk<T>) -> Self {
        Contour::Circle(d)
    }
}
