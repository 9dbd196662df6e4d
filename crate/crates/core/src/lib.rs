//! Numerical machinery for zeros of polynomials in the derivatives of zeta functions.
//!
//! The contour, series, ring, polynomial and Rouche layers are generic over a [`Real`]
//! scalar; the zeta engine, the experiment suite and the gallery work in `f64`. The type
//! aliases below name the `f64` instantiations used throughout the front ends.

pub mod analytic;
pub mod counting;
pub mod dirichlet;
pub mod error;
pub mod gallery;
pub mod geometry;
pub mod poly;
pub mod quad;
pub mod roots;
pub mod rouche;
pub mod scalar;
pub mod series;
pub mod zeta;

pub use error::{Error, ErrorClass, Result};
pub use scalar::Real;

/// Double-precision complex number.
pub type Complex64 = num_complex::Complex<f64>;
pub type Rect = geometry::ComplexRect<f64>;
pub type Circle = geometry::Disk<f64>;
pub type Analytic = analytic::AnalyticFunction<f64>;
pub type Report = analytic::ZeroReport<f64>;
pub type Series = dirichlet::GeneralDirichletSeries<f64>;
pub type Polynomial = poly::DirichletPolynomial<f64>;
pub type Composed = poly::ComposedFunction<f64>;
pub type Certificate = rouche::RoucheCertificate<f64>;
