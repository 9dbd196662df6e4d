//! Truncated power series (jets) over complex scalars.
//!
//! Coefficients are Taylor coefficients: `coeffs[n] = f^(n)(a) / n!`.

use crate::error::{Error, Result};
use crate::scalar::{factorial, Real, C};

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    pub coeffs: Vec<C<T>>,
}

impl<T: Real> PowerSeries<T> {
    pub fn new(coeffs: Vec<C<T>>) -> Self {
        Self { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        Self { coeffs: vec![C::new(T::zero(), T::zero()); len] }
    }

    /// `c + h`, truncated to `len` coefficients.
    pub fn linear(c: C<T>, len: usize) -> Self {
        let mut s = Self::zero(len);
        if len > 0 {
            s.coeffs[0] = c;
        }
        if len > 1 {
            s.coeffs[1] = C::new(T::one(), T::zero());
        }
        s
    }

    /// `exp(a + b h)` truncated: coefficients `e^a b^n / n!`.
    pub fn exp_linear(a: C<T>, b: C<T>, len: usize) -> Self {
        let mut out = Vec::with_capacity(len);
        let mut term = a.exp();
        for n in 0..len {
            out.push(term);
            term = term * b / T::from_usize_lossy(n + 1);
        }
        Self { coeffs: out }
    }

    /// Series from derivative values `d[n] = f^(n)(a)`.
    pub fn from_derivatives(d: &[C<T>]) -> Self {
        Self { coeffs: d.iter().enumerate().map(|(n, v)| *v / factorial::<T>(n)).collect() }
    }

    /// Derivative values `f^(n)(a)` for `n < len`.
    pub fn derivatives(&self) -> Vec<C<T>> {
        self.coeffs.iter().enumerate().map(|(n, v)| *v * factorial::<T>(n)).collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        let z = C::new(T::zero(), T::zero());
        Self {
            coeffs: (0..n)
                .map(|i| *self.coeffs.get(i).unwrap_or(&z) + *other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        }
    }

    pub fn scale(&self, k: C<T>) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| *c * k).collect() }
    }

    /// Cauchy product truncated to the shorter length.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.len().min(other.len());
        let mut out = vec![C::new(T::zero(), T::zero()); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = out[i + j] + *a * *b;
            }
        }
        Self { coeffs: out }
    }

    /// Formal derivative; the result is one coefficient shorter.
    pub fn derivative(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| *c * T::from_usize_lossy(n))
                .collect(),
        }
    }

    /// Formal exponential.
    pub fn exp(&self) -> Self {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        // g = exp(p): n g_n = sum_{k=1}^{n} k p_k g_{n-k}
        let mut g = vec![C::new(T::zero(), T::zero()); n];
        g[0] = self.coeffs[0].exp();
        for m in 1..n {
            let mut acc = C::new(T::zero(), T::zero());
            for k in 1..=m {
                acc = acc + self.coeffs[k] * g[m - k] * T::from_usize_lossy(k);
            }
            g[m] = acc / T::from_usize_lossy(m);
        }
        Self { coeffs: g }
    }

    /// Formal logarithm with the principal branch for the constant term.
    pub fn log(&self) -> Result<Self> {
        let n = self.len();
        if n == 0 {
            return Ok(self.clone());
        }
        let g0 = self.coeffs[0];
        if g0.norm() == T::zero() {
            return Err(Error::ZeroLeadingJet);
        }
        // p' g = g'  =>  m p_m g_0 = m g_m - sum_{k=1}^{m-1} k p_k g_{m-k}
        let mut p = vec![C::new(T::zero(), T::zero()); n];
        p[0] = g0.ln();
        for m in 1..n {
            let mut acc = self.coeffs[m] * T::from_usize_lossy(m);
            for k in 1..m {
                acc = acc - p[k] * self.coeffs[m - k] * T::from_usize_lossy(k);
            }
            p[m] = acc / (g0 * T::from_usize_lossy(m));
        }
        Ok(Self { coeffs: p })
    }

    /// Multiplicative inverse `1 / g`.
    pub fn recip(&self) -> Result<Self> {
        let n = self.len();
        let g0 = match self.coeffs.first() {
            Some(c) if c.norm() > T::zero() => *c,
            _ => return Err(Error::ZeroLeadingJet),
        };
        let mut q = vec![C::new(T::zero(), T::zero()); n];
        q[0] = C::new(T::one(), T::zero()) / g0;
        for m in 1..n {
            let mut acc = C::new(T::zero(), T::zero());
            for k in 1..=m {
                acc = acc + self.coeffs[k] * q[m - k];
            }
            q[m] = -acc / g0;
        }
        Ok(Self { coeffs: q })
    }

    /// Horner evaluation of the truncated polynomial at `h`.
    pub fn eval(&self, h: C<T>) -> C<T> {
        self.coeffs.iter().rev().fold(C::new(T::zero(), T::zero()), |acc, c| acc * h + *c)
    }
}
