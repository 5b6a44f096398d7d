//! Truncated Taylor arithmetic ("jets").
//!
//! A `Jet<N>` holds the Taylor coefficients f(x₀), f′(x₀), f″(x₀)/2!, … up to
//! order N−1 of a function around a fixed point. Arithmetic on jets is forward
//! mode automatic differentiation of arbitrary order: a first-order dual number
//! is `Jet<2>`, a dual-of-dual `Jet<3>`. Differential operators such as
//! A = (d/dx + W)/√2 act on a jet by shifting coefficients, which consumes one
//! order each time, so N is chosen by the caller from the number of stacked
//! first-order operators.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<const N: usize> {
    coeffs: [f64; N],
}

impl<const N: usize> Jet<N> {
    pub fn constant(value: f64) -> Self {
        let mut coeffs = [0.0; N];
        coeffs[0] = value;
        Self { coeffs }
    }

    /// The independent variable at `x0`.
    pub fn variable(x0: f64) -> Self {
        let mut coeffs = [0.0; N];
        coeffs[0] = x0;
        if N > 1 {
            coeffs[1] = 1.0;
        }
        Self { coeffs }
    }

    pub fn from_taylor(coeffs: [f64; N]) -> Self {
        Self { coeffs }
    }

    /// Builds a jet from plain derivatives f⁽ᵏ⁾(x₀).
    pub fn from_derivatives(derivs: [f64; N]) -> Self {
        let mut coeffs = derivs;
        let mut fact = 1.0;
        for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
            fact *= k as f64;
            *c /= fact;
        }
        Self { coeffs }
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn taylor(&self) -> &[f64; N] {
        &self.coeffs
    }

    /// k-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.coeffs[k] * fact
    }

    pub fn scale(mut self, s: f64) -> Self {
        self.coeffs.iter_mut().for_each(|c| *c *= s);
        self
    }

    /// d/dx. The highest coefficient is unknown afterwards and is set to zero.
    pub fn d_dx(&self) -> Self {
        let mut coeffs = [0.0; N];
        for k in 0..N.saturating_sub(1) {
            coeffs[k] = (k + 1) as f64 * self.coeffs[k + 1];
        }
        Self { coeffs }
    }

    pub fn recip(&self) -> Self {
        let g = &self.coeffs;
        let mut r = [0.0; N];
        r[0] = 1.0 / g[0];
        for k in 1..N {
            let s: f64 = (1..=k).map(|j| g[j] * r[k - j]).sum();
            r[k] = -s / g[0];
        }
        Self { coeffs: r }
    }

    pub fn exp(&self) -> Self {
        let g = &self.coeffs;
        let mut e = [0.0; N];
        e[0] = g[0].exp();
        for k in 1..N {
            let s: f64 = (1..=k).map(|j| j as f64 * g[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Self { coeffs: e }
    }

    /// gᵖ for real p; requires g(x₀) > 0 unless p is a non-negative integer.
    pub fn powf(&self, p: f64) -> Self {
        let g = &self.coeffs;
        let mut r = [0.0; N];
        r[0] = g[0].powf(p);
        if g[0] == 0.0 {
            // only reachable for integer powers of a jet vanishing at x0
            return self.powi_by_mul(p);
        }
        for k in 1..N {
            let s: f64 = (1..=k)
                .map(|j| (p * j as f64 - (k - j) as f64) * g[j] * r[k - j])
                .sum();
            r[k] = s / (k as f64 * g[0]);
        }
        Self { coeffs: r }
    }

    fn powi_by_mul(&self, p: f64) -> Self {
        let n = p.round() as u32;
        (0..n).fold(Self::constant(1.0), |acc, _| acc * *self)
    }

    /// f(g) given the derivatives f⁽ᵏ⁾ at g(x₀).
    pub fn compose(&self, outer_derivs: &[f64; N]) -> Self {
        let mut delta = *self;
        delta.coeffs[0] = 0.0;
        // Horner in delta with Taylor coefficients of f
        let mut fact = 1.0;
        let mut taylor = [0.0; N];
        for (k, d) in outer_derivs.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            taylor[k] = d / fact;
        }
        let mut acc = Self::constant(taylor[N - 1]);
        for k in (0..N - 1).rev() {
            acc = acc * delta;
            acc.coeffs[0] += taylor[k];
        }
        acc
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> AddAssign for Jet<N> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const N: usize> Add<f64> for Jet<N> {
    type Output = Self;
    fn add(mut self, rhs: f64) -> Self {
        self.coeffs[0] += rhs;
        self
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Sub<f64> for Jet<N> {
    type Output = Self;
    fn sub(mut self, rhs: f64) -> Self {
        self.coeffs[0] -= rhs;
        self
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = [0.0; N];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in rhs.coeffs[..N - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }
}

impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}
