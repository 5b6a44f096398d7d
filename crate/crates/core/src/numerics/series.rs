//! Truncated generalized power series x^σ Σᵢ cᵢ x^{o+i} about the origin.
//!
//! Radial wavefunctions behave like x^σ times an analytic function, and the
//! ladder operators contain 1/x and 1/x² terms. Applied pointwise near x = 0
//! those terms cancel catastrophically; on series coefficients the same
//! cancellation is exact, so this representation is used close to the origin.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    /// Non-integer part of the exponent.
    pub sigma: f64,
    /// Integer exponent of the first coefficient.
    pub offset: i32,
    pub coeffs: Vec<f64>,
}

impl Series {
    /// The exponent σ + o is split so that σ ∈ [0, 1).
    pub fn new(sigma: f64, offset: i32, coeffs: Vec<f64>) -> Self {
        let whole = sigma.floor();
        Self {
            sigma: sigma - whole,
            offset: offset + whole as i32,
            coeffs,
        }
    }

    /// Σ cᵢ xⁱ.
    pub fn analytic(coeffs: Vec<f64>) -> Self {
        Self::new(0.0, 0, coeffs)
    }

    pub fn constant(value: f64, len: usize) -> Self {
        let mut c = vec![0.0; len];
        c[0] = value;
        Self::analytic(c)
    }

    /// The monomial x^σ carried with `len` coefficients.
    pub fn power(sigma: f64, len: usize) -> Self {
        let mut c = vec![0.0; len];
        c[0] = 1.0;
        Self::new(sigma, 0, c)
    }

    /// f(x²) for a power series f(t) = Σ aₖ tᵏ, truncated to `len` terms.
    pub fn in_x_squared(a: &[f64], len: usize) -> Self {
        let mut c = vec![0.0; len];
        for (k, v) in a.iter().enumerate() {
            if 2 * k < len {
                c[2 * k] = *v;
            }
        }
        Self::analytic(c)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(mut self, s: f64) -> Self {
        self.coeffs.iter_mut().for_each(|c| *c *= s);
        self
    }

    /// Multiplication by xᵏ.
    pub fn shift(mut self, k: i32) -> Self {
        self.offset += k;
        self
    }

    pub fn d_dx(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * (self.sigma + (self.offset + i as i32) as f64))
            .collect();
        Self::new(self.sigma, self.offset - 1, coeffs)
    }

    /// Zeroes every term whose exponent lies below `exponent`.
    pub fn drop_below(mut self, exponent: f64) -> Self {
        let (sigma, offset) = (self.sigma, self.offset);
        for (i, c) in self.coeffs.iter_mut().enumerate() {
            if sigma + ((offset + i as i32) as f64) < exponent - 1e-9 {
                *c = 0.0;
            }
        }
        self
    }

    /// 1/g for an analytic series with g(0) ≠ 0.
    pub fn recip(&self) -> Self {
        assert!(self.sigma == 0.0 && self.offset == 0 && self.coeffs[0] != 0.0);
        let g = &self.coeffs;
        let mut r = vec![0.0; g.len()];
        r[0] = 1.0 / g[0];
        for k in 1..g.len() {
            let s: f64 = (1..=k).map(|j| g[j] * r[k - j]).sum();
            r[k] = -s / g[0];
        }
        Self::analytic(r)
    }

    /// Highest exponent still known, relative to integer powers.
    fn top(&self) -> i32 {
        self.offset + self.coeffs.len() as i32
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        assert!(
            (self.sigma - other.sigma).abs() < 1e-12,
            "series exponents differ by a non-integer"
        );
        let lo = self.offset.min(other.offset);
        let hi = self.top().min(other.top());
        let mut coeffs = vec![0.0; (hi - lo).max(0) as usize];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let e = lo + i as i32;
            if let Some(v) = self.at(e) {
                *c += v;
            }
            if let Some(v) = other.at(e) {
                *c += sign * v;
            }
        }
        Self::new(self.sigma, lo, coeffs)
    }

    fn at(&self, e: i32) -> Option<f64> {
        let i = e - self.offset;
        (i >= 0 && (i as usize) < self.coeffs.len()).then(|| self.coeffs[i as usize])
    }

    pub fn eval(&self, x: f64) -> f64 {
        let poly = self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        poly * x.powf(self.sigma) * x.powi(self.offset)
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: Self) -> Series {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: Self) -> Series {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: Self) -> Series {
        let len = self.len().min(rhs.len());
        let mut coeffs = vec![0.0; len];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = (0..=k).map(|j| self.coeffs[j] * rhs.coeffs[k - j]).sum();
        }
        Series::new(self.sigma + rhs.sigma, self.offset + rhs.offset, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_series_derivative() {
        let mut c = vec![0.0; 30];
        let mut f = 1.0;
        for (k, v) in c.iter_mut().enumerate() {
            if k > 0 {
                f *= k as f64;
            }
            *v = 1.0 / f;
        }
        let e = Series::analytic(c);
        let de = e.d_dx();
        assert!((e.eval(0.7) - 0.7f64.exp()).abs() < 1e-15);
        assert!((de.eval(0.7) - 0.7f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn generalized_powers_and_cancellation() {
        // x^{1.5} (1 + x) differentiated, then 1.5/x · same subtracted
        let s = Series::new(1.5, 0, vec![1.0, 1.0, 0.0, 0.0]);
        let r = &s.d_dx() - &s.clone().shift(-1).scale(1.5);
        // = x^{1.5}
        assert_eq!((r.sigma, r.offset), (0.5, 0));
        assert_eq!(r.coeffs[0], 0.0);
        assert!((r.eval(0.01) - 0.01f64.powf(1.5)).abs() < 1e-18);
    }

    #[test]
    fn reciprocal_of_geometric_series() {
        let g = Series::analytic(vec![1.0, -1.0, 0.0, 0.0, 0.0]);
        let r = g.recip();
        assert_eq!(r.coeffs, vec![1.0; 5]);
        let p = &g * &r;
        assert!((p.eval(0.3) - 1.0).abs() < 1e-15);
    }
}
