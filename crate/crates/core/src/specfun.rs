//! Special functions used by the closed forms.
//!
//! Everything here is real-valued and self-contained:
//!
//! * Kummer's confluent hypergeometric function ₁F₁(a; b; z) and its
//!   z-derivatives, summed as a power series. Negative arguments are always
//!   mapped through the Kummer transformation
//!   ₁F₁(a; b; z) = eᶻ ₁F₁(b − a; b; −z), so the series is only ever summed at
//!   z ≥ 0 where, for the parameter ranges of interest, no catastrophic
//!   cancellation occurs.
//! * Physicists' Hermite polynomials Hₙ and generalized Laguerre polynomials
//!   Lₙ^ν by their three-term recurrences.
//! * A signed log-gamma, so that sign tests on ratios such as
//!   Γ(−γ−½)/Γ(ε/2−γ−1) work for negative arguments.
//! * The Pochhammer symbol (x)ₙ.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative size below which a series term counts as negligible.
const SERIES_REL_TOL: f64 = 1e-17;
/// Number of consecutive negligible terms that stops the series.
const SERIES_QUIET_TERMS: usize = 3;
/// Hard cap on the number of series terms.
const SERIES_MAX_TERMS: usize = 600;
/// Tolerance for recognising a non-positive integer parameter.
const INTEGER_TOL: f64 = 1e-12;

/// If `a` is (within [`INTEGER_TOL`]) a non-positive integer −m, returns m.
pub fn nonpositive_integer(a: f64) -> Option<u32> {
    let r = a.round();
    if r <= 0.0 && (a - r).abs() < INTEGER_TOL && r > -(u32::MAX as f64) {
        Some((-r) as u32)
    } else {
        None
    }
}

/// Kahan-compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn add(&mut self, term: f64) {
        let y = term - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Terminating sum Σ_{k=0}^{m} (a)ₖ/((b)ₖ k!) zᵏ with a = −m.
fn polynomial_sum(b: f64, z: f64, m: u32) -> f64 {
    let a = -(m as f64);
    let mut acc = KahanSum::default();
    let mut term = 1.0;
    acc.add(term);
    for k in 0..m {
        let k = k as f64;
        term *= (a + k) / ((b + k) * (k + 1.0)) * z;
        acc.add(term);
    }
    acc.sum
}

/// Plain power series of ₁F₁. Callers guarantee z ≥ 0 in production use; the
/// function itself accepts any z so tests can compare against it directly.
pub(crate) fn series_sum(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut acc = KahanSum::default();
    let mut term = 1.0;
    acc.add(term);
    let mut quiet = 0;
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / ((b + kf) * (kf + 1.0)) * z;
        acc.add(term);
        if term.abs() < SERIES_REL_TOL * acc.sum.abs() || term == 0.0 {
            quiet += 1;
            if quiet >= SERIES_QUIET_TERMS {
                return Ok(acc.sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        function: "1F1",
        terms: SERIES_MAX_TERMS,
        a,
        b,
        z,
    })
}

fn check_b(a: f64, b: f64) -> Result<Option<u32>> {
    let poly = nonpositive_integer(a);
    if let Some(p) = nonpositive_integer(b) {
        match poly {
            Some(m) if m <= p => {}
            _ => {
                return Err(Error::Pole {
                    function: "1F1 (b is a non-positive integer)",
                    at: b,
                })
            }
        }
    }
    Ok(poly)
}

/// Kummer's function ₁F₁(a; b; z) = Σₖ (a)ₖ/((b)ₖ k!) zᵏ.
pub fn kummer_1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if let Some(m) = check_b(a, b)? {
        return Ok(polynomial_sum(b, z, m));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > 0.0 {
        return series_sum(a, b, z);
    }
    // Kummer transformation: sum at the positive argument −z.
    let c = b - a;
    let inner = match nonpositive_integer(c) {
        Some(m) => polynomial_sum(b, -z, m),
        None => series_sum(c, b, -z)?,
    };
    Ok(z.exp() * inner)
}

/// d/dz ₁F₁(a; b; z) = (a/b) ₁F₁(a+1; b+1; z).
pub fn kummer_1f1_dz(a: f64, b: f64, z: f64) -> Result<f64> {
    check_b(a, b)?;
    if a == 0.0 || nonpositive_integer(a) == Some(0) {
        return Ok(0.0);
    }
    Ok(a / b * kummer_1f1(a + 1.0, b + 1.0, z)?)
}

/// Fills `out[k]` with dᵏ/dzᵏ ₁F₁(a; b; z) for k = 0..out.len().
///
/// Uses dᵏ/dzᵏ ₁F₁(a; b; z) = (a)ₖ/(b)ₖ ₁F₁(a+k; b+k; z); derivatives beyond
/// the degree of a terminating series are exactly zero.
pub fn kummer_1f1_derivatives(a: f64, b: f64, z: f64, out: &mut [f64]) -> Result<()> {
    let poly = check_b(a, b)?;
    let mut ratio = 1.0;
    for (k, slot) in out.iter_mut().enumerate() {
        if let Some(m) = poly {
            if k as u32 > m {
                *slot = 0.0;
                continue;
            }
        }
        if k > 0 {
            let kf = (k - 1) as f64;
            ratio *= (a + kf) / (b + kf);
        }
        *slot = ratio * kummer_1f1(a + k as f64, b + k as f64, z)?;
    }
    Ok(())
}

/// Physicists' Hermite polynomial Hₙ(x).
pub fn hermite(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized Laguerre polynomial Lₙ^ν(x).
pub fn laguerre(n: usize, nu: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + nu - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + nu - x) * cur - (k + nu) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Rising factorial x(x+1)…(x+n−1); (x)₀ = 1.
pub fn pochhammer(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (x + k as f64))
}

/// Γ(x) as a natural log of its magnitude plus a sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogGamma {
    pub log_abs: f64,
    pub sign: i32,
}

impl SignedLogGamma {
    pub fn value(&self) -> f64 {
        self.sign as f64 * self.log_abs.exp()
    }
}

/// sin(πx) with exact reduction of the argument, so that it is accurate close
/// to the integers.
pub fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * (x / 2.0).round(); // r in [-1, 1]
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x ≥ ½ (Lanczos, g = 7).
fn ln_gamma_lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Signed log-gamma. Positive arguments use the Lanczos approximation; for
/// x < ½ the reflection formula Γ(x)Γ(1−x) = π/sin(πx) supplies both the
/// magnitude and the sign.
pub fn gamma_signed(x: f64) -> Result<SignedLogGamma> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("gamma of non-finite {x}")));
    }
    if x <= 0.0 && x.fract() == 0.0 {
        return Err(Error::Pole {
            function: "Gamma",
            at: x,
        });
    }
    if x >= 0.5 {
        return Ok(SignedLogGamma {
            log_abs: ln_gamma_lanczos(x),
            sign: 1,
        });
    }
    let s = sin_pi(x);
    Ok(SignedLogGamma {
        log_abs: PI.ln() - s.abs().ln() - ln_gamma_lanczos(1.0 - x),
        sign: if s > 0.0 { 1 } else { -1 },
    })
}

/// Γ(x) as a plain number.
pub fn gamma(x: f64) -> Result<f64> {
    gamma_signed(x).map(|g| g.value())
}
