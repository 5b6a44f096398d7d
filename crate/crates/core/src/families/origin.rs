use std::f64::consts::FRAC_1_SQRT_2;

use crate::numerics::Series;

use super::closed_form::{kummer_pair, psi_plus_norm, radial_shape};
use super::{CesSystem, Family};

/// Coefficients kept in every expansion about the origin.
pub const ORIGIN_SERIES_TERMS: usize = 72;

/// Below this radius radial quantities are evaluated from their expansion
/// about x = 0 instead of Taylor jets at the point.
pub const ORIGIN_SERIES_RADIUS: f64 = 0.5;

/// Taylor coefficients of ₁F₁(a; b; t) in t, terminating when (a)ₖ = 0.
fn kummer_coeffs(a: f64, b: f64, terms: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(terms);
    let mut c = 1.0;
    for k in 0..terms {
        out.push(c);
        let kf = k as f64;
        if a + kf == 0.0 {
            out.resize(terms, 0.0);
            break;
        }
        c *= (a + kf) / ((b + kf) * (kf + 1.0));
    }
    out
}

/// f(t) ↦ f(−t) on Taylor coefficients.
fn reflect(mut a: Vec<f64>) -> Vec<f64> {
    for (k, v) in a.iter_mut().enumerate() {
        if k % 2 == 1 {
            *v = -*v;
        }
    }
    a
}

/// Expansions of W and of the eigenfunctions about x = 0 for a radial family.
#[derive(Debug, Clone)]
pub struct OriginSeries {
    pub x: Series,
    pub w: Series,
    gauss: Series,
    u: Series,
}

impl OriginSeries {
    /// `None` for the linear family (no singular coefficients) and when the
    /// second Kummer solution carries a non-integer power.
    pub fn new(system: &CesSystem) -> Option<Self> {
        let spec = system.spec();
        if spec.family == Family::LinearUnbroken {
            return None;
        }
        let k = ORIGIN_SERIES_TERMS;
        let half = k / 2 + 1;
        let pair = kummer_pair(spec);
        let mut u = Series::in_x_squared(&reflect(kummer_coeffs(pair.a1, pair.b1, half)), k);
        if let Some((a2, b2, p)) = pair.second {
            if p.fract() != 0.0 {
                return None;
            }
            let second = Series::in_x_squared(&reflect(kummer_coeffs(a2, b2, half)), k);
            u = &u + &second.shift(p as i32).scale(spec.beta);
        }
        let f = &u.d_dx() * &u.recip();
        let c = spec.gamma + 1.0;
        let mut phi = vec![0.0; k + 1];
        phi[0] = match spec.family {
            Family::RadialUnbroken => -c,
            _ => c,
        };
        phi[2] = 1.0;
        let w = &Series::new(0.0, -1, phi) + &f;
        let gauss_t: Vec<f64> = {
            let mut g = Vec::with_capacity(half);
            let mut v = 1.0;
            for j in 0..half {
                g.push(v);
                v *= -0.5 / (j + 1) as f64;
            }
            g
        };
        let mut xs = vec![0.0; k];
        xs[1] = 1.0;
        Some(Self {
            x: Series::analytic(xs),
            w,
            gauss: Series::in_x_squared(&gauss_t, k),
            u,
        })
    }

    /// (coeff_d · g′ + W g)/√2.
    pub fn first_order(&self, coeff_d: f64, w: &Series, g: &Series) -> Series {
        (&g.d_dx().scale(coeff_d) + &(w * g)).scale(FRAC_1_SQRT_2)
    }

    pub fn psi_plus(&self, system: &CesSystem, m: usize) -> Series {
        let spec = system.spec();
        let (p, nu) = radial_shape(spec);
        // Lₘ^ν(t) = Σₖ (−1)ᵏ (ν+k+1)_{m−k} / ((m−k)! k!) tᵏ
        let lag: Vec<f64> = (0..=m)
            .map(|k| {
                let mut c = if k % 2 == 0 { 1.0 } else { -1.0 };
                for j in 0..(m - k) {
                    c *= (nu + k as f64 + 1.0 + j as f64) / (j + 1) as f64;
                }
                for j in 1..=k {
                    c /= j as f64;
                }
                c
            })
            .collect();
        let poly = Series::in_x_squared(&lag, ORIGIN_SERIES_TERMS);
        let xp = Series::power(p, ORIGIN_SERIES_TERMS);
        (&(&xp * &poly) * &self.gauss).scale(psi_plus_norm(spec, m))
    }

    /// Leading power of every ψₙ⁻ at the origin.
    pub fn minus_lead(system: &CesSystem) -> f64 {
        let g = system.spec().gamma;
        match system.family() {
            Family::RadialBroken => g + 2.0,
            _ => g + 1.0,
        }
    }

    pub fn psi_minus(&self, system: &CesSystem, n: usize) -> Series {
        let spec = system.spec();
        let unbroken = spec.family.susy_unbroken();
        if unbroken && n == 0 {
            let xp = Series::power(spec.gamma + 1.0, ORIGIN_SERIES_TERMS);
            return (&(&xp * &self.gauss) * &self.u.recip()).scale(system.ground_norm());
        }
        let m = if unbroken { n - 1 } else { n };
        let psi = self.psi_plus(system, m);
        self.first_order(-1.0, &self.w, &psi)
            .scale(1.0 / system.e_plus(m).sqrt())
    }
}

impl CesSystem {
    pub fn origin_series(&self) -> Option<OriginSeries> {
        OriginSeries::new(self)
    }
}
