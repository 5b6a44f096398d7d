use crate::error::{Error, Result};
use crate::numerics::{apply_first_order, Jet};
use crate::specfun::{hermite, kummer_1f1_derivatives, laguerre};

use super::closed_form::{kummer_pair, psi_plus_norm, radial_shape};
use super::{CesSystem, Family, FamilySpec};

/// Taylor jets of the building blocks at one point x₀.
///
/// `u` and `du` are expanded separately from the Kummer derivatives, so both
/// carry all N orders; `f = du/u` and `w = Φ + f` inherit that.
#[derive(Debug, Clone, Copy)]
pub struct PointJets<const N: usize> {
    pub x: Jet<N>,
    pub phi: Jet<N>,
    pub u: Jet<N>,
    pub du: Jet<N>,
    pub f: Jet<N>,
    pub w: Jet<N>,
    pub gauss: Jet<N>,
}

/// Derivatives of z ↦ ₁F₁(a; b; z) at z₀, orders 0..=N.
fn kummer_derivs<const N: usize>(a: f64, b: f64, z0: f64) -> Result<([f64; N], [f64; N])> {
    let mut d = vec![0.0; N + 1];
    kummer_1f1_derivatives(a, b, z0, &mut d)?;
    let mut value = [0.0; N];
    let mut first = [0.0; N];
    value.copy_from_slice(&d[..N]);
    first.copy_from_slice(&d[1..]);
    Ok((value, first))
}

impl<const N: usize> PointJets<N> {
    pub fn new(spec: &FamilySpec, x0: f64) -> Result<Self> {
        spec.check_domain(x0)?;
        let x = Jet::<N>::variable(x0);
        let z = -(x * x);
        let k = kummer_pair(spec);
        let (f1, df1) = kummer_derivs::<N>(k.a1, k.b1, -x0 * x0)?;
        let dz = x.scale(-2.0);
        let mut u = z.compose(&f1);
        let mut du = dz * z.compose(&df1);
        if let Some((a2, b2, p)) = k.second {
            let (f2, df2) = kummer_derivs::<N>(a2, b2, -x0 * x0)?;
            let g = z.compose(&f2);
            let dg = dz * z.compose(&df2);
            let xp = if p == 1.0 { x } else { x.powf(p) };
            let dxp = if p == 1.0 {
                Jet::constant(1.0)
            } else {
                x.powf(p - 1.0).scale(p)
            };
            u += (xp * g).scale(spec.beta);
            du += (dxp * g + xp * dg).scale(spec.beta);
        }
        if !(u.value() > 0.0) {
            return Err(Error::Singular {
                x: x0,
                u: u.value(),
            });
        }
        let f = du / u;
        let c = spec.gamma + 1.0;
        let phi = match spec.family {
            Family::LinearUnbroken => x,
            Family::RadialUnbroken => x - x.recip().scale(c),
            Family::RadialBroken => x + x.recip().scale(c),
        };
        Ok(Self {
            x,
            phi,
            u,
            du,
            f,
            w: phi + f,
            gauss: (x * x).scale(-0.5).exp(),
        })
    }
}

/// Normalized ψₙ⁺ as a jet.
pub(crate) fn psi_plus_jet<const N: usize>(
    spec: &FamilySpec,
    n: usize,
    pj: &PointJets<N>,
) -> Jet<N> {
    let x0 = pj.x.value();
    let norm = psi_plus_norm(spec, n);
    match spec.family {
        Family::LinearUnbroken => {
            // Hₙ(x₀ + δ) = Σₖ 2ᵏ C(n, k) Hₙ₋ₖ(x₀) δᵏ
            let mut coeffs = [0.0; N];
            let mut binom = 1.0;
            for (k, c) in coeffs.iter_mut().enumerate().take(n + 1) {
                if k > 0 {
                    binom *= (n + 1 - k) as f64 / k as f64;
                }
                *c = 2f64.powi(k as i32) * binom * hermite(n - k, x0);
            }
            (Jet::from_taylor(coeffs) * pj.gauss).scale(norm)
        }
        _ => {
            let (p, nu) = radial_shape(spec);
            let t = pj.x * pj.x;
            // dᵏ/dtᵏ Lₙ^ν(t) = (−1)ᵏ Lₙ₋ₖ^{ν+k}(t)
            let mut derivs = [0.0; N];
            for (k, d) in derivs.iter_mut().enumerate().take(n + 1) {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                *d = sign * laguerre(n - k, nu + k as f64, x0 * x0);
            }
            (pj.x.powf(p) * t.compose(&derivs) * pj.gauss).scale(norm)
        }
    }
}

impl CesSystem {
    pub fn point_jets<const N: usize>(&self, x0: f64) -> Result<PointJets<N>> {
        PointJets::new(self.spec(), x0)
    }

    pub fn psi_plus_jet<const N: usize>(&self, n: usize, x0: f64) -> Result<Jet<N>> {
        Ok(psi_plus_jet(self.spec(), n, &self.point_jets::<N>(x0)?))
    }

    /// Normalized ψₙ⁻ as a jet. Excited states are A†ψ⁺/√E, which costs one
    /// order of the jet.
    pub fn psi_minus_jet<const N: usize>(&self, n: usize, x0: f64) -> Result<Jet<N>> {
        Ok(self.psi_minus_jet_at(n, &self.point_jets::<N>(x0)?))
    }

    /// [`CesSystem::psi_minus_jet`] reusing jets already built at the point.
    pub fn psi_minus_jet_at<const N: usize>(&self, n: usize, pj: &PointJets<N>) -> Jet<N> {
        let spec = self.spec();
        let unbroken = spec.family.susy_unbroken();
        if unbroken && n == 0 {
            let shape = match spec.family {
                Family::LinearUnbroken => pj.gauss,
                _ => pj.x.powf(spec.gamma + 1.0) * pj.gauss,
            };
            return (shape / pj.u).scale(self.ground_norm());
        }
        let m = if unbroken { n - 1 } else { n };
        let psi = psi_plus_jet(spec, m, pj);
        apply_first_order(-1.0, &pj.w, &psi).scale(1.0 / self.e_plus(m).sqrt())
    }
}
