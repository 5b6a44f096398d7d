use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::numerics::quadrature;
use crate::specfun::{gamma_signed, hermite, kummer_1f1, kummer_1f1_dz, laguerre};

use super::{check_admissibility, Admissibility, Family, FamilySpec};

/// Which partner Hamiltonian a level belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenLevel {
    pub index: usize,
    pub energy: f64,
    pub sector: Sector,
}

/// u, u′ and f = u′/u at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UValue {
    pub u: f64,
    pub du: f64,
    pub f: f64,
}

/// Kummer parameters of u = ₁F₁(a₁; b₁; −x²) + β x^p ₁F₁(a₂; b₂; −x²).
#[derive(Debug, Clone, Copy)]
pub(crate) struct KummerPair {
    pub a1: f64,
    pub b1: f64,
    pub second: Option<(f64, f64, f64)>,
}

pub(crate) fn kummer_pair(spec: &FamilySpec) -> KummerPair {
    let eps = spec.epsilon;
    let g = spec.gamma;
    let a1 = (1.0 - eps) / 2.0;
    let (b1, second) = match spec.family {
        Family::LinearUnbroken => (0.5, Some(((2.0 - eps) / 2.0, 1.5, 1.0))),
        Family::RadialUnbroken => (
            -g - 0.5,
            Some((2.0 + g - eps / 2.0, 2.5 + g, 2.0 * g + 3.0)),
        ),
        Family::RadialBroken => (g + 1.5, None),
    };
    KummerPair {
        a1,
        b1,
        second: if spec.beta == 0.0 { None } else { second },
    }
}

/// x^p for the second solution; p = 1 on the full line.
fn power(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else {
        x.powf(p)
    }
}

/// Superpotential Φ of the underlying oscillator.
pub fn phi(spec: &FamilySpec, x: f64) -> Result<f64> {
    spec.check_domain(x)?;
    let c = spec.gamma + 1.0;
    Ok(match spec.family {
        Family::LinearUnbroken => x,
        Family::RadialUnbroken => x - c / x,
        Family::RadialBroken => x + c / x,
    })
}

pub fn phi_prime(spec: &FamilySpec, x: f64) -> Result<f64> {
    spec.check_domain(x)?;
    let c = spec.gamma + 1.0;
    Ok(match spec.family {
        Family::LinearUnbroken => 1.0,
        Family::RadialUnbroken => 1.0 + c / (x * x),
        Family::RadialBroken => 1.0 - c / (x * x),
    })
}

/// The shape-invariant partner V₊ = ½Φ² + ½Φ′ + ε − 1.
pub fn v_plus(spec: &FamilySpec, x: f64) -> Result<f64> {
    spec.check_domain(x)?;
    let (eps, g) = (spec.epsilon, spec.gamma);
    let x2 = x * x;
    Ok(match spec.family {
        Family::LinearUnbroken => 0.5 * x2 + eps - 0.5,
        Family::RadialUnbroken => 0.5 * x2 + (g + 1.0) * (g + 2.0) / (2.0 * x2) + eps - g - 1.5,
        Family::RadialBroken => 0.5 * x2 + g * (g + 1.0) / (2.0 * x2) + eps + g + 0.5,
    })
}

/// (u, u′) without any sign requirement; used to locate zeros of u.
pub fn u_raw(spec: &FamilySpec, x: f64) -> Result<(f64, f64)> {
    spec.check_domain(x)?;
    let k = kummer_pair(spec);
    let z = -x * x;
    let mut u = kummer_1f1(k.a1, k.b1, z)?;
    let mut du = -2.0 * x * kummer_1f1_dz(k.a1, k.b1, z)?;
    if let Some((a2, b2, p)) = k.second {
        let f2 = kummer_1f1(a2, b2, z)?;
        let df2 = kummer_1f1_dz(a2, b2, z)?;
        let xp = power(x, p);
        u += spec.beta * xp * f2;
        du += spec.beta * (p * power(x, p - 1.0) * f2 - 2.0 * x * xp * df2);
    }
    Ok((u, du))
}

/// u, u′ and f at x; fails if u is not strictly positive there.
pub fn u_eval(spec: &FamilySpec, x: f64) -> Result<UValue> {
    let (u, du) = u_raw(spec, x)?;
    if !(u > 0.0) {
        return Err(Error::Singular { x, u });
    }
    Ok(UValue { u, du, f: du / u })
}

/// V₋ in the family-specific form.
pub fn v_minus(spec: &FamilySpec, x: f64) -> Result<f64> {
    let f = u_eval(spec, x)?.f;
    let (eps, g) = (spec.epsilon, spec.gamma);
    let x2 = x * x;
    Ok(match spec.family {
        Family::LinearUnbroken => 0.5 * x2 - eps + 0.5 + f * (2.0 * x + f),
        Family::RadialUnbroken => {
            0.5 * x2 + g * (g + 1.0) / (2.0 * x2) - g - eps - 0.5
                + f * (2.0 * x - 2.0 * (g + 1.0) / x + f)
        }
        Family::RadialBroken => {
            0.5 * x2 + (g + 1.0) * (g + 2.0) / (2.0 * x2) + g - eps
                + 1.5
                + f * (2.0 * x + 2.0 * (g + 1.0) / x + f)
        }
    })
}

/// V₋ = ½Φ² − ½Φ′ + f(2Φ + f) − ε + 1, valid for every family.
pub fn v_minus_generic(spec: &FamilySpec, x: f64) -> Result<f64> {
    let f = u_eval(spec, x)?.f;
    let p = phi(spec, x)?;
    let dp = phi_prime(spec, x)?;
    Ok(0.5 * p * p - 0.5 * dp + f * (2.0 * p + f) - spec.epsilon + 1.0)
}

/// f² + 2Φf + f′ − 2(ε − 1) with f′ = u″/u − f² and u″ taken from the linear
/// equation for u.
pub fn riccati_residual(spec: &FamilySpec, x: f64) -> Result<f64> {
    let UValue { u, du, f } = u_eval(spec, x)?;
    let p = phi(spec, x)?;
    let eps = spec.epsilon;
    let d2u = -2.0 * p * du - 2.0 * (1.0 - eps) * u;
    let df = d2u / u - f * f;
    Ok(f * f + 2.0 * p * f + df - 2.0 * (eps - 1.0))
}

/// Same residual with f′ from a central difference of f (step `h`).
pub fn riccati_residual_fd(spec: &FamilySpec, x: f64, h: f64) -> Result<f64> {
    let f = u_eval(spec, x)?.f;
    let df = (u_eval(spec, x + h)?.f - u_eval(spec, x - h)?.f) / (2.0 * h);
    let p = phi(spec, x)?;
    Ok(f * f + 2.0 * p * f + df - 2.0 * (spec.epsilon - 1.0))
}

/// Eₙ⁺ of the oscillator partner.
pub fn e_plus(spec: &FamilySpec, n: usize) -> f64 {
    let n = n as f64;
    match spec.family {
        Family::LinearUnbroken => n + spec.epsilon,
        Family::RadialUnbroken => 2.0 * n + 1.0 + spec.epsilon,
        Family::RadialBroken => 2.0 * n + 2.0 * spec.gamma + 2.0 + spec.epsilon,
    }
}

/// Eₙ⁻: a zero mode followed by the H₊ spectrum (unbroken), or the H₊
/// spectrum itself (broken).
pub fn e_minus(spec: &FamilySpec, n: usize) -> f64 {
    if spec.family.susy_unbroken() {
        if n == 0 {
            0.0
        } else {
            e_plus(spec, n - 1)
        }
    } else {
        e_plus(spec, n)
    }
}

/// The lowest `n_max` levels of H₋.
pub fn spectrum_minus(spec: &FamilySpec, n_max: usize) -> Result<Vec<EigenLevel>> {
    let adm = check_admissibility(spec);
    if !adm.admissible {
        return Err(Error::Inadmissible(adm.reasons));
    }
    Ok((0..n_max)
        .map(|n| EigenLevel {
            index: n,
            energy: e_minus(spec, n),
            sector: Sector::Minus,
        })
        .collect())
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// Power p of x and Laguerre index ν of the radial oscillator eigenfunctions
/// x^p Lₙ^ν(x²) e^{−x²/2}.
pub(crate) fn radial_shape(spec: &FamilySpec) -> (f64, f64) {
    let p = match spec.family {
        Family::RadialUnbroken => spec.gamma + 2.0,
        _ => spec.gamma + 1.0,
    };
    (p, p - 0.5)
}

/// Normalization constant of ψₙ⁺.
pub(crate) fn psi_plus_norm(spec: &FamilySpec, n: usize) -> f64 {
    match spec.family {
        Family::LinearUnbroken => {
            let ln = 0.5 * PI.ln() + n as f64 * 2f64.ln() + ln_factorial(n);
            (-0.5 * ln).exp()
        }
        _ => {
            let (_, nu) = radial_shape(spec);
            let lg = gamma_signed(n as f64 + nu + 1.0)
                .expect("positive argument")
                .log_abs;
            (0.5 * (2f64.ln() + ln_factorial(n) - lg)).exp()
        }
    }
}

/// Normalized ψₙ⁺(x) and its derivative from the polynomial identities
/// Hₙ′ = 2nHₙ₋₁ and (Lₙ^ν)′ = −Lₙ₋₁^{ν+1}.
pub fn psi_plus(spec: &FamilySpec, n: usize, x: f64) -> Result<(f64, f64)> {
    spec.check_domain(x)?;
    let norm = psi_plus_norm(spec, n);
    let gauss = (-0.5 * x * x).exp();
    match spec.family {
        Family::LinearUnbroken => {
            let h = hermite(n, x);
            let dh = if n > 0 {
                2.0 * n as f64 * hermite(n - 1, x)
            } else {
                0.0
            };
            Ok((norm * h * gauss, norm * (dh - x * h) * gauss))
        }
        _ => {
            let (p, nu) = radial_shape(spec);
            let t = x * x;
            let l = laguerre(n, nu, t);
            let dl = if n > 0 {
                -laguerre(n - 1, nu + 1.0, t)
            } else {
                0.0
            };
            let xp = x.powf(p);
            let value = norm * xp * l * gauss;
            let deriv = norm * gauss * (p * x.powf(p - 1.0) * l + xp * (2.0 * x * dl - x * l));
            Ok((value, deriv))
        }
    }
}

/// An admissible parameter point with everything the eigenfunctions of H₋
/// need, including the numerically fixed normalization of the zero mode.
#[derive(Debug, Clone)]
pub struct CesSystem {
    spec: FamilySpec,
    admissibility: Admissibility,
    ground_norm: f64,
}

impl CesSystem {
    pub fn new(spec: FamilySpec) -> Result<Self> {
        let admissibility = check_admissibility(&spec);
        if !admissibility.admissible {
            return Err(Error::Inadmissible(admissibility.reasons));
        }
        let mut system = Self {
            spec,
            admissibility,
            ground_norm: 1.0,
        };
        if spec.family.susy_unbroken() {
            let grid = spec.family.default_grid();
            let values = grid
                .points()
                .map(|x| system.zero_mode_unnormalized(x))
                .collect::<Result<Vec<_>>>()?;
            let f = crate::numerics::GridFunction::new(grid, values)?;
            system.ground_norm = 1.0 / quadrature::inner_product(&f, &f)?.sqrt();
        }
        Ok(system)
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn family(&self) -> Family {
        self.spec.family
    }

    pub fn admissibility(&self) -> &Admissibility {
        &self.admissibility
    }

    /// The constant C of the unbroken zero mode (1 for the broken family).
    pub fn ground_norm(&self) -> f64 {
        self.ground_norm
    }

    pub fn e_plus(&self, n: usize) -> f64 {
        e_plus(&self.spec, n)
    }

    pub fn e_minus(&self, n: usize) -> f64 {
        e_minus(&self.spec, n)
    }

    pub fn spectrum_minus(&self, n_max: usize) -> Vec<EigenLevel> {
        (0..n_max)
            .map(|n| EigenLevel {
                index: n,
                energy: self.e_minus(n),
                sector: Sector::Minus,
            })
            .collect()
    }

    pub fn u(&self, x: f64) -> Result<UValue> {
        u_eval(&self.spec, x)
    }

    pub fn superpotential(&self, x: f64) -> Result<f64> {
        Ok(phi(&self.spec, x)? + self.u(x)?.f)
    }

    pub fn v_plus(&self, x: f64) -> Result<f64> {
        v_plus(&self.spec, x)
    }

    pub fn v_minus(&self, x: f64) -> Result<f64> {
        v_minus(&self.spec, x)
    }

    /// exp{−∫W} up to a constant: e^{−x²/2}/u or x^{γ+1}e^{−x²/2}/u.
    fn zero_mode_unnormalized(&self, x: f64) -> Result<f64> {
        let u = self.u(x)?.u;
        let gauss = (-0.5 * x * x).exp();
        Ok(match self.spec.family {
            Family::LinearUnbroken => gauss / u,
            _ => x.powf(self.spec.gamma + 1.0) * gauss / u,
        })
    }

    pub fn psi_plus(&self, n: usize, x: f64) -> Result<(f64, f64)> {
        psi_plus(&self.spec, n, x)
    }

    /// Normalized ψₙ⁻(x) from the closed forms: the zero mode for n = 0 in
    /// the unbroken families, otherwise the SUSY image of the matching ψ⁺.
    pub fn psi_minus(&self, n: usize, x: f64) -> Result<f64> {
        let spec = &self.spec;
        spec.check_domain(x)?;
        let unbroken = spec.family.susy_unbroken();
        if unbroken && n == 0 {
            return Ok(self.ground_norm * self.zero_mode_unnormalized(x)?);
        }
        let m = if unbroken { n - 1 } else { n };
        let f = self.u(x)?.f;
        match spec.family {
            Family::LinearUnbroken => {
                // (H_{m+1} + H_m u'/u) e^{-x^2/2} / [√π 2^{m+1} m! (m+ε)]^{1/2}
                let ln = 0.5 * PI.ln()
                    + (m + 1) as f64 * 2f64.ln()
                    + ln_factorial(m)
                    + (m as f64 + spec.epsilon).ln();
                let norm = (-0.5 * ln).exp();
                Ok(norm * (hermite(m + 1, x) + hermite(m, x) * f) * (-0.5 * x * x).exp())
            }
            _ => {
                let (psi, dpsi) = psi_plus(spec, m, x)?;
                let w = phi(spec, x)? + f;
                Ok(FRAC_1_SQRT_2 * (-dpsi + w * psi) / self.e_plus(m).sqrt())
            }
        }
    }

    /// Broken-family ground state written out explicitly:
    /// x^{γ+1} e^{−x²/2} (2x + u′/u) / √((2γ+ε+2) Γ(γ+3/2)).
    pub fn broken_ground_state_explicit(&self, x: f64) -> Result<f64> {
        if self.spec.family != Family::RadialBroken {
            return Err(Error::InvalidParameter(
                "explicit broken ground state requested for an unbroken family".into(),
            ));
        }
        self.spec.check_domain(x)?;
        let g = self.spec.gamma;
        let f = self.u(x)?.f;
        let lg = gamma_signed(g + 1.5)?.log_abs;
        let norm = ((2.0 * g + self.spec.epsilon + 2.0).ln() + lg).exp().sqrt();
        Ok(x.powf(g + 1.0) * (-0.5 * x * x).exp() * (2.0 * x + f) / norm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Grid;

    fn lin(eps: f64, beta: f64) -> FamilySpec {
        FamilySpec::linear(eps, beta).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&lin(0.7, 0.0), 2.0).unwrap(), 2.0);
        let ru = FamilySpec::radial_unbroken(1.0, 1.0, 0.0).unwrap();
        assert_eq!(phi(&ru, 1.0).unwrap(), -1.0);
        let rb = FamilySpec::radial_broken(1.0, 0.0).unwrap();
        assert_eq!(phi(&rb, 2.0).unwrap(), 3.0);
        assert!(matches!(phi(&rb, 0.0), Err(Error::Domain { .. })));
        assert!(phi(&ru, -1.0).is_err());
    }

    #[test]
    fn u_examples() {
        let u = u_eval(&lin(1.0, 0.0), 3.0).unwrap();
        assert_eq!((u.u, u.du, u.f), (1.0, 0.0, 0.0));
        let u = u_eval(&lin(3.0, 0.0), 1.0).unwrap();
        assert!((u.u - 3.0).abs() < 1e-14 && (u.du - 4.0).abs() < 1e-14);
        assert!((u.f - 4.0 / 3.0).abs() < 1e-14);
        let rb = FamilySpec::radial_broken(1.0, 1.0).unwrap();
        let u = u_eval(&rb, 2.0).unwrap();
        assert_eq!((u.u, u.du), (1.0, 0.0));
    }

    #[test]
    fn u_non_positivity_is_reported() {
        // gamma = 1, eps = 3: u = 1 - 2x^2/3
        let ru = FamilySpec::radial_unbroken(1.0, 3.0, 0.0).unwrap();
        assert!(matches!(u_eval(&ru, 2.0), Err(Error::Singular { .. })));
        assert!(matches!(v_minus(&ru, 2.0), Err(Error::Singular { .. })));
        assert!(u_raw(&ru, 2.0).unwrap().0 < 0.0);
    }

    #[test]
    fn v_plus_examples() {
        assert!((v_plus(&lin(1.0, 0.0), 0.0).unwrap() - 0.5).abs() < 1e-15);
        let ru = FamilySpec::radial_unbroken(1.0, 1.0, 0.0).unwrap();
        assert!((v_plus(&ru, 1.0).unwrap() - 2.0).abs() < 1e-15);
        let rb = FamilySpec::radial_broken(0.0, 0.0).unwrap();
        assert!((v_plus(&rb, 1.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn v_minus_examples() {
        for x in [-4.0, -1.0, 0.0, 0.3, 2.7] {
            let v = v_minus(&lin(1.0, 0.0), x).unwrap();
            assert!((v - (0.5 * x * x - 0.5)).abs() < 1e-14);
        }
        assert!((v_minus(&lin(3.0, 0.0), 0.0).unwrap() + 2.5).abs() < 1e-14);
        let s = lin(0.8, 0.0);
        for x in [0.2, 1.0, 3.5, 9.0] {
            let d = v_minus(&s, x).unwrap() - v_minus(&s, -x).unwrap();
            assert!(d.abs() <= 1e-10);
        }
    }

    #[test]
    fn riccati_examples() {
        assert_eq!(riccati_residual(&lin(1.0, 0.0), 0.7).unwrap(), 0.0);
        assert!(riccati_residual(&lin(3.0, 0.0), 1.3).unwrap().abs() < 1e-10);
        let rb = FamilySpec::radial_broken(1.0, 2.0).unwrap();
        assert!(riccati_residual(&rb, 0.9).unwrap().abs() < 1e-10);
        assert!(riccati_residual_fd(&rb, 0.9, 1e-5).unwrap().abs() < 1e-6);
    }

    #[test]
    fn spectrum_examples() {
        let e: Vec<f64> = spectrum_minus(&lin(0.5, 0.0), 4)
            .unwrap()
            .iter()
            .map(|l| l.energy)
            .collect();
        assert_eq!(e, vec![0.0, 0.5, 1.5, 2.5]);
        let ru = FamilySpec::radial_unbroken(1.0, 1.0, 0.0).unwrap();
        let e: Vec<f64> = spectrum_minus(&ru, 3)
            .unwrap()
            .iter()
            .map(|l| l.energy)
            .collect();
        assert_eq!(e, vec![0.0, 2.0, 4.0]);
        let rb = FamilySpec::radial_broken(1.0, 0.0).unwrap();
        let e: Vec<f64> = spectrum_minus(&rb, 3)
            .unwrap()
            .iter()
            .map(|l| l.energy)
            .collect();
        assert_eq!(e, vec![4.0, 6.0, 8.0]);
        let bad = FamilySpec::radial_unbroken(1.0, 3.0, 0.0).unwrap();
        assert!(matches!(
            spectrum_minus(&bad, 3),
            Err(Error::Inadmissible(_))
        ));
    }

    #[test]
    fn psi_plus_examples() {
        let s = lin(1.0, 0.0);
        assert!((psi_plus(&s, 0, 0.0).unwrap().0 - PI.powf(-0.25)).abs() < 1e-15);
        assert_eq!(psi_plus(&s, 1, 0.0).unwrap().0, 0.0);
        let ru = FamilySpec::radial_unbroken(0.5, 1.0, 0.0).unwrap();
        for n in 0..4 {
            assert!(psi_plus(&ru, n, 1e-6).unwrap().0.abs() < 1e-12);
        }
    }

    #[test]
    fn psi_plus_is_normalized_and_derivative_consistent() {
        let specs = [
            lin(0.4, 0.0),
            FamilySpec::radial_unbroken(1.0, 1.0, 0.0).unwrap(),
            FamilySpec::radial_broken(0.5, 0.0).unwrap(),
        ];
        for s in specs {
            let grid = s.family.default_grid();
            for n in 0..8 {
                let f = grid.sample(|x| psi_plus(&s, n, x).unwrap().0);
                let norm = quadrature::inner_product(&f, &f).unwrap();
                assert!((norm - 1.0).abs() < 1e-6, "{s} n={n} norm={norm}");
                let x = 1.37;
                let h = 1e-5;
                let fd = (psi_plus(&s, n, x + h).unwrap().0 - psi_plus(&s, n, x - h).unwrap().0)
                    / (2.0 * h);
                assert!((fd - psi_plus(&s, n, x).unwrap().1).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn trivial_linear_ground_state_is_the_oscillator_ground_state() {
        let sys = CesSystem::new(lin(1.0, 0.0)).unwrap();
        for x in [-2.0f64, 0.0, 0.5, 3.0] {
            let want = PI.powf(-0.25) * (-0.5 * x * x).exp();
            assert!((sys.psi_minus(0, x).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn first_excited_linear_state_has_the_hermite_shape() {
        let sys = CesSystem::new(lin(0.6, 0.2)).unwrap();
        let shape = |x: f64| {
            let f = sys.u(x).unwrap().f;
            (2.0 * x + f) * (-0.5 * x * x).exp()
        };
        let r0 = sys.psi_minus(1, 0.7).unwrap() / shape(0.7);
        for x in [-3.0, -1.0, 0.2, 2.5] {
            assert!((sys.psi_minus(1, x).unwrap() / shape(x) - r0).abs() < 1e-12);
        }
    }

    #[test]
    fn inadmissible_system_is_rejected() {
        let err = CesSystem::new(FamilySpec::radial_unbroken(1.0, 3.0, 0.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Inadmissible(_)));
    }

    #[test]
    fn psi_minus_is_normalized() {
        let sys = CesSystem::new(FamilySpec::radial_unbroken(0.0, 0.5, 0.1).unwrap()).unwrap();
        let grid = Grid::half_line(12.0, 6000).unwrap();
        for n in 0..5 {
            let f = grid.sample(|x| sys.psi_minus(n, x).unwrap());
            assert!((quadrature::inner_product(&f, &f).unwrap() - 1.0).abs() < 1e-8);
        }
    }
}
