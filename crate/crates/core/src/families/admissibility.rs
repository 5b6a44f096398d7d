use crate::specfun::{gamma_signed, nonpositive_integer, pochhammer};

use super::{Family, FamilySpec};

/// Strict inequalities are tested with this margin; boundary points are
/// rejected.
pub const ADMISSIBILITY_MARGIN: f64 = 1e-9;

/// Verdict on a parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct Admissibility {
    pub admissible: bool,
    /// The lower bound on ε that makes H₊ strictly positive.
    pub epsilon_positivity: bool,
    /// Γ(−γ−½)/Γ(ε/2−γ−1) > 0; vacuously true outside the radial unbroken family.
    pub gamma_ratio_sign: bool,
    /// Largest admissible |β| (0 for the broken family).
    pub beta_bound: f64,
    pub reasons: Vec<String>,
}

/// Γ(b)/Γ(b − a) for the first Kummer solution ₁F₁(a; b; −x²), i.e. the
/// coefficient of z^{−a} in its large-z expansion. For a terminating series
/// (a = −m) this is 1/(b)ₘ, which stays finite even when b is a pole of Γ.
/// `None` when the ratio is undefined for the parameter point.
fn leading_ratio(a: f64, b: f64) -> Option<f64> {
    if let Some(m) = nonpositive_integer(a) {
        let p = pochhammer(b, m);
        return (p != 0.0).then(|| 1.0 / p);
    }
    let num = gamma_signed(b).ok()?;
    let den_arg = b - a;
    let near_pole = den_arg <= 0.0 && (den_arg - den_arg.round()).abs() < ADMISSIBILITY_MARGIN;
    if near_pole {
        return Some(0.0);
    }
    let den = gamma_signed(den_arg).ok()?;
    Some((num.sign * den.sign) as f64 * (num.log_abs - den.log_abs).exp())
}

fn gamma_quotient(num: f64, den: f64) -> f64 {
    match (gamma_signed(num), gamma_signed(den)) {
        (Ok(n), Ok(d)) => (n.sign * d.sign) as f64 * (n.log_abs - d.log_abs).exp(),
        _ => f64::NAN,
    }
}

/// Decides whether (ε, γ, β) yields a strictly positive u on the whole
/// configuration space, i.e. a regular V₋ with the closed-form spectrum.
pub fn check_admissibility(spec: &FamilySpec) -> Admissibility {
    let FamilySpec {
        family,
        epsilon: eps,
        gamma,
        beta,
    } = *spec;
    let mut reasons = Vec::new();
    let mut gamma_ratio_sign = true;
    let (epsilon_positivity, beta_bound) = match family {
        Family::LinearUnbroken => {
            let ok = eps > ADMISSIBILITY_MARGIN;
            if !ok {
                reasons.push(format!("epsilon must be > 0 (got {eps})"));
            }
            let bound = if ok {
                2.0 * gamma_quotient((1.0 + eps) / 2.0, eps / 2.0)
            } else {
                0.0
            };
            (ok, bound)
        }
        Family::RadialUnbroken => {
            let ok = eps > -1.0 + ADMISSIBILITY_MARGIN;
            if !ok {
                reasons.push(format!("epsilon must be > -1 (got {eps})"));
            }
            let a = (1.0 - eps) / 2.0;
            let b = -gamma - 0.5;
            let bound = match leading_ratio(a, b) {
                None => {
                    gamma_ratio_sign = false;
                    reasons.push(format!(
                        "-gamma-1/2 = {b} is a non-positive integer and 1F1((1-eps)/2; -gamma-1/2; -x^2) does not terminate"
                    ));
                    0.0
                }
                Some(r) if r > 0.0 => r * gamma_quotient((1.0 + eps) / 2.0, 2.5 + gamma),
                Some(r) => {
                    gamma_ratio_sign = false;
                    reasons.push(format!(
                        "Gamma(-gamma-1/2)/Gamma(eps/2-gamma-1) = {r} is not positive"
                    ));
                    0.0
                }
            };
            (ok, if ok { bound } else { 0.0 })
        }
        Family::RadialBroken => {
            let ok = eps > -2.0 - 2.0 * gamma + ADMISSIBILITY_MARGIN;
            if !ok {
                reasons.push(format!(
                    "epsilon must be > -2-2*gamma = {} (got {eps})",
                    -2.0 - 2.0 * gamma
                ));
            }
            if beta != 0.0 {
                reasons.push("beta must be 0 for the broken family".into());
            }
            (ok, 0.0)
        }
    };
    let beta_ok = match family {
        Family::RadialBroken => beta == 0.0,
        _ => beta.abs() < beta_bound - ADMISSIBILITY_MARGIN,
    };
    if !beta_ok && family != Family::RadialBroken && epsilon_positivity && gamma_ratio_sign {
        reasons.push(format!("|beta| = {} must be < {beta_bound}", beta.abs()));
    }
    Admissibility {
        admissible: epsilon_positivity && gamma_ratio_sign && beta_ok,
        epsilon_positivity,
        gamma_ratio_sign,
        beta_bound,
        reasons,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ru(gamma: f64, eps: f64) -> Admissibility {
        check_admissibility(&FamilySpec::radial_unbroken(gamma, eps, 0.0).unwrap())
    }

    #[test]
    fn linear_bound() {
        let a = check_admissibility(&FamilySpec::linear(1.0, 0.0).unwrap());
        assert!(a.admissible);
        assert!((a.beta_bound - 2.0 / std::f64::consts::PI.sqrt()).abs() < 1e-12);
        let a = check_admissibility(&FamilySpec::linear(1.0, 2.0).unwrap());
        assert!(!a.admissible && a.reasons.iter().any(|r| r.contains("beta")));
        assert!(!check_admissibility(&FamilySpec::linear(0.0, 0.0).unwrap()).admissible);
        assert!(!check_admissibility(&FamilySpec::linear(-0.5, 0.0).unwrap()).admissible);
    }

    #[test]
    fn radial_unbroken_bands_for_gamma_one() {
        assert!(!ru(1.0, 3.0).admissible);
        assert!(ru(1.0, 1.0).admissible);
        assert!(ru(1.0, 5.0).admissible);
        assert!(!ru(1.0, -0.5).admissible);
        for edge in [0.0, 2.0, 4.0] {
            assert!(!ru(1.0, edge).admissible, "edge {edge}");
        }
        assert!(!ru(1.0, -1.0).admissible);
    }

    #[test]
    fn radial_unbroken_bound_matches_gamma_formula() {
        // gamma = 1, eps = 1: Gamma(-1.5)/Gamma(-1.5) * Gamma(1)/Gamma(3.5)
        let a = ru(1.0, 1.0);
        let want = 1.0 / 3.323_350_970_447_842_6;
        assert!((a.beta_bound - want).abs() < 1e-12, "{}", a.beta_bound);
        // gamma = 0, eps = 0.5: Gamma(-0.5)/Gamma(-0.75) * Gamma(0.75)/Gamma(2.5)
        let a = ru(0.0, 0.5);
        let want = (-3.544_907_701_811_032) / (-4.834_146_544_295_878) * 1.225_416_702_465_178
            / 1.329_340_388_179_137;
        assert!((a.beta_bound - want).abs() < 1e-12, "{}", a.beta_bound);
    }

    #[test]
    fn half_integer_gamma_only_in_terminating_cases() {
        // -gamma-1/2 = -3
        let a = ru(2.5, 1.0);
        assert!(a.admissible);
        assert!((a.beta_bound - 1.0 / 24.0).abs() < 1e-14);
        let a = ru(2.5, 5.0);
        assert!(a.admissible);
        assert!((a.beta_bound - 1.0 / 72.0).abs() < 1e-14);
        assert!(!ru(2.5, 3.0).admissible);
        assert!(!ru(2.5, 2.2).admissible);
    }

    #[test]
    fn broken_lower_bound() {
        let b = |g: f64, e: f64| check_admissibility(&FamilySpec::radial_broken(g, e).unwrap());
        assert!(!b(1.0, -5.0).admissible);
        assert!(!b(1.0, -4.0).admissible);
        assert!(b(1.0, -3.9).admissible);
        assert!(!b(0.0, -2.0).admissible);
        assert_eq!(b(0.0, 1.0).beta_bound, 0.0);
    }
}
