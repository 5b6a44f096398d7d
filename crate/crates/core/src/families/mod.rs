//! The three families of conditionally exactly solvable partner potentials.
//!
//! Each family fixes a shape-invariant superpotential Φ (linear oscillator,
//! radial oscillator with unbroken SUSY, radial oscillator with broken SUSY)
//! and adds f = u′/u, where u is a positive solution of
//! u″ + 2Φu′ + 2(1 − ε)u = 0 built from Kummer functions. The partner V₊ is the
//! known oscillator shifted by ε; V₋ is the new conditionally solvable
//! potential whose spectrum and eigenfunctions follow from the SUSY maps.

mod admissibility;
mod closed_form;
mod jets;
mod origin;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::Grid;

pub use admissibility::{check_admissibility, Admissibility, ADMISSIBILITY_MARGIN};
pub use closed_form::{
    e_minus, e_plus, phi, phi_prime, psi_plus, riccati_residual, riccati_residual_fd,
    spectrum_minus, u_eval, u_raw, v_minus, v_minus_generic, v_plus, CesSystem, EigenLevel, Sector,
    UValue,
};
pub use jets::PointJets;
pub use origin::{OriginSeries, ORIGIN_SERIES_RADIUS, ORIGIN_SERIES_TERMS};

/// Half-width (linear) or outer radius (radial) of the default grids.
pub const DEFAULT_EXTENT: f64 = 12.0;
pub const DEFAULT_LINEAR_POINTS: usize = 6001;
pub const DEFAULT_RADIAL_POINTS: usize = 6000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    LinearUnbroken,
    RadialUnbroken,
    RadialBroken,
}

impl Family {
    pub const ALL: [Family; 3] = [
        Family::LinearUnbroken,
        Family::RadialUnbroken,
        Family::RadialBroken,
    ];

    pub fn is_radial(self) -> bool {
        !matches!(self, Family::LinearUnbroken)
    }

    pub fn susy_unbroken(self) -> bool {
        !matches!(self, Family::RadialBroken)
    }

    /// Level spacing of the ladder tower.
    pub fn step(self) -> f64 {
        if self.is_radial() {
            2.0
        } else {
            1.0
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::LinearUnbroken => "linear",
            Family::RadialUnbroken => "radial-unbroken",
            Family::RadialBroken => "radial-broken",
        }
    }

    /// Default verification grid: [−12, 12] with 6001 points, or (0, 12] with
    /// 6000 points starting at x = h.
    pub fn default_grid(self) -> Grid {
        let grid = if self.is_radial() {
            Grid::half_line(DEFAULT_EXTENT, DEFAULT_RADIAL_POINTS)
        } else {
            Grid::full_line(DEFAULT_EXTENT, DEFAULT_LINEAR_POINTS)
        };
        grid.expect("default grid parameters are valid")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "linear-unbroken" => Ok(Family::LinearUnbroken),
            "radial-unbroken" => Ok(Family::RadialUnbroken),
            "radial-broken" => Ok(Family::RadialBroken),
            other => Err(Error::InvalidParameter(format!("unknown family '{other}'"))),
        }
    }
}

/// A family together with its parameters (ε, γ, β). The weight of the first
/// Kummer solution is fixed to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub epsilon: f64,
    pub gamma: f64,
    pub beta: f64,
}

impl FamilySpec {
    /// Checks the structural invariants (γ ≥ 0 for radial families, γ = 0 for
    /// the linear family, β = 0 for the broken family). Admissibility of the
    /// parameter point is a separate question, see [`check_admissibility`].
    pub fn new(family: Family, epsilon: f64, gamma: f64, beta: f64) -> Result<Self> {
        if !(epsilon.is_finite() && gamma.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        match family {
            Family::LinearUnbroken if gamma != 0.0 => {
                return Err(Error::InvalidParameter(
                    "gamma must be 0 for the linear family".into(),
                ))
            }
            Family::RadialUnbroken | Family::RadialBroken if gamma < 0.0 => {
                return Err(Error::InvalidParameter(format!(
                    "gamma must be >= 0, got {gamma}"
                )))
            }
            Family::RadialBroken if beta != 0.0 => return Err(Error::InvalidParameter(
                "beta must be 0 for the broken family (a second solution restores the zero mode)"
                    .into(),
            )),
            _ => {}
        }
        Ok(Self {
            family,
            epsilon,
            gamma,
            beta,
        })
    }

    pub fn linear(epsilon: f64, beta: f64) -> Result<Self> {
        Self::new(Family::LinearUnbroken, epsilon, 0.0, beta)
    }

    pub fn radial_unbroken(gamma: f64, epsilon: f64, beta: f64) -> Result<Self> {
        Self::new(Family::RadialUnbroken, epsilon, gamma, beta)
    }

    pub fn radial_broken(gamma: f64, epsilon: f64) -> Result<Self> {
        Self::new(Family::RadialBroken, epsilon, gamma, 0.0)
    }

    pub fn in_domain(&self, x: f64) -> bool {
        x.is_finite() && (!self.family.is_radial() || x > 0.0)
    }

    pub(crate) fn check_domain(&self, x: f64) -> Result<()> {
        if self.in_domain(x) {
            Ok(())
        } else {
            Err(Error::Domain {
                x,
                domain: if self.family.is_radial() {
                    "x > 0"
                } else {
                    "real line"
                },
            })
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "family={} epsilon={} gamma={} beta={}",
            self.family, self.epsilon, self.gamma, self.beta
        )
    }
}
