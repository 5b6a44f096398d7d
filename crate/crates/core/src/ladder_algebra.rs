//! Ladder operators of H₋ and the nonlinear algebras they close.
//!
//! The oscillator ladders of H₊ are transplanted by the SUSY maps:
//! B = A†aA for the linear family and D = A†cA for the radial ones, with
//! c = a² − κ/(2x²) and κ the centrifugal constant of the matching V₊.
//! Coefficients here are exact arithmetic; the grid routines evaluate the same
//! operators on the closed-form eigenfunctions through Taylor jets.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{
    check_admissibility, CesSystem, Family, FamilySpec, OriginSeries, PointJets,
    ORIGIN_SERIES_RADIUS,
};
use crate::numerics::{apply_first_order, Boundary, Grid, GridFunction, Jet, Series};
use crate::specfun::pochhammer;

/// Jet length used for a single ladder application (five orders consumed).
pub const LADDER_JET: usize = 6;
/// Jet length for the commutator (nine orders consumed).
pub const COMMUTATOR_JET: usize = 10;
/// Jet length for up to four stacked raisings in the broken family.
pub const RECONSTRUCTION_JET: usize = 18;
pub const MAX_RECONSTRUCTION: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Lower,
    Raise,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Lower => "lower",
            Direction::Raise => "raise",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(Direction::Lower),
            "raise" => Ok(Direction::Raise),
            other => Err(Error::InvalidParameter(format!(
                "unknown direction '{other}'"
            ))),
        }
    }
}

/// X ψ_from = value · ψ_to (X = B, D or their adjoints).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderCoefficient {
    pub from_index: usize,
    pub direction: Direction,
    pub value: f64,
    /// `None` when the image leaves the tower (value is 0 then).
    pub to_index: Option<usize>,
}

/// [X, X†] = Σ cₖ H₋ᵏ, stored highest power first with c₀ last.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraSignature {
    pub degree: usize,
    pub coeffs: Vec<f64>,
}

impl AlgebraSignature {
    pub fn eval(&self, energy: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc * energy + c)
    }
}

fn require_admissible(spec: &FamilySpec) -> Result<()> {
    let adm = check_admissibility(spec);
    if adm.admissible {
        Ok(())
    } else {
        Err(Error::Inadmissible(adm.reasons))
    }
}

/// Signed action coefficient of the lowering or raising operator of H₋ on ψₙ⁻.
pub fn ladder_coefficient(
    spec: &FamilySpec,
    n: usize,
    direction: Direction,
) -> Result<LadderCoefficient> {
    require_admissible(spec)?;
    let ep = |k: usize| crate::families::e_plus(spec, k);
    let g = spec.gamma;
    let zero = LadderCoefficient {
        from_index: n,
        direction,
        value: 0.0,
        to_index: None,
    };
    let (value, to) = match spec.family {
        Family::LinearUnbroken | Family::RadialUnbroken => {
            if n == 0 {
                return Ok(zero);
            }
            // ψₙ⁻ = A†ψₘ⁺/√Eₘ⁺ with m = n − 1
            let m = n - 1;
            let mf = m as f64;
            let radial = spec.family == Family::RadialUnbroken;
            match direction {
                Direction::Lower => {
                    if m == 0 {
                        return Ok(zero);
                    }
                    let v = if radial {
                        -2.0 * (ep(m - 1) * mf * (mf + g + 1.5) * ep(m)).sqrt()
                    } else {
                        (ep(m - 1) * mf * ep(m)).sqrt()
                    };
                    (v, n - 1)
                }
                Direction::Raise => {
                    let v = if radial {
                        -2.0 * (ep(m + 1) * (mf + 1.0) * (mf + g + 2.5) * ep(m)).sqrt()
                    } else {
                        (ep(m + 1) * (mf + 1.0) * ep(m)).sqrt()
                    };
                    (v, n + 1)
                }
            }
        }
        Family::RadialBroken => {
            let nf = n as f64;
            match direction {
                Direction::Lower => {
                    if n == 0 {
                        return Ok(zero);
                    }
                    (
                        -2.0 * (ep(n) * nf * (nf + g + 0.5) * ep(n - 1)).sqrt(),
                        n - 1,
                    )
                }
                Direction::Raise => (
                    -2.0 * (ep(n) * (nf + 1.0) * (nf + g + 1.5) * ep(n + 1)).sqrt(),
                    n + 1,
                ),
            }
        }
    };
    Ok(LadderCoefficient {
        from_index: n,
        direction,
        value,
        to_index: Some(to),
    })
}

fn radial_unbroken_signature(gamma: f64, eps: f64) -> AlgebraSignature {
    AlgebraSignature {
        degree: 3,
        coeffs: vec![
            8.0,
            12.0 * (gamma - eps + 1.5),
            -4.0 * (2.0 * eps * gamma - eps * eps + 3.0 * eps - 1.0),
            0.0,
        ],
    }
}

/// The polynomial in H₋ that the commutator of the ladder pair reduces to.
/// The broken case is the unbroken one with γ replaced by −γ−2.
pub fn algebra_signature(spec: &FamilySpec) -> AlgebraSignature {
    let eps = spec.epsilon;
    match spec.family {
        Family::LinearUnbroken => AlgebraSignature {
            degree: 2,
            coeffs: vec![3.0, -(2.0 * eps - 1.0), 0.0],
        },
        Family::RadialUnbroken => radial_unbroken_signature(spec.gamma, eps),
        Family::RadialBroken => radial_unbroken_signature(-spec.gamma - 2.0, eps),
    }
}

/// (lhs, rhs) of [X, X†]ψₙ⁻ = (Σ cₖ Eₙᵏ) ψₙ⁻, lhs from the ladder coefficients.
pub fn commutator_eigenvalue(spec: &FamilySpec, n: usize) -> Result<(f64, f64)> {
    let raise = ladder_coefficient(spec, n, Direction::Raise)?.value;
    let lower = ladder_coefficient(spec, n, Direction::Lower)?.value;
    // X X† ψₙ = R(n) L(n+1) ψₙ with L(n+1) = R(n); X† X ψₙ = L(n)²
    let lhs = raise * raise - lower * lower;
    let rhs = algebra_signature(spec).eval(crate::families::e_minus(spec, n));
    Ok((lhs, rhs))
}

/// Centrifugal constant κ in c = a² − κ/(2x²).
fn kappa(spec: &FamilySpec) -> f64 {
    let g = spec.gamma;
    match spec.family {
        Family::LinearUnbroken => 0.0,
        Family::RadialUnbroken => (g + 1.0) * (g + 2.0),
        Family::RadialBroken => g * (g + 1.0),
    }
}

/// Applies the oscillator ladder (a, a† or c, c†) to a jet.
fn oscillator_ladder<const N: usize>(
    spec: &FamilySpec,
    pj: &PointJets<N>,
    direction: Direction,
    g: &Jet<N>,
) -> Jet<N> {
    let coeff_d = match direction {
        Direction::Lower => 1.0,
        Direction::Raise => -1.0,
    };
    let once = apply_first_order(coeff_d, &pj.x, g);
    if spec.family == Family::LinearUnbroken {
        return once;
    }
    let twice = apply_first_order(coeff_d, &pj.x, &once);
    let inv_x2 = (pj.x * pj.x).recip();
    twice - (inv_x2 * *g).scale(0.5 * kappa(spec))
}

/// X or X† applied to a jet: A, then the oscillator ladder, then A†.
pub fn apply_ladder_jet<const N: usize>(
    spec: &FamilySpec,
    pj: &PointJets<N>,
    direction: Direction,
    psi: &Jet<N>,
) -> Jet<N> {
    let a_psi = apply_first_order(1.0, &pj.w, psi);
    let mid = oscillator_ladder(spec, pj, direction, &a_psi);
    apply_first_order(-1.0, &pj.w, &mid)
}

/// The same composition on expansions about the origin.
fn oscillator_ladder_series(
    spec: &FamilySpec,
    os: &OriginSeries,
    direction: Direction,
    g: &Series,
) -> Series {
    let coeff_d = match direction {
        Direction::Lower => 1.0,
        Direction::Raise => -1.0,
    };
    let once = os.first_order(coeff_d, &os.x, g);
    if spec.family == Family::LinearUnbroken {
        return once;
    }
    let twice = os.first_order(coeff_d, &os.x, &once);
    &twice - &g.clone().shift(-2).scale(0.5 * kappa(spec))
}

/// X or X† on an expansion of some ψ⁻ about the origin. Terms below the
/// common leading power `lead` of the ψ⁻ can only be roundoff and are dropped.
pub fn apply_ladder_series(
    spec: &FamilySpec,
    os: &OriginSeries,
    direction: Direction,
    psi: &Series,
    lead: f64,
) -> Series {
    let a_psi = os.first_order(1.0, &os.w, psi);
    let mid = oscillator_ladder_series(spec, os, direction, &a_psi);
    os.first_order(-1.0, &os.w, &mid).drop_below(lead)
}

pub(crate) fn check_grid(spec: &FamilySpec, grid: &Grid) -> Result<()> {
    let ok = if spec.family.is_radial() {
        grid.boundary == Boundary::DirichletRightOriginRegular && grid.x_min > 0.0
    } else {
        grid.boundary == Boundary::DirichletBoth
    };
    if ok {
        Ok(())
    } else {
        Err(Error::GridMismatch(format!(
            "{:?} grid on [{}, {}] does not fit the {} family",
            grid.boundary, grid.x_min, grid.x_max, spec.family
        )))
    }
}

/// Samples a pointwise jet evaluation on the grid, in parallel. Inside
/// [`ORIGIN_SERIES_RADIUS`] the expansion `near` is used instead when given.
pub(crate) fn sample_jets<F>(grid: &Grid, near: Option<&Series>, f: F) -> Result<GridFunction>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let values = (0..grid.n_points)
        .into_par_iter()
        .map(|i| {
            let x = grid.x(i);
            match near {
                Some(s) if x < ORIGIN_SERIES_RADIUS => Ok(s.eval(x)),
                _ => f(x),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    GridFunction::new(*grid, values)
}

/// X ψₙ⁻ (or X†ψₙ⁻) on the grid, with every derivative taken analytically.
pub fn apply_ladder_grid(
    spec: &FamilySpec,
    n: usize,
    direction: Direction,
    grid: &Grid,
) -> Result<GridFunction> {
    let system = CesSystem::new(*spec)?;
    apply_ladder_grid_with(&system, n, direction, grid)
}

pub fn apply_ladder_grid_with(
    system: &CesSystem,
    n: usize,
    direction: Direction,
    grid: &Grid,
) -> Result<GridFunction> {
    let spec = system.spec();
    check_grid(spec, grid)?;
    let lead = OriginSeries::minus_lead(system);
    let near = system
        .origin_series()
        .map(|os| apply_ladder_series(spec, &os, direction, &os.psi_minus(system, n), lead));
    sample_jets(grid, near.as_ref(), |x| {
        let pj = system.point_jets::<LADDER_JET>(x)?;
        let psi = system.psi_minus_jet_at(n, &pj);
        Ok(apply_ladder_jet(spec, &pj, direction, &psi).value())
    })
}

/// [X, X†] ψₙ⁻ on the grid.
pub fn apply_commutator_grid(system: &CesSystem, n: usize, grid: &Grid) -> Result<GridFunction> {
    let spec = system.spec();
    check_grid(spec, grid)?;
    let lead = OriginSeries::minus_lead(system);
    let near = system.origin_series().map(|os| {
        let psi = os.psi_minus(system, n);
        let up = apply_ladder_series(spec, &os, Direction::Raise, &psi, lead);
        let down = apply_ladder_series(spec, &os, Direction::Lower, &psi, lead);
        &apply_ladder_series(spec, &os, Direction::Lower, &up, lead)
            - &apply_ladder_series(spec, &os, Direction::Raise, &down, lead)
    });
    sample_jets(grid, near.as_ref(), |x| {
        let pj = system.point_jets::<COMMUTATOR_JET>(x)?;
        let psi = system.psi_minus_jet_at(n, &pj);
        let up = apply_ladder_jet(spec, &pj, Direction::Raise, &psi);
        let down = apply_ladder_jet(spec, &pj, Direction::Lower, &psi);
        let xxd = apply_ladder_jet(spec, &pj, Direction::Lower, &up);
        let xdx = apply_ladder_jet(spec, &pj, Direction::Raise, &down);
        Ok((xxd - xdx).value())
    })
}

/// Xψₙ⁻, X†ψₙ⁻ and [X, X†]ψₙ⁻ on the grid from one set of jets per point.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderImages {
    pub lowered: GridFunction,
    pub raised: GridFunction,
    pub commutator: GridFunction,
}

pub fn ladder_images_grid(system: &CesSystem, n: usize, grid: &Grid) -> Result<LadderImages> {
    let spec = system.spec();
    check_grid(spec, grid)?;
    let lead = OriginSeries::minus_lead(system);
    let near = system.origin_series().map(|os| {
        let psi = os.psi_minus(system, n);
        let up = apply_ladder_series(spec, &os, Direction::Raise, &psi, lead);
        let down = apply_ladder_series(spec, &os, Direction::Lower, &psi, lead);
        let comm = &apply_ladder_series(spec, &os, Direction::Lower, &up, lead)
            - &apply_ladder_series(spec, &os, Direction::Raise, &down, lead);
        (down, up, comm)
    });
    let triples = (0..grid.n_points)
        .into_par_iter()
        .map(|i| {
            let x = grid.x(i);
            if let Some((down, up, comm)) = near.as_ref().filter(|_| x < ORIGIN_SERIES_RADIUS) {
                return Ok([down.eval(x), up.eval(x), comm.eval(x)]);
            }
            let pj = system.point_jets::<COMMUTATOR_JET>(x)?;
            let psi = system.psi_minus_jet_at(n, &pj);
            let up = apply_ladder_jet(spec, &pj, Direction::Raise, &psi);
            let down = apply_ladder_jet(spec, &pj, Direction::Lower, &psi);
            let xxd = apply_ladder_jet(spec, &pj, Direction::Lower, &up);
            let xdx = apply_ladder_jet(spec, &pj, Direction::Raise, &down);
            Ok([down.value(), up.value(), (xxd - xdx).value()])
        })
        .collect::<Result<Vec<_>>>()?;
    let column = |k: usize| GridFunction::new(*grid, triples.iter().map(|t| t[k]).collect());
    Ok(LadderImages {
        lowered: column(0)?,
        raised: column(1)?,
        commutator: column(2)?,
    })
}

/// (−¼)ⁿ [n! (γ+3/2)ₙ (γ+1+ε/2)ₙ (γ+2+ε/2)ₙ]^(−1/2).
pub fn reconstruction_prefactor(spec: &FamilySpec, n: usize) -> f64 {
    let (g, e) = (spec.gamma, spec.epsilon);
    let m = n as u32;
    let prod = pochhammer(1.0, m)
        * pochhammer(g + 1.5, m)
        * pochhammer(g + 1.0 + e / 2.0, m)
        * pochhammer(g + 2.0 + e / 2.0, m);
    (-0.25f64).powi(n as i32) / prod.sqrt()
}

/// ψₙ⁻ of the broken family rebuilt as prefactor · (D†)ⁿ ψ₀⁻.
pub fn reconstruct_broken_state(spec: &FamilySpec, n: usize, grid: &Grid) -> Result<GridFunction> {
    if spec.family != Family::RadialBroken {
        return Err(Error::InvalidParameter(
            "state reconstruction is defined for the broken family only".into(),
        ));
    }
    if n > MAX_RECONSTRUCTION {
        return Err(Error::InvalidParameter(format!(
            "reconstruction supports n <= {MAX_RECONSTRUCTION}, got {n}"
        )));
    }
    let system = CesSystem::new(*spec)?;
    check_grid(spec, grid)?;
    let prefactor = reconstruction_prefactor(spec, n);
    let lead = OriginSeries::minus_lead(&system);
    let near = system.origin_series().map(|os| {
        let mut psi = os.psi_minus(&system, 0);
        for _ in 0..n {
            psi = apply_ladder_series(spec, &os, Direction::Raise, &psi, lead);
        }
        psi.scale(prefactor)
    });
    sample_jets(grid, near.as_ref(), |x| {
        let pj = system.point_jets::<RECONSTRUCTION_JET>(x)?;
        let mut psi = system.psi_minus_jet_at(0, &pj);
        for _ in 0..n {
            psi = apply_ladder_jet(spec, &pj, Direction::Raise, &psi);
        }
        Ok(prefactor * psi.value())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::inner_product;

    fn lin(eps: f64) -> FamilySpec {
        FamilySpec::linear(eps, 0.0).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        for d in [Direction::Lower, Direction::Raise] {
            assert_eq!(ladder_coefficient(&lin(0.7), 0, d).unwrap().value, 0.0);
        }
        let c = ladder_coefficient(&lin(1.0), 2, Direction::Lower).unwrap();
        assert!((c.value - 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(c.to_index, Some(1));
        let ru = FamilySpec::radial_unbroken(1.0, 1.0, 0.0).unwrap();
        let c = ladder_coefficient(&ru, 2, Direction::Lower).unwrap();
        assert!((c.value + 2.0 * 28f64.sqrt()).abs() < 1e-12);
        let rb = FamilySpec::radial_broken(1.0, 0.0).unwrap();
        assert_eq!(
            ladder_coefficient(&rb, 0, Direction::Lower).unwrap().value,
            0.0
        );
        let c = ladder_coefficient(&rb, 0, Direction::Raise).unwrap();
        assert!((c.value + 2.0 * 60f64.sqrt()).abs() < 1e-12);
        let bad = FamilySpec::radial_unbroken(1.0, 3.0, 0.0).unwrap();
        assert!(ladder_coefficient(&bad, 1, Direction::Raise).is_err());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(algebra_signature(&lin(1.0)).coeffs, vec![3.0, -1.0, 0.0]);
        let ru = FamilySpec::radial_unbroken(1.0, 1.0, 0.0).unwrap();
        assert_eq!(algebra_signature(&ru).coeffs, vec![8.0, 18.0, -12.0, 0.0]);
        for (g, e) in [(0.0, 0.3), (1.0, 0.0), (2.7, -3.1)] {
            let b = algebra_signature(&FamilySpec::radial_broken(g, e).unwrap());
            assert_eq!(b, radial_unbroken_signature(-g - 2.0, e));
        }
    }

    #[test]
    fn commutator_spot_values() {
        assert_eq!(commutator_eigenvalue(&lin(1.0), 0).unwrap(), (0.0, 0.0));
        let (l, r) = commutator_eigenvalue(&lin(1.0), 2).unwrap();
        assert!((l - 10.0).abs() < 1e-12 && (r - 10.0).abs() < 1e-12);
        let (l, _) = commutator_eigenvalue(&lin(0.4), 1).unwrap();
        assert!((l - 0.4 * 1.4).abs() < 1e-12);
        let ru = FamilySpec::radial_unbroken(1.0, 1.0, 0.0).unwrap();
        let (l, r) = commutator_eigenvalue(&ru, 2).unwrap();
        assert!((l - 752.0).abs() < 1e-9 && (r - 752.0).abs() < 1e-9);
        let rb = FamilySpec::radial_broken(1.0, 0.0).unwrap();
        let (l, r) = commutator_eigenvalue(&rb, 0).unwrap();
        assert!((l - 240.0).abs() < 1e-9 && (r - 240.0).abs() < 1e-9);
    }

    fn overlap(f: &GridFunction, sys: &CesSystem, m: usize) -> f64 {
        let target = f.grid.sample(|x| sys.psi_minus(m, x).unwrap());
        inner_product(f, &target).unwrap()
    }

    #[test]
    fn grid_action_matches_coefficients() {
        let specs = [
            FamilySpec::linear(0.6, 0.2).unwrap(),
            FamilySpec::radial_unbroken(1.0, 1.0, 0.1).unwrap(),
            FamilySpec::radial_broken(1.0, 0.0).unwrap(),
        ];
        for s in specs {
            let sys = CesSystem::new(s).unwrap();
            let grid = s.family.default_grid();
            for n in 0..3 {
                for d in [Direction::Lower, Direction::Raise] {
                    let f = apply_ladder_grid_with(&sys, n, d, &grid).unwrap();
                    let c = ladder_coefficient(&s, n, d).unwrap();
                    match c.to_index {
                        None => assert!(f.norm() < 1e-8, "{s} n={n} {d}: {}", f.norm()),
                        Some(m) => {
                            let ov = overlap(&f, &sys, m);
                            assert!(
                                (ov - c.value).abs() < 1e-6 * c.value.abs(),
                                "{s} n={n} {d}: {ov} vs {}",
                                c.value
                            );
                            let rest = (f.norm().powi(2) - ov * ov).max(0.0).sqrt();
                            assert!(
                                rest < 1e-6 * c.value.abs().max(1.0),
                                "{s} n={n} {d}: rest {rest}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn broken_reconstruction() {
        let s = FamilySpec::radial_broken(1.0, 0.0).unwrap();
        let sys = CesSystem::new(s).unwrap();
        let grid = s.family.default_grid();
        for n in 0..=3 {
            let f = reconstruct_broken_state(&s, n, &grid).unwrap();
            let target = grid.sample(|x| sys.psi_minus(n, x).unwrap());
            let d = f.l2_distance(&target).unwrap();
            assert!(d < 1e-5, "n={n} distance {d}");
        }
        assert!(reconstruct_broken_state(&s, 5, &grid).is_err());
    }

    #[test]
    fn grid_mismatch_is_reported() {
        let s = FamilySpec::radial_broken(1.0, 0.0).unwrap();
        let grid = Grid::full_line(5.0, 101).unwrap();
        assert!(matches!(
            apply_ladder_grid(&s, 0, Direction::Raise, &grid),
            Err(Error::GridMismatch(_))
        ));
    }
}
