use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{
    check_admissibility, riccati_residual, riccati_residual_fd, u_raw, v_minus_generic, CesSystem,
    Family, FamilySpec, DEFAULT_EXTENT,
};
use crate::ladder_algebra::{
    algebra_signature, check_grid, ladder_coefficient, ladder_images_grid,
    reconstruct_broken_state, Direction, LadderImages,
};
use crate::numerics::{
    apply_first_order, discretize_hamiltonian, inner_product, lowest_eigenvalues, Grid,
    GridFunction,
};
use crate::specfun::gamma;

use super::report::{Check, SpectrumRow, SpectrumTable, VerificationReport};
use super::tolerances::TOLERANCES;

/// Jet length for the pointwise first- and second-order checks.
const CHECK_JET: usize = 4;

fn sample(grid: &Grid, f: impl Fn(f64) -> Result<f64> + Sync) -> Result<GridFunction> {
    let values = (0..grid.n_points)
        .into_par_iter()
        .map(|i| f(grid.x(i)))
        .collect::<Result<Vec<_>>>()?;
    GridFunction::new(*grid, values)
}

fn psi_minus_grid(system: &CesSystem, n: usize, grid: &Grid) -> Result<GridFunction> {
    sample(grid, |x| system.psi_minus(n, x))
}

/// Maps an evaluation failure of the potential to NaN so that the
/// discretization reports where it stops being finite.
fn finite_or_nan(v: Result<f64>) -> f64 {
    v.unwrap_or(f64::NAN)
}

/// Finite-difference spectra of H₋ and H₊ against the closed-form levels.
pub fn verify_isospectrality(
    spec: &FamilySpec,
    n_max: usize,
    grid: &Grid,
) -> Result<SpectrumTable> {
    let system = CesSystem::new(*spec)?;
    check_grid(spec, grid)?;
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let h_minus = discretize_hamiltonian(|x| finite_or_nan(system.v_minus(x)), grid)?;
    let numeric = lowest_eigenvalues(&h_minus, n_max)?;
    let rows = numeric
        .iter()
        .enumerate()
        .map(|(n, &e_numeric)| {
            let e_analytic = system.e_minus(n);
            SpectrumRow {
                n,
                e_analytic,
                e_numeric,
                abs_error: (e_analytic - e_numeric).abs(),
            }
        })
        .collect();
    let skip = usize::from(spec.family.susy_unbroken());
    let pairs = if n_max > skip {
        let h_plus = discretize_hamiltonian(|x| finite_or_nan(system.v_plus(x)), grid)?;
        let plus = lowest_eigenvalues(&h_plus, n_max - skip)?;
        plus.into_iter()
            .zip(numeric[skip..].iter().copied())
            .collect()
    } else {
        Vec::new()
    };
    Ok(SpectrumTable {
        spec: *spec,
        rows,
        pairs,
    })
}

/// Spectrum checks: closed-form levels, SUSY pairing and the zero mode (or
/// its absence in the broken family).
pub fn spectrum_checks(spec: &FamilySpec, n_max: usize, grid: &Grid) -> Result<VerificationReport> {
    let table = verify_isospectrality(spec, n_max, grid)?;
    let tol = TOLERANCES;
    let mut report = VerificationReport::new(*spec);
    report.push(Check::within(
        "isospectrality",
        table.max_abs_error(),
        tol.eigenvalue,
    ));
    report.push(Check::within(
        "susy_pairing",
        table.max_pairing_error(),
        tol.pairing,
    ));
    let e0 = table.rows[0].e_numeric;
    if spec.family.susy_unbroken() {
        report.push(Check::within("zero_mode_energy", e0.abs(), tol.zero_mode));
    } else {
        let want = 2.0 * spec.gamma + 2.0 + spec.epsilon;
        let dev = if e0 > 0.0 {
            (e0 - want).abs()
        } else {
            f64::INFINITY
        };
        report.push(Check::within(
            "broken_ground_energy",
            dev,
            tol.broken_ground,
        ));
    }
    Ok(report)
}

/// Sup over n < `n_max` of ‖(H₋ − Eₙ)ψₙ⁻‖ with the second derivative taken
/// analytically.
pub fn eigen_residual(system: &CesSystem, n_max: usize, grid: &Grid) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for n in 0..n_max {
        let e = system.e_minus(n);
        let r = sample(grid, |x| {
            let psi = system.psi_minus_jet::<CHECK_JET>(n, x)?;
            Ok(-0.5 * psi.derivative(2) + (system.v_minus(x)? - e) * psi.value())
        })?;
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// Samples `K` quantities per grid point in one pass.
fn sample_columns<const K: usize>(
    grid: &Grid,
    f: impl Fn(f64) -> Result<[f64; K]> + Sync,
) -> Result<[GridFunction; K]> {
    let rows = (0..grid.n_points)
        .into_par_iter()
        .map(|i| f(grid.x(i)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(K);
    for k in 0..K {
        out.push(GridFunction::new(
            *grid,
            rows.iter().map(|r| r[k]).collect(),
        )?);
    }
    Ok(out.try_into().expect("K columns"))
}

/// ψ⁻ built from the closed form and from A† acting on ψ⁺, A mapping ψ⁻
/// back onto √E ψ⁺, the zero mode (or the explicit broken ground state) and
/// the eigenvalue residual of every state.
pub fn verify_susy_transform(
    spec: &FamilySpec,
    n_max: usize,
    grid: &Grid,
) -> Result<VerificationReport> {
    let system = CesSystem::new(*spec)?;
    check_grid(spec, grid)?;
    let tol = TOLERANCES;
    let unbroken = spec.family.susy_unbroken();
    let mut forward: f64 = 0.0;
    let mut backward: f64 = 0.0;
    let mut residual: f64 = 0.0;
    let mut ground: f64 = 0.0;
    for n in 0..n_max {
        let e = system.e_minus(n);
        let partner = (!unbroken || n > 0).then(|| if unbroken { n - 1 } else { n });
        let [fwd, back, res, gnd] = sample_columns(grid, |x| {
            let pj = system.point_jets::<CHECK_JET>(x)?;
            let psi = system.psi_minus_jet_at(n, &pj);
            let res = -0.5 * psi.derivative(2) + (system.v_minus(x)? - e) * psi.value();
            let a_psi = apply_first_order(1.0, &pj.w, &psi).value();
            let (fwd, back) = match partner {
                Some(m) => {
                    let root_e = system.e_plus(m).sqrt();
                    let plus = system.psi_plus_jet::<CHECK_JET>(m, x)?;
                    let via_adjoint = apply_first_order(-1.0, &pj.w, &plus).value() / root_e;
                    (
                        system.psi_minus(n, x)? - via_adjoint,
                        a_psi - root_e * system.psi_plus(m, x)?.0,
                    )
                }
                None => (0.0, 0.0),
            };
            let gnd = match (n, unbroken) {
                (0, true) => a_psi,
                (0, false) => system.psi_minus(0, x)? - system.broken_ground_state_explicit(x)?,
                _ => 0.0,
            };
            Ok([fwd, back, res, gnd])
        })?;
        forward = forward.max(fwd.norm());
        backward = backward.max(back.norm());
        residual = residual.max(res.norm());
        ground = ground.max(gnd.norm());
    }
    let mut report = VerificationReport::new(*spec);
    report.push(Check::within("susy_transform", forward, tol.susy_transform));
    report.push(Check::within("susy_inverse", backward, tol.susy_transform));
    report.push(if unbroken {
        Check::within("zero_mode_annihilation", ground, tol.annihilation)
    } else {
        Check::within("broken_ground_form", ground, tol.susy_transform)
    });
    report.push(Check::within(
        "eigen_residual",
        residual,
        tol.eigen_residual,
    ));
    Ok(report)
}

/// Matrix elements of [X, X†] and of the lowering operator on the lowest
/// `n_max` eigenstates of H₋.
pub fn verify_algebra(spec: &FamilySpec, n_max: usize, grid: &Grid) -> Result<VerificationReport> {
    let system = CesSystem::new(*spec)?;
    check_grid(spec, grid)?;
    let states = (0..n_max)
        .map(|n| psi_minus_grid(&system, n, grid))
        .collect::<Result<Vec<_>>>()?;
    let signature = algebra_signature(spec);

    let mut comm_dev: f64 = 0.0;
    let mut comm_scale: f64 = 0.0;
    let mut ladder_dev: f64 = 0.0;
    let mut ladder_scale: f64 = 0.0;
    for n in 0..n_max {
        let LadderImages {
            lowered,
            raised,
            commutator: comm,
        } = ladder_images_grid(&system, n, grid)?;
        let lower = ladder_coefficient(spec, n, Direction::Lower)?;
        let raise = ladder_coefficient(spec, n, Direction::Raise)?;
        let diag = signature.eval(system.e_minus(n));
        comm_scale = comm_scale.max(diag.abs());
        ladder_scale = ladder_scale.max(lower.value.abs()).max(raise.value.abs());
        for (m, psi_m) in states.iter().enumerate() {
            let want = if m == n { diag } else { 0.0 };
            let got = inner_product(psi_m, &comm)?;
            comm_scale = comm_scale.max(got.abs());
            comm_dev = comm_dev.max((got - want).abs());
            for (image, coeff) in [(&lowered, lower), (&raised, raise)] {
                let want = if coeff.to_index == Some(m) {
                    coeff.value
                } else {
                    0.0
                };
                let got = inner_product(psi_m, image)?;
                ladder_dev = ladder_dev.max((got - want).abs());
            }
        }
    }
    let mut report = VerificationReport::new(*spec);
    report.push(Check::within(
        "algebra_commutator",
        comm_dev / comm_scale.max(1.0),
        TOLERANCES.algebra,
    ));
    report.push(Check::within(
        "ladder_matrix",
        ladder_dev / ladder_scale.max(1.0),
        TOLERANCES.algebra,
    ));
    Ok(report)
}

/// Brackets [xᵢ, xᵢ₊₁] of every sign change of u on the grid. Points where u
/// cannot be evaluated are skipped.
pub fn singularity_scan(spec: &FamilySpec, grid: &Grid) -> Vec<(f64, f64)> {
    let values: Vec<(f64, f64)> = grid
        .points()
        .filter_map(|x| match u_raw(spec, x) {
            Ok((u, _)) if u.is_finite() => Some((x, u)),
            _ => None,
        })
        .collect();
    values
        .windows(2)
        .filter(|w| (w[0].1 > 0.0) != (w[1].1 > 0.0))
        .map(|w| (w[0].0, w[1].0))
        .collect()
}

/// The grid used for the pointwise scans over the configuration space.
pub fn scan_grid(family: Family, points: usize) -> Result<Grid> {
    if family.is_radial() {
        Grid::half_line(DEFAULT_EXTENT, points)
    } else {
        Grid::full_line(DEFAULT_EXTENT, points)
    }
}

/// Riccati residual with analytic and with finite-difference f′, plus the
/// agreement of the two forms of V₋.
pub fn pointwise_checks(spec: &FamilySpec) -> Result<VerificationReport> {
    let tol = TOLERANCES;
    let grid = scan_grid(spec.family, tol.riccati_points)?;
    let worst = |f: &(dyn Fn(f64) -> Result<f64> + Sync)| -> Result<f64> {
        Ok(sample(&grid, f)?
            .values
            .iter()
            .fold(0.0, |m: f64, v| m.max(v.abs())))
    };
    let analytic = worst(&|x| riccati_residual(spec, x))?;
    let fd = worst(&|x| riccati_residual_fd(spec, x, tol.riccati_fd_step))?;
    let forms = worst(&|x| {
        let specific = crate::families::v_minus(spec, x)?;
        Ok((specific - v_minus_generic(spec, x)?) / specific.abs().max(1.0))
    })?;
    let mut report = VerificationReport::new(*spec);
    report.push(Check::within(
        "riccati_analytic",
        analytic,
        tol.riccati_analytic,
    ));
    report.push(Check::within("riccati_fd", fd, tol.riccati_fd));
    report.push(Check::within("potential_forms", forms, tol.potential_forms));
    let crossings = singularity_scan(spec, &grid);
    report.push(Check::holds(
        "u_positive",
        check_admissibility(spec).admissible && crossings.is_empty(),
    ));
    Ok(report)
}

/// Γ(½)/Γ(ε/2) + β Γ(3/2)/Γ((1+ε)/2), the large-x limit of u/x^(ε−1) in the
/// linear family.
pub fn asymptotic_constant(spec: &FamilySpec) -> Result<f64> {
    if spec.family != Family::LinearUnbroken {
        return Err(Error::InvalidParameter(
            "the power-law asymptotics of u are tabulated for the linear family".into(),
        ));
    }
    let eps = spec.epsilon;
    Ok(gamma(0.5)? / gamma(eps / 2.0)? + spec.beta * gamma(1.5)? / gamma((1.0 + eps) / 2.0)?)
}

/// Largest relative deviation of u(x)/x^(ε−1) from [`asymptotic_constant`]
/// over `points` samples of [x_lo, x_hi].
pub fn asymptotic_deviation(spec: &FamilySpec, x_lo: f64, x_hi: f64, points: usize) -> Result<f64> {
    let c = asymptotic_constant(spec)?;
    let step = (x_hi - x_lo) / (points.max(2) - 1) as f64;
    (0..points.max(2))
        .map(|i| {
            let x = x_lo + i as f64 * step;
            let (u, _) = u_raw(spec, x)?;
            Ok((u / x.powf(spec.epsilon - 1.0) / c - 1.0).abs())
        })
        .try_fold(0.0, |m: f64, d: Result<f64>| Ok(m.max(d?)))
}

pub fn asymptotic_check(spec: &FamilySpec) -> Result<Check> {
    Ok(Check::within(
        "asymptotic_form",
        asymptotic_deviation(spec, 8.0, 12.0, 401)?,
        TOLERANCES.asymptotic,
    ))
}

/// Strict interior local minima of V₋ among `points` samples of [a, b].
pub fn count_local_minima(spec: &FamilySpec, a: f64, b: f64, points: usize) -> Result<usize> {
    if points < 3 || !(b > a) {
        return Err(Error::InvalidParameter(format!(
            "need at least 3 samples on a non-empty interval, got {points} on [{a}, {b}]"
        )));
    }
    let step = (b - a) / (points - 1) as f64;
    let v = (0..points)
        .map(|i| crate::families::v_minus(spec, a + i as f64 * step))
        .collect::<Result<Vec<_>>>()?;
    Ok(v.windows(3).filter(|w| w[1] < w[0] && w[1] < w[2]).count())
}

/// ‖prefactor·(D†)ⁿψ₀⁻ − ψₙ⁻‖ maximized over n < `n_max`.
pub fn reconstruction_distance(spec: &FamilySpec, n_max: usize, grid: &Grid) -> Result<f64> {
    let system = CesSystem::new(*spec)?;
    let mut worst: f64 = 0.0;
    for n in 0..n_max {
        let built = reconstruct_broken_state(spec, n, grid)?;
        let closed = psi_minus_grid(&system, n, grid)?;
        worst = worst.max(built.l2_distance(&closed)?);
    }
    Ok(worst)
}

/// One row of an ε scan: the admissibility verdict and the u sign changes.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityPoint {
    pub epsilon: f64,
    pub admissible: bool,
    pub crossings: Vec<(f64, f64)>,
}

/// Classifies each ε for the given family, γ and β and scans u for zeros.
pub fn admissibility_scan(
    family: Family,
    gamma: f64,
    beta: f64,
    epsilons: &[f64],
) -> Result<Vec<AdmissibilityPoint>> {
    let grid = family.default_grid();
    epsilons
        .par_iter()
        .map(|&epsilon| {
            let spec = FamilySpec::new(family, epsilon, gamma, beta)?;
            Ok(AdmissibilityPoint {
                epsilon,
                admissible: check_admissibility(&spec).admissible,
                crossings: singularity_scan(&spec, &grid),
            })
        })
        .collect()
}
