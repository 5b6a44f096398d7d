//! Numerical cross-checks of the closed forms: finite-difference spectra,
//! the SUSY maps, the ladder algebras and scans of u over parameter space.

mod checks;
mod report;
mod tolerances;

use rayon::prelude::*;

pub use checks::{
    admissibility_scan, asymptotic_check, asymptotic_constant, asymptotic_deviation,
    count_local_minima, eigen_residual, pointwise_checks, reconstruction_distance, scan_grid,
    singularity_scan, spectrum_checks, verify_algebra, verify_isospectrality,
    verify_susy_transform, AdmissibilityPoint,
};
pub use report::{fmt_g, Check, SpectrumRow, SpectrumTable, VerificationReport};
pub use tolerances::{
    Tolerances, RECONSTRUCTION_LEVELS, SPECTRUM_LEVELS, STATE_LEVELS, TOLERANCES,
};

use crate::error::Result;
use crate::families::{check_admissibility, FamilySpec};

/// The admissible parameter points every check must pass on, in a fixed order.
pub fn sample_set() -> Vec<FamilySpec> {
    let with_half_bound = |spec: FamilySpec| {
        let half = 0.5 * check_admissibility(&spec).beta_bound;
        [spec, FamilySpec { beta: half, ..spec }]
    };
    let mut out = Vec::new();
    for eps in [0.3, 1.0, 2.5, 3.0] {
        out.extend(with_half_bound(
            FamilySpec::linear(eps, 0.0).expect("valid"),
        ));
    }
    for (gamma, bands) in [(0.0, [0.5, 1.5]), (1.0, [1.5, 5.5]), (2.5, [1.0, 5.0])] {
        for eps in bands {
            out.extend(with_half_bound(
                FamilySpec::radial_unbroken(gamma, eps, 0.0).expect("valid"),
            ));
        }
    }
    for gamma in [0.0, 1.0] {
        for eps in [-2.0 * gamma - 1.5, 0.0, 3.0] {
            out.push(FamilySpec::radial_broken(gamma, eps).expect("valid"));
        }
    }
    out
}

/// Runs every check on one admissible spec using the default grid.
pub fn verify_spec(spec: &FamilySpec) -> Result<VerificationReport> {
    let grid = spec.family.default_grid();
    let mut report = spectrum_checks(spec, SPECTRUM_LEVELS, &grid)?;
    report.extend(verify_susy_transform(spec, STATE_LEVELS, &grid)?);
    report.extend(verify_algebra(spec, STATE_LEVELS, &grid)?);
    report.extend(pointwise_checks(spec)?);
    match spec.family {
        crate::Family::LinearUnbroken => report.push(asymptotic_check(spec)?),
        crate::Family::RadialBroken => report.push(Check::within(
            "reconstruction",
            reconstruction_distance(spec, RECONSTRUCTION_LEVELS, &grid)?,
            TOLERANCES.reconstruction,
        )),
        crate::Family::RadialUnbroken => {}
    }
    Ok(report)
}

/// [`verify_spec`] over the sample set; reports come back in sample-set order.
pub fn verify_all() -> Result<Vec<VerificationReport>> {
    sample_set().par_iter().map(verify_spec).collect()
}
