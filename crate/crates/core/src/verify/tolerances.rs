/// Every threshold the harness compares against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// |E_numeric − E_analytic| for the finite-difference spectrum.
    pub eigenvalue: f64,
    /// Level-by-level |E⁺ − E⁻| of the two numeric spectra.
    pub pairing: f64,
    /// |E₀| of the numeric zero mode.
    pub zero_mode: f64,
    /// ‖(H₋ − Eₙ)ψₙ⁻‖ with analytic derivatives.
    pub eigen_residual: f64,
    /// |E₀ − (2γ+2+ε)| in the broken family.
    pub broken_ground: f64,
    pub riccati_analytic: f64,
    pub riccati_fd: f64,
    /// Step of the central difference in the Riccati cross-check.
    pub riccati_fd_step: f64,
    /// Points per spec in the Riccati scans.
    pub riccati_points: usize,
    /// L² distance between the two constructions of ψₙ⁻ (and of Aψₙ⁻).
    pub susy_transform: f64,
    /// ‖Aψ₀⁻‖ for the unbroken zero mode.
    pub annihilation: f64,
    /// Matrix elements, relative to the largest one.
    pub algebra: f64,
    /// |V₋ specific − V₋ generic| relative to max(1, |V₋|).
    pub potential_forms: f64,
    /// Relative deviation of u/x^(ε−1) from its Γ-ratio limit on [8, 12].
    pub asymptotic: f64,
    /// L² distance of the ladder-built broken states.
    pub reconstruction: f64,
}

pub const TOLERANCES: Tolerances = Tolerances {
    eigenvalue: 1e-3,
    pairing: 1e-3,
    zero_mode: 1e-4,
    eigen_residual: 1e-6,
    broken_ground: 1e-3,
    riccati_analytic: 1e-10,
    riccati_fd: 1e-6,
    riccati_fd_step: 1e-5,
    riccati_points: 10_000,
    susy_transform: 1e-6,
    annihilation: 1e-8,
    algebra: 1e-6,
    potential_forms: 1e-9,
    asymptotic: 0.02,
    reconstruction: 1e-5,
};

/// Levels compared in the spectrum checks (n = 0..=8).
pub const SPECTRUM_LEVELS: usize = 9;
/// States used for the transform and algebra checks (n = 0..=6).
pub const STATE_LEVELS: usize = 7;
/// Broken states rebuilt from the ground state (n = 0..=3).
pub const RECONSTRUCTION_LEVELS: usize = 4;
