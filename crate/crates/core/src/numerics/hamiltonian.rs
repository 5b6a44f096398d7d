use crate::error::{Error, Result};

use super::grid::Grid;

/// Symmetric tridiagonal matrix stored by its two distinct diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::InvalidParameter(format!(
                "tridiagonal shape: {} diagonal, {} off-diagonal",
                diagonal.len(),
                off_diagonal.len()
            )));
        }
        Ok(Self {
            diagonal,
            off_diagonal,
        })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diagonal[i] * v[i];
                if i > 0 {
                    s += self.off_diagonal[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off_diagonal[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Max-row-sum norm.
    pub fn inf_norm(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diagonal[i].abs();
                if i > 0 {
                    s += self.off_diagonal[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.off_diagonal[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }
}

/// Three-point discretization of H = −½ d²/dx² + V(x) with ψ = 0 outside the
/// grid (and at the implicit origin node of half-line grids).
pub fn discretize_hamiltonian(
    potential: impl Fn(f64) -> f64,
    grid: &Grid,
) -> Result<TridiagonalOperator> {
    let kinetic = 1.0 / (grid.h * grid.h);
    let diagonal = grid
        .points()
        .map(|x| {
            let v = potential(x);
            if v.is_finite() {
                Ok(kinetic + v)
            } else {
                Err(Error::NonFinitePotential { x })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let off_diagonal = vec![-0.5 * kinetic; grid.n_points - 1];
    TridiagonalOperator::new(diagonal, off_diagonal)
}
