//! Composite Simpson quadrature on uniform grids.
//!
//! With an odd number of intervals the last three are covered by Simpson's 3/8
//! rule, so every grid integrates cubics exactly. On half-line grids the origin
//! is an implicit node where every admissible function vanishes.

use crate::error::Result;

use super::grid::{check_same, Boundary, Grid, GridFunction};

/// Weights for `nodes` equally spaced nodes, spacing `h`.
fn simpson_weights(nodes: usize, h: f64) -> Vec<f64> {
    let intervals = nodes - 1;
    let mut w = vec![0.0; nodes];
    if intervals == 1 {
        w[0] = h / 2.0;
        w[1] = h / 2.0;
        return w;
    }
    let simpson_end = if intervals % 2 == 0 {
        intervals
    } else {
        intervals - 3
    };
    for i in (0..simpson_end).step_by(2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if simpson_end < intervals {
        let s = simpson_end;
        for (k, c) in [1.0, 3.0, 3.0, 1.0].iter().enumerate() {
            w[s + k] += 3.0 * h / 8.0 * c;
        }
    }
    w
}

/// Quadrature weights aligned with the grid's sample points.
pub fn weights(grid: &Grid) -> Vec<f64> {
    match grid.boundary {
        Boundary::DirichletBoth => simpson_weights(grid.n_points, grid.h),
        Boundary::DirichletRightOriginRegular => {
            let mut w = simpson_weights(grid.n_points + 1, grid.h);
            w.remove(0);
            w
        }
    }
}

pub fn integrate(f: &GridFunction) -> f64 {
    weights(&f.grid)
        .iter()
        .zip(&f.values)
        .map(|(w, v)| w * v)
        .sum()
}

/// ⟨f, g⟩ = ∫ f g dx.
pub fn inner_product(f: &GridFunction, g: &GridFunction) -> Result<f64> {
    check_same(&f.grid, &g.grid)?;
    Ok(weights(&f.grid)
        .iter()
        .zip(f.values.iter().zip(&g.values))
        .map(|(w, (a, b))| w * a * b)
        .sum())
}
