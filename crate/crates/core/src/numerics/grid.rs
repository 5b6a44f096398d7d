use crate::error::{Error, Result};

use super::quadrature;

/// Boundary treatment of a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// ψ = 0 just outside both ends (full line, truncated to [−L, L]).
    DirichletBoth,
    /// Half line: the origin is an implicit node with ψ(0) = 0 and the grid
    /// starts at the first interior point x = h.
    DirichletRightOriginRegular,
}

/// Uniform 1-D grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
    pub h: f64,
    pub boundary: Boundary,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize, boundary: Boundary) -> Result<Self> {
        if n_points < 3 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 3 points, got {n_points}"
            )));
        }
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "bad grid interval [{x_min}, {x_max}]"
            )));
        }
        let h = (x_max - x_min) / (n_points - 1) as f64;
        if boundary == Boundary::DirichletRightOriginRegular && (x_min - h).abs() > 1e-12 * h {
            return Err(Error::InvalidParameter(
                "a half-line grid must start at its own spacing h".into(),
            ));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
            h,
            boundary,
        })
    }

    /// Symmetric grid on [−L, L].
    pub fn full_line(half_width: f64, n_points: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n_points, Boundary::DirichletBoth)
    }

    /// Half-line grid x = h, 2h, …, L with h = L / n_points.
    pub fn half_line(x_max: f64, n_points: usize) -> Result<Self> {
        let h = x_max / n_points as f64;
        Self::new(h, x_max, n_points, Boundary::DirichletRightOriginRegular)
    }

    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.h
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.x(i))
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> GridFunction {
        GridFunction {
            grid: *self,
            values: self.points().map(f).collect(),
        }
    }
}

/// A real function sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_points {
            return Err(Error::GridMismatch(format!(
                "{} values for a {}-point grid",
                values.len(),
                grid.n_points
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.n_points],
        }
    }

    pub fn norm(&self) -> f64 {
        quadrature::inner_product(self, self)
            .expect("same grid")
            .max(0.0)
            .sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    /// self − s·other
    pub fn minus_scaled(&self, s: f64, other: &Self) -> Result<Self> {
        check_same(&self.grid, &other.grid)?;
        Ok(Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - s * b)
                .collect(),
        })
    }

    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        Ok(self.minus_scaled(1.0, other)?.norm())
    }
}

pub(crate) fn check_same(a: &Grid, b: &Grid) -> Result<()> {
    if a != b {
        return Err(Error::GridMismatch(format!("{a:?} vs {b:?}")));
    }
    Ok(())
}
