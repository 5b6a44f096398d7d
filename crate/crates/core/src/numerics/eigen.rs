//! Lowest eigenpairs of a symmetric tridiagonal matrix: Sturm-sequence
//! bisection for the eigenvalues, then inverse iteration with a pivoted
//! tridiagonal LU for the vectors.

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::grid::{Grid, GridFunction};
use super::hamiltonian::TridiagonalOperator;
use super::quadrature;

const MAX_BISECTIONS: usize = 200;
const MAX_INVERSE_ITERATIONS: usize = 8;
const RESIDUAL_TOL: f64 = 1e-8;

/// One eigenpair; `vector` has unit Euclidean norm and a positive first
/// significant component.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

impl EigenPair {
    /// The eigenvector as a grid function normalized by quadrature.
    pub fn to_grid_function(&self, grid: &Grid) -> Result<GridFunction> {
        let f = GridFunction::new(*grid, self.vector.clone())?;
        let norm = quadrature::inner_product(&f, &f)?.sqrt();
        Ok(f.scaled(1.0 / norm))
    }
}

/// Number of eigenvalues strictly below `lambda`.
fn sturm_count(op: &TridiagonalOperator, lambda: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = op.diagonal[0] - lambda;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..op.dim() {
        let e = op.off_diagonal[i - 1];
        q = op.diagonal[i] - lambda - e * e / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(op: &TridiagonalOperator) -> (f64, f64) {
    let n = op.dim();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += op.off_diagonal[i - 1].abs();
        }
        if i + 1 < n {
            r += op.off_diagonal[i].abs();
        }
        lo = lo.min(op.diagonal[i] - r);
        hi = hi.max(op.diagonal[i] + r);
    }
    (lo, hi)
}

/// The `index`-th smallest eigenvalue (0-based) by bisection.
fn bisect(op: &TridiagonalOperator, index: usize, bounds: (f64, f64), pivmin: f64) -> f64 {
    let (mut lo, mut hi) = bounds;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(op, mid, pivmin) > index {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Pivoted LU of (T − shift·I), LAPACK gttrf layout.
struct ShiftedLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(op: &TridiagonalOperator, shift: f64, tiny: f64) -> Self {
        let n = op.dim();
        let mut dl = op.off_diagonal.clone();
        let mut du = op.off_diagonal.clone();
        let mut d: Vec<f64> = op.diagonal.iter().map(|v| v - shift).collect();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
}

fn fix_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-6 * max) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn residual(op: &TridiagonalOperator, value: f64, v: &[f64]) -> f64 {
    op.apply(v)
        .iter()
        .zip(v)
        .map(|(hv, x)| (hv - value * x).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// The k smallest eigenvalues in increasing order.
pub fn lowest_eigenvalues(op: &TridiagonalOperator, k: usize) -> Result<Vec<f64>> {
    if k == 0 || k > op.dim() {
        return Err(Error::InvalidParameter(format!(
            "requested {k} eigenvalues of a {}-dimensional operator",
            op.dim()
        )));
    }
    let bounds = gershgorin(op);
    let pivmin = f64::MIN_POSITIVE.sqrt() * op.inf_norm().max(1.0);
    Ok((0..k)
        .into_par_iter()
        .map(|i| bisect(op, i, bounds, pivmin))
        .collect())
}

/// The k smallest eigenpairs in increasing order of eigenvalue.
pub fn lowest_eigenpairs(op: &TridiagonalOperator, k: usize) -> Result<Vec<EigenPair>> {
    let values = lowest_eigenvalues(op, k)?;
    let n = op.dim();
    let norm = op.inf_norm();
    let tiny = f64::EPSILON * norm.max(1.0);
    let cluster_gap = 1e-3 * norm.max(1.0);
    let mut pairs: Vec<EigenPair> = Vec::with_capacity(k);
    for (j, &value) in values.iter().enumerate() {
        let lu = ShiftedLu::new(op, value, tiny);
        // deterministic, non-symmetric start vector
        let mut v: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * ((i as f64 + 1.0) * 0.618_033_988_749_895).fract())
            .collect();
        normalize(&mut v);
        let mut ok = false;
        for _ in 0..MAX_INVERSE_ITERATIONS {
            lu.solve(&mut v);
            // keep clustered vectors orthogonal
            for prev in pairs
                .iter()
                .filter(|p| (p.value - value).abs() < cluster_gap)
            {
                let dot: f64 = prev.vector.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut()
                    .zip(&prev.vector)
                    .for_each(|(x, p)| *x -= dot * p);
            }
            normalize(&mut v);
            if residual(op, value, &v) <= RESIDUAL_TOL * norm {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Eigensolver(format!(
                "inverse iteration for eigenvalue #{j} ({value}) did not converge"
            )));
        }
        fix_sign(&mut v);
        pairs.push(EigenPair { value, vector: v });
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{discretize_hamiltonian, Grid};

    #[test]
    fn diagonal_matrix_returns_sorted_entries() {
        let op = TridiagonalOperator::new(vec![3.0, -1.0, 2.0, 0.5], vec![0.0; 3]).unwrap();
        let v = lowest_eigenvalues(&op, 4).unwrap();
        for (a, b) in v.iter().zip([-1.0, 0.5, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
    }

    #[test]
    fn three_by_three_closed_form() {
        let op = TridiagonalOperator::new(vec![2.0; 3], vec![-1.0; 2]).unwrap();
        let pairs = lowest_eigenpairs(&op, 3).unwrap();
        let want = [2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        for (p, w) in pairs.iter().zip(want) {
            assert!((p.value - w).abs() < 1e-14);
        }
        // ground vector ∝ (1, √2, 1)
        let g = &pairs[0].vector;
        assert!((g[1] / g[0] - 2f64.sqrt()).abs() < 1e-12);
        assert!(g[0] > 0.0);
    }

    #[test]
    fn harmonic_oscillator_levels() {
        let grid = Grid::full_line(12.0, 6001).unwrap();
        let op = discretize_hamiltonian(|x| 0.5 * x * x, &grid).unwrap();
        let pairs = lowest_eigenpairs(&op, 6).unwrap();
        assert!((pairs[0].value - 0.5).abs() < 5e-5);
        for (n, p) in pairs.iter().enumerate() {
            assert!(
                (p.value - (n as f64 + 0.5)).abs() < 5e-4,
                "level {n}: {}",
                p.value
            );
            assert!(residual(&op, p.value, &p.vector) <= 1e-8 * op.inf_norm());
        }
        // Gram matrix
        for i in 0..6 {
            for j in 0..6 {
                let dot: f64 = pairs[i]
                    .vector
                    .iter()
                    .zip(&pairs[j].vector)
                    .map(|(a, b)| a * b)
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-8, "gram[{i}][{j}] = {dot}");
            }
        }
    }

    #[test]
    fn second_order_convergence() {
        let err = |n: usize| {
            let grid = Grid::full_line(10.0, n).unwrap();
            let op = discretize_hamiltonian(|x| 0.5 * x * x, &grid).unwrap();
            (lowest_eigenvalues(&op, 1).unwrap()[0] - 0.5).abs()
        };
        let ratio = err(501) / err(1001);
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn rejects_bad_k() {
        let op = TridiagonalOperator::new(vec![1.0; 3], vec![0.0; 2]).unwrap();
        assert!(lowest_eigenvalues(&op, 0).is_err());
        assert!(lowest_eigenvalues(&op, 4).is_err());
    }
}
