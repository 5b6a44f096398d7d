//! Independent numerical machinery: uniform grids, Simpson quadrature, the
//! three-point Hamiltonian, a symmetric tridiagonal eigensolver and
//! Taylor-jet application of first-order differential operators.

mod eigen;
mod grid;
mod hamiltonian;
pub mod jet;
mod operator;
pub mod quadrature;
pub mod series;

pub use eigen::{lowest_eigenpairs, lowest_eigenvalues, EigenPair};
pub use grid::{Boundary, Grid, GridFunction};
pub use hamiltonian::{discretize_hamiltonian, TridiagonalOperator};
pub use jet::Jet;
pub use operator::apply_first_order;
pub use quadrature::inner_product;
pub use series::Series;
