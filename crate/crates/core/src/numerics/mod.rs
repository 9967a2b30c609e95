//! Exact circle arithmetic, dense complex matrices and a Hermitian eigensolver.

pub mod cmatrix;
pub mod eigen;
pub mod turn;

pub use cmatrix::{format_entry, CMatrix, C, ONE, TAU_EIG, TAU_EQ, TAU_MAT, ZERO};
pub use eigen::{cluster_indices, hermitian_eig, HermitianEig};
pub use turn::{frac, parse_rational, Turn, Q, TURN_TOL};
