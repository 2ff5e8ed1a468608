//! Small dense complex helpers shared by the checkers and the solver.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn commutator(x: &CMatrix, y: &CMatrix) -> CMatrix {
    x * y - y * x
}

/// Singular values, largest first.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut sv: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn numeric_rank(m: &CMatrix, tol: f64) -> usize {
    singular_values(m).iter().filter(|s| **s > tol).count()
}

/// `m^n` with `m^0 = 1`.
pub fn power(m: &CMatrix, n: usize) -> CMatrix {
    let mut out = identity(m.nrows());
    for _ in 0..n {
        out = &out * m;
    }
    out
}
