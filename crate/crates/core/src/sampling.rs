//! Seeded pseudorandom sampling.
//!
//! Every random object in the crate is drawn from one documented stream so
//! that results can be reproduced by other implementations:
//!
//! 1. `ChaCha8Rng::seed_from_u64(seed)` (rand_core's PCG32 seed expansion).
//! 2. A uniform variate is `(next_u64() >> 11) * 2^-53`, in `[0, 1)`.
//! 3. Two uniforms `u1, u2` give a standard normal pair by Box–Muller,
//!    `r = sqrt(-2 ln(1 - u1))`, `(r cos 2πu2, r sin 2πu2)`.
//! 4. A complex Gaussian entry is that pair divided by `sqrt(2)`, used as
//!    `(re, im)`. Matrices are filled row-major.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fock::{FockState, ModeConfig, StateVector};
use crate::linalg::{frobenius, CMatrix};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn complex_gaussian(rng: &mut Rng) -> Complex64 {
    let u1 = uniform(rng);
    let u2 = uniform(rng);
    let r = (-2.0 * (1.0 - u1).ln()).sqrt();
    let theta = 2.0 * PI * u2;
    Complex64::new(r * theta.cos(), r * theta.sin()) / SQRT_2
}

pub fn gaussian_matrix(rng: &mut Rng, rows: usize, cols: usize) -> CMatrix {
    let mut m = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

/// Gaussian `d_a × d_b` matrix scaled to unit Frobenius norm.
pub fn normalized_gaussian_matrix(rng: &mut Rng, rows: usize, cols: usize) -> CMatrix {
    let m = gaussian_matrix(rng, rows, cols);
    let n = frobenius(&m);
    m.unscale(n)
}

/// Random vector with Gaussian amplitudes on up to `terms` random basis states.
pub fn random_state(rng: &mut Rng, cfg: ModeConfig, terms: usize) -> StateVector {
    let dim = cfg.dimension() as u64;
    let raw: Vec<(FockState, Complex64)> = (0..terms)
        .map(|_| {
            let idx = (rng.next_u64() % dim) as usize;
            (FockState::from_index(cfg, idx), complex_gaussian(rng))
        })
        .collect();
    StateVector::from_terms(cfg, raw).expect("sampled states conform")
}
