//! Admissible Φ families: `Φ_α = U₁ · diag{0, √(f/2) U_α(m), 0} · U₂†`
//! with `f = 2/m` and pairwise disjoint blocks.
//!
//! Randomness comes from one [`sampling`] stream per seed, drawn in the
//! order `U₁` (d_a), `U₂` (d_b), then `U_0(m)`, …, `U_{k−1}(m)`. Blocks are
//! placed contiguously: mode α occupies rows and columns `[α·m, (α+1)·m)`.

use num_complex::Complex64;

use crate::conditions::{check_cubic_condition, check_normalization, check_product_condition};
use crate::error::{Error, Result};
use crate::fock::ModeConfig;
use crate::linalg::{numeric_rank, CMatrix};
use crate::quasiboson::{PhiFamily, PhiMatrix};
use crate::report::DEFAULT_TOLERANCE;
use crate::sampling::{self, Rng};

/// Singular values above this count toward the numeric rank.
pub const RANK_TOLERANCE: f64 = 1e-9;

/// `f = 2/m`.
pub fn rank_to_f(m: usize) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain("rank must be at least 1".into()));
    }
    Ok(2.0 / m as f64)
}

/// Rotation-invariant random unitary for a fixed seed.
pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    random_unitary_from(&mut sampling::rng(seed), n)
}

/// Gram–Schmidt orthonormalization of the columns of a complex Gaussian
/// matrix (QR with a positive real diagonal in `R`), projecting twice per
/// column.
pub fn random_unitary_from(rng: &mut Rng, n: usize) -> CMatrix {
    let mut q = sampling::gaussian_matrix(rng, n, n);
    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let proj: Complex64 = q.column(i).dotc(&q.column(j));
                let qi = q.column(i).clone_owned();
                let mut cj = q.column_mut(j);
                cj.axpy(-proj, &qi, Complex64::new(1.0, 0.0));
            }
        }
        let norm = q.column(j).norm();
        q.column_mut(j).unscale_mut(norm);
    }
    q
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub d_a: usize,
    pub d_b: usize,
    pub k: usize,
    pub m: usize,
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(d_a: usize, d_b: usize, k: usize, m: usize, seed: u64) -> Self {
        Self { d_a, d_b, k, m, seed }
    }

    pub fn is_feasible(&self) -> bool {
        self.k >= 1 && self.m >= 1 && self.k * self.m <= self.d_a.min(self.d_b)
    }

    pub fn f(&self) -> Result<f64> {
        rank_to_f(self.m)
    }
}

pub fn construct_family(spec: &FamilySpec) -> Result<PhiFamily> {
    let cfg = ModeConfig::new(spec.d_a, spec.d_b)?;
    if spec.k < 1 || spec.m < 1 {
        return Err(Error::Domain("need k >= 1 and m >= 1".into()));
    }
    if !spec.is_feasible() {
        return Err(Error::Infeasible {
            k: spec.k,
            m: spec.m,
            d_a: spec.d_a,
            d_b: spec.d_b,
        });
    }
    let scale = (spec.f()? / 2.0).sqrt();
    let mut rng = sampling::rng(spec.seed);
    let u1 = random_unitary_from(&mut rng, spec.d_a);
    let u2 = random_unitary_from(&mut rng, spec.d_b);
    let u2_dag = u2.adjoint();
    let members = (0..spec.k)
        .map(|alpha| {
            let block = random_unitary_from(&mut rng, spec.m);
            let mut core = CMatrix::zeros(spec.d_a, spec.d_b);
            let off = alpha * spec.m;
            core.view_mut((off, off), (spec.m, spec.m))
                .copy_from(&(block * Complex64::new(scale, 0.0)));
            PhiMatrix::new(cfg, &u1 * core * &u2_dag)
        })
        .collect::<Result<Vec<_>>>()?;
    PhiFamily::new(members)
}

/// `count` Gaussian Φ matrices on `d × d`, each scaled to `Tr(ΦΦ†) = 1`.
pub fn random_normalized_phis(d: usize, count: usize, seed: u64) -> Result<Vec<PhiMatrix>> {
    let cfg = ModeConfig::new(d, d)?;
    let mut rng = sampling::rng(seed);
    (0..count)
        .map(|_| PhiMatrix::new(cfg, sampling::normalized_gaussian_matrix(&mut rng, d, d)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionClass {
    NonDegenerate,
    DegenerateFamily,
    Inadmissible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub ranks: Vec<usize>,
    /// Common rank when every mode agrees.
    pub m: Option<usize>,
    pub f: Option<f64>,
    pub label: SolutionClass,
    pub conditions_passed: bool,
}

/// Numeric ranks, implied `f = 2/m`, and the solution class of a family.
/// `tol` bounds the singular values counted toward the rank.
pub fn classify(family: &PhiFamily, tol: f64) -> Classification {
    let ranks: Vec<usize> = family
        .members()
        .iter()
        .map(|phi| numeric_rank(phi.entries(), tol))
        .collect();
    let m = match ranks.first() {
        Some(&r) if r > 0 && ranks.iter().all(|&x| x == r) => Some(r),
        _ => None,
    };
    let f = m.map(|m| 2.0 / m as f64);
    let conditions_passed = f.is_some_and(|f| {
        check_normalization(family, DEFAULT_TOLERANCE).overall_passed
            && check_product_condition(family, DEFAULT_TOLERANCE).overall_passed
            && family
                .members()
                .iter()
                .all(|phi| check_cubic_condition(phi, f, DEFAULT_TOLERANCE).overall_passed)
    });
    let cfg = family.mode_config();
    let full_rank = cfg.d_a().min(cfg.d_b());
    let label = match m {
        _ if !conditions_passed => SolutionClass::Inadmissible,
        Some(r) if family.len() == 1 && r == full_rank => SolutionClass::NonDegenerate,
        _ => SolutionClass::DegenerateFamily,
    };
    Classification {
        ranks,
        m,
        f,
        label,
        conditions_passed,
    }
}
