//! Arik–Coon incompatibility probe.
//!
//! An Arik–Coon mode needs `F_{αα} = Δ_{αα} + (q − 1) A†_α A_α` to vanish on
//! the chain states. On two quanta this forces `(A†_α)²|O⟩ = 0` whenever
//! `q ≠ 1`, so every Φ must land in one of two branches: `F` is visibly
//! nonzero on `(A†)²|O⟩`, or `(A†)²|O⟩` is itself zero.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::quasiboson::{apply_a, apply_a_dagger, apply_a_dagger_pow, apply_delta, PhiFamily, PhiMatrix};
use crate::report::{Check, VerificationReport};

/// `F (A†)²|O⟩` above this counts as a genuine inconsistency.
pub const INCOMPATIBILITY_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoGoBranch {
    /// `‖F (A†)²|O⟩‖` exceeds the floor.
    Inconsistency,
    /// `(A†)²|O⟩` vanishes: the "boson" is nilpotent.
    Nilpotency,
    /// Neither: the relation would hold non-trivially.
    Violated,
}

impl NoGoBranch {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Inconsistency => "inconsistency branch",
            Self::Nilpotency => "nilpotency branch",
            Self::Violated => "AC relation satisfied non-trivially",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeProbe {
    /// `‖F (A†)|O⟩‖`, reported for context.
    pub r1: f64,
    /// `‖F (A†)²|O⟩‖`.
    pub r2: f64,
    /// `‖(A†)²|O⟩‖`.
    pub s2: f64,
    pub branch: NoGoBranch,
}

/// `F_{αβ} v` with `F_{αβ} = Δ_{αβ} + (q^{δ_{αβ}} − 1) A†_β A_α`.
fn apply_f(phi_a: &PhiMatrix, phi_b: &PhiMatrix, same: bool, q: f64, v: &StateVector) -> Result<StateVector> {
    let delta = apply_delta(phi_a, phi_b, v)?;
    if !same {
        return Ok(delta);
    }
    let number = apply_a_dagger(phi_b, &apply_a(phi_a, v)?)?;
    delta.add_scaled(Complex64::new(q - 1.0, 0.0), &number)
}

fn check_q(q: f64) -> Result<()> {
    if q == 1.0 || !q.is_finite() {
        return Err(Error::Domain("q=1 is not a deformation".into()));
    }
    Ok(())
}

pub fn probe_mode(phi: &PhiMatrix, q: f64, tolerance: f64) -> Result<ModeProbe> {
    check_q(q)?;
    let vac = StateVector::vacuum(phi.mode_config());
    let one = apply_a_dagger(phi, &vac)?;
    let two = apply_a_dagger(phi, &one)?;
    let r1 = apply_f(phi, phi, true, q, &one)?.norm();
    let r2 = apply_f(phi, phi, true, q, &two)?.norm();
    let s2 = two.norm();
    let branch = if r2 > INCOMPATIBILITY_FLOOR {
        NoGoBranch::Inconsistency
    } else if s2 <= tolerance {
        NoGoBranch::Nilpotency
    } else {
        NoGoBranch::Violated
    };
    Ok(ModeProbe { r1, r2, s2, branch })
}

/// One check per mode asserting the no-go disjunction. Off-diagonal
/// `‖F_{αβ} (A†_α)²|O⟩‖` values are listed in the context only.
pub fn ac_nogo_probe(family: &PhiFamily, q: f64, tolerance: f64) -> Result<VerificationReport> {
    check_q(q)?;
    let phis = family.members();
    let vac = StateVector::vacuum(family.mode_config());
    let mut report = VerificationReport::new();
    for (alpha, phi) in phis.iter().enumerate() {
        let p = probe_mode(phi, q, tolerance)?;
        let two = apply_a_dagger_pow(phi, 2, &vac)?;
        let mut off_diag = 0.0f64;
        for (beta, other) in phis.iter().enumerate() {
            if beta != alpha {
                off_diag = off_diag.max(apply_f(phi, other, false, q, &two)?.norm());
            }
        }
        report.push(Check::verdict(
            format!("ac no-go mode {alpha}"),
            p.r2,
            INCOMPATIBILITY_FLOOR,
            p.branch != NoGoBranch::Violated,
            format!(
                "{}: q = {q}, r2 = {:.6e}, s2 = {:.6e}, r1 = {:.6e}, off-diagonal max = {off_diag:.6e}",
                p.branch.label(),
                p.r2,
                p.s2,
                p.r1
            ),
        ));
    }
    Ok(report)
}
