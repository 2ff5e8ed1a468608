//! Weak-equality check: does a family realize independent deformed
//! oscillators with a given structure function?
//!
//! Every identity is tested on the spanning set of chain states
//! `∏_α (A†_α)^{n_α}|O⟩`, which carry definite occupation `n_α` in each mode.
//! Residuals are divided by the chain norm when it exceeds
//! [`RELATIVE_FLOOR`]; chains at the occupancy cutoff vanish and are
//! measured absolutely.

use num_complex::Complex64;

use crate::deformation::StructureFunction;
use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::quasiboson::{
    apply_a, apply_commutator, apply_delta, chain_norm_sq, chain_state, ChainIndex, PhiFamily,
};
use crate::report::{Check, VerificationReport};

pub const RELATIVE_FLOOR: f64 = 1e-10;

pub const INDEPENDENCE: &str = "(i) independence [A_a, A_b†] chain = 0 (a≠b)";
pub const COMMUTATOR: &str = "(ii) [A_a, A_a†] chain = (φ(n+1) − φ(n)) chain";
pub const DELTA: &str = "(iii) Δ_aa chain = (1 − φ(n+1) + φ(n)) chain";
pub const LOWERING: &str = "(iv) A_a chain = φ(n) chain(n−1)";
pub const NORM_LAW: &str = "(v) ‖(A†)^n|O⟩‖² = ∏ φ(k)";
pub const CUTOFF: &str = "occupancy cutoff ‖(A†)^(m+1)|O⟩‖ = 0";

#[derive(Default)]
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn offer(&mut self, r: f64, at: impl FnOnce() -> String) {
        if !(r <= self.value) {
            self.value = r;
            self.at = at();
        }
    }

    fn into_check(self, name: &str, tolerance: f64) -> Check {
        let context = if self.at.is_empty() {
            "no applicable chains".to_string()
        } else {
            format!("worst at {}", self.at)
        };
        Check::new(name, self.value, tolerance, context)
    }
}

fn scaled(residual: f64, reference: f64) -> f64 {
    if reference > RELATIVE_FLOOR {
        residual / reference
    } else {
        residual
    }
}

/// Residual of `lhs − c · chain`, relative to `‖chain‖`.
fn eigen_residual(lhs: &StateVector, c: f64, chain: &StateVector, chain_norm: f64) -> Result<f64> {
    let diff = lhs.add_scaled(Complex64::new(-c, 0.0), chain)?;
    Ok(scaled(diff.norm(), chain_norm))
}

/// Checks sub-conditions (i)–(v) on all chains of total degree `≤ n_max`.
pub fn verify_realization(
    family: &PhiFamily,
    sf: &StructureFunction,
    n_max: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    if n_max > family.max_chain_length() {
        return Err(Error::ChainTooLong {
            degree: n_max,
            max: family.max_chain_length(),
        });
    }
    let k = family.len();
    let phis = family.members();
    let indices = ChainIndex::all_up_to(k, n_max);
    let chains: Vec<StateVector> = indices
        .iter()
        .map(|idx| chain_state(family, idx))
        .collect::<Result<_>>()?;
    let lookup = |idx: &ChainIndex| indices.iter().position(|x| x == idx).map(|i| &chains[i]);

    let mut independence = Worst::default();
    let mut commutator = Worst::default();
    let mut delta = Worst::default();
    let mut lowering = Worst::default();

    for (idx, chain) in indices.iter().zip(&chains) {
        let norm = chain.norm();
        for alpha in 0..k {
            let n = idx.get(alpha) as u32;
            let (phi_n, phi_n1) = (sf.eval(n), sf.eval(n + 1));
            let label = || format!("chain {:?}, α = {alpha}", idx.0);

            for beta in (0..k).filter(|&b| b != alpha) {
                let c = apply_commutator(&phis[alpha], &phis[beta], chain)?;
                independence.offer(scaled(c.norm(), norm), || {
                    format!("chain {:?}, (α, β) = ({alpha}, {beta})", idx.0)
                });
            }

            let comm = apply_commutator(&phis[alpha], &phis[alpha], chain)?;
            commutator.offer(eigen_residual(&comm, phi_n1 - phi_n, chain, norm)?, label);

            let d = apply_delta(&phis[alpha], &phis[alpha], chain)?;
            delta.offer(eigen_residual(&d, 1.0 - phi_n1 + phi_n, chain, norm)?, label);

            let lowered = apply_a(&phis[alpha], chain)?;
            let expected = match idx.shifted(alpha, -1) {
                Some(lower) => lookup(&lower)
                    .expect("lower chain has smaller degree")
                    .scaled(Complex64::new(phi_n, 0.0)),
                None => StateVector::zero(family.mode_config()),
            };
            lowering.offer(scaled(lowered.sub(&expected)?.norm(), norm), label);
        }
    }

    let mut norm_law = Worst::default();
    for (alpha, phi) in phis.iter().enumerate() {
        for n in 0..=n_max {
            let want = sf.factorial(n as u32);
            let got = chain_norm_sq(phi, n)?;
            norm_law.offer(scaled((got - want).abs(), want.abs()), || {
                format!("α = {alpha}, n = {n} (norm² {got:.6e}, ∏φ {want:.6e})")
            });
        }
    }

    let mut report = VerificationReport::new();
    report.push(independence.into_check(INDEPENDENCE, tolerance));
    report.push(commutator.into_check(COMMUTATOR, tolerance));
    report.push(delta.into_check(DELTA, tolerance));
    report.push(lowering.into_check(LOWERING, tolerance));
    report.push(norm_law.into_check(NORM_LAW, tolerance));

    // f = 2/m with integer m puts the cutoff at n = m + 1
    if let Some(f) = sf.quadratic_f().filter(|f| *f > 0.0) {
        let m = (2.0 / f).round();
        if (2.0 / f - m).abs() < 1e-12 && (m as usize) < n_max {
            let m = m as usize;
            let mut worst = Worst::default();
            for (alpha, phi) in phis.iter().enumerate() {
                let r = chain_norm_sq(phi, m + 1)?.sqrt();
                worst.offer(r, || format!("α = {alpha}, n = {}", m + 1));
            }
            report.push(worst.into_check(CUTOFF, tolerance));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ModeConfig;
    use crate::quasiboson::PhiMatrix;
    use crate::sampling;
    use crate::solver::{construct_family, FamilySpec};

    #[test]
    fn solver_family_realizes_quadratic_oscillator() {
        let fam = construct_family(&FamilySpec::new(4, 4, 2, 2, 7)).unwrap();
        let r = verify_realization(&fam, &StructureFunction::quadratic(1.0), 3, 1e-10).unwrap();
        assert!(r.overall_passed, "{r:#?}");
        assert!(r.check(CUTOFF).is_some());
    }

    #[test]
    fn rank_three_single_mode() {
        let fam = construct_family(&FamilySpec::new(3, 4, 1, 3, 2)).unwrap();
        let r = verify_realization(&fam, &StructureFunction::quadratic(2.0 / 3.0), 4, 1e-10).unwrap();
        assert!(r.overall_passed, "{r:#?}");
    }

    #[test]
    fn undeformed_function_fails_for_composites() {
        let k = ModeConfig::new(3, 3).unwrap();
        let mut rng = sampling::rng(1);
        let phi = PhiMatrix::new(k, sampling::normalized_gaussian_matrix(&mut rng, 3, 3)).unwrap();
        let fam = PhiFamily::new(vec![phi.clone()]).unwrap();
        let r = verify_realization(&fam, &StructureFunction::Undeformed, 2, 1e-10).unwrap();
        assert!(!r.overall_passed);
        let ii = r.check(COMMUTATOR).unwrap();
        assert!(!ii.passed);
        // at one quantum the deficit is ‖Δ A†|O⟩‖ / ‖A†|O⟩‖ ≥ f > 0
        assert!(ii.max_residual >= phi.implied_f() - 1e-12);
    }

    #[test]
    fn wrong_f_fails_commutator_check() {
        let fam = construct_family(&FamilySpec::new(4, 4, 2, 2, 7)).unwrap();
        let r = verify_realization(&fam, &StructureFunction::quadratic(1.1), 2, 1e-10).unwrap();
        let ii = r.check(COMMUTATOR).unwrap();
        assert!(!ii.passed);
        // residual scales with |f − f'| · n
        assert!((ii.max_residual - 0.2).abs() < 1e-9, "{}", ii.max_residual);
    }

    #[test]
    fn n_max_is_capped() {
        let fam = construct_family(&FamilySpec::new(2, 2, 1, 1, 0)).unwrap();
        assert!(verify_realization(&fam, &StructureFunction::quadratic(2.0), 7, 1e-10).is_err());
    }
}
