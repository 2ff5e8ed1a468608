//! Dense operator identities on the full Fock space of a small system.
//!
//! With `ε = 1 − Δ = [A, A†]`:
//!
//! * `[(A†A)ⁿ, A†] = A† ((A†A + ε)ⁿ − (A†A)ⁿ)` holds for any Φ.
//! * `[Δ, A†] = f A†` and `[εⁿ, A†] = A† ((ε − f)ⁿ − εⁿ)` need
//!   `Φ Φ† Φ = (f/2) Φ`; they are checked on the chain span.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{dense_operator, StateVector, MAX_DENSE_MODES};
use crate::linalg::{commutator, frobenius, identity, power, CMatrix};
use crate::quasiboson::{apply_a_dagger, apply_a_dagger_pow, apply_delta, PhiMatrix};
use crate::report::VerificationReport;

pub const MAX_IDENTITY_POWER: usize = 4;

/// Orthonormal basis (as columns) of `span{(A†)^j |O⟩}`.
pub fn chain_span_basis(phi: &PhiMatrix) -> Result<CMatrix> {
    let cfg = phi.mode_config();
    let max_pairs = cfg.d_a().min(cfg.d_b());
    let mut basis: Vec<nalgebra::DVector<Complex64>> = Vec::new();
    let mut v = StateVector::vacuum(cfg);
    for _ in 0..=max_pairs {
        let mut col = nalgebra::DVector::from_vec(v.to_dense());
        for _pass in 0..2 {
            for b in &basis {
                let proj = b.dotc(&col);
                col.axpy(-proj, b, Complex64::new(1.0, 0.0));
            }
        }
        let n = col.norm();
        if n > 1e-10 {
            basis.push(col.unscale(n));
        }
        v = apply_a_dagger_pow(phi, 1, &v)?;
        if v.is_zero() {
            break;
        }
    }
    Ok(CMatrix::from_columns(&basis))
}

pub fn check_operator_identities(
    phi: &PhiMatrix,
    n_max: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    let cfg = phi.mode_config();
    if cfg.total_modes() > MAX_DENSE_MODES {
        return Err(Error::Resource(format!(
            "operator identities need d_a + d_b <= {MAX_DENSE_MODES}, got {}",
            cfg.total_modes()
        )));
    }
    if n_max > MAX_IDENTITY_POWER {
        return Err(Error::Domain(format!("n_max must be <= {MAX_IDENTITY_POWER}")));
    }
    let f = phi.implied_f();
    let dim = cfg.dimension();
    let a_dag = dense_operator(cfg, |v| apply_a_dagger(phi, v))?;
    let a = a_dag.adjoint();
    let delta = dense_operator(cfg, |v| apply_delta(phi, phi, v))?;
    let one = identity(dim);
    let eps = &one - &delta;
    let number = &a_dag * &a;
    let span = chain_span_basis(phi)?;

    let mut report = VerificationReport::new();
    report.add(
        "ε = [A, A†]",
        frobenius(&(commutator(&a, &a_dag) - &eps)),
        tolerance,
        "full space",
    );
    let vac = nalgebra::DVector::from_vec(StateVector::vacuum(cfg).to_dense());
    report.add("ε|O⟩ = |O⟩", (&eps * &vac - &vac).norm(), tolerance, "full space");

    let delta_comm = commutator(&delta, &a_dag) - &a_dag * Complex64::new(f, 0.0);
    report.add(
        "[Δ, A†] = f A†",
        frobenius(&(&delta_comm * &span)),
        tolerance,
        format!(
            "on chain span (dim {}), f = {f}; full-space residual {:.3e}",
            span.ncols(),
            frobenius(&delta_comm)
        ),
    );

    let eps_shift = &eps - &one * Complex64::new(f, 0.0);
    let plus_eps = &number + &eps;
    for n in 1..=n_max {
        let lhs = commutator(&power(&number, n), &a_dag);
        let rhs = &a_dag * (power(&plus_eps, n) - power(&number, n));
        report.add(
            format!("[(A†A)^{n}, A†] = A†((A†A+ε)^{n} − (A†A)^{n})"),
            frobenius(&(lhs - rhs)),
            tolerance,
            "full space",
        );

        let eps_n = power(&eps, n);
        let diff = commutator(&eps_n, &a_dag) - &a_dag * (power(&eps_shift, n) - &eps_n);
        report.add(
            format!("[ε^{n}, A†] = A†((ε−f)^{n} − ε^{n})"),
            frobenius(&(&diff * &span)),
            tolerance,
            format!("on chain span; full-space residual {:.3e}", frobenius(&diff)),
        );
    }
    Ok(report)
}
