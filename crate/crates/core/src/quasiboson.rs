//! Composite quasi-boson operators built from fermion pairs.
//!
//! A mode with coefficient matrix `Φ` (rows μ over a-modes, columns ν over
//! b-modes) has `A† = Σ Φ^{μν} a†_μ b†_ν` and `A = Σ conj(Φ^{μν}) b_ν a_μ`.
//! The deviation from a canonical boson is
//! `Δ_{αβ} = Σ (Φ_β Φ_α†)_{μ'μ} a†_μ' a_μ + Σ (Φ_α† Φ_β)_{νν'} b†_ν' b_ν`,
//! with `[A_α, A†_β] = δ_{αβ} - Δ_{αβ}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{ModeConfig, Species, StateVector};
use crate::linalg::{frobenius, trace, CMatrix};

/// Default cap on the total degree of chain states.
pub const DEFAULT_MAX_CHAIN_LENGTH: usize = 6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct PhiMatrix {
    cfg: ModeConfig,
    entries: CMatrix,
}

impl PhiMatrix {
    pub fn new(cfg: ModeConfig, entries: CMatrix) -> Result<Self> {
        if entries.nrows() != cfg.d_a() || entries.ncols() != cfg.d_b() {
            return Err(Error::ShapeMismatch {
                expected_rows: cfg.d_a(),
                expected_cols: cfg.d_b(),
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        Ok(Self { cfg, entries })
    }

    /// Single nonzero entry `Φ^{μν} = 1`.
    pub fn unit(cfg: ModeConfig, mu: usize, nu: usize) -> Result<Self> {
        let mut m = CMatrix::zeros(cfg.d_a(), cfg.d_b());
        if mu >= cfg.d_a() || nu >= cfg.d_b() {
            return Err(Error::Domain(format!("entry ({mu},{nu}) outside Φ")));
        }
        m[(mu, nu)] = Complex64::new(1.0, 0.0);
        Self::new(cfg, m)
    }

    pub fn mode_config(&self) -> ModeConfig {
        self.cfg
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// `Tr(Φ Φ†)`.
    pub fn trace_norm_sq(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, c| acc + c.norm_sqr())
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.trace_norm_sq() - 1.0).abs() <= tol
    }

    /// Rescaled so that `Tr(Φ Φ†) = 1`.
    pub fn normalized(&self) -> Result<Self> {
        let n = frobenius(&self.entries);
        if n == 0.0 {
            return Err(Error::Domain("cannot normalize a zero Φ".into()));
        }
        Self::new(self.cfg, self.entries.unscale(n))
    }

    /// `f = 2 Tr((Φ†Φ)²)`, the deformation parameter a mode would realize.
    pub fn implied_f(&self) -> f64 {
        let g = self.entries.adjoint() * &self.entries;
        2.0 * trace(&(&g * &g)).re
    }

    fn check_cfg(&self, v: &StateVector) -> Result<()> {
        if v.mode_config() != self.cfg {
            return Err(Error::ConfigMismatch);
        }
        Ok(())
    }

    fn nonzero_entries(&self) -> Vec<(usize, usize, Complex64)> {
        let mut out = Vec::new();
        for mu in 0..self.cfg.d_a() {
            for nu in 0..self.cfg.d_b() {
                let c = self.entries[(mu, nu)];
                if c != ZERO {
                    out.push((mu, nu, c));
                }
            }
        }
        out
    }
}

/// Ordered list of quasi-boson modes on a shared Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiFamily {
    cfg: ModeConfig,
    members: Vec<PhiMatrix>,
    max_chain_length: usize,
}

impl PhiFamily {
    pub fn new(members: Vec<PhiMatrix>) -> Result<Self> {
        let cfg = members
            .first()
            .map(|m| m.cfg)
            .ok_or_else(|| Error::Domain("a family needs at least one mode".into()))?;
        if members.iter().any(|m| m.cfg != cfg) {
            return Err(Error::ConfigMismatch);
        }
        Ok(Self {
            cfg,
            members,
            max_chain_length: DEFAULT_MAX_CHAIN_LENGTH,
        })
    }

    pub fn with_max_chain_length(mut self, max: usize) -> Self {
        self.max_chain_length = max;
        self
    }

    pub fn mode_config(&self) -> ModeConfig {
        self.cfg
    }

    pub fn members(&self) -> &[PhiMatrix] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_chain_length(&self) -> usize {
        self.max_chain_length
    }

    pub fn chain_state(&self, idx: &ChainIndex) -> Result<StateVector> {
        chain_state(self, idx)
    }
}

/// Multiplicities `(n_0, …, n_{k-1})` of a chain state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainIndex(pub Vec<usize>);

impl ChainIndex {
    pub fn zeros(k: usize) -> Self {
        Self(vec![0; k])
    }

    pub fn single(k: usize, alpha: usize, n: usize) -> Self {
        let mut v = vec![0; k];
        v[alpha] = n;
        Self(v)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn get(&self, alpha: usize) -> usize {
        self.0[alpha]
    }

    /// Same multi-index with `n_α` changed by `delta`; `None` below zero.
    pub fn shifted(&self, alpha: usize, delta: isize) -> Option<Self> {
        let n = self.0[alpha] as isize + delta;
        if n < 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[alpha] = n as usize;
        Some(Self(v))
    }

    /// All multi-indices over `k` modes with total degree at most `max_degree`,
    /// ordered by degree, then lexicographically.
    pub fn all_up_to(k: usize, max_degree: usize) -> Vec<Self> {
        fn rec(k: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<ChainIndex>) {
            if prefix.len() == k {
                out.push(ChainIndex(prefix.clone()));
                return;
            }
            for n in 0..=left {
                prefix.push(n);
                rec(k, left - n, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, max_degree, &mut Vec::with_capacity(k), &mut out);
        out.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.0.cmp(&y.0)));
        out
    }
}

/// `A†_Φ v`.
pub fn apply_a_dagger(phi: &PhiMatrix, v: &StateVector) -> Result<StateVector> {
    phi.check_cfg(v)?;
    let entries = phi.nonzero_entries();
    let mut out = StateVector::zero(phi.cfg);
    for (s, amp) in v.iter() {
        for &(mu, nu, c) in &entries {
            let Some((t1, s1)) = s.create(Species::B, nu) else {
                continue;
            };
            let Some((t2, s2)) = t1.create(Species::A, mu) else {
                continue;
            };
            out.accumulate(t2, amp * c * (s1 * s2));
        }
    }
    out.prune();
    Ok(out)
}

/// `A_Φ v`.
pub fn apply_a(phi: &PhiMatrix, v: &StateVector) -> Result<StateVector> {
    phi.check_cfg(v)?;
    let entries = phi.nonzero_entries();
    let mut out = StateVector::zero(phi.cfg);
    for (s, amp) in v.iter() {
        for &(mu, nu, c) in &entries {
            let Some((t1, s1)) = s.annihilate(Species::A, mu) else {
                continue;
            };
            let Some((t2, s2)) = t1.annihilate(Species::B, nu) else {
                continue;
            };
            out.accumulate(t2, amp * c.conj() * (s1 * s2));
        }
    }
    out.prune();
    Ok(out)
}

/// `Σ_{pq} m[p,q] c†_p c_q` for one species.
fn apply_one_body(
    species: Species,
    m: &CMatrix,
    v: &StateVector,
    out: &mut StateVector,
) {
    let width = m.nrows();
    for (s, amp) in v.iter() {
        for q in 0..width {
            let Some((t1, s1)) = s.annihilate(species, q) else {
                continue;
            };
            for p in 0..width {
                let c = m[(p, q)];
                if c == ZERO {
                    continue;
                }
                if let Some((t2, s2)) = t1.create(species, p) {
                    out.accumulate(t2, amp * c * (s1 * s2));
                }
            }
        }
    }
}

/// `Δ_{αβ} v`.
pub fn apply_delta(
    phi_alpha: &PhiMatrix,
    phi_beta: &PhiMatrix,
    v: &StateVector,
) -> Result<StateVector> {
    if phi_alpha.cfg != phi_beta.cfg {
        return Err(Error::ConfigMismatch);
    }
    phi_alpha.check_cfg(v)?;
    let (fa, fb) = (&phi_alpha.entries, &phi_beta.entries);
    // coefficient of a†_μ' a_μ at [μ', μ]; of b†_ν' b_ν at [ν', ν]
    let a_coeff = fb * fa.adjoint();
    let b_coeff = (fa.adjoint() * fb).transpose();
    let mut out = StateVector::zero(phi_alpha.cfg);
    apply_one_body(Species::A, &a_coeff, v, &mut out);
    apply_one_body(Species::B, &b_coeff, v, &mut out);
    out.prune();
    Ok(out)
}

/// `[A_α, A†_β] v`, by direct composition.
pub fn apply_commutator(
    phi_alpha: &PhiMatrix,
    phi_beta: &PhiMatrix,
    v: &StateVector,
) -> Result<StateVector> {
    let forward = apply_a(phi_alpha, &apply_a_dagger(phi_beta, v)?)?;
    let backward = apply_a_dagger(phi_beta, &apply_a(phi_alpha, v)?)?;
    forward.sub(&backward)
}

/// `(A†)^n v`.
pub fn apply_a_dagger_pow(phi: &PhiMatrix, n: usize, v: &StateVector) -> Result<StateVector> {
    let mut out = v.clone();
    for _ in 0..n {
        if out.is_zero() {
            break;
        }
        out = apply_a_dagger(phi, &out)?;
    }
    Ok(out)
}

/// `∏_α (A†_α)^{n_α} |O⟩`, applying modes in ascending α; unnormalized.
pub fn chain_state(family: &PhiFamily, idx: &ChainIndex) -> Result<StateVector> {
    chain_state_in_order(family, idx, &(0..family.len()).collect::<Vec<_>>())
}

/// Same chain, with the modes applied in the given order.
pub fn chain_state_in_order(
    family: &PhiFamily,
    idx: &ChainIndex,
    order: &[usize],
) -> Result<StateVector> {
    if idx.0.len() != family.len() {
        return Err(Error::Domain(format!(
            "chain index has {} entries for a family of {} modes",
            idx.0.len(),
            family.len()
        )));
    }
    if idx.degree() > family.max_chain_length {
        return Err(Error::ChainTooLong {
            degree: idx.degree(),
            max: family.max_chain_length,
        });
    }
    let mut v = StateVector::vacuum(family.cfg);
    for &alpha in order {
        v = apply_a_dagger_pow(&family.members[alpha], idx.get(alpha), &v)?;
    }
    Ok(v)
}

/// `‖(A†)^n |O⟩‖²`.
pub fn chain_norm_sq(phi: &PhiMatrix, n: usize) -> Result<f64> {
    if n > DEFAULT_MAX_CHAIN_LENGTH {
        return Err(Error::ChainTooLong {
            degree: n,
            max: DEFAULT_MAX_CHAIN_LENGTH,
        });
    }
    Ok(apply_a_dagger_pow(phi, n, &StateVector::vacuum(phi.cfg))?.norm_sq())
}
