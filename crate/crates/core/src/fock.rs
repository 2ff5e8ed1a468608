//! Finite fermionic Fock space for two mutually anticommuting species.
//!
//! Modes are laid out on a single Jordan–Wigner line
//! `a_0 < a_1 < ... < a_{d_a-1} < b_0 < ... < b_{d_b-1}`. A ladder operator
//! acting at line position `p` picks up `(-1)^k`, where `k` counts the
//! occupied modes strictly before `p`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Amplitudes with modulus at or below this are dropped.
pub const PRUNE_EPSILON: f64 = 1e-14;

/// Largest total mode count accepted by [`ModeConfig`].
pub const MAX_TOTAL_MODES: usize = 16;

/// Largest total mode count for which full-space dense matrices are built.
pub const MAX_DENSE_MODES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Species {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeConfig {
    d_a: usize,
    d_b: usize,
}

impl ModeConfig {
    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a == 0 || d_b == 0 || d_a + d_b > MAX_TOTAL_MODES {
            return Err(Error::InvalidConfig { d_a, d_b });
        }
        Ok(Self { d_a, d_b })
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn total_modes(&self) -> usize {
        self.d_a + self.d_b
    }

    /// Dimension of the full Fock space, `2^(d_a + d_b)`.
    pub fn dimension(&self) -> usize {
        1 << self.total_modes()
    }

    pub fn width(&self, species: Species) -> usize {
        match species {
            Species::A => self.d_a,
            Species::B => self.d_b,
        }
    }

    fn check_mode(&self, species: Species, mode: usize) -> Result<()> {
        let width = self.width(species);
        if mode >= width {
            return Err(Error::ModeOutOfRange {
                species,
                mode,
                width,
            });
        }
        Ok(())
    }

    /// All basis states in dense index order.
    pub fn basis(&self) -> impl Iterator<Item = FockState> + '_ {
        (0..self.dimension()).map(move |i| FockState::from_index(*self, i))
    }
}

/// Occupation bitmasks; bit `μ` of `a` is the occupancy of `a_μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    pub a: u16,
    pub b: u16,
}

impl FockState {
    pub const VACUUM: FockState = FockState { a: 0, b: 0 };

    pub fn new(cfg: ModeConfig, a: u16, b: u16) -> Result<Self> {
        let state = Self { a, b };
        if !state.conforms(cfg) {
            return Err(Error::ConfigMismatch);
        }
        Ok(state)
    }

    pub fn conforms(&self, cfg: ModeConfig) -> bool {
        (self.a as u32) >> cfg.d_a == 0 && (self.b as u32) >> cfg.d_b == 0
    }

    /// Dense index: a-bits in the low `d_a` bits, b-bits above them.
    pub fn index(&self, cfg: ModeConfig) -> usize {
        self.a as usize | ((self.b as usize) << cfg.d_a)
    }

    pub fn from_index(cfg: ModeConfig, index: usize) -> Self {
        let a_mask = (1usize << cfg.d_a) - 1;
        Self {
            a: (index & a_mask) as u16,
            b: (index >> cfg.d_a) as u16,
        }
    }

    pub fn occupied(&self, species: Species, mode: usize) -> bool {
        let mask = match species {
            Species::A => self.a,
            Species::B => self.b,
        };
        mask >> mode & 1 == 1
    }

    /// Number of occupied modes strictly before `(species, mode)` on the line.
    fn occupied_before(&self, species: Species, mode: usize) -> u32 {
        let below = (1u32 << mode) - 1;
        match species {
            Species::A => (self.a as u32 & below).count_ones(),
            Species::B => self.a.count_ones() + (self.b as u32 & below).count_ones(),
        }
    }

    fn flip(&self, species: Species, mode: usize) -> Self {
        let mut out = *self;
        match species {
            Species::A => out.a ^= 1 << mode,
            Species::B => out.b ^= 1 << mode,
        }
        out
    }

    /// `c†` on a single basis state; `None` when the mode is already filled.
    /// The mode index is not range-checked here.
    pub fn create(&self, species: Species, mode: usize) -> Option<(FockState, f64)> {
        if self.occupied(species, mode) {
            return None;
        }
        Some((self.flip(species, mode), self.sign_before(species, mode)))
    }

    /// `c` on a single basis state; `None` when the mode is empty.
    pub fn annihilate(&self, species: Species, mode: usize) -> Option<(FockState, f64)> {
        if !self.occupied(species, mode) {
            return None;
        }
        Some((self.flip(species, mode), self.sign_before(species, mode)))
    }

    fn sign_before(&self, species: Species, mode: usize) -> f64 {
        if self.occupied_before(species, mode).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}

/// Sparse complex vector over the Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    cfg: ModeConfig,
    terms: BTreeMap<FockState, Complex64>,
}

impl StateVector {
    pub fn zero(cfg: ModeConfig) -> Self {
        Self {
            cfg,
            terms: BTreeMap::new(),
        }
    }

    pub fn vacuum(cfg: ModeConfig) -> Self {
        Self::basis(cfg, FockState::VACUUM)
    }

    pub fn basis(cfg: ModeConfig, state: FockState) -> Self {
        debug_assert!(state.conforms(cfg));
        let mut terms = BTreeMap::new();
        terms.insert(state, Complex64::new(1.0, 0.0));
        Self { cfg, terms }
    }

    /// Builds a vector from raw terms, summing duplicates and pruning.
    pub fn from_terms(
        cfg: ModeConfig,
        terms: impl IntoIterator<Item = (FockState, Complex64)>,
    ) -> Result<Self> {
        let mut out = Self::zero(cfg);
        for (state, amp) in terms {
            if !state.conforms(cfg) {
                return Err(Error::ConfigMismatch);
            }
            *out.terms.entry(state).or_default() += amp;
        }
        out.prune();
        Ok(out)
    }

    pub fn from_dense(cfg: ModeConfig, column: &[Complex64]) -> Self {
        let mut out = Self::zero(cfg);
        for (i, amp) in column.iter().enumerate() {
            out.terms.insert(FockState::from_index(cfg, i), *amp);
        }
        out.prune();
        out
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.cfg.dimension()];
        for (state, amp) in &self.terms {
            out[state.index(self.cfg)] = *amp;
        }
        out
    }

    pub fn mode_config(&self) -> ModeConfig {
        self.cfg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn amplitude(&self, state: &FockState) -> Complex64 {
        self.terms.get(state).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockState, &Complex64)> {
        self.terms.iter()
    }

    pub fn norm_sq(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, c| acc + c.norm_sqr())
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.cfg);
        for (s, amp) in &self.terms {
            out.terms.insert(*s, amp * c);
        }
        out.prune();
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.cfg != other.cfg {
            return Err(Error::ConfigMismatch);
        }
        Ok(())
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same(other)?;
        let (small, large, conj_small) = if self.len() <= other.len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, x) in &small.terms {
            if let Some(y) = large.terms.get(s) {
                acc += if conj_small { x.conj() * y } else { y.conj() * x };
            }
        }
        Ok(acc)
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: Complex64, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        if c != Complex64::new(0.0, 0.0) {
            for (s, amp) in &other.terms {
                *out.terms.entry(*s).or_default() += c * amp;
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(Complex64::new(-1.0, 0.0), other)
    }

    pub fn create(&self, species: Species, mode: usize) -> Result<Self> {
        self.cfg.check_mode(species, mode)?;
        Ok(self.map_terms(|s| s.create(species, mode)))
    }

    pub fn annihilate(&self, species: Species, mode: usize) -> Result<Self> {
        self.cfg.check_mode(species, mode)?;
        Ok(self.map_terms(|s| s.annihilate(species, mode)))
    }

    fn map_terms(&self, op: impl Fn(&FockState) -> Option<(FockState, f64)>) -> Self {
        let mut out = Self::zero(self.cfg);
        for (s, amp) in &self.terms {
            if let Some((t, sign)) = op(s) {
                *out.terms.entry(t).or_default() += amp * sign;
            }
        }
        out.prune();
        out
    }

    /// Accumulator for operator application: adds `c` to the amplitude of `state`.
    pub(crate) fn accumulate(&mut self, state: FockState, c: Complex64) {
        *self.terms.entry(state).or_default() += c;
    }

    pub(crate) fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() > PRUNE_EPSILON);
    }
}

/// Convenience wrappers matching the operator names used in tests and examples.
pub fn vacuum(cfg: ModeConfig) -> StateVector {
    StateVector::vacuum(cfg)
}

pub fn create(species: Species, mode: usize, v: &StateVector) -> Result<StateVector> {
    v.create(species, mode)
}

pub fn annihilate(species: Species, mode: usize, v: &StateVector) -> Result<StateVector> {
    v.annihilate(species, mode)
}

pub fn inner(v: &StateVector, w: &StateVector) -> Result<Complex64> {
    v.inner(w)
}

pub fn add_scaled(v: &StateVector, c: Complex64, w: &StateVector) -> Result<StateVector> {
    v.add_scaled(c, w)
}

/// A single fermion ladder operator as an integer matrix with at most one
/// nonzero (`±1`) per column. Products of such operators keep that shape,
/// so anticommutators can be checked exactly without floating point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderMatrix {
    dim: usize,
    columns: Vec<Option<(usize, i32)>>,
}

impl LadderMatrix {
    pub fn creation(cfg: ModeConfig, species: Species, mode: usize) -> Result<Self> {
        cfg.check_mode(species, mode)?;
        Ok(Self::build(cfg, |s| s.create(species, mode)))
    }

    pub fn annihilation(cfg: ModeConfig, species: Species, mode: usize) -> Result<Self> {
        cfg.check_mode(species, mode)?;
        Ok(Self::build(cfg, |s| s.annihilate(species, mode)))
    }

    fn build(cfg: ModeConfig, op: impl Fn(&FockState) -> Option<(FockState, f64)>) -> Self {
        let columns = cfg
            .basis()
            .map(|s| op(&s).map(|(t, sign)| (t.index(cfg), sign as i32)))
            .collect();
        Self {
            dim: cfg.dimension(),
            columns,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                col.and_then(|(mid, s1)| self.columns[mid].map(|(row, s2)| (row, s1 * s2)))
            })
            .collect();
        Self {
            dim: self.dim,
            columns,
        }
    }

    pub fn to_dense(&self) -> DMatrix<i32> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (col, entry) in self.columns.iter().enumerate() {
            if let Some((row, sign)) = entry {
                m[(*row, col)] = *sign;
            }
        }
        m
    }

    /// `{self, other}` as a dense integer matrix.
    pub fn anticommutator(&self, other: &Self) -> DMatrix<i32> {
        self.compose(other).to_dense() + other.compose(self).to_dense()
    }
}

/// Dense matrix of a linear map on the full Fock space, built column by column.
pub fn dense_operator(
    cfg: ModeConfig,
    op: impl Fn(&StateVector) -> Result<StateVector>,
) -> Result<DMatrix<Complex64>> {
    if cfg.total_modes() > MAX_DENSE_MODES {
        return Err(Error::Resource(format!(
            "dense operators need d_a + d_b <= {MAX_DENSE_MODES}, got {}",
            cfg.total_modes()
        )));
    }
    let dim = cfg.dimension();
    let mut m = DMatrix::zeros(dim, dim);
    for (col, s) in cfg.basis().enumerate() {
        let image = op(&StateVector::basis(cfg, s))?;
        for (t, amp) in image.iter() {
            m[(t.index(cfg), col)] = *amp;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn cfg(a: usize, b: usize) -> ModeConfig {
        ModeConfig::new(a, b).unwrap()
    }

    #[test]
    fn config_bounds() {
        assert!(ModeConfig::new(0, 2).is_err());
        assert!(ModeConfig::new(2, 0).is_err());
        assert!(ModeConfig::new(8, 9).is_err());
        assert_eq!(cfg(8, 8).dimension(), 65536);
    }

    #[test]
    fn vacuum_is_single_unit_term() {
        let v = vacuum(cfg(2, 2));
        assert_eq!(v.len(), 1);
        assert_eq!(v.amplitude(&FockState::VACUUM), c(1.0));
        assert_eq!(inner(&v, &v).unwrap(), c(1.0));
        assert!(annihilate(Species::A, 0, &v).unwrap().is_zero());
        assert!(annihilate(Species::B, 1, &v).unwrap().is_zero());
    }

    #[test]
    fn single_excitation_and_nilpotency() {
        let k = cfg(2, 2);
        let v = create(Species::A, 0, &vacuum(k)).unwrap();
        assert_eq!(v.amplitude(&FockState { a: 0b01, b: 0 }), c(1.0));
        assert_eq!(v.len(), 1);
        assert!(create(Species::A, 0, &v).unwrap().is_zero());
        let back = annihilate(Species::A, 0, &v).unwrap();
        assert_eq!(back, vacuum(k));
    }

    #[test]
    fn out_of_range_mode_is_rejected() {
        let v = vacuum(cfg(2, 3));
        assert!(matches!(
            create(Species::A, 2, &v),
            Err(Error::ModeOutOfRange { .. })
        ));
        assert!(create(Species::B, 2, &v).is_ok());
        assert!(annihilate(Species::B, 3, &v).is_err());
    }

    // Oracle: hand-built 4x4 matrices for two modes with the same line order.
    // Basis |n0 n1>, index = n0 + 2 n1; c0† has no string, c1† gets (-1)^{n0}.
    #[test]
    fn creators_anticommute_against_explicit_matrices() {
        let mut c0 = [[0i32; 4]; 4];
        let mut c1 = [[0i32; 4]; 4];
        for idx in 0..4usize {
            let (n0, n1) = (idx & 1, idx >> 1);
            if n0 == 0 {
                c0[idx | 1][idx] = 1;
            }
            if n1 == 0 {
                c1[idx | 2][idx] = if n0 == 1 { -1 } else { 1 };
            }
        }
        let mul = |x: &[[i32; 4]; 4], y: &[[i32; 4]; 4]| {
            let mut z = [[0i32; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    z[i][j] = (0..4).map(|k| x[i][k] * y[k][j]).sum();
                }
            }
            z
        };
        let (p, q) = (mul(&c0, &c1), mul(&c1, &c0));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(p[i][j] + q[i][j], 0);
            }
        }
        // The library reproduces the oracle on a 2+1 space restricted to a-modes.
        let k = cfg(2, 1);
        let lib0 = LadderMatrix::creation(k, Species::A, 0).unwrap().to_dense();
        let lib1 = LadderMatrix::creation(k, Species::A, 1).unwrap().to_dense();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(lib0[(i, j)], c0[i][j]);
                assert_eq!(lib1[(i, j)], c1[i][j]);
            }
        }
        let v01 = create(Species::A, 0, &create(Species::A, 1, &vacuum(k)).unwrap()).unwrap();
        let v10 = create(Species::A, 1, &create(Species::A, 0, &vacuum(k)).unwrap()).unwrap();
        assert!(v01.add_scaled(c(1.0), &v10).unwrap().is_zero());
        assert!(!v01.is_zero());
    }

    #[test]
    fn number_anticommutator_on_every_basis_state() {
        let k = cfg(2, 2);
        for s in k.basis() {
            let v = StateVector::basis(k, s);
            let ca = create(Species::A, 0, &annihilate(Species::A, 0, &v).unwrap()).unwrap();
            let ac = annihilate(Species::A, 0, &create(Species::A, 0, &v).unwrap()).unwrap();
            assert_eq!(ca.add_scaled(c(1.0), &ac).unwrap(), v, "state {s:?}");
        }
    }

    #[test]
    fn inner_and_add_scaled_basics() {
        let k = cfg(1, 2);
        let s = StateVector::basis(k, FockState { a: 1, b: 0 });
        let t = StateVector::basis(k, FockState { a: 0, b: 2 });
        assert_eq!(inner(&s, &s).unwrap(), c(1.0));
        assert_eq!(inner(&s, &t).unwrap(), c(0.0));
        assert_eq!(add_scaled(&s, c(0.0), &t).unwrap(), s);
        assert_eq!(add_scaled(&StateVector::zero(k), c(1.0), &t).unwrap(), t);
        assert!(add_scaled(&s, c(-1.0), &s).unwrap().is_zero());
        let other = vacuum(cfg(2, 1));
        assert_eq!(inner(&s, &other), Err(Error::ConfigMismatch));
        assert_eq!(add_scaled(&s, c(1.0), &other), Err(Error::ConfigMismatch));
    }

    #[test]
    fn a_and_b_anticommute() {
        let k = cfg(1, 1);
        let ab = create(Species::A, 0, &create(Species::B, 0, &vacuum(k)).unwrap()).unwrap();
        let ba = create(Species::B, 0, &create(Species::A, 0, &vacuum(k)).unwrap()).unwrap();
        assert_eq!(ab.amplitude(&FockState { a: 1, b: 1 }), c(1.0));
        assert_eq!(ba.amplitude(&FockState { a: 1, b: 1 }), c(-1.0));
    }

    #[test]
    fn dense_round_trip() {
        let k = cfg(2, 1);
        let v = StateVector::from_terms(
            k,
            [
                (FockState { a: 3, b: 1 }, Complex64::new(0.5, -1.0)),
                (FockState { a: 1, b: 0 }, c(2.0)),
            ],
        )
        .unwrap();
        assert_eq!(StateVector::from_dense(k, &v.to_dense()), v);
    }

    #[test]
    fn dense_operator_refuses_large_spaces() {
        let k = cfg(5, 4);
        assert!(matches!(
            dense_operator(k, |v| Ok(v.clone())),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn zero_norm_is_positive_zero() {
        let k = ModeConfig::new(2, 1).unwrap();
        assert!(StateVector::zero(k).norm().is_sign_positive());
    }
}
