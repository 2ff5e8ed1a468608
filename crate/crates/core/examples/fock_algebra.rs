//! Fermion ladder operators on a small two-species Fock space.

use num_complex::Complex64;
use qboson::fock::LadderMatrix;
use qboson::{FockState, ModeConfig, Species, StateVector};

fn main() -> qboson::Result<()> {
    let cfg = ModeConfig::new(2, 2)?;
    println!("modes: {} a + {} b, dimension {}", cfg.d_a(), cfg.d_b(), cfg.dimension());

    let v = StateVector::vacuum(cfg).create(Species::B, 1)?.create(Species::A, 0)?;
    for (state, amp) in v.iter() {
        println!("a†_0 b†_1 |0⟩ = {amp} |a={:02b} b={:02b}⟩", state.a, state.b);
    }
    // Creating in the other order flips the sign.
    let w = StateVector::vacuum(cfg).create(Species::A, 0)?.create(Species::B, 1)?;
    println!("⟨a†_0 b†_1 0 | b†_1 a†_0 0⟩ = {}", v.inner(&w)?);

    let blocked = v.create(Species::A, 0)?;
    println!("a†_0 on an occupied mode gives zero: {}", blocked.is_zero());

    let sup = StateVector::from_terms(
        cfg,
        [
            (FockState::new(cfg, 0b01, 0b00)?, Complex64::new(1.0, 0.0)),
            (FockState::new(cfg, 0b10, 0b00)?, Complex64::new(0.0, 1.0)),
        ],
    )?;
    println!("‖superposition‖² = {}", sup.norm_sq());

    let a0 = LadderMatrix::annihilation(cfg, Species::A, 0)?;
    let b1_dag = LadderMatrix::creation(cfg, Species::B, 1)?;
    let a0_dag = LadderMatrix::creation(cfg, Species::A, 0)?;
    let zero = a0.anticommutator(&b1_dag).iter().all(|&x| x == 0);
    let unit = a0.anticommutator(&a0_dag) == nalgebra::DMatrix::identity(cfg.dimension(), cfg.dimension());
    println!("{{a_0, b†_1}} = 0: {zero}; {{a_0, a†_0}} = 1: {unit}");
    Ok(())
}
