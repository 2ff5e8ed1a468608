//! Arik–Coon modes cannot be built from independent fermion pairs.

use qboson::conditions::{ac_nogo_probe, probe_mode};
use qboson::solver::random_normalized_phis;
use qboson::{construct_family, FamilySpec};

fn main() -> qboson::Result<()> {
    for q in [0.5, 0.9, 1.5] {
        let mut counts = std::collections::BTreeMap::new();
        for phi in random_normalized_phis(4, 100, 0)? {
            let p = probe_mode(&phi, q, 1e-10)?;
            *counts.entry(p.branch.label()).or_insert(0) += 1;
        }
        println!("q = {q}: {counts:?}");
    }

    let rank_one = construct_family(&FamilySpec::new(3, 3, 2, 1, 4))?;
    let report = ac_nogo_probe(&rank_one, 0.5, 1e-10)?;
    for c in &report.checks {
        println!("{}: {}", c.name, c.context);
    }

    if let Err(e) = probe_mode(&rank_one.members()[0], 1.0, 1e-10) {
        println!("q = 1: {e}");
    }
    Ok(())
}
