//! Dense checks of the commutator identities for a single quasi-boson mode.

use qboson::conditions::check_operator_identities;
use qboson::{construct_family, FamilySpec};

fn main() -> qboson::Result<()> {
    for m in 1..=3 {
        let family = construct_family(&FamilySpec::new(3, 3, 1, m, 9))?;
        let report = check_operator_identities(&family.members()[0], 3, 1e-11)?;
        println!("m = {m}, f = {:.6}", family.members()[0].implied_f());
        for c in &report.checks {
            println!("  {:<52} {:.3e}", c.name, c.max_residual);
        }
    }
    Ok(())
}
