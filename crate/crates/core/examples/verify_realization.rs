//! Check that a solver family realizes the quadratic deformed oscillator on its chain states.

use qboson::conditions::verify_realization;
use qboson::{construct_family, FamilySpec, StructureFunction};

fn main() -> qboson::Result<()> {
    let family = construct_family(&FamilySpec::new(4, 4, 2, 2, 1))?;
    let sf = StructureFunction::quadratic(1.0);
    let report = verify_realization(&family, &sf, 3, 1e-10)?;
    for c in &report.checks {
        println!("[{}] {:<55} {:.3e}", if c.passed { "ok" } else { "FAIL" }, c.name, c.max_residual);
    }
    println!("overall: {}", report.overall_passed);

    // The wrong deformation parameter is caught by the commutator check.
    let wrong = verify_realization(&family, &StructureFunction::quadratic(1.1), 3, 1e-10)?;
    for c in wrong.failures() {
        println!("with f = 1.1: {} fails ({:.3e}, {})", c.name, c.max_residual, c.context);
    }
    Ok(())
}
