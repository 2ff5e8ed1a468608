//! Build a degenerate family of rank-m Φ matrices and check the matrix conditions.

use qboson::cli::PhiFile;
use qboson::conditions::check_matrix_conditions;
use qboson::linalg::singular_values;
use qboson::{construct_family, FamilySpec};

fn main() -> qboson::Result<()> {
    let spec = FamilySpec::new(5, 4, 2, 2, 17);
    let f = spec.f()?;
    let family = construct_family(&spec)?;
    println!("spec {spec:?}: {} modes, f = {f}", family.len());
    for (alpha, phi) in family.members().iter().enumerate() {
        let sv: Vec<String> = singular_values(phi.entries())
            .iter()
            .map(|s| format!("{s:.6}"))
            .collect();
        println!("Φ_{alpha}: singular values [{}], implied f = {:.12}", sv.join(", "), phi.implied_f());
    }

    let report = check_matrix_conditions(&family, f, 1e-12);
    for c in &report.checks {
        println!("{:<60} {:.3e}  {}", c.name, c.max_residual, if c.passed { "ok" } else { "FAIL" });
    }

    let infeasible = FamilySpec::new(3, 3, 2, 2, 0);
    if let Err(e) = construct_family(&infeasible) {
        println!("{infeasible:?}: {e}");
    }

    print!("{}", PhiFile::from_family(&construct_family(&FamilySpec::new(2, 2, 1, 1, 3))?).to_json());
    Ok(())
}
