//! Structure functions, energies and their recurrences.

use num_bigint::BigInt;
use num_rational::BigRational;
use qboson::deformation::{
    check_energy_recurrence, phi_ac, phi_from_recurrence, phi_quadratic, phi_quadratic_exact,
    recurrence_rhs, three_term_next,
};
use qboson::StructureFunction;

fn main() -> qboson::Result<()> {
    println!("{:>3} {:>10} {:>10} {:>10} {:>10}", "n", "f=2", "f=1", "f=2/3", "AC q=0.5");
    for n in 0..=6 {
        println!(
            "{n:>3} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            phi_quadratic(n, 2.0),
            phi_quadratic(n, 1.0),
            phi_quadratic(n, 2.0 / 3.0),
            phi_ac(n, 0.5)
        );
    }

    let f = BigRational::new(BigInt::from(2), BigInt::from(5));
    let exact: Vec<BigRational> = (0..=21).map(|n| phi_quadratic_exact(n, &f)).collect();
    let generic_ok = (2..=20).all(|n| recurrence_rhs(&exact[..=n]) == exact[n + 1]);
    let three_ok = (2..=20usize).all(|n| {
        three_term_next(exact[n - 1].clone(), exact[n].clone(), n as i64).unwrap() == exact[n + 1]
    });
    println!("f = 2/5: generic recurrence exact {generic_ok}, three-term exact {three_ok}");
    println!("φ(20) = {} (exact {})", phi_from_recurrence(1.0, 1.6, 20), exact[20]);

    for sf in [StructureFunction::quadratic(1.0), StructureFunction::Undeformed] {
        let r = check_energy_recurrence(&sf, 20, 1e-10);
        println!("{sf:?}: E(0..4) = {:?}, recurrence residual {:.3e}",
            (0..5).map(|n| sf.energy(n)).collect::<Vec<_>>(),
            r.checks[0].max_residual);
    }
    Ok(())
}
