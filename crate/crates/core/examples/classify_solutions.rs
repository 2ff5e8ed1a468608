//! Recover rank, deformation parameter and solution class from a Φ family.

use qboson::sampling;
use qboson::solver::{classify, RANK_TOLERANCE};
use qboson::{construct_family, FamilySpec, ModeConfig, PhiFamily, PhiMatrix};

fn main() -> qboson::Result<()> {
    let mut families = vec![
        ("scaled unitary", construct_family(&FamilySpec::new(3, 3, 1, 3, 2))?),
        ("two rank-2 blocks", construct_family(&FamilySpec::new(4, 5, 2, 2, 2))?),
    ];
    let cfg = ModeConfig::new(3, 3)?;
    let mut rng = sampling::rng(5);
    let generic = PhiMatrix::new(cfg, sampling::normalized_gaussian_matrix(&mut rng, 3, 3))?;
    families.push(("gaussian", PhiFamily::new(vec![generic])?));

    for (name, family) in &families {
        let c = classify(family, RANK_TOLERANCE);
        println!("{name:<18} ranks {:?}, m {:?}, f {:?}, {:?}", c.ranks, c.m, c.f, c.label);
    }
    Ok(())
}
