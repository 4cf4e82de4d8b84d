//! Builds a few hypergroups from the standard constructions, validates them
//! and prints Haar measures and a definition file.

use hyperfield::constructions::{
    cyclic_group, direct_product, enumerate_subhypergroups, join, negation, orbit_hypergroup, quotient, zq_family,
    Subhypergroup,
};
use hyperfield::hypergroup::validate_hypergroup;
use hyperfield::io::serialize_definition;
use hyperfield::{Rational, Result};

fn main() -> Result<()> {
    let z6 = cyclic_group(6)?;
    let zq = zq_family(2, Rational::new(1, 3))?;

    // Z6 modulo its negation: the even-orbit hypergroup on {0}, {±1}, {±2}, {3}
    let orb = orbit_hypergroup(&z6, &[negation(6)])?;
    println!("Z6/neg has {} elements: {:?}", orb.order(), orb.names());
    println!("haar(Z6/neg) = {:?}", orb.haar()?.weights);

    let prod = direct_product(&zq, &orb);
    let jn = join(&orb, &zq)?;
    for (name, h) in [("Zq x Z6/neg", &prod), ("Z6/neg v Zq", &jn)] {
        let report = validate_hypergroup(h.raw(), 0.0)?;
        println!("{name}: order {}, axioms ok = {}", h.order(), report.ok());
    }

    let subs = enumerate_subhypergroups(&z6, 6)?;
    println!("subgroups of Z6: {:?}", subs.iter().map(Subhypergroup::members).collect::<Vec<_>>());

    let evens = Subhypergroup::new(&z6, &[0, 2, 4])?;
    let q = quotient(&z6, &evens)?;
    println!("Z6 / {{0,2,4}} classes: {:?}", q.classes);

    print!("{}", serialize_definition(&zq, None));
    Ok(())
}
