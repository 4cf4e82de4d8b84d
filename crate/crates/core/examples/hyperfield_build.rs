//! A hyperfield phi: L -> Sub(H), its hypergroup K, the exact sequence
//! H -> K -> L and the duality check against the dual hyperfield.

use hyperfield::constructions::{cyclic_group, zq_family, Subhypergroup};
use hyperfield::duality::SpectralConfig;
use hyperfield::hyperfield::{build_k, exact_sequence_check, validate_hyperfield, verify_duality, Hyperfield};
use hyperfield::io::sheet_map_json;
use hyperfield::{Rational, Result};

fn main() -> Result<()> {
    let l = zq_family(2, Rational::new(1, 2))?;
    let h = cyclic_group(4)?;
    let assignment = vec![Subhypergroup::trivial(&h), Subhypergroup::new(&h, &[0, 2])?];
    let field = Hyperfield::new(l, h, assignment)?;
    println!("hyperfield conditions ok: {}", validate_hyperfield(&field)?.ok());

    let k = build_k(&field)?;
    println!("K has {} elements: {:?}", k.hypergroup.order(), k.hypergroup.names());
    let a = k.element(1, 1);
    let m = k.hypergroup.product(a, a);
    println!("{0} * {0} = {1:?}", k.hypergroup.name(a), m.weights);
    print!("{}", sheet_map_json(&k));

    print!("{}", exact_sequence_check(&k)?.render());
    print!("{}", verify_duality(&field, &SpectralConfig::default())?.render());
    Ok(())
}
