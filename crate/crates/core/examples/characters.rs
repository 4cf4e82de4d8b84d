//! Character table, dual hypergroup and the double-dual check.

use hyperfield::constructions::{cyclic_group, negation, orbit_hypergroup};
use hyperfield::duality::{character_table, double_dual, dual_hypergroup, SpectralConfig};
use hyperfield::report::sig12;
use hyperfield::Result;

fn main() -> Result<()> {
    let cfg = SpectralConfig::default();
    let host = orbit_hypergroup(&cyclic_group(7)?, &[negation(7)])?;
    let table = character_table(&host, &cfg)?;
    print!("{}", table.report());
    println!("orthogonality defect: {:e}", table.orthogonality_defect());

    let dual = dual_hypergroup(&table)?;
    let h = &dual.hypergroup;
    println!("dual order {}, haar {}", h.order(), show(&h.haar()?.weights));
    for i in 0..h.order() {
        println!("chi1 * chi{i} = {}", show(&h.product(1, i).weights));
    }

    let (map, dev) = double_dual(&table, &cfg)?;
    println!("H -> dual of dual: {map:?} (deviation {dev:e})");
    Ok(())
}

fn show(w: &[f64]) -> String {
    w.iter().map(|&x| sig12(x)).collect::<Vec<_>>().join(" ")
}
