//! Induced characters along a subgroup and the two-sheet hypergroup built
//! from them, with the two structure theorems.

use hyperfield::constructions::{cyclic_group, Subhypergroup};
use hyperfield::duality::SpectralConfig;
use hyperfield::induction::{build_context, build_two_sheet, lemma51_suite, verify_theorem_52, verify_theorem_53};
use hyperfield::report::sig12;
use hyperfield::{Rational, Result};

fn main() -> Result<()> {
    let cfg = SpectralConfig::default();
    let host = cyclic_group(6)?;
    let sub = Subhypergroup::new(&host, &[0, 2, 4])?;
    let ctx = build_context(&host, &sub, &cfg)?;

    for t in 0..ctx.sub_dual_order() {
        println!("ind(tau{t}) = {}", show(&ctx.induce(t).weights));
    }
    print!("{}", lemma51_suite(&ctx).render());

    let q = Rational::new(1, 2);
    let ts = build_two_sheet(&ctx, q)?;
    let h = &ts.hypergroup;
    let b = ts.bullet(0);
    println!("{0} * {0} = {1}", h.name(b), show(&h.product(b, b).weights));

    print!("{}", verify_theorem_52(&ctx, q)?.render());
    print!("{}", verify_theorem_53(&ctx, q, &cfg)?.render());
    Ok(())
}

fn show(w: &[f64]) -> String {
    w.iter().map(|&x| sig12(x)).collect::<Vec<_>>().join(" ")
}
