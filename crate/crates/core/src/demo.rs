//! Finite analogs of the worked examples: `Z_N` stands in for the torus,
//! `Z_N × Z_N` for `T²`, and the negation-orbit hypergroup of `Z_N` for
//! `[-1, 1]`.

use std::f64::consts::TAU;

use crate::constructions::{cyclic_group, direct_product, join, negation, orbit_hypergroup, substitution, zq_family, Subhypergroup};
use crate::duality::{character_table, dual_hypergroup, SpectralConfig};
use crate::error::{Error, Result};
use crate::hyperfield::{build_k, dual_hyperfield, exact_sequence_check, validate_hyperfield, verify_duality, Hyperfield};
use crate::hypergroup::FiniteHypergroup;
use crate::induction::{build_context, build_two_sheet, lemma51_suite, verify_theorem_52, verify_theorem_53, InductionContext};
use crate::iso::{find_isomorphism, transport_deviation};
use crate::report::{sig12, Report};
use crate::scalar::{Rational, Scalar};

/// Demo parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemoParams {
    pub big_n: usize,
    pub n: usize,
    pub m: usize,
    pub q: Rational,
}

impl Default for DemoParams {
    fn default() -> Self {
        DemoParams {
            big_n: 6,
            n: 3,
            m: 2,
            q: Rational::new(1, 2),
        }
    }
}

pub const DEMO_IDS: [&str; 12] = ["4.1", "4.2", "4.3", "4.4", "4.5", "4.6", "4.7", "6.1", "6.2", "6.3", "6.4", "6.5"];

pub fn run_demo(id: &str, p: &DemoParams, config: &SpectralConfig) -> Result<Report> {
    if p.big_n == 0 || p.n == 0 || p.m == 0 {
        return Err(Error::MalformedInput("demo parameters must be positive".into()));
    }
    let mut report = Report::new(format!("demo {id} (N={}, n={}, m={}, q={})", p.big_n, p.n, p.m, p.q));
    match id {
        "4.1" => {
            let h = cyclic_group(p.big_n)?;
            let sub = cyclic_subgroup(p.big_n, p.n)?;
            let field = Hyperfield::constant(zq_family(2, p.q)?, h, &Subhypergroup::new(&cyclic_group(p.big_n)?, &sub)?)?;
            field_demo(&mut report, &field, config)?;
            let (nn, n) = (p.big_n, p.n);
            displayed_dual(&mut report, &field, config, |t, chi| k_of(t.value(chi, 1), nn) % n == 0)?;
        }
        "4.2" | "4.4" => {
            let nn = p.big_n;
            let z = cyclic_group(nn)?;
            let h = direct_product(&z, &z);
            let (first, second) = if id == "4.2" {
                (cyclic_subgroup(nn, p.n)?, cyclic_subgroup(nn, p.m)?)
            } else {
                (cyclic_subgroup(nn, p.n)?, (0..nn).collect())
            };
            let members = pairs(nn, &first, &second);
            let sub = Subhypergroup::new(&h, &members)?;
            let field = Hyperfield::constant(zq_family(2, p.q)?, h, &sub)?;
            field_demo(&mut report, &field, config)?;
            let (n, m) = (p.n, p.m);
            let is_42 = id == "4.2";
            displayed_dual(&mut report, &field, config, |t, chi| {
                let (k1, k2) = (k_of(t.value(chi, 1), nn), k_of(t.value(chi, nn), nn));
                if is_42 {
                    k1 % n == 0 && k2 % m == 0
                } else {
                    k1 % n == 0 && k2 == 0
                }
            })?;
        }
        "4.3" => {
            let h = cyclic_group(p.big_n)?;
            let sub = Subhypergroup::new(&h, &cyclic_subgroup(p.big_n, p.n)?)?;
            let field = Hyperfield::constant(zq_family(3, p.q)?, h, &sub)?;
            field_demo(&mut report, &field, config)?;
            let (nn, n) = (p.big_n, p.n);
            displayed_dual(&mut report, &field, config, |t, chi| k_of(t.value(chi, 1), nn) % n == 0)?;
        }
        "4.5" => {
            let nn = p.big_n;
            let h = orbit_hypergroup(&cyclic_group(nn)?, &[negation(nn)])?;
            let step = cyclic_step(nn, p.n)?;
            let members: Vec<usize> = (0..h.order()).filter(|j| j % step == 0).collect();
            let sub = Subhypergroup::new(&h, &members)?;
            let field = Hyperfield::constant(zq_family(2, p.q)?, h, &sub)?;
            field_demo(&mut report, &field, config)?;
            let n = p.n;
            displayed_dual(&mut report, &field, config, |t, chi| cos_k_of(t.value(chi, 1).re, nn) % n == 0)?;
        }
        "4.6" => {
            let (a, c) = (cyclic_group(p.m)?, cyclic_group(p.n)?);
            let zq = zq_family(2, p.q)?;
            let h = direct_product(&a, &c);
            let members: Vec<usize> = (0..p.n).map(|x| x * p.m).collect();
            let field = Hyperfield::constant(zq.clone(), h, &Subhypergroup::new(&direct_product(&a, &c), &members)?)?;
            let k = field_demo(&mut report, &field, config)?;
            isomorphic(&mut report, "K = A x (C v Zq(2))", &k, &direct_product(&a, &join(&c, &zq)?), 0.0);
            let k_dual = dual_hypergroup(&character_table(&k, config)?)?.hypergroup;
            let expected = direct_product(&a, &join(&zq, &c)?).to_f64(config.tau_char);
            isomorphic(&mut report, "dual = A^ x (Zq(2) v C^)", &k_dual, &expected, config.tau_char);
        }
        "4.7" => {
            let (a, c) = (cyclic_group(p.m)?, cyclic_group(p.big_n)?);
            let l = zq_family(3, p.q)?;
            let c0 = cyclic_subgroup(p.big_n, p.n)?;
            let h = direct_product(&a, &c);
            let members: Vec<usize> = c0.iter().map(|x| x * p.m).collect();
            let field = Hyperfield::constant(l.clone(), h.clone(), &Subhypergroup::new(&h, &members)?)?;
            let k = field_demo(&mut report, &field, config)?;
            let s = substitution(&c, &Subhypergroup::new(&c, &c0)?, &l)?;
            isomorphic(&mut report, "K = A x S(Q x Zq(3) : Q -> C)", &k, &direct_product(&a, &s), 0.0);
        }
        "6.1" => {
            let nn = p.big_n;
            let h = cyclic_group(nn)?;
            let sub = Subhypergroup::new(&h, &multiples(nn, p.n)?)?;
            let ctx = build_context(&h, &sub, config)?;
            pair_demo(&mut report, &ctx, p.q, config)?;
            let field = Hyperfield::constant(zq_family(2, p.q)?, h, &Subhypergroup::new(&cyclic_group(nn)?, &cyclic_subgroup(nn, p.n)?)?)?;
            link_to_field(&mut report, "two-sheet = K(Z_N, phi, Zq(2)) of 4.1", &ctx, p.q, &field)?;
        }
        "6.2" | "6.3" => {
            let nn = p.big_n;
            let z = cyclic_group(nn)?;
            let h = direct_product(&z, &z);
            let (first, second) = if id == "6.2" {
                (multiples(nn, p.n)?, multiples(nn, p.m)?)
            } else {
                (multiples(nn, p.n)?, vec![0])
            };
            let sub = Subhypergroup::new(&h, &pairs(nn, &first, &second))?;
            let ctx = build_context(&h, &sub, config)?;
            pair_demo(&mut report, &ctx, p.q, config)?;
        }
        "6.4" => {
            let nn = p.big_n;
            let h = orbit_hypergroup(&cyclic_group(nn)?, &[negation(nn)])?;
            let step = if nn % p.n == 0 {
                p.n
            } else {
                return Err(Error::MalformedInput(format!("n = {} does not divide N = {nn}", p.n)));
            };
            let members: Vec<usize> = (0..h.order()).filter(|j| j % step == 0).collect();
            let sub = Subhypergroup::new(&h, &members)?;
            let ctx = build_context(&h, &sub, config)?;
            pair_demo(&mut report, &ctx, p.q, config)?;
        }
        "6.5" => {
            let (b, d) = (cyclic_group(p.m)?, cyclic_group(p.n)?);
            let zq = zq_family(2, p.q)?;
            let h = direct_product(&b, &d);
            let sub = Subhypergroup::new(&h, &(0..p.m).collect::<Vec<_>>())?;
            let ctx = build_context(&h, &sub, config)?;
            pair_demo(&mut report, &ctx, p.q, config)?;
            let two = build_two_sheet(&ctx, p.q)?;
            let tau = config.tau_char;
            isomorphic(
                &mut report,
                "two-sheet = B^ x (D^ v Zq(2))",
                &two.hypergroup,
                &direct_product(&b, &join(&d, &zq)?).to_f64(tau),
                tau,
            );
            let two_dual = dual_hypergroup(&character_table(&two.hypergroup, config)?)?.hypergroup;
            isomorphic(
                &mut report,
                "dual = B x (Zq(2) v D)",
                &two_dual,
                &direct_product(&b, &join(&zq, &d)?).to_f64(tau),
                tau,
            );
        }
        other => {
            return Err(Error::MalformedInput(format!(
                "unknown demo {other:?}; expected one of {}",
                DEMO_IDS.join(", ")
            )))
        }
    }
    Ok(report)
}

/// Step between members of the order-`n` subgroup of `Z_N`.
fn cyclic_step(big_n: usize, n: usize) -> Result<usize> {
    if n == 0 || big_n % n != 0 {
        return Err(Error::MalformedInput(format!("n = {n} does not divide N = {big_n}")));
    }
    Ok(big_n / n)
}

/// `C_n ⊂ Z_N`, the subgroup of order `n`.
fn cyclic_subgroup(big_n: usize, n: usize) -> Result<Vec<usize>> {
    let step = cyclic_step(big_n, n)?;
    Ok((0..big_n).step_by(step).collect())
}

/// `nZ_N`, the multiples of `n`.
fn multiples(big_n: usize, n: usize) -> Result<Vec<usize>> {
    if n == 0 || big_n % n != 0 {
        return Err(Error::MalformedInput(format!("n = {n} does not divide N = {big_n}")));
    }
    Ok((0..big_n).step_by(n).collect())
}

/// Indices of `first × second` in `Z_N × Z_N` (second factor major).
fn pairs(big_n: usize, first: &[usize], second: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = second.iter().flat_map(|&b| first.iter().map(move |&a| b * big_n + a)).collect();
    out.sort_unstable();
    out
}

/// The `k` with `χ(1) = e^{2πik/N}`.
fn k_of(z: num_complex::Complex64, big_n: usize) -> usize {
    let k = (z.arg().rem_euclid(TAU) * big_n as f64 / TAU).round() as usize;
    k % big_n
}

/// The `k ∈ [0, N/2]` with `cos(2πk/N) = c`.
fn cos_k_of(c: f64, big_n: usize) -> usize {
    (c.clamp(-1.0, 1.0).acos() * big_n as f64 / TAU).round() as usize
}

fn field_demo<S: Scalar>(report: &mut Report, field: &Hyperfield<S>, config: &SpectralConfig) -> Result<FiniteHypergroup<S>> {
    let v = validate_hyperfield(field)?;
    report.check("hyperfield conditions", v.ok(), v.to_string().trim());
    let k = build_k(field)?;
    report.check(
        "K validates",
        true,
        format!("|K| = {} over {} sheets", k.hypergroup.order(), field.base.order()),
    );
    report.absorb("exact-seq", exact_sequence_check(&k)?);
    report.absorb("duality", verify_duality(field, config)?);
    Ok(k.hypergroup)
}

/// Compares the computed dual field with the displayed one: `{ρ0}` where
/// `trivial(χ)` holds and all of `L̂` elsewhere.
fn displayed_dual<S: Scalar>(
    report: &mut Report,
    field: &Hyperfield<S>,
    config: &SpectralConfig,
    trivial: impl Fn(&crate::duality::CharacterTable, usize) -> bool,
) -> Result<()> {
    let dual = dual_hyperfield(field, config)?;
    let l_dual = &dual.field.target;
    let mut mismatches = 0;
    for (chi, sub) in dual.field.assignment.iter().enumerate() {
        let expected: Vec<usize> = if trivial(&dual.h_table, chi) {
            vec![l_dual.identity()]
        } else {
            (0..l_dual.order()).collect()
        };
        if sub.members() != expected {
            mismatches += 1;
        }
    }
    report.check("dual field matches the displayed phi^", mismatches == 0, format!("{mismatches} mismatches"));
    Ok(())
}

fn pair_demo(report: &mut Report, ctx: &InductionContext, q: Rational, config: &SpectralConfig) -> Result<()> {
    report.note(format!(
        "|H^| = {}, |H0^| = {}, |H0-perp| = {}",
        ctx.dual_order(),
        ctx.sub_dual_order(),
        ctx.perp.len()
    ));
    report.absorb("lemma51", lemma51_suite(ctx));
    report.absorb("thm52", verify_theorem_52(ctx, q)?);
    report.absorb("thm53", verify_theorem_53(ctx, q, config)?);
    Ok(())
}

fn link_to_field(report: &mut Report, name: &str, ctx: &InductionContext, q: Rational, field: &Hyperfield<Rational>) -> Result<()> {
    let two = build_two_sheet(ctx, q)?;
    let k = build_k(field)?.hypergroup.to_f64(ctx.tau);
    isomorphic(report, name, &two.hypergroup, &k, ctx.tau);
    Ok(())
}

fn isomorphic<S: Scalar>(report: &mut Report, name: &str, a: &FiniteHypergroup<S>, b: &FiniteHypergroup<S>, tol: f64) {
    match find_isomorphism(a, b, tol) {
        Some(map) => {
            let dev = transport_deviation(a, b, &map);
            report.check(name, dev <= tol, format!("max deviation {}", sig12(dev)));
        }
        None => report.check(name, false, format!("no isomorphism between orders {} and {}", a.order(), b.order())),
    }
}
