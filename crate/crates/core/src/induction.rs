//! Restriction and induction of characters along a subhypergroup `H0 ⊂ H`,
//! and the two-sheet hypergroup `K(Ĥ ∪ Ĥ0, Z_q(2))` they define.
//!
//! Everything on the dual side lives in `f64`: the dual hypergroups come out
//! of the character solver.

use crate::constructions::{zq_family, Subhypergroup};
use crate::duality::{annihilator, character_table, dual_hypergroup, restrict_character, CharacterTable, SpectralConfig, SubTable};
use crate::error::{Error, Result};
use crate::hyperfield::{build_k, verify_duality, Hyperfield};
use crate::hypergroup::{Axiom, FiniteHypergroup, Measure, RawHypergroup, ValidationReport};
use crate::iso::{find_isomorphism, respects_structure, transport_deviation};
use crate::report::{sig12, Report};
use crate::scalar::{Rational, Scalar};

/// Everything derived from a pair `(H, H0)`.
#[derive(Debug, Clone)]
pub struct InductionContext {
    pub host: FiniteHypergroup<f64>,
    pub sub: Subhypergroup,
    pub table: CharacterTable,
    pub sub_table: SubTable,
    /// `Ĥ`; element `i` is row `i` of `table`.
    pub dual: FiniteHypergroup<f64>,
    /// `Ĥ0`; element `i` is row `i` of `sub_table.table`.
    pub sub_dual: FiniteHypergroup<f64>,
    /// `H0^⊥ ⊂ Ĥ`.
    pub perp: Vec<usize>,
    /// `ω_{H0^⊥}` as a measure on `Ĥ`.
    pub omega_perp: Measure<f64>,
    /// `res: Ĥ → Ĥ0`.
    pub res: Vec<usize>,
    /// `A(τ)` for every `τ ∈ Ĥ0`.
    pub fibers: Vec<Vec<usize>>,
    /// `τ̃`: the smallest index in each fiber.
    pub reps: Vec<usize>,
    pub tau: f64,
}

/// Restricts every character of `H` to `H0` and checks that the fibers are
/// single `H0^⊥`-orbits.
pub fn build_context<S: Scalar>(host: &FiniteHypergroup<S>, sub: &Subhypergroup, config: &SpectralConfig) -> Result<InductionContext> {
    let tau = config.tau_char;
    let host = host.to_f64(host.tolerance().max(tau));
    if !host.is_subhypergroup(sub.members()) {
        return Err(Error::NotSubhypergroup(sub.members().to_vec()));
    }
    let table = character_table(&host, config)?;
    let sub_table = SubTable::new(&host, sub, config)?;
    let dual = dual_hypergroup(&table)?.hypergroup;
    let sub_dual = dual_hypergroup(&sub_table.table)?.hypergroup;
    let perp = annihilator(&table, sub.members())?;
    let omega_perp = dual.idempotent(&perp)?;
    let res = (0..table.len())
        .map(|chi| restrict_character(&table, &sub_table, chi))
        .collect::<Result<Vec<_>>>()?;

    let mut fibers = vec![Vec::new(); sub_table.table.len()];
    for (chi, &t) in res.iter().enumerate() {
        fibers[t].push(chi);
    }
    if let Some(empty) = fibers.iter().position(|f| f.is_empty()) {
        return Err(Error::ResNotSurjective(empty));
    }
    let reps: Vec<usize> = fibers.iter().map(|f| f[0]).collect();
    for (t, fiber) in fibers.iter().enumerate() {
        let orbit = dual.convolve(&dual.point(reps[t]), &omega_perp)?.support(tau);
        if orbit != *fiber {
            return Err(Error::InternalInconsistency(format!(
                "fiber of tau{t} is {fiber:?} but the H0-perp orbit of its representative is {orbit:?}"
            )));
        }
    }
    Ok(InductionContext {
        host,
        sub: sub.clone(),
        table,
        sub_table,
        dual,
        sub_dual,
        perp,
        omega_perp,
        res,
        fibers,
        reps,
        tau,
    })
}

impl InductionContext {
    pub fn dual_order(&self) -> usize {
        self.dual.order()
    }

    pub fn sub_dual_order(&self) -> usize {
        self.sub_dual.order()
    }

    /// `ind(τ) = δ_τ̃ * ω_{H0^⊥}`.
    pub fn induce(&self, t: usize) -> Measure<f64> {
        self.dual
            .convolve(&self.dual.point(self.reps[t]), &self.omega_perp)
            .expect("measures on the same dual")
    }

    /// `ind` of a measure `ν` on `Ĥ0`, i.e. `Σ_τ ν(τ) ind(τ)`.
    pub fn induce_measure(&self, nu: &Measure<f64>) -> Measure<f64> {
        let mut out = Measure::zeros(self.dual_order());
        for (t, &w) in nu.weights.iter().enumerate() {
            if w != 0.0 {
                out.add_scaled(&self.induce(t), w);
            }
        }
        out
    }

    /// Pushes a measure on `Ĥ` through `res`.
    pub fn restrict_measure(&self, mu: &Measure<f64>) -> Measure<f64> {
        mu.push_forward(&self.res, self.sub_dual_order())
    }

    /// `ind(τi · τj)`, computed from the decomposition of `τi · τj` in `Ĥ0`
    /// and again as `δ_τ̃i * δ_τ̃j * ω_{H0^⊥}`. Disagreement is an error.
    pub fn induce_product(&self, ti: usize, tj: usize) -> Result<Measure<f64>> {
        let by_definition = self.induce_measure(&self.sub_dual.product(ti, tj));
        let pair = self.dual.product(self.reps[ti], self.reps[tj]);
        let by_representatives = self.dual.convolve(&pair, &self.omega_perp)?;
        let dev = by_definition.max_deviation(&by_representatives);
        if dev > self.tau {
            return Err(Error::InternalInconsistency(format!(
                "ind(tau{ti} tau{tj}) differs between its two forms by {dev:.3e}"
            )));
        }
        Ok(by_definition)
    }
}

/// `K(Ĥ ∪ Ĥ0, Z_q(2))`. Elements `0..n_circ` are `(π, ∘)` in `Ĥ`'s order,
/// then `(τ, •)` in `Ĥ0`'s order.
#[derive(Debug, Clone)]
pub struct TwoSheet {
    pub hypergroup: FiniteHypergroup<f64>,
    pub n_circ: usize,
    pub n_bullet: usize,
    pub q: Rational,
}

impl TwoSheet {
    pub fn circ(&self, pi: usize) -> usize {
        pi
    }

    pub fn bullet(&self, t: usize) -> usize {
        self.n_circ + t
    }
}

/// Associativity violations sorted into the families (A1)–(A4) by the
/// number of `•` points among the three factors.
pub fn associativity_families(report: &ValidationReport, n_circ: usize) -> [usize; 4] {
    let mut families = [0; 4];
    for v in &report.violations {
        if v.axiom == Axiom::Associativity {
            let bullets = v.indices.iter().take(3).filter(|&&x| x >= n_circ).count();
            families[bullets] += 1;
        }
    }
    families
}

/// Assembles the two-sheet hypergroup from the four convolution rules.
pub fn build_two_sheet(ctx: &InductionContext, q: Rational) -> Result<TwoSheet> {
    if !q.is_positive() || q > Rational::from_integer(1) {
        return Err(Error::MalformedInput(format!("q = {q} is outside (0, 1]")));
    }
    let qf = q.to_f64();
    let (nc, nb) = (ctx.dual_order(), ctx.sub_dual_order());
    let n = nc + nb;
    let mut names: Vec<String> = (0..nc).map(|i| format!("chi{i}.o")).collect();
    names.extend((0..nb).map(|t| format!("tau{t}.b")));
    let mut involution: Vec<usize> = (0..nc).map(|i| ctx.dual.inverse(i)).collect();
    involution.extend((0..nb).map(|t| nc + ctx.sub_dual.inverse(t)));
    let mut raw = RawHypergroup::zeros(names, ctx.dual.identity(), involution);

    for i in 0..nc {
        for j in 0..nc {
            for &k in ctx.dual.support(i, j) {
                raw.set(i, j, k, ctx.dual.constant(i, j, k));
            }
        }
    }
    for pi in 0..nc {
        for t in 0..nb {
            let r = ctx.res[pi];
            for &s in ctx.sub_dual.support(r, t) {
                let c = ctx.sub_dual.constant(r, t, s);
                raw.set(pi, nc + t, nc + s, c);
                raw.set(nc + t, pi, nc + s, c);
            }
        }
    }
    for ti in 0..nb {
        for tj in 0..nb {
            let induced = ctx.induce_product(ti, tj)?;
            for (k, &w) in induced.weights.iter().enumerate() {
                if w.abs() > ctx.tau {
                    raw.add(nc + ti, nc + tj, k, qf * w);
                }
            }
            for &s in ctx.sub_dual.support(ti, tj) {
                raw.add(nc + ti, nc + tj, nc + s, (1.0 - qf) * ctx.sub_dual.constant(ti, tj, s));
            }
        }
    }
    debug_assert_eq!(raw.order(), n);
    let hypergroup = FiniteHypergroup::new(raw, ctx.tau)?;
    Ok(TwoSheet {
        hypergroup,
        n_circ: nc,
        n_bullet: nb,
        q,
    })
}

/// The field `φ` on `Ĥ` over `Z_q(2)`: `φ(ℓ0) = {χ0}`, `φ(ℓ1) = H0^⊥`.
pub fn induced_field(ctx: &InductionContext, q: Rational) -> Result<Hyperfield<f64>> {
    let zq = zq_family(2, q)?.to_f64(ctx.tau);
    let perp = Subhypergroup::new(&ctx.dual, &ctx.perp)?;
    let assignment = vec![Subhypergroup::trivial(&ctx.dual), perp];
    Hyperfield::new(zq, ctx.dual.clone(), assignment)
}

/// The field `φ̂` on `H` over `Z_q(2)`: `{ℓ0}` on `H0`, everything elsewhere.
pub fn dual_induced_field(ctx: &InductionContext, q: Rational) -> Result<Hyperfield<f64>> {
    let zq = zq_family(2, q)?.to_f64(ctx.tau);
    let assignment = (0..ctx.host.order())
        .map(|h| {
            if ctx.sub.contains(h) {
                Subhypergroup::trivial(&zq)
            } else {
                Subhypergroup::whole(&zq)
            }
        })
        .collect();
    Hyperfield::new(ctx.host.clone(), zq, assignment)
}

/// `K(Ĥ ∪ Ĥ0, Z_q(2)) ≅ K(Ĥ, φ, Z_q(2))` via
/// `ψ(π, ∘) = π ⊗ ε_ℓ0` and `ψ(τ, •) = (τ̃ · ω_{H0^⊥}) ⊗ ε_ℓ1`.
pub fn verify_theorem_52(ctx: &InductionContext, q: Rational) -> Result<Report> {
    let mut report = Report::new(format!("two-sheet hypergroup vs K(H^, phi, Z_q(2)), q = {q}"));
    let two = match build_two_sheet(ctx, q) {
        Ok(two) => two,
        Err(Error::AxiomFailure(v)) => {
            let fam = associativity_families(&v, ctx.dual_order());
            report.check(
                "two-sheet axioms",
                false,
                format!("A1 {} A2 {} A3 {} A4 {}; {}", fam[0], fam[1], fam[2], fam[3], v.to_string().trim()),
            );
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.check("two-sheet axioms", true, format!("{} points", two.hypergroup.order()));
    let k = build_k(&induced_field(ctx, q)?)?;
    let psi: Vec<usize> = (0..two.n_circ)
        .map(|pi| k.element(0, k.sheets[0].class_of[pi]))
        .chain((0..two.n_bullet).map(|t| k.element(1, k.sheets[1].class_of[ctx.reps[t]])))
        .collect();
    let structural = respects_structure(&two.hypergroup, &k.hypergroup, &psi);
    report.check(
        "psi is a bijection preserving unit and involution",
        structural,
        format!("|two-sheet| = {}, |K| = {}", two.hypergroup.order(), k.hypergroup.order()),
    );
    if structural {
        let dev = transport_deviation(&two.hypergroup, &k.hypergroup, &psi);
        report.check("psi transports structure constants", dev <= ctx.tau, format!("max deviation {}", sig12(dev)));
    }
    Ok(report)
}

/// `K̂(Ĥ ∪ Ĥ0, Z_q(2)) ≅ K(Z_q(2), φ̂, H)`: the dual of the two-sheet
/// hypergroup is matched against the hyperfield built from `φ̂`, and the
/// duality theorem is run on `φ`.
pub fn verify_theorem_53(ctx: &InductionContext, q: Rational, config: &SpectralConfig) -> Result<Report> {
    let mut report = Report::new(format!("dual of the two-sheet hypergroup vs K(Z_q(2), phi^, H), q = {q}"));
    let two = build_two_sheet(ctx, q)?;
    let two_dual = dual_hypergroup(&character_table(&two.hypergroup, config)?)?.hypergroup;
    let k = build_k(&dual_induced_field(ctx, q)?)?;
    report.check(
        "sizes agree",
        two_dual.order() == k.hypergroup.order(),
        format!("{} vs {}", two_dual.order(), k.hypergroup.order()),
    );
    match find_isomorphism(&two_dual, &k.hypergroup, ctx.tau) {
        Some(map) => {
            let dev = transport_deviation(&two_dual, &k.hypergroup, &map);
            report.check("isomorphism found", dev <= ctx.tau, format!("max deviation {}", sig12(dev)));
        }
        None => report.check("isomorphism found", false, "no structure-preserving bijection"),
    }
    report.absorb("duality", verify_duality(&induced_field(ctx, q)?, config)?);
    Ok(report)
}

/// Lemma-level checks (i)–(iv) over all characters, plus the fiber
/// partition, `H0^⊥`-invariance of `ind`, and agreement of both forms of
/// `ind(τi · τj)`.
pub fn lemma51_suite(ctx: &InductionContext) -> Report {
    let mut report = Report::new("restriction and induction");
    let (nc, nb, tau) = (ctx.dual_order(), ctx.sub_dual_order(), ctx.tau);

    let covered: usize = ctx.fibers.iter().map(Vec::len).sum();
    report.check("fibers partition H^", covered == nc, format!("{covered} of {nc}"));
    let invariance = (0..nb)
        .map(|t| {
            let m = ctx.induce(t);
            ctx.dual.convolve(&m, &ctx.omega_perp).map_or(f64::INFINITY, |c| c.max_deviation(&m))
        })
        .fold(0.0, f64::max);
    report.check("ind is perp-invariant", invariance <= tau, format!("max deviation {}", sig12(invariance)));

    let mut products = Vec::with_capacity(nb * nb);
    let mut disagreements = 0;
    for ti in 0..nb {
        for tj in 0..nb {
            match ctx.induce_product(ti, tj) {
                Ok(m) => products.push(Some(m)),
                Err(_) => {
                    disagreements += 1;
                    products.push(None);
                }
            }
        }
    }
    report.check("two forms of ind(ti tj) agree", disagreements == 0, format!("{disagreements} disagreements"));

    let mut worst = [0.0f64; 4];
    for t in 0..nb {
        worst[0] = worst[0].max(ctx.restrict_measure(&ctx.induce(t)).max_deviation(&Measure::point(nb, t)));
    }
    for pi in 0..nc {
        for pj in 0..nc {
            let lhs = ctx.restrict_measure(&ctx.dual.product(pi, pj));
            let rhs = ctx.sub_dual.product(ctx.res[pi], ctx.res[pj]);
            worst[1] = worst[1].max(lhs.max_deviation(&rhs));
        }
    }
    for ti in 0..nb {
        for tj in 0..nb {
            let Some(ind) = &products[ti * nb + tj] else {
                worst[2] = f64::INFINITY;
                worst[3] = f64::INFINITY;
                continue;
            };
            let nu = ctx.sub_dual.product(ti, tj);
            for pi in 0..nc {
                let lhs = ctx.dual.convolve(&ctx.dual.point(pi), ind).expect("same dual");
                let twisted = ctx.sub_dual.convolve(&ctx.sub_dual.point(ctx.res[pi]), &nu).expect("same dual");
                let rhs = ctx.induce_measure(&twisted);
                worst[2] = worst[2].max(lhs.max_deviation(&rhs));
            }
            worst[3] = worst[3].max(ctx.restrict_measure(ind).max_deviation(&nu));
        }
    }
    let names = [
        "(i) res(ind(t)) = t",
        "(ii) res is multiplicative",
        "(iii) pi ind(ti tj) = ind(res(pi) ti tj)",
        "(iv) res(ind(ti tj)) = ti tj",
    ];
    for (name, w) in names.iter().zip(worst) {
        report.check(*name, w <= tau, format!("max deviation {}", sig12(w)));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cyclic_group;

    fn context(n: usize, members: &[usize]) -> InductionContext {
        let h = cyclic_group(n).unwrap();
        let sub = Subhypergroup::new(&h, members).unwrap();
        build_context(&h, &sub, &SpectralConfig::default()).unwrap()
    }

    #[test]
    fn z6_over_c3_fibers() {
        let ctx = context(6, &[0, 2, 4]);
        assert_eq!(ctx.perp, vec![0, 3]);
        assert_eq!(ctx.fibers.len(), 3);
        assert!(ctx.fibers.iter().all(|f| f.len() == 2));
        // characters of Z6 come out in k order, so χk restricts to k mod 3
        assert_eq!(ctx.fibers[0], vec![0, 3]);
        let t = ctx.res[1];
        let m = ctx.induce(t);
        assert!((m.weights[1] - 0.5).abs() < 1e-12 && (m.weights[4] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_subgroups() {
        let whole = context(6, &[0, 1, 2, 3, 4, 5]);
        assert_eq!(whole.perp, vec![0]);
        assert!(whole.fibers.iter().all(|f| f.len() == 1));
        let trivial = context(6, &[0]);
        assert_eq!(trivial.fibers, vec![(0..6).collect::<Vec<_>>()]);
        let m = trivial.induce(0);
        assert!(m.weights.iter().all(|&w| (w - 1.0 / 6.0).abs() < 1e-12));
    }

    #[test]
    fn induce_product_with_trivial() {
        let ctx = context(6, &[0, 2, 4]);
        for t in 0..3 {
            let a = ctx.induce_product(0, t).unwrap();
            assert!(a.close(&ctx.induce(t), 1e-12));
        }
    }

    #[test]
    fn two_sheet_has_nine_points() {
        let ctx = context(6, &[0, 2, 4]);
        let two = build_two_sheet(&ctx, Rational::new(1, 2)).unwrap();
        assert_eq!(two.hypergroup.order(), 9);
        // trivial • trivial = q ind(triv) ∘ + (1 - q) triv •
        let p = two.hypergroup.product(two.bullet(0), two.bullet(0));
        assert!((p.weights[0] - 0.25).abs() < 1e-12);
        assert!((p.weights[3] - 0.25).abs() < 1e-12);
        assert!((p.weights[two.bullet(0)] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn theorems_on_z6_c3() {
        let ctx = context(6, &[0, 2, 4]);
        let cfg = SpectralConfig::default();
        for q in [Rational::new(1, 2), Rational::from_integer(1)] {
            let r52 = verify_theorem_52(&ctx, q).unwrap();
            assert!(r52.passed(), "{r52}");
            let r53 = verify_theorem_53(&ctx, q, &cfg).unwrap();
            assert!(r53.passed(), "{r53}");
        }
        assert!(lemma51_suite(&ctx).passed());
    }

    #[test]
    fn rejects_bad_q() {
        let ctx = context(6, &[0, 2, 4]);
        assert!(build_two_sheet(&ctx, Rational::from_integer(0)).is_err());
        assert!(build_two_sheet(&ctx, Rational::new(3, 2)).is_err());
    }
}
