//! Hyperfields `φ: L ∋ ℓ ↦ H(ℓ) ⊂ H` and the sheeted hypergroup
//! `K(H, φ, L) = ⋃_ℓ H/H(ℓ)` built from them, together with the dual field
//! and the checks that `K̂(H, φ, L) ≅ K(L̂, φ̂, Ĥ)`.

use num_complex::Complex64;

use crate::constructions::{direct_product, generated_subhypergroup, join, quotient, QuotientMap, Subhypergroup};
use crate::duality::{annihilator, character_table, dual_hypergroup, CharacterTable, SpectralConfig};
use crate::error::{Error, Result};
use crate::hypergroup::{Axiom, FiniteHypergroup, Measure, RawHypergroup, ValidationReport};
use crate::iso::{find_isomorphism, respects_structure, transport_deviation};
use crate::report::{sig12, Report};
use crate::scalar::Scalar;

/// Assignment of a subhypergroup of `target` (the compact side `H`) to every
/// element of `base` (the discrete side `L`).
#[derive(Debug, Clone)]
pub struct Hyperfield<S> {
    pub base: FiniteHypergroup<S>,
    pub target: FiniteHypergroup<S>,
    pub assignment: Vec<Subhypergroup>,
}

impl<S: Scalar> Hyperfield<S> {
    /// Packages the data; the hyperfield conditions are checked by
    /// [`validate_hyperfield`].
    pub fn new(base: FiniteHypergroup<S>, target: FiniteHypergroup<S>, assignment: Vec<Subhypergroup>) -> Result<Self> {
        if assignment.len() != base.order() {
            return Err(Error::MalformedInput(format!(
                "assignment covers {} of {} base elements",
                assignment.len(),
                base.order()
            )));
        }
        for sub in &assignment {
            if !target.is_subhypergroup(sub.members()) {
                return Err(Error::NotSubhypergroup(sub.members().to_vec()));
            }
        }
        Ok(Hyperfield {
            base,
            target,
            assignment,
        })
    }

    /// `φ(ℓ0) = {h0}` and `φ(ℓ) = sub` for every other `ℓ`.
    pub fn constant(base: FiniteHypergroup<S>, target: FiniteHypergroup<S>, sub: &Subhypergroup) -> Result<Self> {
        let assignment = (0..base.order())
            .map(|l| {
                if l == base.identity() {
                    Subhypergroup::trivial(&target)
                } else {
                    sub.clone()
                }
            })
            .collect();
        Hyperfield::new(base, target, assignment)
    }

    pub fn subgroup(&self, l: usize) -> &Subhypergroup {
        &self.assignment[l]
    }

    pub fn to_f64(&self, tol: f64) -> Hyperfield<f64> {
        Hyperfield {
            base: self.base.to_f64(tol),
            target: self.target.to_f64(tol),
            assignment: self.assignment.clone(),
        }
    }
}

/// Checks conditions (1) and (2) directly, and the idempotent identity
/// `e(ℓi) * e(ℓj) * e(ℓk) = e(ℓi) * e(ℓj)` for `ℓk ∈ supp(ℓi • ℓj)` by
/// computing the measures.
pub fn validate_hyperfield<S: Scalar>(field: &Hyperfield<S>) -> Result<ValidationReport> {
    let (l, h) = (&field.base, &field.target);
    let tol = h.tolerance();
    let mut report = ValidationReport::default();
    if field.assignment[l.identity()].members() != [h.identity()] {
        report.push(Axiom::HyperfieldUnit, vec![l.identity()], 1.0);
    }
    for x in 0..l.order() {
        if field.assignment[x] != field.assignment[l.inverse(x)] {
            report.push(Axiom::HyperfieldSymmetry, vec![x, l.inverse(x)], 1.0);
        }
    }
    let idempotents = field
        .assignment
        .iter()
        .map(|s| h.idempotent(s.members()))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..l.order() {
        for j in 0..l.order() {
            let mut seed = field.assignment[i].members().to_vec();
            seed.extend_from_slice(field.assignment[j].members());
            let generated = generated_subhypergroup(h, &seed);
            let pair = h.convolve(&idempotents[i], &idempotents[j])?;
            for &k in l.support(i, j) {
                if !generated.is_superset_of(&field.assignment[k]) {
                    report.push(Axiom::HyperfieldContainment, vec![i, j, k], 1.0);
                }
                let triple = h.convolve(&pair, &idempotents[k])?;
                if !triple.close(&pair, tol) {
                    report.push(Axiom::HyperfieldIdempotent, vec![i, j, k], triple.max_deviation(&pair));
                }
            }
        }
    }
    Ok(report)
}

/// `K(H, φ, L)` with the bookkeeping that ties its points to sheets and
/// cosets. Sheets follow `L`'s element order; within a sheet, cosets are
/// ordered by smallest representative.
#[derive(Debug, Clone)]
pub struct SheetedHypergroup<S> {
    pub hypergroup: FiniteHypergroup<S>,
    /// Element to `ℓ`.
    pub sheet_of: Vec<usize>,
    /// Element to the smallest representative of its coset in `H`.
    pub coset_of: Vec<usize>,
    /// `H → H/H(ℓ)` for every `ℓ`.
    pub sheets: Vec<QuotientMap<S>>,
    /// Index of the first element of each sheet.
    pub offsets: Vec<usize>,
    pub field: Hyperfield<S>,
}

impl<S: Scalar> SheetedHypergroup<S> {
    /// Index of coset `class` on sheet `l`.
    pub fn element(&self, l: usize, class: usize) -> usize {
        self.offsets[l] + class
    }

    /// Class index of an element within its sheet.
    pub fn class_index(&self, x: usize) -> usize {
        x - self.offsets[self.sheet_of[x]]
    }

    /// The measure `δ_h * e(ℓ)` on `H` behind element `x`.
    pub fn class_measure(&self, x: usize) -> &Measure<S> {
        &self.sheets[self.sheet_of[x]].class_measures[self.class_index(x)]
    }
}

/// Builds `K(H, φ, L)`. The product of `(δ_p * e(ℓi)) ⊗ ε_ℓi` and
/// `(δ_q * e(ℓj)) ⊗ ε_ℓj` is
/// `Σ_{k ∈ s(ℓi, ℓj)} n_ij^k (δ_p * δ_q * e(ℓi) * e(ℓj) * e(ℓk)) ⊗ ε_ℓk`,
/// where each summand is read off on the cosets of `H(ℓk)`.
pub fn build_k<S: Scalar>(field: &Hyperfield<S>) -> Result<SheetedHypergroup<S>> {
    let report = validate_hyperfield(field)?;
    if !report.ok() {
        return Err(Error::HyperfieldInvalid(report));
    }
    let (l, h) = (&field.base, &field.target);
    let tol = h.tolerance().max(l.tolerance());
    let sheets = field
        .assignment
        .iter()
        .map(|sub| quotient(h, sub))
        .collect::<Result<Vec<_>>>()?;
    let idempotents = field
        .assignment
        .iter()
        .map(|s| h.idempotent(s.members()))
        .collect::<Result<Vec<_>>>()?;

    let mut offsets = Vec::with_capacity(l.order());
    let mut names = Vec::new();
    let mut sheet_of = Vec::new();
    let mut coset_of = Vec::new();
    for (li, sheet) in sheets.iter().enumerate() {
        offsets.push(names.len());
        for class in &sheet.classes {
            names.push(format!("{}@{}", h.name(class[0]), l.name(li)));
            sheet_of.push(li);
            coset_of.push(class[0]);
        }
    }
    let n = names.len();
    let involution = (0..n)
        .map(|x| {
            let li = sheet_of[x];
            let inv_l = l.inverse(li);
            let class = sheets[inv_l].class_of[h.inverse(coset_of[x])];
            offsets[inv_l] + class
        })
        .collect();
    let identity = offsets[l.identity()] + sheets[l.identity()].class_of[h.identity()];
    let mut raw = RawHypergroup::zeros(names, identity, involution);

    for x in 0..n {
        let (li, cx) = (sheet_of[x], x - offsets[sheet_of[x]]);
        for y in 0..n {
            let (lj, cy) = (sheet_of[y], y - offsets[sheet_of[y]]);
            let pair = h.convolve(&sheets[li].class_measures[cx], &sheets[lj].class_measures[cy])?;
            for &lk in l.support(li, lj) {
                let weight = l.constant(li, lj, lk);
                let nu = h.convolve(&pair, &idempotents[lk])?;
                let on_classes = sheets[lk].project(&nu);
                for (c, &mass) in on_classes.weights.iter().enumerate() {
                    if !mass.is_zero() {
                        raw.add(x, y, offsets[lk] + c, weight * mass);
                    }
                }
            }
        }
    }
    let hypergroup = FiniteHypergroup::new(raw, tol)?;
    Ok(SheetedHypergroup {
        hypergroup,
        sheet_of,
        coset_of,
        sheets,
        offsets,
        field: field.clone(),
    })
}

/// The dual field `φ̂: Ĥ ∋ χ ↦ L̂(χ) = Y(χ)^⊥`, with the tables it came from.
#[derive(Debug, Clone)]
pub struct DualField {
    /// Base `Ĥ`, target `L̂`; element `i` of each is row `i` of its table.
    pub field: Hyperfield<f64>,
    pub h_table: CharacterTable,
    pub l_table: CharacterTable,
    /// `H(ℓ)^⊥` for every `ℓ`.
    pub perps: Vec<Vec<usize>>,
    /// `Y(χ) = {ℓ : χ ∈ H(ℓ)^⊥}` for every `χ`.
    pub y_sets: Vec<Vec<usize>>,
}

/// Computes `φ̂`. Both `H` and `L` must be strong.
pub fn dual_hyperfield<S: Scalar>(field: &Hyperfield<S>, config: &SpectralConfig) -> Result<DualField> {
    let h_table = character_table(&field.target, config)?;
    let l_table = character_table(&field.base, config)?;
    let h_dual = dual_hypergroup(&h_table)?.hypergroup;
    let l_dual = dual_hypergroup(&l_table)?.hypergroup;
    let perps = field
        .assignment
        .iter()
        .map(|s| annihilator(&h_table, s.members()))
        .collect::<Result<Vec<_>>>()?;
    let y_sets: Vec<Vec<usize>> = (0..h_table.len())
        .map(|chi| (0..field.base.order()).filter(|&l| perps[l].contains(&chi)).collect())
        .collect();
    let assignment = y_sets
        .iter()
        .map(|y| {
            let members = annihilator(&l_table, y)?;
            Subhypergroup::new(&l_dual, &members)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DualField {
        field: Hyperfield::new(h_dual, l_dual, assignment)?,
        h_table,
        l_table,
        perps,
        y_sets,
    })
}

/// Verification of `K̂(H, φ, L) ≅ K(L̂, φ̂, Ĥ)` and of the lemmas behind it.
pub fn verify_duality<S: Scalar>(field: &Hyperfield<S>, config: &SpectralConfig) -> Result<Report> {
    let tau = config.tau_char;
    let mut report = Report::new("duality of K(H, phi, L)");
    let k = build_k(field)?;
    let dual = dual_hyperfield(field, config)?;
    let (h_table, l_table) = (&dual.h_table, &dual.l_table);
    let (h, l) = (&field.target, &field.base);

    lemma_checks(field, &dual, &mut report)?;

    let dual_report = validate_hyperfield(&dual.field)?;
    report.check("dual field is a hyperfield", dual_report.ok(), dual_report.to_string().trim());

    let k_table = character_table(&k.hypergroup, config)?;
    let k_dual = dual_hypergroup(&k_table)?.hypergroup;
    let k_hat = build_k(&dual.field)?;
    let size_k = k.hypergroup.order();
    let size_dual = k_hat.hypergroup.order();
    report.check(
        "size identity",
        size_k == size_dual && size_k == k_table.len(),
        format!("|K| = {size_k}, |K(L^, phi^, H^)| = {size_dual}"),
    );
    if size_k != size_dual {
        return Ok(report);
    }

    // τ((δ_h * e(ℓ)) ⊗ ε_ℓ) = (δ_ρ * e(χ))(ℓ) · χ(δ_h * e(ℓ)) for each point (ρ-coset, χ)
    let mut to_row = Vec::with_capacity(size_dual);
    let mut first_miss = None;
    for point in 0..size_dual {
        let chi = k_hat.sheet_of[point];
        let rho_class = k_hat.class_measure(point);
        let values: Vec<Complex64> = (0..size_k)
            .map(|x| {
                let ell = k.sheet_of[x];
                let rho_part: Complex64 = (0..l_table.len())
                    .map(|r| l_table.value(r, ell) * rho_class.weights[r])
                    .sum();
                let chi_part = h_table.row(chi).eval_measure(k.class_measure(x));
                rho_part * chi_part
            })
            .collect();
        match k_table.match_row(&values) {
            Ok(row) => to_row.push(row),
            Err(e) => {
                first_miss.get_or_insert(format!("point {} of K(L^, phi^, H^): {e}", k_hat.hypergroup.name(point)));
                to_row.push(usize::MAX);
            }
        }
    }
    let bijective = first_miss.is_none() && {
        let mut seen = vec![false; size_k];
        to_row.iter().all(|&r| !std::mem::replace(&mut seen[r], true))
    };
    report.check(
        "candidate characters match the table",
        bijective,
        first_miss.unwrap_or_else(|| "bijection".into()),
    );
    if !bijective {
        return Ok(report);
    }
    report.check(
        "matching preserves unit and involution",
        respects_structure(&k_hat.hypergroup, &k_dual, &to_row),
        "",
    );
    let (worst, witness) = worst_triple(&k_hat.hypergroup, &k_dual, &to_row);
    report.check(
        "structure constants agree",
        worst <= tau,
        format!("max deviation {} at {:?}", sig12(worst), witness),
    );
    // degenerate fields: {h0} everywhere gives H x L, H off ℓ0 gives H v L
    let off_unit = (0..l.order()).filter(|&x| x != l.identity());
    let degenerate = if off_unit.clone().all(|x| field.assignment[x].len() == 1) {
        Some(("product case: dual is L^ x H^", direct_product(&dual.field.base, &dual.field.target)))
    } else if off_unit.clone().all(|x| field.assignment[x].len() == h.order()) {
        Some(("join case: dual is L^ v H^", join(&dual.field.target, &dual.field.base)?))
    } else {
        None
    };
    if let Some((name, expected)) = degenerate {
        let ok = find_isomorphism(&k_dual, &expected, tau).is_some_and(|m| transport_deviation(&k_dual, &expected, &m) <= tau);
        report.check(name, ok, "");
    }
    Ok(report)
}

fn worst_triple(a: &FiniteHypergroup<f64>, b: &FiniteHypergroup<f64>, map: &[usize]) -> (f64, (usize, usize, usize)) {
    let n = a.order();
    let mut worst = (0.0, (0, 0, 0));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let d = (a.constant(i, j, k) - b.constant(map[i], map[j], map[k])).abs();
                if d > worst.0 {
                    worst = (d, (i, j, k));
                }
            }
        }
    }
    worst
}

/// Lemma-level checks on the dual field: `Y(χ)` is a subhypergroup with
/// `Y(χ⁻) = Y(χ)` and `Y(χi) ∩ Y(χj) ⊂ Y(χk)`, membership symmetry,
/// `χ(e(ℓ)) ∈ {0, 1}`, `e(χ)(ℓ) ∈ {0, 1}` and `χ(e(ℓ)) = e(χ)(ℓ)`.
fn lemma_checks<S: Scalar>(field: &Hyperfield<S>, dual: &DualField, report: &mut Report) -> Result<()> {
    let tau = dual.h_table.tolerance();
    let (h, l) = (&field.target, &field.base);
    let h_dual = &dual.field.base;
    let l_dual = &dual.field.target;
    let nchi = dual.h_table.len();

    let mut y_ok = true;
    for chi in 0..nchi {
        let y = &dual.y_sets[chi];
        y_ok &= l.is_subhypergroup(y);
        y_ok &= dual.y_sets[h_dual.inverse(chi)] == *y;
    }
    for ci in 0..nchi {
        for cj in 0..nchi {
            for &ck in h_dual.support(ci, cj) {
                let inter = dual.y_sets[ci].iter().filter(|x| dual.y_sets[cj].contains(x));
                y_ok &= inter.into_iter().all(|x| dual.y_sets[ck].contains(x));
            }
        }
    }
    report.check("Y(chi) subhypergroups", y_ok, "");

    // (i): membership from direct evaluation on H(ℓ)
    let mut i_ok = true;
    for chi in 0..nchi {
        for ell in 0..l.order() {
            let direct = field.assignment[ell]
                .members()
                .iter()
                .all(|&x| (dual.h_table.value(chi, x) - 1.0).norm() <= tau);
            i_ok &= direct == dual.y_sets[chi].contains(&ell);
        }
    }
    report.check("lemma (i) l in Y(chi) iff chi in H(l)^perp", i_ok, "");

    let e_ell = field
        .assignment
        .iter()
        .map(|s| h.idempotent(s.members()))
        .collect::<Result<Vec<_>>>()?;
    let e_chi = dual
        .field
        .assignment
        .iter()
        .map(|s| l_dual.idempotent(s.members()))
        .collect::<Result<Vec<_>>>()?;
    let (mut ii, mut iii, mut iv) = (0.0f64, 0.0f64, 0.0f64);
    for chi in 0..nchi {
        for ell in 0..l.order() {
            let lhs = dual.h_table.row(chi).eval_measure(&e_ell[ell]);
            let rhs: Complex64 = (0..dual.l_table.len())
                .map(|r| dual.l_table.value(r, ell) * e_chi[chi].weights[r])
                .sum();
            let in_perp = dual.perps[ell].contains(&chi);
            let in_y = dual.y_sets[chi].contains(&ell);
            ii = ii.max((lhs - if in_perp { 1.0 } else { 0.0 }).norm());
            iii = iii.max((rhs - if in_y { 1.0 } else { 0.0 }).norm());
            iv = iv.max((lhs - rhs).norm());
        }
    }
    report.check("lemma (ii) chi(e(l)) in {0,1}", ii <= tau, format!("max deviation {}", sig12(ii)));
    report.check("lemma (iii) e(chi)(l) in {0,1}", iii <= tau, format!("max deviation {}", sig12(iii)));
    report.check("lemma (iv) chi(e(l)) = e(chi)(l)", iv <= tau, format!("max deviation {}", sig12(iv)));
    Ok(())
}

/// Stage at which an extension sequence broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceStage {
    Injection,
    Quotient,
    Isomorphism,
}

/// Checks `1 → H → K(H, φ, L) → L → 1`: `h ↦ (h, ℓ0)` is an injective
/// homomorphism onto sheet `ℓ0`, and `K/H ≅ L`.
pub fn exact_sequence_check<S: Scalar>(k: &SheetedHypergroup<S>) -> Result<Report> {
    let mut report = Report::new("exact sequence 1 -> H -> K -> L -> 1");
    let (h, l) = (&k.field.target, &k.field.base);
    let kh = &k.hypergroup;
    let tol = kh.tolerance();
    let l0 = l.identity();
    let embed: Vec<usize> = (0..h.order()).map(|x| k.element(l0, k.sheets[l0].class_of[x])).collect();

    let mut injective = {
        let mut seen = vec![false; kh.order()];
        embed.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    };
    injective &= embed.iter().all(|&x| k.sheet_of[x] == l0);
    injective &= k.sheets[l0].classes.len() == h.order();
    let mut homomorphic = embed[h.identity()] == kh.identity();
    for a in 0..h.order() {
        homomorphic &= embed[h.inverse(a)] == kh.inverse(embed[a]);
        for b in 0..h.order() {
            let image = h.product(a, b).push_forward(&embed, kh.order());
            homomorphic &= image.close(&kh.product(embed[a], embed[b]), tol);
        }
    }
    report.check(
        "injection",
        injective && homomorphic,
        format!("H has {} points, sheet l0 has {}", h.order(), k.sheets[l0].classes.len()),
    );
    if !(injective && homomorphic) {
        return Ok(report);
    }

    let mut image = embed.clone();
    image.sort_unstable();
    let quotient_map = Subhypergroup::new(kh, &image).and_then(|sub| quotient(kh, &sub));
    let q = match quotient_map {
        Ok(q) => q,
        Err(e) => {
            report.check("quotient", false, e.to_string());
            return Ok(report);
        }
    };
    report.check("quotient", true, format!("K/H has {} classes", q.target.order()));

    match find_isomorphism(&q.target, l, tol) {
        Some(map) => {
            let dev = transport_deviation(&q.target, l, &map);
            report.check("isomorphism K/H = L", dev <= tol.max(0.0), format!("max deviation {}", sig12(dev)));
        }
        None => report.check("isomorphism K/H = L", false, "no isomorphism found"),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_group, direct_product, join, zq_family};
    use crate::hypergroup::validate_hypergroup;
    use crate::scalar::Rational;

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    #[test]
    fn trivial_field_gives_direct_product() {
        let (h, l) = (cyclic_group(6).unwrap(), zq_family(2, half()).unwrap());
        let field = Hyperfield::constant(l.clone(), h.clone(), &Subhypergroup::trivial(&h)).unwrap();
        assert!(validate_hyperfield(&field).unwrap().ok());
        let k = build_k(&field).unwrap();
        assert!(k.hypergroup.same_structure(&direct_product(&h, &l), 0.0));
    }

    #[test]
    fn full_field_gives_join() {
        let (h, l) = (cyclic_group(6).unwrap(), zq_family(2, half()).unwrap());
        let field = Hyperfield::constant(l.clone(), h.clone(), &Subhypergroup::whole(&h)).unwrap();
        let k = build_k(&field).unwrap();
        assert!(k.hypergroup.same_structure(&join(&h, &l).unwrap(), 0.0));
    }

    #[test]
    fn mixed_field_has_eight_points() {
        let (h, l) = (cyclic_group(6).unwrap(), zq_family(2, half()).unwrap());
        let c3 = Subhypergroup::new(&h, &[0, 2, 4]).unwrap();
        let field = Hyperfield::constant(l, h, &c3).unwrap();
        assert!(validate_hyperfield(&field).unwrap().ok());
        let k = build_k(&field).unwrap();
        assert_eq!(k.hypergroup.order(), 8);
        assert!(validate_hypergroup(k.hypergroup.raw(), 0.0).unwrap().ok());
        assert_eq!(k.sheet_of, vec![0, 0, 0, 0, 0, 0, 1, 1]);
        assert_eq!(k.coset_of, vec![0, 1, 2, 3, 4, 5, 0, 1]);
    }

    #[test]
    fn bad_field_is_reported() {
        let h = cyclic_group(6).unwrap();
        let l = zq_family(3, half()).unwrap();
        let c2 = Subhypergroup::new(&h, &[0, 3]).unwrap();
        let c3 = Subhypergroup::new(&h, &[0, 2, 4]).unwrap();
        let field = Hyperfield::new(l, h.clone(), vec![Subhypergroup::trivial(&h), c2, c3]).unwrap();
        let report = validate_hyperfield(&field).unwrap();
        assert!(report.count(Axiom::HyperfieldSymmetry) > 0);
        // ℓ1 • ℓ1 charges ℓ2 but [C2 * C2] = C2 does not contain C3
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::HyperfieldContainment && v.indices == vec![1, 1, 2]));
        assert!(matches!(build_k(&field), Err(Error::HyperfieldInvalid(_))));
    }

    #[test]
    fn dual_field_of_example_analog() {
        let (h, l) = (cyclic_group(6).unwrap(), zq_family(2, half()).unwrap());
        let c3 = Subhypergroup::new(&h, &[0, 2, 4]).unwrap();
        let field = Hyperfield::constant(l, h, &c3).unwrap();
        let dual = dual_hyperfield(&field, &SpectralConfig::default()).unwrap();
        for chi in 0..6 {
            let want: Vec<usize> = if chi % 3 == 0 { vec![0, 1] } else { vec![0] };
            assert_eq!(dual.y_sets[chi], want, "Y(chi{chi})");
        }
        // trivial character: Y = L, so L^(χ0) = {ρ0}
        assert_eq!(dual.field.assignment[0].members(), &[0]);
        assert_eq!(dual.field.assignment[1].members(), &[0, 1]);
    }

    #[test]
    fn exact_sequence_on_mixed_field() {
        let (h, l) = (cyclic_group(6).unwrap(), zq_family(2, half()).unwrap());
        let c3 = Subhypergroup::new(&h, &[0, 2, 4]).unwrap();
        let k = build_k(&Hyperfield::constant(l, h, &c3).unwrap()).unwrap();
        let report = exact_sequence_check(&k).unwrap();
        assert!(report.passed(), "{report}");
    }
}

#[cfg(test)]
mod duality_tests {
    use super::*;
    use crate::constructions::{cyclic_group, zq_family};
    use crate::scalar::Rational;

    #[test]
    fn duality_on_eight_point_field() {
        let (h, l) = (cyclic_group(6).unwrap(), zq_family(2, Rational::new(1, 2)).unwrap());
        let c3 = Subhypergroup::new(&h, &[0, 2, 4]).unwrap();
        let field = Hyperfield::constant(l, h, &c3).unwrap();
        let report = verify_duality(&field, &SpectralConfig::default()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn degenerate_fields_dualize_to_product_and_join() {
        let (h, l) = (cyclic_group(4).unwrap(), zq_family(2, Rational::new(1, 3)).unwrap());
        for (sub, name) in [(Subhypergroup::trivial(&h), "product case"), (Subhypergroup::whole(&h), "join case")] {
            let field = Hyperfield::constant(l.clone(), h.clone(), &sub).unwrap();
            let report = verify_duality(&field, &SpectralConfig::default()).unwrap();
            assert!(report.passed(), "{report}");
            assert!(report.checks.iter().any(|c| c.name.starts_with(name)));
        }
    }

    #[test]
    fn duality_over_zq3() {
        let (h, l) = (cyclic_group(6).unwrap(), zq_family(3, Rational::new(1, 2)).unwrap());
        let c2 = Subhypergroup::new(&h, &[0, 3]).unwrap();
        let field = Hyperfield::constant(l, h, &c2).unwrap();
        let report = verify_duality(&field, &SpectralConfig::default()).unwrap();
        assert!(report.passed(), "{report}");
    }
}
