//! Stock hypergroups and the operations that derive new ones.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::hypergroup::{FiniteHypergroup, Measure, RawHypergroup};
use crate::hyperfield::{build_k, Hyperfield};
use crate::scalar::{Rational, Scalar};

/// Default bound on the order accepted by [`enumerate_subhypergroups`].
pub const SUBHYPERGROUP_SIZE_BOUND: usize = 24;

/// A subset of a host hypergroup closed under unit, involution and
/// convolution supports. Members are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subhypergroup {
    members: Vec<usize>,
}

impl Subhypergroup {
    pub fn new<S: Scalar>(host: &FiniteHypergroup<S>, members: &[usize]) -> Result<Self> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if !host.is_subhypergroup(&members) {
            return Err(Error::NotSubhypergroup(members));
        }
        Ok(Subhypergroup { members })
    }

    pub fn trivial<S: Scalar>(host: &FiniteHypergroup<S>) -> Self {
        Subhypergroup {
            members: vec![host.identity()],
        }
    }

    pub fn whole<S: Scalar>(host: &FiniteHypergroup<S>) -> Self {
        Subhypergroup {
            members: (0..host.order()).collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_superset_of(&self, other: &Subhypergroup) -> bool {
        other.members.iter().all(|&x| self.contains(x))
    }
}

/// Least subhypergroup containing `seed`: iterate involution and support
/// closure to a fixpoint.
pub fn generated_subhypergroup<S: Scalar>(host: &FiniteHypergroup<S>, seed: &[usize]) -> Subhypergroup {
    let n = host.order();
    let mut member = vec![false; n];
    let mut list = Vec::new();
    let add = |x: usize, member: &mut Vec<bool>, list: &mut Vec<usize>| {
        if !member[x] {
            member[x] = true;
            list.push(x);
        }
    };
    add(host.identity(), &mut member, &mut list);
    for &s in seed {
        add(s, &mut member, &mut list);
    }
    loop {
        let before = list.len();
        let snapshot = list.clone();
        for &a in &snapshot {
            add(host.inverse(a), &mut member, &mut list);
            for &b in &snapshot {
                for &k in host.support(a, b) {
                    add(k, &mut member, &mut list);
                }
            }
        }
        if list.len() == before {
            break;
        }
    }
    list.sort_unstable();
    Subhypergroup { members: list }
}

/// All subhypergroups, ordered by size and then lexicographically.
///
/// Every subhypergroup arises from `{e}` by repeatedly adjoining one element
/// and closing, so a search over that lattice finds them all.
pub fn enumerate_subhypergroups<S: Scalar>(host: &FiniteHypergroup<S>, bound: usize) -> Result<Vec<Subhypergroup>> {
    if host.order() > bound {
        return Err(Error::SizeBound {
            order: host.order(),
            bound,
        });
    }
    let start = generated_subhypergroup(host, &[]);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(start.members.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(sub) = queue.pop_front() {
        for x in 0..host.order() {
            if sub.contains(x) {
                continue;
            }
            let mut seed = sub.members.clone();
            seed.push(x);
            let next = generated_subhypergroup(host, &seed);
            if seen.insert(next.members.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut all: Vec<Subhypergroup> = seen.into_iter().map(|members| Subhypergroup { members }).collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    Ok(all)
}

/// The projection `H → H/H0` together with the class data behind it.
#[derive(Debug, Clone)]
pub struct QuotientMap<S> {
    pub source: FiniteHypergroup<S>,
    pub target: FiniteHypergroup<S>,
    /// Source index to class index.
    pub class_of: Vec<usize>,
    /// Members of each class; the first member is the representative.
    pub classes: Vec<Vec<usize>>,
    /// `δ_rep * e(H0)` for every class.
    pub class_measures: Vec<Measure<S>>,
}

impl<S: Scalar> QuotientMap<S> {
    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn project(&self, m: &Measure<S>) -> Measure<S> {
        m.push_forward(&self.class_of, self.classes.len())
    }
}

/// Quotient hypergroup `H/H0` whose points are the measures `δ_h * e(H0)`.
pub fn quotient<S: Scalar>(host: &FiniteHypergroup<S>, sub: &Subhypergroup) -> Result<QuotientMap<S>> {
    let tol = host.tolerance();
    let e_sub = host.idempotent(sub.members())?;
    let n = host.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_measures: Vec<Measure<S>> = Vec::new();
    for h in 0..n {
        let m = host.convolve(&host.point(h), &e_sub)?;
        if let Some(c) = class_measures.iter().position(|cm| cm.close(&m, tol)) {
            class_of[h] = c;
            classes[c].push(h);
        } else {
            class_of[h] = classes.len();
            classes.push(vec![h]);
            class_measures.push(m);
        }
    }
    // class measures must live on the class they name
    for (c, cm) in class_measures.iter().enumerate() {
        if let Some(&x) = cm.support(tol).iter().find(|&&x| class_of[x] != c) {
            return Err(Error::DecompositionFailure(format!(
                "class of {} charges {} from another class",
                host.name(classes[c][0]),
                host.name(x)
            )));
        }
    }

    let count = classes.len();
    let names = classes.iter().map(|c| format!("[{}]", host.name(c[0]))).collect();
    let involution = classes.iter().map(|c| class_of[host.inverse(c[0])]).collect();
    let mut raw = RawHypergroup::zeros(names, class_of[host.identity()], involution);
    for a in 0..count {
        for b in 0..count {
            let prod = host.convolve(&class_measures[a], &class_measures[b])?;
            let coeffs = prod.push_forward(&class_of, count);
            let mut rebuilt = Measure::zeros(n);
            for (c, &w) in coeffs.weights.iter().enumerate() {
                if !w.is_zero() {
                    rebuilt.add_scaled(&class_measures[c], w);
                }
            }
            if !rebuilt.close(&prod, tol) {
                return Err(Error::DecompositionFailure(format!(
                    "product of classes {} and {} is not constant on classes",
                    a, b
                )));
            }
            for (c, &w) in coeffs.weights.iter().enumerate() {
                raw.set(a, b, c, w);
            }
        }
    }
    let target = FiniteHypergroup::new(raw, tol)?;
    Ok(QuotientMap {
        source: host.clone(),
        target,
        class_of,
        classes,
        class_measures,
    })
}

/// Componentwise product `H × L`, laid out sheet by sheet over `L`: element
/// `(h, l)` has index `l·|H| + h`.
pub fn direct_product<S: Scalar>(h: &FiniteHypergroup<S>, l: &FiniteHypergroup<S>) -> FiniteHypergroup<S> {
    let (nh, nl) = (h.order(), l.order());
    let idx = |a: usize, b: usize| b * nh + a;
    let mut names = Vec::with_capacity(nh * nl);
    let mut involution = Vec::with_capacity(nh * nl);
    for b in 0..nl {
        for a in 0..nh {
            names.push(format!("({},{})", h.name(a), l.name(b)));
            involution.push(idx(h.inverse(a), l.inverse(b)));
        }
    }
    let mut raw = RawHypergroup::zeros(names, idx(h.identity(), l.identity()), involution);
    for b1 in 0..nl {
        for a1 in 0..nh {
            for b2 in 0..nl {
                for a2 in 0..nh {
                    for &b3 in l.support(b1, b2) {
                        for &a3 in h.support(a1, a2) {
                            raw.set(
                                idx(a1, b1),
                                idx(a2, b2),
                                idx(a3, b3),
                                h.constant(a1, a2, a3) * l.constant(b1, b2, b3),
                            );
                        }
                    }
                }
            }
        }
    }
    FiniteHypergroup::assume_valid(raw, h.tolerance().max(l.tolerance()))
}

fn unique_name(taken: &[String], name: &str) -> String {
    let mut candidate = name.to_string();
    while taken.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

/// Join `H ∨ L`: `H` followed by the non-unit elements of `L`. Inside `H`
/// nothing changes, `h * l = l` for `l ≠ l0`, and products in `L` keep their
/// weights except that mass on `l0` is spread by the Haar measure of `H`.
pub fn join<S: Scalar>(h: &FiniteHypergroup<S>, l: &FiniteHypergroup<S>) -> Result<FiniteHypergroup<S>> {
    let nh = h.order();
    let l_rest: Vec<usize> = (0..l.order()).filter(|&x| x != l.identity()).collect();
    let n = nh + l_rest.len();
    // index in the join of an L element other than the unit
    let l_pos = |x: usize| nh + l_rest.iter().position(|&y| y == x).expect("non-unit");
    let mut names: Vec<String> = h.names().to_vec();
    for &x in &l_rest {
        let name = unique_name(&names, l.name(x));
        names.push(name);
    }
    let mut involution: Vec<usize> = h.involution().to_vec();
    involution.extend(l_rest.iter().map(|&x| l_pos(l.inverse(x))));
    let mut raw = RawHypergroup::zeros(names, h.identity(), involution);
    let haar = h.haar()?;

    for a in 0..nh {
        for b in 0..nh {
            for &k in h.support(a, b) {
                raw.set(a, b, k, h.constant(a, b, k));
            }
        }
        for &x in &l_rest {
            raw.set(a, l_pos(x), l_pos(x), S::one());
            raw.set(l_pos(x), a, l_pos(x), S::one());
        }
    }
    for &x in &l_rest {
        for &y in &l_rest {
            for &k in l.support(x, y) {
                let w = l.constant(x, y, k);
                if k == l.identity() {
                    for t in 0..nh {
                        raw.add(l_pos(x), l_pos(y), t, w * haar.weights[t]);
                    }
                } else {
                    raw.add(l_pos(x), l_pos(y), l_pos(k), w);
                }
            }
        }
    }
    debug_assert_eq!(raw.order(), n);
    FiniteHypergroup::new(raw, h.tolerance().max(l.tolerance()))
}

/// Substitution `S(Q × L : Q → H)` with `Q = H/H0`, realized as the
/// hyperfield extension with `φ(l0) = {h0}` and `φ(l) = H0` elsewhere.
pub fn substitution<S: Scalar>(
    h: &FiniteHypergroup<S>,
    h0: &Subhypergroup,
    l: &FiniteHypergroup<S>,
) -> Result<FiniteHypergroup<S>> {
    let assignment = (0..l.order())
        .map(|x| {
            if x == l.identity() {
                Subhypergroup::trivial(h)
            } else {
                h0.clone()
            }
        })
        .collect();
    let field = Hyperfield::new(l.clone(), h.clone(), assignment)?;
    Ok(build_k(&field)?.hypergroup)
}

/// Cyclic group `Z_N` as a hypergroup on `0..N`.
pub fn cyclic_group(order: usize) -> Result<FiniteHypergroup<Rational>> {
    if order == 0 {
        return Err(Error::MalformedInput("cyclic group of order 0".into()));
    }
    let names = (0..order).map(|i| i.to_string()).collect();
    let involution = (0..order).map(|i| (order - i) % order).collect();
    let mut raw = RawHypergroup::zeros(names, 0, involution);
    for i in 0..order {
        for j in 0..order {
            raw.set(i, j, (i + j) % order, Rational::from_integer(1));
        }
    }
    FiniteHypergroup::exact(raw)
}

/// q-deformation `Z_q(n)` of the cyclic group, `0 < q ≤ 1`.
///
/// * `n = 2`: `ε1 • ε1 = q ε0 + (1 − q) ε1`.
/// * `n = 3`: `ε1 • ε2 = q ε0 + (1 − q)/2 (ε1 + ε2)` and
///   `ε1 • ε1 = (1 − q)/2 ε1 + (1 + q)/2 ε2` (mirrored for `ε2 • ε2`).
/// * `n ≥ 4`: `ε_i • ε_j = ε_{i+j}` off the inverse pairs and
///   `ε_i • ε_{n−i} = q ε0 + (1 − q)/(n − 1) Σ_{k≠0} ε_k`. This rule is only
///   associative at `q = 1`; other values fail validation.
///
/// Every result goes through the axiom checker.
pub fn zq_family(n: usize, q: Rational) -> Result<FiniteHypergroup<Rational>> {
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    if n < 2 {
        return Err(Error::MalformedInput(format!("Z_q(n) needs n >= 2, got {n}")));
    }
    if q <= zero || q > one {
        return Err(Error::MalformedInput(format!("Z_q(n) needs 0 < q <= 1, got {q}")));
    }
    let names = (0..n).map(|i| format!("l{i}")).collect();
    let involution = (0..n).map(|i| (n - i) % n).collect();
    let mut raw = RawHypergroup::zeros(names, 0, involution);
    for i in 0..n {
        raw.set(0, i, i, one);
        raw.set(i, 0, i, one);
    }
    match n {
        2 => {
            raw.set(1, 1, 0, q);
            raw.set(1, 1, 1, one - q);
        }
        3 => {
            let two = Rational::from_integer(2);
            let spread = (one - q) / two;
            let forward = (one + q) / two;
            for (a, b) in [(1, 2), (2, 1)] {
                raw.set(a, b, 0, q);
                raw.set(a, b, 1, spread);
                raw.set(a, b, 2, spread);
            }
            raw.set(1, 1, 1, spread);
            raw.set(1, 1, 2, forward);
            raw.set(2, 2, 2, spread);
            raw.set(2, 2, 1, forward);
        }
        _ => {
            let spread = (one - q) / Rational::from_integer(n as i128 - 1);
            for i in 1..n {
                for j in 1..n {
                    if (i + j) % n == 0 {
                        raw.set(i, j, 0, q);
                        for k in 1..n {
                            raw.set(i, j, k, spread);
                        }
                    } else {
                        raw.set(i, j, (i + j) % n, one);
                    }
                }
            }
        }
    }
    FiniteHypergroup::exact(raw)
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn check_automorphism<S: Scalar>(host: &FiniteHypergroup<S>, perm: &[usize]) -> Result<()> {
    let n = host.order();
    let describe = || format!("{perm:?}");
    if perm.len() != n {
        return Err(Error::NotAutomorphism(describe()));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::NotAutomorphism(describe()));
        }
        seen[p] = true;
    }
    if perm[host.identity()] != host.identity() {
        return Err(Error::NotAutomorphism(describe()));
    }
    let tol = host.tolerance();
    for i in 0..n {
        if perm[host.inverse(i)] != host.inverse(perm[i]) {
            return Err(Error::NotAutomorphism(describe()));
        }
        for j in 0..n {
            for k in 0..n {
                if !host.constant(i, j, k).close(host.constant(perm[i], perm[j], perm[k]), tol) {
                    return Err(Error::NotAutomorphism(describe()));
                }
            }
        }
    }
    Ok(())
}

/// Orbit hypergroup of `host` under the automorphism group generated by
/// `generators`. Orbits are ordered by their smallest member, and
/// `δ_A * δ_B` is the push-forward of the average of `δ_a * δ_b` over
/// `a ∈ A`, `b ∈ B`.
pub fn orbit_hypergroup<S: Scalar>(host: &FiniteHypergroup<S>, generators: &[Vec<usize>]) -> Result<FiniteHypergroup<S>> {
    for g in generators {
        check_automorphism(host, g)?;
    }
    let n = host.order();
    let identity: Vec<usize> = (0..n).collect();
    let mut group: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let next = compose(g, &p);
            if group.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }

    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if orbit_of[x] != usize::MAX {
            continue;
        }
        let members: BTreeSet<usize> = group.iter().map(|p| p[x]).collect();
        for &m in &members {
            orbit_of[m] = orbits.len();
        }
        orbits.push(members.into_iter().collect());
    }

    let count = orbits.len();
    let names = orbits
        .iter()
        .map(|o| {
            let inner: Vec<&str> = o.iter().map(|&m| host.name(m)).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    let involution = orbits.iter().map(|o| orbit_of[host.inverse(o[0])]).collect();
    let mut raw = RawHypergroup::zeros(names, orbit_of[host.identity()], involution);
    for a in 0..count {
        for b in 0..count {
            let pairs = S::from_usize(orbits[a].len() * orbits[b].len());
            for &x in &orbits[a] {
                for &y in &orbits[b] {
                    for &k in host.support(x, y) {
                        raw.add(a, b, orbit_of[k], host.constant(x, y, k) / pairs);
                    }
                }
            }
        }
    }
    FiniteHypergroup::new(raw, host.tolerance())
}

/// Negation `x ↦ −x` on `Z_N`, the usual action for orbit examples.
pub fn negation(order: usize) -> Vec<usize> {
    (0..order).map(|i| (order - i) % order).collect()
}
