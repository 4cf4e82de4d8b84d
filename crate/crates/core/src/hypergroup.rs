//! Finite commutative hypergroups given by structure constants.
//!
//! A hypergroup on elements `0..n` is a nonnegative tensor `c[i][j][k]` with
//! `δ_i * δ_j = Σ_k c[i][j][k] δ_k`. [`validate_hypergroup`] checks the finite
//! axioms on a [`RawHypergroup`]; a [`FiniteHypergroup`] only exists once
//! those checks pass.

use std::fmt;

use crate::error::{Error, Result};
use crate::linsolve::solve_unique;
use crate::scalar::{Rational, Scalar};

/// Default tolerance for axiom checks on floating-point constants.
pub const TAU_AXIOM: f64 = 1e-10;

/// Unvalidated hypergroup data: names, unit, involution and a dense tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct RawHypergroup<S> {
    pub names: Vec<String>,
    pub identity: usize,
    pub involution: Vec<usize>,
    /// Dense tensor, `constants[(i * n + j) * n + k]`.
    pub constants: Vec<S>,
}

impl<S: Scalar> RawHypergroup<S> {
    /// All-zero tensor on `names` with the given unit and involution.
    pub fn zeros(names: Vec<String>, identity: usize, involution: Vec<usize>) -> Self {
        let n = names.len();
        RawHypergroup {
            names,
            identity,
            involution,
            constants: vec![S::zero(); n * n * n],
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> S {
        let n = self.order();
        self.constants[(i * n + j) * n + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: S) {
        let n = self.order();
        self.constants[(i * n + j) * n + k] = value;
    }

    pub fn add(&mut self, i: usize, j: usize, k: usize, value: S) {
        let n = self.order();
        let slot = &mut self.constants[(i * n + j) * n + k];
        *slot = *slot + value;
    }
}

/// Axioms checked by [`validate_hypergroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Nonnegativity,
    Normalization,
    Unit,
    Commutativity,
    Associativity,
    InvolutionOrder,
    InvolutionCompatibility,
    SupportCondition,
    // hyperfield conditions share the report type
    HyperfieldUnit,
    HyperfieldSymmetry,
    HyperfieldContainment,
    HyperfieldIdempotent,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Nonnegativity => "weights >= 0",
            Axiom::Normalization => "rows sum to 1",
            Axiom::Unit => "unit",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::InvolutionOrder => "involution order",
            Axiom::InvolutionCompatibility => "involution compatibility",
            Axiom::SupportCondition => "support condition",
            Axiom::HyperfieldUnit => "hyperfield (1) unit",
            Axiom::HyperfieldSymmetry => "hyperfield (1) symmetry",
            Axiom::HyperfieldContainment => "hyperfield (2) containment",
            Axiom::HyperfieldIdempotent => "hyperfield (3) idempotents",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub magnitude: f64,
}

/// Outcome of an axiom check. `ok()` holds exactly when nothing was violated.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: Axiom, indices: Vec<usize>, magnitude: f64) {
        self.violations.push(Violation {
            axiom,
            indices,
            magnitude,
        });
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }

    pub fn first(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return writeln!(f, "ok");
        }
        // the full list stays available on the struct
        const SHOWN: usize = 20;
        for v in self.violations.iter().take(SHOWN) {
            writeln!(f, "violation: {} at {:?} (magnitude {:.3e})", v.axiom, v.indices, v.magnitude)?;
        }
        if self.violations.len() > SHOWN {
            writeln!(f, "... and {} more", self.violations.len() - SHOWN)?;
        }
        Ok(())
    }
}

fn check_shape<S: Scalar>(raw: &RawHypergroup<S>) -> Result<()> {
    let n = raw.order();
    if n == 0 {
        return Err(Error::MalformedInput("hypergroup has no elements".into()));
    }
    if raw.constants.len() != n * n * n {
        return Err(Error::MalformedInput(format!(
            "tensor has {} entries, expected {}",
            raw.constants.len(),
            n * n * n
        )));
    }
    if raw.identity >= n {
        return Err(Error::MalformedInput(format!("identity index {} out of range", raw.identity)));
    }
    if raw.involution.len() != n {
        return Err(Error::MalformedInput(format!(
            "involution has {} entries, expected {n}",
            raw.involution.len()
        )));
    }
    let mut seen = vec![false; n];
    for &t in &raw.involution {
        if t >= n || seen[t] {
            return Err(Error::MalformedInput("involution is not a permutation".into()));
        }
        seen[t] = true;
    }
    Ok(())
}

/// Checks every finite hypergroup axiom on `raw`.
///
/// Exact scalars are compared exactly and `tol` is ignored; floating-point
/// scalars are compared within `tol`. Shape problems are errors, axiom
/// failures are entries in the report.
pub fn validate_hypergroup<S: Scalar>(raw: &RawHypergroup<S>, tol: f64) -> Result<ValidationReport> {
    check_shape(raw)?;
    let n = raw.order();
    let e = raw.identity;
    let inv = &raw.involution;
    let mut report = ValidationReport::default();

    for i in 0..n {
        if inv[inv[i]] != i {
            report.push(Axiom::InvolutionOrder, vec![i], 1.0);
        }
    }
    if inv[e] != e {
        report.push(Axiom::InvolutionOrder, vec![e], 1.0);
    }

    for i in 0..n {
        for j in 0..n {
            let mut total = S::zero();
            for k in 0..n {
                let v = raw.get(i, j, k);
                if v.is_negative_beyond(tol) {
                    report.push(Axiom::Nonnegativity, vec![i, j, k], v.magnitude());
                }
                total = total + v;
                if !v.close(raw.get(j, i, k), tol) {
                    report.push(Axiom::Commutativity, vec![i, j, k], (v - raw.get(j, i, k)).magnitude());
                }
                // δ_{i⁻} * δ_{j⁻} = (δ_j * δ_i)⁻
                let lhs = raw.get(inv[i], inv[j], k);
                let rhs = raw.get(j, i, inv[k]);
                if !lhs.close(rhs, tol) {
                    report.push(Axiom::InvolutionCompatibility, vec![i, j, k], (lhs - rhs).magnitude());
                }
            }
            if !total.close(S::one(), tol) {
                report.push(Axiom::Normalization, vec![i, j], (total - S::one()).magnitude());
            }
            let unit_mass = raw.get(i, j, e);
            let expect = inv[j] == i;
            if unit_mass.is_support(tol) != expect {
                report.push(Axiom::SupportCondition, vec![i, j], unit_mass.magnitude());
            }
        }
        for k in 0..n {
            let want = if i == k { S::one() } else { S::zero() };
            let left = raw.get(e, i, k);
            let right = raw.get(i, e, k);
            if !left.close(want, tol) {
                report.push(Axiom::Unit, vec![e, i, k], (left - want).magnitude());
            }
            if !right.close(want, tol) {
                report.push(Axiom::Unit, vec![i, e, k], (right - want).magnitude());
            }
        }
    }

    check_associativity(raw, tol, &mut report);
    Ok(report)
}

fn sparse_rows<S: Scalar>(raw: &RawHypergroup<S>) -> Vec<Vec<(usize, S)>> {
    let n = raw.order();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let base = (i * n + j) * n;
            rows.push(
                (0..n)
                    .filter_map(|k| {
                        let v = raw.constants[base + k];
                        (!v.is_zero()).then_some((k, v))
                    })
                    .collect(),
            );
        }
    }
    rows
}

fn check_associativity<S: Scalar>(raw: &RawHypergroup<S>, tol: f64, report: &mut ValidationReport) {
    let n = raw.order();
    let rows = sparse_rows(raw);
    let mut left = vec![S::zero(); n];
    let mut right = vec![S::zero(); n];
    for i in 0..n {
        for j in 0..n {
            let ij = &rows[i * n + j];
            for k in 0..n {
                left.iter_mut().for_each(|v| *v = S::zero());
                right.iter_mut().for_each(|v| *v = S::zero());
                // (δ_i * δ_j) * δ_k
                for &(m, a) in ij {
                    for &(t, b) in &rows[m * n + k] {
                        left[t] = left[t] + a * b;
                    }
                }
                // δ_i * (δ_j * δ_k)
                for &(m, a) in &rows[j * n + k] {
                    for &(t, b) in &rows[i * n + m] {
                        right[t] = right[t] + a * b;
                    }
                }
                for t in 0..n {
                    if !left[t].close(right[t], tol) {
                        report.push(Axiom::Associativity, vec![i, j, k, t], (left[t] - right[t]).magnitude());
                    }
                }
            }
        }
    }
}

/// A finitely supported measure on a hypergroup's elements.
///
/// Measures do not hold a reference to their host; operations take the host
/// explicitly and reject weight vectors whose length differs from its order.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure<S> {
    pub weights: Vec<S>,
    /// Set on measures produced as normalized Haar measures.
    pub haar: bool,
}

impl<S: Scalar> Measure<S> {
    pub fn new(weights: Vec<S>) -> Self {
        Measure { weights, haar: false }
    }

    pub fn point(n: usize, i: usize) -> Self {
        let mut weights = vec![S::zero(); n];
        weights[i] = S::one();
        Measure::new(weights)
    }

    pub fn zeros(n: usize) -> Self {
        Measure::new(vec![S::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> S {
        self.weights.iter().copied().sum()
    }

    pub fn is_probability(&self, tol: f64) -> bool {
        self.weights.iter().all(|w| !w.is_negative_beyond(tol)) && self.total().close(S::one(), tol)
    }

    pub fn support(&self, tol: f64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.weights[i].is_support(tol)).collect()
    }

    pub fn scale(&self, factor: S) -> Self {
        Measure::new(self.weights.iter().map(|&w| w * factor).collect())
    }

    pub fn add_scaled(&mut self, other: &Measure<S>, factor: S) {
        for (w, &o) in self.weights.iter_mut().zip(&other.weights) {
            *w = *w + o * factor;
        }
    }

    /// Largest weight difference, as `f64`.
    pub fn max_deviation(&self, other: &Measure<S>) -> f64 {
        self.weights
            .iter()
            .zip(&other.weights)
            .map(|(&a, &b)| (a - b).magnitude())
            .fold(0.0, f64::max)
    }

    pub fn close(&self, other: &Measure<S>, tol: f64) -> bool {
        self.len() == other.len() && self.weights.iter().zip(&other.weights).all(|(&a, &b)| a.close(b, tol))
    }

    /// Pushes mass forward along `map` onto `target_len` points.
    pub fn push_forward(&self, map: &[usize], target_len: usize) -> Self {
        let mut out = vec![S::zero(); target_len];
        for (i, &w) in self.weights.iter().enumerate() {
            out[map[i]] = out[map[i]] + w;
        }
        Measure::new(out)
    }

    pub fn to_f64(&self) -> Measure<f64> {
        Measure {
            weights: self.weights.iter().map(|w| w.to_f64()).collect(),
            haar: self.haar,
        }
    }
}

/// A validated finite commutative hypergroup.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteHypergroup<S> {
    raw: RawHypergroup<S>,
    tol: f64,
    support: Vec<Vec<usize>>,
}

impl<S: Scalar> FiniteHypergroup<S> {
    /// Validates `raw` and wraps it. `tol` is the comparison tolerance for
    /// floating-point constants and doubles as the support threshold.
    pub fn new(raw: RawHypergroup<S>, tol: f64) -> Result<Self> {
        let report = validate_hypergroup(&raw, tol)?;
        if !report.ok() {
            return Err(Error::AxiomFailure(report));
        }
        Ok(Self::assume_valid(raw, tol))
    }

    /// Wraps data whose axioms were already established.
    pub(crate) fn assume_valid(raw: RawHypergroup<S>, tol: f64) -> Self {
        let n = raw.order();
        let mut support = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                support.push((0..n).filter(|&k| raw.get(i, j, k).is_support(tol)).collect());
            }
        }
        FiniteHypergroup { raw, tol, support }
    }

    pub fn raw(&self) -> &RawHypergroup<S> {
        &self.raw
    }

    pub fn into_raw(self) -> RawHypergroup<S> {
        self.raw
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn order(&self) -> usize {
        self.raw.order()
    }

    pub fn identity(&self) -> usize {
        self.raw.identity
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.raw.involution[i]
    }

    pub fn involution(&self) -> &[usize] {
        &self.raw.involution
    }

    pub fn name(&self, i: usize) -> &str {
        &self.raw.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.raw.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.raw.names.iter().position(|n| n == name)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> S {
        self.raw.get(i, j, k)
    }

    /// Indices `k` with `c[i][j][k] > 0`.
    pub fn support(&self, i: usize, j: usize) -> &[usize] {
        &self.support[i * self.order() + j]
    }

    pub fn point(&self, i: usize) -> Measure<S> {
        Measure::point(self.order(), i)
    }

    /// `δ_i * δ_j`.
    pub fn product(&self, i: usize, j: usize) -> Measure<S> {
        let n = self.order();
        let base = (i * n + j) * n;
        Measure::new(self.raw.constants[base..base + n].to_vec())
    }

    fn check_host(&self, m: &Measure<S>) -> Result<()> {
        if m.len() != self.order() {
            return Err(Error::HostMismatch {
                expected: self.order(),
                found: m.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the point-mass convolution.
    pub fn convolve(&self, mu: &Measure<S>, nu: &Measure<S>) -> Result<Measure<S>> {
        self.check_host(mu)?;
        self.check_host(nu)?;
        let n = self.order();
        let mut out = vec![S::zero(); n];
        for i in 0..n {
            if mu.weights[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if nu.weights[j].is_zero() {
                    continue;
                }
                let w = mu.weights[i] * nu.weights[j];
                for &k in self.support(i, j) {
                    out[k] = out[k] + w * self.constant(i, j, k);
                }
            }
        }
        Ok(Measure::new(out))
    }

    /// Convolution of several measures, left to right.
    pub fn convolve_all(&self, measures: &[&Measure<S>]) -> Result<Measure<S>> {
        let mut acc = self.point(self.identity());
        for m in measures {
            acc = self.convolve(&acc, m)?;
        }
        Ok(acc)
    }

    /// The unique probability measure ω with δ_x * ω = ω for every x, found
    /// by solving the invariance equations directly.
    pub fn haar(&self) -> Result<Measure<S>> {
        let n = self.order();
        let e = self.identity();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for x in (0..n).filter(|&x| x != e) {
            for k in 0..n {
                let mut row: Vec<S> = (0..n).map(|i| self.constant(x, i, k)).collect();
                row[k] = row[k] - S::one();
                rows.push(row);
                rhs.push(S::zero());
            }
        }
        rows.push(vec![S::one(); n]);
        rhs.push(S::one());
        let weights = solve_unique(rows, rhs, self.tol.max(1e-13)).ok_or(Error::NoInvariantMeasure)?;
        if weights.iter().any(|w| !w.is_support(self.tol.min(1e-13))) {
            return Err(Error::NoInvariantMeasure);
        }
        Ok(Measure { weights, haar: true })
    }

    /// Whether `subset` contains the unit and is closed under involution and
    /// convolution supports.
    pub fn is_subhypergroup(&self, subset: &[usize]) -> bool {
        let n = self.order();
        let mut member = vec![false; n];
        for &s in subset {
            if s >= n {
                return false;
            }
            member[s] = true;
        }
        if !member[self.identity()] {
            return false;
        }
        subset.iter().all(|&s| member[self.inverse(s)])
            && subset
                .iter()
                .all(|&a| subset.iter().all(|&b| self.support(a, b).iter().all(|&k| member[k])))
    }

    /// The subhypergroup on `subset` as a hypergroup in its own right, with
    /// elements in increasing index order.
    pub fn restrict(&self, subset: &[usize]) -> Result<FiniteHypergroup<S>> {
        if !self.is_subhypergroup(subset) {
            return Err(Error::NotSubhypergroup(subset.to_vec()));
        }
        let mut members = subset.to_vec();
        members.sort_unstable();
        members.dedup();
        let pos = |x: usize| members.binary_search(&x).expect("closed subset");
        let names = members.iter().map(|&m| self.name(m).to_string()).collect();
        let involution = members.iter().map(|&m| pos(self.inverse(m))).collect();
        let mut raw = RawHypergroup::zeros(names, pos(self.identity()), involution);
        for (a, &x) in members.iter().enumerate() {
            for (b, &y) in members.iter().enumerate() {
                for &k in self.support(x, y) {
                    raw.set(a, b, pos(k), self.constant(x, y, k));
                }
            }
        }
        Ok(FiniteHypergroup::assume_valid(raw, self.tol))
    }

    /// Normalized Haar measure of the subhypergroup `subset`, viewed as a
    /// measure on the whole hypergroup.
    pub fn idempotent(&self, subset: &[usize]) -> Result<Measure<S>> {
        let sub = self.restrict(subset)?;
        let mut members = subset.to_vec();
        members.sort_unstable();
        members.dedup();
        let local = sub.haar()?;
        let mut weights = vec![S::zero(); self.order()];
        for (a, &m) in members.iter().enumerate() {
            weights[m] = local.weights[a];
        }
        Ok(Measure { weights, haar: true })
    }

    /// Same hypergroup with `f64` constants.
    pub fn to_f64(&self, tol: f64) -> FiniteHypergroup<f64> {
        let raw = RawHypergroup {
            names: self.raw.names.clone(),
            identity: self.raw.identity,
            involution: self.raw.involution.clone(),
            constants: self.raw.constants.iter().map(|c| c.to_f64()).collect(),
        };
        FiniteHypergroup::assume_valid(raw, tol)
    }

    /// Largest entrywise difference to another hypergroup of the same order.
    pub fn max_tensor_deviation(&self, other: &FiniteHypergroup<S>) -> f64 {
        if self.order() != other.order() {
            return f64::INFINITY;
        }
        self.raw
            .constants
            .iter()
            .zip(&other.raw.constants)
            .map(|(&a, &b)| (a - b).magnitude())
            .fold(0.0, f64::max)
    }

    /// Tensor, unit and involution equality (names ignored).
    pub fn same_structure(&self, other: &FiniteHypergroup<S>, tol: f64) -> bool {
        self.order() == other.order()
            && self.identity() == other.identity()
            && self.involution() == other.involution()
            && self
                .raw
                .constants
                .iter()
                .zip(&other.raw.constants)
                .all(|(&a, &b)| a.close(b, tol))
    }
}

impl FiniteHypergroup<Rational> {
    /// Validates exact data (tolerance unused).
    pub fn exact(raw: RawHypergroup<Rational>) -> Result<Self> {
        FiniteHypergroup::new(raw, 0.0)
    }
}

/// Convolution of two measures on `host`.
pub fn convolve<S: Scalar>(host: &FiniteHypergroup<S>, mu: &Measure<S>, nu: &Measure<S>) -> Result<Measure<S>> {
    host.convolve(mu, nu)
}

/// Normalized Haar measure of `host`.
pub fn haar_measure<S: Scalar>(host: &FiniteHypergroup<S>) -> Result<Measure<S>> {
    host.haar()
}

/// `e(S)`, the normalized Haar measure of the subhypergroup `subset`.
pub fn idempotent_of_subhypergroup<S: Scalar>(host: &FiniteHypergroup<S>, subset: &[usize]) -> Result<Measure<S>> {
    host.idempotent(subset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn zq2_raw(q: Rational) -> RawHypergroup<Rational> {
        let mut raw = RawHypergroup::zeros(vec!["l0".into(), "l1".into()], 0, vec![0, 1]);
        raw.set(0, 0, 0, r(1, 1));
        raw.set(0, 1, 1, r(1, 1));
        raw.set(1, 0, 1, r(1, 1));
        raw.set(1, 1, 0, q);
        raw.set(1, 1, 1, r(1, 1) - q);
        raw
    }

    fn cyclic_raw(n: usize) -> RawHypergroup<Rational> {
        let names = (0..n).map(|i| i.to_string()).collect();
        let inv = (0..n).map(|i| (n - i) % n).collect();
        let mut raw = RawHypergroup::zeros(names, 0, inv);
        for i in 0..n {
            for j in 0..n {
                raw.set(i, j, (i + j) % n, r(1, 1));
            }
        }
        raw
    }

    #[test]
    fn zq2_half_is_valid() {
        let report = validate_hypergroup(&zq2_raw(r(1, 2)), 0.0).unwrap();
        assert!(report.ok(), "{report}");
    }

    #[test]
    fn z3_is_valid() {
        assert!(validate_hypergroup(&cyclic_raw(3), 0.0).unwrap().ok());
    }

    #[test]
    fn zq2_three_halves_reports_negative_weight() {
        let report = validate_hypergroup(&zq2_raw(r(3, 2)), 0.0).unwrap();
        let v = report.first(Axiom::Nonnegativity).expect("negative entry");
        assert_eq!(v.indices, vec![1, 1, 1]);
        assert!((v.magnitude - 0.5).abs() < 1e-15);
    }

    #[test]
    fn zq2_zero_fails_support_condition() {
        let report = validate_hypergroup(&zq2_raw(r(0, 1)), 0.0).unwrap();
        assert_eq!(report.first(Axiom::SupportCondition).unwrap().indices, vec![1, 1]);
    }

    #[test]
    fn malformed_shapes_are_errors() {
        let mut raw = cyclic_raw(3);
        raw.constants.pop();
        assert!(matches!(validate_hypergroup(&raw, 0.0), Err(Error::MalformedInput(_))));
        let mut raw = cyclic_raw(3);
        raw.involution = vec![0, 0, 1];
        assert!(matches!(validate_hypergroup(&raw, 0.0), Err(Error::MalformedInput(_))));
        let mut raw = cyclic_raw(3);
        raw.identity = 7;
        assert!(matches!(validate_hypergroup(&raw, 0.0), Err(Error::MalformedInput(_))));
    }

    #[test]
    fn broken_associativity_is_witnessed() {
        // spread ε1•ε2 without compensating ε1•ε1: not associative
        let mut raw = cyclic_raw(3);
        raw.set(1, 2, 0, r(1, 2));
        raw.set(1, 2, 1, r(1, 4));
        raw.set(1, 2, 2, r(1, 4));
        raw.set(2, 1, 0, r(1, 2));
        raw.set(2, 1, 1, r(1, 4));
        raw.set(2, 1, 2, r(1, 4));
        let report = validate_hypergroup(&raw, 0.0).unwrap();
        assert!(report.count(Axiom::Associativity) > 0);
        assert_eq!(report.count(Axiom::Commutativity), 0);
    }

    #[test]
    fn convolution_examples() {
        let zq = FiniteHypergroup::exact(zq2_raw(r(1, 2))).unwrap();
        let sq = zq.convolve(&zq.point(1), &zq.point(1)).unwrap();
        assert_eq!(sq.weights, vec![r(1, 2), r(1, 2)]);
        let unit = zq.convolve(&zq.point(0), &zq.point(1)).unwrap();
        assert_eq!(unit.weights, vec![r(0, 1), r(1, 1)]);

        let z6 = FiniteHypergroup::exact(cyclic_raw(6)).unwrap();
        let m = z6.convolve(&z6.point(2), &z6.point(3)).unwrap();
        assert_eq!(m, z6.point(5));
    }

    #[test]
    fn host_mismatch() {
        let z6 = FiniteHypergroup::exact(cyclic_raw(6)).unwrap();
        let err = z6.convolve(&Measure::point(3, 0), &z6.point(1)).unwrap_err();
        assert!(matches!(err, Error::HostMismatch { expected: 6, found: 3 }));
    }

    #[test]
    fn haar_examples() {
        let z2 = FiniteHypergroup::exact(cyclic_raw(2)).unwrap();
        assert_eq!(z2.haar().unwrap().weights, vec![r(1, 2), r(1, 2)]);
        let zq = FiniteHypergroup::exact(zq2_raw(r(1, 2))).unwrap();
        let w = zq.haar().unwrap();
        assert!(w.haar);
        assert_eq!(w.weights, vec![r(1, 3), r(2, 3)]);
    }

    #[test]
    fn haar_matches_inverse_unit_mass_formula() {
        // oracle: unnormalized Haar weight is 1 / c[x][x⁻][e]
        for q in [r(1, 4), r(1, 2), r(1, 1)] {
            let zq = FiniteHypergroup::exact(zq2_raw(q)).unwrap();
            let unnorm: Vec<Rational> = (0..2)
                .map(|x| Rational::from_integer(1) / zq.constant(x, zq.inverse(x), 0))
                .collect();
            let total: Rational = unnorm.iter().copied().sum();
            let expect: Vec<Rational> = unnorm.iter().map(|&w| w / total).collect();
            assert_eq!(zq.haar().unwrap().weights, expect);
        }
    }

    #[test]
    fn idempotent_examples() {
        let z6 = FiniteHypergroup::exact(cyclic_raw(6)).unwrap();
        assert_eq!(z6.idempotent(&[0]).unwrap(), Measure { weights: z6.point(0).weights, haar: true });
        let c3 = z6.idempotent(&[0, 2, 4]).unwrap();
        let third = r(1, 3);
        let zero = r(0, 1);
        assert_eq!(c3.weights, vec![third, zero, third, zero, third, zero]);
        assert_eq!(z6.convolve(&c3, &c3).unwrap().weights, c3.weights);
        for s in [0, 2, 4] {
            assert_eq!(z6.convolve(&z6.point(s), &c3).unwrap().weights, c3.weights);
        }
        assert!(matches!(z6.idempotent(&[0, 1]), Err(Error::NotSubhypergroup(_))));

        let zq = FiniteHypergroup::exact(zq2_raw(r(1, 2))).unwrap();
        assert_eq!(zq.idempotent(&[0, 1]).unwrap().weights, vec![r(1, 3), r(2, 3)]);
    }

    #[test]
    fn float_validation_uses_tolerance() {
        let raw = zq2_raw(r(1, 2));
        let mut f = RawHypergroup {
            names: raw.names.clone(),
            identity: 0,
            involution: raw.involution.clone(),
            constants: raw.constants.iter().map(|c| c.to_f64()).collect(),
        };
        f.set(1, 1, 0, 0.5 + 1e-12);
        assert!(validate_hypergroup(&f, TAU_AXIOM).unwrap().ok());
        f.set(1, 1, 0, 0.5 + 1e-6);
        assert!(!validate_hypergroup(&f, TAU_AXIOM).unwrap().ok());
    }
}
