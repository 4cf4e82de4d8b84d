//! Characters, dual hypergroups, annihilators and restriction.
//!
//! Characters are the joint eigenvectors of the regular representation
//! `A_i[j][k] = c[i][j][k]`: `A_i χ = χ(i) χ`. With Haar weights `w`, each
//! `A_i` has adjoint `A_{i⁻}` for `⟨f, g⟩ = Σ w_x f(x) conj(g(x))`, so the
//! combination
//!
//! ```text
//! B = Σ_i a_i (A_i + A_{i⁻}) + i·b_i (A_i − A_{i⁻})
//! ```
//!
//! is self-adjoint and, for generic real `a`, `b`, has simple spectrum whose
//! eigenvectors are the characters. The antisymmetric part is what separates
//! a complex character from its conjugate.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::Subhypergroup;
use crate::error::{Error, Result};
use crate::hypergroup::{FiniteHypergroup, Measure, RawHypergroup};
use crate::report::{complex_pair, sig12};
use crate::scalar::Scalar;

/// Default tolerance for anything computed from a character table.
pub const TAU_CHAR: f64 = 1e-9;

/// Knobs for the eigen-solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConfig {
    pub seed: u64,
    pub max_retries: usize,
    pub tau_char: f64,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            seed: 0x5eed_1234,
            max_retries: 8,
            tau_char: TAU_CHAR,
        }
    }
}

/// Values of a character, indexed by the host's elements.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    pub values: Vec<Complex64>,
}

impl Character {
    pub fn conj(&self) -> Character {
        Character {
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// `∫ χ dμ`.
    pub fn eval_measure<S: Scalar>(&self, m: &Measure<S>) -> Complex64 {
        self.values
            .iter()
            .zip(&m.weights)
            .map(|(&v, &w)| v * w.to_f64())
            .sum()
    }

    /// Largest deviation from the character identities on `host`:
    /// unit value, multiplicativity, hermitian symmetry and boundedness.
    pub fn defect(&self, host: &FiniteHypergroup<f64>) -> f64 {
        let n = host.order();
        let mut worst = (self.values[host.identity()] - 1.0).norm();
        for i in 0..n {
            worst = worst.max((self.values[host.inverse(i)] - self.values[i].conj()).norm());
            worst = worst.max(self.values[i].norm() - 1.0);
            for j in 0..n {
                let lhs: Complex64 = host
                    .support(i, j)
                    .iter()
                    .map(|&k| self.values[k] * host.constant(i, j, k))
                    .sum();
                worst = worst.max((lhs - self.values[i] * self.values[j]).norm());
            }
        }
        worst
    }
}

/// All characters of a finite commutative hypergroup with the weights that
/// make them orthogonal.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    host: FiniteHypergroup<f64>,
    rows: Vec<Character>,
    haar_weights: Vec<f64>,
    dual_weights: Vec<f64>,
    tau: f64,
}

fn snap(z: Complex64) -> Complex64 {
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    Complex64::new(clean(z.re), clean(z.im))
}

fn quantize(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

/// Ordering key: by argument in `[0, 2π)` then by decreasing modulus,
/// element by element. Puts the trivial character first and lists the
/// characters of `Z_N` as `k = 0, 1, …, N−1`.
fn row_key(values: &[Complex64], identity: usize) -> Vec<(i64, i64)> {
    values
        .iter()
        .enumerate()
        .filter(|&(x, _)| x != identity)
        .map(|(_, &v)| {
            if v.norm() < 1e-9 {
                return (0, 0);
            }
            let mut angle = v.im.atan2(v.re);
            if angle < 0.0 {
                angle += std::f64::consts::TAU;
            }
            let mut a = quantize(angle);
            if a == quantize(std::f64::consts::TAU) {
                a = 0;
            }
            (a, quantize(-v.norm()))
        })
        .collect()
}

impl CharacterTable {
    pub fn host(&self) -> &FiniteHypergroup<f64> {
        &self.host
    }

    pub fn rows(&self) -> &[Character] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Character {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn value(&self, row: usize, x: usize) -> Complex64 {
        self.rows[row].values[x]
    }

    pub fn haar_weights(&self) -> &[f64] {
        &self.haar_weights
    }

    pub fn dual_weights(&self) -> &[f64] {
        &self.dual_weights
    }

    pub fn tolerance(&self) -> f64 {
        self.tau
    }

    pub fn total_mass(&self) -> f64 {
        self.haar_weights.iter().sum()
    }

    /// `Σ_x w_x a(x) conj(b(x))`.
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        self.haar_weights
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&w, (&x, &y))| x * y.conj() * w)
            .sum()
    }

    /// Largest deviation from weighted orthogonality, including the diagonal
    /// norms `W / ĥ(χ)`.
    pub fn orthogonality_defect(&self) -> f64 {
        let total = self.total_mass();
        let mut worst: f64 = 0.0;
        for i in 0..self.len() {
            for j in 0..self.len() {
                let ip = self.inner(&self.rows[i].values, &self.rows[j].values);
                let want = if i == j { total / self.dual_weights[i] } else { 0.0 };
                worst = worst.max((ip - want).norm());
            }
        }
        worst
    }

    /// Index of the row closest to `values`, rejecting poor or ambiguous fits.
    pub fn match_row(&self, values: &[Complex64]) -> Result<usize> {
        let rows: Vec<&[Complex64]> = self.rows.iter().map(|r| r.values.as_slice()).collect();
        match_nearest(&rows, values, self.tau)
    }

    /// Row of the conjugate character.
    pub fn conjugate_row(&self, i: usize) -> Result<usize> {
        self.match_row(&self.rows[i].conj().values)
    }

    /// Plain-text table: Haar weights, then one line per character.
    pub fn report(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("characters: {}\n", self.len()));
        out.push_str("elements:");
        for name in self.host.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        out.push_str("haar:");
        for &w in &self.haar_weights {
            out.push(' ');
            out.push_str(&sig12(w));
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&format!("chi{i} dual_weight={}:", sig12(self.dual_weights[i])));
            for &v in &row.values {
                out.push(' ');
                out.push_str(&complex_pair(v));
            }
            out.push('\n');
        }
        out
    }
}

/// Nearest row by max-norm distance. Fails when the best distance exceeds
/// `tau` or when a second row also lies within `10·tau`.
pub fn match_nearest(rows: &[&[Complex64]], target: &[Complex64], tau: f64) -> Result<usize> {
    let dist = |r: &[Complex64]| r.iter().zip(target).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let mut scored: Vec<(f64, usize)> = rows.iter().enumerate().map(|(i, r)| (dist(r), i)).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let Some(&(best, idx)) = scored.first() else {
        return Err(Error::NoMatchingRow("empty table".into()));
    };
    if best > tau {
        return Err(Error::NoMatchingRow(format!("closest row {idx} is {best:.3e} away")));
    }
    if let Some(&(second, other)) = scored.get(1) {
        if second <= 10.0 * tau {
            return Err(Error::AmbiguousMatch(idx, other));
        }
    }
    Ok(idx)
}

fn hermitian_combination(host: &FiniteHypergroup<f64>, sqrt_w: &[f64], rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let n = host.order();
    let mut b = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        let a: f64 = rng.random_range(-1.0..1.0);
        let c: f64 = rng.random_range(-1.0..1.0);
        let inv = host.inverse(i);
        for j in 0..n {
            for k in 0..n {
                let fwd = host.constant(i, j, k);
                let bwd = host.constant(inv, j, k);
                b[(j, k)] += Complex64::new(a * (fwd + bwd), c * (fwd - bwd));
            }
        }
    }
    // D^{1/2} B D^{-1/2}, then remove rounding asymmetry
    let mut s = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            s[(j, k)] = b[(j, k)] * (sqrt_w[j] / sqrt_w[k]);
        }
    }
    let adj = s.adjoint();
    (s + adj) * Complex64::new(0.5, 0.0)
}

/// Character table of `host`, rows ordered with the trivial character first.
pub fn character_table<S: Scalar>(host: &FiniteHypergroup<S>, config: &SpectralConfig) -> Result<CharacterTable> {
    let haar = host.haar()?.to_f64();
    let host = host.to_f64(host.tolerance().max(config.tau_char * 1e-2));
    let n = host.order();
    let sqrt_w: Vec<f64> = haar.weights.iter().map(|w| w.sqrt()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut last_failure = None;

    for _attempt in 0..=config.max_retries {
        let s = hermitian_combination(&host, &sqrt_w, &mut rng);
        let eig = nalgebra::SymmetricEigen::new(s);
        let mut spectrum: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        spectrum.sort_by(f64::total_cmp);
        let scale = spectrum.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let min_gap = spectrum.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        if n > 1 && min_gap < 1e-6 * scale {
            last_failure = Some(Error::DegenerateSpectrum {
                retries: config.max_retries,
            });
            continue;
        }

        let mut rows = Vec::with_capacity(n);
        let mut bad = None;
        for col in 0..n {
            let v = eig.eigenvectors.column(col);
            let mut values: Vec<Complex64> = (0..n).map(|x| v[x] / sqrt_w[x]).collect();
            let unit = values[host.identity()];
            if unit.norm() < 1e-8 {
                bad = Some(format!("eigenvector {col} vanishes at the unit"));
                break;
            }
            for val in values.iter_mut() {
                *val = snap(*val / unit);
            }
            let ch = Character { values };
            let defect = ch.defect(&host);
            if defect > config.tau_char {
                bad = Some(format!("eigenvector {col} misses the character identities by {defect:.3e}"));
                break;
            }
            rows.push(ch);
        }
        if let Some(msg) = bad {
            last_failure = Some(Error::NonDiagonalizable(msg));
            continue;
        }

        rows.sort_by_cached_key(|r| row_key(&r.values, host.identity()));
        let total: f64 = haar.weights.iter().sum();
        let dual_weights = rows
            .iter()
            .map(|r| {
                let norm: f64 = r.values.iter().zip(&haar.weights).map(|(v, w)| v.norm_sqr() * w).sum();
                total / norm
            })
            .collect();
        return Ok(CharacterTable {
            host,
            rows,
            haar_weights: haar.weights,
            dual_weights,
            tau: config.tau_char,
        });
    }
    Err(last_failure.unwrap_or(Error::DegenerateSpectrum {
        retries: config.max_retries,
    }))
}

/// Dual hypergroup built on the rows of a character table.
#[derive(Debug, Clone)]
pub struct DualHypergroup {
    /// Element `i` is row `i` of the source table.
    pub hypergroup: FiniteHypergroup<f64>,
}

/// Structure constants of the dual: the pointwise product `χ_i χ_j`
/// expanded in the character basis,
/// `ĉ[i][j][k] = ĥ(χ_k)/W · Σ_x w_x χ_i(x) χ_j(x) conj(χ_k(x))`.
pub fn dual_hypergroup(table: &CharacterTable) -> Result<DualHypergroup> {
    let n = table.len();
    let tau = table.tolerance();
    let total = table.total_mass();
    let names = (0..n).map(|i| format!("chi{i}")).collect();
    let involution = (0..n).map(|i| table.conjugate_row(i)).collect::<Result<Vec<_>>>()?;
    let mut raw = RawHypergroup::zeros(names, 0, involution);
    let mut prod = vec![Complex64::new(0.0, 0.0); table.host().order()];
    for i in 0..n {
        for j in 0..n {
            for (x, p) in prod.iter_mut().enumerate() {
                *p = table.value(i, x) * table.value(j, x);
            }
            for k in 0..n {
                let c = table.inner(&prod, &table.row(k).values) * (table.dual_weights()[k] / total);
                if c.im.abs() > tau {
                    return Err(Error::InternalInconsistency(format!(
                        "dual constant ({i},{j},{k}) has imaginary part {:.3e}",
                        c.im
                    )));
                }
                if c.re < -tau {
                    return Err(Error::NotStrong { i, j, k, value: c.re });
                }
                let v = if c.re.abs() <= tau { 0.0 } else { c.re };
                raw.set(i, j, k, v);
            }
        }
    }
    let hypergroup = FiniteHypergroup::new(raw, tau)?;
    Ok(DualHypergroup { hypergroup })
}

/// Rows equal to 1 on every member of `sub`, i.e. `S^⊥`.
pub fn annihilator(table: &CharacterTable, sub: &[usize]) -> Result<Vec<usize>> {
    if !table.host().is_subhypergroup(sub) {
        return Err(Error::NotSubhypergroup(sub.to_vec()));
    }
    let tau = table.tolerance();
    Ok((0..table.len())
        .filter(|&r| sub.iter().all(|&s| (table.value(r, s) - 1.0).norm() <= tau))
        .collect())
}

/// Character table of a subhypergroup, remembering how its elements sit in
/// the host.
#[derive(Debug, Clone)]
pub struct SubTable {
    pub sub: Subhypergroup,
    pub table: CharacterTable,
}

impl SubTable {
    pub fn new<S: Scalar>(host: &FiniteHypergroup<S>, sub: &Subhypergroup, config: &SpectralConfig) -> Result<Self> {
        let restricted = host.restrict(sub.members())?;
        Ok(SubTable {
            sub: sub.clone(),
            table: character_table(&restricted, config)?,
        })
    }
}

/// Restricts row `row` of `table` to the subhypergroup and returns the
/// matching row of the subhypergroup's table.
pub fn restrict_character(table: &CharacterTable, sub: &SubTable, row: usize) -> Result<usize> {
    let values: Vec<Complex64> = sub.sub.members().iter().map(|&x| table.value(row, x)).collect();
    sub.table.match_row(&values)
}

/// Checks that the dual of the dual recovers `table`'s host. Each character
/// of the dual is matched to an evaluation map `χ ↦ χ(x)`, and the structure
/// constants are compared under that matching. Returns the matching
/// (dual-dual row → host element) and the largest tensor deviation.
pub fn double_dual(table: &CharacterTable, config: &SpectralConfig) -> Result<(Vec<usize>, f64)> {
    let dual = dual_hypergroup(table)?;
    let dual_table = character_table(&dual.hypergroup, config)?;
    let host = table.host();
    let n = host.order();
    let evaluations: Vec<Vec<Complex64>> = (0..n).map(|x| (0..table.len()).map(|r| table.value(r, x)).collect()).collect();
    let eval_refs: Vec<&[Complex64]> = evaluations.iter().map(|v| v.as_slice()).collect();
    let mut to_host = Vec::with_capacity(dual_table.len());
    for row in dual_table.rows() {
        to_host.push(match_nearest(&eval_refs, &row.values, config.tau_char)?);
    }
    let mut seen = vec![false; n];
    for &x in &to_host {
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::InternalInconsistency("double-dual matching is not injective".into()));
        }
    }
    let dd = dual_hypergroup(&dual_table)?.hypergroup;
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let d = dd.constant(a, b, c) - host.constant(to_host[a], to_host[b], to_host[c]);
                worst = worst.max(d.abs());
            }
        }
    }
    Ok((to_host, worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_group, orbit_hypergroup, negation, zq_family};
    use crate::scalar::Rational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_row(table: &CharacterTable, row: usize, want: &[Complex64]) {
        for (x, w) in want.iter().enumerate() {
            assert!(
                (table.value(row, x) - w).norm() < 1e-12,
                "row {row} at {x}: {} vs {w}",
                table.value(row, x)
            );
        }
    }

    #[test]
    fn z2_characters() {
        let t = character_table(&cyclic_group(2).unwrap(), &SpectralConfig::default()).unwrap();
        assert_row(&t, 0, &[c(1.0, 0.0), c(1.0, 0.0)]);
        assert_row(&t, 1, &[c(1.0, 0.0), c(-1.0, 0.0)]);
    }

    #[test]
    fn zq2_characters_solve_the_quadratic() {
        // χ(ℓ1)² = q + (1 − q) χ(ℓ1) has roots 1 and −q
        for (p, d) in [(1, 4), (1, 2), (1, 1)] {
            let q = p as f64 / d as f64;
            let t = character_table(&zq_family(2, Rational::new(p, d)).unwrap(), &SpectralConfig::default()).unwrap();
            assert_row(&t, 0, &[c(1.0, 0.0), c(1.0, 0.0)]);
            assert_row(&t, 1, &[c(1.0, 0.0), c(-q, 0.0)]);
        }
    }

    #[test]
    fn z6_characters_are_roots_of_unity() {
        let t = character_table(&cyclic_group(6).unwrap(), &SpectralConfig::default()).unwrap();
        for k in 0..6 {
            let want: Vec<Complex64> = (0..6)
                .map(|m| Complex64::from_polar(1.0, std::f64::consts::TAU * (k * m) as f64 / 6.0))
                .collect();
            assert_row(&t, k, &want);
        }
        assert!(t.orthogonality_defect() < 1e-12);
        assert!(t.dual_weights().iter().all(|&h| (h - 1.0).abs() < 1e-12));
    }

    #[test]
    fn dual_of_z6_is_z6() {
        let t = character_table(&cyclic_group(6).unwrap(), &SpectralConfig::default()).unwrap();
        let d = dual_hypergroup(&t).unwrap().hypergroup;
        let z6 = cyclic_group(6).unwrap().to_f64(1e-12);
        assert!(d.max_tensor_deviation(&z6) < 1e-12);
    }

    #[test]
    fn zq2_is_self_dual_and_double_dual_round_trips() {
        let zq = zq_family(2, Rational::new(1, 2)).unwrap();
        let t = character_table(&zq, &SpectralConfig::default()).unwrap();
        let d = dual_hypergroup(&t).unwrap().hypergroup;
        // (1, q²) = q·(1, 1) + (1 − q)·(1, −q)
        assert!((d.constant(1, 1, 0) - 0.5).abs() < 1e-12);
        assert!((d.constant(1, 1, 1) - 0.5).abs() < 1e-12);
        let (map, dev) = double_dual(&t, &SpectralConfig::default()).unwrap();
        assert_eq!(map, vec![0, 1]);
        assert!(dev < 1e-12);
    }

    #[test]
    fn annihilators_in_z6() {
        let z6 = cyclic_group(6).unwrap();
        let t = character_table(&z6, &SpectralConfig::default()).unwrap();
        assert_eq!(annihilator(&t, &[0]).unwrap(), (0..6).collect::<Vec<_>>());
        assert_eq!(annihilator(&t, &[0, 1, 2, 3, 4, 5]).unwrap(), vec![0]);
        assert_eq!(annihilator(&t, &[0, 2, 4]).unwrap(), vec![0, 3]);
        assert_eq!(annihilator(&t, &[0, 3]).unwrap(), vec![0, 2, 4]);
        assert!(matches!(annihilator(&t, &[0, 1]), Err(Error::NotSubhypergroup(_))));
    }

    #[test]
    fn restriction_to_c3() {
        let z6 = cyclic_group(6).unwrap();
        let cfg = SpectralConfig::default();
        let t = character_table(&z6, &cfg).unwrap();
        let c3 = Subhypergroup::new(&z6, &[0, 2, 4]).unwrap();
        let sub = SubTable::new(&z6, &c3, &cfg).unwrap();
        assert_eq!(restrict_character(&t, &sub, 0).unwrap(), 0);
        // χ1 on {0, 2, 4} is m ↦ exp(2πi m/6), i.e. the generator of Ĉ3
        let r1 = restrict_character(&t, &sub, 1).unwrap();
        let want: Vec<Complex64> = [0.0, 2.0, 4.0]
            .iter()
            .map(|m| Complex64::from_polar(1.0, std::f64::consts::TAU * m / 6.0))
            .collect();
        assert!(sub.table.row(r1).values.iter().zip(&want).all(|(a, b)| (a - b).norm() < 1e-12));
        assert_ne!(r1, 0);
        // the annihilator restricts to the trivial character
        assert_eq!(restrict_character(&t, &sub, 3).unwrap(), 0);
    }

    #[test]
    fn orbit_hypergroup_of_z5_has_cosine_characters() {
        let o = orbit_hypergroup(&cyclic_group(5).unwrap(), &[negation(5)]).unwrap();
        let t = character_table(&o, &SpectralConfig::default()).unwrap();
        for (row, k) in [(0, 0.0), (1, 1.0), (2, 2.0)] {
            let want: Vec<Complex64> = (0..3)
                .map(|m| c((std::f64::consts::TAU * k * m as f64 / 5.0).cos(), 0.0))
                .collect();
            assert_row(&t, row, &want);
        }
        assert!(t.orthogonality_defect() < 1e-12);
        let (_, dev) = double_dual(&t, &SpectralConfig::default()).unwrap();
        assert!(dev < 1e-10);
    }

    #[test]
    fn nearest_match_rejects_ambiguity() {
        let a = [c(1.0, 0.0)];
        let b = [c(1.0 + 1e-10, 0.0)];
        let rows: Vec<&[Complex64]> = vec![&a, &b];
        assert!(matches!(match_nearest(&rows, &a, 1e-9), Err(Error::AmbiguousMatch(_, _))));
        assert!(matches!(match_nearest(&rows, &[c(2.0, 0.0)], 1e-9), Err(Error::NoMatchingRow(_))));
    }

    #[test]
    fn determinism_under_seed() {
        let z = zq_family(3, Rational::new(1, 2)).unwrap();
        let a = character_table(&z, &SpectralConfig::default()).unwrap();
        let b = character_table(&z, &SpectralConfig::default()).unwrap();
        assert_eq!(a.report(), b.report());
    }
}
