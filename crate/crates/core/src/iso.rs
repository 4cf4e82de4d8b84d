//! Isomorphism search between small hypergroups.
//!
//! Elements are first bucketed by invariants that any isomorphism preserves
//! (Haar weight, self-inverseness, the sorted values of `δ_x * δ_x` and
//! `δ_x * δ_{x⁻}`). A backtracking search then extends a partial map one
//! element at a time, always picking the element with the fewest consistent
//! images and checking every structure constant among mapped elements.

use crate::hypergroup::FiniteHypergroup;
use crate::scalar::Scalar;

type Signature = (bool, bool, i64, Vec<i64>, Vec<i64>);

fn q(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

fn signatures<S: Scalar>(h: &FiniteHypergroup<S>) -> Option<Vec<Signature>> {
    let haar = h.haar().ok()?;
    Some(
        (0..h.order())
            .map(|x| {
                let inv = h.inverse(x);
                let mut sq: Vec<i64> = h.product(x, x).weights.iter().map(|w| q(w.to_f64())).collect();
                let mut norm: Vec<i64> = h.product(x, inv).weights.iter().map(|w| q(w.to_f64())).collect();
                sq.sort_unstable();
                norm.sort_unstable();
                (x == h.identity(), inv == x, q(haar.weights[x].to_f64()), sq, norm)
            })
            .collect(),
    )
}

struct Search<'a, S> {
    a: &'a FiniteHypergroup<S>,
    b: &'a FiniteHypergroup<S>,
    tol: f64,
    candidates: Vec<Vec<usize>>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl<S: Scalar> Search<'_, S> {
    fn consistent(&self, x: usize, y: usize) -> bool {
        let (a, b) = (self.a, self.b);
        let img = |t: usize| if t == x { Some(y) } else { self.map[t] };
        if let Some(iy) = img(a.inverse(x)) {
            if iy != b.inverse(y) {
                return false;
            }
        }
        if self.map[a.inverse(x)].is_none() && a.inverse(x) != x && self.used[b.inverse(y)] {
            return false;
        }
        let mapped: Vec<usize> = (0..a.order()).filter(|&t| t == x || self.map[t].is_some()).collect();
        for &p in &mapped {
            for &r in &mapped {
                if p != x && r != x {
                    // only the target index can involve x
                    if !a.constant(p, r, x).close(b.constant(img(p).unwrap(), img(r).unwrap(), y), self.tol) {
                        return false;
                    }
                    continue;
                }
                let (ip, ir) = (img(p).unwrap(), img(r).unwrap());
                for &k in &mapped {
                    if !a.constant(p, r, k).close(b.constant(ip, ir, img(k).unwrap()), self.tol) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn solve(&mut self, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        // most constrained unmapped element
        let mut best: Option<(usize, Vec<usize>)> = None;
        for x in 0..self.a.order() {
            if self.map[x].is_some() {
                continue;
            }
            let options: Vec<usize> = self.candidates[x]
                .iter()
                .copied()
                .filter(|&y| !self.used[y] && self.consistent(x, y))
                .collect();
            if options.is_empty() {
                return false;
            }
            if best.as_ref().is_none_or(|(_, o)| options.len() < o.len()) {
                best = Some((x, options));
            }
        }
        let (x, options) = best.expect("remaining > 0");
        for y in options {
            self.map[x] = Some(y);
            self.used[y] = true;
            if self.solve(remaining - 1) {
                return true;
            }
            self.map[x] = None;
            self.used[y] = false;
        }
        false
    }
}

/// An isomorphism `a → b` as an index map, if one exists. Constants are
/// compared with `Scalar::close` at `tol`.
pub fn find_isomorphism<S: Scalar>(a: &FiniteHypergroup<S>, b: &FiniteHypergroup<S>, tol: f64) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let (sa, sb) = (signatures(a)?, signatures(b)?);
    let candidates: Vec<Vec<usize>> = sa
        .iter()
        .map(|s| (0..b.order()).filter(|&y| &sb[y] == s).collect())
        .collect();
    let mut search = Search {
        a,
        b,
        tol,
        candidates,
        map: vec![None; a.order()],
        used: vec![false; b.order()],
    };
    if !search.solve(a.order()) {
        return None;
    }
    Some(search.map.into_iter().map(|m| m.expect("complete")).collect())
}

/// Largest `|a[i][j][k] − b[σi][σj][σk]|` under `map`.
pub fn transport_deviation<S: Scalar>(a: &FiniteHypergroup<S>, b: &FiniteHypergroup<S>, map: &[usize]) -> f64 {
    let n = a.order();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                worst = worst.max((a.constant(i, j, k) - b.constant(map[i], map[j], map[k])).magnitude());
            }
        }
    }
    worst
}

/// Whether `map` is a bijection that preserves unit and involution.
pub fn respects_structure<S: Scalar>(a: &FiniteHypergroup<S>, b: &FiniteHypergroup<S>, map: &[usize]) -> bool {
    let n = a.order();
    if map.len() != n || b.order() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &m in map {
        if m >= n || std::mem::replace(&mut seen[m], true) {
            return false;
        }
    }
    map[a.identity()] == b.identity() && (0..n).all(|x| map[a.inverse(x)] == b.inverse(map[x]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_group, direct_product, zq_family};
    use crate::scalar::Rational;

    #[test]
    fn finds_relabelled_copy() {
        let z6 = cyclic_group(6).unwrap();
        let z2 = cyclic_group(2).unwrap();
        let z3 = cyclic_group(3).unwrap();
        let prod = direct_product(&z2, &z3);
        let map = find_isomorphism(&z6, &prod, 0.0).expect("Z6 ≅ Z2 × Z3");
        assert!(respects_structure(&z6, &prod, &map));
        assert_eq!(transport_deviation(&z6, &prod, &map), 0.0);
    }

    #[test]
    fn rejects_non_isomorphic() {
        let z4 = cyclic_group(4).unwrap();
        let z2 = cyclic_group(2).unwrap();
        let klein = direct_product(&z2, &z2);
        assert!(find_isomorphism(&z4, &klein, 0.0).is_none());
        let a = zq_family(2, Rational::new(1, 2)).unwrap();
        let b = zq_family(2, Rational::new(1, 3)).unwrap();
        assert!(find_isomorphism(&a, &b, 0.0).is_none());
    }
}
