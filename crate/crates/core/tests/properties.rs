//! Randomized invariants over catalog hypergroups.

use proptest::prelude::*;

use hyperfield::catalog::base_catalog;
use hyperfield::constructions::{direct_product, join, quotient, Subhypergroup};
use hyperfield::hypergroup::{FiniteHypergroup, Measure};
use hyperfield::io::{parse_definition, serialize_definition};
use hyperfield::Rational;

fn catalog() -> Vec<FiniteHypergroup<Rational>> {
    base_catalog().unwrap().into_iter().map(|(_, h)| h).collect()
}

/// A probability measure on `n` points with small rational weights.
fn measure(n: usize, raw: &[u8]) -> Measure<Rational> {
    let w: Vec<i128> = (0..n).map(|i| raw[i % raw.len()] as i128 % 5).collect();
    let total: i128 = w.iter().sum::<i128>().max(1);
    let mut m = Measure::new(w.iter().map(|&x| Rational::new(x, total)).collect());
    if w.iter().all(|&x| x == 0) {
        m = Measure::point(n, 0);
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_is_associative_and_commutative(idx in 0usize..18, a in prop::collection::vec(any::<u8>(), 1..8),
        b in prop::collection::vec(any::<u8>(), 1..8), c in prop::collection::vec(any::<u8>(), 1..8)) {
        let h = &catalog()[idx];
        let n = h.order();
        let (ma, mb, mc) = (measure(n, &a), measure(n, &b), measure(n, &c));
        let left = h.convolve(&h.convolve(&ma, &mb).unwrap(), &mc).unwrap();
        let right = h.convolve(&ma, &h.convolve(&mb, &mc).unwrap()).unwrap();
        prop_assert_eq!(&left.weights, &right.weights);
        prop_assert_eq!(h.convolve(&ma, &mb).unwrap().weights, h.convolve(&mb, &ma).unwrap().weights);
        prop_assert_eq!(left.total(), Rational::from_integer(1));
    }

    #[test]
    fn haar_is_invariant(idx in 0usize..18, x in any::<prop::sample::Index>()) {
        let h = &catalog()[idx];
        let w = h.haar().unwrap();
        let x = x.index(h.order());
        let shifted = h.convolve(&h.point(x), &w).unwrap();
        prop_assert_eq!(shifted.weights, w.weights);
    }

    #[test]
    fn definition_round_trips(i in 0usize..18, j in 0usize..18, use_join in any::<bool>()) {
        let cat = catalog();
        let h = if use_join { join(&cat[i], &cat[j]).unwrap() } else { direct_product(&cat[i], &cat[j]) };
        let text = serialize_definition(&h, None);
        let back = FiniteHypergroup::exact(parse_definition(&text).unwrap()).unwrap();
        prop_assert!(back.same_structure(&h, 0.0));
        prop_assert_eq!(serialize_definition(&back, None), text);
    }

    #[test]
    fn projection_commutes_with_convolution(idx in 0usize..18, seed in any::<prop::sample::Index>(),
        a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let h = &catalog()[idx];
        let subs = hyperfield::constructions::enumerate_subhypergroups(h, 24).unwrap();
        let sub: &Subhypergroup = &subs[seed.index(subs.len())];
        let q = quotient(h, sub).unwrap();
        let (a, b) = (a.index(h.order()), b.index(h.order()));
        let lhs = q.project(&h.product(a, b));
        let rhs = q.target.product(q.class_of[a], q.class_of[b]);
        prop_assert_eq!(lhs.weights, rhs.weights);
    }
}
