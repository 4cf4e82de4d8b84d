//! The built-in catalog: small named hypergroups and their pairwise
//! products and joins.

use crate::constructions::{cyclic_group, direct_product, join, negation, orbit_hypergroup, zq_family};
use crate::error::Result;
use crate::hypergroup::FiniteHypergroup;
use crate::scalar::Rational;

/// Largest order kept when combining catalog members.
pub const CATALOG_ORDER_BOUND: usize = 24;

/// Generators of the catalog, in a fixed order.
pub fn base_catalog() -> Result<Vec<(String, FiniteHypergroup<Rational>)>> {
    let mut out = Vec::new();
    for (p, q) in [(1, 4), (1, 2), (1, 1)] {
        out.push((format!("Zq(2,{})", Rational::new(p, q)), zq_family(2, Rational::new(p, q))?));
    }
    out.push(("Zq(3,1/2)".to_string(), zq_family(3, Rational::new(1, 2))?));
    for n in 1..=12 {
        out.push((format!("Z{n}"), cyclic_group(n)?));
    }
    for n in [5, 6] {
        let z = cyclic_group(n)?;
        out.push((format!("Z{n}/neg"), orbit_hypergroup(&z, &[negation(n)])?));
    }
    Ok(out)
}

/// The base catalog followed by every product `A x B` (unordered, including
/// `A x A`) and every join `A v B` (ordered) of order at most
/// [`CATALOG_ORDER_BOUND`].
pub fn full_catalog() -> Result<Vec<(String, FiniteHypergroup<Rational>)>> {
    let base = base_catalog()?;
    let mut out = base.clone();
    for (i, (na, a)) in base.iter().enumerate() {
        for (nb, b) in &base[i..] {
            if a.order() * b.order() <= CATALOG_ORDER_BOUND {
                out.push((format!("{na} x {nb}"), direct_product(a, b)));
            }
        }
    }
    for (na, a) in &base {
        for (nb, b) in &base {
            if a.order() + b.order() - 1 <= CATALOG_ORDER_BOUND {
                out.push((format!("{na} v {nb}"), join(a, b)?));
            }
        }
    }
    Ok(out)
}

/// Looks a hypergroup up by name among the base catalog.
pub fn lookup(name: &str) -> Result<Option<FiniteHypergroup<Rational>>> {
    Ok(base_catalog()?.into_iter().find(|(n, _)| n == name).map(|(_, h)| h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let base = base_catalog().unwrap();
        assert_eq!(base.len(), 18);
        let full = full_catalog().unwrap();
        assert!(full.iter().all(|(_, h)| h.order() <= CATALOG_ORDER_BOUND));
        assert!(full.len() > 300);
    }
}
