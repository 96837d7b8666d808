//! Green's relations, ideals, maximal subgroups and the maximal
//! idempotent-separating congruence μ.
//!
//! The structural path classifies by dom/ran/rank; the table-based oracle
//! recomputes everything from principal ideals and is kept as an
//! independent cross-check.

use std::collections::HashMap;

use crate::bitset::Bits;
use crate::error::{Error, Result};
use crate::universe::{EquivRelation, SemigroupUniverse};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenRelation {
    R,
    L,
    H,
    D,
    J,
}

impl std::str::FromStr for GreenRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "R" => Ok(GreenRelation::R),
            "L" => Ok(GreenRelation::L),
            "H" => Ok(GreenRelation::H),
            "D" => Ok(GreenRelation::D),
            "J" => Ok(GreenRelation::J),
            other => Err(Error::InvalidParams(format!("unknown relation: {other}"))),
        }
    }
}

fn group_by_key<K: std::hash::Hash + Eq>(keys: Vec<K>) -> EquivRelation {
    let mut ids: HashMap<K, u32> = HashMap::new();
    let raw: Vec<u32> = keys
        .into_iter()
        .map(|k| {
            let next = ids.len() as u32;
            *ids.entry(k).or_insert(next)
        })
        .collect();
    EquivRelation::from_class_of(&raw)
}

/// Structural Green classes: R by dom, L by ran, H by both, D and J by rank.
/// Valid on the inverse universes PI*(⋆), wPI*(∘), I*(natural) and their
/// partial-injection subfamilies.
pub fn green_classes(u: &SemigroupUniverse, which: GreenRelation) -> Result<EquivRelation> {
    if !u.has_inverses() {
        return Err(Error::UnsupportedUniverse(
            "structural Green classes need an inverse-closed PI* universe".into(),
        ));
    }
    let data: Vec<_> = u.elements().iter().map(|e| e.domain_data()).collect();
    Ok(match which {
        GreenRelation::R => group_by_key(data.into_iter().map(|d| d.dom).collect()),
        GreenRelation::L => group_by_key(data.into_iter().map(|d| d.ran).collect()),
        GreenRelation::H => group_by_key(data.into_iter().map(|d| (d.dom, d.ran)).collect()),
        GreenRelation::D | GreenRelation::J => {
            group_by_key(data.into_iter().map(|d| d.rank).collect())
        }
    })
}

/// Ideal-based oracle: R and L from principal one-sided ideals, J from
/// principal two-sided ideals, D as the join R ∨ L and H as the meet.
pub fn green_oracle(u: &SemigroupUniverse, which: GreenRelation) -> EquivRelation {
    let n = u.len();
    let t = u.table();
    let right = |a: usize| -> Bits {
        let mut b = Bits::new(n);
        b.set(a);
        for x in 0..n {
            b.set(t[a * n + x] as usize);
        }
        b
    };
    let left = |a: usize| -> Bits {
        let mut b = Bits::new(n);
        b.set(a);
        for x in 0..n {
            b.set(t[x * n + a] as usize);
        }
        b
    };
    match which {
        GreenRelation::R => group_by_key((0..n).map(right).collect()),
        GreenRelation::L => group_by_key((0..n).map(left).collect()),
        GreenRelation::H => green_oracle(u, GreenRelation::R).meet(&green_oracle(u, GreenRelation::L)),
        GreenRelation::D => green_oracle(u, GreenRelation::R).join(&green_oracle(u, GreenRelation::L)),
        GreenRelation::J => {
            let keys: Vec<Bits> = (0..n)
                .map(|a| {
                    let mut b = Bits::new(n);
                    b.set(a);
                    for x in 0..n {
                        b.set(t[a * n + x] as usize);
                        b.set(t[x * n + a] as usize);
                        for y in 0..n {
                            b.set(t[x * n + t[a * n + y] as usize] as usize);
                        }
                    }
                    b
                })
                .collect();
            group_by_key(keys)
        }
    }
}

/// The rank-filtered ideal J_ξ = {a : rank(a) < ξ}, 1 ≤ ξ ≤ n+1; verified
/// to be a two-sided ideal before returning.
pub fn ideal(u: &SemigroupUniverse, xi: usize) -> Result<Vec<usize>> {
    if xi < 1 || xi > u.degree() + 1 {
        return Err(Error::InvalidParams(format!(
            "ideal index must lie in 1..={}, got {xi}",
            u.degree() + 1
        )));
    }
    let members: Vec<usize> = (0..u.len())
        .filter(|&i| u.element(i).rank() < xi)
        .collect();
    let inside = Bits::from_indices(u.len(), &members);
    for &a in &members {
        for x in 0..u.len() {
            if !inside.get(u.mul_idx(a, x)) || !inside.get(u.mul_idx(x, a)) {
                return Err(Error::InvalidParams(format!(
                    "rank filter below {xi} is not an ideal here"
                )));
            }
        }
    }
    Ok(members)
}

/// Every two-sided ideal, computed as the union-closure of the distinct
/// principal two-sided ideals.
pub fn all_ideals(u: &SemigroupUniverse) -> Vec<Vec<usize>> {
    let n = u.len();
    let t = u.table();
    let mut principals: Vec<Bits> = Vec::new();
    for a in 0..n {
        let mut b = Bits::new(n);
        b.set(a);
        for x in 0..n {
            b.set(t[a * n + x] as usize);
            b.set(t[x * n + a] as usize);
            for y in 0..n {
                b.set(t[x * n + t[a * n + y] as usize] as usize);
            }
        }
        if !principals.contains(&b) {
            principals.push(b);
        }
    }
    let mut ideals: Vec<Bits> = principals.clone();
    loop {
        let mut added = false;
        for i in 0..ideals.len() {
            for j in 0..ideals.len() {
                let union = ideals[i].union(&ideals[j]);
                if !ideals.contains(&union) {
                    ideals.push(union);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut out: Vec<Vec<usize>> = ideals.iter().map(|b| b.indices()).collect();
    out.sort_by_key(|v| (v.len(), v.clone()));
    out
}

/// The maximal subgroup G(e): the H-class of the idempotent `e`, verified
/// closed under the product.
pub fn subgroup_g(u: &SemigroupUniverse, e: usize) -> Result<Vec<usize>> {
    if u.mul_idx(e, e) != e {
        return Err(Error::NotIdempotent(e));
    }
    let inv = |i: usize| {
        u.inverse_idx(i)
            .ok_or_else(|| Error::UnsupportedUniverse("subgroup needs inverses".into()))
    };
    let mut members = Vec::new();
    for x in 0..u.len() {
        let xi = inv(x)?;
        if u.mul_idx(x, xi) == e && u.mul_idx(xi, x) == e {
            members.push(x);
        }
    }
    let set = Bits::from_indices(u.len(), &members);
    for &x in &members {
        for &y in &members {
            if !set.get(u.mul_idx(x, y)) {
                return Err(Error::InvalidParams(
                    "H-class of idempotent failed the closure check".into(),
                ));
            }
        }
    }
    Ok(members)
}

/// μ = {(a,b) : a⁻¹ea = b⁻¹eb for every idempotent e}, the maximal
/// idempotent-separating congruence.
pub fn mu_congruence(u: &SemigroupUniverse) -> Result<EquivRelation> {
    if !u.has_inverses() {
        return Err(Error::UnsupportedUniverse("μ needs an inverse universe".into()));
    }
    let keys: Vec<Vec<u32>> = (0..u.len())
        .map(|a| {
            let ai = u.inverse_idx(a).unwrap();
            u.idempotent_indices()
                .iter()
                .map(|&e| u.mul_idx(u.mul_idx(ai, e), a) as u32)
                .collect()
        })
        .collect();
    Ok(group_by_key(keys))
}

pub fn is_fundamental(u: &SemigroupUniverse) -> Result<bool> {
    Ok(mu_congruence(u)?.is_identity())
}

/// First μ-related pair of distinct elements, if any.
pub fn mu_witness(u: &SemigroupUniverse) -> Result<Option<(usize, usize)>> {
    let mu = mu_congruence(u)?;
    for class in mu.classes() {
        if class.len() > 1 {
            return Ok(Some((class[0], class[1])));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Family;
    use crate::named;
    use crate::product::Product;
    use crate::universe::family_universe;

    #[test]
    fn dclass_count_pistar3() {
        let u = family_universe(Family::PIStar, Product::Star, 3).unwrap();
        let d = green_classes(&u, GreenRelation::D).unwrap();
        assert_eq!(d.num_classes(), 4);
    }

    #[test]
    fn gamma_d_but_not_r_related() {
        let u = family_universe(Family::PIStar, Product::Star, 3).unwrap();
        let g = u.index_of(&named::gamma(1, 2, 3).unwrap()).unwrap();
        let gi = u
            .index_of(&named::gamma(1, 2, 3).unwrap().inverse().unwrap())
            .unwrap();
        assert!(green_classes(&u, GreenRelation::D).unwrap().same(g, gi));
        assert!(!green_classes(&u, GreenRelation::R).unwrap().same(g, gi));
    }

    #[test]
    fn identity_h_related_to_permutations() {
        let u = family_universe(Family::PIStar, Product::Star, 2).unwrap();
        let id = u.identity_idx().unwrap();
        let swap = u
            .index_of(&named::from_permutation(&[1, 0]).unwrap())
            .unwrap();
        assert!(green_classes(&u, GreenRelation::H).unwrap().same(id, swap));
    }

    #[test]
    fn oracle_matches_structural_on_pistar2() {
        let u = family_universe(Family::PIStar, Product::Star, 2).unwrap();
        for which in [
            GreenRelation::R,
            GreenRelation::L,
            GreenRelation::H,
            GreenRelation::D,
            GreenRelation::J,
        ] {
            assert_eq!(green_oracle(&u, which), green_classes(&u, which).unwrap());
        }
    }

    #[test]
    fn singleton_universe_single_class() {
        let u = crate::universe::closure(
            &crate::universe::GeneratorSet::new(Product::Star, vec![named::zero(2).unwrap()]),
            4,
        )
        .unwrap();
        assert_eq!(green_oracle(&u, GreenRelation::R).num_classes(), 1);
    }

    #[test]
    fn ideals_of_pistar2() {
        let u = family_universe(Family::PIStar, Product::Star, 2).unwrap();
        assert_eq!(ideal(&u, 1).unwrap().len(), 1);
        assert_eq!(ideal(&u, 2).unwrap().len(), 10);
        assert_eq!(ideal(&u, 3).unwrap().len(), 12);
        assert!(ideal(&u, 0).is_err());
        assert!(ideal(&u, 4).is_err());
        let all = all_ideals(&u);
        assert_eq!(all.len(), 3);
        assert_eq!(
            all,
            vec![
                ideal(&u, 1).unwrap(),
                ideal(&u, 2).unwrap(),
                ideal(&u, 3).unwrap()
            ]
        );
    }

    #[test]
    fn unit_group_order() {
        let u = family_universe(Family::PIStar, Product::Star, 3).unwrap();
        let id = u.identity_idx().unwrap();
        assert_eq!(subgroup_g(&u, id).unwrap().len(), 6);
        let tau_n = u.index_of(&named::tau_set(&[1, 2, 3], 3).unwrap()).unwrap();
        assert_eq!(subgroup_g(&u, tau_n).unwrap().len(), 1);
    }

    #[test]
    fn tau_subgroup_in_istar3() {
        let u = family_universe(Family::IStar, Product::Natural, 3).unwrap();
        let tau = u.index_of(&named::tau(1, 2, 3).unwrap()).unwrap();
        assert_eq!(subgroup_g(&u, tau).unwrap().len(), 2);
        let non_idem = u.index_of(&named::xi(1, 2, 3, 3).unwrap()).unwrap();
        assert!(matches!(
            subgroup_g(&u, non_idem),
            Err(Error::NotIdempotent(_))
        ));
    }

    #[test]
    fn mu_trivial_on_pistar_not_on_istar() {
        let pistar = family_universe(Family::PIStar, Product::Star, 2).unwrap();
        assert!(is_fundamental(&pistar).unwrap());
        let istar = family_universe(Family::IStar, Product::Natural, 2).unwrap();
        assert!(!is_fundamental(&istar).unwrap());
        let (a, b) = mu_witness(&istar).unwrap().unwrap();
        let id = istar.identity_idx().unwrap();
        let swap = istar
            .index_of(&named::from_permutation(&[1, 0]).unwrap())
            .unwrap();
        let mut pair = [a, b];
        pair.sort_unstable();
        let mut expect = [id, swap];
        expect.sort_unstable();
        assert_eq!(pair, expect);
    }

    #[test]
    fn mu_contained_in_h() {
        for (family, product) in [
            (Family::PIStar, Product::Star),
            (Family::PIStar, Product::Circ),
            (Family::IStar, Product::Natural),
        ] {
            let u = family_universe(family, product, 2).unwrap();
            let mu = mu_congruence(&u).unwrap();
            let h = green_classes(&u, GreenRelation::H).unwrap();
            assert!(mu.refines(&h));
        }
    }
}
