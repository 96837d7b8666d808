//! Completely isolated and isolated subsemigroups.
//!
//! Completely isolated subsemigroups are exactly the nonempty subsets T
//! with both T and its complement closed under the product, found here by
//! 2-coloring backtracking with propagation. Isolated subsemigroups are the
//! closed sets of the operator "close under products and under roots",
//! enumerated as joins of the principal closed sets.

use std::collections::VecDeque;

use crate::bitset::Bits;
use crate::error::{Error, Result};
use crate::green::subgroup_g;
use crate::universe::SemigroupUniverse;

/// Default node budget for the 2-coloring search.
pub const DEFAULT_SEARCH_BUDGET: usize = 10_000_000;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Color {
    In,
    Out,
}

struct TwoColoring<'a> {
    u: &'a SemigroupUniverse,
    order: Vec<usize>,
    nodes: usize,
    budget: usize,
    found: Vec<Vec<usize>>,
}

impl<'a> TwoColoring<'a> {
    /// Enforces the closure rules on both colors; returns false on conflict.
    fn propagate(&self, state: &mut [Option<Color>], mut dirty: VecDeque<usize>) -> bool {
        let n = self.u.len();
        let t = self.u.table();
        while let Some(x) = dirty.pop_front() {
            let cx = state[x].expect("dirty elements are colored");
            for y in 0..n {
                if state[y] != Some(cx) {
                    continue;
                }
                for (a, b) in [(x, y), (y, x)] {
                    let p = t[a * n + b] as usize;
                    match state[p] {
                        None => {
                            state[p] = Some(cx);
                            dirty.push_back(p);
                        }
                        Some(cp) => {
                            if cp != cx {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn solve(&mut self, state: Vec<Option<Color>>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(format!(
                "2-coloring search exceeded {} nodes",
                self.budget
            )));
        }
        let next = self.order.iter().copied().find(|&i| state[i].is_none());
        let Some(next) = next else {
            let members: Vec<usize> = (0..self.u.len())
                .filter(|&i| state[i] == Some(Color::In))
                .collect();
            if !members.is_empty() {
                self.found.push(members);
            }
            return Ok(());
        };
        for color in [Color::In, Color::Out] {
            let mut branch = state.to_vec();
            branch[next] = Some(color);
            if self.propagate(&mut branch, VecDeque::from([next])) {
                self.solve(branch)?;
            }
        }
        Ok(())
    }
}

/// All completely isolated subsemigroups, as sorted index lists ordered by
/// (size, content).
pub fn completely_isolated(u: &SemigroupUniverse, budget: usize) -> Result<Vec<Vec<usize>>> {
    let n = u.len();
    let t = u.table();
    // decide high fan-out elements first
    let mut order: Vec<usize> = (0..n).collect();
    let fan_out = |i: usize| -> usize {
        let row: std::collections::HashSet<u32> = (0..n).map(|j| t[i * n + j]).collect();
        let col: std::collections::HashSet<u32> = (0..n).map(|j| t[j * n + i]).collect();
        row.len() + col.len()
    };
    let fans: Vec<usize> = (0..n).map(fan_out).collect();
    order.sort_by_key(|&i| usize::MAX - fans[i]);
    let mut search = TwoColoring {
        u,
        order,
        nodes: 0,
        budget,
        found: Vec::new(),
    };
    search.solve(vec![None; n])?;
    let mut out = search.found;
    out.sort_by_key(|v| (v.len(), v.clone()));
    out.dedup();
    Ok(out)
}

/// Power set of each element: {a, a², a³, …} up to the cycle.
fn power_bits(u: &SemigroupUniverse) -> Vec<Bits> {
    (0..u.len())
        .map(|a| {
            let mut bits = Bits::new(u.len());
            let mut x = a;
            while bits.insert(x) {
                x = u.mul_idx(x, a);
            }
            bits
        })
        .collect()
}

fn close_isolated(u: &SemigroupUniverse, powers: &[Bits], start: &Bits) -> Bits {
    let mut set = start.clone();
    loop {
        let mut changed = false;
        let members = set.indices();
        for &a in &members {
            for &b in &members {
                if set.insert(u.mul_idx(a, b)) {
                    changed = true;
                }
            }
        }
        for a in 0..u.len() {
            if !set.get(a) && powers[a].intersects(&set) && set.insert(a) {
                changed = true;
            }
        }
        if !changed {
            return set;
        }
    }
}

/// All isolated subsemigroups: the closure system of "product-closed and
/// root-closed" sets, generated as joins of the principal closures.
pub fn isolated(u: &SemigroupUniverse) -> Result<Vec<Vec<usize>>> {
    u.table();
    let powers = power_bits(u);
    let mut closed: Vec<Bits> = Vec::new();
    for a in 0..u.len() {
        let mut seed = Bits::new(u.len());
        seed.set(a);
        let c = close_isolated(u, &powers, &seed);
        if !closed.contains(&c) {
            closed.push(c);
        }
    }
    loop {
        let mut added = false;
        let snapshot = closed.clone();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                let join = close_isolated(u, &powers, &snapshot[i].union(&snapshot[j]));
                if !closed.contains(&join) {
                    closed.push(join);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut out: Vec<Vec<usize>> = closed.iter().map(|b| b.indices()).collect();
    out.sort_by_key(|v| (v.len(), v.clone()));
    Ok(out)
}

/// Whether a set of element indices is an isolated subsemigroup.
pub fn is_isolated(u: &SemigroupUniverse, members: &[usize]) -> bool {
    let set = Bits::from_indices(u.len(), members);
    if set.is_empty() {
        return false;
    }
    for &a in members {
        for &b in members {
            if !set.get(u.mul_idx(a, b)) {
                return false;
            }
        }
    }
    let powers = power_bits(u);
    (0..u.len()).all(|a| set.get(a) || !powers[a].intersects(&set))
}

/// Report of the §9 units-splitting bijection on the computed list.
#[derive(Debug, Clone)]
pub struct UnitsSplitReport {
    pub units: Vec<usize>,
    pub units_listed: bool,
    pub closed_under_adjoin: bool,
    pub closed_under_remove: bool,
    pub bijection: bool,
}

impl UnitsSplitReport {
    pub fn ok(&self) -> bool {
        self.units_listed && self.closed_under_adjoin && self.closed_under_remove && self.bijection
    }
}

/// Verifies, on the computed completely-isolated list, that T ↦ T ∪ G and
/// T ↦ T ∖ G pair up the subsemigroups disjoint from the unit group G with
/// those properly containing it.
pub fn units_split_check(u: &SemigroupUniverse, list: &[Vec<usize>]) -> Result<UnitsSplitReport> {
    let id = u
        .identity_idx()
        .ok_or_else(|| Error::UnsupportedUniverse("universe has no identity element".into()))?;
    let units = subgroup_g(u, id)?;
    let gbits = Bits::from_indices(u.len(), &units);
    let listed: Vec<Bits> = list
        .iter()
        .map(|v| Bits::from_indices(u.len(), v))
        .collect();
    let units_listed = listed.iter().any(|b| b == &gbits);
    let disjoint: Vec<&Bits> = listed.iter().filter(|b| !b.intersects(&gbits)).collect();
    let containing: Vec<&Bits> = listed
        .iter()
        .filter(|b| gbits.is_subset_of(b) && **b != gbits)
        .collect();
    let closed_under_adjoin = disjoint.iter().all(|b| listed.contains(&b.union(&gbits)));
    let closed_under_remove = containing
        .iter()
        .all(|b| listed.contains(&b.difference(&gbits)));
    let bijection = disjoint.len() == containing.len();
    Ok(UnitsSplitReport {
        units,
        units_listed,
        closed_under_adjoin,
        closed_under_remove,
        bijection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Family;
    use crate::product::Product;
    use crate::universe::family_universe;

    fn set_of(u: &SemigroupUniverse, pred: impl Fn(usize) -> bool) -> Vec<usize> {
        (0..u.len()).filter(|&i| pred(i)).collect()
    }

    #[test]
    fn istar2_completely_isolated() {
        let u = family_universe(Family::IStar, Product::Natural, 2).unwrap();
        let found = completely_isolated(&u, DEFAULT_SEARCH_BUDGET).unwrap();
        let units = set_of(&u, |i| u.element(i).is_in(Family::S));
        let non_units = set_of(&u, |i| !u.element(i).is_in(Family::S));
        let all = set_of(&u, |_| true);
        let mut expect = vec![units, non_units, all];
        expect.sort_by_key(|v| (v.len(), v.clone()));
        assert_eq!(found, expect);
    }

    #[test]
    fn pistar2_completely_isolated() {
        let u = family_universe(Family::PIStar, Product::Star, 2).unwrap();
        let found = completely_isolated(&u, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(found.len(), 3);
        for t in &found {
            assert!(is_isolated(&u, t));
        }
    }

    #[test]
    fn wpistar2_isolated_members() {
        let u = family_universe(Family::PIStar, Product::Circ, 2).unwrap();
        let found = isolated(&u).unwrap();
        // wPI*₂, S₂, wPI*₂∖S₂ and the singleton groups of the idempotents
        // of corank ≤ 1: {τ_N}, {ε₁}, {ε₂}
        assert_eq!(found.len(), 6);
        let ci = completely_isolated(&u, DEFAULT_SEARCH_BUDGET).unwrap();
        for t in &ci {
            assert!(found.contains(t));
        }
    }

    #[test]
    fn units_split_on_istar2() {
        let u = family_universe(Family::IStar, Product::Natural, 2).unwrap();
        let list = completely_isolated(&u, DEFAULT_SEARCH_BUDGET).unwrap();
        let report = units_split_check(&u, &list).unwrap();
        assert!(report.ok(), "{report:?}");
    }
}
