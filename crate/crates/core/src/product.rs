//! The three multiplications and the natural partial order.
//!
//! All kernels stack the two diagrams and take the equivalence closure with
//! union-find. The natural product identifies the middle row directly; the
//! star product first adjoins one auxiliary strand that is merged with every
//! point block, so any outer vertex reaching the auxiliary component comes
//! back out as a point. The circle product never stacks: generalised lines
//! survive only on an exact bottom-set/top-set match.

use std::collections::HashMap;

use crate::element::{Bipartition, Family};
use crate::error::{Error, Result};

/// Selects which multiplication an operation or universe uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Product {
    Natural,
    Star,
    Circ,
}

impl Product {
    pub fn apply(self, a: &Bipartition, b: &Bipartition) -> Result<Bipartition> {
        match self {
            Product::Natural => natural_mul(a, b),
            Product::Star => star_mul(a, b),
            Product::Circ => circ_mul(a, b),
        }
    }

    /// Smallest family every operand must belong to.
    pub fn required_family(self) -> Family {
        match self {
            Product::Natural => Family::C,
            Product::Star | Product::Circ => Family::PIStar,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Product::Natural => "natural",
            Product::Star => "star",
            Product::Circ => "circ",
        }
    }
}

impl std::str::FromStr for Product {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(Product::Natural),
            "star" => Ok(Product::Star),
            "circ" => Ok(Product::Circ),
            other => Err(Error::InvalidParams(format!("unknown product: {other}"))),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            self.parent[ra] = rb;
            self.size[rb] += self.size[ra];
        } else {
            self.parent[rb] = ra;
            self.size[ra] += self.size[rb];
        }
    }
}

fn check_degrees(a: &Bipartition, b: &Bipartition) -> Result<usize> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(a.degree())
}

fn check_family(a: &Bipartition, family: Family) -> Result<()> {
    if !a.is_in(family) {
        return Err(Error::OutsideFamily {
            family,
            element: a.format(),
        });
    }
    Ok(())
}

/// The natural multiplication of C_n: identify the bottom row of `a` with
/// the top row of `b` and read off the induced partition of the outer rows.
pub fn natural_mul(a: &Bipartition, b: &Bipartition) -> Result<Bipartition> {
    let n = check_degrees(a, b)?;
    // Layers: 0..n top of a, n..2n identified middle, 2n..3n bottom of b.
    let mut uf = UnionFind::new(3 * n);
    stack_blocks(&mut uf, a, 0, n);
    stack_blocks(&mut uf, b, n, 2 * n);
    let mut groups: HashMap<usize, Vec<i32>> = HashMap::new();
    for v in 1..=n {
        groups.entry(uf.find(v - 1)).or_default().push(v as i32);
    }
    for v in 1..=n {
        groups
            .entry(uf.find(2 * n + v - 1))
            .or_default()
            .push(-(v as i32));
    }
    Bipartition::new(n, groups.into_values().collect())
}

fn stack_blocks(uf: &mut UnionFind, x: &Bipartition, top_base: usize, bottom_base: usize) {
    for block in x.blocks() {
        let node = |p: i32| -> usize {
            if p > 0 {
                top_base + p as usize - 1
            } else {
                bottom_base + (-p) as usize - 1
            }
        };
        let first = node(block[0]);
        for &p in &block[1..] {
            uf.union(first, node(p));
        }
    }
}

/// The ⋆ product on PI*_n, computed through the one-extra-strand embedding:
/// the auxiliary top/middle/bottom nodes are merged with every point block
/// of the respective factor, and outer vertices landing in the auxiliary
/// component become points of the result.
pub fn star_mul(a: &Bipartition, b: &Bipartition) -> Result<Bipartition> {
    let n = check_degrees(a, b)?;
    check_family(a, Family::PIStar)?;
    check_family(b, Family::PIStar)?;
    let m = n + 1;
    let mut uf = UnionFind::new(3 * m);
    let (t, mid, bot) = (0, m, 2 * m);
    uf.union(t + n, mid + n);
    uf.union(mid + n, bot + n);
    for block in a.blocks() {
        let node = |p: i32| -> usize {
            if p > 0 {
                t + p as usize - 1
            } else {
                mid + (-p) as usize - 1
            }
        };
        if block.len() == 1 {
            uf.union(t + n, node(block[0]));
        } else {
            for &p in &block[1..] {
                uf.union(node(block[0]), node(p));
            }
        }
    }
    for block in b.blocks() {
        let node = |p: i32| -> usize {
            if p > 0 {
                mid + p as usize - 1
            } else {
                bot + (-p) as usize - 1
            }
        };
        if block.len() == 1 {
            uf.union(mid + n, node(block[0]));
        } else {
            for &p in &block[1..] {
                uf.union(node(block[0]), node(p));
            }
        }
    }
    let aux = uf.find(t + n);
    let mut groups: HashMap<usize, Vec<i32>> = HashMap::new();
    let mut singles: Vec<Vec<i32>> = Vec::new();
    for v in 1..=n {
        let r = uf.find(t + v - 1);
        if r == aux {
            singles.push(vec![v as i32]);
        } else {
            groups.entry(r).or_default().push(v as i32);
        }
    }
    for v in 1..=n {
        let r = uf.find(bot + v - 1);
        if r == aux {
            singles.push(vec![-(v as i32)]);
        } else {
            groups.entry(r).or_default().push(-(v as i32));
        }
    }
    let mut blocks: Vec<Vec<i32>> = groups.into_values().collect();
    blocks.extend(singles);
    Bipartition::new(n, blocks)
}

/// The ∘ product on PI*_n: a generalised line of `a` composes with one of
/// `b` exactly when the bottom set of the former equals the top set of the
/// latter; everything else degenerates to points.
pub fn circ_mul(a: &Bipartition, b: &Bipartition) -> Result<Bipartition> {
    let n = check_degrees(a, b)?;
    check_family(a, Family::PIStar)?;
    check_family(b, Family::PIStar)?;
    let mut by_top: HashMap<Vec<i32>, Vec<i32>> = HashMap::new();
    for (tops, bottoms) in b.lines() {
        by_top.insert(tops, bottoms);
    }
    let mut covered_top = vec![false; n];
    let mut covered_bottom = vec![false; n];
    let mut blocks: Vec<Vec<i32>> = Vec::new();
    for (tops, bottoms) in a.lines() {
        if let Some(out) = by_top.get(&bottoms) {
            let mut block = tops.clone();
            for &t in tops.iter() {
                covered_top[t as usize - 1] = true;
            }
            for &v in out {
                covered_bottom[v as usize - 1] = true;
                block.push(-v);
            }
            blocks.push(block);
        }
    }
    for v in 1..=n {
        if !covered_top[v - 1] {
            blocks.push(vec![v as i32]);
        }
        if !covered_bottom[v - 1] {
            blocks.push(vec![-(v as i32)]);
        }
    }
    Bipartition::new(n, blocks)
}

/// Natural partial order of an inverse semigroup realized as
/// a ≤ b ⇔ a = (a·a⁻¹)·b under the selected product.
pub fn natural_order_leq(product: Product, a: &Bipartition, b: &Bipartition) -> Result<bool> {
    check_degrees(a, b)?;
    let inv = a.inverse()?;
    check_family(b, Family::PIStar)?;
    let e = product.apply(a, &inv)?;
    Ok(&product.apply(&e, b)? == a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn el(text: &str, n: usize) -> Bipartition {
        Bipartition::parse(text, n).unwrap()
    }

    #[test]
    fn natural_identity_and_idempotent() {
        let id = named::identity(2).unwrap();
        let tau = el("[[1,2,-1,-2]]", 2);
        assert_eq!(natural_mul(&id, &tau).unwrap(), tau);
        assert_eq!(natural_mul(&tau, &id).unwrap(), tau);
        assert_eq!(natural_mul(&tau, &tau).unwrap(), tau);
    }

    #[test]
    fn natural_example() {
        let a = el("[[1,-1,-2],[2]]", 2);
        let b = el("[[1,2,-1],[-2]]", 2);
        assert_eq!(natural_mul(&a, &b).unwrap(), el("[[1,-1],[2],[-2]]", 2));
    }

    #[test]
    fn natural_degree_mismatch() {
        let a = named::identity(2).unwrap();
        let b = named::identity(3).unwrap();
        assert!(matches!(
            natural_mul(&a, &b),
            Err(Error::DegreeMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn star_eq1_identities_at_n3() {
        let gamma = named::gamma(1, 2, 3).unwrap();
        let gamma_inv = gamma.inverse().unwrap();
        assert_eq!(gamma.format(), "[[1,2,-1],[3,-3],[-2]]");
        assert_eq!(gamma_inv.format(), "[[1,-1,-2],[2],[3,-3]]");
        // γ ⋆ γ⁻¹ = τ₁,₂
        assert_eq!(
            star_mul(&gamma, &gamma_inv).unwrap(),
            named::tau(1, 2, 3).unwrap()
        );
        // γ⁻¹ ⋆ γ = α₂
        assert_eq!(
            star_mul(&gamma_inv, &gamma).unwrap(),
            named::alpha(2, 3).unwrap()
        );
        // γ₁,₂ ⋆ γ₃,₂⁻¹ = ξ₁,₂,₃
        let gamma32_inv = named::gamma(3, 2, 3).unwrap().inverse().unwrap();
        assert_eq!(
            star_mul(&gamma, &gamma32_inv).unwrap(),
            named::xi(1, 2, 3, 3).unwrap()
        );
        assert_eq!(
            star_mul(&gamma, &gamma_inv).unwrap().format(),
            "[[1,2,-1,-2],[3,-3]]"
        );
    }

    #[test]
    fn star_zero_absorbs() {
        let zero = named::zero(3).unwrap();
        let gamma = named::gamma(1, 2, 3).unwrap();
        assert_eq!(star_mul(&zero, &gamma).unwrap(), zero);
        assert_eq!(star_mul(&gamma, &zero).unwrap(), zero);
    }

    #[test]
    fn star_rejects_non_pistar() {
        let bad = el("[[1,2],[-1],[-2]]", 2);
        let id = named::identity(2).unwrap();
        assert!(matches!(star_mul(&bad, &id), Err(Error::OutsideFamily { .. })));
    }

    #[test]
    fn circ_examples() {
        let a = el("[[1,2,-1],[-2]]", 2);
        let b = el("[[1,-1,-2],[2]]", 2);
        assert_eq!(circ_mul(&a, &b).unwrap(), el("[[1,2,-1,-2]]", 2));
        let a1 = named::alpha(1, 2).unwrap();
        let a2 = named::alpha(2, 2).unwrap();
        assert_eq!(circ_mul(&a1, &a2).unwrap(), named::zero(2).unwrap());
    }

    #[test]
    fn circ_istar_nonclosure_witness() {
        let a = el("[[1,-1],[2,3,-2,-3]]", 3);
        let b = el("[[1,2,-1,-2],[3,-3]]", 3);
        let zero = named::zero(3).unwrap();
        assert_eq!(circ_mul(&a, &b).unwrap(), zero);
        assert!(!zero.is_in(Family::IStar));
    }

    #[test]
    fn inverse_axioms_pointwise() {
        let gamma = named::gamma(1, 2, 3).unwrap();
        let inv = gamma.inverse().unwrap();
        let back = star_mul(&star_mul(&gamma, &inv).unwrap(), &gamma).unwrap();
        assert_eq!(back, gamma);
        let back_circ = circ_mul(&circ_mul(&gamma, &inv).unwrap(), &gamma).unwrap();
        assert_eq!(back_circ, gamma);
    }

    #[test]
    fn natural_order_basics() {
        let zero = named::zero(2).unwrap();
        let id = named::identity(2).unwrap();
        let tau = named::tau(1, 2, 2).unwrap();
        assert!(natural_order_leq(Product::Star, &zero, &id).unwrap());
        assert!(natural_order_leq(Product::Star, &zero, &tau).unwrap());
        assert!(natural_order_leq(Product::Star, &tau, &tau).unwrap());
        assert!(!natural_order_leq(Product::Star, &id, &zero).unwrap());
    }
}
