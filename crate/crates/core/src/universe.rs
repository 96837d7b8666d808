//! Finite sets of bipartitions closed under a chosen product, with index
//! tables, Cayley caches and the equivalence-relation plumbing every
//! structural computation runs on.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use itertools::Itertools;

use crate::bitset::Bits;
use crate::element::{Bipartition, Family};
use crate::error::{Error, Result};
use crate::named;
use crate::product::Product;

/// Default degree cap per family for full enumeration.
pub fn default_max_degree(family: Family) -> usize {
    match family {
        Family::C => 4,
        Family::IStar => 5,
        Family::PIStar => 4,
        Family::I => 5,
        Family::S => 6,
    }
}

/// Default element cap for generator closures.
pub const DEFAULT_CLOSURE_BUDGET: usize = 100_000;

/// A finite semigroup of bipartitions: an indexed, product-closed element
/// list with caches. Immutable after construction; the Cayley table and the
/// natural-order rows are materialized once on first use.
pub struct SemigroupUniverse {
    product: Product,
    degree: usize,
    elements: Vec<Bipartition>,
    index: HashMap<Bipartition, u32>,
    idempotents: Vec<usize>,
    inverses: Option<Vec<u32>>,
    table: OnceLock<Vec<u32>>,
    leq: OnceLock<Vec<Bits>>,
}

impl SemigroupUniverse {
    /// Internal constructor; `elements` must already be product-closed and
    /// duplicate-free.
    fn build(product: Product, degree: usize, elements: Vec<Bipartition>) -> Self {
        let index: HashMap<Bipartition, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let idempotents: Vec<usize> = elements
            .iter()
            .enumerate()
            .filter(|(_, e)| product.apply(e, e).map(|p| &p == *e).unwrap_or(false))
            .map(|(i, _)| i)
            .collect();
        let inverses = elements
            .iter()
            .map(|e| index.get(&e.flip()).copied())
            .collect::<Option<Vec<u32>>>()
            .filter(|_| elements.iter().all(|e| e.is_in(Family::PIStar)));
        SemigroupUniverse {
            product,
            degree,
            elements,
            index,
            idempotents,
            inverses,
            table: OnceLock::new(),
            leq: OnceLock::new(),
        }
    }

    /// Builds a universe from explicit elements, verifying closure.
    pub fn from_elements(product: Product, elements: Vec<Bipartition>) -> Result<Self> {
        let degree = elements
            .first()
            .map(|e| e.degree())
            .ok_or_else(|| Error::InvalidParams("empty universe".into()))?;
        let mut dedup = elements;
        dedup.sort();
        dedup.dedup();
        let u = SemigroupUniverse::build(product, degree, dedup);
        for i in 0..u.len() {
            for j in 0..u.len() {
                let p = product.apply(&u.elements[i], &u.elements[j])?;
                if !u.index.contains_key(&p) {
                    return Err(Error::InvalidParams(format!(
                        "set not closed: {} * {} = {} is outside",
                        u.elements[i], u.elements[j], p
                    )));
                }
            }
        }
        Ok(u)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn product(&self) -> Product {
        self.product
    }

    pub fn elements(&self) -> &[Bipartition] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Bipartition {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &Bipartition) -> Option<usize> {
        self.index.get(e).map(|&i| i as usize)
    }

    pub fn contains(&self, e: &Bipartition) -> bool {
        self.index.contains_key(e)
    }

    /// Indices of the idempotents, ascending.
    pub fn idempotent_indices(&self) -> &[usize] {
        &self.idempotents
    }

    /// Index of the semigroup inverse of element `i`, when the universe is
    /// inverse-closed inside PI*.
    pub fn inverse_idx(&self, i: usize) -> Option<usize> {
        self.inverses.as_ref().map(|v| v[i] as usize)
    }

    pub fn has_inverses(&self) -> bool {
        self.inverses.is_some()
    }

    pub fn identity_idx(&self) -> Option<usize> {
        named::identity(self.degree)
            .ok()
            .and_then(|id| self.index_of(&id))
    }

    /// The dense index product table, row-major; built once.
    pub fn table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let n = self.len();
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    let p = self
                        .product
                        .apply(&self.elements[i], &self.elements[j])
                        .expect("universe elements multiply");
                    t[i * n + j] = *self
                        .index
                        .get(&p)
                        .expect("universe closed under product");
                }
            }
            t
        })
    }

    #[inline]
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        if let Some(t) = self.table.get() {
            t[i * self.len() + j] as usize
        } else {
            let p = self
                .product
                .apply(&self.elements[i], &self.elements[j])
                .expect("universe elements multiply");
            *self.index.get(&p).expect("universe closed under product") as usize
        }
    }

    /// Rows of the natural partial order: bit j of row i set iff e_i ≤ e_j.
    pub fn leq_rows(&self) -> Result<&[Bits]> {
        if !self.has_inverses() {
            return Err(Error::UnsupportedUniverse(
                "natural order needs an inverse-closed PI* universe".into(),
            ));
        }
        Ok(self.leq.get_or_init(|| {
            let n = self.len();
            let inv = self.inverses.as_ref().unwrap();
            let mut rows = Vec::with_capacity(n);
            for a in 0..n {
                let e = self.mul_idx(a, inv[a] as usize);
                let mut row = Bits::new(n);
                for b in 0..n {
                    if self.mul_idx(e, b) == a {
                        row.set(b);
                    }
                }
                rows.push(row);
            }
            rows
        }))
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> Result<bool> {
        Ok(self.leq_rows()?[a].get(b))
    }

    /// ω-up-set of element `a`: every b with a ≤ b.
    pub fn omega_up_idx(&self, a: usize) -> Result<Bits> {
        Ok(self.leq_rows()?[a].clone())
    }

    /// Element indices in canonical element order.
    pub fn sorted_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.elements[a].cmp(&self.elements[b]));
        idx
    }

    /// Verifies closure under the product by one full pass.
    pub fn verify_closed(&self) -> bool {
        (0..self.len()).all(|i| {
            (0..self.len()).all(|j| {
                self.product
                    .apply(&self.elements[i], &self.elements[j])
                    .map(|p| self.index.contains_key(&p))
                    .unwrap_or(false)
            })
        })
    }
}

/// A closure request: generators, the product to close under, and whether
/// inverses are adjoined first (inverse-subsemigroup generation).
#[derive(Clone)]
pub struct GeneratorSet {
    pub product: Product,
    pub generators: Vec<Bipartition>,
    pub with_inverses: bool,
}

impl GeneratorSet {
    pub fn new(product: Product, generators: Vec<Bipartition>) -> Self {
        GeneratorSet {
            product,
            generators,
            with_inverses: false,
        }
    }

    pub fn with_inverses(mut self) -> Self {
        self.with_inverses = true;
        self
    }
}

/// Product-closure of a generator set by breadth-first search; elements are
/// indexed in discovery order. Errors when the closure exceeds `budget`.
pub fn closure(gens: &GeneratorSet, budget: usize) -> Result<SemigroupUniverse> {
    if gens.generators.is_empty() {
        return Err(Error::InvalidParams("closure of empty generator set".into()));
    }
    let degree = gens.generators[0].degree();
    let mut seeds: Vec<Bipartition> = Vec::new();
    for g in &gens.generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        seeds.push(g.clone());
        if gens.with_inverses {
            seeds.push(g.inverse()?);
        }
    }
    let mut elements: Vec<Bipartition> = Vec::new();
    let mut index: HashMap<Bipartition, u32> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in seeds.iter() {
        if !index.contains_key(s) {
            index.insert(s.clone(), elements.len() as u32);
            elements.push(s.clone());
            queue.push_back(elements.len() - 1);
        }
    }
    let gen_count = elements.len();
    while let Some(i) = queue.pop_front() {
        for g in 0..gen_count {
            let p = gens.product.apply(&elements[i], &elements[g])?;
            if !index.contains_key(&p) {
                if elements.len() >= budget {
                    return Err(Error::BudgetExceeded(format!(
                        "closure exceeded {budget} elements"
                    )));
                }
                index.insert(p.clone(), elements.len() as u32);
                elements.push(p);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    Ok(SemigroupUniverse::build(gens.product, degree, elements))
}

/// All set partitions of `points`, each partition a list of blocks.
pub(crate) fn partitions_of(points: &[i32]) -> Vec<Vec<Vec<i32>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<i32>> = Vec::new();
    fn rec(points: &[i32], pos: usize, blocks: &mut Vec<Vec<i32>>, out: &mut Vec<Vec<Vec<i32>>>) {
        if pos == points.len() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(points[pos]);
            rec(points, pos + 1, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![points[pos]]);
        rec(points, pos + 1, blocks, out);
        blocks.pop();
    }
    rec(points, 0, &mut blocks, &mut out);
    out
}

fn subsets(n: usize) -> Vec<Vec<i32>> {
    (0..1u32 << n)
        .map(|mask| {
            (1..=n as i32)
                .filter(|&v| mask >> (v - 1) & 1 == 1)
                .collect()
        })
        .collect()
}

/// Direct construction of every element of the family at degree `n`,
/// in canonical element order.
pub fn enumerate_family(family: Family, n: usize, budget_degree: usize) -> Result<Vec<Bipartition>> {
    if n == 0 {
        return Err(Error::InvalidParams("degree must be positive".into()));
    }
    if n > budget_degree {
        return Err(Error::BudgetExceeded(format!(
            "family {family:?} enumeration capped at degree {budget_degree}, got {n}"
        )));
    }
    let mut out: Vec<Bipartition> = Vec::new();
    match family {
        Family::C => {
            let points: Vec<i32> = (1..=n as i32).chain((1..=n as i32).map(|v| -v)).collect();
            for blocks in partitions_of(&points) {
                out.push(Bipartition::new(n, blocks)?);
            }
        }
        Family::S => {
            for images in (0..n).permutations(n) {
                out.push(named::from_permutation(&images)?);
            }
        }
        Family::I => {
            let tops = subsets(n);
            let bottoms = subsets(n);
            for a in &tops {
                for b in bottoms.iter().filter(|b| b.len() == a.len()) {
                    for assignment in b.iter().permutations(b.len()) {
                        let mut blocks: Vec<Vec<i32>> = a
                            .iter()
                            .zip(&assignment)
                            .map(|(&t, &&v)| vec![t, -v])
                            .collect();
                        push_missing_points(&mut blocks, n);
                        out.push(Bipartition::new(n, blocks)?);
                    }
                }
            }
        }
        Family::IStar => {
            let all: Vec<i32> = (1..=n as i32).collect();
            let top_parts = partitions_of(&all);
            for tp in &top_parts {
                for bp in top_parts.iter().filter(|bp| bp.len() == tp.len()) {
                    for assignment in bp.iter().permutations(bp.len()) {
                        let blocks: Vec<Vec<i32>> = tp
                            .iter()
                            .zip(&assignment)
                            .map(|(t, b)| {
                                t.iter().copied().chain(b.iter().map(|&v| -v)).collect()
                            })
                            .collect();
                        out.push(Bipartition::new(n, blocks)?);
                    }
                }
            }
        }
        Family::PIStar => {
            for a in &subsets(n) {
                let top_parts = partitions_of(a);
                for b in &subsets(n) {
                    let bottom_parts = partitions_of(b);
                    for tp in &top_parts {
                        for bp in bottom_parts.iter().filter(|bp| bp.len() == tp.len()) {
                            for assignment in bp.iter().permutations(bp.len()) {
                                let mut blocks: Vec<Vec<i32>> = tp
                                    .iter()
                                    .zip(&assignment)
                                    .map(|(t, bk)| {
                                        t.iter().copied().chain(bk.iter().map(|&v| -v)).collect()
                                    })
                                    .collect();
                                push_missing_points(&mut blocks, n);
                                out.push(Bipartition::new(n, blocks)?);
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn push_missing_points(blocks: &mut Vec<Vec<i32>>, n: usize) {
    let mut top = vec![false; n];
    let mut bottom = vec![false; n];
    for block in blocks.iter() {
        for &p in block {
            if p > 0 {
                top[p as usize - 1] = true;
            } else {
                bottom[(-p) as usize - 1] = true;
            }
        }
    }
    for v in 1..=n {
        if !top[v - 1] {
            blocks.push(vec![v as i32]);
        }
        if !bottom[v - 1] {
            blocks.push(vec![-(v as i32)]);
        }
    }
}

fn compatible(family: Family, product: Product) -> bool {
    matches!(
        (family, product),
        (Family::C, Product::Natural)
            | (Family::IStar, Product::Natural | Product::Star)
            | (Family::PIStar, Product::Star | Product::Circ)
            | (Family::I, _)
            | (Family::S, _)
    )
}

/// The full family at degree `n` as a universe under `product`, using the
/// family's default degree budget.
pub fn family_universe(family: Family, product: Product, n: usize) -> Result<SemigroupUniverse> {
    family_universe_budgeted(family, product, n, default_max_degree(family))
}

pub fn family_universe_budgeted(
    family: Family,
    product: Product,
    n: usize,
    budget_degree: usize,
) -> Result<SemigroupUniverse> {
    if !compatible(family, product) {
        return Err(Error::UnsupportedUniverse(format!(
            "family {family:?} is not closed under the {} product",
            product.name()
        )));
    }
    let elements = enumerate_family(family, n, budget_degree)?;
    Ok(SemigroupUniverse::build(product, n, elements))
}

/// Partition of the index set 0..len into classes, normalized so class ids
/// appear in first-occurrence order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EquivRelation {
    class_of: Vec<u32>,
    num_classes: usize,
}

impl EquivRelation {
    pub fn from_class_of(raw: &[u32]) -> Self {
        let mut remap: HashMap<u32, u32> = HashMap::new();
        let mut class_of = Vec::with_capacity(raw.len());
        for &c in raw {
            let next = remap.len() as u32;
            let id = *remap.entry(c).or_insert(next);
            class_of.push(id);
        }
        EquivRelation {
            class_of,
            num_classes: remap.len(),
        }
    }

    pub fn identity(len: usize) -> Self {
        EquivRelation {
            class_of: (0..len as u32).collect(),
            num_classes: len,
        }
    }

    pub fn universal(len: usize) -> Self {
        EquivRelation {
            class_of: vec![0; len],
            num_classes: if len == 0 { 0 } else { 1 },
        }
    }

    pub fn from_pairs(len: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut parent: Vec<usize> = (0..len).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in pairs {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let raw: Vec<u32> = (0..len).map(|i| find(&mut parent, i) as u32).collect();
        EquivRelation::from_class_of(&raw)
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn class_id(&self, i: usize) -> usize {
        self.class_of[i] as usize
    }

    pub fn same(&self, i: usize, j: usize) -> bool {
        self.class_of[i] == self.class_of[j]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_classes];
        for (i, &c) in self.class_of.iter().enumerate() {
            classes[c as usize].push(i);
        }
        classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes().iter().map(|c| c.len()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes == self.len()
    }

    pub fn is_universal(&self) -> bool {
        self.num_classes <= 1
    }

    /// Smallest equivalence containing both; for congruences this is the
    /// congruence join, since the transitive closure of a union of
    /// congruences is already compatible.
    pub fn join(&self, other: &EquivRelation) -> EquivRelation {
        debug_assert_eq!(self.len(), other.len());
        let mut first_of_class: HashMap<u32, usize> = HashMap::new();
        let mut pairs = Vec::new();
        for (i, &c) in self.class_of.iter().enumerate() {
            match first_of_class.entry(c) {
                std::collections::hash_map::Entry::Occupied(o) => pairs.push((*o.get(), i)),
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(i);
                }
            }
        }
        let mut first_other: HashMap<u32, usize> = HashMap::new();
        for (i, &c) in other.class_of.iter().enumerate() {
            match first_other.entry(c) {
                std::collections::hash_map::Entry::Occupied(o) => pairs.push((*o.get(), i)),
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(i);
                }
            }
        }
        EquivRelation::from_pairs(self.len(), pairs)
    }

    /// Common refinement.
    pub fn meet(&self, other: &EquivRelation) -> EquivRelation {
        debug_assert_eq!(self.len(), other.len());
        let mut remap: HashMap<(u32, u32), u32> = HashMap::new();
        let raw: Vec<u32> = self
            .class_of
            .iter()
            .zip(&other.class_of)
            .map(|(&a, &b)| {
                let next = remap.len() as u32;
                *remap.entry((a, b)).or_insert(next)
            })
            .collect();
        EquivRelation::from_class_of(&raw)
    }

    /// True when every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &EquivRelation) -> bool {
        let mut seen: HashMap<u32, u32> = HashMap::new();
        for (&fine, &coarse) in self.class_of.iter().zip(&coarser.class_of) {
            match seen.entry(fine) {
                std::collections::hash_map::Entry::Occupied(o) => {
                    if *o.get() != coarse {
                        return false;
                    }
                }
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(coarse);
                }
            }
        }
        true
    }
}

impl std::fmt::Debug for EquivRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "EquivRelation({} classes on {})",
            self.num_classes,
            self.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn family_sizes_small() {
        assert_eq!(enumerate_family(Family::PIStar, 1, 4).unwrap().len(), 2);
        assert_eq!(enumerate_family(Family::PIStar, 2, 4).unwrap().len(), 12);
        assert_eq!(enumerate_family(Family::PIStar, 3, 4).unwrap().len(), 128);
        assert_eq!(enumerate_family(Family::IStar, 3, 5).unwrap().len(), 25);
        assert_eq!(enumerate_family(Family::C, 2, 4).unwrap().len(), 15);
        assert_eq!(enumerate_family(Family::I, 3, 5).unwrap().len(), 34);
        assert_eq!(enumerate_family(Family::S, 3, 6).unwrap().len(), 6);
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            enumerate_family(Family::PIStar, 9, 4),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn closure_of_identity_is_singleton() {
        let id = named::identity(3).unwrap();
        let u = closure(&GeneratorSet::new(Product::Star, vec![id.clone()]), 10).unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(u.element(0), &id);
    }

    #[test]
    fn closure_budget_errors() {
        let gens = GeneratorSet::new(
            Product::Star,
            vec![named::gamma(1, 2, 3).unwrap(), named::from_permutation(&[1, 2, 0]).unwrap()],
        )
        .with_inverses();
        assert!(matches!(closure(&gens, 5), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn universe_caches() {
        let u = family_universe(Family::IStar, Product::Natural, 2).unwrap();
        assert_eq!(u.len(), 3);
        assert!(u.has_inverses());
        assert!(u.verify_closed());
        assert_eq!(u.idempotent_indices().len(), 2); // τ_N and the identity
        let id = u.identity_idx().unwrap();
        assert_eq!(u.mul_idx(id, id), id);
    }

    #[test]
    fn incompatible_combo_rejected() {
        assert!(matches!(
            family_universe(Family::PIStar, Product::Natural, 2),
            Err(Error::UnsupportedUniverse(_))
        ));
        assert!(matches!(
            family_universe(Family::IStar, Product::Circ, 2),
            Err(Error::UnsupportedUniverse(_))
        ));
    }

    #[test]
    fn equiv_relation_lattice_ops() {
        let a = EquivRelation::from_class_of(&[0, 0, 1, 1, 2]);
        let b = EquivRelation::from_class_of(&[0, 1, 1, 2, 2]);
        let j = a.join(&b);
        assert!(j.is_universal());
        let m = a.meet(&b);
        assert_eq!(m.num_classes(), 5);
        assert!(m.refines(&a) && m.refines(&b));
        assert!(a.refines(&j) && b.refines(&j));
        assert!(EquivRelation::identity(5).refines(&a));
        assert!(a.refines(&EquivRelation::universal(5)));
    }

    #[test]
    fn from_pairs_builds_classes() {
        let r = EquivRelation::from_pairs(4, [(0, 2), (2, 3)]);
        assert_eq!(r.num_classes(), 2);
        assert!(r.same(0, 3) && !r.same(0, 1));
    }
}
