//! Congruence machinery: brute-force congruence lattices by principal
//! congruences and join closure, the ρ_{k,A} classification, congruence
//! pairs (K, Λ) and the normal-congruence family on the idempotents.

use std::collections::HashSet;

use crate::bitset::Bits;
use crate::element::Family;
use crate::error::{Error, Result};
use crate::product::Product;
use crate::symmetric::{self, Perm};
use crate::universe::{family_universe, EquivRelation, SemigroupUniverse};

/// Guard for the brute-force lattice enumeration.
pub const LATTICE_SIZE_LIMIT: usize = 200;

/// Smallest congruence identifying `a` and `b`, by pair-closure over the
/// multiplication table: every merge enqueues all left and right translates.
pub fn principal_congruence_table(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    a: usize,
    b: usize,
) -> EquivRelation {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue: Vec<(usize, usize)> = vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        let rx = find(&mut parent, x);
        let ry = find(&mut parent, y);
        if rx == ry {
            continue;
        }
        parent[rx] = ry;
        for s in 0..n {
            queue.push((mul(s, x), mul(s, y)));
            queue.push((mul(x, s), mul(y, s)));
        }
    }
    let raw: Vec<u32> = (0..n).map(|i| find(&mut parent, i) as u32).collect();
    EquivRelation::from_class_of(&raw)
}

/// Left/right compatibility check of an equivalence over a table.
pub fn is_congruence_table(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    rel: &EquivRelation,
) -> bool {
    for class in rel.classes() {
        if class.len() < 2 {
            continue;
        }
        let rep = class[0];
        for &x in &class[1..] {
            for s in 0..n {
                if !rel.same(mul(s, rep), mul(s, x)) || !rel.same(mul(rep, s), mul(x, s)) {
                    return false;
                }
            }
        }
    }
    true
}

/// The complete congruence lattice of a table: all joins of principal
/// congruences, plus the identity.
pub fn congruence_lattice_table(
    n: usize,
    mul: impl Fn(usize, usize) -> usize + Copy,
) -> Vec<EquivRelation> {
    let mut set: HashSet<EquivRelation> = HashSet::new();
    set.insert(EquivRelation::identity(n));
    for a in 0..n {
        for b in a + 1..n {
            set.insert(principal_congruence_table(n, mul, a, b));
        }
    }
    let mut lattice: Vec<EquivRelation> = set.iter().cloned().collect();
    loop {
        let mut added = false;
        let snapshot = lattice.clone();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                let join = snapshot[i].join(&snapshot[j]);
                if set.insert(join.clone()) {
                    lattice.push(join);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    lattice.sort_by_key(|r| (usize::MAX - r.num_classes(), relation_key(r)));
    lattice
}

fn relation_key(r: &EquivRelation) -> Vec<u32> {
    (0..r.len()).map(|i| r.class_id(i) as u32).collect()
}

pub fn principal_congruence(u: &SemigroupUniverse, a: usize, b: usize) -> EquivRelation {
    let n = u.len();
    let t = u.table();
    principal_congruence_table(n, |i, j| t[i * n + j] as usize, a, b)
}

pub fn is_congruence(u: &SemigroupUniverse, rel: &EquivRelation) -> bool {
    let n = u.len();
    let t = u.table();
    is_congruence_table(n, |i, j| t[i * n + j] as usize, rel)
}

/// Brute-force congruence lattice of the universe.
pub fn enumerate_congruences(u: &SemigroupUniverse) -> Result<Vec<EquivRelation>> {
    if u.len() > LATTICE_SIZE_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "congruence lattice limited to {LATTICE_SIZE_LIMIT} elements, universe has {}",
            u.len()
        )));
    }
    let n = u.len();
    let t = u.table();
    Ok(congruence_lattice_table(n, |i, j| t[i * n + j] as usize))
}

/// Parameters of a ρ_{k,A} congruence: everything of rank ≤ k is glued and
/// the rank-(k+1) D-class is refined by a normal subgroup A ⊴ S_{k+1}.
/// k = 0 with the trivial subgroup yields the identity congruence.
#[derive(Clone, Debug)]
pub struct RhoSpec {
    pub k: usize,
    pub subgroup: Vec<Perm>,
}

fn validate_subgroup(k1: usize, subgroup: &[Perm]) -> Result<()> {
    if subgroup.is_empty() || subgroup.iter().any(|p| p.len() != k1) {
        return Err(Error::InvalidParams(format!(
            "subgroup must consist of permutations of {k1} points"
        )));
    }
    let set: HashSet<&Perm> = subgroup.iter().collect();
    if !set.contains(&symmetric::identity_perm(k1)) {
        return Err(Error::InvalidParams("subgroup must contain the identity".into()));
    }
    for p in subgroup {
        for q in subgroup {
            if !set.contains(&symmetric::compose(p, q)) {
                return Err(Error::InvalidParams("subgroup not closed".into()));
            }
        }
    }
    if !symmetric::is_normal_in_sym(k1, subgroup) {
        return Err(Error::InvalidParams(format!("subgroup is not normal in S_{k1}")));
    }
    Ok(())
}

/// N_{k+1}(A): the union over rank-(k+1) idempotents e of the copy of A
/// inside the maximal subgroup H_e, realized by permuting the canonical
/// block order of e. Normality of A makes this independent of the order.
fn n_set(u: &SemigroupUniverse, k1: usize, subgroup: &[Perm]) -> Bits {
    let mut bits = Bits::new(u.len());
    for &e in u.idempotent_indices() {
        let elem = u.element(e);
        if elem.rank() != k1 {
            continue;
        }
        let lines = elem.lines();
        let points: Vec<Vec<i32>> = elem
            .blocks()
            .iter()
            .filter(|b| b.len() == 1)
            .cloned()
            .collect();
        for pi in subgroup {
            let mut blocks: Vec<Vec<i32>> = points.clone();
            for (i, (tops, _)) in lines.iter().enumerate() {
                let (_, bottoms) = &lines[pi[i]];
                blocks.push(
                    tops.iter()
                        .copied()
                        .chain(bottoms.iter().map(|&v| -v))
                        .collect(),
                );
            }
            let candidate = crate::element::Bipartition::new(u.degree(), blocks)
                .expect("permuted idempotent blocks are valid");
            let idx = u
                .index_of(&candidate)
                .expect("H-class member lies in the universe");
            bits.set(idx);
        }
    }
    bits
}

/// Builds ρ_{k,A} on the universe and re-checks that it is a congruence.
pub fn build_rho(u: &SemigroupUniverse, spec: &RhoSpec) -> Result<EquivRelation> {
    let n = u.degree();
    if spec.k > n {
        return Err(Error::InvalidParams(format!(
            "rho index k must lie in 0..={n}, got {}",
            spec.k
        )));
    }
    if !u.has_inverses() {
        return Err(Error::UnsupportedUniverse("rho needs an inverse universe".into()));
    }
    let k1 = spec.k + 1;
    validate_subgroup(k1, &spec.subgroup)?;
    let nk = n_set(u, k1, &spec.subgroup);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    // glue everything of rank ≤ k
    let low: Vec<usize> = (0..u.len())
        .filter(|&i| u.element(i).rank() <= spec.k)
        .collect();
    for w in low.windows(2) {
        pairs.push((w[0], w[1]));
    }
    // refine the rank-(k+1) D-class: x ~ y iff x H y and xy⁻¹ ∈ N_{k+1}(A)
    let d_next: Vec<usize> = (0..u.len())
        .filter(|&i| u.element(i).rank() == k1)
        .collect();
    for (pos, &x) in d_next.iter().enumerate() {
        let dx = u.element(x).domain_data();
        for &y in &d_next[pos + 1..] {
            let dy = u.element(y).domain_data();
            if dx.dom == dy.dom && dx.ran == dy.ran {
                let xyinv = u.mul_idx(x, u.inverse_idx(y).unwrap());
                if nk.get(xyinv) {
                    pairs.push((x, y));
                }
            }
        }
    }
    let rel = EquivRelation::from_pairs(u.len(), pairs);
    if !is_congruence(u, &rel) {
        return Err(Error::InvalidParams(format!(
            "rho(k={}, |A|={}) is not a congruence on this universe",
            spec.k,
            spec.subgroup.len()
        )));
    }
    Ok(rel)
}

/// The deduplicated {ρ_{k,A}} family over k ∈ 0..=n and A ⊴ S_{k+1}.
pub fn rho_family(u: &SemigroupUniverse) -> Result<Vec<EquivRelation>> {
    let mut set: HashSet<EquivRelation> = HashSet::new();
    for k in 0..=u.degree() {
        for subgroup in symmetric::normal_subgroups(k + 1)? {
            set.insert(build_rho(u, &RhoSpec { k, subgroup })?);
        }
    }
    let mut out: Vec<EquivRelation> = set.into_iter().collect();
    out.sort_by_key(|r| (usize::MAX - r.num_classes(), relation_key(r)));
    Ok(out)
}

/// A congruence pair: a normal subsemigroup and a normal congruence on the
/// idempotents, the trace being indexed by position in
/// `idempotent_indices()`.
#[derive(Clone, Debug)]
pub struct CongruencePair {
    pub kernel: Vec<usize>,
    pub trace: EquivRelation,
}

pub fn is_normal_subsemigroup(u: &SemigroupUniverse, kernel: &[usize]) -> bool {
    let bits = Bits::from_indices(u.len(), kernel);
    for &e in u.idempotent_indices() {
        if !bits.get(e) {
            return false;
        }
    }
    for &a in kernel {
        for &b in kernel {
            if !bits.get(u.mul_idx(a, b)) {
                return false;
            }
        }
    }
    for s in 0..u.len() {
        let si = match u.inverse_idx(s) {
            Some(i) => i,
            None => return false,
        };
        for &a in kernel {
            if !bits.get(u.mul_idx(u.mul_idx(si, a), s)) {
                return false;
            }
        }
    }
    true
}

/// Normality of a congruence on E(S): closed under conjugation by every
/// element of S, and a congruence on the idempotent semilattice.
pub fn is_normal_trace(u: &SemigroupUniverse, trace: &EquivRelation) -> bool {
    let idem = u.idempotent_indices();
    if trace.len() != idem.len() {
        return false;
    }
    let mut pos = vec![usize::MAX; u.len()];
    for (p, &e) in idem.iter().enumerate() {
        pos[e] = p;
    }
    let semilattice_ok = is_congruence_table(
        idem.len(),
        |i, j| pos[u.mul_idx(idem[i], idem[j])],
        trace,
    );
    if !semilattice_ok {
        return false;
    }
    for class in trace.classes() {
        let rep = class[0];
        for &other in &class[1..] {
            for s in 0..u.len() {
                let si = match u.inverse_idx(s) {
                    Some(i) => i,
                    None => return false,
                };
                let ce = pos[u.mul_idx(u.mul_idx(si, idem[rep]), s)];
                let cf = pos[u.mul_idx(u.mul_idx(si, idem[other]), s)];
                if !trace.same(ce, cf) {
                    return false;
                }
            }
        }
    }
    true
}

/// The two congruence-pair conditions on top of normality of both parts.
pub fn is_congruence_pair(u: &SemigroupUniverse, pair: &CongruencePair) -> bool {
    if !is_normal_subsemigroup(u, &pair.kernel) || !is_normal_trace(u, &pair.trace) {
        return false;
    }
    let idem = u.idempotent_indices();
    let mut pos = vec![usize::MAX; u.len()];
    for (p, &e) in idem.iter().enumerate() {
        pos[e] = p;
    }
    let bits = Bits::from_indices(u.len(), &pair.kernel);
    // ae ∈ K and e Λ a⁻¹a imply a ∈ K
    for a in 0..u.len() {
        let ai = u.inverse_idx(a).unwrap();
        let aa = pos[u.mul_idx(ai, a)];
        for (p, &e) in idem.iter().enumerate() {
            if bits.get(u.mul_idx(a, e)) && pair.trace.same(p, aa) && !bits.get(a) {
                return false;
            }
        }
    }
    // k ∈ K implies kk⁻¹ Λ k⁻¹k
    for &k in &pair.kernel {
        let ki = u.inverse_idx(k).unwrap();
        let left = pos[u.mul_idx(k, ki)];
        let right = pos[u.mul_idx(ki, k)];
        if !pair.trace.same(left, right) {
            return false;
        }
    }
    true
}

/// Kernel and trace of a congruence.
pub fn pair_of_congruence(u: &SemigroupUniverse, rel: &EquivRelation) -> CongruencePair {
    let idem = u.idempotent_indices();
    let kernel: Vec<usize> = (0..u.len())
        .filter(|&a| idem.iter().any(|&e| rel.same(a, e)))
        .collect();
    let raw: Vec<u32> = idem.iter().map(|&e| rel.class_id(e) as u32).collect();
    CongruencePair {
        kernel,
        trace: EquivRelation::from_class_of(&raw),
    }
}

/// ρ_{(K,Λ)}: a ~ b iff a⁻¹a Λ b⁻¹b and ab⁻¹ ∈ K.
pub fn congruence_of_pair(u: &SemigroupUniverse, pair: &CongruencePair) -> EquivRelation {
    let idem = u.idempotent_indices();
    let mut pos = vec![usize::MAX; u.len()];
    for (p, &e) in idem.iter().enumerate() {
        pos[e] = p;
    }
    let bits = Bits::from_indices(u.len(), &pair.kernel);
    let mut pairs = Vec::new();
    for a in 0..u.len() {
        let ai = u.inverse_idx(a).unwrap();
        let aa = pos[u.mul_idx(ai, a)];
        for b in a + 1..u.len() {
            let bi = u.inverse_idx(b).unwrap();
            let bb = pos[u.mul_idx(bi, b)];
            if pair.trace.same(aa, bb) && bits.get(u.mul_idx(a, bi)) {
                pairs.push((a, b));
            }
        }
    }
    EquivRelation::from_pairs(u.len(), pairs)
}

/// The classified normal congruences on E(S): ι together with gluing all
/// idempotents of rank ≤ k, k = 0..n, deduplicated.
pub fn normal_trace_family(u: &SemigroupUniverse) -> Vec<EquivRelation> {
    let idem = u.idempotent_indices();
    let mut set: HashSet<EquivRelation> = HashSet::new();
    for k in 0..=u.degree() {
        let glued: Vec<usize> = (0..idem.len())
            .filter(|&p| u.element(idem[p]).rank() <= k)
            .collect();
        let mut pairs = Vec::new();
        for w in glued.windows(2) {
            pairs.push((w[0], w[1]));
        }
        set.insert(EquivRelation::from_pairs(idem.len(), pairs));
    }
    let mut out: Vec<EquivRelation> = set.into_iter().collect();
    out.sort_by_key(|r| (usize::MAX - r.num_classes(), relation_key(r)));
    out
}

/// Brute force: every normal congruence on the idempotents, found by
/// enumerating the semilattice's congruence lattice and filtering by
/// conjugation-invariance.
pub fn enumerate_normal_traces(u: &SemigroupUniverse) -> Result<Vec<EquivRelation>> {
    let idem = u.idempotent_indices();
    if idem.len() > LATTICE_SIZE_LIMIT {
        return Err(Error::BudgetExceeded("idempotent lattice too large".into()));
    }
    let mut pos = vec![usize::MAX; u.len()];
    for (p, &e) in idem.iter().enumerate() {
        pos[e] = p;
    }
    u.table();
    let all = congruence_lattice_table(idem.len(), |i, j| pos[u.mul_idx(idem[i], idem[j])]);
    Ok(all
        .into_iter()
        .filter(|rel| is_normal_trace(u, rel))
        .collect())
}

/// Outcome of checking the §7/§8 classification on one family at one degree.
#[derive(Debug, Clone)]
pub struct CongruenceTheoremReport {
    pub family: Family,
    pub degree: usize,
    pub lattice_size: usize,
    pub rho_family_size: usize,
    pub lattice_equals_rho_family: bool,
    pub traces_classified: bool,
    pub pairs_match: bool,
}

impl CongruenceTheoremReport {
    pub fn ok(&self) -> bool {
        self.lattice_equals_rho_family && self.traces_classified && self.pairs_match
    }
}

/// Verifies that the brute-force congruence lattice equals the ρ family,
/// that every normal congruence on E is of the classified shape, and that
/// kernel/trace extraction round-trips through the pair conditions.
pub fn check_congruence_theorem(family: Family, n: usize) -> Result<CongruenceTheoremReport> {
    let product = match family {
        Family::IStar => Product::Natural,
        Family::PIStar => Product::Star,
        other => {
            return Err(Error::UnsupportedUniverse(format!(
                "congruence classification covers IStar and PIStar, not {other:?}"
            )))
        }
    };
    let u = family_universe(family, product, n)?;
    let lattice = enumerate_congruences(&u)?;
    let rho = rho_family(&u)?;
    let lset: HashSet<&EquivRelation> = lattice.iter().collect();
    let rset: HashSet<&EquivRelation> = rho.iter().collect();
    let lattice_equals_rho_family = lset == rset;

    let brute_traces: HashSet<EquivRelation> =
        enumerate_normal_traces(&u)?.into_iter().collect();
    let family_traces: HashSet<EquivRelation> =
        normal_trace_family(&u).into_iter().collect();
    let traces_classified = brute_traces == family_traces;

    let mut pairs_match = true;
    for rel in &lattice {
        let pair = pair_of_congruence(&u, rel);
        if !is_congruence_pair(&u, &pair) || &congruence_of_pair(&u, &pair) != rel {
            pairs_match = false;
            break;
        }
    }
    Ok(CongruenceTheoremReport {
        family,
        degree: n,
        lattice_size: lattice.len(),
        rho_family_size: rho.len(),
        lattice_equals_rho_family,
        traces_classified,
        pairs_match,
    })
}

/// The §8 coincidence: congruence lattices of PI*_n(⋆) and wPI*_n(∘) agree
/// as relation sets on the shared carrier.
pub fn lattices_coincide(n: usize) -> Result<bool> {
    let star = family_universe(Family::PIStar, Product::Star, n)?;
    let circ = family_universe(Family::PIStar, Product::Circ, n)?;
    debug_assert_eq!(star.elements(), circ.elements());
    let a: HashSet<EquivRelation> = enumerate_congruences(&star)?.into_iter().collect();
    let b: HashSet<EquivRelation> = enumerate_congruences(&circ)?.into_iter().collect();
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::universe::{closure, GeneratorSet};

    #[test]
    fn two_element_semilattice_has_two_congruences() {
        let e = named::identity(2).unwrap();
        let z = named::zero(2).unwrap();
        let u = closure(&GeneratorSet::new(Product::Star, vec![e, z]), 4).unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(enumerate_congruences(&u).unwrap().len(), 2);
    }

    #[test]
    fn istar2_has_three_congruences() {
        let u = family_universe(Family::IStar, Product::Natural, 2).unwrap();
        let lattice = enumerate_congruences(&u).unwrap();
        assert_eq!(lattice.len(), 3);
        let rho = rho_family(&u).unwrap();
        assert_eq!(rho.len(), 3);
    }

    #[test]
    fn rho_extremes() {
        let u = family_universe(Family::IStar, Product::Natural, 2).unwrap();
        // ρ_{1,{id}} = ι on I*₂ because I₁ = {τ_N} is a singleton
        let iota = build_rho(
            &u,
            &RhoSpec {
                k: 1,
                subgroup: vec![symmetric::identity_perm(2)],
            },
        )
        .unwrap();
        assert!(iota.is_identity());
        // ρ_{1,S₂} glues exactly the two units
        let rho = build_rho(
            &u,
            &RhoSpec {
                k: 1,
                subgroup: symmetric::all_perms(2),
            },
        )
        .unwrap();
        assert_eq!(rho.num_classes(), 2);
        // ρ_{n,A} is universal for every A ⊴ S_{n+1}
        for subgroup in symmetric::normal_subgroups(3).unwrap() {
            let top = build_rho(&u, &RhoSpec { k: 2, subgroup }).unwrap();
            assert!(top.is_universal());
        }
    }

    #[test]
    fn rho_rejects_bad_subgroup() {
        let u = family_universe(Family::IStar, Product::Natural, 2).unwrap();
        // {id, (01)} viewed inside S_3 is not normal
        let bad = RhoSpec {
            k: 2,
            subgroup: vec![vec![0, 1, 2], vec![1, 0, 2]],
        };
        assert!(build_rho(&u, &bad).is_err());
    }

    #[test]
    fn theorem_holds_at_n2() {
        let r = check_congruence_theorem(Family::IStar, 2).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.lattice_size, 3);
        let r = check_congruence_theorem(Family::PIStar, 2).unwrap();
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn coincidence_at_n2() {
        assert!(lattices_coincide(2).unwrap());
    }

    #[test]
    fn principal_congruence_is_congruence() {
        let u = family_universe(Family::IStar, Product::Natural, 3).unwrap();
        let rel = principal_congruence(&u, 0, 1);
        assert!(is_congruence(&u, &rel));
    }
}
