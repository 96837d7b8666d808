//! Plain permutation-group utilities on S_k: subgroup enumeration and the
//! normal/maximal subgroup tables the congruence and maximality theorems
//! quantify over.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A permutation of {0..k-1} as an image vector.
pub type Perm = Vec<usize>;

pub fn identity_perm(k: usize) -> Perm {
    (0..k).collect()
}

/// Apply `p` then `q`.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    p.iter().map(|&i| q[i]).collect()
}

pub fn invert(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &im) in p.iter().enumerate() {
        inv[im] = i;
    }
    inv
}

pub fn all_perms(k: usize) -> Vec<Perm> {
    (0..k).permutations(k).collect()
}

pub fn is_even(p: &Perm) -> bool {
    let mut seen = vec![false; p.len()];
    let mut parity = true;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            parity = !parity;
        }
    }
    parity
}

fn close_group(k: usize, gens: &[Perm]) -> BTreeSet<Perm> {
    let mut set: BTreeSet<Perm> = BTreeSet::new();
    set.insert(identity_perm(k));
    let mut queue: Vec<Perm> = gens.to_vec();
    while let Some(p) = queue.pop() {
        if set.insert(p.clone()) {
            for q in set.clone() {
                queue.push(compose(&p, &q));
                queue.push(compose(&q, &p));
            }
        }
    }
    set
}

/// Every subgroup of S_k for k ≤ 4, each sorted; every subgroup of these
/// symmetric groups is 2-generated, so closing all generator pairs suffices.
pub fn all_subgroups(k: usize) -> Result<Vec<Vec<Perm>>> {
    if k > 4 {
        return Err(Error::BudgetExceeded(format!(
            "subgroup enumeration supported for k <= 4, got {k}"
        )));
    }
    let perms = all_perms(k);
    let mut out: BTreeSet<Vec<Perm>> = BTreeSet::new();
    for p in &perms {
        for q in &perms {
            let group: Vec<Perm> = close_group(k, &[p.clone(), q.clone()]).into_iter().collect();
            out.insert(group);
        }
    }
    Ok(out.into_iter().collect())
}

/// True when `group` is normal in S_k (conjugation-invariant).
pub fn is_normal_in_sym(k: usize, group: &[Perm]) -> bool {
    let set: BTreeSet<&Perm> = group.iter().collect();
    all_perms(k).iter().all(|g| {
        let ginv = invert(g);
        group
            .iter()
            .all(|a| set.contains(&compose(&compose(&ginv, a), g)))
    })
}

/// Normal subgroups of S_k: trivial, A_k, S_k, plus the Klein group in S_4.
pub fn normal_subgroups(k: usize) -> Result<Vec<Vec<Perm>>> {
    if k == 0 || k > 5 {
        return Err(Error::InvalidParams(format!(
            "normal subgroup table covers 1 <= k <= 5, got {k}"
        )));
    }
    let mut out: Vec<BTreeSet<Perm>> = Vec::new();
    let trivial: BTreeSet<Perm> = [identity_perm(k)].into_iter().collect();
    out.push(trivial);
    if k >= 3 {
        out.push(all_perms(k).into_iter().filter(is_even).collect());
    }
    if k == 4 {
        let klein: BTreeSet<Perm> = [
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ]
        .into_iter()
        .collect();
        out.push(klein);
    }
    if k >= 2 {
        out.push(all_perms(k).into_iter().collect());
    }
    let mut listed: Vec<Vec<Perm>> = out
        .into_iter()
        .map(|s| s.into_iter().collect::<Vec<Perm>>())
        .collect();
    listed.sort_by_key(|g| g.len());
    listed.dedup();
    Ok(listed)
}

/// Maximal subgroups of S_k for k ≤ 4: A_k, the point stabilizers, and the
/// pair-partition stabilizers (dihedral of order 8) in S_4.
pub fn maximal_subgroups(k: usize) -> Result<Vec<Vec<Perm>>> {
    if k == 0 || k > 4 {
        return Err(Error::InvalidParams(format!(
            "maximal subgroup table covers 1 <= k <= 4, got {k}"
        )));
    }
    let perms = all_perms(k);
    let mut out: BTreeSet<Vec<Perm>> = BTreeSet::new();
    if k == 1 {
        return Ok(vec![]);
    }
    if k == 2 {
        return Ok(vec![vec![identity_perm(2)]]);
    }
    // A_k
    out.insert(perms.iter().filter(|p| is_even(p)).cloned().collect());
    // point stabilizers
    for pt in 0..k {
        out.insert(perms.iter().filter(|p| p[pt] == pt).cloned().collect());
    }
    if k == 4 {
        // stabilizers of a 2|2 block partition
        for pair in [[0usize, 1], [0, 2], [0, 3]] {
            let partition_of = |x: usize| -> usize {
                if pair.contains(&x) {
                    0
                } else {
                    1
                }
            };
            out.insert(
                perms
                    .iter()
                    .filter(|p| (0..4).all(|x| {
                        (0..4).all(|y| {
                            partition_of(x) != partition_of(y) || partition_of(p[x]) == partition_of(p[y])
                        })
                    }))
                    .cloned()
                    .collect(),
            );
        }
    }
    Ok(out.into_iter().collect())
}
