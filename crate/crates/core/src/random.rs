//! Seedable random element generators for property sampling.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::element::Bipartition;

/// Uniformly random bipartition of the 2n points (an element of C_n),
/// via a random restricted-growth assignment.
pub fn random_c(n: usize, rng: &mut impl Rng) -> Bipartition {
    assert!(n > 0);
    let mut blocks: Vec<Vec<i32>> = Vec::new();
    let points: Vec<i32> = (1..=n as i32).chain((1..=n as i32).map(|v| -v)).collect();
    for p in points {
        let choice = rng.gen_range(0..=blocks.len());
        if choice == blocks.len() {
            blocks.push(vec![p]);
        } else {
            blocks[choice].push(p);
        }
    }
    Bipartition::new(n, blocks).expect("random partition is valid")
}

/// Random element of PI*_n: random covered subsets on each row, random
/// partitions trimmed to a common block count, random matching.
pub fn random_pistar(n: usize, rng: &mut impl Rng) -> Bipartition {
    assert!(n > 0);
    let subset = |rng: &mut dyn rand::RngCore| -> Vec<i32> {
        (1..=n as i32).filter(|_| rng.gen_bool(0.7)).collect()
    };
    let partition = |items: &[i32], rng: &mut dyn rand::RngCore| -> Vec<Vec<i32>> {
        let mut parts: Vec<Vec<i32>> = Vec::new();
        for &p in items {
            let choice = rng.gen_range(0..=parts.len());
            if choice == parts.len() {
                parts.push(vec![p]);
            } else {
                parts[choice].push(p);
            }
        }
        parts
    };
    let tops = partition(&subset(rng), rng);
    let mut bottoms = partition(&subset(rng), rng);
    let k = tops.len().min(bottoms.len());
    let mut tops = tops;
    merge_tail(&mut tops, k);
    merge_tail(&mut bottoms, k);
    bottoms.shuffle(rng);
    let mut blocks: Vec<Vec<i32>> = tops
        .into_iter()
        .zip(bottoms)
        .map(|(t, b)| t.into_iter().chain(b.into_iter().map(|v| -v)).collect())
        .collect();
    let mut top_seen = vec![false; n];
    let mut bottom_seen = vec![false; n];
    for block in &blocks {
        for &p in block {
            if p > 0 {
                top_seen[p as usize - 1] = true;
            } else {
                bottom_seen[(-p) as usize - 1] = true;
            }
        }
    }
    for v in 1..=n {
        if !top_seen[v - 1] {
            blocks.push(vec![v as i32]);
        }
        if !bottom_seen[v - 1] {
            blocks.push(vec![-(v as i32)]);
        }
    }
    Bipartition::new(n, blocks).expect("random PI* element is valid")
}

fn merge_tail(parts: &mut Vec<Vec<i32>>, k: usize) {
    if k == 0 {
        parts.clear();
        return;
    }
    while parts.len() > k {
        let tail = parts.pop().unwrap();
        let last = parts.len() - 1;
        parts[last].extend(tail);
    }
}
