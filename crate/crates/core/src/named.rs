//! Constructors for the named elements used throughout the structure theory:
//! α, τ, γ, ξ, ε, η, the zero, the identity and permutation embeddings.

use crate::element::Bipartition;
use crate::error::{Error, Result};

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("degree must be positive".into()));
    }
    Ok(())
}

fn check_points(points: &[usize], n: usize) -> Result<()> {
    check_degree(n)?;
    let mut seen = vec![false; n];
    for &x in points {
        if x == 0 || x > n {
            return Err(Error::InvalidParams(format!("point {x} out of range 1..={n}")));
        }
        if seen[x - 1] {
            return Err(Error::InvalidParams(format!("point {x} repeated")));
        }
        seen[x - 1] = true;
    }
    Ok(())
}

/// Identity: lines {t,t'} everywhere.
pub fn identity(n: usize) -> Result<Bipartition> {
    check_degree(n)?;
    let blocks = (1..=n as i32).map(|t| vec![t, -t]).collect();
    Bipartition::new(n, blocks)
}

/// The zero of both ⋆ and ∘: all blocks are points.
pub fn zero(n: usize) -> Result<Bipartition> {
    check_degree(n)?;
    let mut blocks: Vec<Vec<i32>> = Vec::new();
    for t in 1..=n as i32 {
        blocks.push(vec![t]);
        blocks.push(vec![-t]);
    }
    Bipartition::new(n, blocks)
}

/// α_Y: lines {t,t'} for t ∉ Y, points on Y. α_∅ is the identity and α_N
/// is the zero.
pub fn alpha_set(y: &[usize], n: usize) -> Result<Bipartition> {
    check_points(y, n)?;
    let mut in_y = vec![false; n];
    for &x in y {
        in_y[x - 1] = true;
    }
    let mut blocks: Vec<Vec<i32>> = Vec::new();
    for t in 1..=n {
        if in_y[t - 1] {
            blocks.push(vec![t as i32]);
            blocks.push(vec![-(t as i32)]);
        } else {
            blocks.push(vec![t as i32, -(t as i32)]);
        }
    }
    Bipartition::new(n, blocks)
}

/// α_x = α_{ {x} }.
pub fn alpha(x: usize, n: usize) -> Result<Bipartition> {
    alpha_set(&[x], n)
}

/// τ_Y: the block Y ∪ Y' plus lines elsewhere. Y must be non-empty.
pub fn tau_set(y: &[usize], n: usize) -> Result<Bipartition> {
    check_points(y, n)?;
    if y.is_empty() {
        return Err(Error::InvalidParams("tau requires non-empty Y".into()));
    }
    let mut in_y = vec![false; n];
    for &x in y {
        in_y[x - 1] = true;
    }
    let mut big: Vec<i32> = Vec::new();
    for &x in y {
        big.push(x as i32);
        big.push(-(x as i32));
    }
    let mut blocks = vec![big];
    for t in 1..=n {
        if !in_y[t - 1] {
            blocks.push(vec![t as i32, -(t as i32)]);
        }
    }
    Bipartition::new(n, blocks)
}

/// τ_{x,y} for distinct x, y.
pub fn tau(x: usize, y: usize, n: usize) -> Result<Bipartition> {
    if x == y {
        return Err(Error::InvalidParams("tau requires distinct points".into()));
    }
    tau_set(&[x, y], n)
}

/// γ_{x,y}: the block {x,y,x'}, the point y', lines elsewhere.
pub fn gamma(x: usize, y: usize, n: usize) -> Result<Bipartition> {
    check_points(&[x, y], n)?;
    let mut blocks = vec![vec![x as i32, y as i32, -(x as i32)], vec![-(y as i32)]];
    for t in 1..=n {
        if t != x && t != y {
            blocks.push(vec![t as i32, -(t as i32)]);
        }
    }
    Bipartition::new(n, blocks)
}

/// ξ_{x,y,z}: blocks {x,y,x'} and {z,y',z'}, lines elsewhere; lies in I*_n.
pub fn xi(x: usize, y: usize, z: usize, n: usize) -> Result<Bipartition> {
    check_points(&[x, y, z], n)?;
    let mut blocks = vec![
        vec![x as i32, y as i32, -(x as i32)],
        vec![z as i32, -(y as i32), -(z as i32)],
    ];
    for t in 1..=n {
        if t != x && t != y && t != z {
            blocks.push(vec![t as i32, -(t as i32)]);
        }
    }
    Bipartition::new(n, blocks)
}

/// ε_Y: the single generalised line Y ∪ Y', all other blocks points.
/// A rank-1 idempotent; these are exactly the primitive idempotents.
pub fn epsilon(y: &[usize], n: usize) -> Result<Bipartition> {
    check_points(y, n)?;
    if y.is_empty() {
        return Err(Error::InvalidParams("epsilon requires non-empty Y".into()));
    }
    let mut in_y = vec![false; n];
    for &x in y {
        in_y[x - 1] = true;
    }
    let mut line: Vec<i32> = Vec::new();
    for &x in y {
        line.push(x as i32);
        line.push(-(x as i32));
    }
    let mut blocks = vec![line];
    for t in 1..=n {
        if !in_y[t - 1] {
            blocks.push(vec![t as i32]);
            blocks.push(vec![-(t as i32)]);
        }
    }
    Bipartition::new(n, blocks)
}

/// η_Y = {Y ∪ Y', (N∖Y) ∪ (N∖Y)'}; the complement block vanishes when
/// Y = N, leaving τ_N.
pub fn eta(y: &[usize], n: usize) -> Result<Bipartition> {
    check_points(y, n)?;
    if y.is_empty() {
        return Err(Error::InvalidParams("eta requires non-empty Y".into()));
    }
    let mut in_y = vec![false; n];
    for &x in y {
        in_y[x - 1] = true;
    }
    let mut first: Vec<i32> = Vec::new();
    let mut second: Vec<i32> = Vec::new();
    for t in 1..=n {
        let target = if in_y[t - 1] { &mut first } else { &mut second };
        target.push(t as i32);
        target.push(-(t as i32));
    }
    let mut blocks = vec![first];
    if !second.is_empty() {
        blocks.push(second);
    }
    Bipartition::new(n, blocks)
}

/// Embeds a permutation given by 0-based images (`images[i]` is the image
/// of point i+1, minus one) as the all-lines element {t, σ(t)'}.
pub fn from_permutation(images: &[usize]) -> Result<Bipartition> {
    let n = images.len();
    check_degree(n)?;
    let mut seen = vec![false; n];
    for &im in images {
        if im >= n {
            return Err(Error::InvalidParams(format!("image {im} out of range")));
        }
        if seen[im] {
            return Err(Error::InvalidParams("not a permutation".into()));
        }
        seen[im] = true;
    }
    let blocks = (0..n)
        .map(|i| vec![(i + 1) as i32, -((images[i] + 1) as i32)])
        .collect();
    Bipartition::new(n, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Family;
    use crate::product::star_mul;

    #[test]
    fn tau_full_set_is_istar_zero() {
        let t = tau_set(&[1, 2, 3], 3).unwrap();
        assert_eq!(t.format(), "[[1,2,3,-1,-2,-3]]");
        assert_eq!(t.rank(), 1);
        // the zero of I*_n: absorbing inside I*
        let x = xi(1, 2, 3, 3).unwrap();
        assert_eq!(star_mul(&t, &x).unwrap(), t);
        assert_eq!(star_mul(&x, &t).unwrap(), t);
    }

    #[test]
    fn eta_degenerates_to_identity() {
        assert_eq!(eta(&[1], 2).unwrap(), identity(2).unwrap());
        assert_eq!(eta(&[1, 2], 2).unwrap(), tau_set(&[1, 2], 2).unwrap());
    }

    #[test]
    fn epsilon_is_rank_one_idempotent() {
        for y in [vec![1], vec![2, 3], vec![1, 2, 3]] {
            let e = epsilon(&y, 3).unwrap();
            assert_eq!(e.rank(), 1);
            assert_eq!(star_mul(&e, &e).unwrap(), e);
        }
    }

    #[test]
    fn gamma_structure() {
        let g = gamma(1, 2, 3).unwrap();
        assert_eq!(g.format(), "[[1,2,-1],[3,-3],[-2]]");
        assert_eq!(g.rank(), 2);
        assert!(g.is_in(Family::PIStar) && !g.is_in(Family::IStar));
        let x = xi(1, 2, 3, 3).unwrap();
        assert!(x.is_in(Family::IStar));
    }

    #[test]
    fn rejects_bad_params() {
        assert!(gamma(1, 1, 3).is_err());
        assert!(gamma(1, 4, 3).is_err());
        assert!(xi(1, 2, 2, 3).is_err());
        assert!(tau(2, 2, 3).is_err());
        assert!(epsilon(&[], 3).is_err());
        assert!(alpha(0, 3).is_err());
        assert!(from_permutation(&[0, 0]).is_err());
    }

    #[test]
    fn zero_is_alpha_of_everything() {
        assert_eq!(zero(3).unwrap(), alpha_set(&[1, 2, 3], 3).unwrap());
        assert_eq!(identity(3).unwrap(), alpha_set(&[], 3).unwrap());
    }

    #[test]
    fn permutation_embedding_composes() {
        use crate::product::natural_mul;
        // images are 0-based: (1 2) at n=3
        let swap = from_permutation(&[1, 0, 2]).unwrap();
        let cycle = from_permutation(&[1, 2, 0]).unwrap();
        let prod = natural_mul(&swap, &cycle).unwrap();
        // apply swap then cycle: 1→2→3, 2→1→2, 3→3→1
        assert_eq!(prod, from_permutation(&[2, 1, 0]).unwrap());
    }
}
