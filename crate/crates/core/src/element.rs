//! Bipartitions of the signed point set {1..n} ∪ {1'..n'} and their
//! structural accessors.
//!
//! A point is encoded as a nonzero integer: positive `v` is the top point
//! `v`, negative `v` is the bottom point `|v|'`. The canonical form sorts
//! points inside a block by the total order 1 < 2 < … < n < 1' < … < n'
//! and sorts blocks by their minimal point; two bipartitions are equal
//! exactly when their canonical forms coincide.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Ordering key for a signed point: tops before bottoms, each ascending.
pub(crate) fn point_key(p: i32) -> (u8, i32) {
    if p > 0 {
        (0, p)
    } else {
        (1, -p)
    }
}

fn cmp_points(a: i32, b: i32) -> Ordering {
    point_key(a).cmp(&point_key(b))
}

/// Classification of a single block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// Singleton block.
    Point,
    /// Block meeting both the top and the bottom row.
    GeneralisedLine,
    /// Two-point generalised line.
    Line,
}

/// Classifies a block; `None` for multi-point blocks confined to one row,
/// which occur in C_n but never in PI*_n.
pub fn block_kind(block: &[i32]) -> Option<BlockKind> {
    if block.len() == 1 {
        return Some(BlockKind::Point);
    }
    let has_top = block.iter().any(|&p| p > 0);
    let has_bottom = block.iter().any(|&p| p < 0);
    if has_top && has_bottom {
        if block.len() == 2 {
            Some(BlockKind::Line)
        } else {
            Some(BlockKind::GeneralisedLine)
        }
    } else {
        None
    }
}

fn is_generalised_line(block: &[i32]) -> bool {
    block.iter().any(|&p| p > 0) && block.iter().any(|&p| p < 0)
}

/// Membership predicates over bipartitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// The full partition semigroup C_n: all bipartitions.
    C,
    /// Every block is a generalised line (dual symmetric inverse semigroup).
    IStar,
    /// Every block is a point or a generalised line.
    PIStar,
    /// Every block is a point or a line (partial injections).
    I,
    /// Every block is a line (permutations, the unit group).
    S,
}

impl Family {
    pub fn contains(self, a: &Bipartition) -> bool {
        match self {
            Family::C => true,
            Family::IStar => a.blocks.iter().all(|b| is_generalised_line(b)),
            Family::PIStar => a
                .blocks
                .iter()
                .all(|b| b.len() == 1 || is_generalised_line(b)),
            Family::I => a
                .blocks
                .iter()
                .all(|b| b.len() == 1 || (b.len() == 2 && is_generalised_line(b))),
            Family::S => a
                .blocks
                .iter()
                .all(|b| b.len() == 2 && is_generalised_line(b)),
        }
    }
}

/// The rank/domain bundle of an element: every field of the dom/ran/codom
/// notation in one place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainData {
    /// Number of generalised lines.
    pub rank: usize,
    /// Partition of the covered top points (positive labels), canonical order.
    pub dom: Vec<Vec<i32>>,
    /// Partition of the covered bottom points (positive labels), canonical order.
    pub ran: Vec<Vec<i32>>,
    /// Top points lying in no generalised line, ascending.
    pub codom: Vec<i32>,
    /// Bottom points lying in no generalised line (positive labels), ascending.
    pub coran: Vec<i32>,
    /// |codom|. For idempotents this equals |coran| as well.
    pub corank: usize,
}

/// A partition of the 2n signed points, stored in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    degree: usize,
    blocks: Vec<Vec<i32>>,
}

impl Bipartition {
    /// Builds an element from raw blocks, validating and canonicalizing.
    pub fn new(degree: usize, blocks: Vec<Vec<i32>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::MalformedElement("degree must be positive".into()));
        }
        let n = degree as i32;
        let mut seen = vec![false; 2 * degree];
        let slot = |p: i32| -> usize {
            if p > 0 {
                p as usize - 1
            } else {
                degree + (-p) as usize - 1
            }
        };
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::MalformedElement("empty block".into()));
            }
            for &p in block {
                if p == 0 {
                    return Err(Error::MalformedElement("zero is not a point".into()));
                }
                if p.abs() > n {
                    return Err(Error::MalformedElement(format!(
                        "point {p} exceeds degree {degree}"
                    )));
                }
                if seen[slot(p)] {
                    return Err(Error::MalformedElement(format!("point {p} repeated")));
                }
                seen[slot(p)] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            let p = if missing < degree {
                (missing + 1) as i32
            } else {
                -((missing - degree + 1) as i32)
            };
            return Err(Error::MalformedElement(format!("point {p} missing")));
        }
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_by(|&a, &b| cmp_points(a, b));
        }
        blocks.sort_by(|a, b| cmp_points(a[0], b[0]));
        Ok(Bipartition { degree, blocks })
    }

    /// Parses the bracketed text format, e.g. `[[1,-1],[2,-2]]`.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let raw: Vec<Vec<i32>> = serde_json::from_str(text)
            .map_err(|e| Error::MalformedElement(format!("bad syntax: {e}")))?;
        Bipartition::new(degree, raw)
    }

    /// Parses with the degree inferred as the largest point mentioned.
    pub fn parse_infer(text: &str) -> Result<Self> {
        let raw: Vec<Vec<i32>> = serde_json::from_str(text)
            .map_err(|e| Error::MalformedElement(format!("bad syntax: {e}")))?;
        let degree = raw
            .iter()
            .flatten()
            .map(|p| p.unsigned_abs() as usize)
            .max()
            .ok_or_else(|| Error::MalformedElement("no points".into()))?;
        Bipartition::new(degree, raw)
    }

    /// Canonical text form; `parse(format(a), n) == a`.
    pub fn format(&self) -> String {
        let mut s = String::from("[");
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push('[');
            for (j, p) in block.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                s.push_str(&p.to_string());
            }
            s.push(']');
        }
        s.push(']');
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<i32>] {
        &self.blocks
    }

    pub fn is_in(&self, family: Family) -> bool {
        family.contains(self)
    }

    /// Number of generalised lines.
    pub fn rank(&self) -> usize {
        self.blocks.iter().filter(|b| is_generalised_line(b)).count()
    }

    /// Generalised lines as (top part, bottom part with positive labels).
    pub fn lines(&self) -> Vec<(Vec<i32>, Vec<i32>)> {
        self.blocks
            .iter()
            .filter(|b| is_generalised_line(b))
            .map(|b| {
                let tops: Vec<i32> = b.iter().copied().filter(|&p| p > 0).collect();
                let bottoms: Vec<i32> = b.iter().map(|&p| -p).filter(|&p| p > 0).collect();
                (tops, bottoms)
            })
            .collect()
    }

    pub fn domain_data(&self) -> DomainData {
        let lines = self.lines();
        let mut covered_top = vec![false; self.degree];
        let mut covered_bottom = vec![false; self.degree];
        let mut dom = Vec::new();
        let mut ran = Vec::new();
        for (tops, bottoms) in &lines {
            for &t in tops {
                covered_top[t as usize - 1] = true;
            }
            for &b in bottoms {
                covered_bottom[b as usize - 1] = true;
            }
            dom.push(tops.clone());
            ran.push(bottoms.clone());
        }
        dom.sort();
        ran.sort();
        let codom: Vec<i32> = (1..=self.degree as i32)
            .filter(|&t| !covered_top[t as usize - 1])
            .collect();
        let coran: Vec<i32> = (1..=self.degree as i32)
            .filter(|&t| !covered_bottom[t as usize - 1])
            .collect();
        DomainData {
            rank: lines.len(),
            corank: codom.len(),
            dom,
            ran,
            codom,
            coran,
        }
    }

    /// Mirror involution: every block is reflected through the middle, so
    /// generalised lines swap their top and bottom parts and points move to
    /// the opposite row. On PI*_n this is the inverse for both ⋆ and ∘.
    pub fn flip(&self) -> Bipartition {
        let blocks: Vec<Vec<i32>> = self.blocks.iter().map(|b| b.iter().map(|&p| -p).collect()).collect();
        Bipartition::new(self.degree, blocks).expect("mirror of a valid element is valid")
    }

    /// Semigroup inverse; defined on the PI* family.
    pub fn inverse(&self) -> Result<Bipartition> {
        if !self.is_in(Family::PIStar) {
            return Err(Error::OutsideFamily {
                family: Family::PIStar,
                element: self.format(),
            });
        }
        Ok(self.flip())
    }

    /// True when every block lies inside Y ∪ Y' or misses it entirely.
    pub fn is_invariant(&self, y: &[usize]) -> Result<bool> {
        let yset = self.validate_point_set(y)?;
        Ok(self.blocks.iter().all(|block| {
            let inside = block
                .iter()
                .filter(|&&p| yset[p.unsigned_abs() as usize - 1])
                .count();
            inside == 0 || inside == block.len()
        }))
    }

    /// Restriction to an invariant set Y, relabelled order-isomorphically
    /// onto {1..|Y|}.
    pub fn restrict(&self, y: &[usize]) -> Result<Bipartition> {
        if !self.is_invariant(y)? {
            return Err(Error::NotInvariant);
        }
        let mut sorted: Vec<usize> = y.to_vec();
        sorted.sort_unstable();
        let relabel = |p: i32| -> i32 {
            let idx = sorted
                .binary_search(&(p.unsigned_abs() as usize))
                .expect("point in Y") as i32
                + 1;
            if p > 0 {
                idx
            } else {
                -idx
            }
        };
        let yset = self.validate_point_set(y)?;
        let blocks: Vec<Vec<i32>> = self
            .blocks
            .iter()
            .filter(|block| block.iter().all(|&p| yset[p.unsigned_abs() as usize - 1]))
            .map(|block| block.iter().map(|&p| relabel(p)).collect())
            .collect();
        Bipartition::new(sorted.len(), blocks)
    }

    fn validate_point_set(&self, y: &[usize]) -> Result<Vec<bool>> {
        let mut yset = vec![false; self.degree];
        for &t in y {
            if t == 0 || t > self.degree {
                return Err(Error::InvalidParams(format!(
                    "point {t} out of range 1..={}",
                    self.degree
                )));
            }
            if yset[t - 1] {
                return Err(Error::InvalidParams(format!("point {t} repeated in Y")));
            }
            yset[t - 1] = true;
        }
        Ok(yset)
    }

}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl fmt::Debug for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B(n={}, {})", self.degree, self.format())
    }
}

impl PartialOrd for Bipartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bipartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let key = |b: &Bipartition| -> Vec<Vec<(u8, i32)>> {
                b.blocks
                    .iter()
                    .map(|blk| blk.iter().map(|&p| point_key(p)).collect())
                    .collect()
            };
            key(self).cmp(&key(other))
        })
    }
}

impl Serialize for Bipartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            blocks: &'a [Vec<i32>],
        }
        Repr {
            n: self.degree,
            blocks: &self.blocks,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Bipartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            blocks: Vec<Vec<i32>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        Bipartition::new(repr.n, repr.blocks).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_identity() {
        let a = Bipartition::parse("[[1,-1],[2,-2]]", 2).unwrap();
        assert_eq!(a.format(), "[[1,-1],[2,-2]]");
        assert_eq!(a.rank(), 2);
        assert!(a.is_in(Family::S));
    }

    #[test]
    fn parse_canonicalizes() {
        let a = Bipartition::parse("[[2,1,-1],[-3],[3],[-2]]", 3).unwrap();
        assert_eq!(a.format(), "[[1,2,-1],[3],[-2],[-3]]");
    }

    #[test]
    fn parse_rejects_overlap() {
        assert!(matches!(
            Bipartition::parse("[[1,-1],[1,2]]", 2),
            Err(Error::MalformedElement(_))
        ));
    }

    #[test]
    fn parse_rejects_missing_zero_and_range() {
        assert!(Bipartition::parse("[[1,-1]]", 2).is_err());
        assert!(Bipartition::parse("[[1,-1],[2,-2],[0]]", 2).is_err());
        assert!(Bipartition::parse("[[1,-1],[2,-2],[3,-3]]", 2).is_err());
        assert!(Bipartition::parse("[[1,-1],[2,-2,]]", 2).is_err());
    }

    #[test]
    fn roundtrip_format_parse() {
        let texts = ["[[1,2,-1,-2]]", "[[1,-1,-2],[2]]", "[[1,2,-1],[3,-3],[-2]]"];
        for t in texts {
            let a = Bipartition::parse_infer(t).unwrap();
            assert_eq!(a.format(), t);
            assert_eq!(Bipartition::parse(t, a.degree()).unwrap(), a);
        }
    }

    #[test]
    fn families() {
        let id = Bipartition::parse("[[1,-1],[2,-2]]", 2).unwrap();
        assert!(id.is_in(Family::S) && id.is_in(Family::I) && id.is_in(Family::IStar));
        let tau = Bipartition::parse("[[1,2,-1,-2]]", 2).unwrap();
        assert!(tau.is_in(Family::IStar) && !tau.is_in(Family::I));
        let zero = Bipartition::parse("[[1],[2],[-1],[-2]]", 2).unwrap();
        assert!(zero.is_in(Family::I) && !zero.is_in(Family::IStar));
        let gamma = Bipartition::parse("[[1,2,-1],[-2]]", 2).unwrap();
        assert!(gamma.is_in(Family::PIStar) && !gamma.is_in(Family::I));
        let bad = Bipartition::parse("[[1,2],[-1],[-2]]", 2).unwrap();
        assert!(!bad.is_in(Family::PIStar) && bad.is_in(Family::C));
    }

    #[test]
    fn block_kinds() {
        let a = Bipartition::parse("[[1,2,-1],[3,-3],[-2]]", 3).unwrap();
        let kinds: Vec<Option<BlockKind>> = a.blocks().iter().map(|b| block_kind(b)).collect();
        assert_eq!(
            kinds,
            vec![
                Some(BlockKind::GeneralisedLine),
                Some(BlockKind::Line),
                Some(BlockKind::Point)
            ]
        );
        assert_eq!(block_kind(&[1, 2]), None);
    }

    #[test]
    fn domain_data_gamma() {
        // rank(γ₁,₂ at n=3) = 2, codom = {}, coran = {2'}
        let gamma = Bipartition::parse("[[1,2,-1],[3,-3],[-2]]", 3).unwrap();
        let d = gamma.domain_data();
        assert_eq!(d.rank, 2);
        assert!(d.codom.is_empty());
        assert_eq!(d.coran, vec![2]);
        assert_eq!(d.corank, 0);
        assert_eq!(d.dom, vec![vec![1, 2], vec![3]]);
        assert_eq!(d.ran, vec![vec![1], vec![3]]);
    }

    #[test]
    fn domain_data_zero() {
        let zero = Bipartition::parse("[[1],[2],[-1],[-2]]", 2).unwrap();
        let d = zero.domain_data();
        assert_eq!(d.rank, 0);
        assert_eq!(d.codom, vec![1, 2]);
        assert_eq!(d.corank, 2);
    }

    #[test]
    fn flip_is_involution() {
        let a = Bipartition::parse("[[1,2,-1],[3,-3],[-2]]", 3).unwrap();
        assert_eq!(a.flip().format(), "[[1,-1,-2],[2],[3,-3]]");
        assert_eq!(a.flip().flip(), a);
    }

    #[test]
    fn restrict_and_invariance() {
        let gamma = Bipartition::parse("[[1,2,-1],[3,-3],[-2]]", 3).unwrap();
        assert!(gamma.is_invariant(&[3]).unwrap());
        assert!(!gamma.is_invariant(&[1]).unwrap());
        let r = gamma.restrict(&[3]).unwrap();
        assert_eq!(r.format(), "[[1,-1]]");
        let id3 = Bipartition::parse("[[1,-1],[2,-2],[3,-3]]", 3).unwrap();
        assert_eq!(id3.restrict(&[1, 2]).unwrap().format(), "[[1,-1],[2,-2]]");
        assert!(matches!(gamma.restrict(&[1]), Err(Error::NotInvariant)));
    }

    #[test]
    fn json_contract() {
        let a = Bipartition::parse("[[1,2,-1],[3,-3],[-2]]", 3).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"n":3,"blocks":[[1,2,-1],[3,-3],[-2]]}"#);
        let back: Bipartition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<Bipartition>(r#"{"n":2,"blocks":[[1,-1]]}"#).is_err());
    }
}
