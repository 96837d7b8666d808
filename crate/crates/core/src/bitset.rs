//! Fixed-width bitsets keyed by universe element indices.

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut b = Bits::new(len);
        for &i in indices {
            b.set(i);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// Sets bit `i`, returning true if it was previously clear.
    pub fn insert(&mut self, i: usize) -> bool {
        let was = self.get(i);
        self.set(i);
        !was
    }

    pub fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn or_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn union(&self, other: &Bits) -> Bits {
        let mut b = self.clone();
        b.or_with(other);
        b
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.len, other.len);
        let mut b = self.clone();
        for (w, o) in b.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        b
    }

    pub fn difference(&self, other: &Bits) -> Bits {
        let mut b = self.clone();
        for (w, o) in b.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        b
    }

    pub fn is_subset_of(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(w, o)| w & !o == 0)
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(w, o)| w & o != 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Bits{:?}", self.indices())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut b = Bits::new(130);
        assert!(b.insert(0));
        assert!(b.insert(129));
        assert!(!b.insert(129));
        assert_eq!(b.count(), 2);
        assert_eq!(b.indices(), vec![0, 129]);
        let c = Bits::from_indices(130, &[1, 129]);
        assert!(b.intersects(&c));
        assert_eq!(b.intersection(&c).indices(), vec![129]);
        assert_eq!(b.union(&c).count(), 3);
        assert!(Bits::from_indices(130, &[129]).is_subset_of(&b));
        assert!(!c.is_subset_of(&b));
    }
}
