//! Fixed-width bitset backed by `u64` blocks.
//!
//! Both item sets (patterns, transactions) and transaction-index sets
//! (covers) are stored in this representation, so set algebra is word-wise
//! and cover equality is a block compare.

const BLOCK_BITS: usize = 64;

/// A set over `0..width` with all-zero padding bits above `width`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    width: usize,
    blocks: Vec<u64>,
}

impl Bitset {
    pub fn new(width: usize) -> Self {
        Bitset {
            width,
            blocks: vec![0; width.div_ceil(BLOCK_BITS)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut bs = Bitset::new(width);
        for b in &mut bs.blocks {
            *b = !0;
        }
        bs.clear_padding();
        bs
    }

    pub fn from_indices(width: usize, indices: &[usize]) -> Self {
        let mut bs = Bitset::new(width);
        for &i in indices {
            bs.insert(i);
        }
        bs
    }

    /// Number of representable elements, not the current cardinality.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.width, "bit {index} out of width {}", self.width);
        self.blocks[index / BLOCK_BITS] |= 1 << (index % BLOCK_BITS);
    }

    pub fn remove(&mut self, index: usize) {
        assert!(index < self.width, "bit {index} out of width {}", self.width);
        self.blocks[index / BLOCK_BITS] &= !(1 << (index % BLOCK_BITS));
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.width && self.blocks[index / BLOCK_BITS] >> (index % BLOCK_BITS) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// True iff `self ⊆ other`. Widths must match.
    pub fn is_subset(&self, other: &Bitset) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Bitset) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    /// |self ∩ other|
    pub fn intersection_count(&self, other: &Bitset) -> usize {
        debug_assert_eq!(self.width, other.width);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// |self \ other|
    pub fn difference_count(&self, other: &Bitset) -> usize {
        debug_assert_eq!(self.width, other.width);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &Bitset) -> Bitset {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &Bitset) -> Bitset {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> Ones<'_> {
        Ones {
            blocks: &self.blocks,
            block_idx: 0,
            current: self.blocks.first().copied().unwrap_or(0),
        }
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.ones().collect()
    }

    /// Lexicographic order on the ascending index sequences. For equal-size
    /// sets this means the set holding the smallest non-shared index sorts
    /// first.
    pub fn cmp_lex(&self, other: &Bitset) -> std::cmp::Ordering {
        self.ones().cmp(other.ones())
    }

    fn clear_padding(&mut self) {
        let used = self.width % BLOCK_BITS;
        if used != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1 << used) - 1;
            }
        }
        if self.width == 0 {
            self.blocks.clear();
        }
    }
}

impl std::fmt::Debug for Bitset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}

pub struct Ones<'a> {
    blocks: &'a [u64],
    block_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.block_idx += 1;
            if self.block_idx >= self.blocks.len() {
                return None;
            }
            self.current = self.blocks[self.block_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.block_idx * BLOCK_BITS + bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_count() {
        let mut bs = Bitset::new(130);
        assert!(bs.is_empty());
        for i in [0, 63, 64, 129] {
            bs.insert(i);
        }
        assert_eq!(bs.count_ones(), 4);
        assert!(bs.contains(64));
        assert!(!bs.contains(65));
        bs.remove(64);
        assert_eq!(bs.to_indices(), vec![0, 63, 129]);
    }

    #[test]
    fn set_algebra() {
        let a = Bitset::from_indices(10, &[1, 3, 5, 7]);
        let b = Bitset::from_indices(10, &[3, 5, 8]);
        assert_eq!(a.intersection_count(&b), 2);
        assert_eq!(a.difference_count(&b), 2);
        assert!(!a.is_subset(&b));
        assert!(Bitset::from_indices(10, &[3, 5]).is_subset(&a));
        assert!(a.intersects(&b));
        assert_eq!(a.intersection(&b).to_indices(), vec![3, 5]);
        assert_eq!(a.union(&b).to_indices(), vec![1, 3, 5, 7, 8]);
    }

    #[test]
    fn full_clears_padding() {
        let bs = Bitset::full(70);
        assert_eq!(bs.count_ones(), 70);
        assert_eq!(bs.ones().last(), Some(69));
    }

    #[test]
    fn lex_order_on_equal_sizes() {
        // {0,3} < {1,2}: smallest non-shared index wins.
        let a = Bitset::from_indices(8, &[0, 3]);
        let b = Bitset::from_indices(8, &[1, 2]);
        assert_eq!(a.cmp_lex(&b), std::cmp::Ordering::Less);
        // {0,2} < {0,3}.
        let c = Bitset::from_indices(8, &[0, 2]);
        assert_eq!(c.cmp_lex(&a), std::cmp::Ordering::Less);
        // prefix rule: {0,1} < {0,1,5}
        let d = Bitset::from_indices(8, &[0, 1]);
        let e = Bitset::from_indices(8, &[0, 1, 5]);
        assert_eq!(d.cmp_lex(&e), std::cmp::Ordering::Less);
    }

    #[test]
    fn empty_width_is_valid() {
        let bs = Bitset::new(0);
        assert!(bs.is_empty());
        assert_eq!(bs.ones().count(), 0);
    }
}
