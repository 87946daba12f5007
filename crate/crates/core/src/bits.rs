//! Packed bit vectors over GF(2) and row reduction.

use std::fmt;

/// Fixed-length bit vector packed into 64-bit words, bit `i` at word `i / 64`.
///
/// Bits past `len` in the last word are always zero, so derived equality and
/// popcounts are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; len.div_ceil(64)],
        };
        v.clear_tail();
        v
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// `'0'`/`'1'` characters, index 0 first.
    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Reduced row echelon form of a set of GF(2) rows. Zero rows are dropped, so
/// the result length is the rank. Pivot columns are strictly increasing.
pub fn row_reduce(rows: &[BitVec]) -> Vec<BitVec> {
    let mut basis: Vec<(usize, BitVec)> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (pivot, b) in &basis {
            if r.get(*pivot) {
                r.xor_assign(b);
            }
        }
        if let Some(pivot) = r.first_one() {
            for (_, b) in basis.iter_mut() {
                if b.get(pivot) {
                    b.xor_assign(&r);
                }
            }
            basis.push((pivot, r));
        }
    }
    basis.sort_by_key(|(p, _)| *p);
    basis.into_iter().map(|(_, r)| r).collect()
}

pub fn rank(rows: &[BitVec]) -> usize {
    row_reduce(rows).len()
}

/// Membership of `v` in the span of `rref` (output of [`row_reduce`]).
pub fn in_span(rref: &[BitVec], v: &BitVec) -> bool {
    let mut r = v.clone();
    for row in rref {
        let pivot = row.first_one().expect("rref rows are nonzero");
        if r.get(pivot) {
            r.xor_assign(row);
        }
    }
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::from_fn(s.len(), |i| s.as_bytes()[i] == b'1')
    }

    #[test]
    fn ones_tail_is_clean() {
        let v = BitVec::ones(70);
        assert_eq!(v.count_ones(), 70);
        assert_eq!(v.words()[1], 0b111111);
    }

    #[test]
    fn rank_and_span() {
        let rows = vec![bv("1100"), bv("0110"), bv("1010"), bv("0001")];
        let r = row_reduce(&rows);
        assert_eq!(r.len(), 3);
        assert!(in_span(&r, &bv("1011")));
        assert!(!in_span(&r, &bv("1000")));
        assert!(in_span(&r, &BitVec::zeros(4)));
    }

    #[test]
    fn rref_is_reduced() {
        let rows = vec![bv("111"), bv("011"), bv("001")];
        let r = row_reduce(&rows);
        assert_eq!(r, vec![bv("100"), bv("010"), bv("001")]);
    }
}
