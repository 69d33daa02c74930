//! Dense bit vectors and row reduction over GF(2).
//!
//! Cycle supports, 0/1 lifts of lattice classes and basis decompositions are
//! all stored as [`BitVec`]s indexed by edge (or basis) position.

use std::fmt;

const WORD: usize = 64;

/// Fixed-length bit vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        Self::from_indices(len, [i])
    }

    /// Builds a vector of length `len` from the low bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD || mask >> len.min(63) == 0);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = if len < WORD {
                mask & ((1 << len) - 1)
            } else {
                mask
            };
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Number of positions set in both vectors (the integer dot product of
    /// the 0/1 lifts).
    pub fn overlap(&self, other: &BitVec) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        self.overlap(other) % 2 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    /// Low 64 bits as an integer mask.
    pub fn to_mask(&self) -> u64 {
        assert!(
            self.len <= WORD,
            "vector of length {} does not fit a mask",
            self.len
        );
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    bits: BitVec,
    /// Which generators were combined to produce `bits`.
    combo: BitVec,
}

/// Span of a list of generators, kept in reduced row echelon form.
///
/// Every stored row is zero at every other row's pivot, so [`Span::reduce`]
/// returns a canonical coset representative: the residual vanishes on all
/// pivot columns.
#[derive(Clone, Debug)]
pub struct Span {
    len: usize,
    generators: usize,
    rows: Vec<Row>,
}

impl Span {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            generators: 0,
            rows: Vec::new(),
        }
    }

    pub fn from_generators<'a, I>(len: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = &'a BitVec>,
    {
        let gens: Vec<&BitVec> = gens.into_iter().collect();
        let mut span = Span {
            len,
            generators: gens.len(),
            rows: Vec::new(),
        };
        for (i, g) in gens.into_iter().enumerate() {
            span.push(g.clone(), BitVec::unit(span.generators, i));
        }
        span
    }

    fn push(&mut self, bits: BitVec, combo: BitVec) -> bool {
        let (bits, combo) = self.reduce_tracked(bits, combo);
        let Some(pivot) = bits.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.bits.get(pivot) {
                row.bits.xor_assign(&bits);
                row.combo.xor_assign(&combo);
            }
        }
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(at, Row { pivot, bits, combo });
        true
    }

    fn reduce_tracked(&self, mut bits: BitVec, mut combo: BitVec) -> (BitVec, BitVec) {
        assert_eq!(bits.len(), self.len);
        for row in &self.rows {
            if bits.get(row.pivot) {
                bits.xor_assign(&row.bits);
                combo.xor_assign(&row.combo);
            }
        }
        (bits, combo)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        self.reduce_tracked(v.clone(), BitVec::zeros(self.generators))
            .0
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coefficients expressing `v` as a sum of the generators, if `v` lies
    /// in the span. Unique when the generators are independent.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let (rest, combo) = self.reduce_tracked(v.clone(), BitVec::zeros(self.generators));
        rest.is_zero().then_some(combo)
    }
}

/// Rank of a list of vectors.
pub fn rank<'a, I: IntoIterator<Item = &'a BitVec>>(len: usize, vectors: I) -> usize {
    Span::from_generators(len, vectors).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bit_ops() {
        let a = BitVec::from_indices(70, [0, 3, 65]);
        let b = BitVec::from_indices(70, [3, 4, 65]);
        assert_eq!(a.xor(&b).ones().collect::<Vec<_>>(), vec![0, 4]);
        assert_eq!(a.overlap(&b), 2);
        assert!(!a.dot(&b));
        assert_eq!(a.count_ones(), 3);
        assert_eq!(format!("{:?}", BitVec::from_indices(3, [1])), "[010]");
    }

    #[test]
    fn reduce_is_canonical_on_pivots() {
        let gens = [
            BitVec::from_indices(4, [0, 1]),
            BitVec::from_indices(4, [1, 2]),
            BitVec::from_indices(4, [0, 2]),
        ];
        let span = Span::from_generators(4, &gens);
        assert_eq!(span.rank(), 2);
        let v = BitVec::from_indices(4, [0, 3]);
        let r = span.reduce(&v);
        for p in span.pivots() {
            assert!(!r.get(p));
        }
        assert_eq!(span.reduce(&v.xor(&gens[1])), r);
    }

    #[test]
    fn express_recovers_combination() {
        let gens = [
            BitVec::from_indices(5, [0, 1, 4]),
            BitVec::from_indices(5, [1, 2]),
            BitVec::from_indices(5, [2, 3, 4]),
        ];
        let span = Span::from_generators(5, &gens);
        let target = gens[0].xor(&gens[2]);
        let c = span.express(&target).unwrap();
        assert_eq!(c.ones().collect::<Vec<_>>(), vec![0, 2]);
        assert!(span.express(&BitVec::unit(5, 0)).is_none());
    }

    proptest! {
        #[test]
        fn express_roundtrip(masks in proptest::collection::vec(0u64..256, 1..6), pick in 0u64..64) {
            let gens: Vec<BitVec> = masks.iter().map(|&m| BitVec::from_mask(8, m)).collect();
            let span = Span::from_generators(8, &gens);
            let mut v = BitVec::zeros(8);
            for (i, g) in gens.iter().enumerate() {
                if pick >> i & 1 == 1 {
                    v.xor_assign(g);
                }
            }
            let c = span.express(&v).unwrap();
            let mut back = BitVec::zeros(8);
            for i in c.ones() {
                back.xor_assign(&gens[i]);
            }
            prop_assert_eq!(back, v);
        }
    }
}
