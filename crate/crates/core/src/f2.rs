//! Bit-packed linear algebra over GF(2).
//!
//! Everything here is exact: rank is computed by forward elimination on
//! 64-bit words, and basis selection is first-fit in scan order so that
//! split pairs come out identical on every run.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum F2Error {
    #[error("vector {index} has length {found}, expected {expected}")]
    LengthMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("seed index {0} is out of range")]
    SeedOutOfRange(usize),
    #[error("seed vectors are linearly dependent (index {0})")]
    DependentSeed(usize),
}

/// A vector in `F_2^len`, packed little-endian into `u64` words.
///
/// Bits past `len` in the last word are always zero, so derived equality and
/// hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = BitVector::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i);
            }
        }
        v
    }

    /// Vector of length `len` with exactly the listed positions set.
    pub fn from_ones(len: usize, ones: &[usize]) -> Self {
        let mut v = BitVector::zeros(len);
        for &i in ones {
            v.set(i);
        }
        v
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
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    pub fn assign(&mut self, i: usize, value: bool) {
        if value {
            self.set(i)
        } else {
            self.clear(i)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of positions set in both vectors.
    pub fn and_count(&self, other: &BitVector) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Lowest set position, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

/// Row-major packed matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks equal-length vectors as rows.
    pub fn from_rows(rows: &[BitVector]) -> Result<Self, F2Error> {
        let cols = rows.first().map_or(0, BitVector::len);
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            if v.len() != cols {
                return Err(F2Error::LengthMismatch {
                    index: r,
                    expected: cols,
                    found: v.len(),
                });
            }
            m.data[r * m.stride..(r + 1) * m.stride].copy_from_slice(v.words());
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, x & 1 == 1);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let word = &mut self.data[r * self.stride + c / WORD];
        if value {
            *word |= 1 << (c % WORD);
        } else {
            *word &= !(1 << (c % WORD));
        }
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.data[r * self.stride..(r + 1) * self.stride].to_vec(),
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Row rank over GF(2). Eliminates on a private copy.
pub fn rank_f2(m: &BitMatrix) -> usize {
    let mut data = m.data.clone();
    let stride = m.stride;
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let (w, bit) = (col / WORD, 1u64 << (col % WORD));
        let Some(pivot) = (rank..m.rows).find(|&r| data[r * stride + w] & bit != 0) else {
            continue;
        };
        if pivot != rank {
            for i in 0..stride {
                data.swap(pivot * stride + i, rank * stride + i);
            }
        }
        for r in rank + 1..m.rows {
            if data[r * stride + w] & bit != 0 {
                // columns left of `w` are already zero in both rows
                for i in w..stride {
                    data[r * stride + i] ^= data[rank * stride + i];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a matrix whose rows each fit in one word.
pub fn rank_of_words(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let mut best = i;
        // pick the row with the highest leading bit among the remainder
        for j in i + 1..rows.len() {
            if rows[j] > rows[best] {
                best = j;
            }
        }
        rows.swap(i, best);
        let pivot = rows[i];
        if pivot == 0 {
            break;
        }
        rank += 1;
        let top = 63 - pivot.leading_zeros();
        for r in rows.iter_mut().skip(i + 1) {
            if (*r >> top) & 1 == 1 {
                *r ^= pivot;
            }
        }
    }
    rank
}

/// The adjacency matrix between `x` (rows) and its complement (columns),
/// both in ascending vertex order.
pub fn cut_matrix(g: &Graph, x: &VertexSet) -> Result<BitMatrix, GraphError> {
    g.check_set(x)?;
    let complement = x.complement(g.n());
    let mut m = BitMatrix::zeros(x.len(), complement.len());
    for (r, v) in x.iter().enumerate() {
        for (c, w) in complement.iter().enumerate() {
            if g.is_adjacent(v, w) {
                m.set(r, c, true);
            }
        }
    }
    Ok(m)
}

/// `rank_f2(cut_matrix(g, x))`.
pub fn cut_rank(g: &Graph, x: &VertexSet) -> Result<usize, GraphError> {
    if x.is_empty() || x.len() == g.n() {
        g.check_set(x)?;
        return Ok(0);
    }
    if g.n() <= 64 {
        let mask = x.to_mask();
        return Ok(cut_rank_mask(g, mask));
    }
    cut_matrix(g, x).map(|m| rank_f2(&m))
}

/// Cut rank for graphs with at most 64 vertices, with `x` given as a bitmask.
pub fn cut_rank_mask(g: &Graph, x: u64) -> usize {
    debug_assert!(g.n() <= 64);
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let outside = all & !x;
    let mut rows: Vec<u64> = Vec::with_capacity(x.count_ones() as usize);
    let mut rest = x;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        rows.push(g.neighbour_mask(v) & outside);
    }
    rank_of_words(&mut rows)
}

/// Incrementally maintained row-echelon basis. Each stored vector has a
/// distinct pivot (its lowest set bit) that is clear in every other stored
/// vector added after it.
#[derive(Debug, Clone)]
pub(crate) struct EchelonBasis {
    len: usize,
    rows: Vec<(usize, BitVector)>,
}

impl EchelonBasis {
    pub(crate) fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Adds `v` if it is independent of the current span. Returns whether it
    /// was added.
    pub(crate) fn insert(&mut self, v: &BitVector) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let r = self.reduce(v);
        match r.first_one() {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }

    pub(crate) fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }
}

fn check_lengths(vectors: &[BitVector]) -> Result<usize, F2Error> {
    let len = vectors.first().map_or(0, BitVector::len);
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != len {
            return Err(F2Error::LengthMismatch {
                index: i,
                expected: len,
                found: v.len(),
            });
        }
    }
    Ok(len)
}

/// Indices of the first-fit maximal independent subset, in scan order.
pub fn greedy_basis(vectors: &[BitVector]) -> Result<Vec<usize>, F2Error> {
    extend_basis(&[], vectors)
}

/// Extends the independent `seed` (indices into `vectors`) to a basis of the
/// span of `vectors`, scanning the remaining vectors in order. The seed
/// comes first in the result, in the order given.
pub fn extend_basis(seed: &[usize], vectors: &[BitVector]) -> Result<Vec<usize>, F2Error> {
    let len = check_lengths(vectors)?;
    let mut basis = EchelonBasis::new(len);
    let mut chosen = Vec::with_capacity(seed.len());
    let mut taken = vec![false; vectors.len()];
    for &i in seed {
        let v = vectors.get(i).ok_or(F2Error::SeedOutOfRange(i))?;
        if taken[i] || !basis.insert(v) {
            return Err(F2Error::DependentSeed(i));
        }
        taken[i] = true;
        chosen.push(i);
    }
    for (i, v) in vectors.iter().enumerate() {
        if !taken[i] && basis.insert(v) {
            chosen.push(i);
        }
    }
    Ok(chosen)
}

/// Whether the listed vectors are linearly independent.
pub fn is_independent(vectors: &[&BitVector]) -> bool {
    let Some(first) = vectors.first() else {
        return true;
    };
    let mut basis = EchelonBasis::new(first.len());
    vectors.iter().all(|v| basis.insert(v))
}

/// Dimension of the span of the given vectors.
pub fn span_dim(vectors: &[&BitVector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut basis = EchelonBasis::new(first.len());
    for v in vectors {
        basis.insert(v);
    }
    basis.dim()
}

/// Whether every vector in `targets` lies in the span of `generators`.
pub fn spans(generators: &[&BitVector], targets: &[&BitVector]) -> bool {
    let len = match (generators.first(), targets.first()) {
        (Some(g), _) => g.len(),
        (None, Some(t)) => t.len(),
        (None, None) => return true,
    };
    let mut basis = EchelonBasis::new(len);
    for g in generators {
        basis.insert(g);
    }
    targets.iter().all(|t| basis.contains(t))
}
