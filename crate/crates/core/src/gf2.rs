//! Dense vectors and matrices over GF(2).
//!
//! Entries are packed 64 to a machine word; addition is XOR and
//! multiplication is AND. Positions are 0-based in the Rust API. When a
//! vector is rendered as a string of `0`/`1` characters, position 0 comes
//! first (leftmost, most significant).

use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular over GF(2) (rank {rank} < {dim})")]
    Singular { rank: usize, dim: usize },
    #[error("invalid bit character {0:?}")]
    InvalidBit(char),
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from `0`/`1` entries; any nonzero value counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b != 0);
        }
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Interprets the low `len` bits of `value` as a vector, with position 0
    /// taken from the most significant of those bits.
    pub fn from_index(len: usize, value: u64) -> Self {
        assert!(len <= 64, "from_index supports at most 64 bits");
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, (value >> (len - 1 - i)) & 1 == 1);
        }
        v
    }

    /// Inverse of [`BitVector::from_index`].
    pub fn to_index(&self) -> u64 {
        assert!(self.len <= 64, "to_index supports at most 64 bits");
        (0..self.len).fold(0u64, |acc, i| (acc << 1) | u64::from(self.get(i)))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Positions holding a 1, in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Sum of two vectors of equal length.
    pub fn add(&self, other: &BitVector) -> Result<BitVector, Gf2Error> {
        self.check_len("add", other)?;
        let mut out = self.clone();
        out.xor_in_place(other);
        Ok(out)
    }

    /// Inner product `⊕_i u_i ∧ v_i`.
    pub fn dot(&self, other: &BitVector) -> Result<bool, Gf2Error> {
        self.check_len("dot", other)?;
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        Ok(ones % 2 == 1)
    }

    pub fn concat(&self, tail: &BitVector) -> BitVector {
        BitVector::from_bools(self.iter().chain(tail.iter()))
    }

    /// Copy of positions `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        assert!(
            start <= end && end <= self.len,
            "slice {start}..{end} out of range"
        );
        BitVector::from_bools((start..end).map(|i| self.get(i)))
    }

    fn xor_in_place(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn check_len(&self, op: &'static str, other: &BitVector) -> Result<(), Gf2Error> {
        if self.len != other.len {
            return Err(Gf2Error::DimensionMismatch {
                op,
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;

    /// Panics on length mismatch; use [`BitVector::add`] for a checked sum.
    fn bitxor(self, rhs: &BitVector) -> BitVector {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        let mut out = self.clone();
        out.xor_in_place(rhs);
        out
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        self.xor_in_place(rhs);
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Gf2Error::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BitVector::from_bools(bits))
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of `0`/`1` entries. All rows must have the
    /// same length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Gf2Error::DimensionMismatch {
                    op: "from_rows",
                    expected: cols,
                    found: r.len(),
                });
            }
            data.push(BitVector::from_bits(r));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_row_vectors(cols: usize, rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::DimensionMismatch {
                op: "from_row_vectors",
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        self.data[r].set(c, bit)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools(self.data.iter().map(|row| row.get(c)))
    }

    /// Adds row `src` into row `dst` (`dst ≠ src`).
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst, "adding a row to itself zeroes it");
        let src_row = self.data[src].clone();
        self.data[dst] ^= &src_row;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Strictly-below-diagonal part (entries with row > col).
    pub fn lower_triangle(&self) -> BitMatrix {
        self.filtered(|r, c| r > c)
    }

    /// Strictly-above-diagonal part (entries with row < col).
    pub fn upper_triangle(&self) -> BitMatrix {
        self.filtered(|r, c| r < c)
    }

    fn filtered(&self, keep: impl Fn(usize, usize) -> bool) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones().filter(|&c| keep(r, c)) {
                out.set(r, c, true);
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Gf2Error::DimensionMismatch {
                op: "add",
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BitMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// `(m·v)_i = ⊕_j m_ij ∧ v_j`.
    pub fn matvec(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                op: "matvec",
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            out.set(i, row.dot(v)?);
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch {
                op: "matmul",
                expected: self.cols,
                found: other.rows,
            });
        }
        // Row i of the product is the sum of the rows of `other` selected by row i of `self`.
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(other.cols);
                for k in row.ones() {
                    acc ^= &other.data[k];
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Row rank by Gaussian elimination, scanning columns left to right and
    /// pivoting on the first available 1.
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| work[r].get(c)) else {
                continue;
            };
            work.swap(rank, p);
            let pivot = work[rank].clone();
            for row in work.iter_mut().skip(rank + 1) {
                if row.get(c) {
                    *row ^= &pivot;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Gauss–Jordan inverse. Rejects rectangular input rather than padding.
    pub fn invert(&self) -> Result<BitMatrix, Gf2Error> {
        if !self.is_square() {
            return Err(Gf2Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut left = self.data.clone();
        let mut right = BitMatrix::identity(n).data;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| left[r].get(c)) else {
                return Err(Gf2Error::Singular {
                    rank: self.rank(),
                    dim: n,
                });
            };
            left.swap(c, p);
            right.swap(c, p);
            let (lp, rp) = (left[c].clone(), right[c].clone());
            for r in (0..n).filter(|&r| r != c) {
                if left[r].get(c) {
                    left[r] ^= &lp;
                    right[r] ^= &rp;
                }
            }
        }
        Ok(BitMatrix {
            rows: n,
            cols: n,
            data: right,
        })
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.data.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.data.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{row}")?;
        }
        f.write_str("]")
    }
}
