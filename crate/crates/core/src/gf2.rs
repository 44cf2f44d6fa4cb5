//! Packed GF(2) vectors and unit upper-triangular matrices.
//!
//! All positions in the public API are 1-based: bit `i` of a vector of
//! length `N` is addressed with `1 <= i <= N`. Storage is little-endian in
//! 64-bit words, so position `i` lives in word `(i - 1) / 64`.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitXor, BitXorAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn all_ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; word_count(len)],
        };
        v.clear_tail();
        v
    }

    /// Standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Result<Self> {
        let mut v = Self::zeros(len);
        v.check(i)?;
        v.set(i, true);
        Ok(v)
    }

    /// Builds a vector from 0/1 entries; any nonzero entry counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (k, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.words[k / WORD_BITS] |= 1 << (k % WORD_BITS);
            }
        }
        v
    }

    /// Builds a vector with ones at the given 1-based positions.
    pub fn from_positions(len: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v = Self::zeros(len);
        for i in positions {
            v.check(i)?;
            v.set(i, true);
        }
        Ok(v)
    }

    /// Builds a vector from raw little-endian words; bits past `len` are dropped.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(word_count(len), 0);
        let mut v = Self { len, words };
        v.clear_tail();
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.len,
            })
        } else {
            Ok(())
        }
    }

    /// Bit at 1-based position `i`.
    ///
    /// Panics if `i` is outside `[1, len]`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i >= 1 && i <= self.len,
            "bit index {i} out of range [1, {}]",
            self.len
        );
        let k = i - 1;
        (self.words[k / WORD_BITS] >> (k % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(
            i >= 1 && i <= self.len,
            "bit index {i} out of range [1, {}]",
            self.len
        );
        let k = i - 1;
        let mask = 1u64 << (k % WORD_BITS);
        if bit {
            self.words[k / WORD_BITS] |= mask;
        } else {
            self.words[k / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(
            i >= 1 && i <= self.len,
            "bit index {i} out of range [1, {}]",
            self.len
        );
        let k = i - 1;
        self.words[k / WORD_BITS] ^= 1u64 << (k % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersects(&self, other: &BitVector) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Bitwise complement within the vector length.
    pub fn complement(&self) -> BitVector {
        let mut v = BitVector {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        v.clear_tail();
        v
    }

    /// 1-based positions of the set bits, in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * WORD_BITS + b + 1)
                }
            })
        })
    }

    /// Position of the highest set bit, if any.
    pub fn last_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * WORD_BITS + (WORD_BITS - w.leading_zeros() as usize))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (1..=self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Moves bit `i` to `i + k`, dropping bits pushed past the end.
    pub fn shift_right(&self, k: usize) -> BitVector {
        let mut out = BitVector::zeros(self.len);
        if k >= self.len {
            return out;
        }
        let (ws, bs) = (k / WORD_BITS, k % WORD_BITS);
        for w in ws..self.words.len() {
            let mut x = self.words[w - ws] << bs;
            if bs > 0 && w > ws {
                x |= self.words[w - ws - 1] >> (WORD_BITS - bs);
            }
            out.words[w] = x;
        }
        out.clear_tail();
        out
    }

    /// In-place product with `1 + x^k`, truncated to the length.
    pub fn mul_binomial_assign(&mut self, k: usize) {
        if k == 0 {
            self.words.iter_mut().for_each(|w| *w = 0);
            return;
        }
        if k >= self.len {
            return;
        }
        let (ws, bs) = (k / WORD_BITS, k % WORD_BITS);
        // High words first so every source word is still unmodified.
        for w in (ws..self.words.len()).rev() {
            let mut x = self.words[w - ws] << bs;
            if bs > 0 && w > ws {
                x |= self.words[w - ws - 1] >> (WORD_BITS - bs);
            }
            self.words[w] ^= x;
        }
        self.clear_tail();
    }

    /// Moves bit `i` to `i - k`, dropping bits pushed before position 1.
    pub fn shift_left(&self, k: usize) -> BitVector {
        let mut out = BitVector::zeros(self.len);
        if k >= self.len {
            return out;
        }
        let (ws, bs) = (k / WORD_BITS, k % WORD_BITS);
        let n = self.words.len();
        for w in 0..n - ws {
            let mut x = self.words[w + ws] >> bs;
            if bs > 0 && w + ws + 1 < n {
                x |= self.words[w + ws + 1] << (WORD_BITS - bs);
            }
            out.words[w] = x;
        }
        out
    }

    /// Cyclic right shift by `s` positions: `(u_{N-s+1}, ..., u_N, u_1, ..., u_{N-s})`.
    pub fn cyclic_shift(&self, s: usize) -> BitVector {
        if self.len == 0 {
            return self.clone();
        }
        let s = s % self.len;
        if s == 0 {
            return self.clone();
        }
        let mut out = self.shift_right(s);
        out ^= &self.shift_left(self.len - s);
        out
    }

    /// First `N` coefficients of the GF(2) polynomial product, where bit `i`
    /// is the coefficient of `x^(i-1)`.
    pub fn truncated_convolution(&self, other: &BitVector) -> Result<BitVector> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        let (base, taps) = if self.weight() >= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = BitVector::zeros(self.len);
        for k in taps.ones() {
            out ^= &base.shift_right(k - 1);
        }
        Ok(out)
    }

    /// Splits into the odd-position and even-position halves:
    /// `(u_1, u_3, ...)` and `(u_2, u_4, ...)`.
    pub fn deinterleave(&self) -> (BitVector, BitVector) {
        let half = self.len / 2;
        let mut odd = BitVector::zeros(half);
        let mut even = BitVector::zeros(half);
        for (w, &word) in self.words.iter().enumerate().take(2 * odd.words.len()) {
            let (o, e) = (compress_even(word), compress_even(word >> 1));
            let shift = 32 * (w % 2);
            odd.words[w / 2] |= o << shift;
            even.words[w / 2] |= e << shift;
        }
        odd.clear_tail();
        even.clear_tail();
        (odd, even)
    }

    /// Bit string with trailing zeros removed (at least one digit kept).
    pub fn trimmed(&self) -> String {
        let end = self.last_one().unwrap_or(1).max(1).min(self.len);
        (1..=end)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    /// Zero-pads or truncates to `len`.
    pub fn resized(&self, len: usize) -> BitVector {
        BitVector::from_words(len, self.words.clone())
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD_BITS;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

#[inline]
fn compress_even(mut x: u64) -> u64 {
    x &= 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x >> 4)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x >> 8)) & 0x0000_ffff_0000_ffff;
    (x | (x >> 16)) & 0x0000_0000_ffff_ffff
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        debug_assert_eq!(self.len, rhs.len);
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor<&BitVector> for &BitVector {
    type Output = BitVector;
    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl BitAndAssign<&BitVector> for BitVector {
    fn bitand_assign(&mut self, rhs: &BitVector) {
        debug_assert_eq!(self.len, rhs.len);
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a &= b;
        }
    }
}

impl BitAnd<&BitVector> for &BitVector {
    type Output = BitVector;
    fn bitand(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out &= rhs;
        out
    }
}

impl BitOr<&BitVector> for &BitVector {
    type Output = BitVector;
    fn bitor(self, rhs: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, rhs.len);
        let words = self
            .words
            .iter()
            .zip(&rhs.words)
            .map(|(a, b)| a | b)
            .collect();
        BitVector {
            len: self.len,
            words,
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Error for [`BitVector::from_str`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid bit string {0:?}: expected only '0' and '1'")]
pub struct ParseBitsError(pub String);

impl FromStr for BitVector {
    type Err = ParseBitsError;

    /// Parses a bit string such as `"10101011"`, first character = position 1.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(ParseBitsError(s.to_string()));
        }
        Ok(BitVector::from_bits(
            &s.bytes().map(|b| b - b'0').collect::<Vec<_>>(),
        ))
    }
}

/// Square GF(2) matrix with ones on the diagonal and zeros below it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnitUpperTriangular {
    rows: Vec<BitVector>,
}

impl UnitUpperTriangular {
    pub fn identity(size: usize) -> Self {
        Self {
            rows: (1..=size)
                .map(|i| BitVector::unit(size, i).expect("in range"))
                .collect(),
        }
    }

    /// Validates the rows and wraps them.
    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let size = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: size,
                });
            }
            let i = r + 1;
            if !row.get(i) {
                return Err(Error::NotUnitUpperTriangular { row: i, col: i });
            }
            if let Some(col) = row.ones().find(|&c| c < i) {
                return Err(Error::NotUnitUpperTriangular { row: i, col });
            }
        }
        Ok(Self { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<BitVector>) -> Self {
        debug_assert!(Self::from_rows(rows.clone()).is_ok());
        Self { rows }
    }

    /// Truncated Toeplitz matrix whose `j`-th row is
    /// `(0_1^{j-1}, g(1), ..., g(N-j+1))`.
    pub fn shift_matrix(g: &BitVector) -> Result<Self> {
        if g.is_empty() || !g.get(1) {
            return Err(Error::LeadingZero);
        }
        Ok(Self {
            rows: (0..g.len()).map(|k| g.shift_right(k)).collect(),
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Row `i` (1-based).
    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i - 1]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    /// Entry `T_{row, col}`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row - 1].get(col)
    }

    /// Column `col` as a vector over the row index.
    pub fn column(&self, col: usize) -> BitVector {
        let mut out = BitVector::zeros(self.size());
        for (r, row) in self.rows.iter().enumerate().take(col) {
            if row.get(col) {
                out.set(r + 1, true);
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().all(|r| r.weight() == 1)
    }

    /// Matrix product `self * other`; row `i` is the sum of rows `k` of
    /// `other` over `k` in the support of row `i` of `self`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::LengthMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(self.size());
                for k in row.ones() {
                    acc ^= other.row(k);
                }
                acc
            })
            .collect();
        Ok(Self::from_rows_unchecked(rows))
    }

    /// Row vector times matrix: `u T`.
    pub fn apply(&self, u: &BitVector) -> Result<BitVector> {
        if u.len() != self.size() {
            return Err(Error::LengthMismatch {
                left: u.len(),
                right: self.size(),
            });
        }
        let mut v = BitVector::zeros(self.size());
        for j in u.ones() {
            v ^= self.row(j);
        }
        Ok(v)
    }
}

impl fmt::Debug for UnitUpperTriangular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows.iter().map(|r| r.to_string()))
            .finish()
    }
}
