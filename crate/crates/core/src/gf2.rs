//! Bit-packed linear algebra over GF(2).
//!
//! A [`BitMatrix`] with `t` rows and `n` columns doubles as a length-`n`
//! vector over GF(2^t): column `j` is one symbol, with row 0 as its lowest
//! bit. The t-weight of a matrix (size of the union of its row supports) is
//! then exactly the Hamming weight of that symbol vector.
//!
//! Bits are stored little-endian inside `u64` words; position `i` lives in
//! word `i / 64`, bit `i % 64`. Bits past `len` are always zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
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

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_padding();
        v
    }

    /// Builds a vector from packed words; bits past `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_padding();
        v
    }

    /// Low `len` bits of `value`, bit `i` to position `i`. Requires `len <= 64`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 positions");
        Self::from_words(len, vec![value])
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut len = 0;
        let mut words = Vec::new();
        for b in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD] |= 1 << (len % WORD);
            }
            len += 1;
        }
        Self { len, words }
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD;
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low 64 positions packed into one integer.
    pub fn to_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
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
            "index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn hamming_distance(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Parity of the coordinatewise product.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn or_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `self` followed by `tail`.
    pub fn concat(&self, tail: &Self) -> Self {
        let mut out = Self::zeros(self.len + tail.len);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        if self.len.is_multiple_of(WORD) {
            let start = self.words.len();
            out.words[start..start + tail.words.len()].copy_from_slice(&tail.words);
        } else {
            for i in tail.iter_ones() {
                out.set(self.len + i, true);
            }
        }
        out
    }

    /// Positions `[start, start + len)` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.len, "slice out of range");
        if start.is_multiple_of(WORD) {
            let first = start / WORD;
            let count = words_for(len);
            return Self::from_words(len, self.words[first..first + count].to_vec());
        }
        Self::from_bits((start..start + len).map(|i| self.get(i)))
    }

    /// Lexicographic order on the bit strings, position 0 first, `0 < 1`.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let pos = diff.trailing_zeros();
                return if (a >> pos) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "length mismatch");
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

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
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

impl FromStr for BitVector {
    type Err = Error;

    /// Parses a string of `0`/`1` characters; position 0 is the first character.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        column: i + 1,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        Ok(Self::from_bits(bits))
    }
}

/// A `rows x cols` binary matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    /// Stacks rows; all must share one length. An empty list gives a `0 x cols` matrix.
    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch {
                expected: format!("rows of length {cols}"),
                got: format!("a row of length {}", bad.len()),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Parses rows given as `0`/`1` strings.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|s| s.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BitVector::len);
        Self::from_rows(parsed, cols)
    }

    /// Builds a `t x n` matrix from GF(2^t) symbols, symbol bit `i` going to row `i`.
    pub fn from_column_symbols(t: usize, symbols: &[u64]) -> Self {
        let mut m = Self::zeros(t, symbols.len());
        for (j, &s) in symbols.iter().enumerate() {
            for i in 0..t {
                if (s >> i) & 1 == 1 {
                    m.rows[i].set(j, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i].set(j, bit)
    }

    /// Column `j` read as a GF(2^t) symbol (row 0 is bit 0). Requires at most 64 rows.
    pub fn column_symbol(&self, j: usize) -> u64 {
        assert!(
            self.rows.len() <= WORD,
            "column_symbol supports at most 64 rows"
        );
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, r)| acc | ((r.get(j) as u64) << i))
    }

    /// Column `j` as a vector of length `num_rows`.
    pub fn column(&self, j: usize) -> BitVector {
        BitVector::from_bits(self.rows.iter().map(|r| r.get(j)))
    }

    pub fn columns(&self) -> Vec<BitVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                out.rows[j].set(i, true);
            }
        }
        out
    }

    /// Union of the row supports.
    pub fn support_union(&self) -> BitVector {
        let mut acc = BitVector::zeros(self.cols);
        for r in &self.rows {
            acc.or_assign(r);
        }
        acc
    }

    /// Size of the union of the row supports: the number of nonzero columns.
    pub fn t_weight(&self) -> usize {
        let nwords = words_for(self.cols);
        (0..nwords)
            .map(|w| {
                self.rows
                    .iter()
                    .fold(0u64, |acc, r| acc | r.words[w])
                    .count_ones() as usize
            })
            .sum()
    }

    /// t-weight of `self - other`.
    pub fn t_distance(&self, other: &Self) -> Result<usize> {
        self.check_same_shape(other)?;
        let nwords = words_for(self.cols);
        Ok((0..nwords)
            .map(|w| {
                self.rows
                    .iter()
                    .zip(&other.rows)
                    .fold(0u64, |acc, (a, b)| acc | (a.words[w] ^ b.words[w]))
                    .count_ones() as usize
            })
            .sum())
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows.len() != other.rows.len() || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", self.rows.len(), self.cols),
                got: format!("{}x{}", other.rows.len(), other.cols),
            });
        }
        Ok(())
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            cols: self.cols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// GF(2) rank.
    pub fn rank(&self) -> usize {
        Echelon::new(self).pivots.len()
    }

    /// `self * v^T`: one parity bit per row.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                expected: format!("vector of length {}", self.cols),
                got: format!("length {}", v.len()),
            });
        }
        Ok(BitVector::from_bits(self.rows.iter().map(|r| r.dot(v))))
    }

    /// `self * other^T`.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} columns", self.cols),
                got: format!("{} columns", other.cols),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|a| BitVector::from_bits(other.rows.iter().map(|b| a.dot(b))))
            .collect();
        Ok(Self {
            cols: other.rows.len(),
            rows,
        })
    }

    /// Some `v` with `self * v^T = s^T`.
    ///
    /// Elimination pivots on the leftmost available column and every free
    /// variable is set to zero, so the answer is a deterministic function of
    /// `(self, s)`.
    pub fn solve(&self, s: &BitVector) -> Result<BitVector> {
        if s.len() != self.rows.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("right-hand side of length {}", self.rows.len()),
                got: format!("length {}", s.len()),
            });
        }
        let mut rows = self.rows.clone();
        let mut rhs: Vec<bool> = (0..s.len()).map(|i| s.get(i)).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            let Some(p) = (next..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            rhs.swap(next, p);
            let pivot_row = rows[next].clone();
            let pivot_rhs = rhs[next];
            for i in 0..rows.len() {
                if i != next && rows[i].get(col) {
                    rows[i] ^= &pivot_row;
                    rhs[i] ^= pivot_rhs;
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        if rhs[next..].iter().any(|&b| b) {
            return Err(Error::Infeasible);
        }
        let mut v = BitVector::zeros(self.cols);
        for (i, &col) in pivots.iter().enumerate() {
            if rhs[i] {
                v.set(col, true);
            }
        }
        Ok(v)
    }

    /// Basis of `{x : self * x^T = 0}`, one basis vector per free column.
    pub fn kernel_basis(&self) -> Self {
        let ech = Echelon::new(self);
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BitVector::zeros(self.cols);
                x.set(f, true);
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    if row.get(f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect();
        Self {
            cols: self.cols,
            rows,
        }
    }

    /// Left half and right half of the columns.
    pub fn split_columns(&self, mid: usize) -> (Self, Self) {
        assert!(mid <= self.cols, "split point out of range");
        let left = self.rows.iter().map(|r| r.slice(0, mid)).collect();
        let right = self
            .rows
            .iter()
            .map(|r| r.slice(mid, self.cols - mid))
            .collect();
        (
            Self {
                cols: mid,
                rows: left,
            },
            Self {
                cols: self.cols - mid,
                rows: right,
            },
        )
    }

    /// Columns of `self` followed by columns of `right`.
    pub fn hconcat(&self, right: &Self) -> Result<Self> {
        if self.rows.len() != right.rows.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} rows", self.rows.len()),
                got: format!("{} rows", right.rows.len()),
            });
        }
        Ok(Self {
            cols: self.cols + right.cols,
            rows: self
                .rows
                .iter()
                .zip(&right.rows)
                .map(|(a, b)| a.concat(b))
                .collect(),
        })
    }

    /// Rows of `self` followed by rows of `below`.
    pub fn vstack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} columns", self.cols),
                got: format!("{} columns", below.cols),
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(below.rows.iter().cloned());
        Ok(Self {
            cols: self.cols,
            rows,
        })
    }

    /// Row-by-row lexicographic order.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.rows.iter().zip(&other.rows) {
            match a.lex_cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.rows.len().cmp(&other.rows.len())
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Serialized as a list of `0`/`1` row strings.
impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows.len()))?;
        for row in &self.rows {
            seq.serialize_element(&row.to_string())?;
        }
        seq.end()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

/// Reduced row echelon form with leftmost pivots.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Nonzero reduced rows, one per pivot.
    pub rows: Vec<BitVector>,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &BitMatrix) -> Self {
        let mut rows = m.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..m.cols {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != next && row.get(col) {
                    *row ^= &pivot_row;
                }
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        Self { rows, pivots }
    }

    /// The lexicographically least element of `v + rowspace`.
    ///
    /// Every nonzero element of the row space has its first one at a pivot,
    /// so clearing the pivots of `v` yields the least coset member.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out ^= row;
            }
        }
        out
    }
}

/// True iff every target lies in the GF(2) span of `columns`.
pub fn span_contains(columns: &[BitVector], targets: &[BitVector]) -> bool {
    let targets: Vec<&BitVector> = targets.iter().filter(|t| !t.is_zero()).collect();
    if targets.is_empty() {
        return true;
    }
    let len = targets[0].len();
    let Ok(base) = BitMatrix::from_rows(columns.to_vec(), len) else {
        return false;
    };
    let ech = Echelon::new(&base);
    targets.iter().all(|t| ech.reduce(t).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(BitVector::zeros(8).weight(), 0);
        assert_eq!(BitVector::ones(8).weight(), 8);
        assert_eq!(bv("10110000").weight(), 3);
    }

    #[test]
    fn padding_stays_clear() {
        let v = BitVector::ones(70);
        assert_eq!(v.words()[1], (1 << 6) - 1);
        assert_eq!(BitVector::from_words(3, vec![u64::MAX]).weight(), 3);
    }

    #[test]
    fn t_weight_examples() {
        assert_eq!(BitMatrix::zeros(2, 4).t_weight(), 0);
        assert_eq!(
            BitMatrix::from_strs(&["1000", "0100"]).unwrap().t_weight(),
            2
        );
        assert_eq!(
            BitMatrix::from_strs(&["1100", "0110"]).unwrap().t_weight(),
            3
        );
    }

    #[test]
    fn t_distance_examples() {
        let u = BitMatrix::from_strs(&["1011", "0110"]).unwrap();
        assert_eq!(u.t_distance(&u).unwrap(), 0);
        assert_eq!(BitMatrix::zeros(2, 4).t_distance(&u).unwrap(), u.t_weight());
        let swapped = BitMatrix::from_strs(&["0110", "1011"]).unwrap();
        assert_eq!(
            u.t_distance(&swapped).unwrap(),
            (u.row(0) ^ u.row(1)).weight()
        );
        assert!(matches!(
            u.t_distance(&BitMatrix::zeros(3, 4)),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(4).rank(), 4);
        assert_eq!(BitMatrix::from_strs(&["0110", "0110"]).unwrap().rank(), 1);
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn solve_examples() {
        let id = BitMatrix::identity(5);
        let s = bv("10110");
        assert_eq!(id.solve(&s).unwrap(), s);

        let h = BitMatrix::from_strs(&["1101", "0111"]).unwrap();
        assert_eq!(h.solve(&BitVector::zeros(2)).unwrap(), BitVector::zeros(4));

        let h = BitMatrix::from_strs(&["11"]).unwrap();
        assert_eq!(h.solve(&bv("1")).unwrap(), bv("10"));
    }

    #[test]
    fn solve_infeasible() {
        let h = BitMatrix::from_strs(&["1100", "1100"]).unwrap();
        assert_eq!(h.solve(&bv("10")), Err(Error::Infeasible));
    }

    #[test]
    fn span_examples() {
        let e1 = bv("100");
        let e2 = bv("010");
        assert!(span_contains(
            std::slice::from_ref(&e1),
            &[BitVector::zeros(3)]
        ));
        assert!(span_contains(&[], &[BitVector::zeros(3)]));
        assert!(!span_contains(
            std::slice::from_ref(&e1),
            std::slice::from_ref(&e2)
        ));
        assert!(span_contains(&[e1.clone(), bv("110")], &[e2]));
    }

    #[test]
    fn column_symbols_round_trip() {
        let m = BitMatrix::from_strs(&["0011", "0101"]).unwrap();
        let syms: Vec<u64> = (0..4).map(|j| m.column_symbol(j)).collect();
        assert_eq!(syms, vec![0, 2, 1, 3]);
        assert_eq!(BitMatrix::from_column_symbols(2, &syms), m);
    }

    #[test]
    fn split_and_concat() {
        let v = BitMatrix::from_strs(&["1011"]).unwrap();
        let (a, b) = v.split_columns(2);
        assert_eq!(a, BitMatrix::from_strs(&["10"]).unwrap());
        assert_eq!(b, BitMatrix::from_strs(&["11"]).unwrap());
        assert_eq!(a.hconcat(&b).unwrap(), v);

        let long = BitVector::from_bits((0..200).map(|i| i % 3 == 0));
        let (l, r) = (long.slice(0, 77), long.slice(77, 123));
        assert_eq!(l.concat(&r), long);
        let (l, r) = (long.slice(0, 128), long.slice(128, 72));
        assert_eq!(l.concat(&r), long);
    }

    #[test]
    fn lex_order() {
        assert_eq!(bv("0011").lex_cmp(&bv("0101")), Ordering::Less);
        assert_eq!(bv("1000").lex_cmp(&bv("0111")), Ordering::Greater);
        assert_eq!(bv("0110").lex_cmp(&bv("0110")), Ordering::Equal);
    }

    #[test]
    fn kernel_is_orthogonal() {
        let g = BitMatrix::from_strs(&["1010", "0101", "0011"]).unwrap();
        let k = g.kernel_basis();
        assert_eq!(k.num_rows(), 1);
        assert!(g
            .mul_transpose(&k)
            .unwrap()
            .rows()
            .iter()
            .all(BitVector::is_zero));
    }

    #[test]
    fn echelon_reduce_gives_least_coset_member() {
        let g = BitMatrix::from_strs(&["1111"]).unwrap();
        let ech = Echelon::new(&g);
        assert_eq!(ech.reduce(&bv("1101")), bv("0010"));
        assert_eq!(ech.reduce(&bv("0101")), bv("0101"));
    }
}
