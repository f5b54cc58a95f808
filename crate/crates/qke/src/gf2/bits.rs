use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Mask selecting the valid bits of the final word of a length-`len` value.
fn tail_mask(len: usize) -> u64 {
    match len % WORD_BITS {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

/// A row vector over GF(2), bit-packed least-significant-bit first.
///
/// Index 0 is the leftmost position. Unused bits of the final word are
/// always zero, so equality and weight are plain word operations.
#[derive(Clone, PartialEq, Eq, Hash)]
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

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a space-free string of '0'/'1' characters.
    pub fn from_text(s: &str) -> Result<Self> {
        let mut v = BitVector::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Parse(format!(
                        "invalid bit character {other:?} at position {i}"
                    )))
                }
            }
        }
        Ok(v)
    }

    /// A unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = BitVector::zeros(len);
        v.set(index, true);
        v
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut words: Vec<u64> = (0..words_for(len)).map(|_| rng.random()).collect();
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        BitVector { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD_BITS] >> (index % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let w = index / WORD_BITS;
        let b = index % WORD_BITS;
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the first set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// In-place XOR. Lengths must match.
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in 0..self.len {
            if self.get(i) {
                out.set(i, true);
            }
        }
        for i in 0..other.len {
            if other.get(i) {
                out.set(self.len + i, true);
            }
        }
        out
    }

    /// The sub-vector covering `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        assert!(start <= end && end <= self.len);
        let mut out = BitVector::zeros(end - start);
        for i in start..end {
            if self.get(i) {
                out.set(i - start, true);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Positions holding a one, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Row-vector times matrix: `self * m`.
    pub fn mul_mat(&self, m: &BitMatrix) -> Result<BitVector> {
        if self.len != m.rows() {
            return Err(Error::dim(
                "vector-matrix product",
                format!("vector length {} vs matrix rows {}", self.len, m.rows()),
            ));
        }
        let mut out = BitVector::zeros(m.cols());
        for i in 0..self.len {
            if self.get(i) {
                for (o, w) in out.words.iter_mut().zip(m.row_words(i)) {
                    *o ^= w;
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl Ord for BitVector {
    /// Lexicographic order by position: the vector with a zero at the first
    /// differing position is smaller.
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.len, other.len, "comparing vectors of unequal length");
        for (a, b) in self.words.iter().zip(&other.words) {
            let d = a ^ b;
            if d != 0 {
                let p = d.trailing_zeros();
                return if (a >> p) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
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

/// A dense matrix over GF(2), stored row-major with bit-packed rows.
///
/// Matrices with zero rows are legal; every operation handles them without
/// special-casing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let wpr = words_for(cols);
        BitMatrix {
            rows,
            cols,
            words_per_row: wpr,
            words: vec![0; rows * wpr],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from equally sized rows. An empty slice yields a
    /// 0 x `cols` matrix.
    pub fn from_rows(rows: &[BitVector], cols: usize) -> Result<Self> {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::dim(
                    "from_rows",
                    format!("row {i} has length {}, expected {cols}", r.len()),
                ));
            }
            m.set_row(i, r);
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            let row = BitVector::random(cols, rng);
            m.set_row(i, &row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "index out of range");
        let w = row * self.words_per_row + col / WORD_BITS;
        (self.words[w] >> (col % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        let w = row * self.words_per_row + col / WORD_BITS;
        let b = col % WORD_BITS;
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn row(&self, row: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(row).to_vec(),
        }
    }

    pub fn set_row(&mut self, row: usize, value: &BitVector) {
        assert_eq!(value.len(), self.cols, "row length mismatch");
        let start = row * self.words_per_row;
        self.words[start..start + self.words_per_row].copy_from_slice(&value.words);
    }

    pub fn row_iter(&self) -> impl Iterator<Item = BitVector> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub(crate) fn row_words(&self, row: usize) -> &[u64] {
        assert!(row < self.rows, "row index out of range");
        let start = row * self.words_per_row;
        &self.words[start..start + self.words_per_row]
    }

    /// XORs row `src` into row `dst`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        assert!(src < self.rows && dst < self.rows && src != dst);
        let wpr = self.words_per_row;
        let (s, d) = (src * wpr, dst * wpr);
        for k in 0..wpr {
            let v = self.words[s + k];
            self.words[d + k] ^= v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let wpr = self.words_per_row;
        for k in 0..wpr {
            self.words.swap(a * wpr + k, b * wpr + k);
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::dim(
                "matrix product",
                format!(
                    "{}x{} * {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let wpr = out.words_per_row;
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let src = k * other.words_per_row;
                    let dst = i * wpr;
                    for w in 0..wpr {
                        out.words[dst + w] ^= other.words[src + w];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product with a transpose, `self * other^T`, computed as pairwise
    /// row dot products without materializing the transpose.
    pub fn mul_transpose(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::dim(
                "matrix product with transpose",
                format!(
                    "{}x{} * ({}x{})^T",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        let mut out = BitMatrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            let a = self.row_words(i);
            for j in 0..other.rows {
                let b = other.row_words(j);
                let parity: u32 = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| (x & y).count_ones())
                    .sum::<u32>()
                    & 1;
                if parity == 1 {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector: `self * v^T`, returned as a vector of
    /// length `self.rows()`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if self.cols != v.len() {
            return Err(Error::dim(
                "matrix-vector product",
                format!("matrix cols {} vs vector length {}", self.cols, v.len()),
            ));
        }
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            let parity: u32 = self
                .row_words(i)
                .iter()
                .zip(v.words())
                .map(|(x, y)| (x & y).count_ones())
                .sum::<u32>()
                & 1;
            if parity == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows {
            return Err(Error::dim(
                "hstack",
                format!("{} rows vs {} rows", self.rows, other.rows),
            ));
        }
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.set_row(i, &self.row(i).concat(&other.row(i)));
        }
        Ok(out)
    }

    /// Vertical stack: `self` on top of `other`.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::dim(
                "vstack",
                format!("{} cols vs {} cols", self.cols, other.cols),
            ));
        }
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            out.set_row(i, &self.row(i));
        }
        for i in 0..other.rows {
            out.set_row(self.rows + i, &other.row(i));
        }
        Ok(out)
    }

    /// The sub-matrix of rows `start..end`, all columns.
    pub fn row_range(&self, start: usize, end: usize) -> BitMatrix {
        assert!(start <= end && end <= self.rows);
        let wpr = self.words_per_row;
        BitMatrix {
            rows: end - start,
            cols: self.cols,
            words_per_row: wpr,
            words: self.words[start * wpr..end * wpr].to_vec(),
        }
    }

    /// The sub-matrix of columns `start..end`, all rows.
    pub fn col_range(&self, start: usize, end: usize) -> BitMatrix {
        assert!(start <= end && end <= self.cols);
        let mut out = BitMatrix::zeros(self.rows, end - start);
        for i in 0..self.rows {
            out.set_row(i, &self.row(i).slice(start, end));
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn naive_mul(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
        BitMatrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).fold(false, |acc, k| acc ^ (a.get(i, k) & b.get(k, j)))
        })
    }

    fn mat(rows: &[&str]) -> BitMatrix {
        let v: Vec<BitVector> = rows.iter().map(|r| BitVector::from_text(r).unwrap()).collect();
        let cols = v.first().map_or(0, |r| r.len());
        BitMatrix::from_rows(&v, cols).unwrap()
    }

    #[test]
    fn product_identity_left() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let b = BitMatrix::random(3, 5, &mut rng);
        let i3 = BitMatrix::identity(3);
        assert_eq!(i3.mul(&b).unwrap(), b);
    }

    #[test]
    fn product_small_hand_computed() {
        // A * A^T for A = [[1,1,0],[0,1,1]], dot products done by hand mod 2.
        let a = mat(&["110", "011"]);
        let expect = mat(&["01", "10"]);
        assert_eq!(a.mul(&a.transpose()).unwrap(), expect);
        assert_eq!(a.mul_transpose(&a).unwrap(), expect);
    }

    #[test]
    fn product_zero_annihilates() {
        let z = BitMatrix::zeros(4, 3);
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let b = BitMatrix::random(3, 6, &mut rng);
        assert!(z.mul(&b).unwrap().is_zero());
    }

    #[test]
    fn product_dimension_mismatch_rejected() {
        let a = BitMatrix::zeros(2, 3);
        let b = BitMatrix::zeros(4, 2);
        assert!(a.mul(&b).is_err());
        assert!(a.mul_vec(&BitVector::zeros(5)).is_err());
    }

    #[test]
    fn product_matches_naive_reference() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..32 {
            let r = rng.random_range(0..9);
            let k = rng.random_range(1..9);
            let c = rng.random_range(1..9);
            let a = BitMatrix::random(r, k, &mut rng);
            let b = BitMatrix::random(k, c, &mut rng);
            assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
            assert_eq!(
                a.mul_transpose(&b.transpose()).unwrap(),
                naive_mul(&a, &b)
            );
        }
    }

    #[test]
    fn mul_vec_matches_column_product() {
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let a = BitMatrix::random(5, 70, &mut rng);
        let v = BitVector::random(70, &mut rng);
        let expect: Vec<bool> = (0..5)
            .map(|i| (0..70).fold(false, |acc, j| acc ^ (a.get(i, j) & v.get(j))))
            .collect();
        assert_eq!(a.mul_vec(&v).unwrap(), BitVector::from_bools(&expect));
    }

    #[test]
    fn vec_mul_matches_row_combination() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let a = BitMatrix::random(6, 10, &mut rng);
        let x = BitVector::random(6, &mut rng);
        let mut expect = BitVector::zeros(10);
        for i in 0..6 {
            if x.get(i) {
                expect.xor_assign(&a.row(i));
            }
        }
        assert_eq!(x.mul_mat(&a).unwrap(), expect);
    }

    #[test]
    fn lexicographic_order_is_positional() {
        let a = BitVector::from_text("001").unwrap();
        let b = BitVector::from_text("010").unwrap();
        let c = BitVector::from_text("100").unwrap();
        assert!(a < b && b < c);
        // Ordering decided by position 64+ exercises multi-word compare:
        // the vector that is still zero at the first differing position wins.
        let mut x = BitVector::zeros(70);
        let mut y = BitVector::zeros(70);
        x.set(69, true);
        y.set(65, true);
        assert!(x < y);
    }

    #[test]
    fn concat_slice_roundtrip() {
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        let a = BitVector::random(67, &mut rng);
        let b = BitVector::random(13, &mut rng);
        let joined = a.concat(&b);
        assert_eq!(joined.slice(0, 67), a);
        assert_eq!(joined.slice(67, 80), b);
    }

    #[test]
    fn zero_row_matrices_are_legal() {
        let empty = BitMatrix::zeros(0, 5);
        let prod = empty.mul(&BitMatrix::zeros(5, 4)).unwrap();
        assert_eq!(prod.rows(), 0);
        assert_eq!(prod.cols(), 4);
        assert_eq!(empty.mul_transpose(&BitMatrix::zeros(3, 5)).unwrap().rows(), 0);
        let m = BitMatrix::zeros(5, 5);
        let stacked = empty.vstack(&m.row_range(0, 0)).unwrap();
        assert_eq!(stacked.rows(), 0);
        assert!(empty.mul_vec(&BitVector::zeros(5)).unwrap().is_empty());
    }
}
