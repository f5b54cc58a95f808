//! Dense matrix text format.
//!
//! First line `rows cols`, then one line per row of space-free '0'/'1'
//! characters. Round-trips bit-exactly.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

impl BitMatrix {
    pub fn to_dense_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows(), self.cols());
        for row in self.row_iter() {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_dense_text(text: &str) -> Result<BitMatrix> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let mut parts = header.split_whitespace();
        let rows: usize = parts
            .next()
            .ok_or_else(|| Error::Parse("missing row count".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad row count: {e}")))?;
        let cols: usize = parts
            .next()
            .ok_or_else(|| Error::Parse("missing column count".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad column count: {e}")))?;
        if parts.next().is_some() {
            return Err(Error::Parse("trailing tokens on dimension line".into()));
        }
        let mut row_vecs = Vec::with_capacity(rows);
        for i in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {rows} rows, found {i}")))?
                .trim_end();
            if line.len() != cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} characters, expected {cols}",
                    line.len()
                )));
            }
            row_vecs.push(BitVector::from_text(line)?);
        }
        BitMatrix::from_rows(&row_vecs, cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn golden_parse() {
        let m = BitMatrix::from_dense_text("2 3\n110\n011\n").unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 3);
        assert!(m.get(0, 0) && m.get(0, 1) && !m.get(0, 2));
        assert_eq!(m.to_dense_text(), "2 3\n110\n011\n");
    }

    #[test]
    fn zero_row_matrix_round_trips() {
        let m = BitMatrix::zeros(0, 5);
        let text = m.to_dense_text();
        assert_eq!(text, "0 5\n");
        assert_eq!(BitMatrix::from_dense_text(&text).unwrap(), m);
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(BitMatrix::from_dense_text("").is_err());
        assert!(BitMatrix::from_dense_text("2\n").is_err());
        assert!(BitMatrix::from_dense_text("1 3\n01\n").is_err());
        assert!(BitMatrix::from_dense_text("1 3\n01x\n").is_err());
        assert!(BitMatrix::from_dense_text("2 2\n01\n").is_err());
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(rows in 0usize..8, cols in 1usize..70, seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let m = BitMatrix::random(rows, cols, &mut rng);
            let back = BitMatrix::from_dense_text(&m.to_dense_text()).unwrap();
            prop_assert_eq!(back, m);
        }
    }
}
