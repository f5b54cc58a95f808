//! Classical linear codes and syndrome decoders.
//!
//! Decoding here is always syndrome decoding under the augmented error
//! model: errors live on the first `n` positions of an `n + c` vector and
//! the trailing `c` positions are known to be error free.

mod alist;
mod bp;

pub use bp::{bp_decode, BpDecoder};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::gf2::{rank, BitMatrix, BitVector};

/// An `[n, k, d]` classical linear code held as a full-row-rank parity-check
/// matrix. `d` is optional; most randomly generated codes do not come with a
/// certified distance.
#[derive(Clone, Debug)]
pub struct LinearCode {
    parity_check: BitMatrix,
    d: Option<usize>,
}

impl LinearCode {
    /// Wraps a parity-check matrix, rejecting rank-deficient inputs.
    pub fn new(parity_check: BitMatrix, d: Option<usize>) -> Result<Self> {
        let r = rank(&parity_check);
        if r != parity_check.rows() {
            return Err(Error::InvalidInput(format!(
                "parity-check matrix has rank {r} but {} rows; reduce it first",
                parity_check.rows()
            )));
        }
        Ok(LinearCode { parity_check, d })
    }

    /// Wraps a parity-check matrix, deterministically dropping dependent
    /// rows (first independent subset in row order is kept).
    pub fn from_parity_check_reduced(h: BitMatrix, d: Option<usize>) -> Self {
        let mut kept: Vec<BitVector> = Vec::new();
        let mut tracker = crate::gf2::IndependentSet::new(h.cols());
        for row in h.row_iter() {
            if tracker.try_insert(&row) {
                kept.push(row);
            }
        }
        let parity_check = BitMatrix::from_rows(&kept, h.cols()).unwrap();
        LinearCode { parity_check, d }
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    /// Block length.
    pub fn n(&self) -> usize {
        self.parity_check.cols()
    }

    /// Dimension, `n - rows(H)`.
    pub fn k(&self) -> usize {
        self.n() - self.parity_check.rows()
    }

    /// Known minimum distance, if any.
    pub fn d(&self) -> Option<usize> {
        self.d
    }

    /// Guaranteed correctable weight `(d - 1) / 2`, when `d` is known.
    pub fn t(&self) -> Option<usize> {
        self.d.map(|d| (d - 1) / 2)
    }
}

/// The correctable error set: binary vectors of length `n + c` with at most
/// `t` ones among the first `n` positions and zeros on the last `c`. With
/// `t = None` the weight is unbounded (i.i.d. mode) and success is judged
/// empirically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AugmentedErrorSet {
    pub n: usize,
    pub c: usize,
    pub t: Option<usize>,
}

impl AugmentedErrorSet {
    pub fn bounded(n: usize, c: usize, t: usize) -> Self {
        AugmentedErrorSet { n, c, t: Some(t) }
    }

    pub fn iid(n: usize, c: usize) -> Self {
        AugmentedErrorSet { n, c, t: None }
    }

    /// Total vector length `n + c`.
    pub fn len(&self) -> usize {
        self.n + self.c
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        if v.len() != self.len() {
            return false;
        }
        if (self.n..self.len()).any(|i| v.get(i)) {
            return false;
        }
        match self.t {
            Some(t) => v.weight() <= t,
            None => true,
        }
    }
}

/// Result of one syndrome-decoding call.
#[derive(Clone, Debug)]
pub struct DecodeResult {
    /// Estimated error vector; zeros on the frozen tail by construction.
    pub error_estimate: BitVector,
    /// True iff the estimate reproduces the requested syndrome (and, for
    /// min-weight decoding with a bound, stays within weight `t`).
    pub converged: bool,
    /// Message-passing iterations used (0 for exhaustive decoding).
    pub iterations: usize,
}

/// A decoder bound to a fixed parity-check matrix, mapping syndromes to
/// error estimates.
pub trait SyndromeDecoder {
    fn decode(&self, syndrome: &BitVector) -> Result<DecodeResult>;

    /// Length of the error estimates this decoder produces.
    fn error_len(&self) -> usize;
}

/// Computes the error syndrome `H u^T`.
pub fn syndrome(h: &BitMatrix, u: &BitVector) -> Result<BitVector> {
    h.mul_vec(u)
}

/// Exhaustive minimum-weight syndrome decoding over the augmented error
/// model. Intended for small `n`; the search is exponential.
///
/// Returns the minimum-weight vector supported on the first `n` positions
/// with the requested syndrome, breaking ties toward the lexicographically
/// smallest vector. `converged` is true iff a solution of weight at most
/// `t` exists (always true for weight-unbounded models when any solution
/// exists). When no solution exists at all, the zero estimate is returned
/// with `converged = false`.
pub fn decode_min_weight(
    h: &BitMatrix,
    syndrome: &BitVector,
    model: &AugmentedErrorSet,
) -> Result<DecodeResult> {
    if h.cols() != model.len() {
        return Err(Error::dim(
            "decode_min_weight",
            format!("matrix has {} cols, model length is {}", h.cols(), model.len()),
        ));
    }
    if syndrome.len() != h.rows() {
        return Err(Error::dim(
            "decode_min_weight",
            format!(
                "syndrome length {} vs matrix rows {}",
                syndrome.len(),
                h.rows()
            ),
        ));
    }
    let n = model.n;
    let t_bound = model.t.unwrap_or(n);

    if syndrome.is_zero() {
        return Ok(DecodeResult {
            error_estimate: BitVector::zeros(h.cols()),
            converged: true,
            iterations: 0,
        });
    }

    // Solvability over the unfrozen columns; avoids an exponential scan
    // when the syndrome is outside the reachable set.
    let head = h.col_range(0, n);
    let augmented = {
        let mut rhs = BitMatrix::zeros(h.rows(), 1);
        for i in 0..h.rows() {
            if syndrome.get(i) {
                rhs.set(i, 0, true);
            }
        }
        head.hstack(&rhs)?
    };
    if rank(&augmented) != rank(&head) {
        return Ok(DecodeResult {
            error_estimate: BitVector::zeros(h.cols()),
            converged: false,
            iterations: 0,
        });
    }

    // Columns of the unfrozen segment, for incremental syndrome updates.
    let columns: Vec<BitVector> = (0..n)
        .map(|j| {
            let mut col = BitVector::zeros(h.rows());
            for i in 0..h.rows() {
                if h.get(i, j) {
                    col.set(i, true);
                }
            }
            col
        })
        .collect();

    for w in 1..=n {
        let mut best: Option<BitVector> = None;
        let mut indices: Vec<usize> = (0..w).collect();
        loop {
            let mut s = BitVector::zeros(h.rows());
            for &j in &indices {
                s.xor_assign(&columns[j]);
            }
            if &s == syndrome {
                let mut cand = BitVector::zeros(h.cols());
                for &j in &indices {
                    cand.set(j, true);
                }
                best = match best {
                    None => Some(cand),
                    Some(b) => Some(b.min(cand)),
                };
            }
            if !next_combination(&mut indices, n) {
                break;
            }
        }
        if let Some(estimate) = best {
            return Ok(DecodeResult {
                converged: w <= t_bound,
                error_estimate: estimate,
                iterations: 0,
            });
        }
    }
    Ok(DecodeResult {
        error_estimate: BitVector::zeros(h.cols()),
        converged: false,
        iterations: 0,
    })
}

/// Advances `indices` to the next w-combination of `0..n` in index order;
/// false once exhausted.
fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let w = indices.len();
    let mut i = w;
    while i > 0 {
        i -= 1;
        if indices[i] < i + n - w {
            indices[i] += 1;
            for j in i + 1..w {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// [`SyndromeDecoder`] wrapper around [`decode_min_weight`].
#[derive(Clone, Debug)]
pub struct MinWeightDecoder {
    h: BitMatrix,
    model: AugmentedErrorSet,
}

impl MinWeightDecoder {
    pub fn new(h: BitMatrix, model: AugmentedErrorSet) -> Result<Self> {
        if h.cols() != model.len() {
            return Err(Error::dim(
                "MinWeightDecoder",
                format!("matrix has {} cols, model length is {}", h.cols(), model.len()),
            ));
        }
        Ok(MinWeightDecoder { h, model })
    }
}

impl SyndromeDecoder for MinWeightDecoder {
    fn decode(&self, syndrome: &BitVector) -> Result<DecodeResult> {
        decode_min_weight(&self.h, syndrome, &self.model)
    }

    fn error_len(&self) -> usize {
        self.h.cols()
    }
}

/// The `[7, 4, 3]` Hamming code. Column `j` of the parity check is the
/// binary representation of `j + 1`, so it is dual-containing.
pub fn hamming_code() -> LinearCode {
    let h = BitMatrix::from_fn(3, 7, |i, j| (j + 1) >> (2 - i) & 1 == 1);
    LinearCode::new(h, Some(3)).expect("hamming parity check has full rank")
}

/// The `[n, 1, n]` repetition code for odd `n >= 3`, with check rows
/// `e_i + e_{i+1}`.
pub fn repetition_code(n: usize) -> Result<LinearCode> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "repetition code length must be odd and >= 3, got {n}"
        )));
    }
    let h = BitMatrix::from_fn(n - 1, n, |i, j| j == i || j == i + 1);
    LinearCode::new(h, Some(n))
}

/// Generates a Gallager-ensemble-style `(col_weight, row_weight)`-regular
/// LDPC parity check of size `(n * col_weight / row_weight) x n`,
/// deterministically from `seed`. Dependent rows are dropped afterwards, so
/// the effective dimension can exceed `n (1 - col_weight / row_weight)`.
///
/// Uses a random edge pairing between variable and check sockets, with
/// double edges repaired by seeded swaps, so exact regularity only needs
/// `n * col_weight` divisible by `row_weight`.
pub fn ldpc_generate(n: usize, col_weight: usize, row_weight: usize, seed: u64) -> Result<LinearCode> {
    if col_weight < 2 || row_weight <= col_weight {
        return Err(Error::InvalidInput(format!(
            "need col_weight >= 2 and row_weight > col_weight, got ({col_weight}, {row_weight})"
        )));
    }
    if (n * col_weight) % row_weight != 0 {
        return Err(Error::InvalidInput(format!(
            "n * col_weight = {} must be divisible by row_weight {row_weight}",
            n * col_weight
        )));
    }
    let rows = n * col_weight / row_weight;
    if rows == 0 || rows >= n {
        return Err(Error::InvalidInput(format!(
            "degenerate shape {rows}x{n} from (n, col_weight, row_weight)"
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);

    // Edge sockets: variable side in column order, check side shuffled.
    let mut check_sockets: Vec<usize> = (0..rows).flat_map(|r| std::iter::repeat_n(r, row_weight)).collect();
    // Fisher-Yates with the seeded stream.
    for i in (1..check_sockets.len()).rev() {
        let j = rng.random_range(0..=i);
        check_sockets.swap(i, j);
    }
    let mut edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|col| std::iter::repeat_n(col, col_weight))
        .zip(check_sockets)
        .map(|(col, row)| (row, col))
        .collect();

    // Repair double edges by swapping check endpoints with a random edge;
    // this preserves all degrees.
    let limit = 64 * edges.len();
    let mut attempts = 0;
    loop {
        let mut seen = std::collections::HashSet::new();
        let dup = edges.iter().position(|e| !seen.insert(*e));
        let Some(i) = dup else { break };
        attempts += 1;
        if attempts > limit {
            return Err(Error::InvalidInput(
                "edge-pairing repair did not terminate; pick another seed".into(),
            ));
        }
        let k = rng.random_range(0..edges.len());
        let (ri, rk) = (edges[i].0, edges[k].0);
        edges[i].0 = rk;
        edges[k].0 = ri;
    }

    let mut h = BitMatrix::zeros(rows, n);
    for (r, c) in edges {
        h.set(r, c, true);
    }
    Ok(LinearCode::from_parity_check_reduced(h, None))
}
