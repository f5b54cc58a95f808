//! Syndrome-based belief propagation (sum-product) decoding.
//!
//! The decoder estimates an error vector `e` with `H e^T = b` where each
//! unfrozen position is flipped independently with prior probability `q`.
//! The last `frozen_tail` positions are known error free and are excluded
//! from the factor graph entirely, which is exactly equivalent to clamping
//! their likelihoods and avoids saturating the arithmetic.
//!
//! Messages use the log-likelihood-ratio form with a flooding schedule and
//! no damping. Convergence means the hard decision reproduces the syndrome.

use crate::codes::{DecodeResult, SyndromeDecoder};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Magnitude cap on messages; tanh saturates to 1.0 in f64 well below this.
const LLR_CLAMP: f64 = 30.0;

struct Graph {
    vars: usize,
    /// Variable indices per check row (unfrozen columns only).
    check_vars: Vec<Vec<usize>>,
    /// Edge ids per check, aligned with `check_vars`.
    check_edges: Vec<Vec<usize>>,
    /// Edge ids per variable.
    var_edges: Vec<Vec<usize>>,
    edge_count: usize,
}

fn build_graph(h: &BitMatrix, vars: usize) -> Graph {
    let mut check_vars = Vec::with_capacity(h.rows());
    let mut check_edges = Vec::with_capacity(h.rows());
    let mut var_edges = vec![Vec::new(); vars];
    let mut edge_count = 0;
    for i in 0..h.rows() {
        let vs: Vec<usize> = (0..vars).filter(|&j| h.get(i, j)).collect();
        let mut es = Vec::with_capacity(vs.len());
        for &v in &vs {
            var_edges[v].push(edge_count);
            es.push(edge_count);
            edge_count += 1;
        }
        check_vars.push(vs);
        check_edges.push(es);
    }
    Graph {
        vars,
        check_vars,
        check_edges,
        var_edges,
        edge_count,
    }
}

fn syndrome_matches(graph: &Graph, estimate: &[bool], syndrome: &BitVector) -> bool {
    graph
        .check_vars
        .iter()
        .enumerate()
        .all(|(i, vs)| vs.iter().fold(false, |p, &v| p ^ estimate[v]) == syndrome.get(i))
}

/// Sum-product decoding of `H e^T = b` with prior error probability `q` on
/// the first `cols - frozen_tail` positions and a hard zero on the rest.
pub fn bp_decode(
    h: &BitMatrix,
    syndrome: &BitVector,
    q: f64,
    frozen_tail: usize,
    max_iters: usize,
) -> Result<DecodeResult> {
    if !(q > 0.0 && q < 0.5) {
        return Err(Error::InvalidInput(format!(
            "error prior must satisfy 0 < q < 0.5, got {q}"
        )));
    }
    if frozen_tail > h.cols() {
        return Err(Error::dim(
            "bp_decode",
            format!("frozen tail {frozen_tail} exceeds {} columns", h.cols()),
        ));
    }
    if syndrome.len() != h.rows() {
        return Err(Error::dim(
            "bp_decode",
            format!("syndrome length {} vs {} rows", syndrome.len(), h.rows()),
        ));
    }
    let vars = h.cols() - frozen_tail;
    let graph = build_graph(h, vars);
    let result = run_sum_product(&graph, syndrome, q, max_iters);
    Ok(finish(result, h.cols()))
}

struct RawResult {
    estimate: Vec<bool>,
    converged: bool,
    iterations: usize,
}

fn run_sum_product(graph: &Graph, syndrome: &BitVector, q: f64, max_iters: usize) -> RawResult {
    let prior = ((1.0 - q) / q).ln();
    let mut v2c = vec![prior; graph.edge_count];
    let mut c2v = vec![0.0f64; graph.edge_count];
    let mut estimate = vec![false; graph.vars];

    // The all-zero estimate may already explain the syndrome.
    if syndrome_matches(graph, &estimate, syndrome) {
        return RawResult {
            estimate,
            converged: true,
            iterations: 0,
        };
    }

    for iter in 1..=max_iters {
        // Check-to-variable update with prefix/suffix products so a single
        // zero message does not require division.
        for (i, edges) in graph.check_edges.iter().enumerate() {
            let deg = edges.len();
            if deg == 0 {
                continue;
            }
            let sign = if syndrome.get(i) { -1.0 } else { 1.0 };
            let tanhs: Vec<f64> = edges.iter().map(|&e| (v2c[e] / 2.0).tanh()).collect();
            let mut prefix = vec![1.0f64; deg + 1];
            for k in 0..deg {
                prefix[k + 1] = prefix[k] * tanhs[k];
            }
            let mut suffix = vec![1.0f64; deg + 1];
            for k in (0..deg).rev() {
                suffix[k] = suffix[k + 1] * tanhs[k];
            }
            for k in 0..deg {
                let excl = (prefix[k] * suffix[k + 1]).clamp(-0.999_999_999_999, 0.999_999_999_999);
                c2v[edges[k]] = (sign * 2.0 * excl.atanh()).clamp(-LLR_CLAMP, LLR_CLAMP);
            }
        }

        // Variable-to-check update and hard decision.
        for (v, edges) in graph.var_edges.iter().enumerate() {
            let total: f64 = prior + edges.iter().map(|&e| c2v[e]).sum::<f64>();
            for &e in edges {
                v2c[e] = (total - c2v[e]).clamp(-LLR_CLAMP, LLR_CLAMP);
            }
            estimate[v] = total < 0.0;
        }

        if syndrome_matches(graph, &estimate, syndrome) {
            return RawResult {
                estimate,
                converged: true,
                iterations: iter,
            };
        }
    }
    RawResult {
        estimate,
        converged: false,
        iterations: max_iters,
    }
}

fn finish(raw: RawResult, out_len: usize) -> DecodeResult {
    let mut error_estimate = BitVector::zeros(out_len);
    for (v, &bit) in raw.estimate.iter().enumerate() {
        if bit {
            error_estimate.set(v, true);
        }
    }
    DecodeResult {
        error_estimate,
        converged: raw.converged,
        iterations: raw.iterations,
    }
}

/// A reusable BP decoder bound to a parity-check matrix.
///
/// The plain constructor decodes against `h` directly. When the matrix of
/// interest is an augmented check `(T H | J)` whose left block has been
/// densified by the row transform `T`, [`BpDecoder::with_syndrome_map`]
/// decodes in the sparse domain instead: syndromes are first mapped by
/// `T^{-1}` and the estimate is padded back to the augmented length. Both
/// views produce estimates with identical syndromes under the bound matrix.
#[derive(Clone, Debug)]
pub struct BpDecoder {
    graph_matrix: BitMatrix,
    syndrome_map: Option<BitMatrix>,
    q: f64,
    frozen_tail: usize,
    out_len: usize,
    max_iters: usize,
}

impl BpDecoder {
    pub fn new(h: BitMatrix, q: f64, frozen_tail: usize, max_iters: usize) -> Result<Self> {
        if !(q > 0.0 && q < 0.5) {
            return Err(Error::InvalidInput(format!(
                "error prior must satisfy 0 < q < 0.5, got {q}"
            )));
        }
        if frozen_tail > h.cols() {
            return Err(Error::dim(
                "BpDecoder",
                format!("frozen tail {frozen_tail} exceeds {} columns", h.cols()),
            ));
        }
        let out_len = h.cols();
        Ok(BpDecoder {
            graph_matrix: h,
            syndrome_map: None,
            q,
            frozen_tail,
            out_len,
            max_iters,
        })
    }

    /// Decodes over the sparse matrix `h_sparse` after applying
    /// `syndrome_map` to incoming syndromes; estimates are zero-padded to
    /// `out_len` positions.
    pub fn with_syndrome_map(
        h_sparse: BitMatrix,
        syndrome_map: BitMatrix,
        out_len: usize,
        q: f64,
        max_iters: usize,
    ) -> Result<Self> {
        if !(q > 0.0 && q < 0.5) {
            return Err(Error::InvalidInput(format!(
                "error prior must satisfy 0 < q < 0.5, got {q}"
            )));
        }
        if syndrome_map.cols() != h_sparse.rows() || syndrome_map.rows() != h_sparse.rows() {
            return Err(Error::dim(
                "BpDecoder",
                format!(
                    "syndrome map is {}x{}, expected square of size {}",
                    syndrome_map.rows(),
                    syndrome_map.cols(),
                    h_sparse.rows()
                ),
            ));
        }
        if out_len < h_sparse.cols() {
            return Err(Error::dim(
                "BpDecoder",
                format!("output length {out_len} below {} columns", h_sparse.cols()),
            ));
        }
        Ok(BpDecoder {
            graph_matrix: h_sparse,
            syndrome_map: Some(syndrome_map),
            q,
            frozen_tail: 0,
            out_len,
            max_iters,
        })
    }
}

impl SyndromeDecoder for BpDecoder {
    fn decode(&self, syndrome: &BitVector) -> Result<DecodeResult> {
        let mapped;
        let effective = match &self.syndrome_map {
            Some(map) => {
                mapped = map.mul_vec(syndrome)?;
                &mapped
            }
            None => syndrome,
        };
        let mut result = bp_decode(
            &self.graph_matrix,
            effective,
            self.q,
            self.frozen_tail,
            self.max_iters,
        )?;
        if result.error_estimate.len() < self.out_len {
            result.error_estimate = result
                .error_estimate
                .concat(&BitVector::zeros(self.out_len - result.error_estimate.len()));
        }
        Ok(result)
    }

    fn error_len(&self) -> usize {
        self.out_len
    }
}
