//! Gaussian elimination and derived operations.
//!
//! Pivot selection is always leftmost column, topmost row, in a fixed scan
//! order, which makes every output reproducible bit for bit.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    mat: BitMatrix,
    pivots: Vec<usize>,
}

fn echelonize(a: &BitMatrix) -> Echelon {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..m.cols() {
        if next_row == m.rows() {
            break;
        }
        let pivot = (next_row..m.rows()).find(|&r| m.get(r, col));
        let Some(pivot) = pivot else { continue };
        m.swap_rows(next_row, pivot);
        for r in 0..m.rows() {
            if r != next_row && m.get(r, col) {
                m.xor_row_into(next_row, r);
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    Echelon { mat: m, pivots }
}

/// Dimension of the row space.
pub fn rank(a: &BitMatrix) -> usize {
    echelonize(a).pivots.len()
}

/// Inverse of a square full-rank matrix.
pub fn invert(a: &BitMatrix) -> Result<BitMatrix> {
    if a.rows() != a.cols() {
        return Err(Error::dim(
            "invert",
            format!("matrix is {}x{}, not square", a.rows(), a.cols()),
        ));
    }
    let n = a.rows();
    let mut work = a.clone();
    let mut inv = BitMatrix::identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| work.get(r, col))
            .ok_or(Error::Singular("invert"))?;
        work.swap_rows(col, pivot);
        inv.swap_rows(col, pivot);
        for r in 0..n {
            if r != col && work.get(r, col) {
                work.xor_row_into(col, r);
                inv.xor_row_into(col, r);
            }
        }
    }
    Ok(inv)
}

/// A basis (as matrix rows) of `{x : A x^T = 0}`. The row count is always
/// `cols - rank(A)`; a full-rank square input yields a 0-row matrix.
pub fn nullspace_basis(a: &BitMatrix) -> BitMatrix {
    let ech = echelonize(a);
    let cols = a.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis_rows = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = BitVector::zeros(cols);
        v.set(free, true);
        for (row, &p) in ech.pivots.iter().enumerate() {
            if ech.mat.get(row, free) {
                v.set(p, true);
            }
        }
        basis_rows.push(v);
    }
    BitMatrix::from_rows(&basis_rows, cols).expect("nullspace rows share the input width")
}

/// Output of [`reduce_to_corner_identity`].
pub struct CornerReduction {
    /// Invertible row transform.
    pub t1: BitMatrix,
    /// Invertible column transform (applied as `t2^T` on the right).
    pub t2: BitMatrix,
    /// Rank of the input, the size of the corner identity block.
    pub rank: usize,
}

/// Finds invertible `T1`, `T2` such that `T1 * M * T2^T` is zero everywhere
/// except an identity block of size `rank(M)` in the bottom-right corner.
pub fn reduce_to_corner_identity(m: &BitMatrix) -> CornerReduction {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut t1 = BitMatrix::identity(rows);
    let mut t2 = BitMatrix::identity(cols);

    // Row phase: full Gauss-Jordan. Row operations on `a` are mirrored on
    // `t1`, keeping a == t1 * m * t2^T throughout.
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        if next_row == rows {
            break;
        }
        let Some(pivot) = (next_row..rows).find(|&r| a.get(r, col)) else {
            continue;
        };
        a.swap_rows(next_row, pivot);
        t1.swap_rows(next_row, pivot);
        for r in 0..rows {
            if r != next_row && a.get(r, col) {
                a.xor_row_into(next_row, r);
                t1.xor_row_into(next_row, r);
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    let c = pivots.len();

    // Column phase: clear residual entries in non-pivot columns. The column
    // operation "col j += col p" corresponds to the row operation
    // "row j += row p" on t2. After Gauss-Jordan every pivot column is a
    // unit vector, so adding it toggles exactly one entry.
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for col in 0..cols {
        if is_pivot[col] {
            continue;
        }
        for row in 0..c {
            if a.get(row, col) {
                a.set(row, col, false);
                t2.xor_row_into(pivots[row], col);
            }
        }
    }

    // Permutation phase: move the pivot rows below the zero rows and the
    // pivot columns after the cleared columns, leaving the identity in the
    // bottom-right corner.
    let ell1 = rows - c;
    let ell2 = cols - c;
    let mut row_dest = vec![0usize; rows];
    for (i, dest) in row_dest.iter_mut().enumerate() {
        *dest = if i < c { ell1 + i } else { i - c };
    }
    let mut col_dest = vec![0usize; cols];
    let mut next_free = 0;
    for (j, dest) in col_dest.iter_mut().enumerate() {
        if is_pivot[j] {
            let i = pivots.iter().position(|&p| p == j).unwrap();
            *dest = ell2 + i;
        } else {
            *dest = next_free;
            next_free += 1;
        }
    }
    let a = permute_rows(&a, &row_dest);
    let t1 = permute_rows(&t1, &row_dest);
    let a = permute_cols(&a, &col_dest);
    let t2 = permute_rows(&t2, &col_dest);

    debug_assert!(is_corner_identity(&a, c));
    let _ = a;
    CornerReduction { t1, t2, rank: c }
}

fn permute_rows(m: &BitMatrix, dest: &[usize]) -> BitMatrix {
    let mut out = BitMatrix::zeros(m.rows(), m.cols());
    for (src, &d) in dest.iter().enumerate() {
        out.set_row(d, &m.row(src));
    }
    out
}

fn permute_cols(m: &BitMatrix, dest: &[usize]) -> BitMatrix {
    let mut source_of = vec![0usize; m.cols()];
    for (src, &d) in dest.iter().enumerate() {
        source_of[d] = src;
    }
    BitMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, source_of[j]))
}

/// Checks the corner form: zero everywhere except `I_c` bottom-right.
pub(crate) fn is_corner_identity(a: &BitMatrix, c: usize) -> bool {
    let (rows, cols) = (a.rows(), a.cols());
    for i in 0..rows {
        for j in 0..cols {
            let in_corner = i >= rows - c && j >= cols - c;
            let expect = in_corner && (i - (rows - c)) == (j - (cols - c));
            if a.get(i, j) != expect {
                return false;
            }
        }
    }
    true
}

/// Incremental independence tracker over GF(2) rows.
pub(crate) struct IndependentSet {
    cols: usize,
    reduced: Vec<(usize, BitVector)>, // (pivot position, reduced row)
}

impl IndependentSet {
    pub(crate) fn new(cols: usize) -> Self {
        IndependentSet {
            cols,
            reduced: Vec::new(),
        }
    }

    pub(crate) fn residual(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        for (p, row) in &self.reduced {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Adds `v` if independent of the current set; returns whether it was.
    pub(crate) fn try_insert(&mut self, v: &BitVector) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        let r = self.residual(v);
        match r.first_one() {
            None => false,
            Some(p) => {
                self.reduced.push((p, r));
                true
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.reduced.len()
    }
}

/// Extends the independent rows of `sub` to a basis of the row space of
/// `sup`, scanning the rows of `sup` in index order and greedily keeping
/// those independent of what has been accumulated. Returns only the added
/// rows (possibly zero of them).
pub fn complete_basis(sub: &BitMatrix, sup: &BitMatrix) -> Result<BitMatrix> {
    if sub.cols() != sup.cols() {
        return Err(Error::dim(
            "complete_basis",
            format!("sub has {} cols, sup has {}", sub.cols(), sup.cols()),
        ));
    }
    let cols = sup.cols();

    let mut span_sup = IndependentSet::new(cols);
    for row in sup.row_iter() {
        span_sup.try_insert(&row);
    }
    let rank_sup = span_sup.len();

    let mut acc = IndependentSet::new(cols);
    for (i, row) in sub.row_iter().enumerate() {
        if !span_sup.residual(&row).is_zero() {
            return Err(Error::InvalidInput(format!(
                "complete_basis: sub row {i} is not in the row space of sup"
            )));
        }
        if !acc.try_insert(&row) {
            return Err(Error::InvalidInput(format!(
                "complete_basis: sub row {i} is dependent on earlier sub rows"
            )));
        }
    }

    let mut extension = Vec::new();
    for row in sup.row_iter() {
        if acc.len() == rank_sup {
            break;
        }
        if acc.try_insert(&row) {
            extension.push(row);
        }
    }
    BitMatrix::from_rows(&extension, cols)
}

/// Solves `x * basis = u` for a square, full-rank `basis`.
pub fn solve_coordinates(basis: &BitMatrix, u: &BitVector) -> Result<BitVector> {
    if basis.rows() != basis.cols() {
        return Err(Error::dim(
            "solve_coordinates",
            format!("basis is {}x{}, not square", basis.rows(), basis.cols()),
        ));
    }
    if u.len() != basis.cols() {
        return Err(Error::dim(
            "solve_coordinates",
            format!("vector length {} vs basis cols {}", u.len(), basis.cols()),
        ));
    }
    match solve_row_combination(basis, u)? {
        Some(x) => Ok(x),
        None => Err(Error::Singular("solve_coordinates")),
    }
}

/// Solves `x * mat = target` for any `mat`; `None` when `target` is outside
/// the row space. When solutions form a coset, free coordinates are zero.
pub(crate) fn solve_row_combination(
    mat: &BitMatrix,
    target: &BitVector,
) -> Result<Option<BitVector>> {
    if target.len() != mat.cols() {
        return Err(Error::dim(
            "solve_row_combination",
            format!("target length {} vs matrix cols {}", target.len(), mat.cols()),
        ));
    }
    // Solve mat^T x^T = target^T by eliminating the augmented system.
    let mt = mat.transpose();
    let rhs_col = {
        let mut m = BitMatrix::zeros(mt.rows(), 1);
        for i in 0..mt.rows() {
            if target.get(i) {
                m.set(i, 0, true);
            }
        }
        m
    };
    let aug = mt.hstack(&rhs_col)?;
    let ech = echelonize(&aug);
    if ech.pivots.contains(&mt.cols()) {
        return Ok(None); // inconsistent system
    }
    let mut x = BitVector::zeros(mat.rows());
    for (row, &p) in ech.pivots.iter().enumerate() {
        if ech.mat.get(row, mt.cols()) {
            x.set(p, true);
        }
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    /// Plain boolean-matrix elimination, independent of the packed code path.
    fn naive_rank(m: &BitMatrix) -> usize {
        let mut rows: Vec<Vec<bool>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) {
                rows.swap(rank, p);
                for r in 0..rows.len() {
                    if r != rank && rows[r][col] {
                        let pivot = rows[rank].clone();
                        for (x, y) in rows[r].iter_mut().zip(pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn mat(rows: &[&str]) -> BitMatrix {
        let v: Vec<BitVector> = rows.iter().map(|r| BitVector::from_text(r).unwrap()).collect();
        let cols = v.first().map_or(0, |r| r.len());
        BitMatrix::from_rows(&v, cols).unwrap()
    }

    fn hamming_parity() -> BitMatrix {
        mat(&["0001111", "0110011", "1010101"])
    }

    fn random_full_rank(n: usize, rng: &mut ChaCha12Rng) -> BitMatrix {
        loop {
            let m = BitMatrix::random(n, n, rng);
            if rank(&m) == n {
                return m;
            }
        }
    }

    #[test]
    fn rank_known_values() {
        assert_eq!(rank(&BitMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&BitMatrix::identity(5)), 5);
        assert_eq!(rank(&mat(&["01", "10"])), 2);
    }

    #[test]
    fn rank_matches_naive_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..40 {
            let r = rng.random_range(0..10);
            let c = rng.random_range(1..10);
            let m = BitMatrix::random(r, c, &mut rng);
            assert_eq!(rank(&m), naive_rank(&m));
        }
    }

    #[test]
    fn invert_identity_and_permutation() {
        assert_eq!(invert(&BitMatrix::identity(4)).unwrap(), BitMatrix::identity(4));
        let p = mat(&["01", "10"]);
        assert_eq!(invert(&p).unwrap(), p);
    }

    #[test]
    fn invert_round_trip() {
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        for _ in 0..20 {
            let n = rng.random_range(1..12);
            let a = random_full_rank(n, &mut rng);
            let inv = invert(&a).unwrap();
            assert_eq!(a.mul(&inv).unwrap(), BitMatrix::identity(n));
            assert_eq!(inv.mul(&a).unwrap(), BitMatrix::identity(n));
        }
    }

    #[test]
    fn invert_rejects_singular() {
        let singular = mat(&["11", "11"]);
        assert!(matches!(invert(&singular), Err(Error::Singular(_))));
        assert!(invert(&BitMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn nullspace_extremes() {
        assert_eq!(nullspace_basis(&BitMatrix::identity(4)).rows(), 0);
        let z = nullspace_basis(&BitMatrix::zeros(3, 5));
        assert_eq!(z.rows(), 5);
        assert_eq!(rank(&z), 5);
    }

    #[test]
    fn nullspace_of_hamming_check() {
        let h = hamming_parity();
        let ns = nullspace_basis(&h);
        assert_eq!(ns.rows(), 4);
        assert_eq!(rank(&ns), 4);
        for row in ns.row_iter() {
            assert!(h.mul_vec(&row).unwrap().is_zero());
        }
    }

    #[test]
    fn nullspace_rank_nullity() {
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..30 {
            let r = rng.random_range(0..9);
            let c = rng.random_range(1..11);
            let m = BitMatrix::random(r, c, &mut rng);
            let ns = nullspace_basis(&m);
            assert_eq!(rank(&m) + ns.rows(), c);
            assert_eq!(rank(&ns), ns.rows());
            for row in ns.row_iter() {
                assert!(m.mul_vec(&row).unwrap().is_zero());
            }
        }
    }

    fn check_corner(m: &BitMatrix) {
        let red = reduce_to_corner_identity(m);
        assert_eq!(red.rank, rank(m));
        // Both transforms must be invertible.
        invert(&red.t1).unwrap();
        invert(&red.t2).unwrap();
        let product = red.t1.mul(m).unwrap().mul_transpose(&red.t2).unwrap();
        assert!(is_corner_identity(&product, red.rank));
    }

    #[test]
    fn corner_reduction_trivial_cases() {
        let red = reduce_to_corner_identity(&BitMatrix::zeros(3, 4));
        assert_eq!(red.rank, 0);
        assert_eq!(red.t1, BitMatrix::identity(3));
        assert_eq!(red.t2, BitMatrix::identity(4));
        check_corner(&BitMatrix::identity(3));
        check_corner(&mat(&["01", "10"]));
    }

    #[test]
    fn corner_reduction_random() {
        let mut rng = ChaCha12Rng::seed_from_u64(10);
        for _ in 0..40 {
            let r = rng.random_range(0..9);
            let c = rng.random_range(1..9);
            check_corner(&BitMatrix::random(r, c, &mut rng));
        }
    }

    #[test]
    fn complete_basis_no_extension_needed() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let b = random_full_rank(5, &mut rng);
        let ext = complete_basis(&b, &b).unwrap();
        assert_eq!(ext.rows(), 0);
    }

    #[test]
    fn complete_basis_from_empty() {
        let empty = BitMatrix::zeros(0, 4);
        let ext = complete_basis(&empty, &BitMatrix::identity(4)).unwrap();
        assert_eq!(ext.rows(), 4);
        assert_eq!(rank(&ext), 4);
    }

    #[test]
    fn complete_basis_hamming_inside_its_code() {
        // The [7,4] Hamming code contains its dual, so the 3 check rows
        // extend by exactly one codeword to a basis of the code.
        let h = hamming_parity();
        let code = nullspace_basis(&h);
        let ext = complete_basis(&h, &code).unwrap();
        assert_eq!(ext.rows(), 1);
        let stacked = h.vstack(&ext).unwrap();
        assert_eq!(rank(&stacked), 4);
        // Extension rows are codewords.
        assert!(h.mul_vec(&ext.row(0)).unwrap().is_zero());
    }

    #[test]
    fn complete_basis_rejects_bad_inputs() {
        let h = hamming_parity();
        // Not contained: identity rows are not all codewords.
        assert!(complete_basis(&BitMatrix::identity(7), &nullspace_basis(&h)).is_err());
        // Dependent sub rows.
        let dep = mat(&["1100", "1100"]);
        assert!(complete_basis(&dep, &BitMatrix::identity(4)).is_err());
    }

    #[test]
    fn solve_coordinates_basics() {
        let mut rng = ChaCha12Rng::seed_from_u64(12);
        let basis = random_full_rank(6, &mut rng);
        // Row i has coordinates e_i.
        for i in 0..6 {
            let x = solve_coordinates(&basis, &basis.row(i)).unwrap();
            assert_eq!(x, BitVector::unit(6, i));
        }
        // Identity basis returns the vector unchanged.
        let u = BitVector::random(4, &mut rng);
        assert_eq!(solve_coordinates(&BitMatrix::identity(4), &u).unwrap(), u);
        // Round trip on random targets.
        for _ in 0..20 {
            let u = BitVector::random(6, &mut rng);
            let x = solve_coordinates(&basis, &u).unwrap();
            assert_eq!(x.mul_mat(&basis).unwrap(), u);
        }
    }

    #[test]
    fn solve_coordinates_rejects_singular() {
        let singular = mat(&["11", "11"]);
        let u = BitVector::from_text("10").unwrap();
        assert!(solve_coordinates(&singular, &u).is_err());
    }

    #[test]
    fn associativity_and_identity_properties() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for _ in 0..20 {
            let a = BitMatrix::random(4, 6, &mut rng);
            let b = BitMatrix::random(6, 3, &mut rng);
            let c = BitMatrix::random(3, 5, &mut rng);
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(left, right);
            assert_eq!(a.mul(&BitMatrix::identity(6)).unwrap(), a);
        }
    }
}

