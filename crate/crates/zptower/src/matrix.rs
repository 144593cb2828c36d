//! Dense integer matrices with exact elimination.
//!
//! Everything here runs over arbitrary-precision integers; no floating
//! point is used anywhere in the crate.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// A dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> BigInt>(
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> IntMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    /// The matrix with row `row` and column `col` removed.
    pub fn minor_removing(&self, row: usize, col: usize) -> IntMatrix {
        IntMatrix::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let si = if i < row { i } else { i + 1 };
            let sj = if j < col { j } else { j + 1 };
            self.entry(si, sj).clone()
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every division performed is exact; intermediate entries are
    /// determinants of leading minors of the row-permuted matrix, which
    /// keeps their size polynomially bounded.
    pub fn det_bareiss(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::from(1);
        }
        let mut m = self.data.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = 1i8;
        let mut prev = BigInt::from(1);
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, r * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&m, k, k) * at(&m, i, j) - at(&m, i, k) * at(&m, k, j);
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                    m[i * n + j] = num / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = at(&m, k, k);
        }
        let det = at(&m, n - 1, n - 1);
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// The diagonal of the Smith normal form: non-negative entries
    /// `d_1 | d_2 | ... | d_k` with `k = min(rows, cols)`, trailing zeros
    /// for the rank deficiency.  Pivots are chosen as the entry of least
    /// absolute value, with explicit divisibility fix-up.
    pub fn smith_diagonal(&self) -> Vec<BigInt> {
        let (r, c) = (self.rows, self.cols);
        let k = r.min(c);
        let mut m = self.clone();
        for t in 0..k {
            while let Some((pi, pj)) = m.min_abs_nonzero(t) {
                m.swap_rows(t, pi);
                m.swap_cols(t, pj);
                let mut dirty = false;
                for i in t + 1..r {
                    if !m.entry(i, t).is_zero() {
                        let q = m.entry(i, t) / m.entry(t, t);
                        m.row_axpy(i, t, &-q);
                        if !m.entry(i, t).is_zero() {
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..c {
                    if !m.entry(t, j).is_zero() {
                        let q = m.entry(t, j) / m.entry(t, t);
                        m.col_axpy(j, t, &-q);
                        if !m.entry(t, j).is_zero() {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                let cleared = (t + 1..r).all(|i| m.entry(i, t).is_zero())
                    && (t + 1..c).all(|j| m.entry(t, j).is_zero());
                if !cleared {
                    continue;
                }
                // pivot must divide the remaining submatrix
                if let Some(i) = m.row_with_nondivisible_entry(t) {
                    m.row_add(t, i);
                    continue;
                }
                break;
            }
        }
        (0..k).map(|t| m.entry(t, t).abs()).collect()
    }

    fn min_abs_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let e = self.entry(i, j);
                if e.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some(b) => {
                        if e.abs() < self.entry(b.0, b.1).abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn row_with_nondivisible_entry(&self, t: usize) -> Option<usize> {
        let pivot = self.entry(t, t);
        for i in t + 1..self.rows {
            for j in t + 1..self.cols {
                if !(self.entry(i, j) % pivot).is_zero() {
                    return Some(i);
                }
            }
        }
        None
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_i += q * row_t`
    fn row_axpy(&mut self, i: usize, t: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * self.entry(t, j);
            *self.entry_mut(i, j) += delta;
        }
    }

    /// `col_j += q * col_t`
    fn col_axpy(&mut self, j: usize, t: usize, q: &BigInt) {
        for i in 0..self.rows {
            let delta = q * self.entry(i, t);
            *self.entry_mut(i, j) += delta;
        }
    }

    /// `row_t += row_i`
    fn row_add(&mut self, t: usize, i: usize) {
        for j in 0..self.cols {
            let delta = self.entry(i, j).clone();
            *self.entry_mut(t, j) += delta;
        }
    }
}

/// `ord_p(x)` for a nonzero integer; `None` for zero.
pub fn ord_p(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0u32;
    let mut x = x.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&x, &p);
        if !r.is_zero() {
            return Some(v);
        }
        v += 1;
        x = q;
    }
}

/// Deterministic trial-division primality check; inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_fn(rows.len(), rows[0].len(), |i, j| BigInt::from(rows[i][j]))
    }

    #[test]
    fn det_small() {
        assert_eq!(mat(&[&[1, 2], &[3, 4]]).det_bareiss(), BigInt::from(-2));
        assert_eq!(mat(&[&[5]]).det_bareiss(), BigInt::from(5));
        assert_eq!(IntMatrix::zero(0, 0).det_bareiss(), BigInt::from(1));
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).det_bareiss(), BigInt::zero());
    }

    #[test]
    fn det_needs_pivoting() {
        let m = mat(&[&[0, 1, 2], &[1, 0, 3], &[4, 5, 0]]);
        // cofactor expansion by hand: 0*(0-15) - 1*(0-12) + 2*(5-0) = 22
        assert_eq!(m.det_bareiss(), BigInt::from(22));
    }

    #[test]
    fn det_matches_cofactor_on_random_matrices() {
        // simple LCG so the test is deterministic
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 7) - 3
        };
        fn cofactor_det(m: &IntMatrix) -> BigInt {
            let n = m.rows();
            if n == 0 {
                return BigInt::from(1);
            }
            let mut acc = BigInt::zero();
            for j in 0..n {
                let term = m.entry(0, j) * cofactor_det(&m.minor_removing(0, j));
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        for _ in 0..40 {
            let m = IntMatrix::from_fn(4, 4, |_, _| BigInt::from(next()));
            assert_eq!(m.det_bareiss(), cofactor_det(&m));
        }
    }

    #[test]
    fn smith_diagonal_examples() {
        let m = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        // well-known example: SNF diag (2, 2, 156)
        assert_eq!(
            m.smith_diagonal(),
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );
        let id = mat(&[&[1, 0], &[0, 1]]);
        assert_eq!(id.smith_diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
        let zero = IntMatrix::zero(2, 3);
        assert_eq!(zero.smith_diagonal(), vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn smith_diagonal_divisibility_chain() {
        let mut state = 99u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 9) - 4
        };
        for _ in 0..30 {
            let m = IntMatrix::from_fn(4, 4, |_, _| BigInt::from(next()));
            let d = m.smith_diagonal();
            for w in d.windows(2) {
                if !w[0].is_zero() {
                    assert!((&w[1] % &w[0]).is_zero(), "chain broken: {d:?}");
                } else {
                    assert!(w[1].is_zero());
                }
            }
            // the product of the nonzero diagonal equals |det| when nonsingular
            let det = m.det_bareiss();
            if !det.is_zero() {
                let prod: BigInt = d.iter().product();
                assert_eq!(prod, det.abs());
            }
        }
    }

    #[test]
    fn ord_p_values() {
        assert_eq!(ord_p(&BigInt::from(75), 5), Some(2));
        assert_eq!(ord_p(&BigInt::from(75), 3), Some(1));
        assert_eq!(ord_p(&BigInt::from(75), 2), Some(0));
        assert_eq!(ord_p(&BigInt::zero(), 3), None);
        assert_eq!(ord_p(&BigInt::from(-18), 3), Some(2));
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(97));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }
}
