//! Dense integer matrices, just enough for surgery presentations:
//! multiplication, determinant, and the elementary row/column operations
//! the Smith reduction needs.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += q * row[b]
    pub fn add_row_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let add = q * &self[(b, j)];
            self[(a, j)] += add;
        }
    }

    /// col[a] += q * col[b]
    pub fn add_col_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let add = q * &self[(i, b)];
            self[(i, a)] += add;
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self[(r, j)].clone();
            self[(r, j)] = v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                // find a pivot below
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    pub fn is_diagonal(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` in Smith normal form.
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

/// Classical Smith reduction. The pivot at each stage is the smallest
/// nonzero entry in absolute value, which keeps coefficient growth down on
/// the small matrices surgery presentations produce.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (r, c) = (a.nrows(), a.ncols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let steps = r.min(c);

    for k in 0..steps {
        loop {
            // smallest nonzero entry of the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..r {
                for j in k..c {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if d[(i, j)].abs() < d[(pi, pj)].abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // trailing block is zero; done with this and later steps
                return finish(u, d, v, k);
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            // clear column k below the pivot
            let mut clean = true;
            for i in k + 1..r {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, k)] / &d[(k, k)]);
                d.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                if !d[(i, k)].is_zero() {
                    clean = false;
                }
            }
            // clear row k to the right of the pivot
            for j in k + 1..c {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(k, j)] / &d[(k, k)]);
                d.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                if !d[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue; // remainders became new, smaller pivot candidates
            }
            // divisibility sweep: d[k][k] must divide the trailing block
            let mut fixed = true;
            'scan: for i in k + 1..r {
                for j in k + 1..c {
                    if (&d[(i, j)] % &d[(k, k)]).is_zero() {
                        continue;
                    }
                    let one = BigInt::one();
                    d.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                    fixed = false;
                    break 'scan;
                }
            }
            if fixed {
                break;
            }
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    finish(u, d, v, steps)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix, _rank: usize) -> SmithDecomposition {
    debug_assert!(d.is_diagonal());
    SmithDecomposition { u, d, v }
}

impl SmithDecomposition {
    /// Diagonal entries of `d` (length min(rows, cols)).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}
