//! Arbitrary-precision integer matrices, Smith normal form, and the lattice
//! computations built on it.
//!
//! The decomposition returned by [`smith_normal_form`] satisfies U * A * V = D
//! with U, V unimodular and D diagonal, nonnegative, with each diagonal entry
//! dividing the next. Everything downstream (kernels, column spaces, exact
//! solving, quotient invariants) reduces to this.

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
        IntMatrix {
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

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += term;
                }
            }
        }
        out
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "shape mismatch in hstack");
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn top_rows(&self, k: usize) -> IntMatrix {
        assert!(k <= self.rows);
        IntMatrix::from_fn(k, self.cols, |i, j| self[(i, j)].clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    /// Kronecker product.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        IntMatrix::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| &self[(i / other.rows, j / other.cols)] * &other[(i % other.rows, j % other.cols)],
        )
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

    /// row[a] += c * row[b]
    fn add_row_multiple(&mut self, a: usize, b: usize, c: &BigInt) {
        for j in 0..self.cols {
            let term = c * &self[(b, j)];
            self[(a, j)] += term;
        }
    }

    /// col[a] += c * col[b]
    fn add_col_multiple(&mut self, a: usize, b: usize, c: &BigInt) {
        for i in 0..self.rows {
            let term = c * &self[(i, b)];
            self[(i, a)] += term;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        (0..self.d.rows.min(self.d.cols))
            .take_while(|&i| !self.d[(i, i)].is_zero())
            .count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form with transforms: returns (U, D, V) with U * A * V = D.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for k in 0..m.min(n) {
        'pivot: loop {
            let Some((pi, pj)) = min_abs_nonzero(&d, k) else {
                return finish(u, d, v);
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            // clear column k below the pivot
            for i in k + 1..m {
                if !d[(i, k)].is_zero() {
                    let q = -(&d[(i, k)] / &d[(k, k)]);
                    d.add_row_multiple(i, k, &q);
                    u.add_row_multiple(i, k, &q);
                }
            }
            if (k + 1..m).any(|i| !d[(i, k)].is_zero()) {
                continue 'pivot; // a smaller remainder appeared; re-pivot
            }
            // clear row k to the right of the pivot
            for j in k + 1..n {
                if !d[(k, j)].is_zero() {
                    let q = -(&d[(k, j)] / &d[(k, k)]);
                    d.add_col_multiple(j, k, &q);
                    v.add_col_multiple(j, k, &q);
                }
            }
            if (k + 1..n).any(|j| !d[(k, j)].is_zero()) {
                continue 'pivot;
            }
            // divisibility: the pivot must divide the rest of the submatrix
            let mut fixed = true;
            'scan: for i in k + 1..m {
                for j in k + 1..n {
                    if !(&d[(i, j)] % &d[(k, k)]).is_zero() {
                        let one = BigInt::one();
                        d.add_row_multiple(k, i, &one);
                        u.add_row_multiple(k, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break 'pivot;
            }
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    finish(u, d, v)
}

fn finish(u: IntMatrix, mut d: IntMatrix, v: IntMatrix) -> SmithDecomposition {
    // sign-normalize any pivots an early return left negative
    let mut u = u;
    for k in 0..d.rows.min(d.cols) {
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    SmithDecomposition { u, d, v }
}

fn min_abs_nonzero(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..d.rows {
        for j in k..d.cols {
            let v = d[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            match &best {
                Some((_, _, b)) if *b <= v => {}
                _ => best = Some((i, j, v)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Basis of the integer kernel of A, as matrix columns.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let free: Vec<usize> = (rank..a.cols).collect();
    snf.v.select_columns(&free)
}

/// Basis of the column lattice of A (the image of A as a map into Z^rows).
pub fn column_space_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let av = a.mul(&snf.v);
    av.select_columns(&(0..rank).collect::<Vec<_>>())
}

/// Solves A X = B exactly over the integers; None when unsolvable.
pub fn solve_exact(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows, b.rows, "shape mismatch in solve");
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let y = snf.u.mul(b);
    let mut x_prime = IntMatrix::zeros(a.cols, b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            if i < rank {
                let (q, r) = num_integer::Integer::div_rem(&y[(i, j)], &snf.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                x_prime[(i, j)] = q;
            } else if !y[(i, j)].is_zero() {
                return None;
            }
        }
    }
    Some(snf.v.mul(&x_prime))
}

/// Invariants of the quotient of the lattice spanned by `basis` (columns,
/// linearly independent) by the sublattice generated by `sub` (columns,
/// required to lie inside the lattice): free rank plus nontrivial invariant
/// factors in divisibility order.
pub fn quotient_invariants(basis: &IntMatrix, sub: &IntMatrix) -> (usize, Vec<BigInt>) {
    if basis.cols == 0 {
        return (0, Vec::new());
    }
    let x = solve_exact(basis, sub).expect("sublattice must lie inside the lattice");
    let snf = smith_normal_form(&x);
    let rank = basis.cols - snf.rank();
    let factors: Vec<BigInt> = snf
        .diagonal()
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    (rank, factors)
}
