//! Dense matrices over a prime field: row reduction, kernels, determinants,
//! and invertible coordinate changes.

use rand::Rng;

use crate::error::AlgebraError;
use crate::field::{Fp, PrimeField};
use crate::point::ProjectivePoint;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Fp>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<Fp>>) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::Malformed("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            field,
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_u64_rows(field: PrimeField, rows: &[&[u64]]) -> Result<Self, AlgebraError> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.elem(v)).collect())
                .collect(),
        )
    }

    pub fn random<R: Rng + ?Sized>(
        field: PrimeField,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: (0..rows * cols).map(|_| field.random(rng)).collect(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Fp] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Fp>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[Fp]) -> Vec<Fp> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row echelon form in place. Pivots are chosen column by
    /// column, taking the lowest-index row with a nonzero entry. Returns the
    /// pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self[(r, c)].inverse().expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] *= inv;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self[(r, j)];
                    self[(i, j)] -= factor * v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel. One vector per free column, with a 1 in
    /// that column; ordering follows the free columns left to right.
    pub fn nullspace(&self) -> Vec<Vec<Fp>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(row, free)];
                }
                v
            })
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self) -> Fp {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return self.field.zero();
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = -det;
            }
            let pivot = m[(c, c)];
            det *= pivot;
            let inv = pivot.inverse().expect("pivot is nonzero");
            for i in c + 1..n {
                let factor = m[(i, c)] * inv;
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m[(c, j)];
                    m[(i, j)] -= factor * v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix, AlgebraError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = self.field.one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(AlgebraError::SingularChange);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)];
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Fp;
    fn index(&self, (i, j): (usize, usize)) -> &Fp {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fp {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// An invertible change of projective coordinates.
///
/// Acting on polynomials it substitutes `x_i -> sum_j M[i][j] x_j`, so
/// `(f . M)(v) = f(M v)`. A point `P` on `V(f)` corresponds to `M^-1 P` on
/// `V(f . M)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearChange {
    matrix: Matrix,
}

impl LinearChange {
    pub fn new(matrix: Matrix) -> Result<Self, AlgebraError> {
        if matrix.rows() != matrix.cols() || matrix.determinant().is_zero() {
            return Err(AlgebraError::SingularChange);
        }
        Ok(LinearChange { matrix })
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        LinearChange {
            matrix: Matrix::identity(field, n),
        }
    }

    /// Exchanges variables `a` and `b`.
    pub fn swap(field: PrimeField, n: usize, a: usize, b: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            let j = if i == a {
                b
            } else if i == b {
                a
            } else {
                i
            };
            m[(i, j)] = field.one();
        }
        LinearChange { matrix: m }
    }

    /// Uniformly random invertible change.
    pub fn random<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Matrix::random(field, n, n, rng);
            if !m.determinant().is_zero() {
                return LinearChange { matrix: m };
            }
        }
    }

    /// A change whose first column is `p`, so the first coordinate point
    /// `(1:0:...:0)` is carried to `p`. The remaining columns are the unit
    /// vectors other than the one at `p`'s first nonzero coordinate.
    pub fn sending_first_to(p: &ProjectivePoint) -> Self {
        let field = p.field();
        let n = p.dim();
        let k = p.first_nonzero();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &c) in p.coords().iter().enumerate() {
            m[(i, 0)] = c;
        }
        let mut col = 1;
        for e in 0..n {
            if e == k {
                continue;
            }
            m[(e, col)] = field.one();
            col += 1;
        }
        LinearChange { matrix: m }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange {
            matrix: self.matrix.inverse().expect("change is invertible"),
        }
    }

    /// `self` followed by `other`: `(f . self) . other = f . (self * other)`.
    pub fn then(&self, other: &LinearChange) -> LinearChange {
        LinearChange {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn apply_to_point(&self, p: &ProjectivePoint) -> ProjectivePoint {
        ProjectivePoint::new(self.matrix.mul_vec(p.coords())).expect("invertible image is nonzero")
    }

    /// The point of the transformed picture corresponding to `p`, i.e. `M^-1 p`.
    pub fn pull_back_point(&self, p: &ProjectivePoint) -> ProjectivePoint {
        self.inverse().apply_to_point(p)
    }
}
