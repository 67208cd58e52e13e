//! Dense exact linear algebra: matrices, reduced row echelon form,
//! nullspaces, linear solves, inverses, and canonical subspaces.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Coordinate vector over a field. The field is carried by the entries (and
/// by whatever structure owns the vector when it is empty).
pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: FieldSpec, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vector(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    let mut it = a.iter().zip(b);
    let (x, y) = it.next()?;
    Some(it.fold(x * y, |acc, (x, y)| acc + x * y))
}

pub fn random_vector<R: rand::Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Vector {
    (0..n).map(|_| field.random(rng)).collect()
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// A linear endomorphism, written as its matrix on basis coordinates:
/// column `j` holds the image of the `j`-th basis vector.
pub type LinearMap = Matrix;

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::scalar(field, n, &field.one())
    }

    pub fn scalar(field: FieldSpec, n: usize, c: &Scalar) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        if let Some(bad) = data.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: bad.field().to_string(),
            });
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, rows).expect("well-formed integer rows")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Reassembles a matrix from its row-major entry list.
    pub fn from_flat(field: FieldSpec, rows: usize, cols: usize, data: Vector) -> Self {
        assert_eq!(data.len(), rows * cols, "flat data length mismatch");
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major entries; the coordinates of this matrix in `Lin`.
    pub fn flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c) + a * b;
                        out.set(r, c, cur);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix sum dimension mismatch"
        );
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix difference dimension mismatch"
        );
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(&self.data, &other.data),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(c, &self.data),
        }
    }

    pub fn pow(&self, exp: u32) -> Matrix {
        assert!(self.is_square());
        (0..exp).fold(Matrix::identity(self.field, self.rows), |acc, _| {
            acc.mul(self)
        })
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| acc + self.get(i, i))
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Restriction of a square matrix to the leading `k x k` block.
    pub fn top_left(&self, k: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, k, k);
        for r in 0..k {
            for c in 0..k {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let x = m.get(row, c) * &inv;
                m.set(row, c, x);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let pivot_entry = m.get(row, c);
                    if pivot_entry.is_zero() {
                        continue;
                    }
                    let x = m.get(r, c) - &factor * pivot_entry;
                    m.set(r, c, x);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = zero_vector(self.field, self.cols);
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect();
        Subspace::span(self.field, self.cols, basis)
    }

    /// Solves `self * x = b`. `None` when the system is inconsistent;
    /// otherwise a particular solution and the homogeneous solution space.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<(Vector, Subspace)>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for (r, x) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, x.clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vector(self.field, self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Ok(Some((x, self.nullspace())))
    }

    /// Exact inverse, or `None` if singular (or not square).
    pub fn invert(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

/// A subspace of `F^n`, stored as the nonzero rows of a reduced row echelon
/// form. The representation is unique, so derived equality is subspace
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: Vec<Vector>) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient_dim);
        }
        let m = Matrix::from_rows(field, vectors).expect("spanning vectors share length and field");
        assert_eq!(m.cols(), ambient_dim, "spanning vector length mismatch");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            field,
            ambient_dim,
            basis,
        }
    }

    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| unit_vector(field, ambient_dim, i))
            .collect();
        Subspace {
            field,
            ambient_dim,
            basis,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        // Reduce v against the echelon basis.
        let mut w = v.to_vec();
        for b in &self.basis {
            let pivot = b
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis rows are nonzero");
            if !w[pivot].is_zero() {
                let factor = w[pivot].clone();
                w = sub_vectors(&w, &scale_vector(&factor, b));
            }
        }
        is_zero_vector(&w)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.field, self.ambient_dim, vectors)
    }

    /// Meet of two subspaces, from the kernel of `[U^T | -W^T]`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient_dim);
        }
        let k = self.dim();
        let mut cols: Vec<Vector> = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| b.iter().map(|x| -x).collect()));
        let system = Matrix::from_columns(self.field, self.ambient_dim, &cols);
        let vectors = system
            .nullspace()
            .basis()
            .iter()
            .map(|coeffs| self.combination(&coeffs[..k]))
            .collect();
        Subspace::span(self.field, self.ambient_dim, vectors)
    }

    /// `sum_i coeffs[i] * basis[i]`.
    pub fn combination(&self, coeffs: &[Scalar]) -> Vector {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count mismatch");
        coeffs
            .iter()
            .zip(&self.basis)
            .fold(zero_vector(self.field, self.ambient_dim), |acc, (c, b)| {
                add_vectors(&acc, &scale_vector(c, b))
            })
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in
    /// the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        // Echelon rows: the coefficient of row i is v at that row's pivot.
        Some(
            self.basis
                .iter()
                .map(|b| v[b.iter().position(|x| !x.is_zero()).expect("nonzero row")].clone())
                .collect(),
        )
    }

    /// Random element, uniform over a finite field.
    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Vector {
        let coeffs = random_vector(self.field, self.dim(), rng);
        self.combination(&coeffs)
    }

    /// Every element of the subspace over a finite field, `p^dim` of them.
    /// Returns `None` over `Q`.
    pub fn elements(&self) -> Option<impl Iterator<Item = Vector> + '_> {
        let p = self.field.order()?;
        let d = self.dim() as u32;
        let total = p.checked_pow(d)?;
        Some((0..total).map(move |mut idx| {
            let coeffs: Vector = (0..d)
                .map(|_| {
                    let x = self.field.element(idx % p);
                    idx /= p;
                    x
                })
                .collect();
            self.combination(&coeffs)
        }))
    }
}
