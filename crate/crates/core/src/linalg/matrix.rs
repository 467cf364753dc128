use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::sparse::{Echelon, SparseVec};

/// Above this many columns storage is always sparse.
pub const SPARSE_COLUMN_THRESHOLD: usize = 4096;
/// Below this fraction of nonzero entries storage is sparse.
pub const SPARSE_DENSITY_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone)]
enum Storage<E> {
    Dense(Vec<E>),
    Sparse(Vec<SparseVec<E>>),
}

/// A matrix over an exact field. Storage is picked from the shape and
/// density; no observable result depends on the choice.
#[derive(Clone)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    storage: Storage<F::Elem>,
}

fn prefers_sparse(rows: usize, cols: usize, nnz: usize) -> bool {
    if cols > SPARSE_COLUMN_THRESHOLD {
        return true;
    }
    let cells = rows * cols;
    cells > 0 && (nnz as f64) < SPARSE_DENSITY_THRESHOLD * cells as f64
}

impl<F: Field> ExactMatrix<F> {
    /// Builds a matrix from sparse rows, choosing the storage.
    pub fn from_sparse_rows(field: F, cols: usize, rows: Vec<SparseVec<F::Elem>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            let sorted = row.windows(2).all(|w| w[0].0 < w[1].0);
            let in_range = row.last().is_none_or(|(c, _)| *c < cols);
            if !sorted || !in_range || row.iter().any(|(_, x)| field.is_zero(x)) {
                return Err(Error::ShapeMismatch(format!("row {i} is not a valid sparse row over {cols} columns")));
            }
        }
        let nnz = rows.iter().map(Vec::len).sum();
        let nrows = rows.len();
        let storage = if prefers_sparse(nrows, cols, nnz) {
            Storage::Sparse(rows)
        } else {
            let mut dense = vec![field.zero(); nrows * cols];
            for (i, row) in rows.into_iter().enumerate() {
                for (j, x) in row {
                    dense[i * cols + j] = x;
                }
            }
            Storage::Dense(dense)
        };
        Ok(ExactMatrix { field, rows: nrows, cols, storage })
    }

    pub fn from_dense_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let mut sparse = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            sparse.push(row.into_iter().enumerate().filter(|(_, x)| !field.is_zero(x)).collect());
        }
        Self::from_sparse_rows(field, cols, sparse)
    }

    /// Builds a matrix from tagged scalars; every entry must belong to `field`.
    pub fn from_scalar_rows(field: F, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        let converted = rows
            .iter()
            .map(|row| row.iter().map(|s| field.from_scalar(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_dense_rows(field, cols, converted)
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Self::from_sparse_rows(field, cols, vec![Vec::new(); rows]).expect("valid shape")
    }

    pub fn identity(field: F, n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, field.one())]).collect();
        Self::from_sparse_rows(field, n, rows).expect("valid shape")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.storage {
            Storage::Dense(d) => d[i * self.cols + j].clone(),
            Storage::Sparse(rows) => match rows[i].binary_search_by_key(&j, |(c, _)| *c) {
                Ok(k) => rows[i][k].1.clone(),
                Err(_) => self.field.zero(),
            },
        }
    }

    pub fn row(&self, i: usize) -> SparseVec<F::Elem> {
        match &self.storage {
            Storage::Dense(d) => d[i * self.cols..(i + 1) * self.cols]
                .iter()
                .enumerate()
                .filter(|(_, x)| !self.field.is_zero(x))
                .map(|(j, x)| (j, x.clone()))
                .collect(),
            Storage::Sparse(rows) => rows[i].clone(),
        }
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn to_scalars(&self) -> Vec<Vec<Scalar>> {
        self.to_dense()
            .iter()
            .map(|row| row.iter().map(|x| self.field.to_scalar(x)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for (j, x) in self.row(i) {
                cols[j].push((i, x));
            }
        }
        Self::from_sparse_rows(self.field.clone(), self.rows, cols).expect("valid shape")
    }

    /// Ordinary matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { expected: self.field.kind(), found: other.field.kind() });
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let other_rows = other.sparse_rows();
        let mut ws = crate::linalg::sparse::Workspace::new(self.field.clone(), other.cols);
        let rows = (0..self.rows)
            .map(|i| {
                for (k, x) in self.row(i) {
                    ws.add_scaled(&other_rows[k], &x);
                }
                ws.drain()
            })
            .collect();
        Self::from_sparse_rows(self.field.clone(), other.cols, rows)
    }

    /// The reduced row echelon form with zero rows removed.
    pub fn rref(&self) -> Self {
        let mut e = Echelon::new(self.field.clone(), self.cols);
        for i in 0..self.rows {
            e.insert(&self.row(i));
        }
        Self::from_sparse_rows(self.field.clone(), self.cols, e.into_rref()).expect("valid shape")
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field.clone(), self.cols);
        for i in 0..self.rows {
            e.insert(&self.row(i));
        }
        e.rank()
    }
}

impl<F: Field> PartialEq for ExactMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|i| self.row(i) == other.row(i))
    }
}

impl<F: Field> Eq for ExactMatrix<F> {}

impl<F: Field> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix[{}x{} over {}]", self.rows, self.cols, self.field.kind())?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|x| self.field.format_elem(x)).collect();
            write!(f, "\n  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A linear map stored by the images of the domain basis vectors: row `i`
/// of the matrix is the image of `e_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap<F: Field> {
    matrix: ExactMatrix<F>,
}

impl<F: Field> LinearMap<F> {
    pub fn from_images(field: F, codomain_dim: usize, images: Vec<SparseVec<F::Elem>>) -> Result<Self> {
        Ok(LinearMap { matrix: ExactMatrix::from_sparse_rows(field, codomain_dim, images)? })
    }

    /// Wraps a matrix acting on column vectors (`codomain_dim x domain_dim`).
    pub fn from_column_matrix(m: &ExactMatrix<F>) -> Self {
        LinearMap { matrix: m.transpose() }
    }

    pub fn zero(field: F, domain_dim: usize, codomain_dim: usize) -> Self {
        LinearMap { matrix: ExactMatrix::zeros(field, domain_dim, codomain_dim) }
    }

    pub fn field(&self) -> &F {
        self.matrix.field()
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn image_of(&self, i: usize) -> SparseVec<F::Elem> {
        self.matrix.row(i)
    }

    /// The matrix acting on column vectors.
    pub fn column_matrix(&self) -> ExactMatrix<F> {
        self.matrix.transpose()
    }

    pub fn apply(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut ws = crate::linalg::sparse::Workspace::new(self.field().clone(), self.codomain_dim());
        for (i, x) in v {
            ws.add_scaled(&self.matrix.row(*i), x);
        }
        ws.drain()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        Ok(LinearMap { matrix: self.matrix.mul(&other.matrix)? })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}
