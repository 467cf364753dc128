use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::matrix::{ExactMatrix, LinearMap};
use crate::linalg::sparse::{Echelon, SparseVec};

/// A subspace of `k^n`, held by its reduced row echelon basis. Two subspaces
/// are equal exactly when their bases are identical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient_dim: usize,
    basis: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, basis: Vec::new() }
    }

    pub fn full(field: F, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| vec![(i, field.one())]).collect();
        Subspace { field, ambient_dim, basis }
    }

    /// The span of arbitrary sparse vectors.
    pub fn span(field: F, ambient_dim: usize, vectors: &[SparseVec<F::Elem>]) -> Result<Self> {
        let mut e = Echelon::new(field.clone(), ambient_dim);
        for v in vectors {
            if v.last().is_some_and(|(c, _)| *c >= ambient_dim) {
                return Err(Error::ShapeMismatch(format!("vector index out of ambient dimension {ambient_dim}")));
            }
            e.insert(v);
        }
        Ok(Self::from_echelon(e))
    }

    pub fn from_echelon(e: Echelon<F>) -> Self {
        let field = e.field().clone();
        let ambient_dim = e.ncols();
        Subspace { field, ambient_dim, basis: e.into_rref() }
    }

    /// Wraps rows already known to be in reduced row echelon form.
    pub(crate) fn from_rref_unchecked(field: F, ambient_dim: usize, basis: Vec<SparseVec<F::Elem>>) -> Self {
        debug_assert!(basis.windows(2).all(|w| w[0][0].0 < w[1][0].0));
        Subspace { field, ambient_dim, basis }
    }

    pub fn row_space(m: &ExactMatrix<F>) -> Self {
        Self::span(m.field().clone(), m.ncols(), &m.sparse_rows()).expect("rows fit")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec<F::Elem>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> ExactMatrix<F> {
        ExactMatrix::from_sparse_rows(self.field.clone(), self.ambient_dim, self.basis.clone()).expect("valid")
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r[0].0).collect()
    }

    pub fn echelon(&self) -> Echelon<F> {
        let mut e = Echelon::new(self.field.clone(), self.ambient_dim);
        for r in &self.basis {
            e.insert(r);
        }
        e
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.echelon().reduce(v).is_empty()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        let mut e = other.echelon();
        self.basis.iter().all(|r| e.reduce(r).is_empty())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { expected: self.field.kind(), found: other.field.kind() });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch { left: self.ambient_dim, right: other.ambient_dim });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut e = self.echelon();
        for r in &other.basis {
            e.insert(r);
        }
        Ok(Self::from_echelon(e))
    }

    /// Intersection through the relations among the remainders of `other`'s
    /// basis modulo `self`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut a = self.echelon();
        let mut rem = Echelon::with_tracking(self.field.clone(), self.ambient_dim);
        for r in &other.basis {
            let reduced = a.reduce(r);
            rem.insert(&reduced);
        }
        let mut out = Echelon::new(self.field.clone(), self.ambient_dim);
        let mut ws = crate::linalg::sparse::Workspace::new(self.field.clone(), self.ambient_dim);
        for k in rem.kernel() {
            for (i, c) in k {
                ws.add_scaled(&other.basis[*i], c);
            }
            out.insert(&ws.drain());
        }
        Ok(Self::from_echelon(out))
    }

    /// The annihilator under the standard pairing, expressed in the dual
    /// coordinate basis.
    pub fn perp(&self) -> Self {
        let mut is_pivot = vec![false; self.ambient_dim];
        for r in &self.basis {
            is_pivot[r[0].0] = true;
        }
        let mut buckets: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.ambient_dim];
        for r in &self.basis {
            let p = r[0].0;
            for (q, x) in &r[1..] {
                buckets[*q].push((p, self.field.neg(x)));
            }
        }
        let mut e = Echelon::new(self.field.clone(), self.ambient_dim);
        for q in 0..self.ambient_dim {
            if is_pivot[q] {
                continue;
            }
            let mut v = std::mem::take(&mut buckets[q]);
            v.push((q, self.field.one()));
            v.sort_unstable_by_key(|(c, _)| *c);
            e.insert(&v);
        }
        Self::from_echelon(e)
    }

    /// Image of the subspace under a map given on basis vectors.
    pub fn image_under(&self, f: &LinearMap<F>) -> Result<Self> {
        if f.domain_dim() != self.ambient_dim {
            return Err(Error::AmbientMismatch { left: f.domain_dim(), right: self.ambient_dim });
        }
        let images: Vec<_> = self.basis.iter().map(|r| f.apply(r)).collect();
        Self::span(self.field.clone(), f.codomain_dim(), &images)
    }
}

/// Kernel (in the domain) and image (in the codomain) of a linear map.
pub fn kernel_image<F: Field>(f: &LinearMap<F>) -> (Subspace<F>, Subspace<F>) {
    let field = f.field().clone();
    let mut e = Echelon::with_tracking(field.clone(), f.codomain_dim());
    for i in 0..f.domain_dim() {
        e.insert(&f.image_of(i));
    }
    let kernel = Subspace::span(field, f.domain_dim(), e.kernel()).expect("fits");
    (kernel, Subspace::from_echelon(e))
}
