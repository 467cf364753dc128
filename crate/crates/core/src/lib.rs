//! Computations with s-homogeneous graded algebras over quivers: presentations,
//! dual algebras, Koszul complexes, s-homogeneous triples and Hilbert series.

pub mod error;
pub mod field;
pub mod linalg;
pub mod quiver;

pub use error::{Error, Result};
pub mod algebra;
pub mod koszul;
pub mod triples;
pub mod hilbert;

/// Caps on the size of any single basis the library will build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: usize,
}

impl Limits {
    pub const DEFAULT_MAX_DIM: usize = 2_000_000;

    pub fn check(&self, dim: usize) -> Result<()> {
        if dim > self.max_dim {
            return Err(Error::ResourceBound { dim, cap: self.max_dim });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: Self::DEFAULT_MAX_DIM }
    }
}
