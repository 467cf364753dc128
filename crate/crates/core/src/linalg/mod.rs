//! Exact linear algebra over `Q` and prime fields.

pub mod matrix;
pub mod sparse;
pub mod subspace;

pub use matrix::{ExactMatrix, LinearMap};
pub use sparse::{Echelon, SparseVec, Workspace};
pub use subspace::{kernel_image, Subspace};

use crate::error::Result;
use crate::field::Field;

pub fn rref<F: Field>(m: &ExactMatrix<F>) -> ExactMatrix<F> {
    m.rref()
}

pub fn subspace_sum<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
    a.sum(b)
}

pub fn subspace_intersect<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
    a.intersect(b)
}

pub fn perp<F: Field>(s: &Subspace<F>) -> Subspace<F> {
    s.perp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn mat(rows: &[&[i64]]) -> ExactMatrix<Rationals> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        ExactMatrix::from_dense_rows(Rationals, cols, rows).unwrap()
    }

    /// Index of a word over {x, y} (x = 0) as a binary number, first letter most significant.
    fn word(w: &str) -> usize {
        w.bytes().fold(0, |acc, b| 2 * acc + usize::from(b == b'y'))
    }

    fn words(ws: &[&str], n: usize) -> Subspace<Rationals> {
        let vs: Vec<_> = ws.iter().map(|w| vec![(word(w), q(1))]).collect();
        Subspace::span(Rationals, 1 << n, &vs).unwrap()
    }

    /// `S ⊗ U^left` and `U^right ⊗ S` style padding of a word-spanned subspace.
    fn pad(s: &Subspace<Rationals>, n: usize, left: usize, right: usize) -> Subspace<Rationals> {
        let mut vs = Vec::new();
        for l in 0..1usize << left {
            for r in 0..1usize << right {
                for b in s.basis() {
                    let mut v: Vec<_> =
                        b.iter().map(|(c, x)| (((l << n) | c) << right | r, x.clone())).collect();
                    v.sort_by_key(|(c, _)| *c);
                    vs.push(v);
                }
            }
        }
        Subspace::span(Rationals, 1 << (n + left + right), &vs).unwrap()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(rref(&mat(&[&[2, 4], &[1, 2]])), mat(&[&[1, 2]]));
        let id = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(rref(&id), id);
        assert_eq!(rref(&mat(&[&[0, 1], &[1, 0]])), mat(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        use crate::field::Scalar;
        let rows = vec![vec![Scalar::Rational(q(1)), Scalar::Prime { value: 1, p: 7 }]];
        let err = ExactMatrix::from_scalar_rows(Rationals, 2, &rows).unwrap_err();
        assert!(matches!(err, crate::Error::FieldMismatch { .. }));
    }

    #[test]
    fn kernel_image_examples() {
        let f = LinearMap::from_column_matrix(&mat(&[&[1, 1]]));
        let (k, i) = kernel_image(&f);
        assert_eq!(k, Subspace::span(Rationals, 2, &[vec![(0, q(1)), (1, q(-1))]]).unwrap());
        assert_eq!(i, Subspace::full(Rationals, 1));

        let z = LinearMap::zero(Rationals, 3, 2);
        let (k, i) = kernel_image(&z);
        assert_eq!((k.dim(), i.dim()), (3, 0));

        // U^2 -> Λ_2 for k<x,y>/(xy, yx): xx and yy survive.
        let proj = LinearMap::from_images(
            Rationals,
            2,
            vec![vec![(0, q(1))], vec![], vec![], vec![(1, q(1))]],
        )
        .unwrap();
        let (k, _) = kernel_image(&proj);
        assert_eq!(k, words(&["xy", "yx"], 2));
    }

    #[test]
    fn sum_examples() {
        let r = words(&["xy", "yx"], 2);
        assert_eq!(r.sum(&r).unwrap(), r);
        assert_eq!(r.sum(&Subspace::zero(Rationals, 4)).unwrap(), r);
        let s = pad(&r, 2, 0, 1).sum(&pad(&r, 2, 1, 0)).unwrap();
        assert_eq!(s.dim(), 6);
        let bad = r.sum(&Subspace::zero(Rationals, 8)).unwrap_err();
        assert!(matches!(bad, crate::Error::AmbientMismatch { .. }));
    }

    #[test]
    fn intersect_examples() {
        let r = words(&["xy", "yx"], 2);
        assert_eq!(r.intersect(&r).unwrap(), r);
        let i = pad(&r, 2, 0, 1).intersect(&pad(&r, 2, 1, 0)).unwrap();
        assert_eq!(i, words(&["xyx", "yxy"], 3));
        let c = words(&["xyx"], 3);
        assert!(pad(&c, 3, 0, 1).intersect(&pad(&c, 3, 1, 0)).unwrap().is_zero());
    }

    #[test]
    fn perp_examples() {
        assert_eq!(Subspace::zero(Rationals, 4).perp(), Subspace::full(Rationals, 4));
        assert!(Subspace::full(Rationals, 4).perp().is_zero());
        assert_eq!(words(&["xy", "yx"], 2).perp(), words(&["xx", "yy"], 2));
    }

    #[test]
    fn storage_choice_is_invisible() {
        let f = PrimeField::new(7).unwrap();
        let dense = ExactMatrix::from_dense_rows(f, 3, vec![vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        assert!(!dense.is_sparse());
        let mut rows = vec![vec![(0, 1), (1, 2), (2, 3)]];
        rows.push(vec![(5000, 1)]);
        let wide = ExactMatrix::from_sparse_rows(f, 5001, rows).unwrap();
        assert!(wide.is_sparse());
        assert_eq!(dense.rref().row(0), wide.rref().row(0));
        assert_eq!(dense.rank(), 1);
    }
}
