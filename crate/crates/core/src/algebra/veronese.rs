use crate::algebra::GradedAlgebraView;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::LinearMap;

/// Components `Λ_{ri+t}` for `i = 0..=N` with the left and right actions of
/// the degree-one part `Λ_r` of the Veronese ring.
#[derive(Debug, Clone)]
pub struct VeroneseData<F: Field> {
    pub r: usize,
    pub t: usize,
    pub dims: Vec<usize>,
    /// `left[i][g]`: `x ↦ g·x` from component `i` to `i + 1`, for basis `g` of `Λ_r`.
    pub left: Vec<Vec<LinearMap<F>>>,
    /// `right[i][g]`: `x ↦ x·g`.
    pub right: Vec<Vec<LinearMap<F>>>,
}

fn build<F: Field>(a: &GradedAlgebraView<F>, r: usize, t: usize, n: usize) -> Result<VeroneseData<F>> {
    if r == 0 {
        return Err(Error::Precondition("Veronese index r must be at least 1".into()));
    }
    let field = a.field().clone();
    let dims = (0..=n).map(|i| a.dim(r * i + t)).collect::<Result<Vec<_>>>()?;
    let gens = a.dim(r)?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..n {
        let (d, e) = (r * i + t, r * (i + 1) + t);
        let mut li = Vec::with_capacity(gens);
        let mut ri = Vec::with_capacity(gens);
        for g in 0..gens {
            let gv = vec![(g, field.one())];
            let mut limg = Vec::with_capacity(dims[i]);
            let mut rimg = Vec::with_capacity(dims[i]);
            for x in 0..dims[i] {
                let xv = vec![(x, field.one())];
                limg.push(a.multiply(r, &gv, d, &xv)?);
                rimg.push(a.multiply(d, &xv, r, &gv)?);
            }
            li.push(LinearMap::from_images(field.clone(), a.dim(e)?, limg)?);
            ri.push(LinearMap::from_images(field.clone(), a.dim(e)?, rimg)?);
        }
        left.push(li);
        right.push(ri);
    }
    Ok(VeroneseData { r, t, dims, left, right })
}

/// The `r`-Veronese ring `Λ^{(r)}` up to component `n`.
pub fn veronese_ring<F: Field>(a: &GradedAlgebraView<F>, r: usize, n: usize) -> Result<VeroneseData<F>> {
    build(a, r, 0, n)
}

/// The `(r, t)`-Veronese bimodule `Λ^{(r,t)}` up to component `n`.
pub fn veronese_bimodule<F: Field>(a: &GradedAlgebraView<F>, r: usize, t: usize, n: usize) -> Result<VeroneseData<F>> {
    if t == 0 {
        return Err(Error::Precondition("Veronese bimodule shift t must be at least 1".into()));
    }
    build(a, r, t, n)
}
