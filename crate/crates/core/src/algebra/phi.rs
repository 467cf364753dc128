use std::sync::Arc;

use crate::algebra::GradedAlgebraView;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::LinearMap;

/// `(φ_n^{r,t})_i : (Λ^{(n,r)} ⊗_{Λ^{(n)}} Λ^{(n,t)})_i → Λ_{ni+r+t}`.
///
/// The domain is realised as paths of length `L = ni+r+t` modulo those
/// relation windows that lie entirely inside `[0, nj+r)` or `[nj+r, L)` for
/// some `j ≤ i`; the map sends a normal word to its class in `Λ`.
pub fn phi_map<F: Field>(a: &GradedAlgebraView<F>, n: usize, r: usize, t: usize, i: usize) -> Result<LinearMap<F>> {
    if n == 0 || r == 0 || t == 0 {
        return Err(Error::Precondition("phi_map needs n, r, t >= 1".into()));
    }
    let s = a.s();
    let len = n * i + r + t;
    let cuts: Vec<usize> = (0..=i).map(|j| n * j + r).collect();
    let rule = Arc::new(move |p: usize| cuts.iter().any(|&c| p + s <= c || (p >= c && p + s <= len)));
    let mut domain = a.window_tower(rule);
    let dom_dim = domain.level(len)?.dim();
    let cod_dim = a.dim(len)?;
    let images = (0..dom_dim)
        .map(|w| {
            let word = domain.word_of(len, w)?;
            a.normal_form(&word)
        })
        .collect::<Result<Vec<_>>>()?;
    LinearMap::from_images(a.field().clone(), cod_dim, images)
}

/// Outcome of each check made by [`s_homogeneity_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneityReport {
    /// `(r, surjective)` for `(φ_s^{r,1})_0`.
    pub surjective: Vec<(usize, bool)>,
    /// `(r, bijective)` for `(φ_s^{r,1})_0`, `r < s - 1`.
    pub bijective_low: Vec<(usize, bool)>,
    /// `(n, bijective)` for `(φ_n^{1,1})_1`, `n >= s - 1`.
    pub bijective_shift: Vec<(usize, bool)>,
}

impl HomogeneityReport {
    pub fn passed(&self) -> bool {
        self.surjective.iter().chain(&self.bijective_low).chain(&self.bijective_shift).all(|(_, ok)| *ok)
    }
}

/// Checks the multiplication-map characterisation of `s`-homogeneity for all
/// maps whose target degree is at most `bound`.
pub fn s_homogeneity_witness<F: Field>(a: &GradedAlgebraView<F>, bound: usize) -> Result<HomogeneityReport> {
    let s = a.s();
    let mut report = HomogeneityReport { surjective: Vec::new(), bijective_low: Vec::new(), bijective_shift: Vec::new() };
    for r in 1..bound {
        let f = phi_map(a, s, r, 1, 0)?;
        let rank = f.rank();
        report.surjective.push((r, rank == f.codomain_dim()));
        if r + 1 < s {
            report.bijective_low.push((r, rank == f.codomain_dim() && rank == f.domain_dim()));
        }
    }
    for n in s.saturating_sub(1).max(1)..=bound.saturating_sub(2) {
        let f = phi_map(a, n, 1, 1, 1)?;
        let rank = f.rank();
        report.bijective_shift.push((n, rank == f.codomain_dim() && rank == f.domain_dim()));
    }
    Ok(report)
}
