//! Classification of one-relation algebras `k⟨x_1..x_m⟩/(f)`.

use crate::algebra::GradedAlgebraView;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::koszul::{s_koszul_verdict, KoszulVerdict};
use crate::quiver::RelPresentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OneRelationClass<E> {
    /// `f` spans the same line as `g^s` for the linear form `g` (coefficients
    /// over the arrows).
    PowerCase { g: Vec<E> },
    /// `f` is a monomial without a proper border.
    NoOverlap,
    /// `f = g·h1 = h2·g` with `0 < deg g < s`; `f ⊗ h1` is a nonzero cycle in
    /// the second term of the Koszul complex.
    NotKoszul { g: Vec<usize>, h1: Vec<usize> },
    /// Neither shortcut applies; the complex decides.
    Verdict(KoszulVerdict<E>),
}

impl<E> OneRelationClass<E> {
    pub fn label(&self) -> &'static str {
        match self {
            OneRelationClass::PowerCase { .. } => "koszul_power_case",
            OneRelationClass::NoOverlap => "koszul_no_overlap",
            OneRelationClass::NotKoszul { .. } => "not_koszul",
            OneRelationClass::Verdict(_) => "verdict",
        }
    }
}

/// Longest proper border of a word: the longest `g` with `0 < |g| < |f|`
/// that is both a prefix and a suffix.
pub fn longest_border(f: &[usize]) -> Option<usize> {
    (1..f.len()).rev().find(|&l| f[..l] == f[f.len() - l..])
}

/// Classifies `Λ = k⟨x_1..x_m⟩/(f)`; the fallback verdict uses bounds `h`
/// and `max_degree`.
pub fn one_relation_koszul<F: Field>(
    p: &RelPresentation<F>,
    h: usize,
    max_degree: usize,
) -> Result<OneRelationClass<F::Elem>> {
    let q = p.quiver();
    if q.vertex_count() != 1 {
        return Err(Error::NotOneVertex);
    }
    let rel = p.relations();
    match rel.dim() {
        0 => return Err(Error::ZeroRelation),
        1 => {}
        d => return Err(Error::Precondition(format!("expected one relation, found {d}"))),
    }
    let field = p.field().clone();
    let s = p.s();
    let m = q.arrow_count();
    let basis = q.path_basis(s);
    let f = &rel.basis()[0];
    let coef = |w: &[usize]| -> F::Elem {
        let idx = basis.rank(w).expect("word");
        f.binary_search_by_key(&idx, |(c, _)| *c).map(|k| f[k].1.clone()).unwrap_or_else(|_| field.zero())
    };

    if let Some(g) = power_root(&field, s, m, &coef, f.len()) {
        return Ok(OneRelationClass::PowerCase { g });
    }
    if f.len() == 1 {
        let word = basis.word(f[0].0);
        return Ok(match longest_border(&word) {
            Some(l) => OneRelationClass::NotKoszul { g: word[..l].to_vec(), h1: word[l..].to_vec() },
            None => OneRelationClass::NoOverlap,
        });
    }
    let a = GradedAlgebraView::with_limits(p.clone(), Default::default());
    Ok(OneRelationClass::Verdict(s_koszul_verdict(&a, h, max_degree)?))
}

/// A linear form `g` with `f ∈ k·g^s`, found by normalising one coordinate.
fn power_root<F: Field>(
    field: &F,
    s: usize,
    m: usize,
    coef: &dyn Fn(&[usize]) -> F::Elem,
    support: usize,
) -> Option<Vec<F::Elem>> {
    let i = (0..m).find(|&i| !field.is_zero(&coef(&vec![i; s])))?;
    let lambda = coef(&vec![i; s]);
    let g: Vec<F::Elem> = (0..m)
        .map(|j| {
            let mut w = vec![i; s];
            w[s - 1] = j;
            field.div(&coef(&w), &lambda).expect("nonzero")
        })
        .collect();
    // Compare f with λ g^s on every word.
    let mut nonzero = 0;
    let mut word = vec![0usize; s];
    loop {
        let mut expected = lambda.clone();
        for &x in &word {
            expected = field.mul(&expected, &g[x]);
        }
        if coef(&word) != expected {
            return None;
        }
        if !field.is_zero(&expected) {
            nonzero += 1;
        }
        let mut k = s;
        loop {
            if k == 0 {
                return (nonzero == support).then_some(g);
            }
            k -= 1;
            word[k] += 1;
            if word[k] < m {
                break;
            }
            word[k] = 0;
        }
    }
}
