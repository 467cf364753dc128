//! The generalized Koszul complex, its exactness, and the subspace
//! conditions that control it.

pub mod complex;
pub mod conditions;
pub mod one_relation;

pub use complex::{chi, KoszulComplex, KoszulTerm};
pub use conditions::{berger_cell, berger_conditions, extra_condition, extra_condition_range, ConditionCell, ConditionKind};
pub use one_relation::{one_relation_koszul, OneRelationClass};

use crate::algebra::GradedAlgebraView;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::SparseVec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictStatus {
    /// Every homology group checked vanished.
    SKoszulUpToBounds,
    /// A nonzero homology class was found.
    NotSKoszulCertified,
    /// A resource bound stopped the search before a conclusion.
    Inconclusive,
}

impl VerdictStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictStatus::SKoszulUpToBounds => "s_koszul_up_to_bounds",
            VerdictStatus::NotSKoszulCertified => "not_s_koszul_certified",
            VerdictStatus::Inconclusive => "inconclusive",
        }
    }
}

/// A cycle of `K_n` in internal degree `degree` that is not a boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulWitness<E> {
    pub n: usize,
    pub degree: usize,
    pub vector: SparseVec<E>,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulVerdict<E> {
    pub status: VerdictStatus,
    pub homological_bound: usize,
    pub degree_bound: usize,
    pub witness: Option<KoszulWitness<E>>,
    /// Why the verdict is inconclusive.
    pub reason: Option<String>,
}

/// Checks homology of the augmented Koszul complex at `K_n` for `n <= h` in
/// internal degrees `1..=max_degree`.
pub fn s_koszul_verdict<F: Field>(
    a: &GradedAlgebraView<F>,
    h: usize,
    max_degree: usize,
) -> Result<KoszulVerdict<F::Elem>> {
    if h < 2 || max_degree < 2 * a.s() {
        return Err(Error::Precondition(format!(
            "verdict needs H >= 2 and N >= 2s (got H = {h}, N = {max_degree}, s = {})",
            a.s()
        )));
    }
    let mut verdict = KoszulVerdict {
        status: VerdictStatus::SKoszulUpToBounds,
        homological_bound: h,
        degree_bound: max_degree,
        witness: None,
        reason: None,
    };
    let mut complex = KoszulComplex::new(a);
    match search_defect(&mut complex, h, max_degree) {
        Ok(None) => Ok(verdict),
        Ok(Some(w)) => {
            verdict.status = VerdictStatus::NotSKoszulCertified;
            verdict.witness = Some(w);
            Ok(verdict)
        }
        Err(Error::ResourceBound { dim, cap }) => {
            verdict.status = VerdictStatus::Inconclusive;
            verdict.reason = Some(format!("dimension {dim} exceeds cap {cap}"));
            Ok(verdict)
        }
        Err(e) => Err(e),
    }
}

fn search_defect<F: Field>(
    complex: &mut KoszulComplex<'_, F>,
    h: usize,
    max_degree: usize,
) -> Result<Option<KoszulWitness<F::Elem>>> {
    for n in 0..=h {
        if complex.koszul_term(n, 0)?.corelation_dim == 0 {
            // R_{χ(n)} = 0 forces every later term to vanish as well.
            break;
        }
        complex.fill_ranks(n, max_degree)?;
        for d in 1..=max_degree {
            if complex.defect(n, d)? > 0 {
                let vector = complex.nontrivial_cycle(n, d)?.expect("positive defect has a witness");
                let description = complex.describe(n, d, &vector)?;
                return Ok(Some(KoszulWitness { n, degree: d, vector, description }));
            }
        }
    }
    Ok(None)
}

/// Homology dimensions at `K_n` for internal degrees `0..=max_degree`
/// (degree zero reported as 0 since the augmentation absorbs it).
pub fn exactness_defect<F: Field>(a: &GradedAlgebraView<F>, n: usize, max_degree: usize) -> Result<Vec<usize>> {
    let mut complex = KoszulComplex::new(a);
    if n > 0 {
        complex.fill_ranks(n - 1, max_degree)?;
    }
    complex.fill_ranks(n, max_degree)?;
    let mut out = vec![0];
    for d in 1..=max_degree {
        out.push(complex.defect(n, d)?);
    }
    Ok(out)
}
