//! Subspace conditions inside tensor powers that govern exactness of the
//! Koszul complex.

use crate::algebra::GradedAlgebraView;
use crate::error::Result;
use crate::field::Field;
use crate::linalg::Subspace;
use crate::quiver::tensor_subspaces;

/// Which family of identities [`berger_conditions`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionKind {
    Main,
    Distributivity,
}

/// One `(n, k)` cell: the first identity lives in `U^{⊗(ns+1+k)}`, the second
/// in `U^{⊗((n+1)s+k)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCell {
    pub n: usize,
    pub k: usize,
    pub first: bool,
    pub second: bool,
}

impl ConditionCell {
    pub fn holds(&self) -> bool {
        self.first && self.second
    }
}

struct Spaces<'a, F: Field> {
    a: &'a GradedAlgebraView<F>,
}

impl<F: Field> Spaces<'_, F> {
    fn full(&self, n: usize) -> Result<Subspace<F>> {
        let dim = self.a.quiver().path_count(n);
        self.a.limits().check(dim)?;
        Ok(Subspace::full(self.a.field().clone(), dim))
    }

    fn zero(&self, n: usize) -> Subspace<F> {
        Subspace::zero(self.a.field().clone(), self.a.quiver().path_count(n))
    }

    fn r(&self, n: usize) -> Result<Subspace<F>> {
        Ok((*self.a.corelation_component(n)?).clone())
    }

    fn i(&self, n: usize) -> Result<Subspace<F>> {
        self.a.ideal_component(n)
    }

    fn t(&self, x: &Subspace<F>, a: usize, y: &Subspace<F>, b: usize) -> Subspace<F> {
        tensor_subspaces(self.a.quiver(), x, a, y, b)
    }

    /// `X ⊗ U^{⊗b}`, zero when `b < 0`.
    fn pad_right(&self, x: &Subspace<F>, a: usize, b: isize) -> Result<Subspace<F>> {
        if b < 0 {
            return Ok(self.zero((a as isize + b) as usize));
        }
        Ok(self.t(x, a, &self.full(b as usize)?, b as usize))
    }

    /// `U^{⊗a} ⊗ X`.
    fn pad_left(&self, a: usize, x: &Subspace<F>, b: usize) -> Result<Subspace<F>> {
        Ok(self.t(&self.full(a)?, a, x, b))
    }
}

/// `I_s ⊗ U^{⊗(s-1)} ∩ U ⊗ I_{2s-2} = R_{s+1} ⊗ U^{⊗(s-2)}` inside `U^{⊗(2s-1)}`.
pub fn extra_condition<F: Field>(a: &GradedAlgebraView<F>) -> Result<bool> {
    let s = a.s();
    let sp = Spaces { a };
    let lhs = sp.pad_right(&sp.i(s)?, s, s as isize - 1)?.intersect(&sp.pad_left(1, &sp.i(2 * s - 2)?, 2 * s - 2)?)?;
    let rhs = sp.pad_right(&sp.r(s + 1)?, s + 1, s as isize - 2)?;
    Ok(lhs == rhs)
}

/// `I_s ⊗ U^{⊗(n-s)} ∩ U ⊗ I_{n-1} = R_{s+1} ⊗ U^{⊗(n-s-1)}` for every `n` in
/// `s+1..=2s-1`, each evaluated on its own.
pub fn extra_condition_range<F: Field>(a: &GradedAlgebraView<F>) -> Result<Vec<(usize, bool)>> {
    let s = a.s();
    let sp = Spaces { a };
    let mut out = Vec::new();
    for n in s + 1..=2 * s - 1 {
        let lhs = sp.pad_right(&sp.i(s)?, s, (n - s) as isize)?.intersect(&sp.pad_left(1, &sp.i(n - 1)?, n - 1)?)?;
        let rhs = sp.pad_right(&sp.r(s + 1)?, s + 1, (n - s - 1) as isize)?;
        out.push((n, lhs == rhs));
    }
    Ok(out)
}

/// Evaluates the main or distributivity identities for all `n <= n_max`,
/// `k <= k_max`.
pub fn berger_conditions<F: Field>(
    a: &GradedAlgebraView<F>,
    kind: ConditionKind,
    n_max: usize,
    k_max: usize,
) -> Result<Vec<ConditionCell>> {
    let mut cells = Vec::new();
    for n in 0..=n_max {
        for k in 0..=k_max {
            cells.push(berger_cell(a, kind, n, k)?);
        }
    }
    Ok(cells)
}

pub fn berger_cell<F: Field>(a: &GradedAlgebraView<F>, kind: ConditionKind, n: usize, k: usize) -> Result<ConditionCell> {
    let s = a.s();
    let sp = Spaces { a };
    let (k_i, s_i) = (k as isize, s as isize);

    // First identity, inside U^{ns+1+k}.
    let r1 = sp.r(n * s + 1)?;
    let base1 = sp.pad_right(&r1, n * s + 1, k_i)?;
    let lhs1 = base1.intersect(&sp.pad_left(n * s, &sp.i(k + 1)?, k + 1)?)?;
    let tail1 = sp.t(&r1, n * s + 1, &sp.i(k)?, k);
    let rhs1 = match kind {
        ConditionKind::Main => sp.pad_right(&sp.r((n + 1) * s)?, (n + 1) * s, k_i - s_i + 1)?.sum(&tail1)?,
        ConditionKind::Distributivity => {
            let inner = if k + 1 >= s {
                let is_pad = sp.pad_right(&sp.i(s)?, s, k_i - s_i + 1)?;
                base1.intersect(&sp.pad_left(n * s, &is_pad, k + 1)?)?
            } else {
                sp.zero(n * s + 1 + k)
            };
            inner.sum(&tail1)?
        }
    };

    // Second identity, inside U^{(n+1)s+k}.
    let r2 = sp.r((n + 1) * s)?;
    let base2 = sp.pad_right(&r2, (n + 1) * s, k_i)?;
    let lhs2 = base2.intersect(&sp.pad_left(n * s + 1, &sp.i(k + s - 1)?, k + s - 1)?)?;
    let tail2 = sp.t(&r2, (n + 1) * s, &sp.i(k)?, k);
    let rhs2 = match kind {
        ConditionKind::Main => sp.pad_right(&sp.r((n + 1) * s + 1)?, (n + 1) * s + 1, k_i - 1)?.sum(&tail2)?,
        ConditionKind::Distributivity => {
            let inner = if k + 1 >= s {
                let ip = sp.pad_right(&sp.i(2 * s - 2)?, 2 * s - 2, k_i - s_i + 1)?;
                base2.intersect(&sp.pad_left(n * s + 1, &ip, k + s - 1)?)?
            } else {
                sp.zero((n + 1) * s + k)
            };
            inner.sum(&tail2)?
        }
    };
    Ok(ConditionCell { n, k, first: lhs1 == rhs1, second: lhs2 == rhs2 })
}
