//! Degree components of `Λ = T(U)/⟨R⟩`, the ideal and corelation components,
//! the dual algebra, Veronese data and the multiplication maps `φ`.

pub mod phi;
pub mod tower;
pub mod veronese;

use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::field::Field;
use crate::linalg::{LinearMap, SparseVec, Subspace};
use crate::quiver::{pad_left, pad_right, shriek_presentation, Quiver, RelPresentation};
use crate::Limits;

pub use phi::{phi_map, s_homogeneity_witness, HomogeneityReport};
pub use tower::{Level, Tower, WindowRule};
pub use veronese::{veronese_bimodule, veronese_ring, VeroneseData};

/// Lazily computed degree components of a presented algebra. Components are
/// filled in increasing degree under a lock, so concurrent readers only ever
/// observe complete levels.
pub struct GradedAlgebraView<F: Field> {
    presentation: RelPresentation<F>,
    limits: Limits,
    tower: Mutex<Tower<F>>,
    corelations: Mutex<Vec<Arc<Subspace<F>>>>,
}

/// Relation rows of a presentation as `(coefficient, word)` terms.
pub fn relation_terms<F: Field>(p: &RelPresentation<F>) -> Vec<Vec<(F::Elem, Vec<usize>)>> {
    let basis = p.quiver().path_basis(p.s());
    p.relations()
        .basis()
        .iter()
        .map(|row| row.iter().map(|(c, x)| (x.clone(), basis.word(*c))).collect())
        .collect()
}

impl<F: Field> GradedAlgebraView<F> {
    pub fn new(presentation: RelPresentation<F>) -> Self {
        Self::with_limits(presentation, Limits::default())
    }

    pub fn with_limits(presentation: RelPresentation<F>, limits: Limits) -> Self {
        let tower = Tower::new(
            presentation.field().clone(),
            presentation.shared_quiver(),
            presentation.s(),
            relation_terms(&presentation),
            None,
            limits,
        );
        GradedAlgebraView { presentation, limits, tower: Mutex::new(tower), corelations: Mutex::new(Vec::new()) }
    }

    pub fn presentation(&self) -> &RelPresentation<F> {
        &self.presentation
    }

    pub fn field(&self) -> &F {
        self.presentation.field()
    }

    pub fn quiver(&self) -> &Quiver {
        self.presentation.quiver()
    }

    pub fn s(&self) -> usize {
        self.presentation.s()
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// A fresh tower over the same relations with only some windows imposed.
    pub fn window_tower(&self, rule: WindowRule) -> Tower<F> {
        Tower::new(
            self.field().clone(),
            self.presentation.shared_quiver(),
            self.s(),
            relation_terms(&self.presentation),
            Some(rule),
            self.limits,
        )
    }

    /// Runs `f` with exclusive access to the normal-form tower.
    pub fn with_tower<T>(&self, f: impl FnOnce(&mut Tower<F>) -> Result<T>) -> Result<T> {
        let mut t = self.tower.lock().expect("tower lock");
        f(&mut t)
    }

    pub fn level(&self, n: usize) -> Result<Arc<Level<F::Elem>>> {
        self.with_tower(|t| t.level(n))
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.level(n)?.dim())
    }

    pub fn dims(&self, upto: usize) -> Result<Vec<usize>> {
        (0..=upto).map(|n| self.dim(n)).collect()
    }

    /// Normal form of a path of positive length.
    pub fn normal_form(&self, word: &[usize]) -> Result<SparseVec<F::Elem>> {
        self.with_tower(|t| t.normal_form(word))
    }

    pub fn normal_word(&self, n: usize, i: usize) -> Result<Vec<usize>> {
        self.with_tower(|t| t.word_of(n, i))
    }

    /// Product of an element of `Λ_n` and an element of `Λ_m`.
    pub fn multiply(
        &self,
        n: usize,
        u: &[(usize, F::Elem)],
        m: usize,
        v: &[(usize, F::Elem)],
    ) -> Result<SparseVec<F::Elem>> {
        let field = self.field().clone();
        self.with_tower(|t| {
            if m == 0 {
                let lvl = t.level(n)?;
                let terms = u
                    .iter()
                    .flat_map(|(i, x)| {
                        v.iter().filter(|(e, _)| lvl.tgt(*i) == *e).map(|(_, y)| (*i, field.mul(x, y))).collect::<Vec<_>>()
                    })
                    .collect();
                return Ok(tower::merge_terms(&field, terms));
            }
            let mut terms = Vec::new();
            for (c, y) in v {
                let w = t.word_of(m, *c)?;
                let prod = t.mul_word(n, u.to_vec(), &w)?;
                terms.extend(prod.into_iter().map(|(i, x)| (i, field.mul(&x, y))));
            }
            Ok(tower::merge_terms(&field, terms))
        })
    }

    /// Path-basis index of every normal word of degree `n`.
    pub fn normal_word_ranks(&self, n: usize) -> Result<Vec<usize>> {
        let dim = self.dim(n)?;
        if n == 0 {
            return Ok((0..dim).collect());
        }
        let basis = self.quiver().path_basis(n);
        (0..dim).map(|i| Ok(basis.rank(&self.normal_word(n, i)?).expect("normal words are paths"))).collect()
    }

    /// `I_n` as a subspace of `U^{⊗n}`.
    pub fn ideal_component(&self, n: usize) -> Result<Subspace<F>> {
        let basis = self.quiver().path_basis(n);
        self.limits.check(basis.len())?;
        let field = self.field().clone();
        if n < self.s() {
            return Ok(Subspace::zero(field, basis.len()));
        }
        let ranks = self.normal_word_ranks(n)?;
        let mut is_normal = vec![false; basis.len()];
        for &r in &ranks {
            is_normal[r] = true;
        }
        let mut rows = Vec::new();
        for w in 0..basis.len() {
            if is_normal[w] {
                continue;
            }
            let nf = self.normal_form(&basis.word(w))?;
            let mut row = vec![(w, field.one())];
            row.extend(nf.into_iter().map(|(i, x)| (ranks[i], field.neg(&x))));
            row.sort_unstable_by_key(|(c, _)| *c);
            rows.push(row);
        }
        Ok(Subspace::from_rref_unchecked(field, basis.len(), rows))
    }

    /// `dim Λ_n` together with the projection `U^{⊗n} → Λ_n`.
    pub fn algebra_component(&self, n: usize) -> Result<(usize, LinearMap<F>)> {
        let basis = self.quiver().path_basis(n);
        self.limits.check(basis.len())?;
        let dim = self.dim(n)?;
        let field = self.field().clone();
        let images = (0..basis.len())
            .map(|w| if n == 0 { Ok(vec![(w, field.one())]) } else { self.normal_form(&basis.word(w)) })
            .collect::<Result<Vec<_>>>()?;
        Ok((dim, LinearMap::from_images(field, dim, images)?))
    }

    /// `R_n = ∩ U^{⊗i} ⊗ R ⊗ U^{⊗j}`; all of `U^{⊗n}` below degree `s`.
    pub fn corelation_component(&self, n: usize) -> Result<Arc<Subspace<F>>> {
        let mut cache = self.corelations.lock().expect("corelation lock");
        while cache.len() <= n {
            let k = cache.len();
            let q = self.quiver();
            let dim = q.path_count(k);
            self.limits.check(dim)?;
            let next = if k < self.s() {
                Subspace::full(self.field().clone(), dim)
            } else if k == self.s() {
                self.presentation.relations().clone()
            } else {
                let prev = &cache[k - 1];
                pad_right(q, prev, k - 1, 1).intersect(&pad_left(q, prev, k - 1, 1))?
            };
            cache.push(Arc::new(next));
        }
        Ok(cache[n].clone())
    }

    /// The view of `Λ^! = T(U*)/⟨R^⊥⟩`.
    pub fn dual_algebra(&self) -> GradedAlgebraView<F> {
        GradedAlgebraView::with_limits(shriek_presentation(&self.presentation), self.limits)
    }
}

/// Convenience alias for [`GradedAlgebraView::dual_algebra`].
pub fn dual_algebra<F: Field>(a: &GradedAlgebraView<F>) -> GradedAlgebraView<F> {
    a.dual_algebra()
}
