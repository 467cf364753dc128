//! Finite quivers, path bases of tensor powers and presentations of
//! relation subspaces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{SparseVec, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite quiver with vertices `0..vertex_count`. Arrows keep their input
/// order, which fixes the lexicographic order of paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver("at least one vertex is required".into()));
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.src >= vertex_count || a.tgt >= vertex_count {
                return Err(Error::InvalidQuiver(format!("arrow `{}` has an endpoint out of range", a.name)));
            }
            if a.name.is_empty() {
                return Err(Error::InvalidQuiver("arrow names must be nonempty".into()));
            }
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow `{}`", a.name)));
            }
        }
        Ok(Quiver { vertex_count, arrows })
    }

    /// One vertex with a loop for every name.
    pub fn one_vertex<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let arrows = names
            .iter()
            .map(|n| Arrow { name: n.as_ref().to_string(), src: 0, tgt: 0 })
            .collect();
        Self::new(1, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn src(&self, arrow: usize) -> usize {
        self.arrows[arrow].src
    }

    pub fn tgt(&self, arrow: usize) -> usize {
        self.arrows[arrow].tgt
    }

    /// The opposite quiver with arrows renamed `a -> a*` (and `a* -> a`).
    pub fn dual(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: dual_name(&a.name), src: a.tgt, tgt: a.src })
            .collect();
        Quiver { vertex_count: self.vertex_count, arrows }
    }

    /// `counts[l][v]` = number of paths of length `l` starting at `v`,
    /// saturating at `usize::MAX`.
    pub fn path_counts(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut counts = vec![vec![1usize; self.vertex_count]];
        for l in 1..=max_len {
            let prev = &counts[l - 1];
            let mut row = vec![0usize; self.vertex_count];
            for a in &self.arrows {
                row[a.src] = row[a.src].saturating_add(prev[a.tgt]);
            }
            counts.push(row);
        }
        counts
    }

    /// Number of paths of length `n` (vertex idempotents for `n = 0`).
    pub fn path_count(&self, n: usize) -> usize {
        self.path_counts(n)[n].iter().fold(0usize, |a, b| a.saturating_add(*b))
    }

    pub fn is_path(&self, word: &[usize]) -> bool {
        word.iter().all(|&a| a < self.arrows.len()) && word.windows(2).all(|w| self.tgt(w[0]) == self.src(w[1]))
    }

    pub fn path_basis(&self, n: usize) -> PathBasis {
        PathBasis { quiver: self.clone(), n, counts: self.path_counts(n) }
    }
}

/// `a -> a*`, and `a* -> a` so that dualizing twice restores names.
pub fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

/// The basis of `U^{⊗n}`: paths of length `n` in lexicographic order of arrow
/// indices; for `n = 0` the vertex idempotents.
#[derive(Debug, Clone)]
pub struct PathBasis {
    quiver: Quiver,
    n: usize,
    counts: Vec<Vec<usize>>,
}

impl PathBasis {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.counts[self.n].iter().fold(0usize, |a, b| a.saturating_add(*b))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Position of a path of length `n >= 1`, or `None` if it is not a path.
    pub fn rank(&self, word: &[usize]) -> Option<usize> {
        assert!(self.n >= 1 && word.len() == self.n, "rank expects a word of length {}", self.n);
        if !self.quiver.is_path(word) {
            return None;
        }
        let q = &self.quiver;
        let mut idx = 0usize;
        for (i, &a) in word.iter().enumerate() {
            let rest = self.n - 1 - i;
            for b in 0..a {
                if i == 0 || q.src(b) == q.tgt(word[i - 1]) {
                    idx += self.counts[rest][q.tgt(b)];
                }
            }
        }
        Some(idx)
    }

    /// Inverse of [`PathBasis::rank`] for `n >= 1`.
    pub fn word(&self, mut idx: usize) -> Vec<usize> {
        assert!(self.n >= 1, "degree-zero basis elements are vertices");
        let q = &self.quiver;
        let mut word = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let rest = self.n - 1 - i;
            let mut chosen = None;
            for b in 0..q.arrow_count() {
                if i > 0 && q.src(b) != q.tgt(word[i - 1]) {
                    continue;
                }
                let c = self.counts[rest][q.tgt(b)];
                if idx < c {
                    chosen = Some(b);
                    break;
                }
                idx -= c;
            }
            word.push(chosen.expect("index within basis"));
        }
        word
    }

    /// Source and target vertex of a basis element.
    pub fn endpoints(&self, idx: usize) -> (usize, usize) {
        if self.n == 0 {
            return (idx, idx);
        }
        let w = self.word(idx);
        (self.quiver.src(w[0]), self.quiver.tgt(w[self.n - 1]))
    }

    pub fn words(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|i| if self.n == 0 { Vec::new() } else { self.word(i) }).collect()
    }

    pub fn format(&self, idx: usize) -> String {
        if self.n == 0 {
            return format!("e{}", idx + 1);
        }
        self.word(idx).iter().map(|&a| self.quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join(" ")
    }
}

/// Rows of `S ⊗ U^{⊗l}` for block-pure `S ⊆ U^{⊗n}` (`n >= 1`).
pub fn pad_right<F: Field>(q: &Quiver, s: &Subspace<F>, n: usize, l: usize) -> Subspace<F> {
    pad(q, s, n, 0, l)
}

/// Rows of `U^{⊗l} ⊗ S` for block-pure `S ⊆ U^{⊗n}` (`n >= 1`).
pub fn pad_left<F: Field>(q: &Quiver, s: &Subspace<F>, n: usize, l: usize) -> Subspace<F> {
    pad(q, s, n, l, 0)
}

/// `U^{⊗left} ⊗ S ⊗ U^{⊗right}`. Rows of the result are already reduced.
pub fn pad<F: Field>(q: &Quiver, s: &Subspace<F>, n: usize, left: usize, right: usize) -> Subspace<F> {
    assert!(n >= 1);
    let inner = q.path_basis(n);
    let lb = q.path_basis(left);
    let rb = q.path_basis(right);
    let out = q.path_basis(left + n + right);
    let field = s.field().clone();
    let mut rows: Vec<SparseVec<F::Elem>> = Vec::new();
    let words: Vec<(Vec<usize>, Vec<(Vec<usize>, F::Elem)>)> = s
        .basis()
        .iter()
        .map(|row| (inner.word(row[0].0), row.iter().map(|(c, x)| (inner.word(*c), x.clone())).collect()))
        .collect();
    for (lead, row) in &words {
        let (rs, rt) = (q.src(lead[0]), q.tgt(lead[n - 1]));
        for li in 0..lb.len() {
            let lw = if left == 0 { Vec::new() } else { lb.word(li) };
            if left == 0 && li != rs || left > 0 && q.tgt(lw[left - 1]) != rs {
                continue;
            }
            for ri in 0..rb.len() {
                let rw = if right == 0 { Vec::new() } else { rb.word(ri) };
                if right == 0 && ri != rt || right > 0 && q.src(rw[0]) != rt {
                    continue;
                }
                let v: SparseVec<F::Elem> = row
                    .iter()
                    .map(|(w, x)| {
                        let full: Vec<usize> = lw.iter().chain(w).chain(&rw).copied().collect();
                        (out.rank(&full).expect("composable"), x.clone())
                    })
                    .collect();
                rows.push(v);
            }
        }
    }
    rows.sort_unstable_by_key(|r| r[0].0);
    Subspace::from_rref_unchecked(field, out.len(), rows)
}

/// Relations `R ⊆ U^{⊗s}` on a quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelPresentation<F: Field> {
    quiver: Arc<Quiver>,
    s: usize,
    relations: Subspace<F>,
}

/// Corelations: the kernel `K ⊆ U^{⊗s}` of a surjection onto `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoRelPresentation<F: Field> {
    quiver: Arc<Quiver>,
    s: usize,
    kernel: Subspace<F>,
}

fn check_blocks<F: Field>(q: &Quiver, s: usize, space: &Subspace<F>) -> Result<()> {
    let basis = q.path_basis(s);
    if space.ambient_dim() != basis.len() {
        return Err(Error::AmbientMismatch { left: space.ambient_dim(), right: basis.len() });
    }
    for (i, row) in space.basis().iter().enumerate() {
        let e = basis.endpoints(row[0].0);
        if row.iter().any(|(c, _)| basis.endpoints(*c) != e) {
            return Err(Error::BlockViolation { row: i });
        }
    }
    Ok(())
}

impl<F: Field> RelPresentation<F> {
    pub fn new(quiver: Quiver, s: usize, relations: Subspace<F>) -> Result<Self> {
        if s < 2 {
            return Err(Error::BadRelationDegree(s));
        }
        check_blocks(&quiver, s, &relations)?;
        Ok(RelPresentation { quiver: Arc::new(quiver), s, relations })
    }

    /// Spans the given relation vectors (indices into the path basis).
    pub fn from_vectors(field: F, quiver: Quiver, s: usize, vectors: &[SparseVec<F::Elem>]) -> Result<Self> {
        if s < 2 {
            return Err(Error::BadRelationDegree(s));
        }
        let dim = quiver.path_count(s);
        let relations = Subspace::span(field, dim, vectors)?;
        Self::new(quiver, s, relations)
    }

    /// Relations given as lists of `(coefficient, word of arrow indices)`.
    pub fn from_words(field: F, quiver: Quiver, s: usize, relations: &[Vec<(F::Elem, Vec<usize>)>]) -> Result<Self> {
        if s < 2 {
            return Err(Error::BadRelationDegree(s));
        }
        let basis = quiver.path_basis(s);
        let mut vectors = Vec::new();
        for (row, terms) in relations.iter().enumerate() {
            let mut ws = crate::linalg::Workspace::new(field.clone(), basis.len());
            let mut block = None;
            for (c, w) in terms {
                if w.len() != s {
                    return Err(Error::BadRelationDegree(w.len()));
                }
                let idx = basis
                    .rank(w)
                    .ok_or_else(|| Error::InvalidQuiver(format!("relation {row} contains a non-path")))?;
                let e = basis.endpoints(idx);
                if *block.get_or_insert(e) != e {
                    return Err(Error::BlockViolation { row });
                }
                ws.add(idx, c);
            }
            vectors.push(ws.drain());
        }
        Self::from_vectors(field, quiver, s, &vectors)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn shared_quiver(&self) -> Arc<Quiver> {
        self.quiver.clone()
    }

    pub fn field(&self) -> &F {
        self.relations.field()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn relations(&self) -> &Subspace<F> {
        &self.relations
    }
}

impl<F: Field> CoRelPresentation<F> {
    pub fn new(quiver: Quiver, s: usize, kernel: Subspace<F>) -> Result<Self> {
        if s < 2 {
            return Err(Error::BadRelationDegree(s));
        }
        check_blocks(&quiver, s, &kernel)?;
        Ok(CoRelPresentation { quiver: Arc::new(quiver), s, kernel })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn kernel(&self) -> &Subspace<F> {
        &self.kernel
    }

    pub fn corelation_dim(&self) -> usize {
        self.kernel.ambient_dim() - self.kernel.dim()
    }
}

/// Transports a subspace of `U^{⊗n}` to `(U*)^{⊗n}` by sending a path
/// `a_1 ... a_n` to `a_n* ... a_1*`.
pub fn reverse_to_dual<F: Field>(q: &Quiver, n: usize, space: &Subspace<F>) -> Subspace<F> {
    let dq = q.dual();
    if n == 0 {
        return Subspace::span(space.field().clone(), space.ambient_dim(), space.basis()).expect("fits");
    }
    let from = q.path_basis(n);
    let to = dq.path_basis(n);
    let rows: Vec<SparseVec<F::Elem>> = space
        .basis()
        .iter()
        .map(|row| {
            let mut v: SparseVec<F::Elem> = row
                .iter()
                .map(|(c, x)| {
                    let mut w = from.word(*c);
                    w.reverse();
                    (to.rank(&w).expect("reversed path"), x.clone())
                })
                .collect();
            v.sort_unstable_by_key(|(c, _)| *c);
            v
        })
        .collect();
    Subspace::span(space.field().clone(), to.len(), &rows).expect("fits")
}

/// The dual presentation: the dual quiver with corelations `perp(R)`.
pub fn dualize_rel<F: Field>(p: &RelPresentation<F>) -> CoRelPresentation<F> {
    let kernel = reverse_to_dual(p.quiver(), p.s, &p.relations.perp());
    CoRelPresentation { quiver: Arc::new(p.quiver().dual()), s: p.s, kernel }
}

pub fn ker_functor<F: Field>(c: &CoRelPresentation<F>) -> RelPresentation<F> {
    RelPresentation { quiver: c.quiver.clone(), s: c.s, relations: c.kernel.clone() }
}

pub fn coker_functor<F: Field>(p: &RelPresentation<F>) -> CoRelPresentation<F> {
    CoRelPresentation { quiver: p.quiver.clone(), s: p.s, kernel: p.relations.clone() }
}

/// The quadratic-dual style presentation `R ↦ perp(R)` on the dual quiver.
pub fn shriek_presentation<F: Field>(p: &RelPresentation<F>) -> RelPresentation<F> {
    ker_functor(&dualize_rel(p))
}

/// `S ⊗ T ⊆ U^{⊗(a+b)}` for block-pure `S ⊆ U^{⊗a}` and `T ⊆ U^{⊗b}`. A factor
/// of degree zero is a subspace of the vertex span.
pub fn tensor_subspaces<F: Field>(q: &Quiver, s: &Subspace<F>, a: usize, t: &Subspace<F>, b: usize) -> Subspace<F> {
    let field = s.field().clone();
    let sb = q.path_basis(a);
    let tb = q.path_basis(b);
    let out = q.path_basis(a + b);
    let expand = |basis: &PathBasis, deg: usize, row: &SparseVec<F::Elem>| -> (usize, usize, Vec<(Vec<usize>, F::Elem)>) {
        let (src, tgt) = basis.endpoints(row[0].0);
        let words = row
            .iter()
            .map(|(c, x)| (if deg == 0 { Vec::new() } else { basis.word(*c) }, x.clone()))
            .collect();
        (src, tgt, words)
    };
    let left: Vec<_> = s.basis().iter().map(|r| expand(&sb, a, r)).collect();
    let right: Vec<_> = t.basis().iter().map(|r| expand(&tb, b, r)).collect();
    let mut rows = Vec::new();
    for (_, lt, lw) in &left {
        for (rs, _, rw) in &right {
            if lt != rs {
                continue;
            }
            let mut v: SparseVec<F::Elem> = Vec::with_capacity(lw.len() * rw.len());
            for (u, x) in lw {
                for (w, y) in rw {
                    let idx = if a + b == 0 {
                        *lt
                    } else {
                        let full: Vec<usize> = u.iter().chain(w).copied().collect();
                        out.rank(&full).expect("composable")
                    };
                    v.push((idx, field.mul(x, y)));
                }
            }
            v.sort_unstable_by_key(|(c, _)| *c);
            rows.push(v);
        }
    }
    rows.sort_unstable_by_key(|r| r[0].0);
    Subspace::from_rref_unchecked(field, out.len(), rows)
}
