//! The generalized Koszul complex `K_n = R_{χ(n)} ⊗ Λ` with differentials
//! induced by `R_{χ(n+1)} ⊆ R_{χ(n)} ⊗ U^{⊗(χ(n+1)-χ(n))}`.
//!
//! A basis element of `K_{n,d}` is a pair `(k, c)` of a canonical basis row
//! `r_k` of `R_{χ(n)}` and a normal word `c` of degree `d - χ(n)` starting at
//! the target vertex of `r_k`, indexed as `offset[k] + position of c among
//! normal words with the same source`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::GradedAlgebraView;
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{Echelon, LinearMap, SparseVec, Subspace};

/// `χ_s(i)`: `is/2` for even `i`, `(i-1)s/2 + 1` for odd `i`.
pub fn chi(s: usize, i: usize) -> usize {
    if i.is_multiple_of(2) {
        i * s / 2
    } else {
        (i - 1) * s / 2 + 1
    }
}

/// Graded dimensions of one term of the complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulTerm {
    pub n: usize,
    /// `χ_s(n)`.
    pub chi: usize,
    /// `dim R_{χ(n)}`.
    pub corelation_dim: usize,
    /// `dim K_{n,d}` for `d = 0..=N`.
    pub dims: Vec<usize>,
}

struct Term<F: Field> {
    chi: usize,
    space: Arc<Subspace<F>>,
    row_src: Vec<usize>,
    row_tgt: Vec<usize>,
    /// Row index of each pivot word (path rank; vertex when `chi = 0`).
    row_of_pivot: HashMap<usize, usize>,
}

/// Position of each normal word among those with the same source, and the
/// number of normal words per source vertex.
struct Positions {
    pos: Vec<usize>,
    count: Vec<usize>,
}

/// Image of one basis element: `(row k of the target term, vector over
/// normal words)` grouped by `k` in increasing order.
type Image<E> = Vec<(usize, SparseVec<E>)>;

pub struct KoszulComplex<'a, F: Field> {
    a: &'a GradedAlgebraView<F>,
    terms: HashMap<usize, Arc<Term<F>>>,
    positions: HashMap<usize, Arc<Positions>>,
    ranks: HashMap<(usize, usize), usize>,
}

impl<'a, F: Field> KoszulComplex<'a, F> {
    pub fn new(a: &'a GradedAlgebraView<F>) -> Self {
        KoszulComplex { a, terms: HashMap::new(), positions: HashMap::new(), ranks: HashMap::new() }
    }

    pub fn algebra(&self) -> &GradedAlgebraView<F> {
        self.a
    }

    fn term(&mut self, n: usize) -> Result<Arc<Term<F>>> {
        if let Some(t) = self.terms.get(&n) {
            return Ok(t.clone());
        }
        let m = chi(self.a.s(), n);
        let space = self.a.corelation_component(m)?;
        let q = self.a.quiver();
        let basis = q.path_basis(m);
        let mut row_src = Vec::new();
        let mut row_tgt = Vec::new();
        let mut row_of_pivot = HashMap::new();
        for (k, row) in space.basis().iter().enumerate() {
            let (s, t) = basis.endpoints(row[0].0);
            row_src.push(s);
            row_tgt.push(t);
            row_of_pivot.insert(row[0].0, k);
        }
        let term = Arc::new(Term { chi: m, space, row_src, row_tgt, row_of_pivot });
        self.terms.insert(n, term.clone());
        Ok(term)
    }

    fn positions(&mut self, level: usize) -> Result<Arc<Positions>> {
        if let Some(p) = self.positions.get(&level) {
            return Ok(p.clone());
        }
        let lvl = self.a.level(level)?;
        let mut count = vec![0; self.a.quiver().vertex_count()];
        let pos = (0..lvl.dim())
            .map(|c| {
                let v = lvl.src(c);
                count[v] += 1;
                count[v] - 1
            })
            .collect();
        let p = Arc::new(Positions { pos, count });
        self.positions.insert(level, p.clone());
        Ok(p)
    }

    /// Row offsets of `K_{n,d}` and its dimension.
    fn offsets(&mut self, n: usize, d: usize) -> Result<(Vec<usize>, usize)> {
        let term = self.term(n)?;
        if d < term.chi {
            return Ok((vec![0; term.row_tgt.len()], 0));
        }
        let p = self.positions(d - term.chi)?;
        let mut off = Vec::with_capacity(term.row_tgt.len());
        let mut total = 0usize;
        for &t in &term.row_tgt {
            off.push(total);
            total += p.count[t];
        }
        self.a.limits().check(total)?;
        Ok((off, total))
    }

    pub fn dim(&mut self, n: usize, d: usize) -> Result<usize> {
        Ok(self.offsets(n, d)?.1)
    }

    pub fn koszul_term(&mut self, n: usize, max_degree: usize) -> Result<KoszulTerm> {
        let term = self.term(n)?;
        let dims = (0..=max_degree).map(|d| self.dim(n, d)).collect::<Result<Vec<_>>>()?;
        Ok(KoszulTerm { n, chi: term.chi, corelation_dim: term.space.dim(), dims })
    }

    /// Walks the degrees `χ(n+1)..=max_degree` of `d(K)_n : K_{n+1} → K_n`,
    /// handing the images of the basis of `K_{n+1,d}` (as vectors in
    /// `K_{n,d}`) to `visit`, which returns `false` to stop.
    fn walk_differential(
        &mut self,
        n: usize,
        max_degree: usize,
        mut visit: impl FnMut(usize, Vec<SparseVec<F::Elem>>) -> Result<bool>,
    ) -> Result<()> {
        let src = self.term(n + 1)?;
        let dst = self.term(n)?;
        let (m1, m) = (src.chi, dst.chi);
        if src.space.is_zero() || m1 > max_degree {
            return Ok(());
        }
        let ell = m1 - m;
        let q = self.a.quiver().clone();
        let big = q.path_basis(m1);
        let small = q.path_basis(m);
        // Degree m1: decompose each row of R_{m1} along R_m ⊗ U^{ℓ}.
        let mut images: Vec<Image<F::Elem>> = Vec::with_capacity(src.space.dim());
        for row in src.space.basis() {
            let mut by_k: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
            for (w, x) in row {
                let word = big.word(*w);
                let k = if m == 0 {
                    Some(q.src(word[0]))
                } else {
                    small.rank(&word[..m]).and_then(|r| dst.row_of_pivot.get(&r).copied())
                };
                let Some(k) = k else { continue };
                let nf = self.a.normal_form(&word[m..])?;
                by_k.entry(k).or_default().extend(nf.into_iter().map(|(b, y)| (b, self.a.field().mul(x, &y))));
            }
            let mut image: Image<F::Elem> = by_k
                .into_iter()
                .map(|(k, terms)| (k, crate::algebra::tower::merge_terms(self.a.field(), terms)))
                .filter(|(_, v)| !v.is_empty())
                .collect();
            image.sort_unstable_by_key(|(k, _)| *k);
            images.push(image);
        }
        for j in 0.. {
            let d = m1 + j;
            if d > max_degree {
                break;
            }
            if j > 0 {
                images = self.extend_images(&src, ell, j, &images)?;
            }
            let (off, _) = self.offsets(n, d)?;
            let pos = self.positions(d - m)?;
            let flat = images
                .iter()
                .map(|img| {
                    let mut v: SparseVec<F::Elem> = Vec::new();
                    for (k, vec) in img {
                        v.extend(vec.iter().map(|(b, x)| (off[*k] + pos.pos[*b], x.clone())));
                    }
                    v
                })
                .collect();
            if !visit(d, flat)? {
                break;
            }
        }
        Ok(())
    }

    /// Images for source basis elements `(k', c)` with `c` of level `j`,
    /// obtained from level `j - 1` by right multiplication with the last arrow.
    fn extend_images(
        &mut self,
        src: &Term<F>,
        ell: usize,
        j: usize,
        prev: &[Image<F::Elem>],
    ) -> Result<Vec<Image<F::Elem>>> {
        let lvl = self.a.level(j)?;
        let prev_pos = self.positions(j - 1)?;
        let cur_pos = self.positions(j)?;
        let prev_off = row_offsets(&src.row_tgt, &prev_pos.count);
        let cur_off = row_offsets(&src.row_tgt, &cur_pos.count);
        let total = cur_off.last().map_or(0, |o| o + cur_pos.count[*src.row_tgt.last().unwrap()]);
        self.a.limits().check(total)?;
        let mut out: Vec<Image<F::Elem>> = vec![Vec::new(); total];
        // Source words of level j grouped by source vertex.
        let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); self.a.quiver().vertex_count()];
        for c in 0..lvl.dim() {
            by_src[lvl.src(c)].push(c);
        }
        self.a.with_tower(|t| {
            for (k1, &v) in src.row_tgt.iter().enumerate() {
                for &c in &by_src[v] {
                    let (p, arrow) = lvl.split_last(c);
                    let prev_index = if j == 1 { prev_off[k1] } else { prev_off[k1] + prev_pos.pos[p] };
                    let mut img = Vec::new();
                    for (k, vec) in &prev[prev_index] {
                        let next = t.mul_arrow(ell + j, vec, arrow)?;
                        if !next.is_empty() {
                            img.push((*k, next));
                        }
                    }
                    out[cur_off[k1] + cur_pos.pos[c]] = img;
                }
            }
            Ok(())
        })?;
        Ok(out)
    }

    /// The matrix of `d(K)_n` in internal degree `d`.
    pub fn differential(&mut self, n: usize, d: usize) -> Result<LinearMap<F>> {
        let (_, cod) = self.offsets(n, d)?;
        let (_, dom) = self.offsets(n + 1, d)?;
        let mut found = None;
        self.walk_differential(n, d, |deg, images| {
            if deg == d {
                found = Some(images);
                return Ok(false);
            }
            Ok(true)
        })?;
        let images = found.unwrap_or_else(|| vec![Vec::new(); dom]);
        LinearMap::from_images(self.a.field().clone(), cod, images)
    }

    /// Rank of `d(K)_n` in internal degree `d`, cached.
    pub fn rank(&mut self, n: usize, d: usize) -> Result<usize> {
        if let Some(r) = self.ranks.get(&(n, d)) {
            return Ok(*r);
        }
        self.fill_ranks(n, d)?;
        Ok(self.ranks[&(n, d)])
    }

    /// Computes and caches the ranks of `d(K)_n` in all degrees `<= max_degree`.
    pub fn fill_ranks(&mut self, n: usize, max_degree: usize) -> Result<()> {
        let field = self.a.field().clone();
        let mut found = Vec::new();
        let mut dims = Vec::new();
        for d in 0..=max_degree {
            dims.push(self.dim(n, d)?);
        }
        self.walk_differential(n, max_degree, |d, images| {
            let mut e = Echelon::new(field.clone(), dims[d]);
            for v in &images {
                e.insert(v);
            }
            found.push((d, e.rank()));
            Ok(true)
        })?;
        for d in 0..=max_degree {
            self.ranks.insert((n, d), 0);
        }
        for (d, r) in found {
            self.ranks.insert((n, d), r);
        }
        Ok(())
    }

    /// Homology of the augmented complex at `K_n` in internal degree `d >= 1`:
    /// `dim K_{n,d} - rank d(K)_{n-1} - rank d(K)_n`, where at `n = 0` the
    /// incoming map is the augmentation, which vanishes in positive degrees.
    pub fn defect(&mut self, n: usize, d: usize) -> Result<usize> {
        let dim = self.dim(n, d)?;
        let incoming = if n == 0 || d == 0 { 0 } else { self.rank(n - 1, d)? };
        let outgoing = self.rank(n, d)?;
        Ok(dim - incoming - outgoing)
    }

    /// A cycle in `K_{n,d}` that is not a boundary, if one exists.
    pub fn nontrivial_cycle(&mut self, n: usize, d: usize) -> Result<Option<SparseVec<F::Elem>>> {
        let field = self.a.field().clone();
        let dim = self.dim(n, d)?;
        let cycles: Vec<SparseVec<F::Elem>> = if n == 0 {
            (0..dim).map(|i| vec![(i, field.one())]).collect()
        } else {
            let map = self.differential(n - 1, d)?;
            let mut e = Echelon::with_tracking(field.clone(), map.codomain_dim());
            for i in 0..map.domain_dim() {
                e.insert(&map.image_of(i));
            }
            Subspace::span(field.clone(), dim, e.kernel())?.basis().to_vec()
        };
        let boundaries = self.differential(n, d)?;
        let mut e = Echelon::new(field, dim);
        for i in 0..boundaries.domain_dim() {
            e.insert(&boundaries.image_of(i));
        }
        Ok(cycles.into_iter().find(|z| !e.reduce(z).is_empty()))
    }

    /// Whether `v ∈ K_{n,d}` is a cycle that is not a boundary.
    pub fn is_nontrivial_cycle(&mut self, n: usize, d: usize, v: &[(usize, F::Elem)]) -> Result<bool> {
        if n > 0 && !self.differential(n - 1, d)?.apply(v).is_empty() {
            return Ok(false);
        }
        let boundaries = self.differential(n, d)?;
        let mut e = Echelon::new(self.a.field().clone(), boundaries.codomain_dim());
        for i in 0..boundaries.domain_dim() {
            e.insert(&boundaries.image_of(i));
        }
        Ok(!e.reduce(v).is_empty())
    }

    /// Basis index in `K_{n,d}` of `r_k ⊗ c` for a normal word `c` of degree
    /// `d - χ(n)`.
    pub fn basis_index(&mut self, n: usize, d: usize, k: usize, c: usize) -> Result<usize> {
        let (off, _) = self.offsets(n, d)?;
        let chi = self.term(n)?.chi;
        Ok(off[k] + self.positions(d - chi)?.pos[c])
    }

    /// Readable form of a vector in `K_{n,d}`: `coef [relation row] ⊗ word`.
    pub fn describe(&mut self, n: usize, d: usize, v: &[(usize, F::Elem)]) -> Result<String> {
        let term = self.term(n)?;
        let (off, _) = self.offsets(n, d)?;
        let level = d - term.chi;
        let lvl = self.a.level(level)?;
        let pos = self.positions(level)?;
        let q = self.a.quiver().clone();
        let big = q.path_basis(term.chi);
        let mut parts = Vec::new();
        for (idx, x) in v {
            let k = off.iter().rposition(|&o| o <= *idx).expect("offset");
            let want = idx - off[k];
            let c = (0..lvl.dim())
                .find(|&c| lvl.src(c) == term.row_tgt[k] && pos.pos[c] == want)
                .expect("normal word");
            let row = &term.space.basis()[k];
            let rel = if term.chi == 0 {
                format!("e{}", term.row_src[k] + 1)
            } else {
                row.iter()
                    .map(|(w, y)| format!("{}·{}", self.a.field().format_elem(y), big.format(*w).replace(' ', "")))
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            let word = if level == 0 {
                "1".to_string()
            } else {
                self.a
                    .normal_word(level, c)?
                    .iter()
                    .map(|&a| q.arrows()[a].name.clone())
                    .collect::<String>()
            };
            parts.push(format!("{} ({}) ⊗ {}", self.a.field().format_elem(x), rel, word));
        }
        Ok(parts.join(" + "))
    }
}

fn row_offsets(row_tgt: &[usize], count: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(row_tgt.len());
    let mut total = 0;
    for &t in row_tgt {
        off.push(total);
        total += count[t];
    }
    off
}
