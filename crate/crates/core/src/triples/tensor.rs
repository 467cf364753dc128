//! Tensor powers `M^{⊗_A k}` of a truncated bimodule.
//!
//! Because `M` is generated by `M_0` as a left module, every element of
//! `(X ⊗_A M)_i` can be written with its right factor in degree zero, so
//! `(X ⊗_A M)_i` is the quotient of `X_i ⊗_O M_0` by the span of
//! `Σ (x·a_l) ⊗ y_l` over `x ∈ X_{i-c}` and `Σ a_l ⊗ y_l` in the kernel of
//! `A_c ⊗_O M_0 → M_c`. Basis vectors of a quotient are non-pivot columns of
//! the relation echelon, so each one is a tuple `(m, y_2, …, y_k)` with
//! `m ∈ M_i` and `y_j ∈ M_0`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, LinearMap, SparseVec, Workspace};
use crate::triples::GradedPart;
use crate::Limits;

const NO_BASIS: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Quotient<F: Field> {
    relations: Echelon<F>,
    col_to_basis: Vec<u32>,
    basis_col: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Component<F: Field> {
    dim: usize,
    ends: Vec<(usize, usize)>,
    quotient: Option<Quotient<F>>,
    left: Vec<LinearMap<F>>,
    right: Vec<LinearMap<F>>,
}

/// The multiplication `A_c ⊗_O M_0 → M_c` restricted to composable pairs.
#[derive(Debug, Clone)]
struct LeftMultiplication<F: Field> {
    pairs: Vec<(usize, usize)>,
    echelon: Echelon<F>,
}

#[derive(Debug, Clone)]
pub(crate) struct TensorPowers<F: Field> {
    field: F,
    limits: Limits,
    a: Arc<GradedPart<F>>,
    m: Arc<GradedPart<F>>,
    /// `decomp[c][a]`: terms `(g, a', coef)` with `a = Σ coef · g·a'`.
    decomp: Vec<Vec<Vec<(usize, usize, F::Elem)>>>,
    mult: Vec<LeftMultiplication<F>>,
    /// `powers[k][i]` for `k >= 1`.
    powers: Vec<Vec<Component<F>>>,
}

impl<F: Field> TensorPowers<F> {
    pub(crate) fn new(field: F, a: Arc<GradedPart<F>>, m: Arc<GradedPart<F>>, limits: Limits) -> Result<Self> {
        let mut tp = TensorPowers { field, limits, a, m, decomp: vec![Vec::new()], mult: Vec::new(), powers: vec![Vec::new()] };
        tp.build_decompositions()?;
        tp.build_left_multiplication()?;
        let first = (0..tp.m.dims.len())
            .map(|i| Component {
                dim: tp.m.dims[i],
                ends: tp.m.ends[i].clone(),
                quotient: None,
                left: tp.m.left.get(i).cloned().unwrap_or_default(),
                right: tp.m.right.get(i).cloned().unwrap_or_default(),
            })
            .collect();
        tp.powers.push(first);
        debug_assert_eq!(tp.powers.len(), 2);
        Ok(tp)
    }

    fn gens(&self) -> usize {
        self.a.dims.get(1).copied().unwrap_or(0)
    }

    fn m0(&self) -> usize {
        self.m.dims[0]
    }

    /// Highest degree available for every power.
    pub(crate) fn top(&self) -> usize {
        self.m.dims.len() - 1
    }

    /// Decomposes `A_c` for `c <= min(top A, top M)`, the only degrees the
    /// tensor powers use.
    fn build_decompositions(&mut self) -> Result<()> {
        let gens = self.gens();
        for c in 1..self.a.dims.len().min(self.top() + 1) {
            let mut e = Echelon::with_tracking(self.field.clone(), self.a.dims[c]);
            let mut pairs = Vec::new();
            for g in 0..gens {
                for a1 in 0..self.a.dims[c - 1] {
                    e.insert(&self.a.left[c - 1][g].image_of(a1));
                    pairs.push((g, a1));
                }
            }
            let mut rows = Vec::with_capacity(self.a.dims[c]);
            for a in 0..self.a.dims[c] {
                let coeffs = e
                    .express(&[(a, self.field.one())])
                    .ok_or_else(|| Error::Precondition(format!("A is not generated in degree one (degree {c})")))?;
                rows.push(coeffs.into_iter().map(|(p, x)| (pairs[p].0, pairs[p].1, x)).collect());
            }
            self.decomp.push(rows);
        }
        Ok(())
    }

    fn build_left_multiplication(&mut self) -> Result<()> {
        let m0 = self.m0();
        let top = (self.a.dims.len() - 1).min(self.top());
        // table[a * m0 + y] = a·y in M_c
        let mut table: Vec<SparseVec<F::Elem>> = Vec::new();
        for c in 0..=top {
            let mut next = Vec::with_capacity(self.a.dims[c] * m0);
            for a in 0..self.a.dims[c] {
                for y in 0..m0 {
                    let v = if c == 0 {
                        if self.m.ends[0][y].0 == a {
                            vec![(y, self.field.one())]
                        } else {
                            Vec::new()
                        }
                    } else {
                        let mut ws = Workspace::new(self.field.clone(), self.m.dims[c]);
                        for (g, a1, coef) in &self.decomp[c][a] {
                            let inner = &table[a1 * m0 + y];
                            ws.add_scaled(&self.m.left[c - 1][*g].apply(inner), coef);
                        }
                        ws.drain()
                    };
                    next.push(v);
                }
            }
            let mut pairs = Vec::new();
            let mut e = Echelon::with_tracking(self.field.clone(), self.m.dims[c]);
            for a in 0..self.a.dims[c] {
                for y in 0..m0 {
                    if self.a.ends[c][a].1 == self.m.ends[0][y].0 {
                        e.insert(&next[a * m0 + y]);
                        pairs.push((a, y));
                    }
                }
            }
            if e.rank() != self.m.dims[c] {
                return Err(Error::Precondition(format!("M is not generated in degree zero (degree {c})")));
            }
            self.mult.push(LeftMultiplication { pairs, echelon: e });
            table = next;
        }
        Ok(())
    }

    /// Writes `v ∈ M_c` as `Σ coef · a·y`.
    fn preimage(&mut self, c: usize, v: &[(usize, F::Elem)]) -> Vec<(usize, usize, F::Elem)> {
        let lm = &mut self.mult[c];
        let coeffs = lm.echelon.express(v).expect("M is generated in degree zero");
        coeffs.into_iter().map(|(p, x)| (lm.pairs[p].0, lm.pairs[p].1, x)).collect()
    }

    pub(crate) fn dim(&self, k: usize, i: usize) -> usize {
        self.powers[k][i].dim
    }

    pub(crate) fn ends(&self, k: usize, i: usize) -> &[(usize, usize)] {
        &self.powers[k][i].ends
    }

    /// Makes `(M^{⊗k})_j` available for `j <= i`, with the actions of `A_1`
    /// on every degree below `i`.
    pub(crate) fn ensure(&mut self, k: usize, i: usize) -> Result<()> {
        if i > self.top() {
            return Err(Error::Precondition(format!("degree {i} of M is beyond the truncation")));
        }
        if k <= 1 {
            return Ok(());
        }
        self.ensure(k - 1, i)?;
        while self.powers.len() <= k {
            self.powers.push(Vec::new());
        }
        while self.powers[k].len() <= i {
            let j = self.powers[k].len();
            let comp = self.build_component(k, j)?;
            self.powers[k].push(comp);
            if j >= 1 {
                let (left, right) = self.build_actions(k, j - 1)?;
                let comp = &mut self.powers[k][j - 1];
                comp.left = left;
                comp.right = right;
            }
        }
        Ok(())
    }

    /// Whether `(M^{⊗k})_i` has been built.
    pub(crate) fn has(&self, k: usize, i: usize) -> bool {
        self.powers.get(k).is_some_and(|p| p.len() > i)
    }

    fn build_component(&mut self, k: usize, i: usize) -> Result<Component<F>> {
        let m0 = self.m0();
        let prev_dim = self.powers[k - 1][i].dim;
        let ambient = prev_dim * m0;
        self.limits.check(ambient)?;
        let mut rel = Echelon::new(self.field.clone(), ambient);
        for x in 0..prev_dim {
            for y in 0..m0 {
                if self.powers[k - 1][i].ends[x].1 != self.m.ends[0][y].0 {
                    rel.insert(&[(x * m0 + y, self.field.one())]);
                }
            }
        }
        for c in 1..=i.min(self.a.dims.len() - 1) {
            let kernel: Vec<SparseVec<F::Elem>> = self.mult[c].echelon.kernel().to_vec();
            let pairs = self.mult[c].pairs.clone();
            let mut cache: HashMap<(usize, usize), SparseVec<F::Elem>> = HashMap::new();
            for x in 0..self.powers[k - 1][i - c].dim {
                for kv in &kernel {
                    let mut ws = Workspace::new(self.field.clone(), ambient);
                    for (p, coef) in kv {
                        let (a, y) = pairs[*p];
                        let xa = match cache.get(&(x, a)) {
                            Some(v) => v.clone(),
                            None => {
                                let v = self.right_act(k - 1, i - c, &[(x, self.field.one())], c, &[(a, self.field.one())]);
                                cache.insert((x, a), v.clone());
                                v
                            }
                        };
                        for (x2, e) in &xa {
                            ws.add(x2 * m0 + y, &self.field.mul(e, coef));
                        }
                    }
                    rel.insert(&ws.drain());
                }
            }
        }
        let mut col_to_basis = vec![NO_BASIS; ambient];
        let mut basis_col = Vec::new();
        let mut ends = Vec::new();
        for col in 0..ambient {
            if !rel.is_pivot(col) {
                col_to_basis[col] = basis_col.len() as u32;
                basis_col.push(col);
                let (x, y) = (col / m0, col % m0);
                ends.push((self.powers[k - 1][i].ends[x].0, self.m.ends[0][y].1));
            }
        }
        Ok(Component {
            dim: basis_col.len(),
            ends,
            quotient: Some(Quotient { relations: rel, col_to_basis, basis_col }),
            left: Vec::new(),
            right: Vec::new(),
        })
    }

    fn build_actions(&mut self, k: usize, i: usize) -> Result<(Vec<LinearMap<F>>, Vec<LinearMap<F>>)> {
        let m0 = self.m0();
        let gens = self.gens();
        let dim = self.powers[k][i].dim;
        let target = self.powers[k][i + 1].dim;
        let cols = self.powers[k][i].quotient.as_ref().expect("k >= 2").basis_col.clone();
        let mut left = Vec::with_capacity(gens);
        let mut right = Vec::with_capacity(gens);
        for g in 0..gens {
            let mut limg = Vec::with_capacity(dim);
            let mut rimg = Vec::with_capacity(dim);
            for &col in &cols {
                let (x, y) = (col / m0, col % m0);
                let gx = self.powers[k - 1][i].left[g].image_of(x);
                let amb: SparseVec<F::Elem> = gx.into_iter().map(|(x2, e)| (x2 * m0 + y, e)).collect();
                limg.push(self.reduce(k, i + 1, amb));
                let yg = self.m.right[0][g].image_of(y);
                let mut ws = Workspace::new(self.field.clone(), self.powers[k - 1][i + 1].dim * m0);
                for (a, y2, coef) in self.preimage(1, &yg) {
                    for (x2, e) in self.powers[k - 1][i].right[a].image_of(x) {
                        ws.add(x2 * m0 + y2, &self.field.mul(&e, &coef));
                    }
                }
                let amb = ws.drain();
                rimg.push(self.reduce(k, i + 1, amb));
            }
            left.push(LinearMap::from_images(self.field.clone(), target, limg)?);
            right.push(LinearMap::from_images(self.field.clone(), target, rimg)?);
        }
        Ok((left, right))
    }

    /// Class in `(M^{⊗k})_i` of an ambient vector of `(M^{⊗(k-1)})_i ⊗ M_0`.
    fn reduce(&mut self, k: usize, i: usize, ambient: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let q = self.powers[k][i].quotient.as_mut().expect("k >= 2");
        let mut out: SparseVec<F::Elem> = q
            .relations
            .reduce(&ambient)
            .into_iter()
            .map(|(c, x)| (q.col_to_basis[c] as usize, x))
            .collect();
        out.sort_unstable_by_key(|(c, _)| *c);
        out
    }

    /// `x·a` for `x ∈ (M^{⊗k})_d` and `a ∈ A_c`.
    pub(crate) fn right_act(
        &self,
        k: usize,
        d: usize,
        x: &[(usize, F::Elem)],
        c: usize,
        a: &[(usize, F::Elem)],
    ) -> SparseVec<F::Elem> {
        let mut ws = Workspace::new(self.field.clone(), self.powers[k][d + c].dim);
        for (ai, coef) in a {
            if c == 0 {
                for (b, e) in x {
                    if self.powers[k][d].ends[*b].1 == *ai {
                        ws.add(*b, &self.field.mul(e, coef));
                    }
                }
                continue;
            }
            for (g, a1, dc) in &self.decomp[c][*ai] {
                let xg = self.powers[k][d].right[*g].apply(x);
                let rest = self.right_act(k, d + 1, &xg, c - 1, &[(*a1, self.field.one())]);
                ws.add_scaled(&rest, &self.field.mul(dc, coef));
            }
        }
        ws.drain()
    }

    /// `a·x` for `a ∈ A_c` and `x ∈ (M^{⊗k})_d`.
    pub(crate) fn left_act(
        &self,
        c: usize,
        a: &[(usize, F::Elem)],
        k: usize,
        d: usize,
        x: &[(usize, F::Elem)],
    ) -> SparseVec<F::Elem> {
        let mut ws = Workspace::new(self.field.clone(), self.powers[k][d + c].dim);
        for (ai, coef) in a {
            if c == 0 {
                for (b, e) in x {
                    if self.powers[k][d].ends[*b].0 == *ai {
                        ws.add(*b, &self.field.mul(e, coef));
                    }
                }
                continue;
            }
            for (g, a1, dc) in &self.decomp[c][*ai] {
                let inner = self.left_act(c - 1, &[(*a1, self.field.one())], k, d, x);
                let outer = self.powers[k][d + c - 1].left[*g].apply(&inner);
                ws.add_scaled(&outer, &self.field.mul(dc, coef));
            }
        }
        ws.drain()
    }

    /// `x ⊗ y` for `x ∈ (M^{⊗k})_i` and a basis vector `y ∈ M_0`.
    pub(crate) fn append(&mut self, k: usize, i: usize, x: &[(usize, F::Elem)], y: usize) -> SparseVec<F::Elem> {
        let m0 = self.m0();
        let amb: SparseVec<F::Elem> = x.iter().map(|(b, e)| (b * m0 + y, e.clone())).collect();
        self.reduce(k + 1, i, amb)
    }

    /// Class of `m ⊗ y_1 ⊗ … ⊗ y_r` with `m ∈ M_i`.
    pub(crate) fn embed(&mut self, i: usize, m: &[(usize, F::Elem)], ys: &[usize]) -> SparseVec<F::Elem> {
        let mut v = m.to_vec();
        for (j, &y) in ys.iter().enumerate() {
            v = self.append(1 + j, i, &v, y);
        }
        v
    }

    /// `u ⊗ v` for `u ∈ (M^{⊗p})_j` and `v ∈ (M^{⊗q})_l`, `p, q >= 1`.
    pub(crate) fn join(
        &mut self,
        p: usize,
        j: usize,
        u: &[(usize, F::Elem)],
        q: usize,
        l: usize,
        v: &[(usize, F::Elem)],
    ) -> SparseVec<F::Elem> {
        let mut ws = Workspace::new(self.field.clone(), self.powers[p + q][j + l].dim);
        for (b, coef) in v {
            let t = self.tuple(q, l, *b);
            let pre = self.preimage(l, &[(t[0], self.field.one())]);
            for (a, y, e) in pre {
                let ua = self.right_act(p, j, u, l, &[(a, self.field.one())]);
                let mut w = self.append(p, j + l, &ua, y);
                for (r, &z) in t[1..].iter().enumerate() {
                    w = self.append(p + 1 + r, j + l, &w, z);
                }
                ws.add_scaled(&w, &self.field.mul(&e, coef));
            }
        }
        ws.drain()
    }

    /// The tuple `(m, y_2, …, y_k)` represented by a basis vector.
    pub(crate) fn tuple(&self, k: usize, i: usize, b: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(k);
        let mut idx = b;
        let m0 = self.m0();
        for level in (2..=k).rev() {
            let col = self.powers[level][i].quotient.as_ref().expect("k >= 2").basis_col[idx];
            out.push(col % m0);
            idx = col / m0;
        }
        out.push(idx);
        out.reverse();
        out
    }
}
