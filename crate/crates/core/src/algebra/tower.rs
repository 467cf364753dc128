//! Degree-by-degree normal forms for path algebras modulo windows of a
//! homogeneous relation space.
//!
//! Level `n` holds the normal words of length `n`: the words that are not
//! leading words (smallest word in the support) of any element of the ideal
//! component `I_n`. Every normal word of length `n >= 1` is a normal word of
//! length `n - 1` followed by an arrow, so a level stores, for each such
//! extension ("candidate"), its normal form as a combination of normal words.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, SparseVec, Workspace};
use crate::quiver::Quiver;
use crate::Limits;

/// Allowed window starts: a relation window `[p, p + s)` is imposed when
/// `allowed(p)` holds.
pub type WindowRule = Arc<dyn Fn(usize) -> bool + Send + Sync>;

const NONE: u32 = u32::MAX;

#[derive(Debug)]
pub struct Level<E> {
    pub n: usize,
    /// Normal words as `(index of prefix at level n-1, last arrow)`; at level
    /// zero `(vertex, NONE)`.
    prefix: Vec<(u32, u32)>,
    src: Vec<u32>,
    tgt: Vec<u32>,
    /// First candidate of each normal word of the previous level.
    cand_off: Vec<usize>,
    /// Normal form of every candidate, CSR over this level's normal words.
    nf_ptr: Vec<usize>,
    nf_idx: Vec<u32>,
    nf_val: Vec<E>,
    /// Candidate index of each normal word.
    cand_of_normal: Vec<usize>,
}

impl<E: Clone> Level<E> {
    pub fn dim(&self) -> usize {
        self.prefix.len()
    }

    pub fn candidate_count(&self) -> usize {
        self.nf_ptr.len().saturating_sub(1)
    }

    pub fn src(&self, i: usize) -> usize {
        self.src[i] as usize
    }

    pub fn tgt(&self, i: usize) -> usize {
        self.tgt[i] as usize
    }

    /// Prefix index and last arrow of a normal word (level `n >= 1`).
    pub fn split_last(&self, i: usize) -> (usize, usize) {
        let (p, a) = self.prefix[i];
        (p as usize, a as usize)
    }

    pub fn is_candidate_normal(&self, c: usize) -> bool {
        self.nf_ptr[c + 1] - self.nf_ptr[c] == 1 && self.cand_of_normal[self.nf_idx[self.nf_ptr[c]] as usize] == c
    }

    fn nf_row(&self, c: usize) -> impl Iterator<Item = (usize, &E)> {
        let range = self.nf_ptr[c]..self.nf_ptr[c + 1];
        self.nf_idx[range.clone()].iter().map(|&i| i as usize).zip(self.nf_val[range].iter())
    }
}

pub struct Tower<F: Field> {
    field: F,
    quiver: Arc<Quiver>,
    s: usize,
    /// Relation rows as lists of `(coefficient, word)`.
    relations: Vec<Vec<(F::Elem, Vec<usize>)>>,
    /// Source vertex of each relation row (rows are block-pure).
    rel_src: Vec<usize>,
    rule: Option<WindowRule>,
    out_pos: Vec<usize>,
    levels: Vec<Arc<Level<F::Elem>>>,
    limits: Limits,
}

impl<F: Field> Tower<F> {
    /// `rule = None` imposes every window.
    pub fn new(
        field: F,
        quiver: Arc<Quiver>,
        s: usize,
        relations: Vec<Vec<(F::Elem, Vec<usize>)>>,
        rule: Option<WindowRule>,
        limits: Limits,
    ) -> Self {
        let mut out_pos = vec![0; quiver.arrow_count()];
        let mut out_deg = vec![0usize; quiver.vertex_count()];
        for (a, arrow) in quiver.arrows().iter().enumerate() {
            out_pos[a] = out_deg[arrow.src];
            out_deg[arrow.src] += 1;
        }
        let rel_src = relations
            .iter()
            .map(|r| r.first().map_or(0, |(_, w)| quiver.src(w[0])))
            .collect();
        let d = quiver.vertex_count();
        let level0 = Level {
            n: 0,
            prefix: (0..d as u32).map(|v| (v, NONE)).collect(),
            src: (0..d as u32).collect(),
            tgt: (0..d as u32).collect(),
            cand_off: Vec::new(),
            nf_ptr: vec![0],
            nf_idx: Vec::new(),
            nf_val: Vec::new(),
            cand_of_normal: vec![0; d],
        };
        Tower { field, quiver, s, relations, rel_src, rule, out_pos, levels: vec![Arc::new(level0)], limits }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn computed(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&mut self, n: usize) -> Result<Arc<Level<F::Elem>>> {
        while self.levels.len() <= n {
            let next = self.build_next()?;
            self.levels.push(Arc::new(next));
        }
        Ok(self.levels[n].clone())
    }

    /// Right multiplication by an arrow, from level `n - 1` to level `n`.
    pub fn mul_arrow(&mut self, n: usize, v: &[(usize, F::Elem)], a: usize) -> Result<SparseVec<F::Elem>> {
        let prev = self.level(n - 1)?;
        let cur = self.level(n)?;
        let mut terms: Vec<(usize, F::Elem)> = Vec::new();
        for (b, x) in v {
            if let Some(c) = self.candidate_in(&prev, &cur, n, *b, a) {
                terms.extend(cur.nf_row(c).map(|(i, y)| (i, self.field.mul(x, y))));
            }
        }
        Ok(merge_terms(&self.field, terms))
    }

    fn candidate_in(&self, prev: &Level<F::Elem>, cur: &Level<F::Elem>, n: usize, b: usize, a: usize) -> Option<usize> {
        if n == 1 {
            return (self.quiver.src(a) == b).then_some(a);
        }
        (prev.tgt(b) == self.quiver.src(a)).then(|| cur.cand_off[b] + self.out_pos[a])
    }

    /// Normal form of `v · w` where `v` lives at level `n` and `w` is a word.
    pub fn mul_word(&mut self, n: usize, v: SparseVec<F::Elem>, w: &[usize]) -> Result<SparseVec<F::Elem>> {
        let mut cur = v;
        for (k, &a) in w.iter().enumerate() {
            if cur.is_empty() {
                return Ok(cur);
            }
            cur = self.mul_arrow(n + k + 1, &cur, a)?;
        }
        Ok(cur)
    }

    /// Normal form of a path of length `n >= 1`.
    pub fn normal_form(&mut self, word: &[usize]) -> Result<SparseVec<F::Elem>> {
        let start = vec![(self.quiver.src(word[0]), self.field.one())];
        self.mul_word(0, start, word)
    }

    /// The word of a normal word of level `n`.
    pub fn word_of(&mut self, n: usize, mut i: usize) -> Result<Vec<usize>> {
        let mut w = vec![0; n];
        for k in (1..=n).rev() {
            let lvl = self.level(k)?;
            let (p, a) = lvl.split_last(i);
            w[k - 1] = a;
            i = p;
        }
        Ok(w)
    }

    fn build_next(&mut self) -> Result<Level<F::Elem>> {
        let n = self.levels.len();
        let prev = self.levels[n - 1].clone();
        // Enumerate candidates.
        let mut cand_off = Vec::with_capacity(prev.dim() + 1);
        let mut cand: Vec<(u32, u32)> = Vec::new();
        if n == 1 {
            for (a, arrow) in self.quiver.arrows().iter().enumerate() {
                cand.push((arrow.src as u32, a as u32));
            }
        } else {
            for b in 0..prev.dim() {
                cand_off.push(cand.len());
                let t = prev.tgt(b);
                for (a, arrow) in self.quiver.arrows().iter().enumerate() {
                    if arrow.src == t {
                        cand.push((b as u32, a as u32));
                    }
                }
            }
            cand_off.push(cand.len());
        }
        if cand.len() > self.limits.max_dim {
            return Err(Error::ResourceBound { dim: cand.len(), cap: self.limits.max_dim });
        }
        let mut ech = Echelon::new(self.field.clone(), cand.len());
        if n >= self.s && self.rule.as_ref().is_none_or(|r| r(n - self.s)) {
            self.impose_window(n, &prev, &cand_off, &mut ech)?;
        }
        let rows = ech.into_rref();
        let mut pivot_row = vec![NONE; cand.len()];
        for (r, row) in rows.iter().enumerate() {
            pivot_row[row[0].0] = r as u32;
        }
        let mut normal_index = vec![NONE; cand.len()];
        let mut prefix = Vec::new();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        let mut cand_of_normal = Vec::new();
        for (c, &(b, a)) in cand.iter().enumerate() {
            if pivot_row[c] == NONE {
                normal_index[c] = prefix.len() as u32;
                prefix.push((b, a));
                src.push(if n == 1 { b } else { prev.src[b as usize] });
                tgt.push(self.quiver.tgt(a as usize) as u32);
                cand_of_normal.push(c);
            }
        }
        let mut nf_ptr = vec![0];
        let mut nf_idx = Vec::new();
        let mut nf_val = Vec::new();
        for c in 0..cand.len() {
            if pivot_row[c] == NONE {
                nf_idx.push(normal_index[c]);
                nf_val.push(self.field.one());
            } else {
                for (col, x) in &rows[pivot_row[c] as usize][1..] {
                    nf_idx.push(normal_index[*col]);
                    nf_val.push(self.field.neg(x));
                }
            }
            nf_ptr.push(nf_idx.len());
        }
        Ok(Level { n, prefix, src, tgt, cand_off, nf_ptr, nf_idx, nf_val, cand_of_normal })
    }

    /// Inserts `b ⊗ r` for every normal word `b` of length `n - s` and relation
    /// row `r`, expressed over the candidates of level `n`.
    fn impose_window(
        &mut self,
        n: usize,
        prev: &Level<F::Elem>,
        cand_off: &[usize],
        ech: &mut Echelon<F>,
    ) -> Result<()> {
        let s = self.s;
        let base = self.level(n - s)?;
        // Distinct proper prefixes of relation words, organised as a trie so
        // shared prefixes are multiplied once per base word.
        let mut trie: Vec<(usize, usize)> = Vec::new(); // (parent node, arrow); node 0 is the root
        trie.push((usize::MAX, usize::MAX));
        let mut children: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        let mut leaf_of: Vec<Vec<usize>> = Vec::new();
        for row in &self.relations {
            let mut leaves = Vec::new();
            for (_, w) in row {
                let mut node = 0;
                for &a in &w[..s - 1] {
                    node = match children[node].iter().find(|(x, _)| *x == a) {
                        Some(&(_, child)) => child,
                        None => {
                            trie.push((node, a));
                            children.push(Vec::new());
                            let child = trie.len() - 1;
                            children[node].push((a, child));
                            child
                        }
                    };
                }
                leaves.push(node);
            }
            leaf_of.push(leaves);
        }
        let depth: Vec<usize> = (0..trie.len()).map(|node| depth_of(&trie, node)).collect();
        let mut values: Vec<SparseVec<F::Elem>> = vec![Vec::new(); trie.len()];
        let mut ws = Workspace::new(self.field.clone(), cand_off.last().copied().unwrap_or(self.quiver.arrow_count()));
        for b in 0..base.dim() {
            let bt = base.tgt(b);
            if !self.rel_src.contains(&bt) {
                continue;
            }
            values[0] = vec![(b, self.field.one())];
            // Nodes are created parent-first, so a forward sweep suffices.
            for node in 1..trie.len() {
                let (parent, a) = trie[node];
                values[node] = if values[parent].is_empty() {
                    Vec::new()
                } else {
                    self.mul_arrow(n - s + depth[node], &values[parent].clone(), a)?
                };
            }
            for (r, row) in self.relations.iter().enumerate() {
                if self.rel_src[r] != bt {
                    continue;
                }
                for ((coef, w), &leaf) in row.iter().zip(&leaf_of[r]) {
                    let last = w[s - 1];
                    for (bp, x) in &values[leaf] {
                        let c = if n == 1 {
                            (self.quiver.src(last) == *bp).then_some(last)
                        } else {
                            (prev.tgt(*bp) == self.quiver.src(last)).then(|| cand_off[*bp] + self.out_pos[last])
                        };
                        if let Some(c) = c {
                            ws.add(c, &self.field.mul(coef, x));
                        }
                    }
                }
                let v = ws.drain();
                if !v.is_empty() {
                    ech.insert(&v);
                }
            }
        }
        Ok(())
    }
}

fn depth_of(trie: &[(usize, usize)], mut node: usize) -> usize {
    let mut d = 0;
    while node != 0 {
        node = trie[node].0;
        d += 1;
    }
    d
}

/// Sorts and sums terms, dropping zeros.
pub(crate) fn merge_terms<F: Field>(field: &F, mut terms: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    terms.sort_unstable_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(terms.len());
    for (i, x) in terms {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = field.add(y, &x),
            _ => {
                if let Some((_, y)) = out.last() {
                    if field.is_zero(y) {
                        out.pop();
                    }
                }
                out.push((i, x));
            }
        }
    }
    if out.last().is_some_and(|(_, y)| field.is_zero(y)) {
        out.pop();
    }
    out
}
