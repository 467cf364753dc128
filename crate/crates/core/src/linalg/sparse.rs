//! Sparse vectors and the incremental elimination engine shared by every
//! exact computation in the crate.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::field::Field;

/// Sorted `(column, value)` pairs with no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

pub fn unit<F: Field>(field: &F, col: usize) -> SparseVec<F::Elem> {
    vec![(col, field.one())]
}

pub fn scale<F: Field>(field: &F, v: &[(usize, F::Elem)], c: &F::Elem) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(x, c))).collect()
}

/// `a + c * b` for sorted sparse vectors.
pub fn axpy<F: Field>(
    field: &F,
    a: &[(usize, F::Elem)],
    c: &F::Elem,
    b: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = field.mul(c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Dense scatter buffer with a min-heap over touched columns. Values are
/// gathered back in increasing column order.
#[derive(Debug, Clone)]
pub struct Workspace<F: Field> {
    field: F,
    acc: Vec<F::Acc>,
    touched: Vec<bool>,
    heap: BinaryHeap<Reverse<usize>>,
}

impl<F: Field> Workspace<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        let zero = field.acc_zero();
        Workspace { acc: vec![zero; ncols], touched: vec![false; ncols], heap: BinaryHeap::new(), field }
    }

    fn ensure(&mut self, col: usize) {
        if col >= self.acc.len() {
            let n = (col + 1).max(self.acc.len() * 2);
            self.acc.resize(n, self.field.acc_zero());
            self.touched.resize(n, false);
        }
    }

    pub fn add(&mut self, col: usize, value: &F::Elem) {
        self.ensure(col);
        self.field.acc_add(&mut self.acc[col], value);
        if !self.touched[col] {
            self.touched[col] = true;
            self.heap.push(Reverse(col));
        }
    }

    pub fn add_scaled(&mut self, v: &[(usize, F::Elem)], coef: &F::Elem) {
        if self.field.is_zero(coef) {
            return;
        }
        for (col, x) in v {
            self.ensure(*col);
            self.field.acc_add_mul(&mut self.acc[*col], coef, x);
            if !self.touched[*col] {
                self.touched[*col] = true;
                self.heap.push(Reverse(*col));
            }
        }
    }

    /// Removes and returns the smallest column holding a nonzero value.
    pub fn pop_min(&mut self) -> Option<(usize, F::Elem)> {
        while let Some(Reverse(col)) = self.heap.pop() {
            self.touched[col] = false;
            let value = self.field.acc_value(&self.acc[col]);
            self.acc[col] = self.field.acc_zero();
            if !self.field.is_zero(&value) {
                return Some((col, value));
            }
        }
        None
    }

    pub fn drain(&mut self) -> SparseVec<F::Elem> {
        let mut out = Vec::with_capacity(self.heap.len());
        while let Some(entry) = self.pop_min() {
            out.push(entry);
        }
        out
    }
}

/// Incremental row echelon form with optional tracking of how every stored
/// row arises from the inserted vectors.
///
/// Stored rows are monic with their pivot at the smallest column. Rows are
/// only head-reduced on insertion; [`Echelon::into_rref`] finishes the job.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<u32>,
    tracks: Option<Vec<SparseVec<F::Elem>>>,
    inserted: usize,
    kernel: Vec<SparseVec<F::Elem>>,
    ws: Workspace<F>,
    tws: Option<Workspace<F>>,
}

const NO_PIVOT: u32 = u32::MAX;

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            ws: Workspace::new(field.clone(), ncols),
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; ncols],
            tracks: None,
            inserted: 0,
            kernel: Vec::new(),
            tws: None,
        }
    }

    /// Like [`Echelon::new`], recording linear relations among inserted vectors.
    pub fn with_tracking(field: F, ncols: usize) -> Self {
        let mut e = Self::new(field.clone(), ncols);
        e.tracks = Some(Vec::new());
        e.tws = Some(Workspace::new(field, 16));
        e
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NO_PIVOT
    }

    /// Inserts a vector; returns `true` when it raised the rank.
    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> bool {
        let one = self.field.one();
        let index = self.inserted;
        self.inserted += 1;
        self.ws.add_scaled(v, &one);
        if let Some(tws) = self.tws.as_mut() {
            tws.add(index, &one);
        }
        while let Some((col, value)) = self.ws.pop_min() {
            let r = self.pivot_row[col];
            if r != NO_PIVOT {
                let coef = self.field.neg(&value);
                let row = &self.rows[r as usize];
                self.ws.add_scaled(&row[1..], &coef);
                if let (Some(tws), Some(tracks)) = (self.tws.as_mut(), self.tracks.as_ref()) {
                    tws.add_scaled(&tracks[r as usize], &coef);
                }
                continue;
            }
            let inv = self.field.inv(&value).expect("nonzero pivot");
            let mut row = vec![(col, self.field.one())];
            row.extend(self.ws.drain().into_iter().map(|(c, x)| (c, self.field.mul(&x, &inv))));
            if let (Some(tws), Some(tracks)) = (self.tws.as_mut(), self.tracks.as_mut()) {
                let t = tws.drain();
                tracks.push(scale(&self.field, &t, &inv));
            }
            self.pivot_row[col] = self.rows.len() as u32;
            self.rows.push(row);
            return true;
        }
        if let Some(tws) = self.tws.as_mut() {
            self.kernel.push(tws.drain());
        }
        false
    }

    /// Fully reduces `v` modulo the stored rows.
    pub fn reduce(&mut self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        self.reduce_with_coeffs(v).0
    }

    /// Fully reduces `v`, also returning the multiples of stored rows that
    /// were subtracted: `v = remainder + sum coeffs[r] * row_r`.
    pub fn reduce_with_coeffs(
        &mut self,
        v: &[(usize, F::Elem)],
    ) -> (SparseVec<F::Elem>, Vec<(usize, F::Elem)>) {
        let one = self.field.one();
        self.ws.add_scaled(v, &one);
        let mut out = Vec::new();
        let mut used = Vec::new();
        while let Some((col, value)) = self.ws.pop_min() {
            let r = self.pivot_row[col];
            if r != NO_PIVOT {
                let coef = self.field.neg(&value);
                self.ws.add_scaled(&self.rows[r as usize][1..], &coef);
                used.push((r as usize, value));
            } else {
                out.push((col, value));
            }
        }
        (out, used)
    }

    /// Coefficients over the inserted vectors expressing `v`, if `v` lies in
    /// their span. Requires tracking.
    pub fn express(&mut self, v: &[(usize, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        let (rem, used) = self.reduce_with_coeffs(v);
        if !rem.is_empty() {
            return None;
        }
        let tracks = self.tracks.as_ref().expect("express requires tracking");
        let mut ws = Workspace::new(self.field.clone(), self.inserted);
        for (r, coef) in &used {
            ws.add_scaled(&tracks[*r], coef);
        }
        Some(ws.drain())
    }

    /// Linear relations among inserted vectors found so far (tracking only).
    pub fn kernel(&self) -> &[SparseVec<F::Elem>] {
        &self.kernel
    }

    pub fn take_kernel(&mut self) -> Vec<SparseVec<F::Elem>> {
        std::mem::take(&mut self.kernel)
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r[0].0).collect();
        p.sort_unstable();
        p
    }

    /// The reduced row echelon form, rows sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseVec<F::Elem>> {
        let Echelon { field, rows, ncols, .. } = self;
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_unstable_by_key(|&r| Reverse(rows[r][0].0));
        let mut final_rows: Vec<Option<SparseVec<F::Elem>>> = vec![None; rows.len()];
        let mut pivot_row = vec![NO_PIVOT; ncols];
        let mut ws = Workspace::new(field.clone(), ncols);
        let one = field.one();
        for &r in &order {
            let row = &rows[r];
            ws.add_scaled(&row[1..], &one);
            let mut out = vec![row[0].clone()];
            while let Some((col, value)) = ws.pop_min() {
                let fr = pivot_row[col];
                if fr != NO_PIVOT {
                    let coef = field.neg(&value);
                    let frow = final_rows[fr as usize].as_ref().expect("finalized");
                    ws.add_scaled(&frow[1..], &coef);
                } else {
                    out.push((col, value));
                }
            }
            pivot_row[row[0].0] = r as u32;
            final_rows[r] = Some(out);
        }
        let mut result: Vec<SparseVec<F::Elem>> = final_rows.into_iter().map(|r| r.expect("row")).collect();
        result.sort_unstable_by_key(|r| r[0].0);
        result
    }
}
