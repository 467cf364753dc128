use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_image, LinearMap, SparseVec, Subspace, Workspace};
use crate::triples::{TensorPowers, TruncatedTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomOutcome {
    Pass,
    Fail,
    /// Some space involved lies beyond the truncation.
    Uncomputable,
}

impl AxiomOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxiomOutcome::Pass => "pass",
            AxiomOutcome::Fail => "fail",
            AxiomOutcome::Uncomputable => "uncomputable",
        }
    }
}

/// Outcome of one axiom (numbered 1 to 4) in one degree of `M^{⊗_A s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCell {
    pub axiom: u8,
    pub degree: usize,
    pub outcome: AxiomOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub cells: Vec<AxiomCell>,
}

impl AxiomReport {
    /// No computed cell failed.
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.outcome != AxiomOutcome::Fail)
    }

    pub fn outcome(&self, axiom: u8, degree: usize) -> Option<AxiomOutcome> {
        self.cells.iter().find(|c| c.axiom == axiom && c.degree == degree).map(|c| c.outcome)
    }

    pub fn computed(&self) -> usize {
        self.cells.iter().filter(|c| c.outcome != AxiomOutcome::Uncomputable).count()
    }
}

fn verdict(ok: bool) -> AxiomOutcome {
    if ok {
        AxiomOutcome::Pass
    } else {
        AxiomOutcome::Fail
    }
}

fn unit<F: Field>(field: &F, i: usize) -> SparseVec<F::Elem> {
    vec![(i, field.one())]
}

/// The four axioms, in every degree `i` of `M^{⊗_A s}` up to the top degree
/// of `M`:
/// 1. `Im φ_i = A_{i+1}`;
/// 2. `φ ⊗ 1 = 1 ⊗ φ` on `(M^{⊗(s+1)})_i`;
/// 3. `Ker(1 ⊗ φ) = Ker φ ⊗ M + M ⊗ Ker φ` in degree `i`;
/// 4. `Ker(φ ⊗ φ) = Σ_p M^{⊗p} ⊗ Ker φ ⊗ M^{⊗(s-p)}` in degree `i`.
pub fn triple_axioms_check<F: Field>(t: &TruncatedTriple<F>) -> Result<AxiomReport> {
    let s = t.s();
    let (a, m) = (t.a(), t.m());
    let phi = t.phi();
    let mut tp = t.tensors().clone();
    let kernels: Vec<Subspace<F>> = phi.iter().map(|f| kernel_image(f).0).collect();
    let mut cells = Vec::new();
    for i in 0..=m.top() {
        let has_phi = i < phi.len();
        cells.push(AxiomCell {
            axiom: 1,
            degree: i,
            outcome: if has_phi { verdict(phi[i].rank() == a.dims[i + 1]) } else { AxiomOutcome::Uncomputable },
        });
        let (two, three) = if has_phi && i < m.top() {
            tp.ensure(s + 1, i)?;
            let (lhs, rhs) = axiom_two_maps(t, &mut tp, i)?;
            let two = verdict(lhs == rhs);
            let kernel = kernel_image(&rhs).0;
            let sum = kernel_sums(&mut tp, &kernels, s, i, 1)?;
            (two, verdict(kernel == sum))
        } else {
            (AxiomOutcome::Uncomputable, AxiomOutcome::Uncomputable)
        };
        cells.push(AxiomCell { axiom: 2, degree: i, outcome: two });
        cells.push(AxiomCell { axiom: 3, degree: i, outcome: three });
        let four = if has_phi && i + 2 <= a.top() {
            tp.ensure(2 * s, i)?;
            let map = phi_tensor_phi(t, &mut tp, i)?;
            let kernel = kernel_image(&map).0;
            let sum = kernel_sums(&mut tp, &kernels, s, i, s)?;
            verdict(kernel == sum)
        } else {
            AxiomOutcome::Uncomputable
        };
        cells.push(AxiomCell { axiom: 4, degree: i, outcome: four });
    }
    Ok(AxiomReport { cells })
}

/// `φ_0` of the class of `y_1 ⊗ … ⊗ y_s`, in `A_1`.
fn phi_zero<F: Field>(t: &TruncatedTriple<F>, tp: &mut TensorPowers<F>, ys: &[usize]) -> SparseVec<F::Elem> {
    let v = tp.embed(0, &unit(t.field(), ys[0]), &ys[1..]);
    t.phi()[0].apply(&v)
}

/// `φ ⊗ 1` and `1 ⊗ φ` from `(M^{⊗(s+1)})_i` to `M_{i+1}`.
fn axiom_two_maps<F: Field>(
    t: &TruncatedTriple<F>,
    tp: &mut TensorPowers<F>,
    i: usize,
) -> Result<(LinearMap<F>, LinearMap<F>)> {
    let s = t.s();
    let field = t.field().clone();
    let target = t.m().dims[i + 1];
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for b in 0..tp.dim(s + 1, i) {
        let tuple = tp.tuple(s + 1, i, b);
        let u = tp.embed(i, &unit(&field, tuple[0]), &tuple[1..s]);
        let pu = t.phi()[i].apply(&u);
        lhs.push(tp.left_act(i + 1, &pu, 1, 0, &unit(&field, tuple[s])));
        let p0 = phi_zero(t, tp, &tuple[1..]);
        rhs.push(tp.right_act(1, i, &unit(&field, tuple[0]), 1, &p0));
    }
    Ok((LinearMap::from_images(field.clone(), target, lhs)?, LinearMap::from_images(field, target, rhs)?))
}

/// `φ ⊗ φ` from `(M^{⊗2s})_i` to `A_{i+2}`.
fn phi_tensor_phi<F: Field>(t: &TruncatedTriple<F>, tp: &mut TensorPowers<F>, i: usize) -> Result<LinearMap<F>> {
    let s = t.s();
    let field = t.field().clone();
    let a = t.a();
    let target = a.dims[i + 2];
    let mut images = Vec::new();
    for b in 0..tp.dim(2 * s, i) {
        let tuple = tp.tuple(2 * s, i, b);
        let u = tp.embed(i, &unit(&field, tuple[0]), &tuple[1..s]);
        let pu = t.phi()[i].apply(&u);
        let p0 = phi_zero(t, tp, &tuple[s..]);
        let mut ws = Workspace::new(field.clone(), target);
        for (g, coef) in &p0 {
            ws.add_scaled(&a.right[i + 1][*g].apply(&pu), coef);
        }
        images.push(ws.drain());
    }
    LinearMap::from_images(field, target, images)
}

/// `W_q = Σ_{p=0}^{q} M^{⊗p} ⊗ Ker φ ⊗ M^{⊗(q-p)}` in degree `i`, built as
/// `W_{q+1} = W_q ⊗ M + M^{⊗(q+1)} ⊗ Ker φ`.
fn kernel_sums<F: Field>(
    tp: &mut TensorPowers<F>,
    kernels: &[Subspace<F>],
    s: usize,
    i: usize,
    q: usize,
) -> Result<Subspace<F>> {
    let field = kernels[0].field().clone();
    let m0 = tp.dim(1, 0);
    let mut w = kernels[i].basis().to_vec();
    for p in 1..=q {
        let mut gens = Vec::new();
        for v in &w {
            for y in 0..m0 {
                gens.push(tp.append(s + p - 1, i, v, y));
            }
        }
        for j in 0..=i {
            for u in 0..tp.dim(p, j) {
                for kv in kernels[i - j].basis() {
                    gens.push(tp.join(p, j, &unit(&field, u), s, i - j, kv));
                }
            }
        }
        let span = Subspace::span(field.clone(), tp.dim(s + p, i), &gens)?;
        w = span.basis().to_vec();
    }
    Subspace::span(field, tp.dim(s + q, i), &w)
}

/// `dim (Ker φ)_i` in every computed degree. For a triple this is the
/// summand `S` of `M^{⊗_A s} ≅ S ⊕ A_{>0}(1)`, which lives in degree 0.
pub fn splitting_summand<F: Field>(t: &TruncatedTriple<F>) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, f) in t.phi().iter().enumerate() {
        let dim = f.domain_dim() - f.rank();
        if i > 0 && dim > 0 {
            return Err(Error::SplittingViolation { degree: i, dim });
        }
        out.push(dim);
    }
    Ok(out)
}
