//! Truncated `s`-homogeneous triples `(A, M, φ)`: the Veronese triple of an
//! algebra, the axiom checks, the splitting summand, the functor back to
//! presentations and the dual triple.

mod axioms;
mod tensor;

use std::sync::Arc;

use crate::algebra::{veronese_bimodule, veronese_ring, GradedAlgebraView};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_image, Echelon, LinearMap, SparseVec, Subspace, Workspace};
use crate::quiver::{Arrow, Quiver, RelPresentation};
use crate::Limits;

pub use axioms::{splitting_summand, triple_axioms_check, AxiomCell, AxiomOutcome, AxiomReport};
pub(crate) use tensor::TensorPowers;

/// A graded space `X_0..X_n` over `O = k^V` with left and right actions of
/// the degree-one generators of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPart<F: Field> {
    pub dims: Vec<usize>,
    /// `(source, target)` vertex of every basis vector.
    pub ends: Vec<Vec<(usize, usize)>>,
    /// `left[i][g]`: `x ↦ g·x` from degree `i` to `i + 1`.
    pub left: Vec<Vec<LinearMap<F>>>,
    /// `right[i][g]`: `x ↦ x·g`.
    pub right: Vec<Vec<LinearMap<F>>>,
}

impl<F: Field> GradedPart<F> {
    /// `X_i = Λ_{ri+t}` for `i = 0..=n`, acted on by `Λ_r`.
    pub fn from_algebra(a: &GradedAlgebraView<F>, r: usize, t: usize, n: usize) -> Result<Self> {
        let data = if t == 0 { veronese_ring(a, r, n)? } else { veronese_bimodule(a, r, t, n)? };
        let ends = (0..=n)
            .map(|i| {
                let lvl = a.level(r * i + t)?;
                Ok((0..lvl.dim()).map(|b| (lvl.src(b), lvl.tgt(b))).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedPart { dims: data.dims, ends, left: data.left, right: data.right })
    }

    /// The zero space in degrees `0..=n` for `gens` generators.
    pub fn zero(field: &F, gens: usize, n: usize) -> Self {
        let maps = (0..n).map(|_| (0..gens).map(|_| LinearMap::zero(field.clone(), 0, 0)).collect()).collect::<Vec<_>>();
        GradedPart { dims: vec![0; n + 1], ends: vec![Vec::new(); n + 1], left: maps.clone(), right: maps }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    fn validate(&self, gens: usize, name: &str) -> Result<()> {
        let n = self.dims.len();
        let bad = |msg: String| Err(Error::ShapeMismatch(format!("{name}: {msg}")));
        if n == 0 || self.ends.len() != n || self.left.len() + 1 != n || self.right.len() + 1 != n {
            return bad("component and action counts disagree".into());
        }
        for i in 0..n {
            if self.ends[i].len() != self.dims[i] {
                return bad(format!("degree {i} has the wrong number of endpoints"));
            }
        }
        for i in 0..n - 1 {
            for maps in [&self.left[i], &self.right[i]] {
                if maps.len() != gens
                    || maps.iter().any(|f| f.domain_dim() != self.dims[i] || f.codomain_dim() != self.dims[i + 1])
                {
                    return bad(format!("action maps from degree {i} have the wrong shape"));
                }
            }
        }
        Ok(())
    }
}

/// A triple `(A, M, φ)` known in degrees `A_0..A_a`, `M_0..M_m` with
/// `a >= m`, and `φ_i : (M^{⊗_A s})_i → A_{i+1}` wherever `i + 1 <= a`.
#[derive(Debug, Clone)]
pub struct TruncatedTriple<F: Field> {
    field: F,
    s: usize,
    vertices: usize,
    degree_bound: usize,
    limits: Limits,
    a: Arc<GradedPart<F>>,
    m: Arc<GradedPart<F>>,
    generator_names: Vec<String>,
    phi: Vec<LinearMap<F>>,
    tensors: TensorPowers<F>,
}

impl<F: Field> TruncatedTriple<F> {
    /// Assembles a triple. `phi(i, tuple)` must return `φ_i` of the class of
    /// `m ⊗ y_2 ⊗ … ⊗ y_s` where `tuple = (m, y_2, …, y_s)` indexes a basis
    /// vector of `M_i` followed by basis vectors of `M_0`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        field: F,
        s: usize,
        vertices: usize,
        a: GradedPart<F>,
        m: GradedPart<F>,
        generator_names: Vec<String>,
        limits: Limits,
        mut phi: impl FnMut(usize, &[usize]) -> Result<SparseVec<F::Elem>>,
    ) -> Result<Self> {
        if s < 2 {
            return Err(Error::BadRelationDegree(s));
        }
        let gens = a.dims.get(1).copied().unwrap_or(0);
        a.validate(gens, "A")?;
        m.validate(gens, "M")?;
        if a.dims[0] != vertices || a.ends[0].iter().enumerate().any(|(v, e)| *e != (v, v)) {
            return Err(Error::ShapeMismatch("A_0 must be the vertex idempotents".into()));
        }
        if a.top() < m.top() {
            return Err(Error::Precondition("A must be known in every degree where M is".into()));
        }
        if generator_names.len() != m.dims[0] {
            return Err(Error::ShapeMismatch("one name per basis vector of M_0 is required".into()));
        }
        let degree_bound = (s * a.top()).max(s * m.top() + 1);
        let (a, m) = (Arc::new(a), Arc::new(m));
        let mut tensors = TensorPowers::new(field.clone(), a.clone(), m.clone(), limits)?;
        let phi_top = m.top().min(a.top().saturating_sub(1));
        tensors.ensure(s, phi_top)?;
        let mut maps = Vec::new();
        if a.top() >= 1 {
            for i in 0..=phi_top {
                let images = (0..tensors.dim(s, i))
                    .map(|b| phi(i, &tensors.tuple(s, i, b)))
                    .collect::<Result<Vec<_>>>()?;
                maps.push(LinearMap::from_images(field.clone(), a.dims[i + 1], images)?);
            }
        }
        Ok(TruncatedTriple { field, s, vertices, degree_bound, limits, a, m, generator_names, phi: maps, tensors })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    /// The algebra degree up to which the triple carries information.
    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn a(&self) -> &GradedPart<F> {
        &self.a
    }

    pub fn m(&self) -> &GradedPart<F> {
        &self.m
    }

    pub fn a_dims(&self) -> &[usize] {
        &self.a.dims
    }

    pub fn m_dims(&self) -> &[usize] {
        &self.m.dims
    }

    /// `φ_i` on the basis of `(M^{⊗_A s})_i`, for every computed degree.
    pub fn phi(&self) -> &[LinearMap<F>] {
        &self.phi
    }

    /// `dim (M^{⊗_A k})_i` where it has been computed.
    pub fn tensor_power_dim(&self, k: usize, i: usize) -> Option<usize> {
        self.tensors.has(k, i).then(|| self.tensors.dim(k, i))
    }

    /// Endpoints of the basis of `(M^{⊗_A k})_i` for `k <= k_max` and
    /// `i <= i_max`, with `M^{⊗0} = A`.
    pub fn tensor_power_ends(&self, k_max: usize, i_max: usize) -> Result<Vec<Vec<Vec<(usize, usize)>>>> {
        let mut tp = self.tensors.clone();
        let mut out = vec![self.a.ends[..=i_max.min(self.a.top())].to_vec()];
        for k in 1..=k_max {
            tp.ensure(k, i_max)?;
            out.push((0..=i_max).map(|i| tp.ends(k, i).to_vec()).collect());
        }
        Ok(out)
    }

    pub(crate) fn tensors(&self) -> &TensorPowers<F> {
        &self.tensors
    }
}

/// `F(Λ) = (Λ^{(s)}, Λ^{(s,1)}, φ)` using `Λ_0..Λ_N`.
pub fn triple_of<F: Field>(a: &GradedAlgebraView<F>, n: usize) -> Result<TruncatedTriple<F>> {
    let s = a.s();
    let (a_top, m_top) = (n / s, n.saturating_sub(1) / s);
    let ap = GradedPart::from_algebra(a, s, 0, a_top)?;
    let mp = GradedPart::from_algebra(a, s, 1, m_top)?;
    let names = a.quiver().arrows().iter().map(|x| x.name.clone()).collect();
    let field = a.field().clone();
    let mut t = TruncatedTriple::from_parts(field, s, a.quiver().vertex_count(), ap, mp, names, a.limits(), |i, tuple| {
        let mut word = a.normal_word(s * i + 1, tuple[0])?;
        word.extend_from_slice(&tuple[1..]);
        a.normal_form(&word)
    })?;
    t.degree_bound = n;
    Ok(t)
}

/// `G(A, M, φ) = T(M_0)/⟨(Ker φ)_0⟩`.
pub fn g_functor<F: Field>(t: &TruncatedTriple<F>) -> Result<RelPresentation<F>> {
    let m = &t.m;
    let arrows = (0..m.dims[0])
        .map(|y| Arrow { name: t.generator_names[y].clone(), src: m.ends[0][y].0, tgt: m.ends[0][y].1 })
        .collect();
    let quiver = Quiver::new(t.vertices, arrows)?;
    let basis = quiver.path_basis(t.s);
    let dim0 = t.tensors.dim(t.s, 0);
    let phi0 = match t.phi.first() {
        Some(f) => f.clone(),
        None => LinearMap::zero(t.field.clone(), dim0, 0),
    };
    let (kernel, _) = kernel_image(&phi0);
    let ranks: Vec<usize> = (0..dim0)
        .map(|b| basis.rank(&t.tensors.tuple(t.s, 0, b)).expect("degree-zero tuples are paths"))
        .collect();
    let vectors: Vec<SparseVec<F::Elem>> = kernel
        .basis()
        .iter()
        .map(|v| {
            let mut w: SparseVec<F::Elem> = v.iter().map(|(b, x)| (ranks[*b], x.clone())).collect();
            w.sort_unstable_by_key(|(c, _)| *c);
            w
        })
        .collect();
    let relations = Subspace::span(t.field.clone(), basis.len(), &vectors)?;
    RelPresentation::new(quiver, t.s, relations)
}

/// `F(G(t)^!)`, at the same algebra degree bound as `t`.
pub fn triple_shriek<F: Field>(t: &TruncatedTriple<F>) -> Result<TruncatedTriple<F>> {
    let view = GradedAlgebraView::with_limits(g_functor(t)?, t.limits);
    triple_of(&view.dual_algebra(), t.degree_bound)
}

/// Dimensions of `A ⋉ M` with `A_n` in slot `2n` and `M_n` in slot `2n + 1`.
pub fn trivial_extension_dims<F: Field>(t: &TruncatedTriple<F>) -> Vec<usize> {
    let mut out = Vec::new();
    for n in 0..=t.a.top() {
        out.push(t.a.dims[n]);
        match t.m.dims.get(n) {
            Some(&d) => out.push(d),
            None => break,
        }
    }
    out
}

/// A nonzero `a ∈ A_1` with `a·A_1 = A_1·a = 0`, if one exists. Needs `A_2`.
pub fn has_degree_zero_summand<F: Field>(t: &TruncatedTriple<F>) -> Result<Option<SparseVec<F::Elem>>> {
    let a = &t.a;
    if a.top() < 2 {
        return Err(Error::Precondition("A_2 is required to test A_1 for annihilated elements".into()));
    }
    if a.dims[1] == 0 {
        return Ok(None);
    }
    let gens = a.dims[1];
    let width = a.dims[2];
    let images = (0..gens)
        .map(|x| {
            let mut v = Vec::new();
            for g in 0..gens {
                v.extend(a.right[1][g].image_of(x).into_iter().map(|(c, e)| (2 * g * width + c, e)));
                v.extend(a.left[1][g].image_of(x).into_iter().map(|(c, e)| ((2 * g + 1) * width + c, e)));
            }
            v
        })
        .collect();
    let f = LinearMap::from_images(t.field.clone(), 2 * gens * width, images).expect("images fit");
    let (kernel, _) = kernel_image(&f);
    Ok(kernel.basis().first().cloned())
}

/// Degrees of minimal generators and relations of `M` as a one-sided module,
/// as far as the truncation allows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearityReport {
    /// Highest degree of `M` inspected; violations above it are invisible.
    pub checked_up_to: usize,
    pub left_generator_degrees: Vec<usize>,
    pub left_relation_degrees: Vec<usize>,
    pub right_generator_degrees: Vec<usize>,
    pub right_relation_degrees: Vec<usize>,
}

impl LinearityReport {
    /// Generators only in degree 0 and relations only in degree 1.
    pub fn is_linear(&self) -> bool {
        let ok = |g: &[usize], r: &[usize]| g.iter().all(|&d| d == 0) && r.iter().all(|&d| d == 1);
        ok(&self.left_generator_degrees, &self.left_relation_degrees)
            && ok(&self.right_generator_degrees, &self.right_relation_degrees)
    }
}

/// Minimal generator and relation degrees of `M` on each side.
pub fn linearity_check<F: Field>(t: &TruncatedTriple<F>) -> LinearityReport {
    let (lg, lr) = one_sided_presentation(t, true);
    let (rg, rr) = one_sided_presentation(t, false);
    LinearityReport {
        checked_up_to: t.m.top(),
        left_generator_degrees: lg,
        left_relation_degrees: lr,
        right_generator_degrees: rg,
        right_relation_degrees: rr,
    }
}

/// For the free module `A ⊗_O M_0 → M` (or `M_0 ⊗_O A → M`): the degrees
/// in which `M` needs new generators, and those in which the kernel needs
/// new relations beyond the `A_1`-multiples of lower ones.
fn one_sided_presentation<F: Field>(t: &TruncatedTriple<F>, left: bool) -> (Vec<usize>, Vec<usize>) {
    let field = &t.field;
    let (a, m) = (&t.a, &t.m);
    let gens = a.dims.get(1).copied().unwrap_or(0);
    let m0 = m.dims[0];
    let top = m.top().min(a.top());
    let mut gen_degrees = Vec::new();
    let mut rel_degrees = Vec::new();
    // prod[a * m0 + y] is a·y (left) or y·a (right) in M_c.
    let mut prod: Vec<SparseVec<F::Elem>> = (0..a.dims[0] * m0)
        .map(|i| {
            let (v, y) = (i / m0, i % m0);
            let end = if left { m.ends[0][y].0 } else { m.ends[0][y].1 };
            if end == v { vec![(y, field.one())] } else { Vec::new() }
        })
        .collect();
    let mut prev_kernel: Vec<SparseVec<F::Elem>> = Vec::new();
    for c in 1..=top {
        let a_act = |g: usize| if left { &a.left[c - 1][g] } else { &a.right[c - 1][g] };
        let m_act = |g: usize| if left { &m.left[c - 1][g] } else { &m.right[c - 1][g] };
        // Express every basis vector of A_c through generators times A_{c-1}.
        let mut e = Echelon::with_tracking(field.clone(), a.dims[c]);
        let mut from = Vec::new();
        for g in 0..gens {
            for x in 0..a.dims[c - 1] {
                e.insert(&a_act(g).image_of(x));
                from.push((g, x));
            }
        }
        let mut next = vec![Vec::new(); a.dims[c] * m0];
        for ac in 0..a.dims[c] {
            let Some(coeffs) = e.express(&[(ac, field.one())]) else {
                return (gen_degrees, rel_degrees);
            };
            for y in 0..m0 {
                let mut ws = Workspace::new(field.clone(), m.dims[c]);
                for (p, coef) in &coeffs {
                    let (g, x) = from[*p];
                    ws.add_scaled(&m_act(g).apply(&prod[x * m0 + y]), coef);
                }
                next[ac * m0 + y] = ws.drain();
            }
        }
        let mut image = Echelon::with_tracking(field.clone(), m.dims[c]);
        for v in &next {
            image.insert(v);
        }
        if image.rank() < m.dims[c] {
            gen_degrees.push(c);
        }
        let kernel = image.take_kernel();
        // A_1-multiples of the previous kernel, in the coordinates (a, y) of degree c.
        let mut lifted = Echelon::new(field.clone(), a.dims[c] * m0);
        for kv in &prev_kernel {
            for g in 0..gens {
                let mut ws = Workspace::new(field.clone(), a.dims[c] * m0);
                for (i, coef) in kv {
                    let (x, y) = (i / m0, i % m0);
                    for (ac, e2) in a_act(g).image_of(x) {
                        ws.add(ac * m0 + y, &field.mul(&e2, coef));
                    }
                }
                lifted.insert(&ws.drain());
            }
        }
        let mut full = lifted.clone();
        for kv in &kernel {
            full.insert(kv);
        }
        if full.rank() > lifted.rank() && c >= 2 {
            rel_degrees.push(c);
        } else if c == 1 && !kernel.is_empty() {
            rel_degrees.push(1);
        }
        prev_kernel = kernel;
        prod = next;
    }
    (gen_degrees, rel_degrees)
}
