//! Command execution.

use std::time::Instant;

use homkoszul_core::algebra::GradedAlgebraView;
use homkoszul_core::field::{Field, FieldKind};
use homkoszul_core::hilbert::{bs_identity_residual, hilbert, HilbertSeries};
use homkoszul_core::koszul::{
    berger_cell, extra_condition, extra_condition_range, one_relation_koszul, s_koszul_verdict, ConditionKind,
    KoszulVerdict, OneRelationClass,
};
use homkoszul_core::linalg::SparseVec;
use homkoszul_core::quiver::{shriek_presentation, Quiver, RelPresentation};
use homkoszul_core::triples::{
    g_functor, has_degree_zero_summand, linearity_check, splitting_summand, trivial_extension_dims,
    triple_axioms_check, triple_of, TruncatedTriple,
};
use homkoszul_core::{Error as CoreError, Limits};
use serde_json::{json, Value};

use crate::document::PresentationDocument;
use crate::error::{CliError, Result};
use crate::report::{sha256_hex, CheckResult, Report, RESOURCE_BOUND};
use crate::with_field;

pub const MAX_DIM_ENV: &str = "HOMKOSZUL_MAX_DIM";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Dual,
    Triple,
    Hilbert { terms: usize },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Dual => "dual",
            Command::Triple => "triple",
            Command::Hilbert { .. } => "hilbert",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    /// Homological bound `H`.
    pub hom_bound: usize,
    /// Internal degree bound `N`; `4s` when absent.
    pub max_deg: Option<usize>,
    /// Overrides the document's field.
    pub field: Option<FieldKind>,
    pub limits: Limits,
    /// Report `wall_ms = 0` so that reruns are byte-identical.
    pub no_timing: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { hom_bound: 6, max_deg: None, field: None, limits: Limits::default(), no_timing: false }
    }
}

/// Limits from `HOMKOSZUL_MAX_DIM`, or the default cap.
pub fn limits_from_env() -> Result<Limits> {
    match std::env::var(MAX_DIM_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(|max_dim| Limits { max_dim })
            .map_err(|_| CliError::BadArgument(format!("{MAX_DIM_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(Limits::default()),
    }
}

pub fn run_report(doc: &PresentationDocument, command: Command, bounds: &Bounds) -> Result<Report> {
    let start = Instant::now();
    let kind = match bounds.field {
        Some(k) => k,
        None => doc.field_kind()?,
    };
    let canonical = doc.canonical(Some(kind))?;
    let n = bounds.max_deg.unwrap_or(4 * canonical.s);
    let mut bound_data = json!({
        "hom_bound": bounds.hom_bound,
        "max_deg": n,
        "max_dim": bounds.limits.max_dim,
        "field": kind.to_string(),
    });
    if let Command::Hilbert { terms } = command {
        bound_data["terms"] = json!(terms);
    }
    let results = with_field!(kind, |f| {
        let view = GradedAlgebraView::with_limits(canonical.presentation(f)?, bounds.limits);
        match command {
            Command::Check => check(&view, bounds.hom_bound, n)?,
            Command::Dual => dual(&view),
            Command::Triple => triple(&view, n)?,
            Command::Hilbert { terms } => hilbert_terms(&view, terms)?,
        }
    });
    let wall_ms = if bounds.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    Ok(Report { input_hash: sha256_hex(&canonical.to_json()), command: command.name().into(), bounds: bound_data, results, wall_ms })
}

/// Runs one check, turning an exceeded dimension cap into a result entry.
fn guard(name: &str, f: impl FnOnce() -> homkoszul_core::Result<(String, Value)>) -> Result<CheckResult> {
    match f() {
        Ok((status, data)) => Ok(CheckResult::new(name, &status, data)),
        Err(CoreError::ResourceBound { dim, cap }) => Ok(CheckResult::new(name, RESOURCE_BOUND, json!({ "dim": dim, "cap": cap }))),
        Err(e) => Err(e.into()),
    }
}

fn vector_json<F: Field>(field: &F, v: &SparseVec<F::Elem>) -> Value {
    Value::Array(v.iter().map(|(i, c)| json!([i, field.format_elem(c)])).collect())
}

fn word_names(q: &Quiver, w: &[usize]) -> Vec<String> {
    w.iter().map(|&a| q.arrows()[a].name.clone()).collect()
}

fn holds(b: bool) -> String {
    if b { "holds" } else { "fails" }.into()
}

fn series_json(h: &HilbertSeries) -> Value {
    json!({ "totals": h.totals(), "blocks": h.coeffs() })
}

fn verdict_json<F: Field>(field: &F, v: &KoszulVerdict<F::Elem>) -> Value {
    let witness = v.witness.as_ref().map(|w| {
        json!({
            "homological_index": w.n,
            "degree": w.degree,
            "cycle": w.description,
            "vector": vector_json(field, &w.vector),
        })
    });
    json!({
        "homological_bound": v.homological_bound,
        "degree_bound": v.degree_bound,
        "witness": witness,
        "reason": v.reason,
    })
}

fn check<F: Field>(view: &GradedAlgebraView<F>, h: usize, n: usize) -> Result<Vec<CheckResult>> {
    let field = view.field().clone();
    let s = view.s();
    let mut out = vec![guard("verdict", || {
        let v = s_koszul_verdict(view, h, n)?;
        Ok((v.status.as_str().into(), verdict_json(&field, &v)))
    })?];
    out.push(guard("extra_condition", || {
        let ec = extra_condition(view)?;
        let range: Vec<Value> =
            extra_condition_range(view)?.into_iter().map(|(d, ok)| json!({ "degree": d, "holds": ok })).collect();
        Ok((holds(ec), json!({ "degree": 2 * s - 1, "range": range })))
    })?);
    out.push(guard("distributivity", || {
        let mut cells = Vec::new();
        let mut all = true;
        for hn in 0..=1 {
            for k in 0..s {
                if (hn + 1) * s + k > n {
                    continue;
                }
                let c = berger_cell(view, ConditionKind::Distributivity, hn, k)?;
                all &= c.holds();
                cells.push(json!({ "n": c.n, "k": c.k, "first": c.first, "second": c.second }));
            }
        }
        Ok((holds(all), json!({ "cells": cells })))
    })?);
    out.push(guard("bs_identity_residual", || {
        let r = bs_identity_residual(view, n)?;
        let first = r.first_nonzero().map(|(d, b)| json!({ "degree": d, "block": b }));
        let status = if first.is_none() { "zero" } else { "nonzero" };
        Ok((status.into(), json!({ "truncation": n, "first_nonzero": first })))
    })?);
    let p = view.presentation();
    if p.quiver().vertex_count() == 1 && p.relations().dim() == 1 {
        out.push(guard("one_relation", || {
            let class = one_relation_koszul(p, h, n)?;
            let q = p.quiver();
            let data = match &class {
                OneRelationClass::PowerCase { g } => {
                    let g: serde_json::Map<String, Value> =
                        q.arrows().iter().zip(g).map(|(a, c)| (a.name.clone(), json!(field.format_elem(c)))).collect();
                    json!({ "g": g })
                }
                OneRelationClass::NoOverlap => json!({}),
                OneRelationClass::NotKoszul { g, h1 } => json!({
                    "g": word_names(q, g),
                    "h1": word_names(q, h1),
                    "witness": format!("f ⊗ {}", word_names(q, h1).concat()),
                }),
                OneRelationClass::Verdict(v) => json!({ "verdict": v.status.as_str(), "detail": verdict_json(&field, v) }),
            };
            Ok((class.label().into(), data))
        })?);
    }
    Ok(out)
}

fn dual<F: Field>(view: &GradedAlgebraView<F>) -> Vec<CheckResult> {
    let d = shriek_presentation(view.presentation());
    let doc = serde_json::to_value(PresentationDocument::from_presentation(&d)).expect("documents serialize");
    vec![CheckResult::new("dual", "ok", json!({ "document": doc }))]
}

fn hilbert_terms<F: Field>(view: &GradedAlgebraView<F>, terms: usize) -> Result<Vec<CheckResult>> {
    if terms == 0 {
        return Err(CliError::BadArgument("--terms must be positive".into()));
    }
    Ok(vec![guard("hilbert", || Ok(("ok".into(), series_json(&hilbert(view, terms - 1)?))))?])
}

fn triple<F: Field>(view: &GradedAlgebraView<F>, n: usize) -> Result<Vec<CheckResult>> {
    let t = match triple_of(view, n) {
        Ok(t) => t,
        Err(CoreError::ResourceBound { dim, cap }) => {
            return Ok(vec![CheckResult::new("triple", RESOURCE_BOUND, json!({ "dim": dim, "cap": cap }))]);
        }
        Err(e) => return Err(e.into()),
    };
    let field = view.field().clone();
    let mut out = vec![CheckResult::new(
        "dims",
        "ok",
        json!({ "a": t.a_dims(), "m": t.m_dims(), "trivial_extension": trivial_extension_dims(&t) }),
    )];
    out.push(guard("axioms", || {
        let r = triple_axioms_check(&t)?;
        let cells: Vec<Value> = r
            .cells
            .iter()
            .map(|c| json!({ "axiom": c.axiom, "degree": c.degree, "outcome": c.outcome.as_str() }))
            .collect();
        let status = if r.passed() { "pass" } else { "fail" };
        Ok((status.into(), json!({ "computed": r.computed(), "cells": cells })))
    })?);
    out.push(guard("splitting_summand", || match splitting_summand(&t) {
        Ok(dims) => Ok(("split".into(), json!({ "kernel_dims": dims }))),
        Err(CoreError::SplittingViolation { degree, dim }) => Ok(("violated".into(), json!({ "degree": degree, "dim": dim }))),
        Err(e) => Err(e),
    })?);
    out.push(guard("degree_zero_summand", || match has_degree_zero_summand(&t) {
        Ok(Some(w)) => Ok(("present".into(), json!({ "witness": named_vector(view, &t, &field, &w)? }))),
        Ok(None) => Ok(("absent".into(), json!({}))),
        Err(CoreError::Precondition(why)) => Ok(("uncomputable".into(), json!({ "reason": why }))),
        Err(e) => Err(e),
    })?);
    out.push(guard("g_round_trip", || {
        let g = g_functor(&t)?;
        let status = if same_presentation(&g, view.presentation()) { "equal" } else { "differs" };
        Ok((status.into(), json!({ "relation_dim": g.relations().dim() })))
    })?);
    let lin = linearity_check(&t);
    out.push(CheckResult::new(
        "linearity",
        if lin.is_linear() { "linear" } else { "not_linear" },
        json!({
            "checked_up_to": lin.checked_up_to,
            "left_generator_degrees": lin.left_generator_degrees,
            "left_relation_degrees": lin.left_relation_degrees,
            "right_generator_degrees": lin.right_generator_degrees,
            "right_relation_degrees": lin.right_relation_degrees,
        }),
    ));
    Ok(out)
}

/// An element of `A_1 = Λ_s` as `[[coef, word]]` in normal words.
fn named_vector<F: Field>(
    view: &GradedAlgebraView<F>,
    t: &TruncatedTriple<F>,
    field: &F,
    v: &SparseVec<F::Elem>,
) -> homkoszul_core::Result<Value> {
    let q = view.quiver();
    v.iter()
        .map(|(i, c)| Ok(json!([field.format_elem(c), word_names(q, &view.normal_word(t.s(), *i)?).concat()])))
        .collect::<homkoszul_core::Result<Vec<_>>>()
        .map(Value::Array)
}

fn same_presentation<F: Field>(a: &RelPresentation<F>, b: &RelPresentation<F>) -> bool {
    a.s() == b.s() && a.quiver() == b.quiver() && a.relations() == b.relations()
}

/// A report whose single result lists the generated documents.
pub fn run_corpus(seed: u64, count: usize, params: &crate::corpus::CorpusParams, no_timing: bool) -> Result<Report> {
    let start = Instant::now();
    let docs = crate::corpus::random_corpus(seed, count, params)?;
    let bounds = json!({ "seed": seed, "count": count, "params": params });
    let data = json!({ "documents": docs });
    let wall_ms = if no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    Ok(Report {
        input_hash: sha256_hex(&bounds.to_string()),
        command: "corpus".into(),
        bounds,
        results: vec![CheckResult::new("corpus", "ok", data)],
        wall_ms,
    })
}
