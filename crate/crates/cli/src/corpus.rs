//! Seeded random presentations.

use homkoszul_core::field::{Field, FieldKind};
use homkoszul_core::quiver::{Arrow, Quiver, RelPresentation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::document::PresentationDocument;
use crate::error::Result;
use crate::with_field;

/// Inclusive ranges and biases for [`random_corpus`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusParams {
    pub s: (usize, usize),
    pub arrows: (usize, usize),
    pub relations: (usize, usize),
    pub vertices: (usize, usize),
    /// Probability that a document has only monomial relations.
    pub monomial_bias: f64,
    /// Entries of relation matrices are drawn from `-coef_bound..=coef_bound`.
    pub coef_bound: i64,
    #[serde(serialize_with = "serialize_kind")]
    pub field: FieldKind,
}

fn serialize_kind<S: serde::Serializer>(k: &FieldKind, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&k.to_string())
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            s: (2, 3),
            arrows: (2, 3),
            relations: (1, 3),
            vertices: (1, 1),
            monomial_bias: 0.25,
            coef_bound: 2,
            field: FieldKind::Prime(32003),
        }
    }
}

const NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

fn arrow_name(i: usize) -> String {
    NAMES.get(i).map_or_else(|| format!("a{}", i + 1), |n| n.to_string())
}

/// `count` documents, deterministic in `seed`. Relation spaces are row spaces
/// of random small-integer matrices, each row supported on one endpoint block.
pub fn random_corpus(seed: u64, count: usize, params: &CorpusParams) -> Result<Vec<PresentationDocument>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    with_field!(params.field, |f| (0..count).map(|_| random_document(&mut rng, &f, params)).collect())
}

fn pick(rng: &mut ChaCha8Rng, (lo, hi): (usize, usize)) -> usize {
    rng.gen_range(lo..=hi.max(lo))
}

fn random_quiver(rng: &mut ChaCha8Rng, params: &CorpusParams) -> Quiver {
    let d = pick(rng, params.vertices).max(1);
    let m = pick(rng, params.arrows);
    let arrows = (0..m)
        .map(|i| Arrow { name: arrow_name(i), src: rng.gen_range(0..d), tgt: rng.gen_range(0..d) })
        .collect();
    Quiver::new(d, arrows).expect("generated quiver is valid")
}

fn random_document<F: Field>(rng: &mut ChaCha8Rng, field: &F, params: &CorpusParams) -> Result<PresentationDocument> {
    let quiver = random_quiver(rng, params);
    let s = pick(rng, params.s).max(2);
    let r = pick(rng, params.relations);
    let basis = quiver.path_basis(s);
    let n = basis.len();
    let mut rows = Vec::new();
    if n > 0 && r > 0 {
        if rng.gen_bool(params.monomial_bias.clamp(0.0, 1.0)) {
            let mut cols: Vec<usize> = (0..n).collect();
            cols.shuffle(rng);
            rows.extend(cols.into_iter().take(r).map(|c| vec![(c, field.one())]));
        } else {
            let mut blocks: Vec<(usize, usize)> = (0..n).map(|c| basis.endpoints(c)).collect();
            blocks.sort_unstable();
            blocks.dedup();
            for _ in 0..r {
                let block = blocks[rng.gen_range(0..blocks.len())];
                let cols: Vec<usize> = (0..n).filter(|&c| basis.endpoints(c) == block).collect();
                let row = loop {
                    let row: Vec<_> = cols
                        .iter()
                        .filter_map(|&c| {
                            let v = field.from_i64(rng.gen_range(-params.coef_bound.max(1)..=params.coef_bound.max(1)));
                            (rng.gen_bool(0.5) && !field.is_zero(&v)).then_some((c, v))
                        })
                        .collect();
                    if !row.is_empty() {
                        break row;
                    }
                };
                rows.push(row);
            }
        }
    }
    let p = RelPresentation::from_vectors(field.clone(), quiver, s, &rows)?;
    Ok(PresentationDocument::from_presentation(&p))
}
