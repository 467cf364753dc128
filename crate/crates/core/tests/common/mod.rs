#![allow(dead_code)]

use homkoszul_core::algebra::GradedAlgebraView;
use homkoszul_core::field::Field;
use homkoszul_core::linalg::Subspace;
use homkoszul_core::quiver::{pad, Arrow, Quiver, RelPresentation};
use proptest::prelude::*;

/// Relations over a one-vertex quiver whose arrows are the characters of
/// `letters`; words are strings of those characters.
pub fn presentation<F: Field>(field: F, letters: &str, s: usize, rels: &[&[(i64, &str)]]) -> RelPresentation<F> {
    let names: Vec<String> = letters.chars().map(|c| c.to_string()).collect();
    let quiver = Quiver::one_vertex(&names).unwrap();
    let rows: Vec<Vec<(F::Elem, Vec<usize>)>> = rels
        .iter()
        .map(|terms| {
            terms
                .iter()
                .map(|(c, w)| (field.from_i64(*c), w.chars().map(|ch| letters.find(ch).unwrap()).collect()))
                .collect()
        })
        .collect();
    RelPresentation::from_words(field, quiver, s, &rows).unwrap()
}

pub fn monomial<F: Field>(field: F, letters: &str, s: usize, words: &[&str]) -> RelPresentation<F> {
    let rels: Vec<Vec<(i64, &str)>> = words.iter().map(|w| vec![(1, *w)]).collect();
    let refs: Vec<&[(i64, &str)]> = rels.iter().map(|r| r.as_slice()).collect();
    presentation(field, letters, s, &refs)
}

pub fn view<F: Field>(p: RelPresentation<F>) -> GradedAlgebraView<F> {
    GradedAlgebraView::new(p)
}

/// `I_n` computed straight from its spanning set `Σ U^i ⊗ R ⊗ U^j`.
pub fn ideal_oracle<F: Field>(p: &RelPresentation<F>, n: usize) -> Subspace<F> {
    let q = p.quiver();
    let s = p.s();
    let dim = q.path_count(n);
    let mut acc = Subspace::zero(p.field().clone(), dim);
    if n < s {
        return acc;
    }
    for i in 0..=n - s {
        acc = acc.sum(&pad(q, p.relations(), s, i, n - s - i)).unwrap();
    }
    acc
}

/// Number of words of length `n` over `m` letters avoiding every listed
/// factor, by enumeration.
pub fn avoiding_count(m: usize, n: usize, factors: &[Vec<usize>]) -> usize {
    let mut count = 0;
    let mut word = vec![0usize; n];
    loop {
        if !factors.iter().any(|f| word.windows(f.len()).any(|w| w == f.as_slice())) {
            count += 1;
        }
        let mut k = n;
        loop {
            if k == 0 {
                return count;
            }
            k -= 1;
            word[k] += 1;
            if word[k] < m {
                break;
            }
            word[k] = 0;
        }
    }
}

/// Random block-pure relations on a random small quiver.
pub fn random_presentation<F: Field>(field: F) -> impl Strategy<Value = RelPresentation<F>> {
    (1usize..3, 2usize..4, prop::collection::vec((0usize..2, 0usize..2), 2..4), any::<u64>()).prop_map(
        move |(d, s, ends, seed)| {
            let arrows = ends
                .iter()
                .enumerate()
                .map(|(i, (a, b))| Arrow { name: format!("a{i}"), src: a % d, tgt: b % d })
                .collect();
            let quiver = Quiver::new(d, arrows).unwrap();
            let basis = quiver.path_basis(s);
            let mut state = seed;
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) as usize
            };
            let mut vecs = Vec::new();
            if !basis.is_empty() {
                for _ in 0..next() % 4 {
                    let lead = next() % basis.len();
                    let block = basis.endpoints(lead);
                    let mut v = vec![(lead, field.from_i64((next() % 5) as i64 + 1))];
                    for other in 0..basis.len() {
                        if other != lead && basis.endpoints(other) == block && next() % 3 == 0 {
                            v.push((other, field.from_i64((next() % 7) as i64 - 3)));
                        }
                    }
                    v.retain(|(_, x)| !field.is_zero(x));
                    v.sort_by_key(|(c, _)| *c);
                    vecs.push(v);
                }
            }
            RelPresentation::from_vectors(field.clone(), quiver, s, &vecs).unwrap()
        },
    )
}

