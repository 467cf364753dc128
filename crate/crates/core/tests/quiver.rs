use homkoszul_core::field::{Field, Rationals};
use homkoszul_core::linalg::Subspace;
use homkoszul_core::quiver::{
    coker_functor, dualize_rel, ker_functor, shriek_presentation, Arrow, Quiver, RelPresentation,
};
use homkoszul_core::Error;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(v: i64) -> BigRational {
    Rationals.from_i64(v)
}

fn arrow(name: &str, src: usize, tgt: usize) -> Arrow {
    Arrow { name: name.into(), src, tgt }
}

fn xy() -> Quiver {
    Quiver::one_vertex(&["x", "y"]).unwrap()
}

fn monomials(quiver: Quiver, s: usize, words: &[&[usize]]) -> RelPresentation<Rationals> {
    let rels: Vec<_> = words.iter().map(|w| vec![(q(1), w.to_vec())]).collect();
    RelPresentation::from_words(Rationals, quiver, s, &rels).unwrap()
}

#[test]
fn enumerate_examples() {
    let b = xy().path_basis(3);
    assert_eq!(b.len(), 8);
    assert_eq!(b.format(0), "x x x");
    assert_eq!(b.format(7), "y y y");
    let single = Quiver::new(2, vec![arrow("a", 0, 1)]).unwrap();
    assert!(single.path_basis(2).is_empty());
    let cyc = Quiver::new(2, vec![arrow("a", 0, 1), arrow("b", 1, 0)]).unwrap();
    let b = cyc.path_basis(2);
    assert_eq!(b.words(), vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(cyc.path_basis(0).len(), 2);
}

#[test]
fn invalid_quivers() {
    assert!(matches!(Quiver::new(1, vec![arrow("a", 0, 1)]), Err(Error::InvalidQuiver(_))));
    assert!(matches!(Quiver::new(1, vec![arrow("a", 0, 0), arrow("a", 0, 0)]), Err(Error::InvalidQuiver(_))));
    assert!(matches!(Quiver::new(0, vec![]), Err(Error::InvalidQuiver(_))));
}

#[test]
fn block_violation_detected() {
    let cyc = Quiver::new(2, vec![arrow("a", 0, 1), arrow("b", 1, 0)]).unwrap();
    let rel = vec![vec![(q(1), vec![0, 1]), (q(1), vec![1, 0])]];
    let err = RelPresentation::from_words(Rationals, cyc, 2, &rel).unwrap_err();
    assert_eq!(err, Error::BlockViolation { row: 0 });
}

#[test]
fn dualize_examples() {
    let zero = monomials(xy(), 2, &[]);
    assert_eq!(dualize_rel(&zero).kernel().dim(), 4);
    let full = monomials(xy(), 2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
    assert_eq!(dualize_rel(&full).kernel().dim(), 0);
    let p = monomials(xy(), 2, &[&[0, 1], &[1, 0]]);
    let d = dualize_rel(&p);
    assert_eq!(d.corelation_dim(), 2);
    assert_eq!(d.quiver().arrows()[0].name, "x*");
    let expected = Subspace::span(Rationals, 4, &[vec![(0, q(1))], vec![(3, q(1))]]).unwrap();
    assert_eq!(d.kernel(), &expected);
    assert_eq!(shriek_presentation(&p).relations(), &expected);
}

#[test]
fn functor_round_trips() {
    let p = monomials(xy(), 2, &[&[0, 1]]);
    assert_eq!(ker_functor(&coker_functor(&p)), p);
    let y = Quiver::one_vertex(&["y"]).unwrap();
    let cube = monomials(y, 3, &[&[0, 0, 0]]);
    assert_eq!(coker_functor(&cube).corelation_dim(), 0);
    let z = monomials(xy(), 2, &[]);
    assert!(ker_functor(&coker_functor(&z)).relations().is_zero());
}

#[test]
fn shriek_on_quiver_reverses_paths() {
    // a: 1 -> 2, b: 2 -> 1, relation ab.
    let cyc = Quiver::new(2, vec![arrow("a", 0, 1), arrow("b", 1, 0)]).unwrap();
    let p = monomials(cyc, 2, &[&[0, 1]]);
    let d = shriek_presentation(&p);
    // perp(ab) = span(ba), which reverses to a* b* on the dual quiver.
    let basis = d.quiver().path_basis(2);
    assert_eq!(d.relations().dim(), 1);
    let row = &d.relations().basis()[0];
    assert_eq!(basis.format(row[0].0), "a* b*");
    assert_eq!(shriek_presentation(&d), p);
}

fn random_quiver() -> impl Strategy<Value = Quiver> {
    (1usize..4).prop_flat_map(|d| {
        prop::collection::vec((0..d, 0..d), 1..5).prop_map(move |ends| {
            let arrows = ends.iter().enumerate().map(|(i, (s, t))| arrow(&format!("a{i}"), *s, *t)).collect();
            Quiver::new(d, arrows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn counts_match_adjacency_powers(quiver in random_quiver(), n in 0usize..5) {
        let d = quiver.vertex_count();
        let mut adj = vec![vec![0usize; d]; d];
        for a in quiver.arrows() {
            adj[a.src][a.tgt] += 1;
        }
        let mut pow: Vec<Vec<usize>> = (0..d).map(|i| (0..d).map(|j| usize::from(i == j)).collect()).collect();
        for _ in 0..n {
            pow = (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| pow[i][k] * adj[k][j]).sum()).collect()).collect();
        }
        let basis = quiver.path_basis(n);
        let total: usize = pow.iter().flatten().sum();
        prop_assert_eq!(basis.len(), total);
        let mut seen = vec![vec![0usize; d]; d];
        for i in 0..basis.len() {
            let (s, t) = basis.endpoints(i);
            seen[s][t] += 1;
            if n > 0 {
                prop_assert_eq!(basis.rank(&basis.word(i)), Some(i));
            }
        }
        prop_assert_eq!(seen, pow);
        let words = basis.words();
        prop_assert!(n == 0 || words.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn shriek_is_involution_and_perp_dims_add(quiver in random_quiver(), picks in prop::collection::vec(any::<bool>(), 0..30)) {
        let s = 2;
        let basis = quiver.path_basis(s);
        prop_assume!(!basis.is_empty());
        // Random block-pure relations: sums of two paths with the same endpoints.
        let mut vecs = Vec::new();
        for (i, pick) in picks.iter().enumerate() {
            let a = i % basis.len();
            let b = (i * 7 + 3) % basis.len();
            if !*pick { continue; }
            if basis.endpoints(a) == basis.endpoints(b) && a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                vecs.push(vec![(lo, q(1)), (hi, q(2))]);
            } else {
                vecs.push(vec![(a, q(1))]);
            }
        }
        let p = RelPresentation::from_vectors(Rationals, quiver.clone(), s, &vecs).unwrap();
        let d = shriek_presentation(&p);
        prop_assert_eq!(d.relations().dim() + p.relations().dim(), basis.len());
        prop_assert_eq!(shriek_presentation(&d), p.clone());
        prop_assert_eq!(ker_functor(&dualize_rel(&p)), d);
    }
}
