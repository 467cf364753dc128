mod common;

use std::sync::Arc;

use common::*;
use homkoszul_core::algebra::GradedAlgebraView;
use homkoszul_core::field::{Field, PrimeField, Rationals};
use homkoszul_core::linalg::{LinearMap, Subspace};
use homkoszul_core::quiver::{Arrow, Quiver, RelPresentation};
use homkoszul_core::triples::*;
use homkoszul_core::{Error, Limits};

/// `dim (M^{⊗k})_i` for `M = Λ^{(s,1)}` counted as paths of length `si+k`
/// modulo the relation windows that fit inside one factor for some way of
/// splitting the word into `k` factors of lengths `s j_r + 1`.
fn tensor_dim_oracle<F: Field>(a: &GradedAlgebraView<F>, k: usize, i: usize) -> usize {
    let s = a.s();
    let len = s * i + k;
    let rule = Arc::new(move |p: usize| {
        // Greedy: push every cut as far left as allowed.
        let mut prev = 0usize;
        for r in 1..k {
            let mut j = prev;
            loop {
                if j > i {
                    return false;
                }
                let c = s * j + r;
                if c <= p || c >= p + s {
                    break;
                }
                j += 1;
            }
            prev = j;
        }
        p + s <= len
    });
    a.window_tower(rule).level(len).unwrap().dim()
}

fn gf() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn free<F: Field>(field: F, letters: &str, s: usize) -> RelPresentation<F> {
    monomial(field, letters, s, &[])
}

fn zero_phi<E>() -> impl FnMut(usize, &[usize]) -> homkoszul_core::Result<Vec<(usize, E)>> {
    |_, _| Ok(Vec::new())
}

#[test]
fn nilpotent_cube_triple_vanishes() {
    let a = view(monomial(Rationals, "y", 3, &["yyy"]));
    let t = triple_of(&a, 7).unwrap();
    assert_eq!(t.a_dims(), &[1, 0, 0]);
    assert_eq!(t.m_dims(), &[1, 0, 0]);
    assert_eq!(t.phi()[0].rank(), 0);
    let report = triple_axioms_check(&t).unwrap();
    assert!(report.passed());
    assert!(report.computed() > 0);
}

#[test]
fn two_cubes_have_six_dimensional_a1() {
    let a = view(monomial(Rationals, "ab", 3, &["aaa", "bbb"]));
    let t = triple_of(&a, 3).unwrap();
    assert_eq!(t.a_dims()[1], 6);
}

#[test]
fn free_one_letter_triple_is_polynomial() {
    let a = view(free(Rationals, "x", 2));
    let t = triple_of(&a, 9).unwrap();
    assert!(t.a_dims().iter().all(|&d| d == 1));
    assert!(t.m_dims().iter().all(|&d| d == 1));
    assert_eq!(trivial_extension_dims(&t), vec![1; 10]);
}

#[test]
fn tensor_powers_match_window_oracle() {
    let cases = [
        monomial(gf(), "xy", 3, &["xyy"]),
        presentation(gf(), "xy", 2, &[&[(1, "xy"), (-1, "yx")]]),
        presentation(gf(), "xyz", 2, &[&[(1, "xy"), (2, "zz")], &[(1, "yx")]]),
        monomial(gf(), "ab", 3, &["aba", "bab"]),
    ];
    for p in cases {
        let a = view(p);
        let s = a.s();
        let t = triple_of(&a, 2 * s + 1).unwrap();
        for k in 1..=s {
            for i in 0..=1 {
                if let Some(d) = t.tensor_power_dim(k, i) {
                    assert_eq!(d, tensor_dim_oracle(&a, k, i), "k={k} i={i}");
                }
            }
        }
    }
}

#[test]
fn veronese_triples_satisfy_the_axioms() {
    let cases = [
        monomial(Rationals, "xy", 3, &["xyy"]),
        presentation(Rationals, "xy", 2, &[&[(1, "xy"), (-1, "yx")]]),
        presentation(Rationals, "xy", 2, &[&[(1, "xx"), (1, "yy")]]),
        monomial(Rationals, "ab", 3, &["aba", "bab"]),
        monomial(Rationals, "xy", 2, &["xy", "yx"]),
    ];
    for p in cases {
        let a = view(p);
        let t = triple_of(&a, 2 * a.s() + 1).unwrap();
        let report = triple_axioms_check(&t).unwrap();
        assert!(report.passed(), "{report:?}");
        for axiom in 1..=4 {
            assert_eq!(report.outcome(axiom, 0), Some(AxiomOutcome::Pass));
        }
        assert!(linearity_check(&t).is_linear());
    }
}

#[test]
fn quiver_triple_satisfies_the_axioms() {
    let arrows = vec![
        Arrow { name: "a".into(), src: 0, tgt: 1 },
        Arrow { name: "b".into(), src: 1, tgt: 0 },
        Arrow { name: "c".into(), src: 0, tgt: 0 },
    ];
    let q = Quiver::new(2, arrows).unwrap();
    let f = Rationals;
    let rels = vec![vec![(f.one(), vec![0, 1]), (f.from_i64(-1), vec![2, 2])], vec![(f.one(), vec![1, 0])]];
    let p = RelPresentation::from_words(f, q, 2, &rels).unwrap();
    let a = view(p.clone());
    let t = triple_of(&a, 5).unwrap();
    assert!(triple_axioms_check(&t).unwrap().passed());
    assert_eq!(g_functor(&t).unwrap().relations(), p.relations());
}

#[test]
fn zero_phi_with_nonzero_a1_fails_the_image_axiom() {
    let a = view(free(Rationals, "x", 2));
    let ap = GradedPart::from_algebra(&a, 2, 0, 2).unwrap();
    let mp = GradedPart::from_algebra(&a, 2, 1, 2).unwrap();
    let t = TruncatedTriple::from_parts(Rationals, 2, 1, ap, mp, vec!["x".into()], Limits::default(), zero_phi())
        .unwrap();
    let report = triple_axioms_check(&t).unwrap();
    assert_eq!(report.outcome(1, 0), Some(AxiomOutcome::Fail));
    assert!(!report.passed());
}

#[test]
fn degree_beyond_truncation_is_uncomputable() {
    let a = view(monomial(Rationals, "xy", 3, &["xyy"]));
    let t = triple_of(&a, 4).unwrap();
    let report = triple_axioms_check(&t).unwrap();
    assert_eq!(report.outcome(1, 0), Some(AxiomOutcome::Pass));
    assert_eq!(report.outcome(4, 0), Some(AxiomOutcome::Uncomputable));
    assert_eq!(report.outcome(2, 1), Some(AxiomOutcome::Uncomputable));
}

#[test]
fn splitting_summand_dimensions() {
    let a = view(monomial(Rationals, "xy", 3, &["xyy"]));
    assert_eq!(splitting_summand(&triple_of(&a, 7).unwrap()).unwrap(), vec![1, 0]);
    let a = view(free(Rationals, "xy", 3));
    assert_eq!(splitting_summand(&triple_of(&a, 7).unwrap()).unwrap(), vec![0, 0]);
    // The triple of the dual of k<x_1..x_m, y>/(y^s) has S of dimension (m+1)^s - 1.
    for (letters, s) in [("y", 3), ("xy", 3), ("xyz", 3), ("xy", 4)] {
        let m1 = letters.len();
        let word: String = "y".repeat(s);
        let a = view(monomial(gf(), letters, s, &[&word]));
        let t = triple_of(&a.dual_algebra(), s + 1).unwrap();
        assert_eq!(splitting_summand(&t).unwrap()[0], m1.pow(s as u32) - 1);
    }
}

#[test]
fn splitting_violation_is_reported() {
    // phi = 0 on the free algebra leaves a kernel in positive degree.
    let a = view(free(Rationals, "x", 2));
    let ap = GradedPart::from_algebra(&a, 2, 0, 2).unwrap();
    let mp = GradedPart::from_algebra(&a, 2, 1, 1).unwrap();
    let t = TruncatedTriple::from_parts(Rationals, 2, 1, ap, mp, vec!["x".into()], Limits::default(), zero_phi())
        .unwrap();
    assert!(matches!(splitting_summand(&t), Err(Error::SplittingViolation { degree: 1, dim: 1 })));
}

/// The triple `(A, A, 0)` with `A` given by quadratic relations.
fn quadratic_triple(p: RelPresentation<Rationals>) -> TruncatedTriple<Rationals> {
    let a = view(p);
    let ap = GradedPart::from_algebra(&a, 1, 0, 3).unwrap();
    let mp = GradedPart::from_algebra(&a, 1, 0, 2).unwrap();
    TruncatedTriple::from_parts(Rationals, 2, 1, ap, mp, vec!["e".into()], Limits::default(), zero_phi()).unwrap()
}

#[test]
fn degree_zero_summand_witnesses() {
    let t = quadratic_triple(monomial(Rationals, "xy", 2, &["xx", "xy", "yx"]));
    assert_eq!(has_degree_zero_summand(&t).unwrap(), Some(vec![(0, Rationals.one())]));
    let t = quadratic_triple(monomial(Rationals, "xy", 2, &["xy", "yx"]));
    assert_eq!(has_degree_zero_summand(&t).unwrap(), None);
    let t = quadratic_triple(free(Rationals, "x", 2));
    assert_eq!(has_degree_zero_summand(&t).unwrap(), None);
}

#[test]
fn g_functor_recovers_relations() {
    let cases = [
        monomial(Rationals, "xy", 3, &["xyy"]),
        presentation(Rationals, "xy", 2, &[&[(1, "xy"), (-1, "yx")]]),
        presentation(Rationals, "xyz", 2, &[&[(2, "xy"), (3, "zz")], &[(1, "yx"), (-1, "xz")]]),
        monomial(Rationals, "xyz", 3, &["yyy"]),
        free(Rationals, "xy", 3),
    ];
    for p in cases {
        let t = triple_of(&view(p.clone()), p.s() + 1).unwrap();
        let g = g_functor(&t).unwrap();
        assert_eq!(g.relations(), p.relations());
        assert_eq!(g.quiver(), p.quiver());
    }
}

#[test]
fn g_functor_of_scalar_triple_is_truncated_polynomial() {
    for s in 2..=4 {
        let field = Rationals;
        let ap = GradedPart {
            dims: vec![1, 0],
            ends: vec![vec![(0, 0)], vec![]],
            left: vec![vec![]],
            right: vec![vec![]],
        };
        let mp = GradedPart { dims: vec![1], ends: vec![vec![(0, 0)]], left: vec![], right: vec![] };
        let t = TruncatedTriple::from_parts(field, s, 1, ap, mp, vec!["y".into()], Limits::default(), zero_phi())
            .unwrap();
        let g = g_functor(&t).unwrap();
        assert_eq!(g.relations(), &Subspace::full(field, 1));
        assert_eq!(g.quiver().arrows()[0].name, "y");
    }
}

#[test]
fn shriek_dimensions_follow_corelations() {
    let p = monomial(Rationals, "xy", 3, &["xyy"]);
    let a = view(p);
    let t = triple_of(&a, 6).unwrap();
    let sh = triple_shriek(&t).unwrap();
    let oracle: Vec<usize> = (0..=2).map(|i| a.corelation_component(3 * i).unwrap().dim()).collect();
    assert_eq!(sh.a_dims(), oracle.as_slice());
    assert_eq!(sh.a_dims(), &[1, 1, 0]);
    let back = triple_shriek(&sh).unwrap();
    assert_eq!(back.a_dims(), t.a_dims());
    assert_eq!(back.m_dims(), t.m_dims());

    let t = triple_of(&view(free(Rationals, "xy", 3)), 4).unwrap();
    assert_eq!(triple_shriek(&t).unwrap().a_dims()[1], 0);
}

#[test]
fn trivial_extension_interleaves() {
    let a = view(monomial(Rationals, "xzy", 3, &["yyy"]));
    let t = triple_of(&a, 4).unwrap();
    assert_eq!(trivial_extension_dims(&t)[..3], [1, 3, 26]);
    let zero = GradedPart::zero(&Rationals, 1, 1);
    let b = view(free(Rationals, "x", 2));
    let ap = GradedPart::from_algebra(&b, 2, 0, 2).unwrap();
    let t = TruncatedTriple::from_parts(Rationals, 2, 1, ap, zero, vec![], Limits::default(), zero_phi());
    // M_0 = 0 cannot generate anything, but the zero module is still accepted.
    let t = t.unwrap();
    assert_eq!(trivial_extension_dims(&t), vec![1, 0, 1, 0, 1]);
}

#[test]
fn phi_is_the_multiplication_map() {
    let a = view(presentation(Rationals, "xy", 2, &[&[(1, "xy"), (-1, "yx")]]));
    let t = triple_of(&a, 5).unwrap();
    // Degree 0: U ⊗ U → Λ_2 is the quotient by R, so rank = 4 - 1.
    let f: &LinearMap<Rationals> = &t.phi()[0];
    assert_eq!((f.domain_dim(), f.rank()), (4, 3));
}
