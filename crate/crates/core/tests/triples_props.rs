mod common;

use common::*;
use homkoszul_core::algebra::GradedAlgebraView;
use homkoszul_core::field::{Field, PrimeField};
use homkoszul_core::quiver::RelPresentation;
use homkoszul_core::triples::*;
use proptest::prelude::*;

fn gf7() -> PrimeField {
    PrimeField::new(7).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn veronese_triple_axioms_hold(p in random_presentation(gf7())) {
        let a = GradedAlgebraView::new(p.clone());
        let t = triple_of(&a, 2 * p.s() + 1).unwrap();
        let report = triple_axioms_check(&t).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
        prop_assert!(linearity_check(&t).is_linear());
    }

    #[test]
    fn g_after_f_is_identity(p in random_presentation(gf7())) {
        let a = GradedAlgebraView::new(p.clone());
        let t = triple_of(&a, 2 * p.s()).unwrap();
        let g = g_functor(&t).unwrap();
        prop_assert_eq!(g.relations(), p.relations());
        let b = GradedAlgebraView::new(g);
        prop_assert_eq!(b.dims(2 * p.s()).unwrap(), a.dims(2 * p.s()).unwrap());
    }

    #[test]
    fn splitting_lives_in_degree_zero(p in random_presentation(gf7())) {
        let a = GradedAlgebraView::new(p.clone());
        let t = triple_of(&a, 2 * p.s() + 1).unwrap();
        let dims = splitting_summand(&t).unwrap();
        prop_assert_eq!(dims[0], t.tensor_power_dim(p.s(), 0).unwrap() - t.a_dims()[1]);
    }

    #[test]
    fn re_presented_algebra_gives_the_same_triple(p in random_presentation(gf7()), shift in 1i64..6) {
        // Respan the relations by a unitriangular change of basis.
        let f = *p.field();
        let rows = p.relations().basis().to_vec();
        let mut mixed = rows.clone();
        for i in 1..mixed.len() {
            let prev = mixed[i - 1].clone();
            let mut ws = homkoszul_core::linalg::Workspace::new(f, p.quiver().path_count(p.s()));
            ws.add_scaled(&rows[i], &f.one());
            ws.add_scaled(&prev, &f.from_i64(shift));
            mixed[i] = ws.drain();
        }
        if mixed.iter().any(|r| r.is_empty()) {
            return Ok(());
        }
        let q = RelPresentation::from_vectors(f, p.quiver().clone(), p.s(), &mixed);
        let Ok(q) = q else { return Ok(()) };
        let (ta, tb) = (
            triple_of(&GradedAlgebraView::new(p.clone()), 2 * p.s()).unwrap(),
            triple_of(&GradedAlgebraView::new(q.clone()), 2 * p.s()).unwrap(),
        );
        if has_degree_zero_summand(&ta).map(|w| w.is_none()).unwrap_or(false) && ta.a() == tb.a() && ta.m() == tb.m() {
            prop_assert_eq!(p.relations(), q.relations());
        }
    }
}
