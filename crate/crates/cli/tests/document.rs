use homkoszul::document::{ArrowSpec, Term};
use homkoszul::error::Location;
use homkoszul::{parse_presentation, random_corpus, CliError, CorpusParams, PresentationDocument};
use homkoszul_core::field::FieldKind;
use proptest::prelude::*;

fn doc(vertices: usize, arrows: &[(&str, usize, usize)], s: usize, relations: &[&[(&str, &[&str])]]) -> String {
    let d = PresentationDocument {
        version: 1,
        field: "QQ".into(),
        vertices,
        arrows: arrows.iter().map(|&(n, a, b)| ArrowSpec { name: n.into(), src: a, tgt: b }).collect(),
        s,
        relations: relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, p)| Term { coef: c.to_string(), path: p.iter().map(|x| x.to_string()).collect() })
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string(&d).unwrap()
}

const XY: &[(&str, usize, usize)] = &[("x", 1, 1), ("y", 1, 1)];

#[test]
fn parses_xyx() {
    let d = parse_presentation(&doc(1, XY, 3, &[&[("1", &["x", "y", "x"])]])).unwrap();
    assert_eq!((d.vertices, d.arrows.len(), d.s, d.relations.len()), (1, 2, 3, 1));
}

#[test]
fn input_errors() {
    let e = parse_presentation(&doc(1, XY, 3, &[&[("1", &["x", "y"])]])).unwrap_err();
    assert!(matches!(e, CliError::BadDegree { len: 2, s: 3, .. }), "{e}");
    let e = parse_presentation(&doc(2, &[("a", 1, 2)], 2, &[&[("1", &["a", "a"])]])).unwrap_err();
    assert!(matches!(e, CliError::BadEndpoint { at: Location { relation: 0, term: 0 }, .. }), "{e}");
    let e = parse_presentation(&doc(2, &[("a", 1, 2), ("b", 2, 1), ("c", 2, 2)], 2, &[&[("1", &["a", "b"]), ("1", &["b", "c"])]]))
        .unwrap_err();
    assert!(matches!(e, CliError::BadEndpoint { at: Location { relation: 0, term: 1 }, .. }), "{e}");
    for lit in ["0.5", "1e3", "x", "1/0", ""] {
        let e = parse_presentation(&doc(1, XY, 2, &[&[(lit, &["x", "y"])]])).unwrap_err();
        assert!(matches!(e, CliError::BadCoefficient { .. }), "{lit}: {e}");
    }
    let e = parse_presentation(&doc(1, &[("x", 1, 1), ("x", 1, 1)], 2, &[])).unwrap_err();
    assert!(matches!(e, CliError::DuplicateArrow { index: 2, .. }), "{e}");
    let e = parse_presentation(&doc(1, &[("x", 1, 2)], 2, &[])).unwrap_err();
    assert!(matches!(e, CliError::BadArrow { index: 1, .. }), "{e}");
    let e = parse_presentation(&doc(1, XY, 2, &[&[("1", &["x", "q"])]])).unwrap_err();
    assert!(matches!(e, CliError::UnknownArrow { .. }), "{e}");
    let e = parse_presentation("{\n  \"version\": 1,\n  \"field\": \"QQ\",\n  oops\n}").unwrap_err();
    assert!(matches!(e, CliError::Syntax { line: 4, .. }), "{e}");
    let e = parse_presentation(&doc(1, XY, 2, &[]).replace("\"QQ\"", "\"GF:12\"")).unwrap_err();
    assert!(matches!(e, CliError::BadField(_)), "{e}");
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn canonical_form_reduces_relations() {
    // 2xy + 2yx and 3xy + 3yx span one line; xx twice is a second.
    let text = doc(1, XY, 2, &[&[("2", &["x", "y"]), ("2", &["y", "x"])], &[("3", &["y", "x"]), ("3", &["x", "y"])], &[("1/2", &["x", "x"])]]);
    let c = parse_presentation(&text).unwrap().canonical(None).unwrap();
    let expect = doc(1, XY, 2, &[&[("1", &["x", "x"])], &[("1", &["x", "y"]), ("1", &["y", "x"])]]);
    assert_eq!(c, parse_presentation(&expect).unwrap());
    let p = c.canonical(Some(FieldKind::Prime(5))).unwrap();
    assert_eq!(p.field, "GF:5");
}

#[test]
fn corpus_is_deterministic_and_golden() {
    let params = CorpusParams::default();
    let a = random_corpus(0, 5, &params).unwrap();
    assert_eq!(a, random_corpus(0, 5, &params).unwrap());
    assert_ne!(a, random_corpus(1, 5, &params).unwrap());
    let golden: PresentationDocument = serde_json::from_str(include_str!("golden/corpus_seed0.json")).unwrap();
    assert_eq!(a[0], golden);
}

#[test]
fn corpus_parameters_are_respected() {
    let free = CorpusParams { relations: (0, 0), ..CorpusParams::default() };
    assert!(random_corpus(3, 20, &free).unwrap().iter().all(|d| d.relations.is_empty()));
    let mono = CorpusParams { s: (3, 3), arrows: (2, 2), relations: (1, 1), monomial_bias: 1.0, ..CorpusParams::default() };
    let docs = random_corpus(4, 20, &mono).unwrap();
    assert!(docs.iter().all(|d| d.s == 3 && d.arrows.len() == 2 && d.relations.len() == 1 && d.relations[0].len() == 1));
    let quivers = CorpusParams { vertices: (2, 3), arrows: (3, 5), ..CorpusParams::default() };
    for d in random_corpus(5, 20, &quivers).unwrap() {
        assert!((2..=3).contains(&d.vertices));
        parse_presentation(&d.to_json()).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_serialize_round_trip(seed in any::<u64>(), rational in any::<bool>(), vertices in 1usize..3) {
        let field = if rational { FieldKind::Rational } else { FieldKind::Prime(32003) };
        let params = CorpusParams { field, vertices: (1, vertices), ..CorpusParams::default() };
        let d = random_corpus(seed, 1, &params).unwrap().remove(0);
        let parsed = parse_presentation(&d.to_json()).unwrap();
        prop_assert_eq!(&parsed, &d);
        prop_assert_eq!(parsed.canonical(None).unwrap(), d);
    }
}
