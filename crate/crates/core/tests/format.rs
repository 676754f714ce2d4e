mod common;

use std::path::PathBuf;

use common::*;
use cymf::*;

fn cusp_file() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/examples/cusp.cla")
}

#[test]
fn shipped_desk_file_parses_and_validates() {
    let a = read_algebra(&cusp_file()).unwrap();
    assert_eq!(a.structure.space().names(), &["a", "b"]);
    assert!(check_jacobi(&a.structure, 4).passed());
    assert!(check_cyclic(&a.structure, &a.kappa, 4).passed());
}

#[test]
fn random_structures_round_trip() {
    for seed in 0..6 {
        let mut r = rng(seed);
        let (s, k) = sl2_s3_plus_contractible(&mut r);
        let text = write_algebra(&s, &k);
        let back = parse_algebra(&text).unwrap();
        assert_eq!(back.structure, s);
        assert_eq!(write_algebra(&back.structure, &back.kappa), text);
    }
}

#[test]
fn transferred_output_validates() {
    let mut r = rng(3);
    let (s, k) = dg_lie_12(&mut r, 4, 2);
    let c = build_contraction(&s, &k).unwrap();
    let t = transfer(&s, &k, &c, 5).unwrap();
    let back = parse_algebra(&write_algebra(&t.structure, &t.kappa)).unwrap();
    assert!(check_jacobi(&back.structure, 5).passed());
    assert!(check_cyclic(&back.structure, &back.kappa, 5).passed());
}

#[test]
fn diagnostics_carry_lines() {
    let text = std::fs::read_to_string(cusp_file()).unwrap();
    let cases = [
        (
            text.replace("output = { b = \"2\" }", "output = { a = \"2\" }"),
            Some(9),
        ),
        (text.replace("\"2\" }", "\"two\" }"), Some(12)),
        (
            text.replace("value = \"1\"", "value = \"1\"\nweight = 2"),
            Some(17),
        ),
        (text.replace("2 = [\"b\"]", "2 = [\"a\"]"), Some(7)),
    ];
    for (bad, line) in cases {
        match parse_algebra(&bad) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{bad}"),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }
}

#[test]
fn pipeline_on_the_desk_algebra() {
    let a = read_algebra(&cusp_file()).unwrap();
    let r = pipeline(&a, &PipelineOptions::default()).unwrap();
    assert_eq!(r.potential.poly().to_string(), "-1/3*x^3");
    assert_eq!((r.mu(), r.behrend.value()), (2, 2));
}

#[test]
fn pipeline_raises_the_order_when_needed() {
    // the massive example has f = x^4/8 with μ = 3; N = 2 cannot see it
    let mut s = LInftyStructure::new(
        GradedSpace::from_degrees(&[(1, &["e1", "e2"]), (2, &["f1", "f2"])]).unwrap(),
    );
    s.set_named(&["e2"], &[("f2", rat(1))]).unwrap();
    s.set_named(&["e1", "e1"], &[("f2", rat(1))]).unwrap();
    s.set_named(&["e1", "e2"], &[("f1", rat(1))]).unwrap();
    let space = s.space().clone();
    let mut k = CyclicPairing::new(&space, 3);
    k.set_named(&space, "e1", "f1", rat(1)).unwrap();
    k.set_named(&space, "e2", "f2", rat(1)).unwrap();
    let file = AlgebraFile {
        structure: s,
        kappa: k,
    };
    let opts = PipelineOptions {
        start_order: 2,
        ..Default::default()
    };
    let r = pipeline(&file, &opts).unwrap();
    assert_eq!(r.transferred.order, 4);
    assert_eq!((r.mu(), r.behrend.value()), (3, 3));
    let capped = PipelineOptions {
        start_order: 2,
        max_order: 3,
        ..Default::default()
    };
    assert!(matches!(pipeline(&file, &capped), Err(Error::Resource(_))));
}

#[test]
fn pipeline_refuses_invalid_input() {
    let mut a = read_algebra(&cusp_file()).unwrap();
    let space = a.structure.space().clone();
    a.kappa.set_named(&space, "a", "b", rat(0)).unwrap();
    assert!(matches!(
        pipeline(&a, &PipelineOptions::default()),
        Err(Error::Axiom(_))
    ));
}
