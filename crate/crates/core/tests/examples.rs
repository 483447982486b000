//! Worked examples with hand-derived expected values.

use kstate::classify::{homogeneous_by_blocks, classify};
use kstate::corpus::samples;
use kstate::decide::{analyse, census, CensusCounts};
use kstate::homology::Sign;
use kstate::*;
use num_bigint::BigInt;

fn diagram(pd: &str) -> Diagram {
    parse_pd(pd).unwrap()
}

#[test]
fn parse_examples() {
    let kink = diagram(samples::KINK);
    assert_eq!((kink.crossing_count(), kink.edge_count(), kink.faces().len()), (1, 2, 3));
    assert_eq!(kink.components().len(), 1);
    let t = diagram(samples::TREFOIL);
    assert_eq!((t.crossing_count(), t.edge_count(), t.faces().len(), t.components().len()), (3, 6, 5, 1));
    let h = diagram(samples::HOPF);
    assert_eq!(h.components().len(), 2);
    assert!(h.components().iter().all(|c| c.len() == 2));
    assert_eq!(parse_pd(""), Err(Error::EmptyDiagram));
}

#[test]
fn state_examples() {
    let t = diagram(samples::TREFOIL);
    assert_eq!(make_state(&t, StateSpec::Explicit("AAA")).unwrap().to_string(), "AAA");
    assert_eq!(make_state(&t, StateSpec::AllB).unwrap().to_string(), "BBB");
    assert_eq!(make_state(&t, StateSpec::Explicit("AB")), Err(Error::LengthMismatch { expected: 3, got: 2 }));
    assert!(seifert_state(&t).is_uniform());
    let fig8 = bundled_corpus().into_iter().find(|e| e.name == "4_1").unwrap().diagram;
    assert_eq!(smooth(&fig8, &seifert_state(&fig8)).unwrap().circle_count(), 3);
}

#[test]
fn figure_eight_seifert_state() {
    for d in [diagram(samples::FIGURE_EIGHT), bundled_corpus().into_iter().find(|e| e.name == "4_1").unwrap().diagram] {
        let s = seifert_state(&d);
        let a = analyse(&d, &s).unwrap();
        let r = classify(&a.smoothed);
        assert!(r.alternating && r.homogeneous);
        assert_eq!(a.verdict.verdict, Verdict::Fibered);
        assert_eq!(a.verdict.certificate.kind(), "SPANNING_TREE");
    }
}

#[test]
fn granny_seifert_state() {
    let d = diagram(samples::GRANNY);
    let s = seifert_state(&d);
    let a = analyse(&d, &s).unwrap();
    let r = classify(&a.smoothed);
    assert!(r.homogeneous && !r.alternating);
    assert!(homogeneous_by_blocks(&a.graph).unwrap());
    assert_eq!(a.verdict.verdict, Verdict::Fibered);
    let expected = LaurentPolynomial::from_coefficients(&[1, -2, 3, -2, 1]);
    assert_eq!(alexander_polynomial(&d).unwrap(), expected);
}

#[test]
fn granny_all_a_has_a_cut_vertex() {
    let d = diagram(samples::GRANNY);
    let a = analyse(&d, &make_state(&d, StateSpec::AllA).unwrap()).unwrap();
    assert!(matches!(homology_matrix(&a.reduced), Err(Error::CutVertex { .. })));
}

#[test]
fn hopf_census() {
    let c = census(&diagram(samples::HOPF)).unwrap();
    let got: Vec<(&str, Verdict, &str)> = c.rows.iter().map(|r| (r.state.as_str(), r.verdict, r.certificate)).collect();
    assert_eq!(
        got,
        vec![
            ("AA", Verdict::Fibered, "SPANNING_TREE"),
            ("AB", Verdict::NotFibered, "NOT_A_TREE"),
            ("BA", Verdict::NotFibered, "NOT_A_TREE"),
            ("BB", Verdict::Fibered, "SPANNING_TREE"),
        ]
    );
    assert_eq!(c.counts, CensusCounts { total: 4, fibered: 2, not_fibered: 2, unknown: 0 });
}

#[test]
fn trefoil_census_has_fibered_uniform_rows() {
    let c = census(&diagram(samples::TREFOIL)).unwrap();
    assert_eq!(c.rows.len(), 8);
    let bbb = c.rows.iter().find(|r| r.state == "BBB").unwrap();
    assert_eq!((bbb.circles, bbb.euler_characteristic, bbb.verdict), (2, -1, Verdict::Fibered));
}

#[test]
fn vertex_sign_examples() {
    let h = diagram(samples::KINK);
    let a = analyse(&h, &make_state(&h, StateSpec::AllA).unwrap()).unwrap();
    assert_eq!(vertex_signs(&a.graph).unwrap().signs, vec![Sign::Plus, Sign::Minus]);
    let t = diagram(samples::TREFOIL);
    let tri = analyse(&t, &make_state(&t, StateSpec::AllA).unwrap()).unwrap();
    assert_eq!(tri.graph.vertex_count, 3);
    assert!(matches!(vertex_signs(&tri.graph), Err(Error::NotBipartite { .. })));
}

#[test]
fn homology_of_a_single_square() {
    let e = bundled_corpus().into_iter().find(|e| e.name == "5_2").unwrap();
    let a = analyse(&e.diagram, &make_state(&e.diagram, StateSpec::AllB).unwrap()).unwrap();
    let m = homology_matrix(&a.reduced).unwrap();
    assert_eq!(m.entries.to_rows(), vec![vec![2]]);
    assert_eq!(m.cycle_index[0].len(), 4);
}

/// Two squares sharing an edge: the shared edge is written on one side only.
#[test]
fn homology_of_two_squares_sharing_an_edge() {
    let e = bundled_corpus().into_iter().find(|e| e.name == "7_4").unwrap();
    let a = analyse(&e.diagram, &make_state(&e.diagram, StateSpec::AllB).unwrap()).unwrap();
    let m = homology_matrix(&a.reduced).unwrap();
    let rows = m.entries.to_rows();
    assert!(rows == vec![vec![2, -1], vec![0, 2]] || rows == vec![vec![2, 0], vec![-1, 2]], "{rows:?}");
    assert_eq!(m.determinant(), BigInt::from(4));
    assert!(m.check_invariants().is_empty());
}

#[test]
fn tree_gives_an_empty_matrix() {
    let t = diagram(samples::TREFOIL);
    let a = analyse(&t, &seifert_state(&t)).unwrap();
    let m = homology_matrix(&a.reduced).unwrap();
    assert_eq!(m.size(), 0);
}

#[test]
fn mixed_labels_are_rejected() {
    let d = diagram(samples::UNLINK_R2);
    let a = analyse(&d, &make_state(&d, StateSpec::Explicit("AB")).unwrap()).unwrap();
    assert_eq!(homology_matrix(&a.reduced), Err(Error::MixedLabels));
}
