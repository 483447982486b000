//! The region-method polynomial against the bundled knot table.

use kstate::alexander::{adjacent_face_pairs, region_minor};
use kstate::*;
use num_bigint::BigInt;
use num_traits::Signed;

#[test]
fn polynomials_match_the_table() {
    for e in bundled_corpus() {
        let p = alexander_polynomial(&e.diagram).unwrap();
        assert_eq!(p, e.alexander, "{}", e.name);
    }
}

#[test]
fn table_alternating_flag_matches_the_diagram() {
    for e in bundled_corpus() {
        assert_eq!(e.diagram.is_alternating(), e.alternating_diagram, "{}", e.name);
        assert_eq!(e.diagram.components().len(), 1, "{}", e.name);
    }
}

#[test]
fn symmetric_with_odd_determinant() {
    for e in bundled_corpus() {
        let p = alexander_polynomial(&e.diagram).unwrap();
        assert!(p.equals_up_to_unit(&p.reciprocal()), "{}", e.name);
        let det = p.eval(-1).abs();
        assert_eq!(&det % BigInt::from(2), BigInt::from(1), "{}", e.name);
        assert_eq!(p.eval(1).abs(), BigInt::from(1), "{}", e.name);
    }
}

#[test]
fn any_adjacent_column_pair_gives_the_same_polynomial() {
    for e in bundled_corpus() {
        for (f, g) in adjacent_face_pairs(&e.diagram) {
            assert!(region_minor(&e.diagram, f, g).equals_up_to_unit(&e.alexander), "{} faces {f},{g}", e.name);
        }
    }
}

#[test]
fn mirror_and_relabel_leave_the_polynomial_alone() {
    for e in bundled_corpus() {
        assert_eq!(alexander_polynomial(&e.diagram.mirror()).unwrap(), e.alexander, "{}", e.name);
        let r = e.diagram.relabel(|l| l + 40).unwrap();
        assert_eq!(alexander_polynomial(&r).unwrap(), e.alexander, "{}", e.name);
    }
}

#[test]
fn murasugi_matches_table_fiberedness() {
    for e in bundled_corpus().into_iter().filter(|e| e.alternating_diagram) {
        let r = murasugi_verdict(&e.diagram).unwrap();
        assert_eq!(r.verdict == Verdict::Fibered, e.fibered, "{}", e.name);
    }
}

#[test]
fn murasugi_rejects_non_alternating() {
    let e = bundled_corpus().into_iter().find(|e| !e.alternating_diagram).unwrap();
    assert_eq!(murasugi_verdict(&e.diagram), Err(Error::NotAlternatingDiagram));
}

#[test]
fn twist_knot_five_two_is_not_fibered() {
    let e = bundled_corpus().into_iter().find(|e| e.name == "5_2").unwrap();
    let r = murasugi_verdict(&e.diagram).unwrap();
    assert_eq!(r.polynomial.leading_coefficient(), BigInt::from(2));
    assert_eq!(r.verdict, Verdict::NotFibered);
}
