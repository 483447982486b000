//! Alexander polynomials of knot diagrams by the region method, and the
//! monic criterion for alternating knots.
//!
//! Each crossing contributes one row. Its four corners take the values
//! `t`, `-t`, `-1`, `1` according to whether the corner lies right of the
//! under-strand and right of the over-strand (both, under only, over only,
//! neither), with strands oriented along the knot.

use serde::Serialize;

use crate::decide::Verdict;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::linalg::det_bareiss;
use crate::poly::LaurentPolynomial;

/// The `n x (n+2)` crossing-by-face matrix.
pub fn region_matrix(diagram: &Diagram) -> Vec<Vec<LaurentPolynomial>> {
    let n = diagram.crossing_count();
    let nf = diagram.faces().len();
    let mut rows = vec![vec![LaurentPolynomial::zero(); nf]; n];
    for (c, row) in rows.iter_mut().enumerate() {
        let over_west_to_east = diagram.over_enters_at_slot3(c);
        for k in 0..4 {
            let right_of_under = k <= 1;
            let right_of_over = if over_west_to_east { k == 0 || k == 3 } else { k == 1 || k == 2 };
            let value = match (right_of_under, right_of_over) {
                (true, true) => LaurentPolynomial::monomial(1, 1),
                (true, false) => LaurentPolynomial::monomial(1, -1),
                (false, true) => LaurentPolynomial::constant(-1),
                (false, false) => LaurentPolynomial::constant(1),
            };
            let f = diagram.face_at_corner(c, k);
            row[f] = &row[f] + &value;
        }
    }
    rows
}

/// Pairs of distinct faces sharing an edge, one per edge, in edge order.
pub fn adjacent_face_pairs(diagram: &Diagram) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..diagram.edge_count())
        .filter_map(|e| {
            let [d1, d2] = diagram.darts_of_edge(e);
            let (f, g) = (diagram.face_of_dart(d1), diagram.face_of_dart(d2));
            (f != g).then_some((f.min(g), f.max(g)))
        })
        .collect();
    out.dedup();
    out
}

/// Determinant after deleting the columns of faces `f` and `g`, unnormalized.
pub fn region_minor(diagram: &Diagram, f: usize, g: usize) -> LaurentPolynomial {
    let rows = region_matrix(diagram)
        .into_iter()
        .map(|row| row.into_iter().enumerate().filter(|&(j, _)| j != f && j != g).map(|(_, p)| p).collect())
        .collect();
    det_bareiss(rows)
}

pub fn alexander_polynomial(diagram: &Diagram) -> Result<LaurentPolynomial> {
    if diagram.crossing_count() == 0 {
        return Err(Error::EmptyDiagram);
    }
    let components = diagram.components().len();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    let &(f, g) = adjacent_face_pairs(diagram).first().expect("a knot diagram has an edge between distinct faces");
    Ok(region_minor(diagram, f, g).normalized())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MurasugiReport {
    pub verdict: Verdict,
    pub polynomial: LaurentPolynomial,
}

/// Fibered iff the normalized polynomial is monic; needs a reduced alternating knot diagram.
pub fn murasugi_verdict(diagram: &Diagram) -> Result<MurasugiReport> {
    let polynomial = alexander_polynomial(diagram)?;
    if !diagram.is_alternating() {
        return Err(Error::NotAlternatingDiagram);
    }
    if let Some(crossing) = diagram.nugatory_crossing() {
        return Err(Error::NotReduced { crossing });
    }
    let verdict = if polynomial.is_monic() { Verdict::Fibered } else { Verdict::NotFibered };
    Ok(MurasugiReport { verdict, polynomial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn alex(pd: &str) -> String {
        alexander_polynomial(&parse_pd(pd).unwrap()).unwrap().to_pairs_string()
    }

    #[test]
    fn small_knots() {
        assert_eq!(alex("X[1,1,2,2]"), "0:1");
        assert_eq!(alex("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"), "0:1 1:-1 2:1");
        assert_eq!(alex("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"), "0:1 1:-3 2:1");
    }

    #[test]
    fn links_rejected() {
        let d = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        assert_eq!(alexander_polynomial(&d), Err(Error::NotAKnot { components: 2 }));
    }

    #[test]
    fn murasugi_preconditions() {
        let kink = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(murasugi_verdict(&kink), Err(Error::NotReduced { crossing: 0 }));
        let fig8 = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        assert_eq!(murasugi_verdict(&fig8).unwrap().verdict, Verdict::Fibered);
    }

    #[test]
    fn every_adjacent_pair_agrees_up_to_units() {
        let d = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        let reference = alexander_polynomial(&d).unwrap();
        for (f, g) in adjacent_face_pairs(&d) {
            assert!(region_minor(&d, f, g).equals_up_to_unit(&reference));
        }
    }
}
