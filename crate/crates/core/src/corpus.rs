//! Knot-table ingestion and the bundled sample diagrams.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagram::{parse_pd, Diagram};
use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;

/// Prime knots through eight crossings, as shipped with the crate.
pub const BUNDLED_CSV: &str = include_str!("../data/knots.csv");

pub const CORPUS_HEADER: [&str; 5] = ["name", "pd", "alternating", "fibered", "alexander"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub pd: String,
    #[serde(skip)]
    pub diagram: Diagram,
    pub alternating_diagram: bool,
    pub fibered: bool,
    pub alexander: LaurentPolynomial,
}

#[derive(Deserialize)]
struct Row {
    name: String,
    pd: String,
    alternating: bool,
    fibered: bool,
    alexander: String,
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_corpus(&text)
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| Error::Corpus { line: 1, msg: e.to_string() })?;
    if header.iter().ne(CORPUS_HEADER) {
        return Err(Error::Corpus { line: 1, msg: format!("expected header {}", CORPUS_HEADER.join(",")) });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::Corpus { line, msg: e.to_string() }
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let fail = |msg: String| Error::Corpus { line, msg };
        let row: Row = record.deserialize(None).map_err(|e| fail(e.to_string()))?;
        if !seen.insert(row.name.clone()) {
            return Err(fail(format!("duplicate entry {:?}", row.name)));
        }
        let diagram = parse_pd(&row.pd).map_err(|e| fail(format!("{}: {e}", row.name)))?;
        let alexander = LaurentPolynomial::parse_pairs(&row.alexander).map_err(|e| fail(format!("{}: {e}", row.name)))?;
        if !alexander.is_normalized() {
            return Err(fail(format!("{}: polynomial is not normalized", row.name)));
        }
        out.push(CorpusEntry {
            name: row.name,
            pd: row.pd,
            diagram,
            alternating_diagram: row.alternating,
            fibered: row.fibered,
            alexander,
        });
    }
    Ok(out)
}

pub fn bundled_corpus() -> Vec<CorpusEntry> {
    parse_corpus(BUNDLED_CSV).expect("bundled corpus is valid")
}

/// Named diagrams used in examples and tests.
pub mod samples {
    /// One-crossing unknot diagram.
    pub const KINK: &str = "X[1,1,2,2]";
    /// Two-crossing Hopf link.
    pub const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";
    /// Two-component unlink drawn with two crossings (one strand over twice).
    pub const UNLINK_R2: &str = "X[4,1,3,2] X[3,1,4,2]";
    pub const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    pub const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
    /// Connected sum of two trefoils of the same handedness.
    pub const GRANNY: &str = "X[13,4,2,5] X[3,6,4,1] X[5,2,6,3] X[1,10,8,11] X[9,12,10,13] X[11,8,12,9]";
}
