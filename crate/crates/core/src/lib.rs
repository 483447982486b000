//! Decide whether the state surface of a Kauffman state of a link diagram is
//! a fiber of the link exterior, and produce a certificate that can be
//! replayed against the input.
//!
//! The pipeline is `diagram` (PD parsing) → `state` (smoothing) →
//! `stategraph` (labelled state graph, reduction, inner cycles) →
//! `classify` / `decide`. `homology` builds the integer matrix of the
//! push-off map for checkerboard surfaces, and `alexander` is an independent
//! oracle based on Murasugi's monicity criterion for alternating knots.

pub mod alexander;
pub mod classify;
pub mod corpus;
pub mod decide;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod poly;
pub mod state;
pub mod stategraph;

pub use diagram::{parse_pd, parse_pd_with, Dart, Diagram, Face, ParseOptions};
pub use error::{Error, Result};
pub use state::{make_state, seifert_state, smooth, KauffmanState, ResolutionLabel, SmoothedMap, StateSpec};
pub use stategraph::{build_graph, reduce, InnerCycle, ReducedGraph, StateGraph};
pub use classify::{is_alternating_state, is_homogeneous_state, ClassificationWitness};
pub use decide::{census, decide_fiber, Certificate, FiberVerdict, Verdict};
pub use homology::{check_dominant_det, homology_matrix, sharp_family, vertex_signs};
pub use alexander::{alexander_polynomial, murasugi_verdict};
pub use corpus::{bundled_corpus, load_corpus, parse_corpus, CorpusEntry};
pub use linalg::IntMatrix;
pub use poly::LaurentPolynomial;
