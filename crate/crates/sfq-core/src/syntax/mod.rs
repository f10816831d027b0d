//! Terms, formulas, contexts, fragment classifiers and the text grammar.

pub mod classify;
pub mod context;
pub mod formula;
pub mod parse;
pub mod print;
pub mod term;

pub use classify::{
    classify_st, is_gn, is_st, is_st_p, occurrence_counts, occurrence_mode, occurrence_report, quantifier_mode,
    OccurrenceCounts, OccurrenceEntry, OccurrenceMode, QuantMode, StClass, StMode,
};
pub use context::{analyses, Connective, FormulaContext, Shape};
pub use formula::{CaptureError, Formula};
pub use parse::{infer_signature, parse, parse_inferred, parse_term, parse_with, ParseError, ParseErrorKind, Symbols};
pub use print::render;
pub use term::{ElemId, Signature, SignatureError, Term, EXISTENCE};
