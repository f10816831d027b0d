//! Document formats, the `sfq` command line and the acceptance suites for
//! `sfq-core`.

pub mod cli;
pub mod docs;
pub mod suites;
