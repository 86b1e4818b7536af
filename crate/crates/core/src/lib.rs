//! Exact knot concordance invariants computed from Seifert matrices.

pub mod cli;
pub mod covers;
pub mod family;
pub mod knotfile;
pub mod laurent;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod seifert;
pub mod signature;
