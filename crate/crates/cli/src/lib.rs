//! Library side of the `precur` command-line tool: document parsing,
//! report types and the command implementations.

pub mod document;
pub mod report;
pub mod run;
