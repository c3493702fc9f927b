//! File formats, formula syntax, parallel sampling and the command-line
//! front end for `qprop-core`.

pub mod cli;
pub mod demo;
pub mod fixtures;
pub mod format;
pub mod formula;
pub mod manifest;
pub mod report;
pub mod sampling;
