//! File formats, the parallel search driver, result reproduction and the
//! `semitrans` command line on top of `semitrans-core`.

pub mod cli;
pub mod codec;
pub mod parallel;
pub mod repro;
