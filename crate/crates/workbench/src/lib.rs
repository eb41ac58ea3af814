//! File formats, parallel sampling and the `lambdawb` command line on top of
//! `lambda-core`.

pub mod batch;
pub mod cli;
pub mod codec;
pub mod manifest;
