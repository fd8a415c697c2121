//! Generators, oracles and harnesses for exercising the pipeline.

pub mod bench;
pub mod fuzz;
pub mod gen;
pub mod oracle;
