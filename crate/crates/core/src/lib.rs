#![forbid(unsafe_code)]

pub mod category;
pub mod decomp;
pub mod cohomology;
pub mod error;
pub mod exec;
pub mod fusion;
pub mod group;
pub mod linalg;
pub mod module;
pub mod report;

pub use error::{Error, Result};
