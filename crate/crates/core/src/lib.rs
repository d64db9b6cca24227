pub mod cli;
pub mod cohomology;
pub mod contact;
pub mod error;
pub mod exterior;
pub mod hodge;
pub mod model;
pub mod report;
pub mod ratlin;

pub use error::{Error, Result};
