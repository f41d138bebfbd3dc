pub mod cli;
pub mod cylinder;
pub mod dsl;
mod eigen;
pub mod error;
pub mod operator;
pub mod report;
pub mod representations;
pub mod symmetries;

pub use num_complex::Complex64 as Complex;

pub use error::{Error, Result};
pub use operator::{Bracket, Operator};
pub use report::{Check, VerificationReport};
pub use representations::SpaceConfig;
