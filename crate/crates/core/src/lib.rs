//! Decomposition of finite-dimensional representations of string algebras
//! into string and band modules, with exact arithmetic throughout.

pub mod algebra;
pub mod error;
pub mod decompose;
pub mod exactla;
pub mod functors;
pub mod linrel;
pub mod poly;
pub mod repmod;
pub mod words;

pub use error::{Error, Result};
