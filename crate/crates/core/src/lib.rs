//! Exact computations for relative Rota-Baxter operators, pre-Lie algebras
//! and Koszul-Vinberg structures over ℚ.

pub mod action;
pub mod cli;
pub mod combinat;
pub mod deform;
pub mod error;
pub mod exactlin;
pub mod kv;
pub mod liealg;
pub mod prelie;
pub mod rbcx;

pub use error::{Error, Result};
