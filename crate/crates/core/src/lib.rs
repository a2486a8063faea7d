pub mod cli;
pub mod closedform;
pub mod dpp;
pub mod error;
pub mod fekete;
pub mod orthopoly;
pub mod quadrature;
pub mod report;
pub mod specfun;
pub mod sum;
pub mod tridiag;
pub mod verify;

pub use error::{Error, Result};
