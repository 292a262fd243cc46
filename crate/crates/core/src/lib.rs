pub mod budget;
pub mod cli;
pub mod codes;
pub mod critical;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod linpoly;
pub mod qcomb;
pub mod restricted;
pub mod semifield;

pub use error::{Error, Result};
