pub mod bounds;
pub mod cli;
pub mod code;
pub mod error;
pub mod fields;
pub mod group;
pub mod linalg;
pub mod numth;
pub mod poly;
pub mod ring;

pub use error::{Error, Result};
