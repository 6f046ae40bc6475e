pub mod charp;
pub mod error;
pub mod ext;
pub mod genpos;
pub mod json;
pub mod linalg;
pub mod norm;
pub mod poly;
pub mod qform;
pub mod ring;
pub mod suite;

pub use error::{Error, Result};
