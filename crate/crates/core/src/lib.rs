pub mod construct;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod pronormal;
pub mod repro;

pub use error::{GroupError, Result};
