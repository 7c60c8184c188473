pub mod ast;
pub mod error;
pub mod hierarchy;
pub mod normalize;
pub mod oracle;
pub mod translate;

pub use error::{Error, Result};
