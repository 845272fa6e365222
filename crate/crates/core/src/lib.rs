pub mod cli;
pub mod decide;
pub mod error;
pub mod gen;
pub mod lang;
pub mod normal_form;
pub mod semigroup;
pub mod term;
pub mod words;

pub use error::{Error, Result};
pub use term::OmegaTerm;
