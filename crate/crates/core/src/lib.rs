pub mod automaton;
pub mod boolean;
pub mod compat;
pub mod decide;
pub mod error;
pub mod format;
mod machine;
pub mod monomial;
pub mod random;
pub mod run;
pub mod satred;
pub mod words;

pub use automaton::*;
pub use boolean::*;
pub use compat::*;
pub use decide::*;
pub use error::{Error, Result};
pub use format::{from_json, to_json};
pub use monomial::*;
pub use run::*;
pub use satred::*;
pub use words::*;
