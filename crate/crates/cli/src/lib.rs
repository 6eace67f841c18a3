//! Front end for the `abelcone` library: class documents, the command
//! implementations behind the `abelcone` binary, and the reproduction suite.

pub mod commands;
pub mod doc;
pub mod sample;
pub mod verify;

pub use commands::{run, Cli, Outcome};
pub use doc::{ClassDocument, DocError};
