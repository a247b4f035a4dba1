//! Command-line front end for catcher-evader games: JSON game files,
//! solver commands and the benchmark harness.

pub mod bench;
pub mod commands;
pub mod error;
pub mod format;

pub use error::CliError;
pub use format::{parse_game, parse_game_unchecked, serialize_game};
