//! Catcher-evader games: equilibrium computation, reductions from security
//! games, scored tests and fractional matching, and supporting network-flow
//! routines.

pub mod bvn;
pub mod error;
pub mod flow;
pub mod game;
pub mod generate;
pub mod nash;
pub mod normal_form;
pub mod profile;
pub mod reductions;
pub mod registry;
pub mod response;
pub mod stackelberg;

pub use error::{Error, Result};
pub use game::{validate_game, CEGame, PlayerParams};
pub use nash::{solve_nash, NashOptions, NashSolution};
pub use profile::StrategyProfile;
