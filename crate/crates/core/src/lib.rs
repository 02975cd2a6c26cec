pub mod error;
pub mod fixtures;
pub mod classify;
pub mod cli;
pub mod crossmod;
pub mod graded;
pub mod lie2core;
pub mod ratlin;
pub mod repcoh;
pub mod report;
pub mod workspace;

pub use error::{Error, Result};
