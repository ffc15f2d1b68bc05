// SPDX-License-Identifier: MIT

pub mod commands;
pub mod config;
pub mod error;
pub mod io;

pub use error::{CliError, Result};
