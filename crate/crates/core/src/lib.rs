//! Folding of root systems by Dynkin diagram automorphisms, twining
//! characters, and twining fusion rings, in exact arithmetic.

pub mod alcove;
pub mod cli;
pub mod error;
pub mod folding;
pub mod fusion;
pub mod par;
pub mod rational;
pub mod rootcore;
pub mod twining;
pub mod unity;

pub use error::{Error, Result};
