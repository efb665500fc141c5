//! Galois categories of finite rings and number-ring models, with the
//! categorical classifiers (sieves, intervals, left/right/Kan fibrations,
//! comma fibers) used to compare scheme-theoretic properties of a morphism
//! against properties of the induced functor.

pub mod caps;
pub mod check;
pub mod cli;
pub mod dictionary;
pub mod error;
pub mod fibrations;
pub mod fincat;
pub mod finring;
pub mod galmodel;

pub use caps::Caps;
pub use check::{Check, Witness};
pub use error::{Error, Result};
