//! Binary linear codes built from vectorial Boolean functions.
//!
//! The crate is organised bottom-up: [`gf2m`] provides field arithmetic,
//! [`boolfun`] and [`vecfun`] describe Boolean and vectorial functions with
//! their Walsh spectra, [`codes`] builds the codes and computes weight
//! distributions, and [`theory`] holds the closed-form predictions they are
//! checked against. [`verify`] ties the last two together into named
//! verification targets.
//!
//! # Quick start
//!
#![doc = include_str!("quickstart.md")]

pub mod bits;
pub mod boolfun;
pub mod codes;
pub mod error;
pub mod gf2m;
pub mod theory;
pub mod vecfun;
pub mod verify;

pub use boolfun::{BooleanFunction, WalshSpectrum};
pub use codes::{CodeSpec, LinearCode, WeightDistribution};
pub use error::{Error, Result};
pub use gf2m::FieldSpec;
pub use vecfun::VectorialFunction;
