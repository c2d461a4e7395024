//! Cellular decomposition of `T`-equivariant motives of flag varieties.
//!
//! Given a root datum, the crate enumerates the Weyl group, assembles the
//! Tate motive of `[T\G/B]` over `BT` from the Bruhat stratification, and
//! realizes it as free-module presentations of equivariant K-theory (with
//! `I_T`-adic completion of the representation ring) and equivariant Chow
//! groups.

pub mod assembler;
pub mod character;
pub mod cli;
pub mod matrix;
pub mod poly;
pub mod presentation;
pub mod realization;
pub mod root_data;
pub mod root_system;
pub mod tate;
pub mod weyl;

mod error;

pub use error::Error;
