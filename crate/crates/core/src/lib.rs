//! Normal categories, normal cones and cross-connections of finite regular
//! semigroups.
//!
//! Everything is computed exhaustively from a multiplication table. The crate
//! is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod category;
pub mod classify;
pub mod cones;
pub mod cxn;
pub mod error;
pub mod esn;
pub mod fixtures;
pub mod green;
pub mod iso;
pub mod rees;
pub mod semigroup;

pub use error::{Error, Result};
pub use semigroup::FiniteSemigroup;
