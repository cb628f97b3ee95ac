//! Exact enumeration of maximal green sequences for valued quivers.
//!
//! * [`exchange`]: quivers, Euler data, extended exchange matrices, mutation.
//! * [`search`]: depth-bounded enumeration of green paths and maximal green
//!   sequences, length statistics, exchange-graph export.
//! * [`polygon`]: rank-2 polygons and polygonal deformation classes.
//! * [`tame`]: null root, Coxeter transformation and regular clusters for
//!   affine (tame) input.

pub mod exchange;
pub mod matrix;
pub mod polygon;
pub mod search;
pub mod tame;
mod union_find;

pub use exchange::{DimVector, EulerData, ExchangeError, MutationIndex, QuiverSpec, Seed};
pub use matrix::IntMatrix;
