//! Geodesic continued fractions for the (2,3,7) triangle group.
//!
//! The group is realised inside the norm-one units of a quaternion order over
//! F = Q(η), η = 2cos(2π/7), acting on the upper half-plane through matrices
//! with entries in L = Q(√η). A geodesic with a reduced representative is
//! expanded into digits from the balanced alphabet {±1, ±2, ±3} by reading off
//! which side of a fixed heptagonal tile it leaves through.

pub mod document;
pub mod engine;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod group;
pub mod input;
pub mod numerics;
pub mod order;
pub mod render;
pub mod tower;

pub use error::{Error, Result};
