//! Geodetic graphs and groups.
//!
//! Shortest-path uniqueness testing, isometrically embedded circuits,
//! geodesic spanning trees as quasi-isometry certificates, finite-horizon
//! geodesic-boundary tools, Cayley balls of free products of finite groups,
//! and the confluent length-reducing rewriting systems read off their
//! circuits.

pub mod alphabet;
pub mod boundary;
pub mod error;
pub mod graph;
pub mod groups;
pub mod iec;
pub mod rws;
pub mod tree_qi;

pub use error::{Error, Result};
