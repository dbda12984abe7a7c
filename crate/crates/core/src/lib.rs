//! Stationary configurations of the planar four-vortex problem.
//!
//! Finds and verifies the stationary regimes of four point vortices —
//! equilibria, rigidly translating configurations, relative equilibria, and
//! self-similar collapse — by building the defining polynomial systems,
//! solving them with total-degree homotopy continuation, classifying and
//! counting the solutions under the standard conventions, and cross-checking
//! real configurations against direct numerical integration of the vortex
//! equations of motion.

pub mod analysis;
pub mod classify;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod homotopy;
pub mod poly;
pub mod systems;
pub mod verification;

pub use config::{Configuration, StationaryKind, Tolerances, Vorticities};
pub use error::{Error, Result};
pub use poly::{MultiPoly, PolySystem};
