//! Information-dynamics workbench: entropic chaos degree for classical orbits
//! and quantum channels, complexity and transmitted complexity, value of
//! information, and the finite-dimensional recognition channel model.

pub mod channel;
pub mod classical;
pub mod error;
pub mod hilbert;
pub mod metrics;
pub mod recognition;

pub use error::{Error, Result};
