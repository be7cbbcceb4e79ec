//! Order-one invariants of cooriented fronts on surfaces: St', J+, J- and I+,
//! with the group theory and class keys they need.
//!
//! Group arithmetic lives in [`group`], the combinatorial front encoding in
//! [`front`], stratum crossings in [`moves`], weight-function integration in
//! [`integrator`], class keys in [`classes`], the invariants in [`invariants`]
//! and homotopy descriptors in [`homotopy`].

pub mod classes;
pub mod cli;
pub mod error;
pub mod front;
pub mod homotopy;
pub mod group;
pub mod integrator;
pub mod invariants;
pub mod moves;

pub use error::{Error, Result};
