//! Constructions and certificates for equiangular lines and spherical codes.
//!
//! Codes are built Gram-first, certified in exact arithmetic where the
//! entries are rational, and embedded as unit vectors. Every bound check
//! returns a [`Certificate`] that can be serialized next to the code it
//! was computed from.

pub mod bounds;
pub mod certificate;
pub mod cli;
pub mod codes;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod matcore;

pub use certificate::{Certificate, Witness};
pub use codes::{AngleSet, Code};
pub use error::{Error, Result};
pub use matcore::{SymMatrix, Tolerance};
