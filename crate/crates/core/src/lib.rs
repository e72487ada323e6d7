//! Entanglement swapping from two partially entangled pairs, with the
//! complementarity quantities (coherence, predictability, entanglement)
//! of every one-qubit reduced state before and after the Bell-basis
//! measurement.
//!
//! Subsystem ordering is big-endian everywhere: in a composite index the
//! first subsystem of the `dims` list is the most significant digit. The
//! four-qubit state of the protocol uses the wire order `(A, C, C', B)`.

pub mod error;
pub mod experiment;
pub mod linalg;
pub mod measures;
pub mod states;
pub mod swap;
pub mod sweep;

#[cfg(feature = "cli")]
pub mod cli;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub use measures::{DensityMatrix, MeasureReport};
pub use states::{BellLabel, PureState, SchmidtParam};
pub use swap::{BbmOutcome, Branch, PostState, SwapSpectrum};
