//! Finite-field harmonic analysis for monochromatic `{x, y, x+y, xy}` patterns.

pub mod audit;
pub mod charsums;
pub mod cli;
pub mod counting;
pub mod error;
pub mod field;
pub mod harmonic;
pub mod numeric;
pub mod qm;
pub mod ramsey;
pub mod regularity;
pub mod report;
pub mod search;
pub mod signal;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldCtx, MultChar, QuadPhase};
pub use numeric::C64;
pub use signal::Signal;
