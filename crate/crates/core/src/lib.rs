//! Ordinals below epsilon_0, the Ignatiev algebra of ordinal sequences, and
//! the Kripke frame of its filters.
//!
//! The crate is organised bottom-up:
//!
//! - [`ordinal`]: Cantor normal form arithmetic and the end-part function `ell`.
//! - [`point`]: points of the algebra, their order, meets and the modal operators.
//! - [`frame`]: filters in coordinates (suitable sequences) and the frame relations.
//! - [`logic`]: variable-free strictly positive formulas and entailment.
//! - [`oracle`]: bounded enumeration and brute-force reference computations.
//! - [`verify`]: exhaustive property sweeps built on the oracle.
//! - [`cli`]: the `ignatiev` command-line front end.

pub mod cli;
pub mod frame;
pub mod logic;
pub mod oracle;
pub mod ordinal;
pub mod point;
pub mod verify;

mod error;

pub use error::ParseError;
pub use frame::{RawSequence, SuitableSequence, Tail, Violation};
pub use logic::Formula;
pub use ordinal::{ExtOrdinal, Ordinal};
pub use point::IgnatievPoint;
