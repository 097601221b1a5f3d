//! Statevector simulation of Grover search and its amplitude-suppression
//! variant.
//!
//! * [`state`], [`gate`], [`circuit`]: a dense statevector engine over H, X,
//!   Z and multi-controlled X/Z gates with open or closed controls.
//! * [`dense`]: an independent dense-unitary evaluator used as a reference.
//! * [`grover`]: oracle and diffuser builders, iteration planning and
//!   end-to-end runs for the classical and suppression searches.
//! * [`depth`]: oracle gate-count growth, closed form against measured.
//! * [`qaoa`]: TSP → QUBO → Ising, exact QAOA evolution and a comparison of
//!   uniform against suppression-search initial states.
//!
//! Qubit 0 is the least-significant bit of a basis index; labels print the
//! highest qubit first. An ancilla, when present, is the highest qubit.
//!
//! ```
//! use qsuppress::grover::{run_grover, GroverConfig, GroverMode, OracleSpec};
//! use qsuppress::label::parse_label_list;
//!
//! let spec = OracleSpec::new(3, parse_label_list("000,111", 3)?)?;
//! let run = run_grover(&GroverConfig::new(spec.clone(), GroverMode::Suppression).iterations(3))?;
//! assert!(run.undesired_probability(&spec) < 0.02);
//! # Ok::<(), qsuppress::Error>(())
//! ```

pub mod circuit;
pub mod dense;
pub mod depth;
mod error;
pub mod gate;
pub mod grover;
pub mod label;
pub mod optim;
pub mod qaoa;
pub mod state;

pub use circuit::{Circuit, GateCountReport};
pub use error::{Error, Result};
pub use gate::{Control, GateKind, GateOp, Polarity};
pub use label::BasisLabel;
pub use state::{run_circuit, Distribution, Histogram, StateVector};
