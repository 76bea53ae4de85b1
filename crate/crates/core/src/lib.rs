//! Simulation of one-cbit teleportation of l1 coherence.
//!
//! The shared two-qubit resource and Alice's two-outcome POVM determine Bob's
//! conditional qubit state. [`protocol`] computes it both by partial trace and
//! by composing the completely positive maps encoded by the resource and the
//! POVM element as Choi matrices, and evaluates the closed-form coherences.
//!
//! ```
//! use cohtele::{pure_qubit_density, teleport_direct, Case, PureQubit, Resource};
//!
//! let input = pure_qubit_density(&PureQubit::new(std::f64::consts::FRAC_PI_2, 0.0)?);
//! let [e0, _] = Resource::MaxEnt.povm(Case::I)?;
//! let out = teleport_direct(&input, &Resource::MaxEnt.state()?, &e0)?;
//! assert!((out.coherence_out - 1.0).abs() < 1e-12);
//! # Ok::<(), cohtele::Error>(())
//! ```

pub mod channels;
pub mod cmatrix;
pub mod error;
pub mod protocol;
pub mod sampling;
pub mod states;

pub use channels::{ChoiMatrix, KrausMap};
pub use cmatrix::{ComplexMatrix, HermEigResult};
pub use error::{Error, Result};
pub use protocol::{
    bob_unitary_coherence, coherence_formula, probability_formula, teleport, teleport_direct,
    teleport_via_theorem, BobUnitary, Case, ClosedForm, FormulaSource, Outcome, PovmElement,
    Resource, ResourceFamily, Route, TeleportOutcome,
};
pub use states::{pure_qubit_density, DensityMatrix, MemsParams, PureQubit};

pub use num_complex::Complex64;
