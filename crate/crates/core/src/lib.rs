//! Grassmann-number calculus, fermionic coherent states, and entangled-state
//! synthesis by Berezin integration against weight functions.
//!
//! The layers build on each other:
//!
//! * [`grassmann`]: sparse polynomials in anticommuting generators.
//! * [`fock`]: Grassmann-valued kets, coherent states, mode operators.
//! * [`weights`]: integration against a weight, and the inverse solver.
//! * [`entanglement`]: concurrence, Schmidt profiles, classification.
//! * [`boson`]: bosonic coherent-state concurrence and the fermionic comparison.
//! * [`dsl`]: the text format for states, weights, measures, targets.
//! * [`corpus`]: a built-in set of constructions checked end to end.

pub mod boson;
pub mod corpus;
pub mod dsl;
pub mod entanglement;
pub mod error;
pub mod fock;
pub mod grassmann;
pub mod qubit;
pub mod weights;

pub use error::{Error, Result};
pub use fock::{coherent_ket, displacement, BasisKet, FermionLabel, GrassmannState, ModeOperator};
pub use grassmann::{GeneratorId, GrassmannElement, MeasureList, Monomial};
pub use qubit::{NamedState, QubitState};
