//! Numerical exterior calculus for linking numbers and Biot-Savart kernels.
//!
//! The crate has five subsystems:
//!
//! * [`exterior`] -- exact sign arithmetic for multi-index exterior algebra;
//! * [`euclid`] -- closed-form Euclidean Green/Biot-Savart/heat kernels;
//! * [`torus`] -- truncated-Fourier Hodge calculus on flat tori, knot
//!   currents, Biot-Savart forms and their Ewald evaluation;
//! * [`linking`] -- three mutually verifying linking-number backends
//!   (Gauss integral, crossing-sign oracle, torus spectral pairing);
//! * [`parametrix`] -- tube-coordinate heat parametrix recursion, special
//!   functions, small-time error orders and blow-up extendibility probes.

pub mod calibration;
pub mod error;
pub mod exterior;
pub mod euclid;
pub mod fd;
pub mod form_value;
pub mod geom;
pub mod knot;
pub mod linking;
pub mod parametrix;
pub mod quad;
pub mod torus;

pub use error::{Error, Result};
pub use exterior::{CurrentOp, MultiIndex, SignedIndex};
pub use form_value::{DoubleFormValue, FormValue};
pub use knot::{Ambient, Knot};
pub use linking::LinkReport;
pub use torus::{FourierForm, TorusGeometry};
