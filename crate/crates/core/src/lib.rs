#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Range-delay accuracy limits for classical and quantum-illumination
//! pulse-compression radar.

pub mod classical;
pub mod curve;
pub mod error;
pub mod incoherent;
pub mod quadrature;
pub mod quantum;
pub mod scenario;
pub mod specfun;
pub mod sum;
pub mod waveform;

pub use error::{Error, Result};
