//! Signatures of coloured braid and tangle closures, reduced Burau/Gassner
//! matrices at torus points, the Meyer cocycle and the Maslov index.

pub mod braidtangle;
pub mod cli;
pub mod error;
pub mod hermforms;
pub mod io;
pub mod linalg;
pub mod representations;
pub mod signatures;
pub mod tanglefunctor;

pub use error::{Error, Result};
pub use nalgebra;
pub use num_complex::Complex64;

pub type CMat = nalgebra::DMatrix<Complex64>;

/// Default numerical tolerance for ranks, signatures and locus tests.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A point on the unit circle at `turns` of a full revolution.
pub fn omega_from_turns(turns: f64) -> Complex64 {
    let t = std::f64::consts::TAU * turns;
    Complex64::new(t.cos(), t.sin())
}
