//! Operator algebras, spectra, and vector coherent states for
//! two-dimensional supersymmetric quantum models.
//!
//! The crate builds the annihilation/creation operator pairs generated by a
//! two-component polynomial superpotential, verifies their commutation
//! relations exactly over Gaussian rationals, constructs the associated
//! partner Hamiltonians and energy sequences, and assembles vector coherent
//! state families whose resolutions of the identity are checked against
//! radial moment measures. A holomorphic/Grassmann realization and the
//! magnetic-field worked examples round out the toolkit.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only forwards to the numeric dependencies.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod fock;
pub mod grassmann;
pub mod landau;
pub mod linalg;
pub mod moments;
pub mod quad;
pub mod scalar;
pub mod spectra;
pub mod vcs;
pub mod weyl;

pub use scalar::{Gaussian, Rat};
