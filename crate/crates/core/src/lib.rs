//! Eigenvector component magnitudes, relative phases and reconstructed
//! eigenvectors of Hermitian matrices, computed from the eigenvalues of the
//! matrix and of its principal minors.
//!
//! The crate is `no_std` and needs only `alloc`. Indices in this API are
//! 0-based; the command-line front end translates to 1-based.
//!
//! ```
//! use eigenid_core::{identity, matrix::HermitianMatrix};
//!
//! let a = HermitianMatrix::from_real_rows(&[
//!     &[1.0, 1.0, -1.0],
//!     &[1.0, 3.0, 1.0],
//!     &[-1.0, 1.0, 3.0],
//! ])
//! .unwrap();
//! let table = identity::magnitude_table(&a).unwrap();
//! assert!((table.value(0, 0) - 2.0 / 3.0).abs() < 1e-12);
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod eigensolve;
pub mod error;
pub mod identity;
pub mod matrix;
pub mod phase;
pub mod sample;
pub mod spectral;
pub mod verify;

pub use eigensolve::{EigenDecomposition, Spectrum, SymmetricTridiagonal, UnitaryFactor};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, HermitianMatrix, IndexSet, RotationSpec};
pub use num_complex::Complex64;
