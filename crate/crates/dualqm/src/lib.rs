//! Dual-number linear algebra over complex and quaternion scalars:
//! dual scalars and their total order, dual complex matrices with
//! determinants and characteristic-root machinery, quaternion matrices
//! through their complex adjoint image, and dual quaternion spectral
//! factorizations.

pub mod cmat;
pub mod dcmat;
pub mod dqmat;
pub mod dual;
pub mod error;
pub mod exact;
pub mod gen;
pub mod poly;
pub mod qmat;
pub mod spectra;

pub use dual::{DualComplex, DualQuaternion, DualReal, Quaternion, Tol};
pub use error::{Error, Result};
