//! Para-linear operators on finite-dimensional octonionic Hilbert bimodules
//! `H = O^n`: octonion arithmetic, regular composition, adjoints, the
//! polarization identity, strong-eigenpair spectral decomposition and the
//! left/right functional calculi.

pub mod error;
pub mod funcalc;
pub mod io;
pub mod linalg;
pub mod octonion;
pub mod operator;
pub mod oracle;
pub mod polarization;
pub mod random;
pub mod spectral;
pub mod vector;

pub use error::{Error, Result};
pub use funcalc::SpectrumFunction;
pub use linalg::Matrix;
pub use octonion::{ImaginaryUnit, Octonion};
pub use operator::ParaLinearOperator;
pub use spectral::{SpectralDecomposition, StrongEigenpair};
pub use vector::{OVector, Side, SliceParavector};
