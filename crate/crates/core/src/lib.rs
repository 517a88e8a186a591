//! Double index hypergeometric transform on the line Re z = 1/2 and the
//! special-function machinery it needs.

pub mod bases;
pub mod complex_special;
pub mod ditransform;
pub mod error;
pub mod hyp;
pub mod kummer;
pub mod ode;
pub mod quad;
pub mod spectral_check;

pub use complex_special::C64;
pub use error::{Error, Result};
