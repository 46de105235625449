//! Complex matrix arithmetic and reproducible random streams.

mod matrix;
mod stream;

pub use matrix::ComplexMatrix;
pub use stream::{derive_stream, derive_subseed, sample_complex_gaussian, RandomStream};
