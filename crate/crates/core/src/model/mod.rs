//! Dictionaries, sparse coefficients, sensing matrices and measurements.

pub mod dictionary;
pub mod io;
pub mod seed;
pub mod sensing;
pub mod support;

pub use dictionary::{build_overcomplete_dft, build_rescaled_identity, synthesize, Dictionary, DictionaryKind};
pub use seed::{derive_seed, rng_from_seed, tag, SeededRng};
pub use sensing::{draw_gaussian_sensing, measure, Measurements, SensingMatrix};
pub use support::{
    draw_sparse_coefficients, SparseCoefficients, SupportPattern, SupportSet,
    ValueField,
};
