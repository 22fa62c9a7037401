//! Fractal, information and Tsallis information dimensions of complex networks.
//!
//! The pipeline is: load a graph ([`parse`]), reduce it to its largest
//! connected component and compute hop distances ([`graph`]), cover it with
//! boxes for every box size ([`cover`]), turn box occupations into entropies
//! ([`entropy`]) and regress those against the log box size ([`dimension`]).
//! [`netgen`] builds synthetic fixtures with known dimensional behaviour.

pub mod cover;
pub mod dimension;
pub mod entropy;
mod error;
pub mod graph;
pub mod netgen;
pub mod parse;

pub use cover::{box_cover, covering_profile, BoxCovering, CoveringProfile, LMax};
pub use dimension::{
    box_counting_dimension, information_dimension, q_sweep, tsallis_dimension, DimensionEstimate,
    FitMode,
};
pub use entropy::{shannon_entropy, tsallis_entropy, EntropyValue, Probabilities};
pub use error::{Error, Result};
pub use graph::{DistanceMatrix, Graph};
