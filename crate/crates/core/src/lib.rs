//! Exact symbolic algebra for impulse trains and their event bounds.
//!
//! Event streams — job releases, packets, bus messages — are modeled as
//! weighted impulse trains over exact rational time. The crate provides
//!
//! * the algebra of trains: superposition, scaling, convolution and the
//!   canonical flat expansion on which equality is decidable
//!   ([`impulse`]);
//! * the matrix construction pipeline that assembles an interference from
//!   amplitude, shift and degree grids ([`matrix`]);
//! * the discretized event bound over a window mask and its exact extrema
//!   via finite test sets ([`bounds`]);
//! * distance sets and the full graph of the interval transformation,
//!   plus the hyperperiod of fully periodic interferences ([`transform`]);
//! * naive reference implementations for differential testing ([`oracle`])
//!   and seeded instance generators to drive them ([`random`]).
//!
//! All values are immutable and all operations are pure functions; every
//! number is an exact [`Rational`]. There is no floating-point mode.

// Error variants carry the offending rationals; errors are cold paths.
#![allow(clippy::result_large_err)]

pub mod bounds;
pub mod error;
pub mod impulse;
pub mod matrix;
pub mod oracle;
pub mod random;
pub mod rational;
pub mod transform;

pub use bounds::{
    existence_check, heaviside_duration, max_duration, min_duration, BoundResult, Extremum,
    HeavisideMask, MaskKind,
};
pub use error::{Error, Result};
pub use impulse::{
    Degree, FlatImpulse, FlatTrain, ImpulseInterference, ImpulseSpectralDensity,
    ImpulseSpectralTrain, Window,
};
pub use matrix::{
    build_interference, inner_convolve, inner_sum, matrix_dot, vector_dot, AmplitudeVector,
    ConstructionMatrices, ShiftVector,
};
pub use oracle::{oracle_extremum, oracle_flatten};
pub use rational::Rational;
pub use transform::{
    distance_set, hyperperiod, transform_graph, DistanceSet, GraphPoint, IntervalTransformGraph,
};
