//! Skew (α-)bisubmodular functions over the three-element domain `{-α, 0, 1}`.
//!
//! The crate provides the chain decomposition of a fractional point, the
//! Lovász extension built on it together with subgradients, a projected
//! subgradient minimizer that works purely through a value oracle, and exact
//! small-scale reference computations (brute force, convex closure by an exact
//! rational simplex) used to cross-check all of the above.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod error;
pub mod function;
pub mod lattice;
pub mod lovasz;
pub mod minimizer;
pub mod oracles;
pub mod rational;

pub use error::Error;
pub use function::{
    check_alpha_bisubmodular, check_alpha_bisubmodular_with_cap, expand_to_table,
    generate_instance, GeneratorConfig, SumFunction, Term, TableFunction, ValueOracle,
    ViolationWitness, DEFAULT_ENUMERATION_CAP,
};
pub use lattice::{join, less, meet0, numeric, Alpha, Label, Labeling};
pub use lovasz::{decompose, extension_value, subgradient, Atom, ChainDecomposition, FractionalPoint};
pub use minimizer::{minimize, project_box, MinimizeConfig, MinimizeReport, StartPoint, StepRule};
pub use oracles::{
    brute_force_min, convex_closure, midpoint_convexity_probe, ClosureResult, MidpointViolation,
};
pub use rational::Rational;

pub type Result<T> = core::result::Result<T, Error>;
