//! Bound states of the Klein-Gordon equation with a Hulthén-screened Yukawa
//! potential and a position-dependent mass.
//!
//! - [`model`]: parameters, potentials, mass profile
//! - [`specfun`]: ln Γ, Pochhammer symbols, ₂F₁
//! - [`spectrum`]: closed-form and exact energies, critical points
//! - [`wavefunction`]: eigenfunctions, normalization, densities
//! - [`oracle`]: independent shooting solver for the radial equation
//! - [`quad`]: adaptive quadrature

pub mod model;
pub mod oracle;
pub mod quad;
mod roots;
pub mod specfun;
pub mod spectrum;
pub mod wavefunction;

pub use model::{PhysicalConfig, QuantumNumbers};
pub use spectrum::{Branch, EnergyLevel, EnergyPair, MaybeReal};
