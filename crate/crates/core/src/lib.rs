//! Exact-arithmetic level-zero path crystals for untwisted affine types.
//!
//! The crate builds the classical crystals `B(λ)_cl` of piecewise-linear
//! paths by closing the straight line `t ↦ t·cl(λ)` under the root
//! operators, forms tensor products of them, and computes the isomorphisms
//! between simple crystals (the maps `Ψ_i` and the combinatorial
//! `R`-matrices). On top of that it evaluates local energies, the energy
//! `D_i`, the degree function `Deg_λ` and classically restricted
//! one-dimensional sums, and checks the identities linking them.
//!
//! Module map:
//!
//! * [`cartan`]: affine Cartan data, classical weights, finite Weyl orbits.
//! * [`path`]: classical paths and the root operators `e_j`, `f_j`.
//! * [`context`]: memoized crystals, isomorphisms and tables for one datum.
//! * [`crystal`]: crystal graphs, tensor products, Weyl action, isomorphisms.
//! * [`energy`]: local energies, `D_i`, `Deg_λ` and the verification sweep.
//! * [`onedsum`]: 1d sums, partitions, Kostka-Foulkes polynomials and the
//!   charge oracle.

pub mod cartan;
pub mod context;
pub mod crystal;
pub mod energy;
pub mod error;
pub mod onedsum;
pub mod path;
pub mod poly;

/// Exact rational numbers with arbitrary precision.
pub type Rational = num_rational::BigRational;

pub use cartan::{datum_for, AffineCartanDatum, ClassicalWeight, Family, LevelZeroDominantWeight};
pub use context::Context;
pub use crystal::{CrystalElement, CrystalGraph, Isomorphism, Shape};
pub use error::{Error, Result};
pub use onedsum::Partition;
pub use path::ClPath;
pub use poly::LaurentPolynomial;
