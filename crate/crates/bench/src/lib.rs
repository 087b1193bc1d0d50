//! Workloads shared by the benchmarks.

use lscrystal_core::{datum_for, Context, Family, LevelZeroDominantWeight, Result};

/// A fresh context for type `A_{ℓ-1}^(1)`, so that nothing is cached.
pub fn type_a(ell: usize) -> Context {
    Context::new(datum_for(Family::A, ell).expect("type A is supported for ℓ ≥ 2"))
}

/// Generates `B(λ)_cl` for `λ = Σ ϖ_{i_k}` and returns its size.
pub fn generate(ctx: &Context, seq: &[usize]) -> Result<usize> {
    let lambda = LevelZeroDominantWeight::from_sequence(ctx.datum(), seq)?;
    Ok(ctx.path_crystal(&lambda)?.len())
}
