//! Memoized construction of crystals, isomorphisms and tables for one
//! Cartan datum.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use crate::cartan::{AffineCartanDatum, LevelZeroDominantWeight};
use crate::crystal::{self, CrystalGraph, Isomorphism, DEFAULT_ELEMENT_CAP};
use crate::energy::{self, DegreeTable, EnergyTable};
use crate::error::{Error, Result};
use crate::path::ClPath;

type Weight = LevelZeroDominantWeight;
type Cache<K, V> = Mutex<HashMap<K, Arc<V>>>;

/// Owns every crystal and table built for one datum. Shared references are
/// enough for all queries; distinct entries may be built from several
/// threads at once.
#[derive(Debug)]
pub struct Context {
    datum: AffineCartanDatum,
    cap: usize,
    paths: Cache<Weight, CrystalGraph>,
    tensors: Cache<Vec<Weight>, CrystalGraph>,
    psis: Cache<Vec<Weight>, Isomorphism>,
    r_matrices: Cache<(Weight, Weight), Isomorphism>,
    energies: Cache<(Weight, Weight), EnergyTable>,
    degrees: Cache<Weight, DegreeTable>,
}

fn cached<K: Eq + Hash + Clone, V>(
    cache: &Cache<K, V>,
    key: &K,
    build: impl FnOnce() -> Result<V>,
) -> Result<Arc<V>> {
    if let Some(v) = cache.lock().expect("cache lock").get(key) {
        return Ok(Arc::clone(v));
    }
    // built outside the lock: builders recurse into other caches
    let value = Arc::new(build()?);
    let mut guard = cache.lock().expect("cache lock");
    Ok(Arc::clone(guard.entry(key.clone()).or_insert(value)))
}

impl Context {
    pub fn new(datum: AffineCartanDatum) -> Self {
        Self::with_cap(datum, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(datum: AffineCartanDatum, cap: usize) -> Self {
        Context {
            datum,
            cap,
            paths: Default::default(),
            tensors: Default::default(),
            psis: Default::default(),
            r_matrices: Default::default(),
            energies: Default::default(),
            degrees: Default::default(),
        }
    }

    pub fn datum(&self) -> &AffineCartanDatum {
        &self.datum
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn fundamental_weight(&self, i: usize) -> Result<Weight> {
        Weight::fundamental(&self.datum, i)
    }

    /// `B(λ)_cl`.
    pub fn path_crystal(&self, lambda: &Weight) -> Result<Arc<CrystalGraph>> {
        cached(&self.paths, lambda, || CrystalGraph::generate_capped(&self.datum, lambda, self.cap))
    }

    /// `B(ϖ_i)_cl`.
    pub fn fundamental_crystal(&self, i: usize) -> Result<Arc<CrystalGraph>> {
        self.path_crystal(&self.fundamental_weight(i)?)
    }

    /// `B(λ_1)_cl ⊗ ⋯ ⊗ B(λ_n)_cl`.
    pub fn tensor_crystal(&self, lambdas: &[Weight]) -> Result<Arc<CrystalGraph>> {
        cached(&self.tensors, &lambdas.to_vec(), || {
            let factors = lambdas.iter().map(|l| self.path_crystal(l)).collect::<Result<Vec<_>>>()?;
            CrystalGraph::tensor(factors, self.cap)
        })
    }

    pub fn sequence_weights(&self, seq: &[usize]) -> Result<Vec<Weight>> {
        seq.iter().map(|&i| self.fundamental_weight(i)).collect()
    }

    /// `B_i = B(ϖ_{i_1})_cl ⊗ ⋯ ⊗ B(ϖ_{i_n})_cl`.
    pub fn sequence_crystal(&self, seq: &[usize]) -> Result<Arc<CrystalGraph>> {
        self.tensor_crystal(&self.sequence_weights(seq)?)
    }

    /// `Ψ : B(λ_1 + ⋯ + λ_n)_cl → B(λ_1)_cl ⊗ ⋯ ⊗ B(λ_n)_cl`.
    pub fn psi(&self, lambdas: &[Weight]) -> Result<Arc<Isomorphism>> {
        if lambdas.is_empty() {
            return Err(Error::InvalidArgument("Ψ needs at least one factor".into()));
        }
        cached(&self.psis, &lambdas.to_vec(), || {
            let total = lambdas[1..].iter().fold(lambdas[0].clone(), |acc, l| acc.sum(l));
            let path = self.path_crystal(&total)?;
            let tensor = self.tensor_crystal(lambdas)?;
            crystal::psi(&path, &tensor)
        })
    }

    /// `Ψ_i`.
    pub fn psi_sequence(&self, seq: &[usize]) -> Result<Arc<Isomorphism>> {
        self.psi(&self.sequence_weights(seq)?)
    }

    /// `R_{λ,λ'}`.
    pub fn r_matrix(&self, lambda: &Weight, mu: &Weight) -> Result<Arc<Isomorphism>> {
        cached(&self.r_matrices, &(lambda.clone(), mu.clone()), || {
            let left = self.tensor_crystal(&[lambda.clone(), mu.clone()])?;
            let right = self.tensor_crystal(&[mu.clone(), lambda.clone()])?;
            crystal::r_matrix(&left, &right)
        })
    }

    /// `H_{λ,λ'}` on `B(λ)_cl ⊗ B(λ')_cl`.
    pub fn local_energy(&self, lambda: &Weight, mu: &Weight) -> Result<Arc<EnergyTable>> {
        cached(&self.energies, &(lambda.clone(), mu.clone()), || {
            let left = self.tensor_crystal(&[lambda.clone(), mu.clone()])?;
            let right = self.tensor_crystal(&[mu.clone(), lambda.clone()])?;
            let r = self.r_matrix(lambda, mu)?;
            energy::local_energy(&left, &right, &r)
        })
    }

    /// `Deg_λ` on `B(λ)_cl`.
    pub fn degree_table(&self, lambda: &Weight) -> Result<Arc<DegreeTable>> {
        cached(&self.degrees, lambda, || energy::degree_table(&self.path_crystal(lambda)?))
    }

    /// `η_1 ∗ η_2`, checked against `Ψ_{(i,i)}^{-1}(η_1 ⊗ η_2)`.
    pub fn concat_check(&self, i: usize, first: &ClPath, second: &ClPath) -> Result<ClPath> {
        let w = self.fundamental_weight(i)?;
        let pair = [w.clone(), w.clone()];
        let double = self.path_crystal(&w.sum(&w))?;
        let square = self.tensor_crystal(&pair)?;
        let psi = self.psi(&pair)?;
        crystal::concat_check(&double, &square, &psi, first, second)
    }
}
