use std::collections::VecDeque;

use super::{CrystalElement, CrystalGraph};
use crate::error::{Error, Result};
use crate::path::ClPath;

/// A crystal isomorphism stored as explicit index maps in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    forward: Vec<usize>,
    backward: Vec<usize>,
}

impl Isomorphism {
    pub fn apply(&self, b: usize) -> usize {
        self.forward[b]
    }

    pub fn invert(&self, c: usize) -> usize {
        self.backward[c]
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(b, &c)| b == c)
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }
}

/// The unique isomorphism sending `src_anchor` to `dst_anchor`, found by
/// transporting edges outward from the anchors. Every edge of `src` is
/// checked against `dst`, so a returned map is a genuine isomorphism.
pub fn anchored_isomorphism(
    src: &CrystalGraph,
    dst: &CrystalGraph,
    src_anchor: usize,
    dst_anchor: usize,
) -> Result<Isomorphism> {
    if src.len() != dst.len() {
        return Err(Error::NotIsomorphic(format!(
            "{} has {} elements, {} has {}",
            src.shape,
            src.len(),
            dst.shape,
            dst.len()
        )));
    }
    if src.datum != dst.datum {
        return Err(Error::NotIsomorphic("different Cartan data".into()));
    }
    let n = src.len();
    let mut forward: Vec<Option<usize>> = vec![None; n];
    let mut backward: Vec<Option<usize>> = vec![None; n];
    forward[src_anchor] = Some(dst_anchor);
    backward[dst_anchor] = Some(src_anchor);
    let mut queue = VecDeque::from([src_anchor]);
    while let Some(b) = queue.pop_front() {
        let c = forward[b].expect("queued elements are mapped");
        if src.weights[b] != dst.weights[c] {
            return Err(Error::NotIsomorphic(format!(
                "{} and {} have different weights",
                src.keys[b], dst.keys[c]
            )));
        }
        for j in src.datum.indices() {
            for (edges_src, edges_dst, name) in [(&src.raise[j], &dst.raise[j], "e"), (&src.lower[j], &dst.lower[j], "f")] {
                match (edges_src[b], edges_dst[c]) {
                    (None, None) => {}
                    (Some(b2), Some(c2)) => match (forward[b2], backward[c2]) {
                        (None, None) => {
                            forward[b2] = Some(c2);
                            backward[c2] = Some(b2);
                            queue.push_back(b2);
                        }
                        (Some(x), Some(y)) if x == c2 && y == b2 => {}
                        _ => {
                            return Err(Error::NotIsomorphic(format!(
                                "{name}_{j} edge from {} conflicts with an earlier assignment",
                                src.keys[b]
                            )))
                        }
                    },
                    _ => {
                        return Err(Error::NotIsomorphic(format!(
                            "{name}_{j} is defined on exactly one of {} and {}",
                            src.keys[b], dst.keys[c]
                        )))
                    }
                }
            }
        }
    }
    let forward: Option<Vec<usize>> = forward.into_iter().collect();
    let backward: Option<Vec<usize>> = backward.into_iter().collect();
    match (forward, backward) {
        (Some(forward), Some(backward)) => Ok(Isomorphism { forward, backward }),
        _ => Err(Error::NotIsomorphic("transport from the anchors does not reach every element".into())),
    }
}

/// `Ψ_i : B(λ)_cl → B(ϖ_{i_1})_cl ⊗ ⋯ ⊗ B(ϖ_{i_n})_cl`, anchored at the
/// straight line `η_cl(λ)` and the tensor of dominant straight lines.
pub fn psi(path: &CrystalGraph, tensor: &CrystalGraph) -> Result<Isomorphism> {
    anchored_isomorphism(path, tensor, path.source, tensor.source)
}

/// The combinatorial `R`-matrix `B(λ)_cl ⊗ B(λ')_cl → B(λ')_cl ⊗ B(λ)_cl`.
pub fn r_matrix(left: &CrystalGraph, right: &CrystalGraph) -> Result<Isomorphism> {
    anchored_isomorphism(left, right, left.source, right.source)
}

/// Concatenates `η_1 ∗ η_2` and checks that it equals `Ψ^{-1}(η_1 ⊗ η_2)`
/// for `Ψ : B(2ϖ_i)_cl → B(ϖ_i)_cl ⊗ B(ϖ_i)_cl`.
pub fn concat_check(
    double: &CrystalGraph,
    square: &CrystalGraph,
    psi: &Isomorphism,
    first: &ClPath,
    second: &ClPath,
) -> Result<ClPath> {
    let cat = ClPath::concat(double.datum(), first, second)?;
    let element = CrystalElement::new(vec![first.clone(), second.clone()])?;
    let b = square
        .index_of(&element)
        .ok_or_else(|| Error::InvalidArgument(format!("{element} is not in {}", square.shape)))?;
    let expected = double.path(psi.invert(b));
    if *expected != cat {
        return Err(Error::Conflict(format!(
            "{first} ∗ {second} = {cat} but Ψ⁻¹({element}) = {expected}"
        )));
    }
    Ok(cat)
}
