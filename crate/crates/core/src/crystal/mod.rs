//! Finite crystal graphs of classical paths and their tensor products.
//!
//! A [`CrystalGraph`] is frozen after construction: elements are sorted by
//! canonical serialization, and every root operator is stored as an explicit
//! partial map on element indices. Path crystals `B(λ)_cl` are generated by
//! closing the straight line `η_cl(λ)` under all root operators; tensor
//! products are assembled from already generated factors.

mod iso;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::{AffineCartanDatum, ClassicalWeight, LevelZeroDominantWeight};
use crate::error::{Error, Result};
use crate::path::ClPath;
use crate::Rational;

pub use iso::{anchored_isomorphism, concat_check, psi, r_matrix, Isomorphism};

/// Default bound on the number of elements of one graph.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// An element `η_1 ⊗ ⋯ ⊗ η_n`; a single factor is a plain path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrystalElement {
    factors: Vec<ClPath>,
}

impl CrystalElement {
    pub fn new(factors: Vec<ClPath>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("a crystal element needs at least one factor".into()));
        }
        Ok(CrystalElement { factors })
    }

    pub fn single(path: ClPath) -> Self {
        CrystalElement { factors: vec![path] }
    }

    pub fn factors(&self) -> &[ClPath] {
        &self.factors
    }

    pub fn weight(&self) -> ClassicalWeight {
        let mut w = self.factors[0].weight();
        for p in &self.factors[1..] {
            w += &p.weight();
        }
        w
    }

    /// Concatenated canonical serializations of the factors.
    pub fn key(&self) -> String {
        self.factors.iter().map(ClPath::serialize).collect()
    }
}

impl fmt::Display for CrystalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" ⊗ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// What a graph was built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `B(λ)_cl`.
    Path(LevelZeroDominantWeight),
    /// `B(λ_1)_cl ⊗ ⋯ ⊗ B(λ_n)_cl`.
    Tensor(Vec<LevelZeroDominantWeight>),
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Path(l) => write!(f, "B({l})"),
            Shape::Tensor(ls) => {
                for (k, l) in ls.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ⊗ ")?;
                    }
                    write!(f, "B({l})")?;
                }
                Ok(())
            }
        }
    }
}

/// `(ε_j, φ_j)` of a left-associated tensor product from the factor values.
pub fn tensor_eps_phi(eps: &[u32], phi: &[u32]) -> (u32, u32) {
    let mut e = eps[0] as i64;
    let mut p = phi[0] as i64;
    for k in 1..eps.len() {
        let (e2, p2) = (eps[k] as i64, phi[k] as i64);
        let ne = e.max(e2 - (p - e));
        let np = p2.max(p + (p2 - e2));
        e = ne;
        p = np;
    }
    (e as u32, p as u32)
}

/// The factor a root operator acts on in a left-associated tensor product.
///
/// Two factors: `e_j` acts on the left iff `φ_j(b_1) ≥ ε_j(b_2)`, `f_j`
/// acts on the left iff `φ_j(b_1) > ε_j(b_2)`.
pub fn acting_factor(eps: &[u32], phi: &[u32], raising: bool) -> usize {
    let n = eps.len();
    // prefix[m] = (ε, φ) of the first m + 1 factors
    let mut prefix = Vec::with_capacity(n);
    let (mut e, mut p) = (eps[0] as i64, phi[0] as i64);
    prefix.push((e, p));
    for k in 1..n {
        let (e2, p2) = (eps[k] as i64, phi[k] as i64);
        let ne = e.max(e2 - (p - e));
        let np = p2.max(p + (p2 - e2));
        e = ne;
        p = np;
        prefix.push((e, p));
    }
    let mut m = n - 1;
    while m > 0 {
        let phi_left = prefix[m - 1].1;
        let eps_right = eps[m] as i64;
        let goes_left = if raising { phi_left >= eps_right } else { phi_left > eps_right };
        if !goes_left {
            return m;
        }
        m -= 1;
    }
    0
}

fn factor_eps_phi(element: &CrystalElement, j: usize) -> Result<(Vec<u32>, Vec<u32>)> {
    let mut eps = Vec::with_capacity(element.factors.len());
    let mut phi = Vec::with_capacity(element.factors.len());
    for p in &element.factors {
        eps.push(p.epsilon(j)?);
        phi.push(p.phi(j)?);
    }
    Ok((eps, phi))
}

/// `e_j` on a tensor element, computed directly from the paths.
pub fn tensor_raise(datum: &AffineCartanDatum, b: &CrystalElement, j: usize) -> Result<Option<CrystalElement>> {
    let (eps, phi) = factor_eps_phi(b, j)?;
    let k = acting_factor(&eps, &phi, true);
    Ok(b.factors[k].raise(datum, j)?.map(|p| {
        let mut factors = b.factors.clone();
        factors[k] = p;
        CrystalElement { factors }
    }))
}

/// `f_j` on a tensor element, computed directly from the paths.
pub fn tensor_lower(datum: &AffineCartanDatum, b: &CrystalElement, j: usize) -> Result<Option<CrystalElement>> {
    let (eps, phi) = factor_eps_phi(b, j)?;
    let k = acting_factor(&eps, &phi, false);
    Ok(b.factors[k].lower(datum, j)?.map(|p| {
        let mut factors = b.factors.clone();
        factors[k] = p;
        CrystalElement { factors }
    }))
}

/// `ε_j` of a tensor element computed from its factors.
pub fn tensor_epsilon(b: &CrystalElement, j: usize) -> Result<u32> {
    let (eps, phi) = factor_eps_phi(b, j)?;
    Ok(tensor_eps_phi(&eps, &phi).0)
}

#[derive(Debug, Clone)]
struct TensorParts {
    factors: Vec<Arc<CrystalGraph>>,
    tuples: Vec<Vec<usize>>,
    strides: Vec<usize>,
    by_radix: Vec<usize>,
}

/// A finite crystal with all root operators tabulated.
#[derive(Debug, Clone)]
pub struct CrystalGraph {
    datum: AffineCartanDatum,
    shape: Shape,
    elements: Vec<CrystalElement>,
    keys: Vec<String>,
    index: HashMap<CrystalElement, usize>,
    weights: Vec<ClassicalWeight>,
    raise: Vec<Vec<Option<usize>>>,
    lower: Vec<Vec<Option<usize>>>,
    eps: Vec<Vec<u32>>,
    phi: Vec<Vec<u32>>,
    source: usize,
    tensor: Option<TensorParts>,
}

type OperatorRow = Vec<(Option<ClPath>, Option<ClPath>, u32, u32)>;

fn operator_row(datum: &AffineCartanDatum, p: &ClPath) -> Result<OperatorRow> {
    datum
        .indices()
        .map(|j| Ok((p.raise(datum, j)?, p.lower(datum, j)?, p.epsilon(j)?, p.phi(j)?)))
        .collect()
}

impl CrystalGraph {
    /// Generates `B(λ)_cl` as the closure of `η_cl(λ)` under `e_j`, `f_j`,
    /// `j ∈ I`, with the default element cap.
    pub fn generate(datum: &AffineCartanDatum, lambda: &LevelZeroDominantWeight) -> Result<Self> {
        Self::generate_capped(datum, lambda, DEFAULT_ELEMENT_CAP)
    }

    pub fn generate_capped(datum: &AffineCartanDatum, lambda: &LevelZeroDominantWeight, cap: usize) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidArgument("λ must have a positive multiplicity".into()));
        }
        let start = ClPath::straight(datum, &lambda.cl(datum))?;
        let mut paths = vec![start.clone()];
        let mut index: HashMap<ClPath, usize> = HashMap::from([(start, 0)]);
        let mut rows: Vec<Option<OperatorRow>> = vec![None];
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let computed: Vec<OperatorRow> = frontier
                .par_iter()
                .map(|&b| operator_row(datum, &paths[b]))
                .collect::<Result<_>>()?;
            let mut next = Vec::new();
            for (&b, row) in frontier.iter().zip(computed) {
                for (r, l, _, _) in &row {
                    for p in [r, l].into_iter().flatten() {
                        if index.contains_key(p) {
                            continue;
                        }
                        if paths.len() >= cap {
                            return Err(Error::CapExceeded {
                                cap,
                                elements: paths.len(),
                                frontier: next.len() + 1,
                            });
                        }
                        index.insert(p.clone(), paths.len());
                        paths.push(p.clone());
                        rows.push(None);
                        next.push(paths.len() - 1);
                    }
                }
                rows[b] = Some(row);
            }
            frontier = next;
        }

        let keys: Vec<String> = paths.iter().map(ClPath::serialize).collect();
        let mut order: Vec<usize> = (0..paths.len()).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut pos = vec![0usize; paths.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let n = paths.len();
        let size = datum.size();
        let mut raise = vec![vec![None; n]; size];
        let mut lower = vec![vec![None; n]; size];
        let mut eps = vec![vec![0; n]; size];
        let mut phi = vec![vec![0; n]; size];
        for (old, row) in rows.into_iter().enumerate() {
            let row = row.expect("every element was expanded");
            for (j, (r, l, e, f)) in row.into_iter().enumerate() {
                raise[j][pos[old]] = r.map(|p| pos[index[&p]]);
                lower[j][pos[old]] = l.map(|p| pos[index[&p]]);
                eps[j][pos[old]] = e;
                phi[j][pos[old]] = f;
            }
        }
        let elements: Vec<CrystalElement> = order.iter().map(|&o| CrystalElement::single(paths[o].clone())).collect();
        let keys: Vec<String> = order.iter().map(|&o| keys[o].clone()).collect();
        let weights = elements.iter().map(CrystalElement::weight).collect();
        let index = elements.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        Ok(CrystalGraph {
            datum: datum.clone(),
            shape: Shape::Path(lambda.clone()),
            elements,
            keys,
            index,
            weights,
            raise,
            lower,
            eps,
            phi,
            source: pos[0],
            tensor: None,
        })
    }

    /// The tensor product of already generated path crystals.
    pub fn tensor(factors: Vec<Arc<CrystalGraph>>, cap: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("a tensor product needs at least one factor".into()));
        }
        let mut lambdas = Vec::with_capacity(factors.len());
        for g in &factors {
            match &g.shape {
                Shape::Path(l) => lambdas.push(l.clone()),
                Shape::Tensor(_) => {
                    return Err(Error::InvalidArgument("tensor factors must be path crystals".into()))
                }
            }
        }
        let datum = factors[0].datum.clone();
        if factors.iter().any(|g| g.datum != datum) {
            return Err(Error::InvalidArgument("tensor factors use different Cartan data".into()));
        }
        let n = factors
            .iter()
            .try_fold(1usize, |acc, g| acc.checked_mul(g.len()))
            .filter(|&n| n <= cap)
            .ok_or(Error::CapExceeded {
                cap,
                elements: cap,
                frontier: 0,
            })?;

        // strides for the mixed-radix numbering with the first factor most significant
        let mut strides = vec![1usize; factors.len()];
        for k in (0..factors.len() - 1).rev() {
            strides[k] = strides[k + 1] * factors[k + 1].len();
        }
        let radix_tuple = |r: usize| -> Vec<usize> {
            factors.iter().zip(&strides).map(|(g, &s)| (r / s) % g.len()).collect()
        };
        let mut entries: Vec<(String, usize)> = (0..n)
            .into_par_iter()
            .map(|r| {
                let t = radix_tuple(r);
                let key: String = t.iter().zip(&factors).map(|(&x, g)| g.keys[x].as_str()).collect();
                (key, r)
            })
            .collect();
        entries.par_sort_unstable();
        let mut by_radix = vec![0usize; n];
        for (p, (_, r)) in entries.iter().enumerate() {
            by_radix[*r] = p;
        }
        let tuples: Vec<Vec<usize>> = entries.iter().map(|(_, r)| radix_tuple(*r)).collect();
        let keys: Vec<String> = entries.into_iter().map(|(k, _)| k).collect();
        let elements: Vec<CrystalElement> = tuples
            .par_iter()
            .map(|t| CrystalElement {
                factors: t.iter().zip(&factors).map(|(&x, g)| g.elements[x].factors[0].clone()).collect(),
            })
            .collect();
        let weights: Vec<ClassicalWeight> = tuples
            .par_iter()
            .map(|t| {
                let mut w = ClassicalWeight::zero(datum.size());
                for (&x, g) in t.iter().zip(&factors) {
                    w += &g.weights[x];
                }
                w
            })
            .collect();
        let index = elements.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();

        let size = datum.size();
        let mut raise = Vec::with_capacity(size);
        let mut lower = Vec::with_capacity(size);
        let mut eps = Vec::with_capacity(size);
        let mut phi = Vec::with_capacity(size);
        let locate = |t: &[usize]| -> usize { by_radix[t.iter().zip(&strides).map(|(x, s)| x * s).sum::<usize>()] };
        for j in 0..size {
            let rows: Vec<(Option<usize>, Option<usize>, u32, u32)> = tuples
                .par_iter()
                .map(|t| {
                    let fe: Vec<u32> = t.iter().zip(&factors).map(|(&x, g)| g.eps[j][x]).collect();
                    let fp: Vec<u32> = t.iter().zip(&factors).map(|(&x, g)| g.phi[j][x]).collect();
                    let (e, p) = tensor_eps_phi(&fe, &fp);
                    let step = |raising: bool| {
                        let k = acting_factor(&fe, &fp, raising);
                        let edge = if raising { &factors[k].raise[j] } else { &factors[k].lower[j] };
                        edge[t[k]].map(|y| {
                            let mut u = t.clone();
                            u[k] = y;
                            locate(&u)
                        })
                    };
                    (step(true), step(false), e, p)
                })
                .collect();
            raise.push(rows.iter().map(|r| r.0).collect());
            lower.push(rows.iter().map(|r| r.1).collect());
            eps.push(rows.iter().map(|r| r.2).collect());
            phi.push(rows.iter().map(|r| r.3).collect());
        }
        let source_tuple: Vec<usize> = factors.iter().map(|g| g.source).collect();
        let source = locate(&source_tuple);
        Ok(CrystalGraph {
            datum,
            shape: Shape::Tensor(lambdas),
            elements,
            keys,
            index,
            weights,
            raise,
            lower,
            eps,
            phi,
            source,
            tensor: Some(TensorParts {
                factors,
                tuples,
                strides,
                by_radix,
            }),
        })
    }

    pub fn datum(&self) -> &AffineCartanDatum {
        &self.datum
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CrystalElement] {
        &self.elements
    }

    pub fn element(&self, b: usize) -> &CrystalElement {
        &self.elements[b]
    }

    pub fn key(&self, b: usize) -> &str {
        &self.keys[b]
    }

    pub fn index_of(&self, element: &CrystalElement) -> Option<usize> {
        self.index.get(element).copied()
    }

    /// Index of a plain path in a path crystal.
    pub fn index_of_path(&self, path: &ClPath) -> Option<usize> {
        self.index_of(&CrystalElement::single(path.clone()))
    }

    pub fn path(&self, b: usize) -> &ClPath {
        &self.elements[b].factors[0]
    }

    pub fn weight(&self, b: usize) -> &ClassicalWeight {
        &self.weights[b]
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn raise(&self, b: usize, j: usize) -> Option<usize> {
        self.raise[j][b]
    }

    pub fn lower(&self, b: usize, j: usize) -> Option<usize> {
        self.lower[j][b]
    }

    pub fn epsilon(&self, b: usize, j: usize) -> u32 {
        self.eps[j][b]
    }

    pub fn phi(&self, b: usize, j: usize) -> u32 {
        self.phi[j][b]
    }

    /// `e_j^max b`.
    pub fn raise_max(&self, b: usize, j: usize) -> usize {
        let mut cur = b;
        while let Some(next) = self.raise[j][cur] {
            cur = next;
        }
        cur
    }

    /// Number of tensor factors (1 for a path crystal).
    pub fn arity(&self) -> usize {
        self.tensor.as_ref().map_or(1, |t| t.factors.len())
    }

    /// Factor graphs of a tensor product.
    pub fn factor_graphs(&self) -> Option<&[Arc<CrystalGraph>]> {
        self.tensor.as_ref().map(|t| t.factors.as_slice())
    }

    /// Factor indices of a tensor element.
    pub fn tuple(&self, b: usize) -> Option<&[usize]> {
        self.tensor.as_ref().map(|t| t.tuples[b].as_slice())
    }

    /// The tensor element with the given factor indices.
    pub fn index_of_tuple(&self, tuple: &[usize]) -> Option<usize> {
        let t = self.tensor.as_ref()?;
        if tuple.len() != t.factors.len() || tuple.iter().zip(&t.factors).any(|(&x, g)| x >= g.len()) {
            return None;
        }
        Some(t.by_radix[tuple.iter().zip(&t.strides).map(|(x, s)| x * s).sum::<usize>()])
    }

    /// The factor `e_j` (or `f_j`) acts on at `b`; `0` for path crystals.
    pub fn acting_factor(&self, b: usize, j: usize, raising: bool) -> usize {
        match &self.tensor {
            None => 0,
            Some(t) => {
                let tuple = &t.tuples[b];
                let fe: Vec<u32> = tuple.iter().zip(&t.factors).map(|(&x, g)| g.eps[j][x]).collect();
                let fp: Vec<u32> = tuple.iter().zip(&t.factors).map(|(&x, g)| g.phi[j][x]).collect();
                acting_factor(&fe, &fp, raising)
            }
        }
    }

    /// Checks edge inverses, weight steps, string lengths against `ε`/`φ`,
    /// and connectivity from the source.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        let corrupt = |msg: String| Err(Error::GraphCorrupt(msg));
        for j in self.datum.indices() {
            let alpha = self.datum.simple_root(j);
            for b in 0..n {
                if let Some(c) = self.raise[j][b] {
                    if self.lower[j][c] != Some(b) {
                        return corrupt(format!("f_{j} does not invert e_{j} at {}", self.keys[b]));
                    }
                    if self.weights[c] != &self.weights[b] + &alpha {
                        return corrupt(format!("e_{j} changes the weight wrongly at {}", self.keys[b]));
                    }
                }
                if let Some(c) = self.lower[j][b] {
                    if self.raise[j][c] != Some(b) {
                        return corrupt(format!("e_{j} does not invert f_{j} at {}", self.keys[b]));
                    }
                }
                let d = self.eps[j][b] as i64 - self.phi[j][b] as i64;
                if d != -self.weights[b].pairing(j) {
                    return corrupt(format!("ε_{j} - φ_{j} ≠ -wt(h_{j}) at {}", self.keys[b]));
                }
            }
            // string lengths: walk each j-string from its top
            let mut seen = vec![false; n];
            for top in 0..n {
                if self.raise[j][top].is_some() {
                    continue;
                }
                let mut string = vec![top];
                let mut cur = top;
                while let Some(next) = self.lower[j][cur] {
                    if string.len() > n {
                        return corrupt(format!("{j}-string from {} does not terminate", self.keys[top]));
                    }
                    string.push(next);
                    cur = next;
                }
                let last = string.len() - 1;
                for (k, &b) in string.iter().enumerate() {
                    seen[b] = true;
                    if self.eps[j][b] as usize != k || self.phi[j][b] as usize != last - k {
                        return corrupt(format!(
                            "ε_{j}/φ_{j} at {} disagree with the {j}-string (expected {k}/{})",
                            self.keys[b],
                            last - k
                        ));
                    }
                }
            }
            if let Some(b) = seen.iter().position(|s| !s) {
                return corrupt(format!("{} lies on a {j}-cycle", self.keys[b]));
            }
        }
        let reached = self.reachable_from(self.source);
        if reached.len() != n {
            return corrupt(format!("only {} of {n} elements are connected to the source", reached.len()));
        }
        if self.tensor.is_none() {
            for e in &self.elements {
                e.factors[0].check_local_minima(&self.datum)?;
            }
        }
        Ok(())
    }

    fn reachable_from(&self, start: usize) -> HashSet<usize> {
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(b) = queue.pop_front() {
            for j in self.datum.indices() {
                for c in [self.raise[j][b], self.lower[j][b]].into_iter().flatten() {
                    if seen.insert(c) {
                        queue.push_back(c);
                    }
                }
            }
        }
        seen
    }

    /// The Weyl group action `S_j`.
    pub fn weyl_s(&self, j: usize, b: usize) -> Result<usize> {
        self.datum.require_index(j)?;
        let l = self.weights[b].pairing(j);
        let (edges, steps) = if l >= 0 { (&self.lower[j], l) } else { (&self.raise[j], -l) };
        let mut cur = b;
        for _ in 0..steps {
            cur = edges[cur].ok_or_else(|| {
                Error::GraphCorrupt(format!("S_{j} needs {steps} steps from {} but the string ends", self.keys[b]))
            })?;
        }
        Ok(cur)
    }

    /// `S_w = S_{j_1} ⋯ S_{j_p}` for `w = r_{j_1} ⋯ r_{j_p}`; the rightmost
    /// letter acts first.
    pub fn weyl_w(&self, word: &[usize], b: usize) -> Result<usize> {
        word.iter().rev().try_fold(b, |cur, &j| self.weyl_s(j, cur))
    }

    fn killed_somewhere(&self, b: usize) -> bool {
        self.datum
            .indices()
            .all(|j| self.raise[j][b].is_none() || self.lower[j][b].is_none())
    }

    /// The closure of `{b}` under all `S_j`, `j ∈ I`.
    pub fn weyl_closure(&self, b: usize) -> Result<Vec<usize>> {
        let mut seen = HashSet::from([b]);
        let mut queue = VecDeque::from([b]);
        let mut out = vec![b];
        while let Some(c) = queue.pop_front() {
            for j in self.datum.indices() {
                let d = self.weyl_s(j, c)?;
                if seen.insert(d) {
                    queue.push_back(d);
                    out.push(d);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Whether every `S_w b` is killed by `e_j` or by `f_j` for each `j`.
    pub fn is_extremal(&self, b: usize) -> Result<bool> {
        Ok(self.weyl_closure(b)?.into_iter().all(|c| self.killed_somewhere(c)))
    }

    /// Extremality of every element at once, via the components of the
    /// `S_j` action.
    pub fn extremal_flags(&self) -> Result<Vec<bool>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for b in 0..n {
            for j in self.datum.indices() {
                let c = self.weyl_s(j, b)?;
                let (rb, rc) = (find(&mut parent, b), find(&mut parent, c));
                if rb != rc {
                    parent[rb] = rc;
                }
            }
        }
        let mut good = vec![true; n];
        for b in 0..n {
            if !self.killed_somewhere(b) {
                let r = find(&mut parent, b);
                good[r] = false;
            }
        }
        Ok((0..n).map(|b| good[find(&mut parent, b)]).collect())
    }

    /// `||b||² = (wt b, wt b)_cl`.
    pub fn norm_squared(&self, b: usize) -> Result<Rational> {
        self.datum.cl_form(&self.weights[b], &self.weights[b])
    }

    /// Checks that the graph is a simple crystal generated by its source.
    pub fn check_simple(&self) -> SimpleReport {
        let mut report = SimpleReport {
            shape: self.shape.to_string(),
            elements: self.len(),
            extremal: 0,
            passed: false,
            failure: None,
            counterexample: None,
        };
        match self.simple_failure() {
            Ok(None) => report.passed = true,
            Ok(Some((msg, b))) => {
                report.failure = Some(msg);
                report.counterexample = b.map(|b| self.keys[b].clone());
            }
            Err(e) => report.failure = Some(e.to_string()),
        }
        if let Ok(flags) = self.extremal_flags() {
            report.extremal = flags.iter().filter(|&&f| f).count();
        }
        report
    }

    fn simple_failure(&self) -> Result<Option<(String, Option<usize>)>> {
        if let Err(e) = self.validate() {
            return Ok(Some((e.to_string(), None)));
        }
        if let Some(b) = (0..self.len()).find(|&b| !self.datum.is_level_zero(&self.weights[b])) {
            return Ok(Some(("weight is not of level zero".into(), Some(b))));
        }
        let top = &self.weights[self.source];
        if !self.datum.is_dominant(top) {
            return Ok(Some(("source weight is not dominant".into(), Some(self.source))));
        }
        let orbit = self.datum.finite_orbit(top)?;
        let mut counts: HashMap<&ClassicalWeight, usize> = HashMap::new();
        for w in &self.weights {
            *counts.entry(w).or_default() += 1;
        }
        for mu in &orbit {
            let c = counts.get(mu).copied().unwrap_or(0);
            if c != 1 {
                return Ok(Some((format!("extremal weight {mu} has multiplicity {c}"), None)));
            }
        }
        let flags = self.extremal_flags()?;
        let source_orbit: HashSet<usize> = self.weyl_closure(self.source)?.into_iter().collect();
        for b in 0..self.len() {
            if flags[b] != source_orbit.contains(&b) {
                let msg = if flags[b] {
                    "extremal element outside the Weyl orbit of the source"
                } else {
                    "Weyl orbit of the source contains a non-extremal element"
                };
                return Ok(Some((msg.into(), Some(b))));
            }
        }
        let orbit_weights: HashSet<&ClassicalWeight> = source_orbit.iter().map(|&b| &self.weights[b]).collect();
        if orbit_weights.len() != source_orbit.len() || orbit_weights.len() != orbit.len() {
            return Ok(Some(("extremal elements do not match the Weyl orbit of cl(λ)".into(), None)));
        }
        if self.tensor.is_none() {
            for &b in &source_orbit {
                let p = self.path(b);
                if !p.is_straight() || p.initial() != &self.weights[b] {
                    return Ok(Some(("extremal path is not a straight line".into(), Some(b))));
                }
            }
        }
        Ok(None)
    }

    /// A copy with one element removed and its edges cut; for negative
    /// controls of the checks.
    pub fn without_element(&self, victim: usize) -> CrystalGraph {
        let keep: Vec<usize> = (0..self.len()).filter(|&b| b != victim).collect();
        let remap = |b: usize| -> Option<usize> {
            match b.cmp(&victim) {
                std::cmp::Ordering::Less => Some(b),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(b - 1),
            }
        };
        let edges = |table: &Vec<Vec<Option<usize>>>| -> Vec<Vec<Option<usize>>> {
            table
                .iter()
                .map(|row| keep.iter().map(|&b| row[b].and_then(remap)).collect())
                .collect()
        };
        let pick = |table: &Vec<Vec<u32>>| -> Vec<Vec<u32>> {
            table.iter().map(|row| keep.iter().map(|&b| row[b]).collect()).collect()
        };
        let elements: Vec<CrystalElement> = keep.iter().map(|&b| self.elements[b].clone()).collect();
        CrystalGraph {
            datum: self.datum.clone(),
            shape: self.shape.clone(),
            index: elements.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect(),
            elements,
            keys: keep.iter().map(|&b| self.keys[b].clone()).collect(),
            weights: keep.iter().map(|&b| self.weights[b].clone()).collect(),
            raise: edges(&self.raise),
            lower: edges(&self.lower),
            eps: pick(&self.eps),
            phi: pick(&self.phi),
            source: remap(self.source).unwrap_or(0),
            tensor: None,
        }
    }

    /// Number of elements of each weight, ordered by weight.
    pub fn weight_multiplicities(&self) -> BTreeMap<ClassicalWeight, usize> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }

    /// JSON export: elements by canonical key, `f_j` edges per `j`, source.
    pub fn to_json(&self) -> serde_json::Value {
        let mut edges = serde_json::Map::new();
        for j in self.datum.indices() {
            let list: Vec<[usize; 2]> = (0..self.len())
                .filter_map(|b| self.lower[j][b].map(|c| [b, c]))
                .collect();
            edges.insert(j.to_string(), serde_json::json!(list));
        }
        serde_json::json!({
            "elements": self.keys,
            "edges": edges,
            "source": self.source,
        })
    }
}

/// Outcome of [`CrystalGraph::check_simple`].
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SimpleReport {
    pub shape: String,
    pub elements: usize,
    pub extremal: usize,
    pub passed: bool,
    pub failure: Option<String>,
    pub counterexample: Option<String>,
}

#[cfg(test)]
mod tests;
