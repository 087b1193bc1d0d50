//! Classically restricted one-dimensional sums, path degree sums, and
//! Kostka-Foulkes polynomials in type A together with an independent
//! tableau/charge implementation to compare against.

use std::fmt;

use crate::cartan::{AffineCartanDatum, ClassicalWeight, Family, LevelZeroDominantWeight};
use crate::context::Context;
use crate::crystal::CrystalGraph;
use crate::energy::EnergyFunction;
use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;

/// Elements killed by every `e_j`, `j ∈ I_0`.
pub fn restricted_highest(graph: &CrystalGraph) -> Vec<usize> {
    let datum = graph.datum();
    (0..graph.len())
        .filter(|&b| datum.classical_indices().all(|j| graph.raise(b, j).is_none()))
        .collect()
}

/// `X(B_i, μ; q) = Σ q^{D_i(b)}` over classically highest `b ∈ B_i` of weight `μ`.
pub fn one_dim_sum(ctx: &Context, seq: &[usize], mu: &ClassicalWeight) -> Result<LaurentPolynomial> {
    let datum = ctx.datum();
    if mu.len() != datum.size() || !datum.is_level_zero(mu) {
        return Err(Error::NotLevelZero(mu.to_string()));
    }
    let f = EnergyFunction::new(ctx, seq)?;
    let g = f.tensor();
    let mut out = LaurentPolynomial::zero();
    for b in restricted_highest(g) {
        if g.weight(b) == mu {
            out.add_term(f.value(b), 1);
        }
    }
    Ok(out)
}

/// `Σ q^{Deg_λ(η)}` over classically highest `η ∈ B(λ)_cl` with `η(1) = μ`.
pub fn path_degree_sum(ctx: &Context, lambda: &LevelZeroDominantWeight, mu: &ClassicalWeight) -> Result<LaurentPolynomial> {
    let datum = ctx.datum();
    if mu.len() != datum.size() || !datum.is_level_zero(mu) {
        return Err(Error::NotLevelZero(mu.to_string()));
    }
    let g = ctx.path_crystal(lambda)?;
    let deg = ctx.degree_table(lambda)?;
    let mut out = LaurentPolynomial::zero();
    for b in restricted_highest(&g) {
        if g.weight(b) == mu {
            out.add_term(deg.value(b), 1);
        }
    }
    Ok(out)
}

/// `q^{-D_i^ext} X(B_i, μ; q)`, the side of the 1d-sum identity that depends
/// on the ordering of `i`.
pub fn normalized_one_dim_sum(ctx: &Context, seq: &[usize], mu: &ClassicalWeight) -> Result<LaurentPolynomial> {
    let ext = EnergyFunction::new(ctx, seq)?.ext();
    Ok(one_dim_sum(ctx, seq, mu)?.shift(-ext))
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zeros are dropped; anything else must be weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidArgument(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// The partition with parts `i_1 ≥ i_2 ≥ ⋯`.
    pub fn from_sequence(seq: &[usize]) -> Result<Self> {
        Self::new(seq.iter().map(|&i| i as u32).collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    /// All partitions of `n` with at most `max_parts` parts, in reverse
    /// lexicographic order.
    pub fn all(n: u32, max_parts: usize) -> Vec<Partition> {
        fn go(rest: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                cur.push(p);
                go(rest - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, max_parts, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

fn require_type_a(datum: &AffineCartanDatum) -> Result<usize> {
    if datum.family() != Family::A {
        return Err(Error::InvalidArgument(format!(
            "partitions are only attached to weights in type A, not {}",
            datum.label()
        )));
    }
    Ok(datum.size())
}

/// Writes the dominant `μ = Σ μ^(i) cl(ϖ_i)` in type `A_{ℓ-1}^(1)` as the
/// partition `(Σ_{i≥1} μ^(i), Σ_{i≥2} μ^(i), …, μ^(ℓ-1), 0)` and adds `c`
/// columns of height `ℓ` so that the size becomes `n`. Returns `None` when
/// no such `c ≥ 0` exists.
pub fn weight_to_partition(datum: &AffineCartanDatum, mu: &ClassicalWeight, n: u32) -> Result<Option<Partition>> {
    let ell = require_type_a(datum)?;
    if mu.len() != ell || !datum.is_level_zero(mu) {
        return Err(Error::NotLevelZero(mu.to_string()));
    }
    if !datum.is_dominant(mu) {
        return Err(Error::NotDominant(mu.to_string()));
    }
    let mut parts = vec![0i64; ell];
    for r in (0..ell - 1).rev() {
        parts[r] = parts[r + 1] + mu.pairing(r + 1);
    }
    let boxes: i64 = parts.iter().sum();
    let spare = n as i64 - boxes;
    if spare < 0 || spare % ell as i64 != 0 {
        return Ok(None);
    }
    let c = spare / ell as i64;
    Partition::new(parts.iter().map(|p| (p + c) as u32).collect()).map(Some)
}

/// Inverse of [`weight_to_partition`]: `μ^(i) = ν_i - ν_{i+1}`.
pub fn partition_to_weight(datum: &AffineCartanDatum, nu: &Partition) -> Result<ClassicalWeight> {
    let ell = require_type_a(datum)?;
    if nu.len() > ell {
        return Err(Error::InvalidArgument(format!("{nu} has more than {ell} parts")));
    }
    let part = |r: usize| nu.0.get(r).copied().unwrap_or(0) as i64;
    let mult: Vec<i64> = (0..ell - 1).map(|r| part(r) - part(r + 1)).collect();
    datum.weight_from_multiplicities(&mult)
}

/// `K_{μ^t, λ†}(q) = Σ q^{-Deg_λ(η)}` over classically highest `η ∈ B(λ)_cl`
/// of weight `μ`, where `λ = Σ ϖ_{i_k}` and `λ†` is the partition `i`.
pub fn kostka_foulkes_paths(ctx: &Context, seq: &[usize], mu: &ClassicalWeight) -> Result<LaurentPolynomial> {
    let datum = ctx.datum();
    require_type_a(datum)?;
    if seq.is_empty() {
        return Err(Error::InvalidArgument("the sequence i must be nonempty".into()));
    }
    if seq.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument(format!("{seq:?} is not weakly decreasing")));
    }
    if !datum.is_dominant(mu) {
        return Err(Error::NotDominant(mu.to_string()));
    }
    let lambda = LevelZeroDominantWeight::from_sequence(datum, seq)?;
    Ok(path_degree_sum(ctx, &lambda, mu)?.invert_variable())
}

/// `Σ q^{charge(T)}` over semistandard tableaux `T` of the given shape and
/// content.
pub fn charge_oracle(shape: &Partition, content: &Partition) -> Result<LaurentPolynomial> {
    if shape.size() != content.size() {
        return Err(Error::InvalidArgument(format!(
            "shape {shape} and content {content} have different sizes"
        )));
    }
    let mut out = LaurentPolynomial::zero();
    for t in semistandard_tableaux(shape, content) {
        out.add_term(charge(&reading_word(&t)) as i64, 1);
    }
    Ok(out)
}

/// Semistandard tableaux as lists of rows, enumerated by adding one
/// horizontal strip per letter.
pub fn semistandard_tableaux(shape: &Partition, content: &Partition) -> Vec<Vec<Vec<u32>>> {
    fn strips(
        shape: &[u32],
        cur: &[u32],
        row: usize,
        left: u32,
        next: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if row == shape.len() {
            if left == 0 {
                out.push(next.clone());
            }
            return;
        }
        let cap = if row == 0 { shape[0] } else { shape[row].min(cur[row - 1]) };
        for len in cur[row]..=cap {
            let added = len - cur[row];
            if added > left {
                break;
            }
            next.push(len);
            strips(shape, cur, row + 1, left - added, next, out);
            next.pop();
        }
    }
    fn fill(
        shape: &[u32],
        content: &[u32],
        letter: usize,
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if letter == content.len() {
            out.push(rows.clone());
            return;
        }
        let cur: Vec<u32> = rows.iter().map(|r| r.len() as u32).collect();
        let mut options = Vec::new();
        strips(shape, &cur, 0, content[letter], &mut Vec::new(), &mut options);
        for next in options {
            for (r, &len) in next.iter().enumerate() {
                rows[r].resize(len as usize, letter as u32 + 1);
            }
            fill(shape, content, letter + 1, rows, out);
            for (r, &len) in cur.iter().enumerate() {
                rows[r].truncate(len as usize);
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); shape.len()];
    fill(&shape.0, &content.0, 0, &mut rows, &mut out);
    out
}

/// Rows read left to right, from the bottom row to the top row.
pub fn reading_word(tableau: &[Vec<u32>]) -> Vec<u32> {
    tableau.iter().rev().flat_map(|r| r.iter().copied()).collect()
}

/// Charge of a word with partition content, via its standard subwords.
pub fn charge(word: &[u32]) -> u32 {
    let mut remaining: Vec<(usize, u32)> = word.iter().copied().enumerate().collect();
    let mut total = 0;
    while !remaining.is_empty() {
        // Pick 1, 2, … scanning leftwards cyclically from the right end.
        let mut picked = Vec::new();
        let mut pos = remaining.len();
        let mut letter = 1;
        let mut index = 0;
        let mut prev: Option<usize> = None;
        loop {
            let n = remaining.len();
            let found = (1..=n)
                .map(|s| (pos + n - s) % n)
                .find(|&p| remaining[p].1 == letter && !picked.contains(&p));
            let Some(p) = found else { break };
            if prev.is_some_and(|q| p > q) {
                // letter sits to the right of its predecessor
                index += 1;
            }
            total += index;
            picked.push(p);
            prev = Some(p);
            pos = p;
            letter += 1;
        }
        if picked.is_empty() {
            break;
        }
        picked.sort_unstable();
        for p in picked.into_iter().rev() {
            remaining.remove(p);
        }
    }
    total
}
