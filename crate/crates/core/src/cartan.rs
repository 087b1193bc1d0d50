//! Affine Cartan data and classical weights.
//!
//! Everything here lives in the classical weight lattice: a weight is stored
//! as its vector of pairings with the simple coroots `h_j`, `j ∈ I`, so the
//! null root never appears explicitly. Node `0` is the distinguished affine
//! node and `I_0 = I \ {0}`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// Default cap on the size of a finite Weyl orbit.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

const SUPPORTED: &str = "A (rank ℓ ≥ 2, giving A_{ℓ-1}^(1)), C (n ≥ 2, C_n^(1)), D (n ≥ 4, D_n^(1))";

/// Untwisted affine families with shipped tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::UnsupportedType {
                family: other.to_string(),
                rank: 0,
                supported: SUPPORTED,
            }),
        }
    }
}

/// Diagram description of one affine type: squared root lengths, bonds with
/// their two Cartan entries, marks and comarks.
struct Table {
    lengths: Vec<i64>,
    /// `(i, j, a_ij, a_ji)`
    bonds: Vec<(usize, usize, i64, i64)>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
}

fn table(family: Family, rank: usize) -> Result<Table> {
    let unsupported = || Error::UnsupportedType {
        family: family.to_string(),
        rank,
        supported: SUPPORTED,
    };
    match family {
        // A_{ℓ-1}^(1): the cyclic diagram on ℓ nodes; ℓ = 2 is the double bond.
        Family::A => {
            if rank < 2 {
                return Err(unsupported());
            }
            let l = rank;
            let bonds = if l == 2 {
                vec![(0, 1, -2, -2)]
            } else {
                (0..l).map(|i| (i, (i + 1) % l, -1, -1)).collect()
            };
            Ok(Table {
                lengths: vec![2; l],
                bonds,
                marks: vec![1; l],
                comarks: vec![1; l],
            })
        }
        // C_n^(1): 0 => 1 - 2 - ... - (n-1) <= n, long roots at both ends.
        Family::C => {
            if rank < 2 {
                return Err(unsupported());
            }
            let n = rank;
            let mut lengths = vec![2; n + 1];
            lengths[0] = 4;
            lengths[n] = 4;
            let mut bonds = vec![(0, 1, -1, -2)];
            for i in 1..n - 1 {
                bonds.push((i, i + 1, -1, -1));
            }
            bonds.push((n - 1, n, -2, -1));
            let mut marks = vec![2; n + 1];
            marks[0] = 1;
            marks[n] = 1;
            Ok(Table {
                lengths,
                bonds,
                marks,
                comarks: vec![1; n + 1],
            })
        }
        // D_n^(1): forks at node 2 (nodes 0, 1) and at node n-2 (nodes n-1, n).
        Family::D => {
            if rank < 4 {
                return Err(unsupported());
            }
            let n = rank;
            let mut bonds = vec![(0, 2, -1, -1), (1, 2, -1, -1)];
            for i in 2..n - 2 {
                bonds.push((i, i + 1, -1, -1));
            }
            bonds.push((n - 2, n - 1, -1, -1));
            bonds.push((n - 2, n, -1, -1));
            let mut marks = vec![2; n + 1];
            for k in [0, 1, n - 1, n] {
                marks[k] = 1;
            }
            Ok(Table {
                lengths: vec![2; n + 1],
                bonds,
                comarks: marks.clone(),
                marks,
            })
        }
    }
}

/// The affine Cartan matrix together with marks, comarks and the symmetrized
/// root form of one supported type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineCartanDatum {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    root_form: Vec<Vec<i64>>,
    a0: i64,
    /// Gram matrix of `(·,·)_cl` in pairing coordinates on `I_0`.
    cl_gram: Vec<Vec<Rational>>,
}

/// Builds the datum of the given family and rank.
///
/// `rank` is `ℓ` for type `A_{ℓ-1}^(1)` and `n` for `C_n^(1)`, `D_n^(1)`.
pub fn datum_for(family: Family, rank: usize) -> Result<AffineCartanDatum> {
    let t = table(family, rank)?;
    let size = t.lengths.len();
    let mut cartan = vec![vec![0i64; size]; size];
    let mut root_form = vec![vec![0i64; size]; size];
    for i in 0..size {
        cartan[i][i] = 2;
        root_form[i][i] = t.lengths[i];
    }
    for &(i, j, aij, aji) in &t.bonds {
        cartan[i][j] = aij;
        cartan[j][i] = aji;
        // (α_i, α_j) = a_ij (α_i, α_i) / 2
        let ip = aij * t.lengths[i] / 2;
        root_form[i][j] = ip;
        root_form[j][i] = ip;
    }
    let mut datum = AffineCartanDatum {
        family,
        rank,
        cartan,
        marks: t.marks,
        comarks: t.comarks,
        root_form,
        a0: 1,
        cl_gram: Vec::new(),
    };
    datum.validate()?;
    datum.cl_gram = datum.compute_cl_gram()?;
    Ok(datum)
}

impl AffineCartanDatum {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `|I|`.
    pub fn size(&self) -> usize {
        self.cartan.len()
    }

    /// The classical index set `I_0 = {1, …, |I|-1}`.
    pub fn classical_indices(&self) -> std::ops::Range<usize> {
        1..self.size()
    }

    /// The full index set `I`.
    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `a_{ij} = α_j(h_i)`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn root_form(&self) -> &[Vec<i64>] {
        &self.root_form
    }

    pub fn a0(&self) -> i64 {
        self.a0
    }

    /// Short human label such as `A_2^(1)`.
    pub fn label(&self) -> String {
        let n = match self.family {
            Family::A => self.rank - 1,
            _ => self.rank,
        };
        format!("{}_{}^(1)", self.family, n)
    }

    fn validate(&self) -> Result<()> {
        let n = self.size();
        let bad = |msg: String| Err(Error::InvalidDatum(format!("{}: {msg}", self.label())));
        for i in 0..n {
            if self.cartan[i][i] != 2 {
                return bad(format!("a_{i}{i} != 2"));
            }
            for j in 0..n {
                if i != j {
                    if self.cartan[i][j] > 0 {
                        return bad(format!("a_{i}{j} > 0"));
                    }
                    if (self.cartan[i][j] == 0) != (self.cartan[j][i] == 0) {
                        return bad(format!("a_{i}{j} and a_{j}{i} disagree on vanishing"));
                    }
                }
                if self.root_form[i][j] != self.root_form[j][i] {
                    return bad(format!("root form not symmetric at ({i},{j})"));
                }
                // 2(α_i, α_j) / (α_j, α_j) = a_ji
                if 2 * self.root_form[i][j] != self.cartan[j][i] * self.root_form[j][j] {
                    return bad(format!("root form does not symmetrize a_{j}{i}"));
                }
            }
            if self.root_form[i][i] <= 0 {
                return bad(format!("(α_{i}, α_{i}) <= 0"));
            }
            let row: i64 = (0..n).map(|j| self.cartan[i][j] * self.marks[j]).sum();
            if row != 0 {
                return bad(format!("δ not in the kernel at row {i}"));
            }
            let col: i64 = (0..n).map(|k| self.comarks[k] * self.cartan[k][i]).sum();
            if col != 0 {
                return bad(format!("c not in the left kernel at column {i}"));
            }
        }
        if self.a0 != self.marks[0] {
            return bad("a_0 does not match the mark of node 0".into());
        }
        Ok(())
    }

    /// Gram matrix `G` with `(μ, ν)_cl = μ_0ᵀ G ν_0`, where `μ_0` is the
    /// restriction of the pairing vector to `I_0`.
    fn compute_cl_gram(&self) -> Result<Vec<Vec<Rational>>> {
        let m = self.size() - 1;
        let fin: Vec<Vec<Rational>> = (1..=m)
            .map(|i| (1..=m).map(|j| Rational::from_integer(self.cartan[i][j].into())).collect())
            .collect();
        let inv = invert(&fin)
            .ok_or_else(|| Error::InvalidDatum(format!("{}: finite block singular", self.label())))?;
        // G = A^{-T} B A^{-1}
        let b: Vec<Vec<Rational>> = (1..=m)
            .map(|i| (1..=m).map(|j| Rational::from_integer(self.root_form[i][j].into())).collect())
            .collect();
        let mut g = vec![vec![Rational::zero(); m]; m];
        for p in 0..m {
            for q in 0..m {
                let mut acc = Rational::zero();
                for i in 0..m {
                    if inv[i][p].is_zero() {
                        continue;
                    }
                    for j in 0..m {
                        acc += &inv[i][p] * &b[i][j] * &inv[j][q];
                    }
                }
                g[p][q] = acc;
            }
        }
        Ok(g)
    }

    /// `cl(α_j)`: the vector `(a_{ij})_{i ∈ I}`.
    pub fn simple_root(&self, j: usize) -> ClassicalWeight {
        ClassicalWeight((0..self.size()).map(|i| self.cartan[i][j]).collect())
    }

    /// `level(μ) = Σ_j a_j^∨ μ(h_j)`.
    pub fn level(&self, mu: &ClassicalWeight) -> i64 {
        mu.0.iter().zip(&self.comarks).map(|(x, c)| x * c).sum()
    }

    pub fn is_level_zero(&self, mu: &ClassicalWeight) -> bool {
        mu.len() == self.size() && self.level(mu) == 0
    }

    /// Level zero and nonnegative on every `h_j`, `j ∈ I_0`.
    pub fn is_dominant(&self, mu: &ClassicalWeight) -> bool {
        self.is_level_zero(mu) && self.classical_indices().all(|j| mu.0[j] >= 0)
    }

    pub fn is_anti_dominant(&self, mu: &ClassicalWeight) -> bool {
        self.is_level_zero(mu) && self.classical_indices().all(|j| mu.0[j] <= 0)
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j < self.size() {
            Ok(())
        } else {
            Err(Error::BadIndex { index: j, set: "I" })
        }
    }

    fn check_classical_index(&self, i: usize) -> Result<()> {
        if i >= 1 && i < self.size() {
            Ok(())
        } else {
            Err(Error::BadIndex { index: i, set: "I_0" })
        }
    }

    /// `cl(ϖ_i)` with `ϖ_i = Λ_i - a_i^∨ Λ_0`.
    pub fn fundamental_cl(&self, i: usize) -> Result<ClassicalWeight> {
        self.check_classical_index(i)?;
        let mut v = vec![0; self.size()];
        v[i] = 1;
        v[0] = -self.comarks[i];
        Ok(ClassicalWeight(v))
    }

    /// `r_j μ = μ - μ(h_j) cl(α_j)`.
    pub fn reflect(&self, j: usize, mu: &ClassicalWeight) -> ClassicalWeight {
        let k = mu.0[j];
        if k == 0 {
            return mu.clone();
        }
        ClassicalWeight(
            mu.0
                .iter()
                .enumerate()
                .map(|(i, x)| x - k * self.cartan[i][j])
                .collect(),
        )
    }

    /// Applies `r_{j_1} r_{j_2} ⋯ r_{j_p}` (the rightmost letter acts first).
    pub fn reflect_word(&self, word: &[usize], mu: &ClassicalWeight) -> ClassicalWeight {
        word.iter().rev().fold(mu.clone(), |acc, &j| self.reflect(j, &acc))
    }

    /// The `W̄`-orbit of a level-zero weight, capped at [`DEFAULT_ORBIT_CAP`].
    pub fn finite_orbit(&self, mu: &ClassicalWeight) -> Result<BTreeSet<ClassicalWeight>> {
        self.finite_orbit_capped(mu, DEFAULT_ORBIT_CAP)
    }

    pub fn finite_orbit_capped(
        &self,
        mu: &ClassicalWeight,
        cap: usize,
    ) -> Result<BTreeSet<ClassicalWeight>> {
        self.orbit_under(mu, self.classical_indices(), cap)
    }

    /// Orbit under the reflections of an arbitrary subset of `I`.
    pub fn orbit_under(
        &self,
        mu: &ClassicalWeight,
        generators: impl IntoIterator<Item = usize> + Clone,
        cap: usize,
    ) -> Result<BTreeSet<ClassicalWeight>> {
        if !self.is_level_zero(mu) {
            return Err(Error::NotLevelZero(mu.to_string()));
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(mu.clone());
        queue.push_back(mu.clone());
        while let Some(nu) = queue.pop_front() {
            for j in generators.clone() {
                let r = self.reflect(j, &nu);
                if !seen.contains(&r) {
                    if seen.len() >= cap {
                        return Err(Error::OrbitTooLarge {
                            weight: mu.to_string(),
                            cap,
                        });
                    }
                    seen.insert(r.clone());
                    queue.push_back(r);
                }
            }
        }
        Ok(seen)
    }

    /// The unique anti-dominant element of the finite orbit of `μ`.
    pub fn anti_dominant(&self, mu: &ClassicalWeight) -> Result<ClassicalWeight> {
        if !self.is_level_zero(mu) {
            return Err(Error::NotLevelZero(mu.to_string()));
        }
        // Reflect along any positive pairing; this terminates at the
        // anti-dominant chamber.
        let mut nu = mu.clone();
        loop {
            match self.classical_indices().find(|&j| nu.0[j] > 0) {
                Some(j) => nu = self.reflect(j, &nu),
                None => return Ok(nu),
            }
        }
    }

    /// The unique dominant element of the finite orbit of `μ`.
    pub fn dominant(&self, mu: &ClassicalWeight) -> Result<ClassicalWeight> {
        if !self.is_level_zero(mu) {
            return Err(Error::NotLevelZero(mu.to_string()));
        }
        let mut nu = mu.clone();
        loop {
            match self.classical_indices().find(|&j| nu.0[j] < 0) {
                Some(j) => nu = self.reflect(j, &nu),
                None => return Ok(nu),
            }
        }
    }

    /// The classical bilinear form `(μ, ν)_cl` on level-zero weights.
    pub fn cl_form(&self, mu: &ClassicalWeight, nu: &ClassicalWeight) -> Result<Rational> {
        for w in [mu, nu] {
            if !self.is_level_zero(w) {
                return Err(Error::NotLevelZero(w.to_string()));
            }
        }
        let m = self.size() - 1;
        let mut acc = Rational::zero();
        for p in 0..m {
            if mu.0[p + 1] == 0 {
                continue;
            }
            for q in 0..m {
                if nu.0[q + 1] == 0 {
                    continue;
                }
                acc += &self.cl_gram[p][q] * Rational::from_integer((mu.0[p + 1] * nu.0[q + 1]).into());
            }
        }
        Ok(acc)
    }

    /// Coefficients of `μ` in the basis `{cl(α_j)}_{j ∈ I_0}`.
    pub fn root_coordinates(&self, mu: &ClassicalWeight) -> Result<Vec<Rational>> {
        if !self.is_level_zero(mu) {
            return Err(Error::NotLevelZero(mu.to_string()));
        }
        let m = self.size() - 1;
        let fin: Vec<Vec<Rational>> = (1..=m)
            .map(|i| (1..=m).map(|j| Rational::from_integer(self.cartan[i][j].into())).collect())
            .collect();
        let inv = invert(&fin).expect("finite Cartan block is invertible");
        Ok((0..m)
            .map(|i| {
                (0..m)
                    .map(|j| &inv[i][j] * Rational::from_integer(mu.0[j + 1].into()))
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect())
    }

    /// Builds a classical weight from its pairings, checking the length.
    pub fn weight(&self, pairings: Vec<i64>) -> Result<ClassicalWeight> {
        if pairings.len() != self.size() {
            return Err(Error::InvalidArgument(format!(
                "weight has {} pairings, expected {}",
                pairings.len(),
                self.size()
            )));
        }
        Ok(ClassicalWeight(pairings))
    }

    /// `Σ_{i ∈ I_0} m_i cl(ϖ_i)` for multiplicities indexed by `I_0`.
    pub fn weight_from_multiplicities(&self, mult: &[i64]) -> Result<ClassicalWeight> {
        if mult.len() != self.size() - 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} multiplicities, got {}",
                self.size() - 1,
                mult.len()
            )));
        }
        let mut v = vec![0; self.size()];
        for (k, &m) in mult.iter().enumerate() {
            let i = k + 1;
            v[i] += m;
            v[0] -= m * self.comarks[i];
        }
        Ok(ClassicalWeight(v))
    }

    pub(crate) fn require_index(&self, j: usize) -> Result<()> {
        self.check_index(j)
    }

    pub(crate) fn require_classical_index(&self, i: usize) -> Result<()> {
        self.check_classical_index(i)
    }
}

fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// An element of `P_cl`, stored as its pairings `(μ(h_j))_{j ∈ I}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassicalWeight(pub Vec<i64>);

impl ClassicalWeight {
    pub fn zero(size: usize) -> Self {
        ClassicalWeight(vec![0; size])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `μ(h_j)`.
    pub fn pairing(&self, j: usize) -> i64 {
        self.0[j]
    }

    pub fn pairings(&self) -> &[i64] {
        &self.0
    }

    pub fn scaled(&self, k: i64) -> Self {
        ClassicalWeight(self.0.iter().map(|x| x * k).collect())
    }
}

impl fmt::Display for ClassicalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl Add<&ClassicalWeight> for &ClassicalWeight {
    type Output = ClassicalWeight;
    fn add(self, rhs: &ClassicalWeight) -> ClassicalWeight {
        ClassicalWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&ClassicalWeight> for &ClassicalWeight {
    type Output = ClassicalWeight;
    fn sub(self, rhs: &ClassicalWeight) -> ClassicalWeight {
        ClassicalWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl AddAssign<&ClassicalWeight> for ClassicalWeight {
    fn add_assign(&mut self, rhs: &ClassicalWeight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&ClassicalWeight> for ClassicalWeight {
    fn sub_assign(&mut self, rhs: &ClassicalWeight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for &ClassicalWeight {
    type Output = ClassicalWeight;
    fn neg(self) -> ClassicalWeight {
        ClassicalWeight(self.0.iter().map(|x| -x).collect())
    }
}

impl Mul<&ClassicalWeight> for i64 {
    type Output = ClassicalWeight;
    fn mul(self, rhs: &ClassicalWeight) -> ClassicalWeight {
        rhs.scaled(self)
    }
}

/// `λ = Σ_{i ∈ I_0} λ^(i) ϖ_i` with nonnegative multiplicities.
///
/// `multiplicities()[k]` is the coefficient of `ϖ_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LevelZeroDominantWeight {
    multiplicities: Vec<u32>,
}

impl LevelZeroDominantWeight {
    pub fn new(datum: &AffineCartanDatum, multiplicities: Vec<u32>) -> Result<Self> {
        if multiplicities.len() != datum.size() - 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} multiplicities for {}, got {}",
                datum.size() - 1,
                datum.label(),
                multiplicities.len()
            )));
        }
        Ok(LevelZeroDominantWeight { multiplicities })
    }

    pub fn fundamental(datum: &AffineCartanDatum, i: usize) -> Result<Self> {
        datum.require_classical_index(i)?;
        let mut m = vec![0; datum.size() - 1];
        m[i - 1] = 1;
        Ok(LevelZeroDominantWeight { multiplicities: m })
    }

    /// `Σ_k ϖ_{i_k}`.
    pub fn from_sequence(datum: &AffineCartanDatum, seq: &[usize]) -> Result<Self> {
        let mut m = vec![0; datum.size() - 1];
        for &i in seq {
            datum.require_classical_index(i)?;
            m[i - 1] += 1;
        }
        Ok(LevelZeroDominantWeight { multiplicities: m })
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 0)
    }

    /// Number of fundamental weights summed, `Σ λ^(i)`.
    pub fn height(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    /// `cl(λ)` as a pairing vector.
    pub fn cl(&self, datum: &AffineCartanDatum) -> ClassicalWeight {
        let m: Vec<i64> = self.multiplicities.iter().map(|&x| x as i64).collect();
        datum
            .weight_from_multiplicities(&m)
            .expect("multiplicity length checked at construction")
    }

    /// The fundamental-weight sequence `(1, …, 1, 2, …)` in increasing order.
    pub fn as_sequence(&self) -> Vec<usize> {
        self.multiplicities
            .iter()
            .enumerate()
            .flat_map(|(k, &m)| std::iter::repeat_n(k + 1, m as usize))
            .collect()
    }

    pub fn sum(&self, other: &Self) -> Self {
        LevelZeroDominantWeight {
            multiplicities: self
                .multiplicities
                .iter()
                .zip(&other.multiplicities)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// The single fundamental index when `λ = ϖ_i`.
    pub fn as_fundamental(&self) -> Option<usize> {
        if self.height() == 1 {
            self.multiplicities.iter().position(|&m| m == 1).map(|k| k + 1)
        } else {
            None
        }
    }
}

impl fmt::Display for LevelZeroDominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &m) in self.multiplicities.iter().enumerate() {
            if m == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if m == 1 {
                write!(f, "w{}", k + 1)?;
            } else {
                write!(f, "{m}w{}", k + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> ClassicalWeight {
        ClassicalWeight(v.to_vec())
    }

    fn all_data() -> Vec<AffineCartanDatum> {
        let mut v = Vec::new();
        for l in 2..=7 {
            v.push(datum_for(Family::A, l).unwrap());
        }
        for n in 2..=5 {
            v.push(datum_for(Family::C, n).unwrap());
        }
        for n in 4..=6 {
            v.push(datum_for(Family::D, n).unwrap());
        }
        v
    }

    #[test]
    fn a1_table() {
        let d = datum_for(Family::A, 2).unwrap();
        assert_eq!(d.cartan(), &[vec![2, -2], vec![-2, 2]]);
        assert_eq!(d.marks(), &[1, 1]);
        assert_eq!(d.comarks(), &[1, 1]);
        assert_eq!(d.a0(), 1);
        assert_eq!(d.indices(), 0..2);
    }

    #[test]
    fn a2_table_is_cyclic() {
        let d = datum_for(Family::A, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let adjacent = (i as i64 - j as i64).rem_euclid(3) == 1 || (j as i64 - i as i64).rem_euclid(3) == 1;
                let expect = if i == j { 2 } else if adjacent { -1 } else { 0 };
                assert_eq!(d.entry(i, j), expect);
            }
        }
        assert_eq!(d.marks(), &[1, 1, 1]);
    }

    #[test]
    fn c2_and_d4_tables() {
        let c2 = datum_for(Family::C, 2).unwrap();
        assert_eq!(c2.cartan(), &[vec![2, -1, 0], vec![-2, 2, -2], vec![0, -1, 2]]);
        assert_eq!(c2.marks(), &[1, 2, 1]);
        assert_eq!(c2.comarks(), &[1, 1, 1]);
        let d4 = datum_for(Family::D, 4).unwrap();
        assert_eq!(
            d4.cartan(),
            &[
                vec![2, 0, -1, 0, 0],
                vec![0, 2, -1, 0, 0],
                vec![-1, -1, 2, -1, -1],
                vec![0, 0, -1, 2, 0],
                vec![0, 0, -1, 0, 2],
            ]
        );
        assert_eq!(d4.marks(), &[1, 1, 2, 1, 1]);
        assert_eq!(d4.comarks(), &[1, 1, 2, 1, 1]);
    }

    #[test]
    fn rank_below_range_is_rejected() {
        assert!(matches!(datum_for(Family::A, 1), Err(Error::UnsupportedType { .. })));
        assert!(datum_for(Family::C, 1).is_err());
        assert!(datum_for(Family::D, 3).is_err());
        assert!("B".parse::<Family>().is_err());
    }

    #[test]
    fn kernel_identities_hold_for_every_table() {
        for d in all_data() {
            let n = d.size();
            for i in 0..n {
                let row: i64 = (0..n).map(|j| d.entry(i, j) * d.marks()[j]).sum();
                let col: i64 = (0..n).map(|k| d.comarks()[k] * d.entry(k, i)).sum();
                assert_eq!((row, col), (0, 0), "{}", d.label());
            }
        }
    }

    #[test]
    fn fundamental_weights() {
        let d = datum_for(Family::A, 2).unwrap();
        assert_eq!(d.fundamental_cl(1).unwrap(), w(&[-1, 1]));
        let d3 = datum_for(Family::A, 3).unwrap();
        assert_eq!(d3.fundamental_cl(2).unwrap(), w(&[-1, 0, 1]));
        assert!(d3.fundamental_cl(0).is_err());
        assert!(d3.fundamental_cl(3).is_err());
        for d in all_data() {
            for i in d.classical_indices() {
                assert_eq!(d.level(&d.fundamental_cl(i).unwrap()), 0);
            }
        }
    }

    #[test]
    fn reflections() {
        let d = datum_for(Family::A, 2).unwrap();
        assert_eq!(d.reflect(1, &w(&[-1, 1])), w(&[1, -1]));
        let fixed = w(&[0, 0]);
        assert_eq!(d.reflect(0, &fixed), fixed);
        for d in all_data() {
            let mu = d.fundamental_cl(1).unwrap();
            for j in d.indices() {
                let r = d.reflect(j, &mu);
                assert_eq!(d.reflect(j, &r), mu);
                assert_eq!(d.level(&r), 0);
            }
        }
    }

    #[test]
    fn orbits() {
        let d = datum_for(Family::A, 2).unwrap();
        let o = d.finite_orbit(&w(&[-1, 1])).unwrap();
        assert_eq!(o.into_iter().collect::<Vec<_>>(), vec![w(&[-1, 1]), w(&[1, -1])]);
        let d3 = datum_for(Family::A, 3).unwrap();
        assert_eq!(d3.finite_orbit(&d3.fundamental_cl(1).unwrap()).unwrap().len(), 3);
        assert!(d3.finite_orbit(&w(&[1, 0, 0])).is_err());
        assert!(matches!(
            d3.finite_orbit_capped(&d3.fundamental_cl(1).unwrap(), 2),
            Err(Error::OrbitTooLarge { .. })
        ));
    }

    #[test]
    fn full_closure_equals_finite_closure() {
        for d in all_data() {
            for i in d.classical_indices() {
                let mu = d.fundamental_cl(i).unwrap();
                let fin = d.finite_orbit(&mu).unwrap();
                let full = d.orbit_under(&mu, d.indices(), 100_000).unwrap();
                assert_eq!(fin, full, "{} i={i}", d.label());
                let dominant: Vec<_> = fin.iter().filter(|m| d.is_dominant(m)).collect();
                let anti: Vec<_> = fin.iter().filter(|m| d.is_anti_dominant(m)).collect();
                assert_eq!(dominant, vec![&mu]);
                assert_eq!(anti.len(), 1);
                assert_eq!(anti[0], &d.anti_dominant(&mu).unwrap());
                for nu in &fin {
                    for j in d.indices() {
                        assert!(fin.contains(&d.reflect(j, nu)));
                    }
                }
            }
        }
    }

    #[test]
    fn anti_dominant_examples() {
        let d = datum_for(Family::A, 2).unwrap();
        assert_eq!(d.anti_dominant(&w(&[-1, 1])).unwrap(), w(&[1, -1]));
        assert_eq!(d.anti_dominant(&w(&[1, -1])).unwrap(), w(&[1, -1]));
        let d3 = datum_for(Family::A, 3).unwrap();
        assert_eq!(d3.anti_dominant(&d3.fundamental_cl(1).unwrap()).unwrap(), w(&[1, 0, -1]));
    }

    #[test]
    fn cl_form_values() {
        let d = datum_for(Family::A, 2).unwrap();
        let p = d.fundamental_cl(1).unwrap();
        assert_eq!(d.cl_form(&p, &p).unwrap(), Rational::new(1.into(), 2.into()));
        assert!(d.cl_form(&w(&[1, 0]), &p).is_err());
        for d in all_data() {
            let basis: Vec<_> = d.classical_indices().map(|i| d.fundamental_cl(i).unwrap()).collect();
            for a in &basis {
                assert!(d.cl_form(a, a).unwrap() > Rational::zero());
                for b in &basis {
                    let f = d.cl_form(a, b).unwrap();
                    assert_eq!(f, d.cl_form(b, a).unwrap());
                    for j in d.indices() {
                        let g = d.cl_form(&d.reflect(j, a), &d.reflect(j, b)).unwrap();
                        assert_eq!(f, g, "{} j={j}", d.label());
                    }
                }
            }
            let z = ClassicalWeight::zero(d.size());
            assert!(d.cl_form(&z, &z).unwrap().is_zero());
        }
    }

    #[test]
    fn root_coordinates_of_simple_roots() {
        for d in all_data() {
            for j in d.classical_indices() {
                let c = d.root_coordinates(&d.simple_root(j)).unwrap();
                for (k, x) in c.iter().enumerate() {
                    let expect = if k + 1 == j { Rational::one() } else { Rational::zero() };
                    assert_eq!(x, &expect);
                }
            }
        }
    }
}
