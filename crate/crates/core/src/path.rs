//! Piecewise-linear classical paths and the root operators.
//!
//! A path is kept in its unique reduced expression: a list of
//! `(direction, duration)` segments with distinct adjacent directions and
//! durations summing to one. All break points are exact rationals, so the
//! reduced expression doubles as the identity of a crystal element.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::cartan::{AffineCartanDatum, ClassicalWeight};
use crate::error::{Error, Result};
use crate::Rational;

/// One linear piece of a path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub direction: ClassicalWeight,
    pub duration: Rational,
}

/// A path `[0, 1] → h*/Qδ` in reduced form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClPath {
    segments: Vec<Segment>,
}

/// Minimum of `H_j(t) = η(t)(h_j)` and the cut points used by `e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HProfile {
    pub min: i64,
    /// Last time in `[0, t1]` with value `min + 1`; present iff `min ≤ -1`.
    pub t0: Option<Rational>,
    /// First time the minimum is attained; present iff `min ≤ -1`.
    pub t1: Option<Rational>,
}

fn rat(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn to_integer(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        i64::try_from(x.to_integer()).ok()
    } else {
        None
    }
}

impl ClPath {
    /// Builds a path from an arbitrary expression, merging equal adjacent
    /// directions and dropping empty segments, then validates it.
    pub fn from_expression(datum: &AffineCartanDatum, segments: Vec<Segment>) -> Result<Self> {
        let path = ClPath {
            segments: reduce(segments),
        };
        path.validate(datum)?;
        Ok(path)
    }

    /// The straight line `t ↦ tμ`.
    pub fn straight(datum: &AffineCartanDatum, mu: &ClassicalWeight) -> Result<Self> {
        if !datum.is_level_zero(mu) {
            return Err(Error::NotLevelZero(mu.to_string()));
        }
        Ok(ClPath {
            segments: vec![Segment {
                direction: mu.clone(),
                duration: Rational::one(),
            }],
        })
    }

    fn validate(&self, datum: &AffineCartanDatum) -> Result<()> {
        if self.segments.is_empty() {
            return Err(Error::InvalidPath("no segments".into()));
        }
        let mut total = Rational::zero();
        for (k, s) in self.segments.iter().enumerate() {
            if !s.duration.is_positive() {
                return Err(Error::InvalidPath(format!("segment {k} has duration {}", s.duration)));
            }
            if !datum.is_level_zero(&s.direction) {
                return Err(Error::NotLevelZero(s.direction.to_string()));
            }
            if k > 0 && self.segments[k - 1].direction == s.direction {
                return Err(Error::InvalidPath(format!("segments {} and {k} share a direction", k - 1)));
            }
            total += &s.duration;
        }
        if !total.is_one() {
            return Err(Error::InvalidPath(format!("durations sum to {total}")));
        }
        let end = self.end_point();
        if end.iter().any(|x| !x.is_integer()) {
            return Err(Error::InvalidPath("end point is not integral".into()));
        }
        Ok(())
    }

    /// Checks that every local minimum of every `H_j` is an integer.
    pub fn check_local_minima(&self, datum: &AffineCartanDatum) -> Result<()> {
        for j in datum.indices() {
            let values = self.breakpoint_values(j);
            let slopes: Vec<i64> = self.segments.iter().map(|s| s.direction.pairing(j)).collect();
            let n = slopes.len();
            for u in 0..=n {
                // slope entering and leaving break point u, skipping flats
                let before = slopes[..u].iter().rev().find(|&&s| s != 0).copied();
                let after = slopes[u..].iter().find(|&&s| s != 0).copied();
                let is_min = before.is_none_or(|s| s < 0) && after.is_none_or(|s| s > 0);
                if is_min && !values[u].is_integer() {
                    return Err(Error::InvalidPath(format!(
                        "H_{j} has the non-integral local minimum {} in {self}",
                        values[u]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Break points `0 = σ_0 < σ_1 < ⋯ < σ_s = 1`.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let mut t = Rational::zero();
        out.push(t.clone());
        for s in &self.segments {
            t += &s.duration;
            out.push(t.clone());
        }
        out
    }

    fn end_point(&self) -> Vec<Rational> {
        let size = self.segments[0].direction.len();
        let mut acc = vec![Rational::zero(); size];
        for s in &self.segments {
            for (a, &d) in acc.iter_mut().zip(&s.direction.0) {
                *a += &s.duration * rat(d);
            }
        }
        acc
    }

    /// `η(1) ∈ P_cl`.
    pub fn weight(&self) -> ClassicalWeight {
        ClassicalWeight(
            self.end_point()
                .iter()
                .map(|x| to_integer(x).expect("end point validated integral"))
                .collect(),
        )
    }

    /// The initial direction `ι(η)`.
    pub fn initial(&self) -> &ClassicalWeight {
        &self.segments[0].direction
    }

    /// The final direction `κ(η)`.
    pub fn final_direction(&self) -> &ClassicalWeight {
        &self.segments[self.segments.len() - 1].direction
    }

    pub fn is_straight(&self) -> bool {
        self.segments.len() == 1
    }

    /// The point `η(t)` as a rational pairing vector.
    pub fn evaluate(&self, t: &Rational) -> Result<Vec<Rational>> {
        if t.is_negative() || *t > Rational::one() {
            return Err(Error::TimeOutOfRange(t.to_string()));
        }
        let size = self.segments[0].direction.len();
        let mut acc = vec![Rational::zero(); size];
        let mut start = Rational::zero();
        for s in &self.segments {
            let end = &start + &s.duration;
            let span = if *t >= end { s.duration.clone() } else { t - &start };
            for (a, &d) in acc.iter_mut().zip(&s.direction.0) {
                *a += &span * rat(d);
            }
            if *t <= end {
                break;
            }
            start = end;
        }
        Ok(acc)
    }

    /// Values of `H_j` at the break points.
    fn breakpoint_values(&self, j: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let mut h = Rational::zero();
        out.push(h.clone());
        for s in &self.segments {
            h += &s.duration * rat(s.direction.pairing(j));
            out.push(h.clone());
        }
        out
    }

    fn min_value(&self, j: usize) -> Result<(Vec<Rational>, i64)> {
        let values = self.breakpoint_values(j);
        let min = values.iter().min().expect("at least one value").clone();
        let m = to_integer(&min).ok_or_else(|| {
            Error::InvalidPath(format!("H_{j} has the non-integral minimum {min} in {self}"))
        })?;
        Ok((values, m))
    }

    /// The minimum `m_j` of `H_j` together with the cut points of `e_j`.
    pub fn h_profile(&self, j: usize) -> Result<HProfile> {
        let (values, m) = self.min_value(j)?;
        if m == 0 {
            return Ok(HProfile {
                min: 0,
                t0: None,
                t1: None,
            });
        }
        let (t0, t1) = self.raise_cuts(&values, m);
        Ok(HProfile {
            min: m,
            t0: Some(t0),
            t1: Some(t1),
        })
    }

    fn raise_cuts(&self, values: &[Rational], m: i64) -> (Rational, Rational) {
        let bps = self.breakpoints();
        let target = rat(m);
        let u1 = values.iter().position(|v| *v == target).expect("minimum is attained");
        let t1 = bps[u1].clone();
        let level = rat(m + 1);
        let mut t0 = Rational::zero();
        for u in 0..u1 {
            if let Some(t) = last_hit(&bps[u], &bps[u + 1], &values[u], &values[u + 1], &level) {
                if t > t0 {
                    t0 = t;
                }
            }
        }
        (t0, t1)
    }

    fn lower_cuts(&self, values: &[Rational], m: i64) -> (Rational, Rational) {
        let bps = self.breakpoints();
        let target = rat(m);
        let u0 = values.iter().rposition(|v| *v == target).expect("minimum is attained");
        let t0 = bps[u0].clone();
        let level = rat(m + 1);
        for u in u0..self.segments.len() {
            if let Some(t) = first_hit(&bps[u], &bps[u + 1], &values[u], &values[u + 1], &level) {
                return (t0, t);
            }
        }
        unreachable!("H_j(1) - m_j >= 1 guarantees a crossing of m_j + 1")
    }

    /// `ε_j(η) = -m_j`.
    pub fn epsilon(&self, j: usize) -> Result<u32> {
        let (_, m) = self.min_value(j)?;
        Ok((-m) as u32)
    }

    /// `φ_j(η) = H_j(1) - m_j`.
    pub fn phi(&self, j: usize) -> Result<u32> {
        let (values, m) = self.min_value(j)?;
        let end = to_integer(values.last().expect("nonempty")).expect("integral end point");
        Ok((end - m) as u32)
    }

    /// The raising root operator `e_j`; `None` plays the role of `0`.
    pub fn raise(&self, datum: &AffineCartanDatum, j: usize) -> Result<Option<ClPath>> {
        datum.require_index(j)?;
        let (values, m) = self.min_value(j)?;
        if m == 0 {
            return Ok(None);
        }
        let (t0, t1) = self.raise_cuts(&values, m);
        let out = self.reflect_between(datum, j, &t0, &t1);
        debug_assert_eq!(out.weight(), &self.weight() + &datum.simple_root(j));
        Ok(Some(out))
    }

    /// The lowering root operator `f_j`; `None` plays the role of `0`.
    pub fn lower(&self, datum: &AffineCartanDatum, j: usize) -> Result<Option<ClPath>> {
        datum.require_index(j)?;
        let (values, m) = self.min_value(j)?;
        let end = to_integer(values.last().expect("nonempty")).expect("integral end point");
        if end == m {
            return Ok(None);
        }
        let (t0, t1) = self.lower_cuts(&values, m);
        let out = self.reflect_between(datum, j, &t0, &t1);
        debug_assert_eq!(out.weight(), &self.weight() - &datum.simple_root(j));
        Ok(Some(out))
    }

    /// Reflects the directions on `[t0, t1]` by `r_j`. Because the reflected
    /// piece moves `H_j` by exactly one unit, the tail is automatically
    /// translated by `±cl(α_j)` and keeps its directions.
    fn reflect_between(&self, datum: &AffineCartanDatum, j: usize, t0: &Rational, t1: &Rational) -> ClPath {
        let mut out = Vec::with_capacity(self.segments.len() + 2);
        let mut a = Rational::zero();
        for s in &self.segments {
            let b = &a + &s.duration;
            // piece before t0
            let lo = a.clone().min(t0.clone());
            let hi = b.clone().min(t0.clone());
            if hi > lo {
                out.push(Segment {
                    direction: s.direction.clone(),
                    duration: &hi - &lo,
                });
            }
            // piece inside [t0, t1]
            let lo = a.clone().max(t0.clone());
            let hi = b.clone().min(t1.clone());
            if hi > lo {
                out.push(Segment {
                    direction: datum.reflect(j, &s.direction),
                    duration: &hi - &lo,
                });
            }
            // piece after t1
            let lo = a.clone().max(t1.clone());
            if b > lo {
                out.push(Segment {
                    direction: s.direction.clone(),
                    duration: &b - &lo,
                });
            }
            a = b;
        }
        let path = ClPath { segments: reduce(out) };
        debug_assert!(path.validate(datum).is_ok(), "root operator broke a path invariant");
        path
    }

    /// `e_j^max η`.
    pub fn raise_max(&self, datum: &AffineCartanDatum, j: usize) -> Result<ClPath> {
        let mut cur = self.clone();
        while let Some(next) = cur.raise(datum, j)? {
            cur = next;
        }
        Ok(cur)
    }

    /// The concatenation `η_1 ∗ η_2`: `η_1` at double speed on `[0, 1/2]`,
    /// then `η_2` translated by `η_1(1)`.
    pub fn concat(datum: &AffineCartanDatum, first: &ClPath, second: &ClPath) -> Result<ClPath> {
        let half = Rational::new(1.into(), 2.into());
        let segs = first
            .segments
            .iter()
            .chain(&second.segments)
            .map(|s| Segment {
                direction: s.direction.scaled(2),
                duration: &s.duration * &half,
            })
            .collect();
        ClPath::from_expression(datum, segs)
    }

    /// Canonical serialization `[(d_0,…,d_ℓ)@num/den, …]`.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ClPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, s) in self.segments.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}@{}/{}", s.direction, s.duration.numer(), s.duration.denom())?;
        }
        f.write_str("]")
    }
}

/// Merges equal adjacent directions and drops empty segments.
fn reduce(segments: Vec<Segment>) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::with_capacity(segments.len());
    for s in segments {
        if s.duration.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.direction == s.direction => last.duration += s.duration,
            _ => out.push(s),
        }
    }
    out
}

/// Latest time in `[a, b]` where the affine function through `(a, ha)`,
/// `(b, hb)` equals `level`.
fn last_hit(a: &Rational, b: &Rational, ha: &Rational, hb: &Rational, level: &Rational) -> Option<Rational> {
    if ha == hb {
        return (ha == level).then(|| b.clone());
    }
    let (lo, hi) = if ha < hb { (ha, hb) } else { (hb, ha) };
    if level < lo || level > hi {
        return None;
    }
    Some(a + (level - ha) * (b - a) / (hb - ha))
}

/// Earliest time in `[a, b]` where the affine function equals `level`.
fn first_hit(a: &Rational, b: &Rational, ha: &Rational, hb: &Rational, level: &Rational) -> Option<Rational> {
    if ha == hb {
        return (ha == level).then(|| a.clone());
    }
    let (lo, hi) = if ha < hb { (ha, hb) } else { (hb, ha) };
    if level < lo || level > hi {
        return None;
    }
    Some(a + (level - ha) * (b - a) / (hb - ha))
}
