//! The distributive lattice of finite unions of open rational intervals inside
//! a fixed open ambient interval, with well-inside witnesses, normality
//! witnesses and exact finite-cover decisions.

use std::fmt;

use thiserror::Error;

use crate::kernel::reals::OpenInterval;
use crate::numerics::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("part {part} lies outside the ambient {ambient}")]
    OutsideAmbient { part: String, ambient: String },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// A finite union of open intervals, stored sorted with overlapping parts
/// merged. Touching parts such as `(0,1)|(1,2)` stay separate: the shared
/// endpoint is not in the union.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalElement {
    ambient: OpenInterval,
    parts: Vec<OpenInterval>,
}

fn normalize(mut parts: Vec<OpenInterval>) -> Vec<OpenInterval> {
    parts.sort();
    let mut out: Vec<OpenInterval> = Vec::with_capacity(parts.len());
    for p in parts {
        match out.last_mut() {
            Some(last) if p.lo < last.hi => {
                if p.hi > last.hi {
                    last.hi = p.hi;
                }
            }
            _ => out.push(p),
        }
    }
    out
}

impl IntervalElement {
    pub fn new(ambient: OpenInterval, parts: Vec<OpenInterval>) -> Result<Self, LatticeError> {
        if let Some(p) = parts.iter().find(|p| !ambient.contains_interval(p)) {
            return Err(LatticeError::OutsideAmbient { part: p.to_string(), ambient: ambient.to_string() });
        }
        Ok(IntervalElement { ambient, parts: normalize(parts) })
    }

    /// Like `new`, clipping parts to the ambient and dropping empty ones.
    pub fn clipped(ambient: OpenInterval, parts: Vec<OpenInterval>) -> Self {
        let parts = parts.iter().filter_map(|p| p.intersect(&ambient)).collect();
        IntervalElement { parts: normalize(parts), ambient }
    }

    pub fn zero(ambient: OpenInterval) -> Self {
        IntervalElement { ambient, parts: Vec::new() }
    }

    pub fn one(ambient: OpenInterval) -> Self {
        IntervalElement { parts: vec![ambient.clone()], ambient }
    }

    pub fn ambient(&self) -> &OpenInterval {
        &self.ambient
    }

    pub fn parts(&self) -> &[OpenInterval] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.parts.len() == 1 && self.parts[0] == self.ambient
    }

    fn same_ambient(&self, other: &IntervalElement) -> Result<(), LatticeError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(LatticeError::AmbientMismatch(self.ambient.to_string(), other.ambient.to_string()))
        }
    }

    pub fn join(&self, other: &IntervalElement) -> Result<IntervalElement, LatticeError> {
        self.same_ambient(other)?;
        let parts = self.parts.iter().chain(&other.parts).cloned().collect();
        Ok(IntervalElement { ambient: self.ambient.clone(), parts: normalize(parts) })
    }

    pub fn meet(&self, other: &IntervalElement) -> Result<IntervalElement, LatticeError> {
        self.same_ambient(other)?;
        let mut parts = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                if let Some(m) = a.intersect(b) {
                    parts.push(m);
                }
            }
        }
        Ok(IntervalElement { ambient: self.ambient.clone(), parts: normalize(parts) })
    }

    /// Point membership.
    pub fn contains(&self, x: &Rational) -> bool {
        self.parts.iter().any(|p| &p.lo < x && x < &p.hi)
    }

    /// `ambient \ closure(self)` as an element.
    pub fn exterior(&self) -> IntervalElement {
        let mut parts = Vec::new();
        let mut cur = self.ambient.lo.clone();
        for p in &self.parts {
            if cur < p.lo {
                parts.push(OpenInterval::new(cur.clone(), p.lo.clone()));
            }
            cur = p.hi.clone();
        }
        if cur < self.ambient.hi {
            parts.push(OpenInterval::new(cur, self.ambient.hi.clone()));
        }
        IntervalElement { ambient: self.ambient.clone(), parts }
    }

    /// `self` minus the closed intervals `cuts`.
    fn minus_closed(&self, cuts: &[(Rational, Rational)]) -> IntervalElement {
        let mut parts = self.parts.clone();
        for (l, r) in cuts {
            let mut next = Vec::new();
            for p in parts {
                if &p.hi <= l || &p.lo >= r {
                    next.push(p);
                    continue;
                }
                if let Some(left) = OpenInterval::try_new(p.lo.clone(), l.clone().min(p.hi.clone())) {
                    next.push(left);
                }
                if let Some(right) = OpenInterval::try_new(r.clone().max(p.lo.clone()), p.hi.clone()) {
                    next.push(right);
                }
            }
            parts = next;
        }
        IntervalElement { ambient: self.ambient.clone(), parts: normalize(parts) }
    }
}

impl fmt::Display for IntervalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Whether the open interval `(p, q)` is contained in the union of the sorted,
/// merged `parts`. Touching parts leave their shared endpoint uncovered.
fn interval_covered(p: &Rational, q: &Rational, parts: &[OpenInterval]) -> bool {
    // sweep: `reach` is the right end of the covered prefix (p, reach)
    let mut reach: Option<&Rational> = None;
    for part in parts {
        let ok_start = match reach {
            None => &part.lo <= p,
            Some(r) => &part.lo < r,
        };
        if !ok_start {
            if reach.is_some() || &part.lo > p {
                break;
            }
            continue;
        }
        if &part.hi > p && reach.is_none_or(|r| &part.hi > r) {
            reach = Some(&part.hi);
        }
        if reach.is_some_and(|r| r >= q) {
            return true;
        }
    }
    false
}

/// `a ≤ b`: every part of `a` lies in the union of `b`'s parts.
pub fn lattice_leq(a: &IntervalElement, b: &IntervalElement) -> Result<bool, LatticeError> {
    a.same_ambient(b)?;
    Ok(a.parts.iter().all(|p| interval_covered(&p.lo, &p.hi, &b.parts)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WellInside {
    /// `w` with `u ∧ w = 0` and `v ∨ w = 1`.
    Witness(IntervalElement),
    NotWellInside,
}

/// `u ≺ v`. The witness is the exterior of `u`, which works exactly when the
/// closure of `u` within the ambient lies in `v`.
pub fn well_inside(u: &IntervalElement, v: &IntervalElement) -> Result<WellInside, LatticeError> {
    u.same_ambient(v)?;
    let w = u.exterior();
    Ok(if v.join(&w)?.is_one() { WellInside::Witness(w) } else { WellInside::NotWellInside })
}

/// A closed piece of the ambient, `[lo, hi]` with ends at the ambient
/// boundary open.
#[derive(Debug, Clone)]
struct Component {
    lo: Rational,
    hi: Rational,
}

fn complement_components(b: &IntervalElement) -> Vec<Component> {
    let amb = &b.ambient;
    let mut out = Vec::new();
    let mut cur = amb.lo.clone();
    let mut first = true;
    for p in &b.parts {
        // a gap [cur, p.lo], skipping the empty stretch at the ambient's left end
        if !(first && p.lo == amb.lo) {
            out.push(Component { lo: cur.clone(), hi: p.lo.clone() });
        }
        first = false;
        cur = p.hi.clone();
    }
    if first || cur < amb.hi {
        out.push(Component { lo: cur, hi: amb.hi.clone() });
    }
    out
}

/// Grow each component of `mine` by a quarter of the distance to the nearest
/// point of `theirs` on each side, or to the ambient end if there is none.
fn expand(amb: &OpenInterval, mine: &[Component], theirs: &[Component]) -> Vec<OpenInterval> {
    let quarter = |d: Rational| d / int(4);
    mine.iter()
        .map(|c| {
            let lo = if c.lo == amb.lo {
                amb.lo.clone()
            } else {
                match theirs.iter().filter(|t| t.hi < c.lo).map(|t| &t.hi).max() {
                    Some(z) => &c.lo - quarter(&c.lo - z),
                    None => amb.lo.clone(),
                }
            };
            let hi = if c.hi == amb.hi {
                amb.hi.clone()
            } else {
                match theirs.iter().filter(|t| t.lo > c.hi).map(|t| &t.lo).min() {
                    Some(z) => &c.hi + quarter(z - &c.hi),
                    None => amb.hi.clone(),
                }
            };
            OpenInterval::new(lo, hi)
        })
        .collect()
}

/// For `b1 ∨ b2 = 1`, disjoint `c1, c2` with `c1 ∨ b1 = 1` and `c2 ∨ b2 = 1`.
///
/// The complements of `b1` and `b2` are disjoint closed sets; each is
/// thickened by a quarter of the gap separating it from the other.
pub fn normality_witness(
    b1: &IntervalElement,
    b2: &IntervalElement,
) -> Result<(IntervalElement, IntervalElement), LatticeError> {
    if !b1.join(b2)?.is_one() {
        return Err(LatticeError::PreconditionFailed(format!("{b1} ∨ {b2} is not 1")));
    }
    let amb = b1.ambient.clone();
    let k1 = complement_components(b1);
    let k2 = complement_components(b2);
    let c1 = IntervalElement { parts: normalize(expand(&amb, &k1, &k2)), ambient: amb.clone() };
    let c2 = IntervalElement { parts: normalize(expand(&amb, &k2, &k1)), ambient: amb };
    Ok((c1, c2))
}

/// For any `a, b`, elements `x, y` with `a ≤ b ∨ x`, `b ≤ a ∨ y` and
/// `x ∧ y = 0`.
///
/// `x` is `a` with the middle of each component of `a ∧ b` cut out, keeping a
/// quarter-length sliver at each end of the component that belongs to `a`;
/// `y` likewise for `b`.
pub fn strong_normality_witness(
    a: &IntervalElement,
    b: &IntervalElement,
) -> Result<(IntervalElement, IntervalElement), LatticeError> {
    let ab = a.meet(b)?;
    let cuts = |own: &IntervalElement| -> Vec<(Rational, Rational)> {
        ab.parts
            .iter()
            .map(|c| {
                let q = (&c.hi - &c.lo) / int(4);
                let l = if own.contains(&c.lo) { &c.lo + &q } else { c.lo.clone() };
                let r = if own.contains(&c.hi) { &c.hi - &q } else { c.hi.clone() };
                (l, r)
            })
            .collect()
    };
    Ok((a.minus_closed(&cuts(a)), b.minus_closed(&cuts(b))))
}

/// Whether `u` is covered by `family`: every `y ≺ u` lies below the join of
/// the family. For finite unions of open intervals this is containment of
/// each part of `u` in the union, decided by an endpoint sweep.
pub fn finite_cover_decide(u: &IntervalElement, family: &[IntervalElement]) -> Result<bool, LatticeError> {
    let mut join = IntervalElement::zero(u.ambient.clone());
    for f in family {
        join = join.join(f)?;
    }
    lattice_leq(u, &join)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn amb() -> OpenInterval {
        OpenInterval::new(int(-1), int(2))
    }

    fn el(parts: &[(Rational, Rational)]) -> IntervalElement {
        IntervalElement::new(amb(), parts.iter().map(|(a, b)| OpenInterval::new(a.clone(), b.clone())).collect())
            .unwrap()
    }

    #[test]
    fn normalization_merges_only_overlaps() {
        let e = el(&[(int(1), int(2)), (int(0), int(1))]);
        assert_eq!(e.to_string(), "(0,1)|(1,2)");
        let e = el(&[(int(0), rat(3, 2)), (int(1), int(2))]);
        assert_eq!(e.to_string(), "(0,2)");
        assert_eq!(IntervalElement::zero(amb()).to_string(), "0");
    }

    #[test]
    fn leq_examples() {
        let a = el(&[(int(0), int(1))]);
        let b = IntervalElement::new(
            OpenInterval::new(int(-1), int(4)),
            vec![OpenInterval::new(int(0), int(1)), OpenInterval::new(int(2), int(3))],
        )
        .unwrap();
        let a4 = IntervalElement::new(OpenInterval::new(int(-1), int(4)), vec![OpenInterval::new(int(0), int(1))]).unwrap();
        assert_eq!(lattice_leq(&a4, &b), Ok(true));
        let split = el(&[(int(0), int(1)), (int(1), int(2))]);
        assert_eq!(lattice_leq(&el(&[(int(0), int(2))]), &split), Ok(false));
        assert_eq!(lattice_leq(&IntervalElement::zero(amb()), &a), Ok(true));
        assert!(matches!(lattice_leq(&a, &b), Err(LatticeError::AmbientMismatch(..))));
    }

    #[test]
    fn well_inside_examples() {
        let u = el(&[(rat(1, 4), rat(1, 2))]);
        let v = el(&[(int(0), int(1))]);
        match well_inside(&u, &v).unwrap() {
            WellInside::Witness(w) => {
                assert_eq!(w.to_string(), "(-1,1/4)|(1/2,2)");
                assert!(u.meet(&w).unwrap().is_zero());
                assert!(v.join(&w).unwrap().is_one());
            }
            WellInside::NotWellInside => panic!("expected a witness"),
        }
        assert_eq!(well_inside(&v, &v), Ok(WellInside::NotWellInside));
        assert_eq!(well_inside(&IntervalElement::zero(amb()), &v), Ok(WellInside::Witness(IntervalElement::one(amb()))));
    }

    #[test]
    fn normality_examples() {
        let b1 = el(&[(int(-1), rat(3, 5))]);
        let b2 = el(&[(rat(2, 5), int(2))]);
        let (c1, c2) = normality_witness(&b1, &b2).unwrap();
        assert_eq!(c1, el(&[(rat(11, 20), int(2))]));
        assert_eq!(c2, el(&[(int(-1), rat(9, 20))]));

        let one = IntervalElement::one(amb());
        let zero = IntervalElement::zero(amb());
        assert_eq!(normality_witness(&one, &zero), Ok((zero.clone(), one.clone())));
        assert_eq!(normality_witness(&one, &one), Ok((zero.clone(), zero.clone())));
        assert!(matches!(normality_witness(&b1, &b1), Err(LatticeError::PreconditionFailed(_))));
    }

    #[test]
    fn normality_with_point_gaps() {
        // b1 misses the single point 1; b2 must contain it
        let b1 = el(&[(int(-1), int(1)), (int(1), int(2))]);
        let b2 = el(&[(rat(1, 2), rat(3, 2))]);
        let (c1, c2) = normality_witness(&b1, &b2).unwrap();
        assert!(c1.meet(&c2).unwrap().is_zero());
        assert!(c1.join(&b1).unwrap().is_one());
        assert!(c2.join(&b2).unwrap().is_one());
    }

    #[test]
    fn strong_normality_examples() {
        let a = el(&[(int(0), int(1))]);
        let b = el(&[(rat(1, 2), int(2))]);
        let (x, y) = strong_normality_witness(&a, &b).unwrap();
        assert!(x.meet(&y).unwrap().is_zero());
        assert_eq!(lattice_leq(&a, &b.join(&x).unwrap()), Ok(true));
        assert_eq!(lattice_leq(&b, &a.join(&y).unwrap()), Ok(true));
    }

    #[test]
    fn cover_examples() {
        let family = [el(&[(int(-1), rat(3, 5))]), el(&[(rat(2, 5), int(2))])];
        assert_eq!(finite_cover_decide(&IntervalElement::one(amb()), &family), Ok(true));
        assert_eq!(finite_cover_decide(&el(&[(int(0), int(1))]), &[el(&[(int(0), rat(1, 2))])]), Ok(false));
        assert_eq!(finite_cover_decide(&IntervalElement::zero(amb()), &[]), Ok(true));
    }

    #[test]
    fn sweep_handles_nested_and_touching_parts() {
        let parts = normalize(vec![
            OpenInterval::new(int(0), int(1)),
            OpenInterval::new(int(1), int(3)),
        ]);
        assert!(interval_covered(&int(0), &int(1), &parts));
        assert!(!interval_covered(&int(0), &int(2), &parts));
        assert!(interval_covered(&rat(3, 2), &int(3), &parts));
        assert!(!interval_covered(&rat(-1, 2), &rat(1, 2), &parts));
    }
}
