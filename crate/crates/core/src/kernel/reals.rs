//! The formal reals: rational open intervals with the two axiom schemes
//! `(p,s) ◁ {(p,r),(q,s)}` for `p ≤ q < r ≤ s` (axiom1) and
//! `(p,q) ◁ {(p',q') : p < p' < q' < q}` (axiom2, infinite).

use std::fmt;

use num_traits::One;

use super::{AxiomInstance, Base, Meet};
use crate::numerics::{int, midpoint, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl OpenInterval {
    /// Panics unless `lo < hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo < hi, "open interval needs lo < hi");
        OpenInterval { lo, hi }
    }

    pub fn try_new(lo: Rational, hi: Rational) -> Option<Self> {
        (lo < hi).then_some(OpenInterval { lo, hi })
    }

    pub fn contains_interval(&self, other: &OpenInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &OpenInterval) -> Option<OpenInterval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        OpenInterval::try_new(lo, hi)
    }
}

impl fmt::Display for OpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// Whether `{a, b}` (in either order) is an axiom1 family for `(p,s)`.
pub fn is_split(p: &Rational, s: &Rational, a: &(Rational, Rational), b: &(Rational, Rational)) -> bool {
    let ok = |x: &(Rational, Rational), y: &(Rational, Rational)| {
        let (q, r) = (&y.0, &x.1);
        x.0 == *p && y.1 == *s && p <= q && q < r && r <= s
    };
    ok(a, b) || ok(b, a)
}

/// Dyadic sample points strictly inside `(p, s)`: the finest level `j/2^k`,
/// `k <= budget`, with at most `2^budget + 1` points, or the relative grid
/// `p + (s-p) j/2^budget` when even the integers are too many.
pub fn grid_points(p: &Rational, s: &Rational, budget: usize) -> Vec<Rational> {
    let budget = budget.min(12) as u32;
    let cap = (1usize << budget) + 1;
    let mut best: Option<Vec<Rational>> = None;
    for k in 0..=budget {
        let scale = int(1i64 << k);
        let mut j = (p * &scale).floor() + Rational::one();
        let mut pts = Vec::new();
        while &j / &scale < *s && pts.len() <= cap {
            pts.push(&j / &scale);
            j += Rational::one();
        }
        if pts.len() > cap {
            break;
        }
        best = Some(pts);
    }
    best.unwrap_or_else(|| {
        let n = 1i64 << budget;
        (1..n).map(|j| p + (s - p) * Rational::new(j.into(), n.into())).collect()
    })
}

/// Candidate `(q, r)` with `p < q < r < s` for axiom1 splits of `(p,s)`:
/// first all pairs of hint endpoints inside, then consecutive pairs of the
/// merged hint and grid points, with midpoints added next to each hint.
pub fn split_points(
    p: &Rational,
    s: &Rational,
    hints: &[(Rational, Rational)],
    budget: usize,
) -> Vec<(Rational, Rational)> {
    let inside = |x: &Rational| p < x && x < s;
    let mut hp: Vec<Rational> = hints.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).filter(inside).collect();
    hp.sort();
    hp.dedup();
    let mut out = Vec::new();
    for (i, q) in hp.iter().enumerate() {
        for r in &hp[i + 1..] {
            out.push((q.clone(), r.clone()));
        }
    }
    let mut all = hp.clone();
    all.extend(grid_points(p, s, budget));
    all.sort();
    all.dedup();
    // covers are usually tight near hint endpoints, so refine there
    let mut extra = Vec::new();
    for (i, x) in all.iter().enumerate() {
        if hp.binary_search(x).is_ok() {
            let left = if i == 0 { p } else { &all[i - 1] };
            let right = all.get(i + 1).unwrap_or(s);
            extra.push(midpoint(left, x));
            extra.push(midpoint(x, right));
        }
    }
    all.extend(extra);
    all.sort();
    all.dedup();
    for w in all.windows(2) {
        let pair = (w[0].clone(), w[1].clone());
        if !out.contains(&pair) {
            out.push(pair);
        }
    }
    out
}

/// The formal reals as a kernel base.
#[derive(Debug, Clone, Copy, Default)]
pub struct FormalReals;

impl Base for FormalReals {
    type Elem = OpenInterval;

    fn leq(&self, a: &OpenInterval, b: &OpenInterval) -> bool {
        b.contains_interval(a)
    }

    fn meet(&self, a: &OpenInterval, b: &OpenInterval) -> Meet<OpenInterval> {
        match a.intersect(b) {
            Some(m) => Meet::Single(m),
            None => Meet::Empty,
        }
    }

    fn axiom_instances(&self, u: &OpenInterval, budget: usize, hints: &[OpenInterval]) -> Vec<AxiomInstance<OpenInterval>> {
        let hint_pairs: Vec<(Rational, Rational)> = hints.iter().map(|h| (h.lo.clone(), h.hi.clone())).collect();
        let pairs = split_points(&u.lo, &u.hi, &hint_pairs, budget);
        let mut out: Vec<AxiomInstance<OpenInterval>> = pairs
            .iter()
            .map(|(q, r)| AxiomInstance {
                tag: "axiom1",
                family: vec![
                    OpenInterval::new(u.lo.clone(), r.clone()),
                    OpenInterval::new(q.clone(), u.hi.clone()),
                ],
                complete: true,
            })
            .collect();
        let inner: Vec<OpenInterval> = pairs.into_iter().map(|(q, r)| OpenInterval::new(q, r)).collect();
        out.push(AxiomInstance { tag: "axiom2", family: inner, complete: false });
        out
    }

    fn is_axiom_instance(&self, tag: &str, u: &OpenInterval, family: &[OpenInterval]) -> bool {
        match (tag, family) {
            ("axiom1", [a, b]) => {
                is_split(&u.lo, &u.hi, &(a.lo.clone(), a.hi.clone()), &(b.lo.clone(), b.hi.clone()))
            }
            _ => false,
        }
    }
}
