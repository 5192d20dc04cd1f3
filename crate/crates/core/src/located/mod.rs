//! Located sets, seen two ways: as dichotomy oracles on nested ball pairs and
//! as families of two-sided ε-nets. Includes the conversions between the
//! two, distances, Hausdorff distance, images and unions.

pub mod sets;
pub mod tvd;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::interval_lattice::{finite_cover_decide, well_inside, IntervalElement, LatticeError, WellInside};
use crate::kernel::reals::OpenInterval;
use crate::kernel::{
    check_positivity_axioms, derive_cover, pos_predicate, PosPredicate, PositivityReport, Tri,
};
use crate::metric_locale::{
    ball_leq, ball_lt, CompletionBase, FormalBall, MetricError, MetricSpace, PlaneL2, Point2, RationalLine,
};
use crate::numerics::{compare_with_gap, dyadic, int, rat, DedekindReal, GapDecision, Interval, Rational};

pub use sets::{Affine, BBox, ExactSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocatedError {
    #[error("the set is empty")]
    EmptySet,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Answer of a located predicate for `inner < outer`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    /// The set misses the inner ball.
    NotPosInner,
    /// The set meets the outer ball.
    PosOuter,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::NotPosInner => "not-pos-inner",
            Decision::PosOuter => "pos-outer",
        })
    }
}

type NetFn<P> = Arc<dyn Fn(&Rational) -> Vec<P> + Send + Sync>;

/// `net(ε)`: a finite list of base points within `ε` of the set, such that
/// every set point is within `ε` of one of them.
pub struct EpsilonNetFamily<M: MetricSpace> {
    pub space: M,
    net: NetFn<M::Point>,
    pub inhabited: bool,
}

impl<M: MetricSpace + Clone> Clone for EpsilonNetFamily<M> {
    fn clone(&self) -> Self {
        EpsilonNetFamily { space: self.space.clone(), net: self.net.clone(), inhabited: self.inhabited }
    }
}

impl<M: MetricSpace> EpsilonNetFamily<M> {
    pub fn new(space: M, inhabited: bool, net: impl Fn(&Rational) -> Vec<M::Point> + Send + Sync + 'static) -> Self {
        EpsilonNetFamily { space, net: Arc::new(net), inhabited }
    }

    /// A finite set is its own net at every precision.
    pub fn finite(space: M, points: Vec<M::Point>) -> Self {
        let inhabited = !points.is_empty();
        EpsilonNetFamily::new(space, inhabited, move |_| points.clone())
    }

    /// Panics unless `eps > 0`.
    pub fn net(&self, eps: &Rational) -> Vec<M::Point> {
        assert!(eps.is_positive(), "net precision must be positive");
        (self.net)(eps)
    }
}

/// A modulus of uniform continuity.
#[derive(Clone)]
pub struct Modulus(Arc<dyn Fn(&Rational) -> Rational + Send + Sync>);

impl Modulus {
    pub fn new(f: impl Fn(&Rational) -> Rational + Send + Sync + 'static) -> Self {
        Modulus(Arc::new(f))
    }

    /// `ε / l` for an `l`-Lipschitz map.
    pub fn lipschitz(l: Rational) -> Self {
        if l.is_zero() {
            Modulus::new(|_| Rational::one())
        } else {
            Modulus::new(move |e| e / &l)
        }
    }

    pub fn omega(&self, eps: &Rational) -> Rational {
        (self.0)(eps)
    }
}

/// `d(x, S)` as a Dedekind real.
///
/// At precision `ε`: the minimum over `net(ε/4)` of distances approximated to
/// `ε/8`, widened by `3ε/8` on each side (and clamped at 0).
pub fn distance_to_set<M>(s: &EpsilonNetFamily<M>, x: &M::Point) -> Result<DedekindReal, LocatedError>
where
    M: MetricSpace + Clone + 'static,
{
    if !s.inhabited {
        return Err(LocatedError::EmptySet);
    }
    let s = s.clone();
    let x = x.clone();
    Ok(DedekindReal::from_fn(move |eps| {
        let net = s.net(&(eps / int(4)));
        let m = s.space.min_dist_approx(&x, &net, &(eps / int(8)));
        let w = eps * rat(3, 8);
        let lo = &m - &w;
        Interval::new(if lo.is_negative() { Rational::zero() } else { lo }, m + w)
    }))
}

/// Hausdorff distance between two located sets.
///
/// At precision `ε`: both nets at `ε/8`, distances to `ε/8`, widened by
/// `3ε/8`. Symmetric by construction.
pub fn hausdorff<M>(a: &EpsilonNetFamily<M>, b: &EpsilonNetFamily<M>) -> Result<DedekindReal, LocatedError>
where
    M: MetricSpace + Clone + 'static,
{
    if !a.inhabited || !b.inhabited {
        return Err(LocatedError::EmptySet);
    }
    let (a, b) = (a.clone(), b.clone());
    Ok(DedekindReal::from_fn(move |eps| {
        let e8 = eps / int(8);
        let na = a.net(&e8);
        let nb = b.net(&e8);
        let h1 = a.space.directed_sup_min(&na, &nb, &e8);
        let h2 = a.space.directed_sup_min(&nb, &na, &e8);
        let h = if h1 > h2 { h1 } else { h2 };
        let w = eps * rat(3, 8);
        let lo = &h - &w;
        Interval::new(if lo.is_negative() { Rational::zero() } else { lo }, h + w)
    }))
}

pub fn union_located<M: MetricSpace + Clone + 'static>(a: &EpsilonNetFamily<M>, b: &EpsilonNetFamily<M>) -> EpsilonNetFamily<M> {
    let (na, nb) = (a.net.clone(), b.net.clone());
    EpsilonNetFamily::new(a.space.clone(), a.inhabited || b.inhabited, move |e| {
        let mut v = na(e);
        v.extend(nb(e));
        v
    })
}

/// `net(ε) = f(S.net(ω(ε)))`.
pub fn image_located<M, N>(
    s: &EpsilonNetFamily<M>,
    target: N,
    f: impl Fn(&M::Point) -> N::Point + Send + Sync + 'static,
    modulus: Modulus,
) -> EpsilonNetFamily<N>
where
    M: MetricSpace + 'static,
    N: MetricSpace,
{
    let inner = s.net.clone();
    EpsilonNetFamily::new(target, s.inhabited, move |e| inner(&modulus.omega(e)).iter().map(&f).collect())
}

type DecideFn<P> = Arc<dyn Fn(&FormalBall<P>, &FormalBall<P>) -> Decision + Send + Sync>;

/// A located predicate: for `inner < outer`, certify that the set misses
/// `inner` or meets `outer`.
pub struct LocatedPredicate<M: MetricSpace> {
    pub space: M,
    decide: DecideFn<M::Point>,
}

impl<M: MetricSpace + Clone> Clone for LocatedPredicate<M> {
    fn clone(&self) -> Self {
        LocatedPredicate { space: self.space.clone(), decide: self.decide.clone() }
    }
}

impl<M: MetricSpace + Clone + 'static> LocatedPredicate<M> {
    /// `decide` is called only on strictly nested pairs.
    pub fn new(
        space: M,
        decide: impl Fn(&FormalBall<M::Point>, &FormalBall<M::Point>) -> Decision + Send + Sync + 'static,
    ) -> Self {
        LocatedPredicate { space, decide: Arc::new(decide) }
    }

    pub fn decide(&self, inner: &FormalBall<M::Point>, outer: &FormalBall<M::Point>) -> Result<Decision, LocatedError> {
        if !ball_lt(&self.space, inner, outer)? {
            return Err(LocatedError::PreconditionFailed(format!("{inner} < {outer} does not hold")));
        }
        Ok((self.decide)(inner, outer))
    }

    /// The predicate of a net-backed set.
    pub fn from_nets(s: &EpsilonNetFamily<M>) -> Self {
        let s = s.clone();
        LocatedPredicate::new(s.space.clone(), move |v, u| {
            decide_located_pair(&s, v, u).expect("nested pair with a certified gap")
        })
    }

    /// Tri-valued positivity of a single ball: true if the set meets some
    /// ball strictly inside it, false if it misses some ball strictly around
    /// it (found by shrinking or growing the radius by `r/2^k`, `k <= tries`).
    pub fn pos_tri(&self, u: &FormalBall<M::Point>, tries: u32) -> Tri {
        for k in 1..=tries {
            let d = &u.radius * dyadic(k);
            let inner = FormalBall::new(u.center.clone(), &u.radius - &d);
            if (self.decide)(&inner, u) == Decision::PosOuter {
                return Tri::True;
            }
            let outer = FormalBall::new(u.center.clone(), &u.radius + &d);
            if (self.decide)(u, &outer) == Decision::NotPosInner {
                return Tri::False;
            }
        }
        Tri::Unknown
    }
}

/// Decide a nested pair for a net-backed set.
///
/// With `e ≥ d(x, y)` rational and `r < s - e`, the distance from the inner
/// center is compared across the gap `(r, s - e)`: above `r` means the inner
/// ball is missed; below `s - e` means the outer ball is met. An empty set
/// answers `NotPosInner`.
pub fn decide_located_pair<M>(
    s: &EpsilonNetFamily<M>,
    inner: &FormalBall<M::Point>,
    outer: &FormalBall<M::Point>,
) -> Result<Decision, LocatedError>
where
    M: MetricSpace + Clone + 'static,
{
    if !ball_lt(&s.space, inner, outer)? {
        return Err(LocatedError::PreconditionFailed(format!("{inner} < {outer} does not hold")));
    }
    if !s.inhabited {
        return Ok(Decision::NotPosInner);
    }
    let margin = &outer.radius - &inner.radius;
    let e = s
        .space
        .dist_upper_below(&inner.center, &outer.center, &margin)
        .ok_or_else(|| MetricError::Undecided(margin.clone()))?;
    let d = distance_to_set(s, &inner.center)?;
    let hi = &outer.radius - &e;
    let side = compare_with_gap(&d, &inner.radius, &hi).expect("gap is strict");
    Ok(match side {
        GapDecision::LowerSide => Decision::NotPosInner,
        GapDecision::UpperSide => Decision::PosOuter,
    })
}

/// An ε-net of the set behind `p`, built from an ambient net: ambient points
/// `x` at `ε/4` are kept when `p` answers `PosOuter` on
/// `B_{ε/3}(x) < B_{2ε/3}(x)`. `None` when nothing is kept.
pub fn net_from_located<M>(
    ambient: &EpsilonNetFamily<M>,
    p: &LocatedPredicate<M>,
    eps: &Rational,
) -> Option<Vec<M::Point>>
where
    M: MetricSpace + Clone + 'static,
{
    let (r_in, r_out) = (eps / int(3), eps * rat(2, 3));
    let kept: Vec<M::Point> = ambient
        .net(&(eps / int(4)))
        .into_par_iter()
        .filter(|x| {
            let inner = FormalBall::new(x.clone(), r_in.clone());
            let outer = FormalBall::new(x.clone(), r_out.clone());
            (p.decide)(&inner, &outer) == Decision::PosOuter
        })
        .collect();
    (!kept.is_empty()).then_some(kept)
}

/// A located predicate from a raw positivity oracle: `PosOuter` exactly when
/// the outer ball is positive.
pub fn located_from_dichotomy<M>(space: M, raw: impl Fn(&FormalBall<M::Point>) -> bool + Send + Sync + 'static) -> LocatedPredicate<M>
where
    M: MetricSpace + Clone + 'static,
{
    LocatedPredicate::new(space, move |_, u| if raw(u) { Decision::PosOuter } else { Decision::NotPosInner })
}

/// A failed clause of the dichotomy conditions, on sampled balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClauseViolation {
    /// `v < u`, `pos(v)` but not `pos(u)`.
    Dichotomy { v: String, u: String },
    /// `u ≤ u'`, `pos(u)` but not `pos(u')`.
    UpwardClosed { u: String, u2: String },
    /// `pos(u)` but no sampled `v < u` is positive.
    NoSmallerWitness { u: String },
}

/// Spot-check clauses 1, 2(a), 2(b) on `samples`. For 2(b) the candidates
/// are the other samples plus concentric shrinks by `r/2^k`, `k <= 8`.
pub fn check_dichotomy_clauses<M>(
    space: &M,
    raw: &dyn Fn(&FormalBall<M::Point>) -> bool,
    samples: &[FormalBall<M::Point>],
) -> Vec<ClauseViolation>
where
    M: MetricSpace,
{
    let mut out = Vec::new();
    for v in samples {
        if !raw(v) {
            continue;
        }
        for u in samples {
            if ball_lt(space, v, u).unwrap_or(false) && !raw(u) {
                out.push(ClauseViolation::Dichotomy { v: v.to_string(), u: u.to_string() });
            }
            if ball_leq(space, v, u).unwrap_or(false) && !raw(u) {
                out.push(ClauseViolation::UpwardClosed { u: v.to_string(), u2: u.to_string() });
            }
        }
        let shrinks = (1..=8u32).map(|k| FormalBall::new(v.center.clone(), &v.radius * (Rational::one() - dyadic(k))));
        let witness = samples
            .iter()
            .cloned()
            .chain(shrinks)
            .any(|w| ball_lt(space, &w, v).unwrap_or(false) && raw(&w));
        if !witness {
            out.push(ClauseViolation::NoSmallerWitness { u: v.to_string() });
        }
    }
    out
}

/// Run the Mon check of a raw predicate over loc(ℚ) on derived covers:
/// each sample ball is split into two overlapping halves and the cover is
/// derived by the kernel before the check.
pub fn mon_report_on_split_covers(
    raw: impl Fn(&FormalBall<Rational>) -> bool + Send + Sync + 'static,
    samples: &[FormalBall<Rational>],
) -> PositivityReport {
    let base = CompletionBase::new(RationalLine, 3);
    let pos: PosPredicate<FormalBall<Rational>> = pos_predicate(move |b| Tri::from(raw(b)));
    let judgments: Vec<_> = samples
        .iter()
        .filter_map(|u| {
            let (p, s) = u.as_interval();
            let w = (&s - &p) / int(8);
            let fam = vec![FormalBall::from_interval(&p, &(&u.center + &w)), FormalBall::from_interval(&(&u.center - &w), &s)];
            derive_cover(&base, u, &fam, 2).map(|d| (u.clone(), fam, d))
        })
        .collect();
    check_positivity_axioms(&base, &pos, &judgments, 2)
}

/// The dichotomy for a compact one-dimensional set known only through its
/// positivity on interval-lattice elements.
///
/// For `v < u` the exterior `w` of `v` witnesses `v ≺ u`, and `{u, w}` covers
/// the ambient (checked by `finite_cover_decide`). If `u` is positive the
/// answer is `PosOuter`; otherwise the set lies in `w`, which misses `v`.
pub fn dichotomy_via_cover(
    ambient: &OpenInterval,
    pos: &dyn Fn(&IntervalElement) -> bool,
    inner: &FormalBall<Rational>,
    outer: &FormalBall<Rational>,
) -> Result<Decision, LocatedError> {
    if !ball_lt(&RationalLine, inner, outer)? {
        return Err(LocatedError::PreconditionFailed(format!("{inner} < {outer} does not hold")));
    }
    let elem = |b: &FormalBall<Rational>| {
        let (p, q) = b.as_interval();
        IntervalElement::clipped(ambient.clone(), vec![OpenInterval::new(p, q)])
    };
    let (v, u) = (elem(inner), elem(outer));
    let WellInside::Witness(w) = well_inside(&v, &u)? else {
        return Err(LocatedError::PreconditionFailed(format!("{inner} is not well inside {outer} in {ambient}")));
    };
    if !finite_cover_decide(&IntervalElement::one(ambient.clone()), &[u.clone(), w])? {
        return Err(LocatedError::PreconditionFailed("cover extraction failed".into()));
    }
    Ok(if pos(&u) { Decision::PosOuter } else { Decision::NotPosInner })
}

fn on_axis(x: &Rational) -> Point2 {
    Point2::new(x.clone(), Rational::zero())
}

impl ExactSet {
    /// Nets in the Euclidean plane.
    pub fn plane_nets(&self) -> EpsilonNetFamily<PlaneL2> {
        let s = self.clone();
        EpsilonNetFamily::new(PlaneL2, self.is_inhabited(), move |e| s.net(e))
    }

    /// Nets on the rational line; `None` unless the set lies on the x-axis.
    pub fn line_nets(&self) -> Option<EpsilonNetFamily<RationalLine>> {
        if !self.is_one_dimensional() {
            return None;
        }
        let s = self.clone();
        Some(EpsilonNetFamily::new(RationalLine, self.is_inhabited(), move |e| {
            s.net(e).into_iter().map(|p| p.x).collect()
        }))
    }

    /// The located predicate in the plane: exact where every part has an
    /// exact distance oracle, net-backed otherwise.
    pub fn plane_predicate(&self) -> LocatedPredicate<PlaneL2> {
        if self.is_exact() {
            let s = self.clone();
            LocatedPredicate::new(PlaneL2, move |_, u| exact_decision(&s, &u.center, &u.radius))
        } else {
            LocatedPredicate::from_nets(&self.plane_nets())
        }
    }

    /// The exact located predicate on the rational line.
    pub fn line_predicate(&self) -> Option<LocatedPredicate<RationalLine>> {
        if !self.is_one_dimensional() {
            return None;
        }
        let s = self.clone();
        Some(LocatedPredicate::new(RationalLine, move |_, u| exact_decision(&s, &on_axis(&u.center), &u.radius)))
    }

    /// Whether the open interval `(p, q)` meets the set (one-dimensional sets).
    pub fn meets_interval(&self, p: &Rational, q: &Rational) -> Option<bool> {
        let c = on_axis(&crate::numerics::midpoint(p, q));
        self.meets_open_ball(&c, &((q - p) / int(2)))
    }
}

fn exact_decision(s: &ExactSet, c: &Point2, r: &Rational) -> Decision {
    match s.cmp_dist(c, r) {
        Some(Ordering::Less) => Decision::PosOuter,
        _ => Decision::NotPosInner,
    }
}

/// Two-sided nets of a closed box: grids of spacing `ε`.
pub fn box_nets(b: &BBox) -> EpsilonNetFamily<PlaneL2> {
    let b = b.clone();
    EpsilonNetFamily::new(PlaneL2, true, move |e| {
        let xs = grid_1d(&b.xmin, &b.xmax, e);
        let ys = grid_1d(&b.ymin, &b.ymax, e);
        xs.iter().flat_map(|x| ys.iter().map(move |y| Point2::new(x.clone(), y.clone()))).collect()
    })
}

/// Two-sided nets of `[lo, hi]`.
pub fn interval_nets(lo: Rational, hi: Rational) -> EpsilonNetFamily<RationalLine> {
    EpsilonNetFamily::new(RationalLine, true, move |e| grid_1d(&lo, &hi, e))
}

/// `lo, lo + h, ..., hi` with `h <= eps`.
fn grid_1d(lo: &Rational, hi: &Rational, eps: &Rational) -> Vec<Rational> {
    let n = ((hi - lo) / eps).ceil().to_integer().max(1.into());
    let n = Rational::from_integer(n);
    let mut out = Vec::new();
    let mut j = Rational::zero();
    while j <= n {
        out.push(lo + (hi - lo) * &j / &n);
        j += Rational::one();
    }
    out
}

/// An ambient net family around a builtin set: its bounding box grown by
/// `margin`, on the line for one-dimensional sets.
pub fn ambient_line_nets(s: &ExactSet, margin: &Rational) -> Option<EpsilonNetFamily<RationalLine>> {
    let b = s.bbox()?.grow(margin);
    Some(interval_nets(b.xmin, b.xmax))
}

pub fn ambient_plane_nets(s: &ExactSet, margin: &Rational) -> Option<EpsilonNetFamily<PlaneL2>> {
    Some(box_nets(&s.bbox()?.grow(margin)))
}
