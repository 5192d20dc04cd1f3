//! Metric spaces given by two-sided distance approximations, formal balls and
//! the localic completion built from them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::kernel::{AxiomInstance, Base, Meet};
use crate::numerics::{dyadic, half, int, midpoint, sqrt_bounds, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("distance comparison against {0} not certified above the precision floor")]
    Undecided(Rational),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("chooser returned {point}, which is not certified within {bound} of {center}")]
    UncertifiedPoint { point: String, center: String, bound: Rational },
}

/// Precision floor for approximate comparisons: `2^-64`.
pub const PRECISION_FLOOR_BITS: u32 = 64;

pub trait MetricSpace: Send + Sync {
    type Point: Clone + fmt::Debug + fmt::Display + PartialEq + Eq + Hash + Send + Sync + 'static;

    /// A rational within `eps` of `d(x, y)`.
    fn dist_approx(&self, x: &Self::Point, y: &Self::Point, eps: &Rational) -> Rational;

    /// The first `n` base points of a fixed enumeration.
    fn enumerate(&self, n: usize) -> Vec<Self::Point>;

    /// Three-way comparison of `d(x, y)` with `q`.
    ///
    /// The default refines `dist_approx` down to the precision floor and gives
    /// up with `None`; spaces with exact distances override it.
    fn cmp_dist(&self, x: &Self::Point, y: &Self::Point, q: &Rational) -> Option<Ordering> {
        let mut eps = Rational::one();
        for _ in 0..=PRECISION_FLOOR_BITS {
            let d = self.dist_approx(x, y, &eps);
            if &d + &eps < *q {
                return Some(Ordering::Less);
            }
            if &d - &eps > *q {
                return Some(Ordering::Greater);
            }
            eps = half(&eps);
        }
        None
    }

    /// A rational `e` with `d(x, y) <= e < below`, if one is certified.
    fn dist_upper_below(&self, x: &Self::Point, y: &Self::Point, below: &Rational) -> Option<Rational> {
        let mut eps = Rational::one();
        for _ in 0..=PRECISION_FLOOR_BITS {
            let e = self.dist_approx(x, y, &eps) + &eps;
            if e < *below {
                return Some(e);
            }
            eps = half(&eps);
        }
        None
    }

    /// A rational within `eps` of `min_i d(x, ys[i])`. `ys` must be nonempty.
    fn min_dist_approx(&self, x: &Self::Point, ys: &[Self::Point], eps: &Rational) -> Rational {
        ys.iter()
            .map(|y| self.dist_approx(x, y, eps))
            .min()
            .expect("min_dist_approx over an empty list")
    }

    /// A rational within `eps` of `max_a min_b d(a, b)` over `from` and `to`,
    /// both nonempty.
    fn directed_sup_min(&self, from: &[Self::Point], to: &[Self::Point], eps: &Rational) -> Rational {
        use rayon::prelude::*;
        from.par_iter()
            .map(|a| self.min_dist_approx(a, to, eps))
            .max()
            .expect("directed distance from an empty list")
    }

    /// Finite families of balls that genuinely cover `u`, proposed for
    /// derivation search. Empty unless the space knows such covers.
    fn finite_ball_covers(
        &self,
        _u: &FormalBall<Self::Point>,
        _hints: &[FormalBall<Self::Point>],
        _budget: usize,
    ) -> Vec<Vec<FormalBall<Self::Point>>> {
        Vec::new()
    }

    /// Whether `family` is one of the covers `finite_ball_covers` proposes,
    /// re-verified from scratch.
    fn is_finite_ball_cover(&self, _u: &FormalBall<Self::Point>, _family: &[FormalBall<Self::Point>]) -> bool {
        false
    }

    /// Intersection of two balls when it is again a ball (or empty).
    fn ball_meet(&self, _a: &FormalBall<Self::Point>, _b: &FormalBall<Self::Point>) -> Meet<FormalBall<Self::Point>> {
        Meet::Unrepresentable
    }
}

/// The Calkin-Wilf enumeration of the rationals, signed: `0, 1, -1, 1/2, -1/2, 2, -2, ...`.
pub fn enumerate_rationals(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(Rational::zero());
    let mut q = Rational::one();
    while out.len() < n {
        out.push(q.clone());
        if out.len() < n {
            out.push(-q.clone());
        }
        // next Calkin-Wilf term: 1 / (2 floor(q) - q + 1)
        let fl = q.floor();
        q = Rational::one() / (int(2) * fl - &q + Rational::one());
    }
    out
}

/// The rationals with `|x - y|`. All distances are exact.
#[derive(Debug, Clone, Copy, Default)]
pub struct RationalLine;

impl MetricSpace for RationalLine {
    type Point = Rational;

    fn dist_approx(&self, x: &Rational, y: &Rational, _eps: &Rational) -> Rational {
        (x - y).abs()
    }

    fn enumerate(&self, n: usize) -> Vec<Rational> {
        enumerate_rationals(n)
    }

    fn cmp_dist(&self, x: &Rational, y: &Rational, q: &Rational) -> Option<Ordering> {
        Some((x - y).abs().cmp(q))
    }

    fn dist_upper_below(&self, x: &Rational, y: &Rational, below: &Rational) -> Option<Rational> {
        let d = (x - y).abs();
        (d < *below).then_some(d)
    }

    fn directed_sup_min(&self, from: &[Rational], to: &[Rational], _eps: &Rational) -> Rational {
        let mut sorted = to.to_vec();
        sorted.sort();
        from.iter()
            .map(|a| {
                let i = sorted.partition_point(|b| b < a);
                let right = sorted.get(i).map(|b| b - a);
                let left = i.checked_sub(1).map(|j| a - &sorted[j]);
                right.into_iter().chain(left).min().expect("directed distance to an empty list")
            })
            .max()
            .expect("directed distance from an empty list")
    }

    fn finite_ball_covers(
        &self,
        u: &FormalBall<Rational>,
        hints: &[FormalBall<Rational>],
        budget: usize,
    ) -> Vec<Vec<FormalBall<Rational>>> {
        let (p, s) = u.as_interval();
        let hint_ivs: Vec<(Rational, Rational)> = hints.iter().map(FormalBall::as_interval).collect();
        crate::kernel::reals::split_points(&p, &s, &hint_ivs, budget)
            .into_iter()
            .map(|(q, r)| {
                vec![FormalBall::from_interval(&p, &r), FormalBall::from_interval(&q, &s)]
            })
            .collect()
    }

    fn is_finite_ball_cover(&self, u: &FormalBall<Rational>, family: &[FormalBall<Rational>]) -> bool {
        let [a, b] = family else {
            return false;
        };
        let (p, s) = u.as_interval();
        crate::kernel::reals::is_split(&p, &s, &a.as_interval(), &b.as_interval())
    }

    fn ball_meet(&self, a: &FormalBall<Rational>, b: &FormalBall<Rational>) -> Meet<FormalBall<Rational>> {
        let (p, q) = a.as_interval();
        let (r, s) = b.as_interval();
        let lo = if p > r { p } else { r };
        let hi = if q < s { q } else { s };
        if lo < hi {
            Meet::Single(FormalBall::from_interval(&lo, &hi))
        } else {
            Meet::Empty
        }
    }
}

/// A point of the rational plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn dist2(&self, other: &Point2) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    pub fn dist_inf(&self, other: &Point2) -> Rational {
        let dx = (&self.x - &other.x).abs();
        let dy = (&self.y - &other.y).abs();
        if dx > dy { dx } else { dy }
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

fn enumerate_pairs(n: usize) -> Vec<Point2> {
    // Cantor pairing over the rational enumeration
    let mut out = Vec::with_capacity(n);
    let mut diag = 0usize;
    let mut base = Vec::new();
    while out.len() < n {
        if base.len() <= diag {
            base = enumerate_rationals(2 * diag + 2);
        }
        for i in 0..=diag {
            if out.len() == n {
                break;
            }
            out.push(Point2::new(base[i].clone(), base[diag - i].clone()));
        }
        diag += 1;
    }
    out
}

/// The rational plane with the maximum metric. Exact.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlaneLinf;

impl MetricSpace for PlaneLinf {
    type Point = Point2;

    fn dist_approx(&self, x: &Point2, y: &Point2, _eps: &Rational) -> Rational {
        x.dist_inf(y)
    }

    fn enumerate(&self, n: usize) -> Vec<Point2> {
        enumerate_pairs(n)
    }

    fn cmp_dist(&self, x: &Point2, y: &Point2, q: &Rational) -> Option<Ordering> {
        Some(x.dist_inf(y).cmp(q))
    }

    fn dist_upper_below(&self, x: &Point2, y: &Point2, below: &Rational) -> Option<Rational> {
        let d = x.dist_inf(y);
        (d < *below).then_some(d)
    }
}

/// The rational plane with the Euclidean metric. Distances are square roots
/// of rationals, approximated through integer square roots; comparisons with
/// rationals are exact on squares.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlaneL2;

impl PlaneL2 {
    fn sqrt_approx(d2: &Rational, eps: &Rational) -> Rational {
        let k = crate::numerics::precision_bits(eps);
        sqrt_bounds(d2, k).0
    }
}

impl MetricSpace for PlaneL2 {
    type Point = Point2;

    fn dist_approx(&self, x: &Point2, y: &Point2, eps: &Rational) -> Rational {
        Self::sqrt_approx(&x.dist2(y), eps)
    }

    fn enumerate(&self, n: usize) -> Vec<Point2> {
        enumerate_pairs(n)
    }

    fn cmp_dist(&self, x: &Point2, y: &Point2, q: &Rational) -> Option<Ordering> {
        if q.is_negative() {
            return Some(Ordering::Greater);
        }
        Some(x.dist2(y).cmp(&(q * q)))
    }

    fn dist_upper_below(&self, x: &Point2, y: &Point2, below: &Rational) -> Option<Rational> {
        let d2 = x.dist2(y);
        if !below.is_positive() || d2 >= below * below {
            return None;
        }
        let mut k = 1;
        loop {
            let (_, hi) = sqrt_bounds(&d2, k);
            if hi < *below {
                return Some(hi);
            }
            k += 4;
        }
    }

    fn min_dist_approx(&self, x: &Point2, ys: &[Point2], eps: &Rational) -> Rational {
        let d2 = ys.iter().map(|y| x.dist2(y)).min().expect("min_dist_approx over an empty list");
        Self::sqrt_approx(&d2, eps)
    }

    fn directed_sup_min(&self, from: &[Point2], to: &[Point2], eps: &Rational) -> Rational {
        use rayon::prelude::*;
        let d2 = match BucketGrid::new(to) {
            Some(grid) => from.par_iter().map(|a| grid.min_dist2(a)).max(),
            None => from.par_iter().map(|a| to.iter().map(|b| a.dist2(b)).min().expect("empty target")).max(),
        };
        Self::sqrt_approx(&d2.expect("directed distance from an empty list"), eps)
    }
}

/// Points bucketed into square cells for nearest-neighbour queries. The
/// search runs in floating point with a tolerance, then the surviving
/// candidates are compared exactly.
struct BucketGrid<'a> {
    cell: f64,
    tol: f64,
    cells: HashMap<(i64, i64), Vec<(f64, f64, &'a Point2)>>,
    lo: (i64, i64),
    hi: (i64, i64),
}

/// Beyond this magnitude the floating-point filter is not trusted.
const FLOAT_RANGE: f64 = 1e9;

fn as_f64(p: &Point2) -> Option<(f64, f64)> {
    let (x, y) = (p.x.to_f64()?, p.y.to_f64()?);
    (x.abs() < FLOAT_RANGE && y.abs() < FLOAT_RANGE).then_some((x, y))
}

impl<'a> BucketGrid<'a> {
    /// `None` for tiny inputs or coordinates outside the trusted range.
    fn new(points: &'a [Point2]) -> Option<Self> {
        if points.len() < 64 {
            return None;
        }
        let coords: Vec<(f64, f64)> = points.iter().map(as_f64).collect::<Option<_>>()?;
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in &coords {
            (x0, x1, y0, y1) = (x0.min(x), x1.max(x), y0.min(y), y1.max(y));
        }
        let side = (x1 - x0).max(y1 - y0);
        if side <= 0.0 {
            return None;
        }
        let cell = side / (points.len() as f64).sqrt().ceil();
        // rounding in coordinates, squares and square roots stays far below this
        let tol = 1e-7 * (1.0 + x0.abs().max(x1.abs()).max(y0.abs()).max(y1.abs()));
        let mut grid = BucketGrid { cell, tol, cells: HashMap::new(), lo: (i64::MAX, i64::MAX), hi: (i64::MIN, i64::MIN) };
        for (p, &(x, y)) in points.iter().zip(&coords) {
            let k = grid.key(x, y);
            grid.lo = (grid.lo.0.min(k.0), grid.lo.1.min(k.1));
            grid.hi = (grid.hi.0.max(k.0), grid.hi.1.max(k.1));
            grid.cells.entry(k).or_default().push((x, y, p));
        }
        Some(grid)
    }

    fn key(&self, x: f64, y: f64) -> (i64, i64) {
        ((x / self.cell).floor() as i64, (y / self.cell).floor() as i64)
    }

    /// Occupied cells at Chebyshev distance exactly `k` from `(ci, cj)`,
    /// clipped to the key range of the grid.
    fn ring(&self, ci: i64, cj: i64, k: i64) -> impl Iterator<Item = &(f64, f64, &'a Point2)> + '_ {
        let (j0, j1) = ((cj - k).max(self.lo.1), (cj + k).min(self.hi.1));
        ((ci - k).max(self.lo.0)..=(ci + k).min(self.hi.0))
            .flat_map(move |i| {
                let cols: Vec<i64> = if (i - ci).abs() == k {
                    (j0..=j1).collect()
                } else {
                    [cj - k, cj + k].into_iter().filter(|j| (j0..=j1).contains(j)).collect()
                };
                cols.into_iter().map(move |j| (i, j))
            })
            .flat_map(|ij| self.cells.get(&ij).into_iter().flatten())
    }

    /// First ring that meets the key range.
    fn first_ring(&self, ci: i64, cj: i64) -> i64 {
        let gap = |c: i64, lo: i64, hi: i64| (lo - c).max(c - hi).max(0);
        gap(ci, self.lo.0, self.hi.0).max(gap(cj, self.lo.1, self.hi.1))
    }

    /// Exact squared distance to the nearest bucketed point. After ring `k`,
    /// unseen points are at least `(k - 1) * cell` away, allowing one cell
    /// of slack for keys rounded across a boundary.
    fn min_dist2(&self, a: &Point2) -> Rational {
        let Some((ax, ay)) = as_f64(a) else {
            return self.cells.values().flatten().map(|(_, _, b)| a.dist2(b)).min().expect("nonempty grid");
        };
        let (ci, cj) = self.key(ax, ay);
        let reach = [ci - self.lo.0, self.hi.0 - ci, cj - self.lo.1, self.hi.1 - cj].into_iter().map(i64::abs).max().unwrap_or(0) + 2;
        let dist = |&(x, y, _): &(f64, f64, &Point2)| ((x - ax).powi(2) + (y - ay).powi(2)).sqrt();
        let mut best = f64::INFINITY;
        let mut k = self.first_ring(ci, cj);
        while k <= reach && best + self.tol > (k - 1).max(0) as f64 * self.cell {
            best = self.ring(ci, cj, k).map(dist).fold(best, f64::min);
            k += 1;
        }
        // every point within best + 2 tol lies in rings 0..=k_max
        let limit = best + 2.0 * self.tol;
        let k_max = ((limit / self.cell).ceil() as i64 + 1).min(reach);
        (self.first_ring(ci, cj)..=k_max)
            .flat_map(|k| self.ring(ci, cj, k))
            .filter(|c| dist(c) <= limit)
            .map(|(_, _, b)| a.dist2(b))
            .min()
            .expect("the nearest point is a candidate")
    }
}

/// The basic open `B_r(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalBall<P> {
    pub center: P,
    pub radius: Rational,
}

impl<P> FormalBall<P> {
    /// Panics unless `radius > 0`.
    pub fn new(center: P, radius: Rational) -> Self {
        assert!(radius.is_positive(), "ball radius must be positive");
        FormalBall { center, radius }
    }
}

impl FormalBall<Rational> {
    /// The open interval `(x - r, x + r)`.
    pub fn as_interval(&self) -> (Rational, Rational) {
        (&self.center - &self.radius, &self.center + &self.radius)
    }

    pub fn from_interval(lo: &Rational, hi: &Rational) -> Self {
        FormalBall::new(midpoint(lo, hi), half(&(hi - lo)))
    }
}

impl<P: fmt::Display> fmt::Display for FormalBall<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({};{})", self.radius, self.center)
    }
}

/// `B_r(x) < B_s(y)` iff `d(x, y) < s - r`. A boundary case `d = s - r` is
/// false; an uncertifiable comparison is an error.
pub fn ball_lt<M: MetricSpace>(
    space: &M,
    a: &FormalBall<M::Point>,
    b: &FormalBall<M::Point>,
) -> Result<bool, MetricError> {
    let margin = &b.radius - &a.radius;
    if !margin.is_positive() {
        return Ok(false);
    }
    match space.cmp_dist(&a.center, &b.center, &margin) {
        Some(o) => Ok(o == Ordering::Less),
        None => Err(MetricError::Undecided(margin)),
    }
}

/// `B_r(x) <= B_s(y)` iff `d(x, y) <= s - r`.
pub fn ball_leq<M: MetricSpace>(
    space: &M,
    a: &FormalBall<M::Point>,
    b: &FormalBall<M::Point>,
) -> Result<bool, MetricError> {
    let margin = &b.radius - &a.radius;
    if margin.is_negative() {
        return Ok(false);
    }
    match space.cmp_dist(&a.center, &b.center, &margin) {
        Some(o) => Ok(o != Ordering::Greater),
        None => Err(MetricError::Undecided(margin)),
    }
}

/// A ball `c` with `a < c < b`: same center as `b`, radius halfway between
/// `b`'s radius and the tightest certified one.
pub fn refine_between<M: MetricSpace>(
    space: &M,
    a: &FormalBall<M::Point>,
    b: &FormalBall<M::Point>,
) -> Result<FormalBall<M::Point>, MetricError> {
    if !ball_lt(space, a, b)? {
        return Err(MetricError::PreconditionFailed(format!("{a} < {b} does not hold")));
    }
    let margin = &b.radius - &a.radius;
    let e = space
        .dist_upper_below(&a.center, &b.center, &margin)
        .ok_or_else(|| MetricError::Undecided(margin.clone()))?;
    let radius = &b.radius - half(&(&margin - &e));
    Ok(FormalBall::new(b.center.clone(), radius))
}

/// A finite initial segment of a Cauchy filter: strictly decreasing balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyFilterStage<P> {
    pub chain: Vec<FormalBall<P>>,
}

impl<P: Clone> CauchyFilterStage<P> {
    pub fn new(start: FormalBall<P>) -> Self {
        CauchyFilterStage { chain: vec![start] }
    }

    pub fn last(&self) -> &FormalBall<P> {
        self.chain.last().expect("stage is never empty")
    }
}

/// Extend a stage by halving radii until the last radius is at most
/// `target`. `chooser(ball, eps)` proposes the next center; it must lie
/// within half the current radius of the current center.
pub fn filter_stage_refine<M, C>(
    space: &M,
    stage: &CauchyFilterStage<M::Point>,
    target: &Rational,
    chooser: C,
) -> Result<CauchyFilterStage<M::Point>, MetricError>
where
    M: MetricSpace,
    C: Fn(&FormalBall<M::Point>, &Rational) -> M::Point,
{
    let mut out = stage.clone();
    while out.last().radius > *target {
        let cur = out.last().clone();
        let next_r = half(&cur.radius);
        let slack = &cur.radius - &next_r;
        let p = chooser(&cur, &half(&slack));
        if space.cmp_dist(&p, &cur.center, &slack) != Some(Ordering::Less) {
            return Err(MetricError::UncertifiedPoint {
                point: p.to_string(),
                center: cur.center.to_string(),
                bound: slack,
            });
        }
        out.chain.push(FormalBall::new(p, next_r));
    }
    Ok(out)
}

/// The localic completion of a metric space as a kernel base.
///
/// Axiom instances per ball `u` and budget `b`:
/// - `m1`: `{B_{r(1-2^-k)}(y) < u}` for `k <= b` and `y` among the first `b`
///   points. A budget sample of an infinite family, so not complete.
/// - `m2`: `{B_{2^-k}(y)}` for the same `k`, `y`. Also a sample.
/// - `split`: finite covers the space itself certifies (for the rational line,
///   two overlapping sub-balls). Complete.
pub struct CompletionBase<M: MetricSpace> {
    pub space: M,
    pub budget: usize,
}

impl<M: MetricSpace> CompletionBase<M> {
    pub fn new(space: M, budget: usize) -> Self {
        CompletionBase { space, budget }
    }

    pub fn m1_family(&self, u: &FormalBall<M::Point>, budget: usize) -> Vec<FormalBall<M::Point>> {
        let pts = self.space.enumerate(budget);
        let mut out = Vec::new();
        for k in 1..=budget as u32 {
            let r = &u.radius * (Rational::one() - dyadic(k));
            for y in &pts {
                let v = FormalBall::new(y.clone(), r.clone());
                if ball_lt(&self.space, &v, u).unwrap_or(false) && !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn m2_family(&self, budget: usize) -> Vec<FormalBall<M::Point>> {
        let pts = self.space.enumerate(budget);
        (1..=budget as u32)
            .flat_map(|k| pts.iter().map(move |y| FormalBall::new(y.clone(), dyadic(k))))
            .collect()
    }
}

impl<M: MetricSpace> Base for CompletionBase<M> {
    type Elem = FormalBall<M::Point>;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        ball_leq(&self.space, a, b).unwrap_or(false)
    }

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Meet<Self::Elem> {
        self.space.ball_meet(a, b)
    }

    fn axiom_instances(&self, u: &Self::Elem, budget: usize, hints: &[Self::Elem]) -> Vec<AxiomInstance<Self::Elem>> {
        let mut out: Vec<AxiomInstance<Self::Elem>> = self
            .space
            .finite_ball_covers(u, hints, budget)
            .into_iter()
            .map(|family| AxiomInstance { tag: "split", family, complete: true })
            .collect();
        let b = budget.min(self.budget);
        out.push(AxiomInstance { tag: "m1", family: self.m1_family(u, b), complete: false });
        out.push(AxiomInstance { tag: "m2", family: self.m2_family(b), complete: false });
        out
    }

    fn is_axiom_instance(&self, tag: &str, u: &Self::Elem, family: &[Self::Elem]) -> bool {
        match tag {
            // a split is certified geometrically, independent of how it was found
            "split" => self.space.is_finite_ball_cover(u, family),
            _ => false,
        }
    }
}

/// Sample points of the rational line: `j / 2^k` in `[lo, hi]`.
pub fn dyadic_grid(lo: &Rational, hi: &Rational, k: u32) -> Vec<Rational> {
    let scale = int(1 << k);
    let start = (lo * &scale).ceil();
    let end = (hi * &scale).floor();
    let mut out = Vec::new();
    let mut j = start;
    while j <= end {
        out.push(&j / &scale);
        j += Rational::one();
    }
    out
}
