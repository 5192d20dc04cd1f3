//! Builtin subsets of the rational plane with exact distance comparisons and
//! two-sided ε-nets. One-dimensional sets live on the x-axis.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::metric_locale::Point2;
use crate::numerics::{int, rat, Rational};

/// `(x, y) ↦ (a x + b y + e, c x + d y + f)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Affine {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
    pub f: Rational,
}

impl Affine {
    pub fn new(coeffs: [Rational; 6]) -> Self {
        let [a, b, c, d, e, f] = coeffs;
        Affine { a, b, c, d, e, f }
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        Point2::new(&self.a * &p.x + &self.b * &p.y + &self.e, &self.c * &p.x + &self.d * &p.y + &self.f)
    }

    /// The linear part only.
    pub fn apply_linear(&self, p: &Point2) -> Point2 {
        Point2::new(&self.a * &p.x + &self.b * &p.y, &self.c * &p.x + &self.d * &p.y)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Affine) -> Affine {
        let lin = |x: &Rational, y: &Rational| (&self.a * x + &self.b * y, &self.c * x + &self.d * y);
        let (a, c) = lin(&inner.a, &inner.c);
        let (b, d) = lin(&inner.b, &inner.d);
        let t = self.apply(&Point2::new(inner.e.clone(), inner.f.clone()));
        Affine { a, b, c, d, e: t.x, f: t.y }
    }

    /// `|a| + |b| + |c| + |d|`, an upper bound on the Euclidean Lipschitz
    /// constant.
    pub fn lipschitz_bound(&self) -> Rational {
        self.a.abs() + self.b.abs() + self.c.abs() + self.d.abs()
    }

    /// For a similarity, the square of its scale factor.
    fn similarity_scale2(&self) -> Option<Rational> {
        let rot = self.a == self.d && self.b == -self.c.clone();
        let refl = self.a == -self.d.clone() && self.b == self.c;
        (rot || refl).then(|| &self.a * &self.a + &self.c * &self.c)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "affine:{},{},{},{},{},{}", self.a, self.b, self.c, self.d, self.e, self.f)
    }
}

/// A set given by its constructor tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExactSet {
    /// `[lo, hi]` on the x-axis.
    Interval(Rational, Rational),
    Points(Vec<Point2>),
    /// The middle-thirds Cantor set on the x-axis.
    Cantor,
    /// Closed disk.
    Disk { center: Point2, radius: Rational },
    Segment(Point2, Point2),
    Union(Box<ExactSet>, Box<ExactSet>),
    Image(Affine, Box<ExactSet>),
}

fn fmt_rat_point(p: &Point2, one_d: bool) -> String {
    if one_d { p.x.to_string() } else { format!("{},{}", p.x, p.y) }
}

impl fmt::Display for ExactSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactSet::Interval(a, b) => write!(f, "interval:{a},{b}"),
            ExactSet::Points(ps) => {
                let one_d = ps.iter().all(|p| p.y.is_zero());
                let items: Vec<String> = ps.iter().map(|p| format!("({})", fmt_rat_point(p, one_d))).collect();
                write!(f, "points:{}", items.join(";"))
            }
            ExactSet::Cantor => write!(f, "cantor"),
            ExactSet::Disk { center, radius } => write!(f, "disk:{},{},{}", center.x, center.y, radius),
            ExactSet::Segment(a, b) => write!(f, "segment:{},{},{},{}", a.x, a.y, b.x, b.y),
            ExactSet::Union(a, b) => write!(f, "union({a},{b})"),
            ExactSet::Image(m, s) => write!(f, "image({m},{s})"),
        }
    }
}

/// A one-dimensional parameter set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineBase {
    Interval(Rational, Rational),
    Cantor,
}

/// Flattened building blocks of an [`ExactSet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// `{origin + t·dir : t ∈ base}`.
    Param { origin: Point2, dir: Point2, base: LineBase },
    Points(Vec<Point2>),
    Disk { center: Point2, radius: Rational },
    /// An affine image with no exact distance oracle; nets only.
    Opaque { map: Affine, inner: Box<ExactSet> },
}

/// `d(t, C)` for the middle-thirds Cantor set, exactly.
pub fn cantor_dist(t: &Rational) -> Rational {
    if t <= &Rational::zero() {
        return -t.clone();
    }
    if t >= &Rational::one() {
        return t - Rational::one();
    }
    let (third, two_thirds) = (rat(1, 3), rat(2, 3));
    let mut x = t.clone();
    let mut scale = Rational::one();
    let mut seen = HashSet::new();
    loop {
        if !seen.insert(x.clone()) {
            // eventually periodic ternary digits avoiding 1
            return Rational::zero();
        }
        if x > third && x < two_thirds {
            let d = (&x - &third).min(&two_thirds - &x);
            return d * scale;
        }
        scale /= int(3);
        x = if x <= third { &x * int(3) } else { &x * int(3) - int(2) };
    }
}

/// Whether `t ∈ C`.
pub fn cantor_contains(t: &Rational) -> bool {
    cantor_dist(t).is_zero()
}

/// Nearest point of `base` to `t`, as a distance.
fn base_dist(base: &LineBase, t: &Rational) -> Rational {
    match base {
        LineBase::Interval(lo, hi) => {
            if t < lo {
                lo - t
            } else if t > hi {
                t - hi
            } else {
                Rational::zero()
            }
        }
        LineBase::Cantor => cantor_dist(t),
    }
}

fn dot(a: &Point2, b: &Point2) -> Rational {
    &a.x * &b.x + &a.y * &b.y
}

fn sub(a: &Point2, b: &Point2) -> Point2 {
    Point2::new(&a.x - &b.x, &a.y - &b.y)
}

fn axis(base: LineBase) -> Shape {
    Shape::Param { origin: Point2::new(int(0), int(0)), dir: Point2::new(int(1), int(0)), base }
}

/// Smallest `k` with `3^-k · scale ≤ eps`.
fn cantor_level(scale: &Rational, eps: &Rational) -> u32 {
    let mut k = 0;
    let mut w = scale.clone();
    while &w > eps {
        w /= int(3);
        k += 1;
    }
    k
}

/// Endpoints of the `2^k` level-`k` Cantor intervals, sorted.
pub fn cantor_endpoints(k: u32) -> Vec<Rational> {
    let mut ivs = vec![(Rational::zero(), Rational::one())];
    for _ in 0..k {
        ivs = ivs
            .into_iter()
            .flat_map(|(a, b)| {
                let w = (&b - &a) / int(3);
                [(a.clone(), &a + &w), (&b - &w, b)]
            })
            .collect();
    }
    ivs.into_iter().flat_map(|(a, b)| [a, b]).collect()
}

impl Shape {
    /// Compare `d(p, shape)` with `q >= 0`; `None` for opaque shapes.
    pub fn cmp_dist(&self, p: &Point2, q: &Rational) -> Option<Ordering> {
        match self {
            Shape::Param { origin, dir, base } => Some(param_dist2(origin, dir, base, p).cmp(&(q * q))),
            Shape::Points(ps) => ps.iter().map(|x| x.dist2(p)).min().map(|d2| d2.cmp(&(q * q))),
            Shape::Disk { center, radius } => {
                let d2 = center.dist2(p);
                if d2 <= radius * radius {
                    return Some(Rational::zero().cmp(q));
                }
                let t = q + radius;
                Some(d2.cmp(&(&t * &t)))
            }
            Shape::Opaque { .. } => None,
        }
    }

    fn net(&self, eps: &Rational) -> Vec<Point2> {
        match self {
            Shape::Param { origin, dir, base } => {
                let n1 = dir.x.abs() + dir.y.abs();
                let at = |t: &Rational| Point2::new(&origin.x + t * &dir.x, &origin.y + t * &dir.y);
                if n1.is_zero() {
                    return vec![origin.clone()];
                }
                match base {
                    LineBase::Interval(lo, hi) => {
                        let n = ((hi - lo) * &n1 / eps).ceil().to_integer().max(1.into());
                        let n = Rational::from_integer(n);
                        let mut out = Vec::new();
                        let mut j = Rational::zero();
                        while j <= n {
                            out.push(at(&(lo + (hi - lo) * &j / &n)));
                            j += Rational::one();
                        }
                        out
                    }
                    LineBase::Cantor => cantor_endpoints(cantor_level(&n1, eps)).iter().map(at).collect(),
                }
            }
            Shape::Points(ps) => ps.clone(),
            Shape::Disk { center, radius } => disk_net(center, radius, eps),
            Shape::Opaque { map, inner } => {
                let l = map.lipschitz_bound();
                let pts = if l.is_zero() { inner.net(&Rational::one()) } else { inner.net(&(eps / &l)) };
                pts.iter().map(|p| map.apply(p)).collect()
            }
        }
    }

    fn bbox(&self) -> Option<BBox> {
        match self {
            Shape::Param { origin, dir, base } => {
                let (lo, hi) = match base {
                    LineBase::Interval(lo, hi) => (lo.clone(), hi.clone()),
                    LineBase::Cantor => (Rational::zero(), Rational::one()),
                };
                let at = |t: &Rational| Point2::new(&origin.x + t * &dir.x, &origin.y + t * &dir.y);
                Some(BBox::of(&[at(&lo), at(&hi)]))
            }
            Shape::Points(ps) if ps.is_empty() => None,
            Shape::Points(ps) => Some(BBox::of(ps)),
            Shape::Disk { center, radius } => Some(BBox {
                xmin: &center.x - radius,
                xmax: &center.x + radius,
                ymin: &center.y - radius,
                ymax: &center.y + radius,
            }),
            Shape::Opaque { map, inner } => {
                let b = inner.bbox()?;
                let corners = [
                    Point2::new(b.xmin.clone(), b.ymin.clone()),
                    Point2::new(b.xmin.clone(), b.ymax.clone()),
                    Point2::new(b.xmax.clone(), b.ymin.clone()),
                    Point2::new(b.xmax.clone(), b.ymax.clone()),
                ];
                Some(BBox::of(&corners.iter().map(|c| map.apply(c)).collect::<Vec<_>>()))
            }
        }
    }
}

/// Squared distance from `p` to `{origin + t·dir : t ∈ base}`.
fn param_dist2(origin: &Point2, dir: &Point2, base: &LineBase, p: &Point2) -> Rational {
    let v = sub(p, origin);
    let len2 = dot(dir, dir);
    if len2.is_zero() {
        return dot(&v, &v);
    }
    let t = dot(&v, dir) / &len2;
    // Pythagoras: along-line offset to the nearest base parameter plus perpendicular part
    let perp2 = dot(&v, &v) - &t * &t * &len2;
    let dt = base_dist(base, &t);
    &dt * &dt * &len2 + perp2
}

/// Grid points of spacing `eps` within `radius + 3 eps / 4` of the center:
/// each lies within `3 eps / 4` of the disk, and each disk point is within
/// `eps / √2` of one of them.
fn disk_net(center: &Point2, radius: &Rational, eps: &Rational) -> Vec<Point2> {
    let s = eps.clone();
    let reach = radius + &s * rat(3, 4);
    let reach2 = &reach * &reach;
    let i0 = ((&center.x - &reach) / &s).floor().to_integer();
    let i1 = ((&center.x + &reach) / &s).ceil().to_integer();
    let j0 = ((&center.y - &reach) / &s).floor().to_integer();
    let j1 = ((&center.y + &reach) / &s).ceil().to_integer();
    let mut out = Vec::new();
    let mut i = i0;
    while i <= i1 {
        let x = Rational::from_integer(i.clone()) * &s;
        let mut j = j0.clone();
        while j <= j1 {
            let p = Point2::new(x.clone(), Rational::from_integer(j.clone()) * &s);
            if center.dist2(&p) < reach2 {
                out.push(p);
            }
            j += 1;
        }
        i += 1;
    }
    out
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BBox {
    pub xmin: Rational,
    pub xmax: Rational,
    pub ymin: Rational,
    pub ymax: Rational,
}

impl BBox {
    fn of(ps: &[Point2]) -> BBox {
        let xs = ps.iter().map(|p| &p.x);
        let ys = ps.iter().map(|p| &p.y);
        BBox {
            xmin: xs.clone().min().unwrap().clone(),
            xmax: xs.max().unwrap().clone(),
            ymin: ys.clone().min().unwrap().clone(),
            ymax: ys.max().unwrap().clone(),
        }
    }

    pub fn union(&self, o: &BBox) -> BBox {
        BBox {
            xmin: (&self.xmin).min(&o.xmin).clone(),
            xmax: (&self.xmax).max(&o.xmax).clone(),
            ymin: (&self.ymin).min(&o.ymin).clone(),
            ymax: (&self.ymax).max(&o.ymax).clone(),
        }
    }

    pub fn grow(&self, m: &Rational) -> BBox {
        BBox { xmin: &self.xmin - m, xmax: &self.xmax + m, ymin: &self.ymin - m, ymax: &self.ymax + m }
    }
}

fn map_shape(m: &Affine, s: Shape, original: &ExactSet) -> Shape {
    match s {
        Shape::Param { origin, dir, base } => Shape::Param { origin: m.apply(&origin), dir: m.apply_linear(&dir), base },
        Shape::Points(ps) => Shape::Points(ps.iter().map(|p| m.apply(p)).collect()),
        Shape::Disk { center, radius } => match m.similarity_scale2().and_then(|k2| rational_sqrt(&k2)) {
            Some(k) => Shape::Disk { center: m.apply(&center), radius: radius * k },
            None => Shape::Opaque { map: m.clone(), inner: Box::new(original.clone()) },
        },
        Shape::Opaque { map, inner } => Shape::Opaque { map: m.compose(&map), inner },
    }
}

/// The exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

impl ExactSet {
    /// Whether every point lies on the x-axis.
    pub fn is_one_dimensional(&self) -> bool {
        match self {
            ExactSet::Interval(..) | ExactSet::Cantor => true,
            ExactSet::Points(ps) => ps.iter().all(|p| p.y.is_zero()),
            ExactSet::Union(a, b) => a.is_one_dimensional() && b.is_one_dimensional(),
            ExactSet::Disk { .. } | ExactSet::Segment(..) | ExactSet::Image(..) => false,
        }
    }

    pub fn is_inhabited(&self) -> bool {
        match self {
            ExactSet::Points(ps) => !ps.is_empty(),
            ExactSet::Union(a, b) => a.is_inhabited() || b.is_inhabited(),
            ExactSet::Image(_, s) => s.is_inhabited(),
            _ => true,
        }
    }

    /// Flatten unions and push affine maps into the leaves.
    pub fn shapes(&self) -> Vec<Shape> {
        match self {
            ExactSet::Interval(a, b) => vec![axis(LineBase::Interval(a.clone(), b.clone()))],
            ExactSet::Cantor => vec![axis(LineBase::Cantor)],
            ExactSet::Points(ps) if ps.is_empty() => vec![],
            ExactSet::Points(ps) => vec![Shape::Points(ps.clone())],
            ExactSet::Disk { center, radius } => vec![Shape::Disk { center: center.clone(), radius: radius.clone() }],
            ExactSet::Segment(a, b) => vec![Shape::Param {
                origin: a.clone(),
                dir: sub(b, a),
                base: LineBase::Interval(Rational::zero(), Rational::one()),
            }],
            ExactSet::Union(a, b) => {
                let mut v = a.shapes();
                v.extend(b.shapes());
                v
            }
            ExactSet::Image(m, s) => match s.as_ref() {
                ExactSet::Union(a, b) => {
                    let mut v = ExactSet::Image(m.clone(), a.clone()).shapes();
                    v.extend(ExactSet::Image(m.clone(), b.clone()).shapes());
                    v
                }
                inner => inner.shapes().into_iter().map(|sh| map_shape(m, sh, inner)).collect(),
            },
        }
    }

    /// Whether distances to this set can be compared exactly.
    pub fn is_exact(&self) -> bool {
        self.shapes().iter().all(|s| !matches!(s, Shape::Opaque { .. }))
    }

    /// Compare `d(p, S)` with `q >= 0` exactly; `None` when some part has no
    /// exact oracle or the set is empty.
    pub fn cmp_dist(&self, p: &Point2, q: &Rational) -> Option<Ordering> {
        let mut best: Option<Ordering> = None;
        for s in self.shapes() {
            let o = s.cmp_dist(p, q)?;
            best = Some(best.map_or(o, |b| b.min(o)));
        }
        best
    }

    /// Whether the set meets the open ball `B_r(p)`, exactly.
    pub fn meets_open_ball(&self, p: &Point2, r: &Rational) -> Option<bool> {
        self.cmp_dist(p, r).map(|o| o == Ordering::Less)
    }

    /// A two-sided ε-net: every set point is within `eps` of a net point and
    /// every net point within `eps` of the set.
    pub fn net(&self, eps: &Rational) -> Vec<Point2> {
        self.shapes().iter().flat_map(|s| s.net(eps)).collect()
    }

    pub fn bbox(&self) -> Option<BBox> {
        self.shapes().iter().filter_map(Shape::bbox).reduce(|a, b| a.union(&b))
    }

    pub fn union(a: ExactSet, b: ExactSet) -> ExactSet {
        ExactSet::Union(Box::new(a), Box::new(b))
    }

    pub fn image(m: Affine, s: ExactSet) -> ExactSet {
        ExactSet::Image(m, Box::new(s))
    }

    pub fn points_1d(xs: &[Rational]) -> ExactSet {
        ExactSet::Points(xs.iter().map(|x| Point2::new(x.clone(), Rational::zero())).collect())
    }

    pub fn disk(cx: Rational, cy: Rational, r: Rational) -> ExactSet {
        ExactSet::Disk { center: Point2::new(cx, cy), radius: r }
    }
}
