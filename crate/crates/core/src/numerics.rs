//! Exact rationals and reals given as precision-indexed refinement processes.
//!
//! A [`DedekindReal`] is a pure function from a positive rational precision to a
//! closed rational interval of at most that width. Upper reals only carry a
//! non-increasing stream of rational upper bounds; turning one into a Dedekind
//! real needs a located witness.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^-k`.
pub fn dyadic(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

pub fn half(q: &Rational) -> Rational {
    q / int(2)
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("gap query needs s < t, got s = {s}, t = {t}")]
    EmptyGap { s: Rational, t: Rational },
    #[error("precision must be positive, got {0}")]
    NonPositivePrecision(Rational),
    #[error("minimum of an empty list")]
    EmptyList,
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(q: Rational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Widen symmetrically by `r`.
    pub fn widen(&self, r: &Rational) -> Interval {
        Interval { lo: &self.lo - r, hi: &self.hi + r }
    }

    pub fn mid(&self) -> Rational {
        midpoint(&self.lo, &self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

type Approximator = dyn Fn(&Rational) -> Interval + Send + Sync;

/// A real number presented by its rational approximations.
///
/// `approximate(eps)` returns a closed interval of width at most `eps`
/// containing the number. Any two returned intervals intersect.
#[derive(Clone)]
pub struct DedekindReal {
    approx: Arc<Approximator>,
}

impl fmt::Debug for DedekindReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DedekindReal(~{})", self.approximate(&rat(1, 1 << 20)))
    }
}

impl DedekindReal {
    /// Wrap a raw approximation function. The caller guarantees the width
    /// and nesting contract.
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(&Rational) -> Interval + Send + Sync + 'static,
    {
        DedekindReal { approx: Arc::new(f) }
    }

    /// Panics if `eps <= 0`; see [`DedekindReal::try_approximate`].
    pub fn approximate(&self, eps: &Rational) -> Interval {
        assert!(eps.is_positive(), "precision must be positive");
        (self.approx)(eps)
    }

    pub fn try_approximate(&self, eps: &Rational) -> Result<Interval, NumericsError> {
        if !eps.is_positive() {
            return Err(NumericsError::NonPositivePrecision(eps.clone()));
        }
        Ok((self.approx)(eps))
    }

    /// `a * x + b`.
    pub fn affine(&self, a: Rational, b: Rational) -> DedekindReal {
        if a.is_zero() {
            return from_rational(b);
        }
        let inner = self.clone();
        DedekindReal::from_fn(move |eps| {
            let iv = inner.approximate(&(eps / a.abs()));
            let (x, y) = (&a * &iv.lo + &b, &a * &iv.hi + &b);
            if x <= y {
                Interval::new(x, y)
            } else {
                Interval::new(y, x)
            }
        })
    }
}

pub fn from_rational(q: Rational) -> DedekindReal {
    DedekindReal::from_fn(move |_| Interval::point(q.clone()))
}

/// Which side of a strict gap `s < t` a real was certified on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GapDecision {
    /// `s < x`.
    LowerSide,
    /// `x < t`.
    UpperSide,
}

/// Decide `s < x` or `x < t` for a strict gap `s < t`.
///
/// One query at precision `(t - s) / 2`. `LowerSide` is answered whenever the
/// returned interval lies strictly above `s`; otherwise its upper end is at
/// most `s + (t - s)/2 < t`.
pub fn compare_with_gap(
    x: &DedekindReal,
    s: &Rational,
    t: &Rational,
) -> Result<GapDecision, NumericsError> {
    if s >= t {
        return Err(NumericsError::EmptyGap { s: s.clone(), t: t.clone() });
    }
    let iv = x.approximate(&half(&(t - s)));
    if &iv.lo > s {
        Ok(GapDecision::LowerSide)
    } else {
        Ok(GapDecision::UpperSide)
    }
}

fn combine_finite(
    xs: &[DedekindReal],
    pick: fn(Rational, Rational) -> Rational,
) -> Result<DedekindReal, NumericsError> {
    if xs.is_empty() {
        return Err(NumericsError::EmptyList);
    }
    if xs.len() == 1 {
        return Ok(xs[0].clone());
    }
    let xs: Vec<DedekindReal> = xs.to_vec();
    Ok(DedekindReal::from_fn(move |eps| {
        let mut ivs = xs.iter().map(|x| x.approximate(eps));
        let first = ivs.next().expect("nonempty");
        let (lo, hi) = ivs.fold((first.lo, first.hi), |(lo, hi), iv| {
            (pick(lo, iv.lo), pick(hi, iv.hi))
        });
        Interval::new(lo, hi)
    }))
}

/// Pointwise minimum. Each coordinate of the interval is the minimum of the
/// corresponding coordinates, so widths never grow.
pub fn min_finite(xs: &[DedekindReal]) -> Result<DedekindReal, NumericsError> {
    combine_finite(xs, |a, b| if a <= b { a } else { b })
}

pub fn max_finite(xs: &[DedekindReal]) -> Result<DedekindReal, NumericsError> {
    combine_finite(xs, |a, b| if a >= b { a } else { b })
}

/// `sqrt(q)` for `q >= 0` by interval bisection.
///
/// The search interval starts at `[0, max(1, q)]` and is halved until it is
/// narrow enough, so the answer for a given precision is deterministic.
pub fn sqrt_rational(q: Rational) -> DedekindReal {
    assert!(!q.is_negative(), "square root of a negative rational");
    DedekindReal::from_fn(move |eps| {
        let mut lo = Rational::zero();
        let mut hi = if q > Rational::one() { q.clone() } else { Rational::one() };
        while &hi - &lo > *eps {
            let m = midpoint(&lo, &hi);
            if &m * &m <= q {
                lo = m;
            } else {
                hi = m;
            }
        }
        Interval::new(lo, hi)
    })
}

/// Dyadic bounds `(lo, hi)` on `sqrt(q)` with `hi - lo <= 2^-k`, via integer
/// square roots. Faster than [`sqrt_rational`] for fine precisions.
pub fn sqrt_bounds(q: &Rational, k: u32) -> (Rational, Rational) {
    assert!(!q.is_negative(), "square root of a negative rational");
    let scale = BigInt::one() << (2 * k);
    let scaled = (q.numer() * &scale).div_floor_big(q.denom());
    let root = scaled.sqrt();
    let denom = BigInt::one() << k;
    let lo = Rational::new(root.clone(), denom.clone());
    let hi_num = if &root * &root == scaled && (q.numer() * &scale) % q.denom() == BigInt::zero() {
        root
    } else {
        root + 1
    };
    (lo, Rational::new(hi_num, denom))
}

trait DivFloorBig {
    fn div_floor_big(&self, d: &BigInt) -> BigInt;
}

impl DivFloorBig for BigInt {
    fn div_floor_big(&self, d: &BigInt) -> BigInt {
        num_integer::Integer::div_floor(self, d)
    }
}

/// Smallest `k` with `2^-k <= eps`.
pub fn precision_bits(eps: &Rational) -> u32 {
    assert!(eps.is_positive());
    let mut k = 0u32;
    let mut p = Rational::one();
    while &p > eps {
        p = half(&p);
        k += 1;
    }
    k
}

/// An upper real: the rationals above some term of a non-increasing stream.
///
/// `q` is in the upper cut iff `bound(n) < q` for some `n`.
#[derive(Clone)]
pub struct UpperReal {
    bound: Arc<dyn Fn(u64) -> Rational + Send + Sync>,
}

impl UpperReal {
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(u64) -> Rational + Send + Sync + 'static,
    {
        UpperReal { bound: Arc::new(f) }
    }

    pub fn bound(&self, n: u64) -> Rational {
        (self.bound)(n)
    }

    /// First `n` indices where the stream increases, if any.
    pub fn monotonicity_violation(&self, n: u64) -> Option<u64> {
        (0..n).find(|&i| self.bound(i + 1) > self.bound(i))
    }
}

/// A located witness for an upper real: for `s < t`, either nothing in the
/// upper cut lies below `s` (`LowerSide`) or `t` is in the upper cut (`UpperSide`).
pub type GapWitness = Arc<dyn Fn(&Rational, &Rational) -> GapDecision + Send + Sync>;

/// Promote an upper real to a Dedekind real using a located witness.
///
/// The infimum is first bracketed below by stepping down from `bound(0)` in
/// doubling strides, then the bracket is trisected with witness queries until
/// it is narrow enough.
pub fn upper_to_dedekind(u: UpperReal, witness: GapWitness) -> DedekindReal {
    DedekindReal::from_fn(move |eps| {
        let mut hi = u.bound(0);
        let mut stride = Rational::one();
        let mut lo = loop {
            let t = &hi - &stride;
            let s = &t - &stride;
            match witness(&s, &t) {
                GapDecision::LowerSide => break s,
                GapDecision::UpperSide => {
                    hi = t;
                    stride = &stride * int(2);
                }
            }
        };
        while &hi - &lo > *eps {
            let third = (&hi - &lo) / int(3);
            let s = &lo + &third;
            let t = &hi - &third;
            match witness(&s, &t) {
                GapDecision::LowerSide => lo = s,
                GapDecision::UpperSide => hi = t,
            }
        }
        Interval::new(lo, hi)
    })
}

/// Witness answering from a Dedekind real via [`compare_with_gap`].
pub fn witness_from_real(x: DedekindReal) -> GapWitness {
    Arc::new(move |s, t| compare_with_gap(&x, s, t).expect("witness queried with s < t"))
}

/// Exact three-way comparison of a real against a rational, if the real is
/// certified to differ from it within `max_bits` halvings of precision.
pub fn compare_to_rational(x: &DedekindReal, q: &Rational, max_bits: u32) -> Option<Ordering> {
    let mut eps = Rational::one();
    for _ in 0..=max_bits {
        let iv = x.approximate(&eps);
        if &iv.hi < q {
            return Some(Ordering::Less);
        }
        if &iv.lo > q {
            return Some(Ordering::Greater);
        }
        if iv.lo == iv.hi {
            return Some(Ordering::Equal);
        }
        eps = half(&eps);
    }
    None
}
