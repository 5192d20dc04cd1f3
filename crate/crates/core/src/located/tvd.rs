//! Sublocale containment for a located set `P ⊆ loc(ℚ)` in an open `Z`:
//! `P ≤ Z` iff `Z ∪ ¬Pos` covers everything.

use crate::kernel::{
    pos_predicate, sublocale_cover_with, Derivation, Family, Meet, PosPredicate, SearchConfig, SublocaleSpec, Tri,
};
use crate::metric_locale::{CompletionBase, FormalBall, MetricSpace, RationalLine};
use crate::numerics::{int, Rational};

use super::LocatedPredicate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TvdVerdict {
    Contained,
    NotContained,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct TvdReport {
    /// Direction (i): `ambient ◁ Z ∪ ¬Pos`.
    pub closed: Option<Derivation<FormalBall<Rational>>>,
    /// Direction (ii): `ambient ◁_Pos Z` in the positively closed sublocale.
    pub positively_closed: Option<Derivation<FormalBall<Rational>>>,
    /// Sampled sub-balls `u` of the ambient with `u ◁_Pos Z` derived, out of
    /// the number tried.
    pub sampled_derived: usize,
    pub sampled_total: usize,
    /// A ball certified positive and disjoint from every member of `Z`.
    pub refutation: Option<FormalBall<Rational>>,
    /// A derivation and a refutation were both found.
    pub contradiction: bool,
}

impl TvdReport {
    pub fn verdict(&self) -> TvdVerdict {
        let derived = self.closed.is_some() || self.positively_closed.is_some();
        match (derived, self.refutation.is_some()) {
            (true, false) => TvdVerdict::Contained,
            (false, true) => TvdVerdict::NotContained,
            _ => TvdVerdict::Unknown,
        }
    }
}

/// `ambient` split into `2^k` equal open pieces.
fn pieces(ambient: &FormalBall<Rational>, k: u32) -> Vec<FormalBall<Rational>> {
    let (p, s) = ambient.as_interval();
    let n = 1i64 << k;
    let w = (&s - &p) / int(n);
    (0..n)
        .map(|j| {
            let lo = &p + &w * int(j);
            FormalBall::from_interval(&lo, &(&lo + &w))
        })
        .collect()
}

pub fn tvd_check(
    p: &LocatedPredicate<RationalLine>,
    z: &[FormalBall<Rational>],
    ambient: &FormalBall<Rational>,
    depth: usize,
    budget: usize,
) -> TvdReport {
    let base = CompletionBase::new(RationalLine, budget);
    let cfg = SearchConfig { depth, budget };
    let tries = budget as u32 + 6;

    let q = p.clone();
    let not_pos = Family::predicate(move |b: &FormalBall<Rational>| q.pos_tri(b, tries) == Tri::False);
    let closed = sublocale_cover_with(&base, &SublocaleSpec::Closed(not_pos), ambient, z, cfg);

    let q = p.clone();
    let pos: PosPredicate<FormalBall<Rational>> = pos_predicate(move |b| q.pos_tri(b, tries));
    let spec = SublocaleSpec::PositivelyClosed(pos.clone());
    let positively_closed = sublocale_cover_with(&base, &spec, ambient, z, cfg);

    let samples = pieces(ambient, 2);
    let sampled_derived = samples
        .iter()
        .filter(|u| sublocale_cover_with(&base, &spec, u, z, cfg).is_some())
        .count();

    let refutation = (1..=budget as u32 + 3).find_map(|k| {
        pieces(ambient, k).into_iter().find(|b| {
            pos(b) == Tri::True && z.iter().all(|m| base.space.ball_meet(b, m) == Meet::Empty)
        })
    });

    let contradiction = (closed.is_some() || positively_closed.is_some()) && refutation.is_some();
    TvdReport {
        closed,
        positively_closed,
        sampled_derived,
        sampled_total: samples.len(),
        refutation,
        contradiction,
    }
}
