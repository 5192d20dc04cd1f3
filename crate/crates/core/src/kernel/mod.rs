//! Inductively generated formal topologies: bases with axiom schemes,
//! bounded-depth derivation search for cover judgments, sublocale covers and
//! positivity-predicate checks.
//!
//! Derivations are plain trees checked by [`check`], which shares no code with
//! the search in this module.

pub mod check;
pub mod reals;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

pub use check::{check_derivation, CheckError, CheckMode};

/// Meet of two basic opens, as far as the base can express it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Meet<E> {
    Empty,
    Single(E),
    Unrepresentable,
}

/// One covering family proposed by a base's axiom scheme.
///
/// `complete` is false when the family is a finite sample of an infinite
/// family; such samples never serve as covers on their own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomInstance<E> {
    pub tag: &'static str,
    pub family: Vec<E>,
    pub complete: bool,
}

pub trait Base: Send + Sync {
    type Elem: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Meet<Self::Elem>;

    /// Covering families of `u` within `budget`. `hints` are elements the
    /// caller would like to see as family members; bases may use them to
    /// order or seed candidates. Deterministic in all arguments.
    fn axiom_instances(&self, u: &Self::Elem, budget: usize, hints: &[Self::Elem]) -> Vec<AxiomInstance<Self::Elem>>;

    /// Whether `u ◁ family` is a complete instance of the scheme named `tag`.
    fn is_axiom_instance(&self, tag: &str, u: &Self::Elem, family: &[Self::Elem]) -> bool;
}

/// A cover target: finitely many listed members plus an optional
/// membership predicate for an infinite remainder (a closed-sublocale open,
/// say).
#[derive(Clone)]
pub struct Family<E> {
    pub members: Vec<E>,
    extra: Option<Arc<dyn Fn(&E) -> bool + Send + Sync>>,
}

impl<E: PartialEq> Family<E> {
    pub fn finite(members: Vec<E>) -> Self {
        Family { members, extra: None }
    }

    pub fn predicate(pred: impl Fn(&E) -> bool + Send + Sync + 'static) -> Self {
        Family { members: Vec::new(), extra: Some(Arc::new(pred)) }
    }

    pub fn contains(&self, e: &E) -> bool {
        self.members.contains(e) || self.extra.as_ref().is_some_and(|p| p(e))
    }

    /// `self ∪ other`.
    pub fn union(&self, other: &Family<E>) -> Family<E>
    where
        E: Clone + 'static,
    {
        let mut members = self.members.clone();
        for m in &other.members {
            if !members.contains(m) {
                members.push(m.clone());
            }
        }
        let extra = match (self.extra.clone(), other.extra.clone()) {
            (None, None) => None,
            (Some(p), None) | (None, Some(p)) => Some(p),
            (Some(p), Some(q)) => {
                Some(Arc::new(move |e: &E| p(e) || q(e)) as Arc<dyn Fn(&E) -> bool + Send + Sync>)
            }
        };
        Family { members, extra }
    }
}

impl<E: fmt::Debug> fmt::Debug for Family<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family")
            .field("members", &self.members)
            .field("predicate", &self.extra.is_some())
            .finish()
    }
}

/// Three-valued answer of a positivity predicate with a bounded horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b { Tri::True } else { Tri::False }
    }
}

pub type PosPredicate<E> = Arc<dyn Fn(&E) -> Tri + Send + Sync>;

pub fn pos_predicate<E>(f: impl Fn(&E) -> Tri + Send + Sync + 'static) -> PosPredicate<E> {
    Arc::new(f)
}

/// A proof tree for a cover judgment `u ◁ T`. The target `T` is not stored;
/// each node is checked against the target its parent hands it.
///
/// Text form:
/// `(ref u)`, `(ext u b)`, `(TAG u (g ...))`, `(tra NODE (NODE ...))`,
/// `(loc u (h ...) NODE)`, `(open u (w ...) (NODE ...))`, `(pos u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation<E> {
    /// `u ∈ T`.
    Ref(E),
    /// `u ≤ b` and `b ∈ T`.
    Ext { u: E, b: E },
    /// A complete axiom instance `u ◁ family` with `family ⊆ T`.
    Axiom { tag: String, u: E, family: Vec<E> },
    /// `first` proves `u ◁ V` where `V` is the subjects of `rest`; each of
    /// `rest` proves `v ◁ T`.
    Tra { first: Box<Derivation<E>>, rest: Vec<Derivation<E>> },
    /// Loc': `inner` proves `a ◁ H` for some `a ≥ u`, concluding
    /// `u ◁ u ∧ H`, which must lie in `T`.
    Loc { u: E, h: Vec<E>, inner: Box<Derivation<E>> },
    /// Open sublocale: `subs` prove `u ∧ w ◁ T` for each `w` with nonempty
    /// meet, in order.
    Open { u: E, w: Vec<E>, subs: Vec<Derivation<E>> },
    /// Positively closed clause: `F(u)` is false, or `u ∈ T`.
    Pos(E),
}

impl<E> Derivation<E> {
    /// The element on the left of the concluded judgment.
    pub fn subject(&self) -> &E {
        match self {
            Derivation::Ref(u)
            | Derivation::Ext { u, .. }
            | Derivation::Axiom { u, .. }
            | Derivation::Loc { u, .. }
            | Derivation::Open { u, .. }
            | Derivation::Pos(u) => u,
            Derivation::Tra { first, .. } => first.subject(),
        }
    }

    /// Height of the tree; leaves have height 1.
    pub fn height(&self) -> usize {
        match self {
            Derivation::Ref(_) | Derivation::Ext { .. } | Derivation::Axiom { .. } | Derivation::Pos(_) => 1,
            Derivation::Tra { first, rest } => {
                1 + rest.iter().map(Derivation::height).chain([first.height()]).max().unwrap_or(0)
            }
            Derivation::Loc { inner, .. } => 1 + inner.height(),
            Derivation::Open { subs, .. } => 1 + subs.iter().map(Derivation::height).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Derivation::Tra { first, rest } => 1 + first.size() + rest.iter().map(Derivation::size).sum::<usize>(),
            Derivation::Loc { inner, .. } => 1 + inner.size(),
            Derivation::Open { subs, .. } => 1 + subs.iter().map(Derivation::size).sum::<usize>(),
            _ => 1,
        }
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl<E: fmt::Display> fmt::Display for Derivation<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Derivation::Ref(u) => write!(f, "(ref {u})"),
            Derivation::Ext { u, b } => write!(f, "(ext {u} {b})"),
            Derivation::Axiom { tag, u, family } => {
                write!(f, "({tag} {u} ")?;
                write_list(f, family)?;
                write!(f, ")")
            }
            Derivation::Tra { first, rest } => {
                write!(f, "(tra {first} ")?;
                write_list(f, rest)?;
                write!(f, ")")
            }
            Derivation::Loc { u, h, inner } => {
                write!(f, "(loc {u} ")?;
                write_list(f, h)?;
                write!(f, " {inner})")
            }
            Derivation::Open { u, w, subs } => {
                write!(f, "(open {u} ")?;
                write_list(f, w)?;
                write!(f, " ")?;
                write_list(f, subs)?;
                write!(f, ")")
            }
            Derivation::Pos(u) => write!(f, "(pos {u})"),
        }
    }
}

/// Sublocales entered as modified cover relations.
#[derive(Clone)]
pub enum SublocaleSpec<E> {
    /// `u ◁ U` iff `u ∧ W ◁ U`.
    Open(Vec<E>),
    /// `u ◁ U` iff `u ◁ U ∪ W`.
    Closed(Family<E>),
    /// Adds the clause "`u ◁ U` whenever `F(u) → u ◁ U`".
    PositivelyClosed(PosPredicate<E>),
}

/// Search knobs. `budget` bounds the axiom-instance enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub depth: usize,
    pub budget: usize,
}

impl SearchConfig {
    pub const DEFAULT_BUDGET: usize = 3;

    pub fn new(depth: usize) -> Self {
        SearchConfig { depth, budget: Self::DEFAULT_BUDGET }
    }
}

struct Search<'a, B: Base> {
    base: &'a B,
    target: &'a Family<B::Elem>,
    pos: Option<&'a PosPredicate<B::Elem>>,
    budget: usize,
    memo: HashMap<(B::Elem, usize), Option<Derivation<B::Elem>>>,
}

impl<B: Base> Search<'_, B> {
    fn run(&mut self, u: &B::Elem, depth: usize) -> Option<Derivation<B::Elem>> {
        // iterative deepening: shallow proofs are preferred
        (1..=depth).find_map(|d| self.at(u, d))
    }

    fn at(&mut self, u: &B::Elem, depth: usize) -> Option<Derivation<B::Elem>> {
        if depth == 0 {
            return None;
        }
        let key = (u.clone(), depth);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let found = self.expand(u, depth);
        self.memo.insert(key, found.clone());
        found
    }

    fn leaf(&self, u: &B::Elem) -> Option<Derivation<B::Elem>> {
        if let Some(pos) = self.pos {
            if pos(u) == Tri::False {
                return Some(Derivation::Pos(u.clone()));
            }
        }
        if self.target.contains(u) {
            return Some(Derivation::Ref(u.clone()));
        }
        self.target
            .members
            .iter()
            .find(|b| self.base.leq(u, b))
            .map(|b| Derivation::Ext { u: u.clone(), b: b.clone() })
    }

    fn expand(&mut self, u: &B::Elem, depth: usize) -> Option<Derivation<B::Elem>> {
        if let Some(d) = self.leaf(u) {
            return Some(d);
        }
        let instances = self.base.axiom_instances(u, self.budget, &self.target.members);
        for inst in instances.into_iter().filter(|i| i.complete) {
            if let Some(d) = self.use_instance(u, inst, depth) {
                return Some(d);
            }
        }
        None
    }

    fn use_instance(
        &mut self,
        u: &B::Elem,
        inst: AxiomInstance<B::Elem>,
        depth: usize,
    ) -> Option<Derivation<B::Elem>> {
        let axiom = Derivation::Axiom { tag: inst.tag.to_string(), u: u.clone(), family: inst.family.clone() };
        let all_below = inst.family.iter().all(|g| self.base.leq(g, u));
        if all_below {
            if inst.family.iter().all(|g| self.target.contains(g)) {
                return Some(axiom);
            }
            if depth < 2 {
                return None;
            }
            let mut rest = Vec::with_capacity(inst.family.len());
            for g in &inst.family {
                rest.push(self.at(g, depth - 1)?);
            }
            return Some(Derivation::Tra { first: Box::new(axiom), rest });
        }
        // members sticking out of u are trimmed by Loc'
        if depth < 3 {
            return None;
        }
        let mut trimmed = Vec::new();
        for g in &inst.family {
            match self.base.meet(u, g) {
                Meet::Empty => {}
                Meet::Single(m) => {
                    if !trimmed.contains(&m) {
                        trimmed.push(m)
                    }
                }
                Meet::Unrepresentable => return None,
            }
        }
        let loc = Derivation::Loc { u: u.clone(), h: inst.family.clone(), inner: Box::new(axiom) };
        if trimmed.iter().all(|m| self.target.contains(m)) {
            return Some(loc);
        }
        let mut rest = Vec::with_capacity(trimmed.len());
        for m in &trimmed {
            rest.push(self.at(m, depth - 2)?);
        }
        Some(Derivation::Tra { first: Box::new(loc), rest })
    }
}

fn search<B: Base>(
    base: &B,
    u: &B::Elem,
    target: &Family<B::Elem>,
    pos: Option<&PosPredicate<B::Elem>>,
    cfg: SearchConfig,
) -> Option<Derivation<B::Elem>> {
    let mut s = Search { base, target, pos, budget: cfg.budget, memo: HashMap::new() };
    s.run(u, cfg.depth)
}

/// Search for a derivation of `u ◁ family` of height at most `depth`.
/// `None` means nothing was found within the bound, not that the cover fails.
pub fn derive_cover<B: Base>(base: &B, u: &B::Elem, family: &[B::Elem], depth: usize) -> Option<Derivation<B::Elem>> {
    derive_cover_with(base, u, &Family::finite(family.to_vec()), SearchConfig::new(depth))
}

pub fn derive_cover_with<B: Base>(
    base: &B,
    u: &B::Elem,
    target: &Family<B::Elem>,
    cfg: SearchConfig,
) -> Option<Derivation<B::Elem>> {
    search(base, u, target, None, cfg)
}

/// Derivation of `u ◁ family` in the sublocale given by `spec`.
pub fn sublocale_cover<B: Base>(
    base: &B,
    spec: &SublocaleSpec<B::Elem>,
    u: &B::Elem,
    family: &[B::Elem],
    depth: usize,
) -> Option<Derivation<B::Elem>> {
    sublocale_cover_with(base, spec, u, family, SearchConfig::new(depth))
}

pub fn sublocale_cover_with<B: Base>(
    base: &B,
    spec: &SublocaleSpec<B::Elem>,
    u: &B::Elem,
    family: &[B::Elem],
    cfg: SearchConfig,
) -> Option<Derivation<B::Elem>> {
    let target = Family::finite(family.to_vec());
    match spec {
        SublocaleSpec::Closed(w) => search(base, u, &target.union(w), None, cfg),
        SublocaleSpec::PositivelyClosed(f) => search(base, u, &target, Some(f), cfg),
        SublocaleSpec::Open(ws) => {
            if cfg.depth < 2 {
                return None;
            }
            let sub_cfg = SearchConfig { depth: cfg.depth - 1, ..cfg };
            let mut subs = Vec::new();
            for w in ws {
                match base.meet(u, w) {
                    Meet::Empty => {}
                    Meet::Single(m) => subs.push(search(base, &m, &target, None, sub_cfg)?),
                    Meet::Unrepresentable => return None,
                }
            }
            Some(Derivation::Open { u: u.clone(), w: ws.clone(), subs })
        }
    }
}

/// The members of `family` on which `pos` is certified true, in order.
pub fn filter_positive<E: Clone>(family: &[E], pos: &dyn Fn(&E) -> Tri) -> Vec<E> {
    family.iter().filter(|e| pos(e) == Tri::True).cloned().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonStatus {
    /// `pos(u)` holds and some member is positive.
    Pass,
    /// `pos(u)` is false, so there is nothing to check.
    Vacuous,
    /// `pos(u)` holds but every member is certified non-positive.
    Violation,
    /// Some value needed was undecided.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JudgmentReport {
    pub index: usize,
    pub subject: String,
    /// The supplied derivation failed the checker.
    pub derivation_error: Option<CheckError>,
    pub mon: MonStatus,
    /// Every member `w` has a derivation of `w ◁ U⁺` within depth.
    pub pos_axiom_derived: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PositivityReport {
    pub entries: Vec<JudgmentReport>,
}

impl PositivityReport {
    pub fn mon_violations(&self) -> Vec<&JudgmentReport> {
        self.entries.iter().filter(|e| e.mon == MonStatus::Violation).collect()
    }

    pub fn all_mon_ok(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.mon, MonStatus::Pass | MonStatus::Vacuous))
    }
}

/// Check the Mon and Pos axioms of `pos` on judgments `u ◁ family` given with
/// their derivations.
pub fn check_positivity_axioms<B: Base>(
    base: &B,
    pos: &PosPredicate<B::Elem>,
    judgments: &[(B::Elem, Vec<B::Elem>, Derivation<B::Elem>)],
    depth: usize,
) -> PositivityReport {
    let entries = judgments
        .iter()
        .enumerate()
        .map(|(index, (u, family, d))| {
            let target = Family::finite(family.clone());
            let derivation_error = if d.subject() != u {
                Some(CheckError::SubjectMismatch { expected: u.to_string(), found: d.subject().to_string() })
            } else {
                check_derivation(base, d, &target, &CheckMode::Plain).err()
            };
            let vals: Vec<Tri> = family.iter().map(|g| pos(g)).collect();
            let mon = match pos(u) {
                Tri::False => MonStatus::Vacuous,
                Tri::Unknown => MonStatus::Unknown,
                Tri::True if vals.contains(&Tri::True) => MonStatus::Pass,
                Tri::True if vals.iter().all(|v| *v == Tri::False) => MonStatus::Violation,
                Tri::True => MonStatus::Unknown,
            };
            let plus = filter_positive(family, &|g| pos(g));
            let pos_axiom_derived = family.iter().all(|w| derive_cover(base, w, &plus, depth).is_some());
            JudgmentReport { index, subject: u.to_string(), derivation_error, mon, pos_axiom_derived }
        })
        .collect();
    PositivityReport { entries }
}

/// Check that `f` is upward closed on sampled pairs: `f(u)` and `u ≤ v`
/// imply `f(v)`. Returns the first counterexample.
pub fn check_upward_closed<B: Base>(
    base: &B,
    f: &PosPredicate<B::Elem>,
    samples: &[B::Elem],
) -> Option<(B::Elem, B::Elem)> {
    for u in samples {
        if f(u) != Tri::True {
            continue;
        }
        for v in samples {
            if base.leq(u, v) && f(v) == Tri::False {
                return Some((u.clone(), v.clone()));
            }
        }
    }
    None
}
