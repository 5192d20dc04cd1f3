//! The Vietoris lattice over a distributive lattice `L`: terms in `◊u`, `□u`,
//! their tile normal form, finite-model semantics, and the translation between
//! models of the Loc theory and points of `V(L)`.

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::interval_lattice::{lattice_leq, IntervalElement};
use crate::kernel::reals::OpenInterval;
use crate::kernel::Tri;

pub trait Lattice {
    type Elem: Clone + Eq + Hash + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
}

/// Element of a finite carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FElem {
    /// Position in a chain.
    Chain(u32),
    /// Subset of `{0, ..., n-1}` as a bit mask.
    Bool(u32),
    /// Element of a product of two chains.
    Grid(u32, u32),
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FElem::Chain(i) => write!(f, "{i}"),
            FElem::Bool(m) => {
                let items: Vec<String> = (0..32).filter(|i| m & (1 << i) != 0).map(|i| i.to_string()).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            FElem::Grid(i, j) => write!(f, "({i},{j})"),
        }
    }
}

/// `chain:n` (n elements), `bool:n` (subsets of an n-set), `grid:m,n`
/// (product of an m-chain and an n-chain).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiniteLattice {
    Chain(u32),
    Bool(u32),
    Grid(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VietorisError {
    #[error("invalid carrier: {0}")]
    InvalidCarrier(String),
    #[error("element {elem} is not in {carrier}")]
    NotInCarrier { elem: String, carrier: String },
    #[error("relation {relation} fails at u = {u}, v = {v}")]
    Relation { relation: u8, u: String, v: String },
    #[error("Loc axiom '{axiom}' fails at {at}")]
    Axiom { axiom: &'static str, at: String },
}

impl FiniteLattice {
    /// Upper limits keep exhaustive model enumeration (2^elements) cheap.
    pub fn new_chain(n: u32) -> Result<Self, VietorisError> {
        if !(1..=12).contains(&n) {
            return Err(VietorisError::InvalidCarrier(format!("chain:{n} (need 1..=12)")));
        }
        Ok(FiniteLattice::Chain(n))
    }

    pub fn new_bool(n: u32) -> Result<Self, VietorisError> {
        if n > 3 {
            return Err(VietorisError::InvalidCarrier(format!("bool:{n} (need 0..=3)")));
        }
        Ok(FiniteLattice::Bool(n))
    }

    pub fn new_grid(m: u32, n: u32) -> Result<Self, VietorisError> {
        if m == 0 || n == 0 || m * n > 12 {
            return Err(VietorisError::InvalidCarrier(format!("grid:{m},{n} (need m*n in 1..=12)")));
        }
        Ok(FiniteLattice::Grid(m, n))
    }

    /// All elements, in a fixed order.
    pub fn elements(&self) -> Vec<FElem> {
        match *self {
            FiniteLattice::Chain(n) => (0..n).map(FElem::Chain).collect(),
            FiniteLattice::Bool(n) => (0..1u32 << n).map(FElem::Bool).collect(),
            FiniteLattice::Grid(m, n) => (0..m).flat_map(|i| (0..n).map(move |j| FElem::Grid(i, j))).collect(),
        }
    }

    pub fn contains(&self, e: &FElem) -> bool {
        match (*self, *e) {
            (FiniteLattice::Chain(n), FElem::Chain(i)) => i < n,
            (FiniteLattice::Bool(n), FElem::Bool(m)) => m < 1 << n,
            (FiniteLattice::Grid(m, n), FElem::Grid(i, j)) => i < m && j < n,
            _ => false,
        }
    }

    pub fn check(&self, e: &FElem) -> Result<(), VietorisError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(VietorisError::NotInCarrier { elem: e.to_string(), carrier: self.to_string() })
        }
    }

    fn index(&self, e: &FElem) -> usize {
        match (*self, *e) {
            (FiniteLattice::Chain(_), FElem::Chain(i)) => i as usize,
            (FiniteLattice::Bool(_), FElem::Bool(m)) => m as usize,
            (FiniteLattice::Grid(_, n), FElem::Grid(i, j)) => (i * n + j) as usize,
            _ => panic!("{e} is not an element of {self}"),
        }
    }
}

impl fmt::Display for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteLattice::Chain(n) => write!(f, "chain:{n}"),
            FiniteLattice::Bool(n) => write!(f, "bool:{n}"),
            FiniteLattice::Grid(m, n) => write!(f, "grid:{m},{n}"),
        }
    }
}

impl Lattice for FiniteLattice {
    type Elem = FElem;

    fn zero(&self) -> FElem {
        match self {
            FiniteLattice::Chain(_) => FElem::Chain(0),
            FiniteLattice::Bool(_) => FElem::Bool(0),
            FiniteLattice::Grid(..) => FElem::Grid(0, 0),
        }
    }

    fn one(&self) -> FElem {
        match *self {
            FiniteLattice::Chain(n) => FElem::Chain(n - 1),
            FiniteLattice::Bool(n) => FElem::Bool((1 << n) - 1),
            FiniteLattice::Grid(m, n) => FElem::Grid(m - 1, n - 1),
        }
    }

    fn meet(&self, a: &FElem, b: &FElem) -> FElem {
        match (*a, *b) {
            (FElem::Chain(i), FElem::Chain(j)) => FElem::Chain(i.min(j)),
            (FElem::Bool(x), FElem::Bool(y)) => FElem::Bool(x & y),
            (FElem::Grid(i, j), FElem::Grid(k, l)) => FElem::Grid(i.min(k), j.min(l)),
            _ => panic!("mixed carriers"),
        }
    }

    fn join(&self, a: &FElem, b: &FElem) -> FElem {
        match (*a, *b) {
            (FElem::Chain(i), FElem::Chain(j)) => FElem::Chain(i.max(j)),
            (FElem::Bool(x), FElem::Bool(y)) => FElem::Bool(x | y),
            (FElem::Grid(i, j), FElem::Grid(k, l)) => FElem::Grid(i.max(k), j.max(l)),
            _ => panic!("mixed carriers"),
        }
    }

    fn leq(&self, a: &FElem, b: &FElem) -> bool {
        self.join(a, b) == *b
    }
}

/// The interval lattice over a fixed ambient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalCarrier {
    pub ambient: OpenInterval,
}

impl Lattice for IntervalCarrier {
    type Elem = IntervalElement;

    fn zero(&self) -> IntervalElement {
        IntervalElement::zero(self.ambient.clone())
    }

    fn one(&self) -> IntervalElement {
        IntervalElement::one(self.ambient.clone())
    }

    fn meet(&self, a: &IntervalElement, b: &IntervalElement) -> IntervalElement {
        a.meet(b).expect("elements share the carrier ambient")
    }

    fn join(&self, a: &IntervalElement, b: &IntervalElement) -> IntervalElement {
        a.join(b).expect("elements share the carrier ambient")
    }

    fn leq(&self, a: &IntervalElement, b: &IntervalElement) -> bool {
        lattice_leq(a, b).expect("elements share the carrier ambient")
    }
}

/// A term of `V(L)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VTerm<E> {
    Zero,
    One,
    Dia(E),
    Box(E),
    Meet(Box<VTerm<E>>, Box<VTerm<E>>),
    Join(Box<VTerm<E>>, Box<VTerm<E>>),
}

impl<E> VTerm<E> {
    pub fn meet(a: VTerm<E>, b: VTerm<E>) -> VTerm<E> {
        VTerm::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: VTerm<E>, b: VTerm<E>) -> VTerm<E> {
        VTerm::Join(Box::new(a), Box::new(b))
    }

    /// Every carrier element mentioned.
    pub fn elements(&self) -> Vec<&E> {
        match self {
            VTerm::Zero | VTerm::One => vec![],
            VTerm::Dia(u) | VTerm::Box(u) => vec![u],
            VTerm::Meet(a, b) | VTerm::Join(a, b) => {
                let mut v = a.elements();
                v.extend(b.elements());
                v
            }
        }
    }
}

impl<E: fmt::Display> fmt::Display for VTerm<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VTerm::Zero => write!(f, "0"),
            VTerm::One => write!(f, "1"),
            VTerm::Dia(u) => write!(f, "dia({u})"),
            VTerm::Box(u) => write!(f, "box({u})"),
            VTerm::Meet(a, b) => write!(f, "({a} & {b})"),
            VTerm::Join(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

/// Evaluate a term given the truth values of the generators.
pub fn eval<E>(t: &VTerm<E>, dia: &dyn Fn(&E) -> bool, bx: &dyn Fn(&E) -> bool) -> bool {
    match t {
        VTerm::Zero => false,
        VTerm::One => true,
        VTerm::Dia(u) => dia(u),
        VTerm::Box(u) => bx(u),
        VTerm::Meet(a, b) => eval(a, dia, bx) && eval(b, dia, bx),
        VTerm::Join(a, b) => eval(a, dia, bx) || eval(b, dia, bx),
    }
}

/// `□a ∧ ◊b_1 ∧ ... ∧ ◊b_k` with each `b_i ≤ a` and the `b_i` an antichain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tile<E> {
    pub bx: E,
    pub dias: Vec<E>,
}

/// A join of tiles; the empty join is `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileNormalForm<E> {
    pub tiles: Vec<Tile<E>>,
}

impl<E: fmt::Display> fmt::Display for TileNormalForm<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tiles.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.tiles.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "[box({})", t.bx)?;
            for d in &t.dias {
                write!(f, " & dia({d})")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl<E: Clone> TileNormalForm<E> {
    pub fn to_term(&self) -> VTerm<E> {
        self.tiles
            .iter()
            .map(|t| t.dias.iter().fold(VTerm::Box(t.bx.clone()), |acc, d| VTerm::meet(acc, VTerm::Dia(d.clone()))))
            .reduce(VTerm::join)
            .unwrap_or(VTerm::Zero)
    }
}

/// Trim diamonds into the box (relation 3 with monotonicity), drop the tile
/// when a diamond becomes `◊0` (relation 5), and drop diamonds implied by
/// smaller ones.
fn tidy_tile<L: Lattice>(l: &L, bx: L::Elem, dias: Vec<L::Elem>) -> Option<Tile<L::Elem>> {
    let zero = l.zero();
    let mut trimmed: Vec<L::Elem> = Vec::new();
    for d in dias {
        let m = l.meet(&bx, &d);
        if m == zero {
            return None;
        }
        if !trimmed.contains(&m) {
            trimmed.push(m);
        }
    }
    let anti: Vec<L::Elem> = trimmed
        .iter()
        .filter(|d| !trimmed.iter().any(|e| e != *d && l.leq(e, d)))
        .cloned()
        .collect();
    Some(Tile { bx, dias: anti })
}

/// `s` implies `t` by monotonicity of `□` and `◊`.
fn tile_leq<L: Lattice>(l: &L, s: &Tile<L::Elem>, t: &Tile<L::Elem>) -> bool {
    l.leq(&s.bx, &t.bx) && t.dias.iter().all(|d| s.dias.iter().any(|e| l.leq(e, d)))
}

/// If two tiles share a box and their diamond sets differ in exactly one
/// element each, their join is one tile with those two diamonds joined
/// (relation 1 plus distributivity).
fn merge_tiles<L: Lattice>(l: &L, s: &Tile<L::Elem>, t: &Tile<L::Elem>) -> Option<Tile<L::Elem>> {
    if s.bx != t.bx || s.dias.len() != t.dias.len() {
        return None;
    }
    let only_s: Vec<&L::Elem> = s.dias.iter().filter(|d| !t.dias.contains(d)).collect();
    let only_t: Vec<&L::Elem> = t.dias.iter().filter(|d| !s.dias.contains(d)).collect();
    if only_s.len() != 1 || only_t.len() != 1 {
        return None;
    }
    let mut dias: Vec<L::Elem> = s.dias.iter().filter(|d| *d != only_s[0]).cloned().collect();
    dias.push(l.join(only_s[0], only_t[0]));
    tidy_tile(l, s.bx.clone(), dias)
}

fn simplify<L: Lattice>(l: &L, mut tiles: Vec<Tile<L::Elem>>) -> Vec<Tile<L::Elem>> {
    loop {
        let mut changed = false;
        // absorption
        let mut i = 0;
        while i < tiles.len() {
            let absorbed = (0..tiles.len()).any(|j| {
                j != i && tile_leq(l, &tiles[i], &tiles[j]) && !(tile_leq(l, &tiles[j], &tiles[i]) && j > i)
            });
            if absorbed {
                tiles.remove(i);
                changed = true;
            } else {
                i += 1;
            }
        }
        // merging
        'outer: for i in 0..tiles.len() {
            for j in i + 1..tiles.len() {
                if let Some(m) = merge_tiles(l, &tiles[i], &tiles[j]) {
                    tiles.remove(j);
                    tiles[i] = m;
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            return tiles;
        }
    }
}

/// Rewrite a term into tile normal form using relations 1, 2, 3, 5 and 6
/// together with monotonicity and distributivity. Relation 4 is an inequality
/// and is not used.
pub fn normalize<L: Lattice>(l: &L, t: &VTerm<L::Elem>) -> TileNormalForm<L::Elem> {
    TileNormalForm { tiles: simplify(l, tiles_of(l, t)) }
}

fn tiles_of<L: Lattice>(l: &L, t: &VTerm<L::Elem>) -> Vec<Tile<L::Elem>> {
    match t {
        VTerm::Zero => vec![],
        VTerm::One => vec![Tile { bx: l.one(), dias: vec![] }],
        VTerm::Dia(u) => tidy_tile(l, l.one(), vec![u.clone()]).into_iter().collect(),
        VTerm::Box(u) => vec![Tile { bx: u.clone(), dias: vec![] }],
        VTerm::Join(a, b) => {
            let mut v = tiles_of(l, a);
            v.extend(tiles_of(l, b));
            simplify(l, v)
        }
        VTerm::Meet(a, b) => {
            let (ta, tb) = (tiles_of(l, a), tiles_of(l, b));
            let mut out = Vec::new();
            for x in &ta {
                for y in &tb {
                    let bx = l.meet(&x.bx, &y.bx);
                    let dias = x.dias.iter().chain(&y.dias).cloned().collect();
                    out.extend(tidy_tile(l, bx, dias));
                }
            }
            simplify(l, out)
        }
    }
}

/// `u ≺ v` on a finite lattice, by searching for a witness `w`.
pub fn well_inside_finite(l: &FiniteLattice, u: &FElem, v: &FElem) -> Option<FElem> {
    let (zero, one) = (l.zero(), l.one());
    l.elements().into_iter().find(|w| l.meet(u, w) == zero && l.join(v, w) == one)
}

/// A model of the Loc theory on a finite carrier: the set of positive elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocModel {
    pub carrier: FiniteLattice,
    pos: Vec<bool>,
}

impl LocModel {
    pub fn from_positive(carrier: FiniteLattice, positive: &[FElem]) -> Self {
        let elems = carrier.elements();
        let pos = elems.iter().map(|e| positive.contains(e)).collect();
        LocModel { carrier, pos }
    }

    pub fn pos(&self, u: &FElem) -> bool {
        self.pos[self.carrier.index(u)]
    }

    pub fn positive(&self) -> Vec<FElem> {
        self.carrier.elements().into_iter().filter(|e| self.pos(e)).collect()
    }

    /// Check the four Loc axioms.
    pub fn validate(&self) -> Result<(), VietorisError> {
        let l = &self.carrier;
        let elems = l.elements();
        if self.pos(&l.zero()) {
            return Err(VietorisError::Axiom { axiom: "pos(0) is false", at: l.zero().to_string() });
        }
        for u in &elems {
            for v in &elems {
                if self.pos(u) && l.leq(u, v) && !self.pos(v) {
                    return Err(VietorisError::Axiom { axiom: "upward closed", at: format!("{u} ≤ {v}") });
                }
                if self.pos(u) && !self.pos(v) && well_inside_finite(l, u, v).is_some() {
                    return Err(VietorisError::Axiom { axiom: "dichotomy", at: format!("{u} ≺ {v}") });
                }
                if self.pos(&l.join(u, v)) && !self.pos(u) && !self.pos(v) {
                    return Err(VietorisError::Axiom { axiom: "join splitting", at: format!("{u} ∨ {v}") });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LocModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.positive().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// All Loc models of a finite carrier, ordered by the bit mask of positive
/// elements over `elements()`.
pub fn enumerate_models(l: &FiniteLattice) -> Vec<LocModel> {
    let elems = l.elements();
    let n = elems.len();
    assert!(n <= 16, "carrier too large for exhaustive enumeration");
    (0u32..1 << n)
        .map(|mask| LocModel { carrier: *l, pos: (0..n).map(|i| mask & (1 << i) != 0).collect() })
        .filter(|m| m.validate().is_ok())
        .collect()
}

/// A point of `V(L)` on a finite carrier: truth values of every `◊u`, `□u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VPoint {
    pub carrier: FiniteLattice,
    pub dia: Vec<bool>,
    pub bx: Vec<bool>,
}

impl VPoint {
    pub fn dia(&self, u: &FElem) -> bool {
        self.dia[self.carrier.index(u)]
    }

    pub fn bx(&self, u: &FElem) -> bool {
        self.bx[self.carrier.index(u)]
    }

    pub fn eval(&self, t: &VTerm<FElem>) -> bool {
        eval(t, &|u| self.dia(u), &|u| self.bx(u))
    }

    /// Check relations 1-6, reporting the first failure.
    pub fn check_relations(&self) -> Result<(), VietorisError> {
        let l = &self.carrier;
        let (zero, one) = (l.zero(), l.one());
        if self.dia(&zero) {
            return Err(VietorisError::Relation { relation: 5, u: zero.to_string(), v: zero.to_string() });
        }
        if !self.bx(&one) {
            return Err(VietorisError::Relation { relation: 6, u: one.to_string(), v: one.to_string() });
        }
        let elems = l.elements();
        for u in &elems {
            for v in &elems {
                let fail = |relation| VietorisError::Relation { relation, u: u.to_string(), v: v.to_string() };
                let (uv_join, uv_meet) = (l.join(u, v), l.meet(u, v));
                if (self.dia(u) || self.dia(v)) != self.dia(&uv_join) {
                    return Err(fail(1));
                }
                if (self.bx(u) && self.bx(v)) != self.bx(&uv_meet) {
                    return Err(fail(2));
                }
                if self.bx(u) && self.dia(v) && !self.dia(&uv_meet) {
                    return Err(fail(3));
                }
                if self.bx(&uv_join) && !(self.bx(u) || self.dia(v)) {
                    return Err(fail(4));
                }
            }
        }
        Ok(())
    }
}

/// `◊u := pos(u)`, `□u := (u ∨ K = 1)` with `K` the join of the non-positive
/// elements. Fails if `model` breaks a Loc axiom or the point breaks a relation.
pub fn loc_to_point(model: &LocModel) -> Result<VPoint, VietorisError> {
    model.validate()?;
    let l = &model.carrier;
    let elems = l.elements();
    let k = elems.iter().filter(|e| !model.pos(e)).fold(l.zero(), |acc, e| l.join(&acc, e));
    let one = l.one();
    let point = VPoint {
        carrier: *l,
        dia: elems.iter().map(|e| model.pos(e)).collect(),
        bx: elems.iter().map(|e| l.join(e, &k) == one).collect(),
    };
    point.check_relations()?;
    Ok(point)
}

/// `pos(u) := ◊u`. Fails if the point breaks a relation or the result breaks
/// a Loc axiom.
pub fn point_to_loc(point: &VPoint) -> Result<LocModel, VietorisError> {
    point.check_relations()?;
    let model = LocModel { carrier: point.carrier, pos: point.dia.clone() };
    model.validate()?;
    Ok(model)
}

/// `s ≤ t` in every point of `V(L)` given by a Loc model.
pub fn term_leq_finite(l: &FiniteLattice, s: &VTerm<FElem>, t: &VTerm<FElem>) -> Result<bool, VietorisError> {
    for e in s.elements().into_iter().chain(t.elements()) {
        l.check(e)?;
    }
    Ok(enumerate_models(l).iter().all(|m| {
        let p = loc_to_point(m).expect("enumerated models are valid");
        !p.eval(s) || p.eval(t)
    }))
}

/// Sound syntactic check for any carrier: every tile of `nf(s)` lies below
/// some tile of `nf(t)`. `Unknown` otherwise.
pub fn term_leq_syntactic<L: Lattice>(l: &L, s: &VTerm<L::Elem>, t: &VTerm<L::Elem>) -> Tri {
    let (ns, nt) = (normalize(l, s), normalize(l, t));
    if ns.tiles.iter().all(|x| nt.tiles.iter().any(|y| tile_leq(l, x, y))) {
        Tri::True
    } else {
        Tri::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(i: u32) -> FElem {
        FElem::Chain(i)
    }

    fn chain3() -> FiniteLattice {
        FiniteLattice::new_chain(3).unwrap()
    }

    #[test]
    fn chain3_models() {
        let models = enumerate_models(&chain3());
        let shown: Vec<String> = models.iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["{}", "{2}", "{1, 2}"]);
        assert_eq!(enumerate_models(&FiniteLattice::new_chain(2).unwrap()).len(), 2);
    }

    #[test]
    fn empty_model_always_present() {
        for l in [FiniteLattice::Bool(3), FiniteLattice::Grid(2, 2), FiniteLattice::Chain(5)] {
            assert!(enumerate_models(&l)[0].positive().is_empty());
        }
    }

    #[test]
    fn normalize_examples() {
        let l = chain3();
        let nf = normalize(&l, &VTerm::join(VTerm::Dia(c(1)), VTerm::Dia(c(2))));
        assert_eq!(nf.tiles, vec![Tile { bx: c(2), dias: vec![c(2)] }]);
        assert!(normalize(&l, &VTerm::Dia(c(0))).tiles.is_empty());
        let nf = normalize(&l, &VTerm::meet(VTerm::Box(c(1)), VTerm::Dia(c(2))));
        assert_eq!(nf.tiles, vec![Tile { bx: c(1), dias: vec![c(1)] }]);
        let b = FiniteLattice::Bool(2);
        let nf = normalize(&b, &VTerm::join(VTerm::Dia(FElem::Bool(1)), VTerm::Dia(FElem::Bool(2))));
        assert_eq!(nf.tiles, vec![Tile { bx: FElem::Bool(3), dias: vec![FElem::Bool(3)] }]);
    }

    #[test]
    fn leq_examples() {
        let l = chain3();
        for a in 0..3 {
            for b in 0..3 {
                let lhs = VTerm::Box(l.join(&c(a), &c(b)));
                let rhs = VTerm::join(VTerm::Box(c(a)), VTerm::Dia(c(b)));
                assert_eq!(term_leq_finite(&l, &lhs, &rhs), Ok(true));
            }
        }
        assert_eq!(term_leq_finite(&l, &VTerm::Dia(c(1)), &VTerm::Box(c(1))), Ok(false));
        let t = VTerm::meet(VTerm::Dia(c(1)), VTerm::Box(c(2)));
        assert_eq!(term_leq_finite(&l, &t, &t), Ok(true));
        assert!(term_leq_finite(&l, &VTerm::Dia(c(7)), &t).is_err());
    }

    #[test]
    fn loc_point_examples() {
        let l = chain3();
        let m = LocModel::from_positive(l, &[c(1), c(2)]);
        let p = loc_to_point(&m).unwrap();
        assert!(p.dia(&c(1)));
        assert!(!p.bx(&c(1)));
        let empty = LocModel::from_positive(l, &[]);
        let p = loc_to_point(&empty).unwrap();
        assert!(l.elements().iter().all(|u| !p.dia(u) && p.bx(u)));
        assert_eq!(point_to_loc(&p), Ok(empty));
    }

    #[test]
    fn flipped_box_can_be_another_point() {
        // {m, 1} with □m forced true is still a point: the closed set {m}
        let l = chain3();
        let mut p = loc_to_point(&LocModel::from_positive(l, &[c(1), c(2)])).unwrap();
        p.bx[1] = true;
        assert!(p.check_relations().is_ok());
    }

    #[test]
    fn flipped_box_reports_relation_four() {
        let l = chain3();
        let mut found = Vec::new();
        for m in enumerate_models(&l) {
            let base = loc_to_point(&m).unwrap();
            for i in 0..3 {
                let mut p = base.clone();
                p.bx[i] = !p.bx[i];
                if let Err(VietorisError::Relation { relation: 4, u, v }) = point_to_loc(&p) {
                    found.push((m.to_string(), i, u, v));
                }
            }
        }
        // empty model, □0 flipped to false: □(0 ∨ 1) holds but neither □0 nor ◊1
        assert_eq!(found[0], ("{}".to_string(), 0, "0".to_string(), "1".to_string()));
    }

    #[test]
    fn round_trip_on_small_carriers() {
        for l in [
            FiniteLattice::Chain(2),
            FiniteLattice::Chain(3),
            FiniteLattice::Chain(4),
            FiniteLattice::Chain(5),
            FiniteLattice::Bool(3),
            FiniteLattice::Grid(2, 2),
        ] {
            for m in enumerate_models(&l) {
                let p = loc_to_point(&m).unwrap();
                assert_eq!(point_to_loc(&p).unwrap(), m);
            }
        }
    }

    #[test]
    fn syntactic_check_on_intervals() {
        use crate::numerics::int;
        let amb = OpenInterval::new(int(-1), int(2));
        let l = IntervalCarrier { ambient: amb.clone() };
        let e = |a: i64, b: i64| IntervalElement::new(amb.clone(), vec![OpenInterval::new(int(a), int(b))]).unwrap();
        let s = VTerm::meet(VTerm::Box(e(0, 1)), VTerm::Dia(e(-1, 2)));
        assert_eq!(term_leq_syntactic(&l, &s, &VTerm::Dia(e(0, 1))), Tri::True);
        assert_eq!(term_leq_syntactic(&l, &VTerm::Dia(e(0, 1)), &VTerm::Box(e(0, 1))), Tri::Unknown);
    }
}
