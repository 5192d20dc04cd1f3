//! Text syntax for everything the command line accepts. Every error carries
//! the byte offset where parsing stopped.

use loctop::interval_lattice::IntervalElement;
use loctop::kernel::reals::OpenInterval;
use loctop::kernel::Derivation;
use loctop::located::sets::{Affine, ExactSet};
use loctop::metric_locale::{FormalBall, Point2};
use loctop::numerics::Rational;
use loctop::trees::{RemovalSet, TreeNode};
use loctop::vietoris::{FElem, FiniteLattice, VTerm};
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Nesting limit for recursive constructs.
pub const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

pub type Result<T> = std::result::Result<T, ParseError>;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    base: usize,
    depth: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, base: usize) -> Self {
        Cursor { src, pos: 0, base, depth: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        self.err_at(self.pos, message)
    }

    fn err_at<T>(&self, pos: usize, message: impl Into<String>) -> Result<T> {
        Err(ParseError { offset: self.base + pos, message: message.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected '{c}', found '{found}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return self.err("trailing input");
        }
        Ok(())
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("nesting too deep");
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let len = self.rest().find(|c: char| !(c.is_ascii_alphanumeric() || c == '-' || c == '_')).unwrap_or(self.rest().len());
        let s = &self.rest()[..len];
        self.pos += len;
        s
    }

    fn natural(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if len == 0 {
            return self.err("expected a natural number");
        }
        self.pos += len;
        self.src[start..self.pos].parse().or_else(|_| self.err_at(start, "natural number too large"))
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
            i += 1;
        }
        let num_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == num_start {
            return self.err_at(start, "malformed rational");
        }
        let mut den_zero = false;
        if i < bytes.len() && bytes[i] == b'/' {
            let den_start = i + 1;
            i = den_start;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == den_start {
                return self.err_at(start, "malformed rational");
            }
            den_zero = bytes[den_start..i].iter().all(|&b| b == b'0');
        }
        if den_zero {
            return self.err_at(start, "zero denominator");
        }
        self.pos = i;
        let text = self.src[start..i].trim_start_matches('+');
        text.parse::<Rational>().or_else(|_| self.err_at(start, "malformed rational"))
    }

    /// The text up to the `)` matching an already consumed `(`, which is
    /// consumed too. Returns the inner text and its offset.
    fn balanced(&mut self) -> Result<(&'a str, usize)> {
        let start = self.pos;
        let mut depth = 1usize;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        let inner = &self.src[start..start + i];
                        self.pos = start + i + 1;
                        return Ok((inner, self.base + start));
                    }
                }
                _ => {}
            }
        }
        self.err_at(start, "unbalanced parentheses")
    }
}

fn whole<T>(text: &str, f: impl FnOnce(&mut Cursor) -> Result<T>) -> Result<T> {
    let mut c = Cursor::new(text, 0);
    let v = f(&mut c)?;
    c.finish()?;
    Ok(v)
}

fn sub<T>(text: &str, offset: usize, f: impl FnOnce(&mut Cursor) -> Result<T>) -> Result<T> {
    let mut c = Cursor::new(text, offset);
    let v = f(&mut c)?;
    c.finish()?;
    Ok(v)
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    whole(text, |c| c.rational())
}

/// `x` or `x,y`; a single coordinate lies on the x-axis.
pub fn parse_point(text: &str) -> Result<(Point2, bool)> {
    whole(text, point_coords)
}

fn point_coords(c: &mut Cursor) -> Result<(Point2, bool)> {
    let x = c.rational()?;
    if c.eat(',') {
        let y = c.rational()?;
        Ok((Point2::new(x, y), false))
    } else {
        Ok((Point2::new(x, Rational::zero()), true))
    }
}

fn rationals(c: &mut Cursor, n: usize) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            c.expect(',')?;
        }
        out.push(c.rational()?);
    }
    Ok(out)
}

/// The set-spec mini-language: `interval:a,b`, `points:(x);(x,y)`, `cantor`,
/// `disk:x,y,r`, `segment:x1,y1,x2,y2`, `union(S,T)`,
/// `image(affine:a,b,c,d,e,f,S)`.
pub fn parse_set_spec(text: &str) -> Result<ExactSet> {
    whole(text, set_spec)
}

fn set_spec(c: &mut Cursor) -> Result<ExactSet> {
    c.enter()?;
    c.skip_ws();
    let start = c.pos;
    let name = c.ident();
    let set = match name {
        "interval" => {
            c.expect(':')?;
            let v = rationals(c, 2)?;
            if v[0] > v[1] {
                return c.err_at(start, "empty interval");
            }
            let [a, b]: [Rational; 2] = v.try_into().expect("two values");
            ExactSet::Interval(a, b)
        }
        "points" => {
            c.expect(':')?;
            let mut ps = Vec::new();
            loop {
                c.expect('(')?;
                ps.push(point_coords(c)?.0);
                c.expect(')')?;
                if !c.eat(';') {
                    break;
                }
            }
            ExactSet::Points(ps)
        }
        "cantor" => ExactSet::Cantor,
        "disk" => {
            c.expect(':')?;
            let v = rationals(c, 3)?;
            if !v[2].is_positive() {
                return c.err_at(start, "disk radius must be positive");
            }
            let [x, y, r]: [Rational; 3] = v.try_into().expect("three values");
            ExactSet::disk(x, y, r)
        }
        "segment" => {
            c.expect(':')?;
            let v = rationals(c, 4)?;
            let [a, b, x, y]: [Rational; 4] = v.try_into().expect("four values");
            ExactSet::Segment(Point2::new(a, b), Point2::new(x, y))
        }
        "union" => {
            c.expect('(')?;
            let a = set_spec(c)?;
            c.expect(',')?;
            let b = set_spec(c)?;
            c.expect(')')?;
            ExactSet::union(a, b)
        }
        "image" => {
            c.expect('(')?;
            if !c.eat_str("affine") {
                return c.err("expected 'affine'");
            }
            c.expect(':')?;
            let v = rationals(c, 6)?;
            c.expect(',')?;
            let s = set_spec(c)?;
            c.expect(')')?;
            let coeffs: [Rational; 6] = v.try_into().expect("six values");
            ExactSet::image(Affine::new(coeffs), s)
        }
        "" => return c.err_at(start, "expected a set constructor"),
        other => return c.err_at(start, format!("unknown constructor '{other}'")),
    };
    c.leave();
    Ok(set)
}

/// `(p,q)` with `p < q`.
pub fn parse_open_interval(text: &str) -> Result<OpenInterval> {
    whole(text, open_interval)
}

fn open_interval(c: &mut Cursor) -> Result<OpenInterval> {
    c.skip_ws();
    let start = c.pos;
    c.expect('(')?;
    let p = c.rational()?;
    c.expect(',')?;
    let q = c.rational()?;
    c.expect(')')?;
    OpenInterval::try_new(p, q).map_or_else(|| c.err_at(start, "empty open interval"), Ok)
}

/// `0`, `1`, or `(p,q)|(r,s)|...` inside `ambient`.
pub fn parse_interval_element(text: &str, ambient: &OpenInterval) -> Result<IntervalElement> {
    interval_element_at(text, 0, ambient)
}

fn interval_element_at(text: &str, offset: usize, ambient: &OpenInterval) -> Result<IntervalElement> {
    sub(text, offset, |c| {
        c.skip_ws();
        let start = c.pos;
        if c.eat('0') {
            return Ok(IntervalElement::zero(ambient.clone()));
        }
        if c.eat('1') {
            return Ok(IntervalElement::one(ambient.clone()));
        }
        let mut parts = vec![open_interval(c)?];
        while c.eat('|') {
            parts.push(open_interval(c)?);
        }
        IntervalElement::new(ambient.clone(), parts).or_else(|e| c.err_at(start, e.to_string()))
    })
}

/// `B(r; x)` on the line.
pub fn parse_ball_1d(text: &str) -> Result<FormalBall<Rational>> {
    ball_1d_at(text, 0)
}

fn ball_1d_at(text: &str, offset: usize) -> Result<FormalBall<Rational>> {
    let (r, (p, one_d)) = sub(text, offset, ball)?;
    if !one_d {
        return Err(ParseError { offset, message: "expected a one-dimensional ball".into() });
    }
    Ok(FormalBall::new(p.x, r))
}

/// `B(r; x,y)` in the plane; `B(r; x)` is read as a point on the x-axis.
pub fn parse_ball_2d(text: &str) -> Result<FormalBall<Point2>> {
    let (r, (p, _)) = whole(text, ball)?;
    Ok(FormalBall::new(p, r))
}

fn ball(c: &mut Cursor) -> Result<(Rational, (Point2, bool))> {
    c.skip_ws();
    let start = c.pos;
    if !c.eat('B') {
        return c.err("expected 'B('");
    }
    c.expect('(')?;
    let r = c.rational()?;
    c.expect(';')?;
    let p = point_coords(c)?;
    c.expect(')')?;
    if !r.is_positive() {
        return c.err_at(start, "ball radius must be positive");
    }
    Ok((r, p))
}

/// A Vietoris carrier: `chain:n`, `bool:n`, `grid:m,n` or `intervals:(a,b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carrier {
    Finite(FiniteLattice),
    Intervals(OpenInterval),
}

pub fn parse_carrier(text: &str) -> Result<Carrier> {
    whole(text, |c| {
        c.skip_ws();
        let start = c.pos;
        let name = c.ident();
        if name.is_empty() {
            return c.err("expected a carrier name");
        }
        c.expect(':')?;
        let checked = |r: std::result::Result<FiniteLattice, _>, c: &Cursor| {
            r.map(Carrier::Finite).or_else(|e: loctop::vietoris::VietorisError| c.err_at(start, e.to_string()))
        };
        match name {
            "chain" => {
                let n = c.natural()?;
                checked(FiniteLattice::new_chain(u32::try_from(n).unwrap_or(u32::MAX)), c)
            }
            "bool" => {
                let n = c.natural()?;
                checked(FiniteLattice::new_bool(u32::try_from(n).unwrap_or(u32::MAX)), c)
            }
            "grid" => {
                let m = c.natural()?;
                c.expect(',')?;
                let n = c.natural()?;
                let small = |x: u64| u32::try_from(x).unwrap_or(u32::MAX).min(1 << 16);
                checked(FiniteLattice::new_grid(small(m), small(n)), c)
            }
            "intervals" => Ok(Carrier::Intervals(open_interval(c)?)),
            other => c.err_at(start, format!("unknown carrier '{other}'")),
        }
    })
}

/// A finite-carrier element: an index for chains, `{i,j}` for Boolean
/// algebras, `(i,j)` for grids.
pub fn parse_finite_element(text: &str, l: &FiniteLattice) -> Result<FElem> {
    finite_element_at(text, 0, l)
}

fn finite_element_at(text: &str, offset: usize, l: &FiniteLattice) -> Result<FElem> {
    sub(text, offset, |c| {
        c.skip_ws();
        let start = c.pos;
        let small = |x: u64| u32::try_from(x).unwrap_or(u32::MAX);
        let e = match l {
            FiniteLattice::Chain(_) => FElem::Chain(small(c.natural()?)),
            FiniteLattice::Bool(_) => {
                c.expect('{')?;
                let mut mask = 0u32;
                if !c.eat('}') {
                    loop {
                        let i = c.natural()?;
                        if i >= 32 {
                            return c.err_at(start, format!("{i} is outside {l}"));
                        }
                        mask |= 1 << i;
                        if !c.eat(',') {
                            break;
                        }
                    }
                    c.expect('}')?;
                }
                FElem::Bool(mask)
            }
            FiniteLattice::Grid(..) => {
                c.expect('(')?;
                let i = c.natural()?;
                c.expect(',')?;
                let j = c.natural()?;
                c.expect(')')?;
                FElem::Grid(small(i), small(j))
            }
        };
        if !l.contains(&e) {
            return c.err_at(start, format!("{e} is not an element of {l}"));
        }
        Ok(e)
    })
}

/// Terms over `dia(u)`, `box(u)`, `0`, `1`, `&` and `|`; `&` binds tighter.
pub fn parse_vterm<E>(text: &str, elem: &dyn Fn(&str, usize) -> Result<E>) -> Result<VTerm<E>> {
    whole(text, |c| term_join(c, elem))
}

pub fn parse_vterm_finite(text: &str, l: &FiniteLattice) -> Result<VTerm<FElem>> {
    parse_vterm(text, &|s, off| finite_element_at(s, off, l))
}

pub fn parse_vterm_intervals(text: &str, ambient: &OpenInterval) -> Result<VTerm<IntervalElement>> {
    parse_vterm(text, &|s, off| interval_element_at(s, off, ambient))
}

fn term_join<E>(c: &mut Cursor, elem: &dyn Fn(&str, usize) -> Result<E>) -> Result<VTerm<E>> {
    let mut t = term_meet(c, elem)?;
    while c.eat('|') {
        t = VTerm::join(t, term_meet(c, elem)?);
    }
    Ok(t)
}

fn term_meet<E>(c: &mut Cursor, elem: &dyn Fn(&str, usize) -> Result<E>) -> Result<VTerm<E>> {
    let mut t = term_atom(c, elem)?;
    while c.eat('&') {
        t = VTerm::meet(t, term_atom(c, elem)?);
    }
    Ok(t)
}

fn term_atom<E>(c: &mut Cursor, elem: &dyn Fn(&str, usize) -> Result<E>) -> Result<VTerm<E>> {
    c.enter()?;
    c.skip_ws();
    let t = if c.eat('(') {
        let t = term_join(c, elem)?;
        c.expect(')')?;
        t
    } else if c.eat('0') {
        VTerm::Zero
    } else if c.eat('1') {
        VTerm::One
    } else {
        let start = c.pos;
        let name = c.ident();
        let wrap: fn(E) -> VTerm<E> = match name {
            "dia" => VTerm::Dia,
            "box" => VTerm::Box,
            "" => return c.err_at(start, "expected a term"),
            other => return c.err_at(start, format!("unknown operator '{other}'")),
        };
        c.expect('(')?;
        let (inner, off) = c.balanced()?;
        wrap(elem(inner, off)?)
    };
    c.leave();
    Ok(t)
}

/// `0,0,1`; the root is `()` or empty.
pub fn parse_tree_node(text: &str) -> Result<TreeNode> {
    whole(text, tree_node)
}

fn tree_node(c: &mut Cursor) -> Result<TreeNode> {
    c.skip_ws();
    if c.eat('(') {
        c.expect(')')?;
        return Ok(TreeNode::root());
    }
    if c.peek().is_none_or(|ch| !ch.is_ascii_digit()) {
        return Ok(TreeNode::root());
    }
    let mut v = vec![c.natural()?];
    while c.eat(',') {
        v.push(c.natural()?);
    }
    Ok(TreeNode(v))
}

/// `nodes:<node>;<node>...` or `alpha:<bits>`; the reading of `alpha`
/// is supplied separately.
pub fn parse_removal_set(text: &str, reading: loctop::trees::AlphaReading) -> Result<RemovalSet> {
    whole(text, |c| {
        c.skip_ws();
        let start = c.pos;
        match c.ident() {
            "nodes" => {
                c.expect(':')?;
                let mut nodes = vec![tree_node(c)?];
                while c.eat(';') {
                    nodes.push(tree_node(c)?);
                }
                Ok(RemovalSet::Nodes(nodes))
            }
            "alpha" => {
                c.expect(':')?;
                c.skip_ws();
                let len = c.rest().find(|ch| ch != '0' && ch != '1').unwrap_or(c.rest().len());
                let bits = c.rest()[..len].chars().map(|ch| ch == '1').collect();
                c.pos += len;
                Ok(RemovalSet::Alpha { bits, reading })
            }
            other => c.err_at(start, format!("unknown removal set '{other}'")),
        }
    })
}

/// An s-expression whose atoms may themselves contain parentheses.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Sx<'a> {
    Atom(&'a str, usize),
    List(Vec<Sx<'a>>, usize),
}

impl Sx<'_> {
    fn offset(&self) -> usize {
        match self {
            Sx::Atom(_, o) | Sx::List(_, o) => *o,
        }
    }
}

/// A parenthesised group is an atom when it has a comma at its top level,
/// like `(0,1)`; a trailing `|(..)` chain belongs to the same atom.
fn read_sx<'a>(c: &mut Cursor<'a>) -> Result<Sx<'a>> {
    c.enter()?;
    c.skip_ws();
    let start = c.pos;
    let sx = if c.eat('(') {
        let body_start = c.pos;
        let (inner, _) = c.balanced()?;
        let mut depth = 0i32;
        let is_atom = inner.chars().any(|ch| {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            ch == ',' && depth == 0
        });
        if is_atom {
            while c.rest().starts_with("|(") {
                c.pos += 2;
                c.balanced()?;
            }
            Sx::Atom(&c.src[start..c.pos], c.base + start)
        } else {
            c.pos = body_start;
            let mut items = Vec::new();
            loop {
                c.skip_ws();
                match c.peek() {
                    Some(')') => {
                        c.pos += 1;
                        break;
                    }
                    None => return c.err("unbalanced parentheses"),
                    _ => items.push(read_sx(c)?),
                }
            }
            Sx::List(items, c.base + start)
        }
    } else {
        let mut depth = 0usize;
        let mut end = c.src.len();
        for (i, ch) in c.rest().char_indices() {
            match ch {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    end = c.pos + i;
                    break;
                }
                ')' => depth -= 1,
                ch if ch.is_whitespace() && depth == 0 => {
                    end = c.pos + i;
                    break;
                }
                _ => {}
            }
        }
        if end == c.pos {
            return c.err("expected an s-expression");
        }
        if depth > 0 {
            return c.err("unbalanced parentheses");
        }
        c.pos = end;
        Sx::Atom(&c.src[start..end], c.base + start)
    };
    c.leave();
    Ok(sx)
}

/// Elements separated by whitespace or `;`.
pub fn parse_family<E>(text: &str, elem: &dyn Fn(&str, usize) -> Result<E>) -> Result<Vec<E>> {
    let mut depth = 0i32;
    let cleaned: String = text
        .chars()
        .map(|ch| {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ';' if depth == 0 => return ' ',
                _ => {}
            }
            ch
        })
        .collect();
    let mut c = Cursor::new(&cleaned, 0);
    let mut out = Vec::new();
    loop {
        c.skip_ws();
        if c.peek().is_none() {
            return Ok(out);
        }
        match read_sx(&mut c)? {
            Sx::Atom(s, off) => out.push(elem(s, off)?),
            Sx::List(_, off) => return Err(ParseError { offset: off, message: "expected an element".into() }),
        }
    }
}

/// A derivation in the s-expression form it prints in.
pub fn parse_derivation<E>(text: &str, elem: &dyn Fn(&str, usize) -> Result<E>) -> Result<Derivation<E>> {
    let mut c = Cursor::new(text, 0);
    let sx = read_sx(&mut c)?;
    c.finish()?;
    derivation(&sx, elem)
}

pub fn parse_reals_element(text: &str, offset: usize) -> Result<OpenInterval> {
    sub(text, offset, open_interval)
}

pub fn parse_ball_element(text: &str, offset: usize) -> Result<FormalBall<Rational>> {
    ball_1d_at(text, offset)
}

fn sx_err<T>(sx: &Sx, message: impl Into<String>) -> Result<T> {
    Err(ParseError { offset: sx.offset(), message: message.into() })
}

fn sx_elem<E>(sx: &Sx, elem: &dyn Fn(&str, usize) -> Result<E>) -> Result<E> {
    match sx {
        Sx::Atom(s, off) => elem(s, *off),
        Sx::List(..) => sx_err(sx, "expected an element"),
    }
}

fn sx_list<'s, 'a>(sx: &'s Sx<'a>) -> Result<&'s [Sx<'a>]> {
    match sx {
        Sx::List(items, _) => Ok(items),
        Sx::Atom(..) => sx_err(sx, "expected a list"),
    }
}

fn derivation<E>(sx: &Sx, elem: &dyn Fn(&str, usize) -> Result<E>) -> Result<Derivation<E>> {
    let items = sx_list(sx)?;
    let Some(Sx::Atom(head, _)) = items.first() else {
        return sx_err(sx, "expected a rule name");
    };
    let args = &items[1..];
    let arity = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            sx_err(sx, format!("'{head}' takes {n} arguments, found {}", args.len()))
        }
    };
    let elems = |s: &Sx| -> Result<Vec<E>> { sx_list(s)?.iter().map(|x| sx_elem(x, elem)).collect() };
    let nodes = |s: &Sx| -> Result<Vec<Derivation<E>>> { sx_list(s)?.iter().map(|x| derivation(x, elem)).collect() };
    Ok(match *head {
        "ref" => {
            arity(1)?;
            Derivation::Ref(sx_elem(&args[0], elem)?)
        }
        "pos" => {
            arity(1)?;
            Derivation::Pos(sx_elem(&args[0], elem)?)
        }
        "ext" => {
            arity(2)?;
            Derivation::Ext { u: sx_elem(&args[0], elem)?, b: sx_elem(&args[1], elem)? }
        }
        "tra" => {
            arity(2)?;
            Derivation::Tra { first: Box::new(derivation(&args[0], elem)?), rest: nodes(&args[1])? }
        }
        "loc" => {
            arity(3)?;
            Derivation::Loc { u: sx_elem(&args[0], elem)?, h: elems(&args[1])?, inner: Box::new(derivation(&args[2], elem)?) }
        }
        "open" => {
            arity(3)?;
            Derivation::Open { u: sx_elem(&args[0], elem)?, w: elems(&args[1])?, subs: nodes(&args[2])? }
        }
        tag if tag.chars().next().is_some_and(|ch| ch.is_ascii_alphabetic()) && !tag.contains('(') => {
            arity(2)?;
            Derivation::Axiom { tag: tag.to_string(), u: sx_elem(&args[0], elem)?, family: elems(&args[1])? }
        }
        _ => return sx_err(&items[0], format!("unknown rule '{head}'")),
    })
}
