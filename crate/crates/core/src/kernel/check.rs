//! Independent derivation checker. It re-validates every node from the base's
//! order, meets and axiom-instance recognizer only.

use thiserror::Error;

use super::{Base, Derivation, Family, Meet, PosPredicate, Tri};

/// Which cover relation a derivation is checked in.
#[derive(Clone)]
pub enum CheckMode<E> {
    Plain,
    /// The open sublocale for `W`; an `open` node is allowed at the root.
    Open(Vec<E>),
    /// The positively closed sublocale for `F`; `pos` nodes are allowed.
    PositivelyClosed(PosPredicate<E>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("ref: {0} is not in the target")]
    NotInTarget(String),
    #[error("ext: {u} is not below {b}")]
    NotBelow { u: String, b: String },
    #[error("ext: {0} is not a listed target member")]
    ExtTargetNotListed(String),
    #[error("{tag}: not a complete axiom instance for {u}")]
    NotAnAxiom { tag: String, u: String },
    #[error("{tag}: family member {member} is not in the target")]
    AxiomMemberMissing { tag: String, member: String },
    #[error("loc: {u} is not below the subject {a} of the inner derivation")]
    LocNotBelow { u: String, a: String },
    #[error("loc: meet of {u} and {h} is not representable")]
    Unrepresentable { u: String, h: String },
    #[error("loc: {0} is not in the target")]
    LocMemberMissing(String),
    #[error("open node used outside an open sublocale root")]
    OpenNotAllowed,
    #[error("open: W differs from the sublocale's")]
    OpenWMismatch,
    #[error("open: expected {expected} sub-derivations, found {found}")]
    OpenArity { expected: usize, found: usize },
    #[error("pos node used outside a positively closed sublocale")]
    PosNotAllowed,
    #[error("pos: {0} is neither non-positive nor in the target")]
    PosClauseFails(String),
    #[error("subject mismatch: expected {expected}, found {found}")]
    SubjectMismatch { expected: String, found: String },
}

/// Check that `d` proves `subject(d) ◁ target` in the cover relation `mode`.
pub fn check_derivation<B: Base>(
    base: &B,
    d: &Derivation<B::Elem>,
    target: &Family<B::Elem>,
    mode: &CheckMode<B::Elem>,
) -> Result<(), CheckError> {
    if let Derivation::Open { u, w, subs } = d {
        let CheckMode::Open(ws) = mode else {
            return Err(CheckError::OpenNotAllowed);
        };
        if w != ws {
            return Err(CheckError::OpenWMismatch);
        }
        let mut meets = Vec::new();
        for x in w {
            match base.meet(u, x) {
                Meet::Empty => {}
                Meet::Single(m) => meets.push(m),
                Meet::Unrepresentable => {
                    return Err(CheckError::Unrepresentable { u: u.to_string(), h: x.to_string() })
                }
            }
        }
        if meets.len() != subs.len() {
            return Err(CheckError::OpenArity { expected: meets.len(), found: subs.len() });
        }
        for (m, sub) in meets.iter().zip(subs) {
            if sub.subject() != m {
                return Err(CheckError::SubjectMismatch { expected: m.to_string(), found: sub.subject().to_string() });
            }
            check_node(base, sub, target, &CheckMode::Plain)?;
        }
        return Ok(());
    }
    check_node(base, d, target, mode)
}

fn check_node<B: Base>(
    base: &B,
    d: &Derivation<B::Elem>,
    target: &Family<B::Elem>,
    mode: &CheckMode<B::Elem>,
) -> Result<(), CheckError> {
    match d {
        Derivation::Ref(u) => {
            if target.contains(u) {
                Ok(())
            } else {
                Err(CheckError::NotInTarget(u.to_string()))
            }
        }
        Derivation::Ext { u, b } => {
            if !target.contains(b) {
                return Err(CheckError::ExtTargetNotListed(b.to_string()));
            }
            if base.leq(u, b) {
                Ok(())
            } else {
                Err(CheckError::NotBelow { u: u.to_string(), b: b.to_string() })
            }
        }
        Derivation::Axiom { tag, u, family } => {
            if !base.is_axiom_instance(tag, u, family) {
                return Err(CheckError::NotAnAxiom { tag: tag.clone(), u: u.to_string() });
            }
            match family.iter().find(|g| !target.contains(g)) {
                Some(g) => Err(CheckError::AxiomMemberMissing { tag: tag.clone(), member: g.to_string() }),
                None => Ok(()),
            }
        }
        Derivation::Tra { first, rest } => {
            let mids = Family::finite(rest.iter().map(|r| r.subject().clone()).collect());
            check_node(base, first, &mids, mode)?;
            rest.iter().try_for_each(|r| check_node(base, r, target, mode))
        }
        Derivation::Loc { u, h, inner } => {
            let a = inner.subject();
            if !base.leq(u, a) {
                return Err(CheckError::LocNotBelow { u: u.to_string(), a: a.to_string() });
            }
            check_node(base, inner, &Family::finite(h.clone()), mode)?;
            for x in h {
                match base.meet(u, x) {
                    Meet::Empty => {}
                    Meet::Single(m) if target.contains(&m) => {}
                    Meet::Single(m) => return Err(CheckError::LocMemberMissing(m.to_string())),
                    Meet::Unrepresentable => {
                        return Err(CheckError::Unrepresentable { u: u.to_string(), h: x.to_string() })
                    }
                }
            }
            Ok(())
        }
        Derivation::Open { .. } => Err(CheckError::OpenNotAllowed),
        Derivation::Pos(u) => {
            let CheckMode::PositivelyClosed(f) = mode else {
                return Err(CheckError::PosNotAllowed);
            };
            if f(u) == Tri::False || target.contains(u) {
                Ok(())
            } else {
                Err(CheckError::PosClauseFails(u.to_string()))
            }
        }
    }
}
