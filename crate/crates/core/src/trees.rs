//! Cantor and Baire space presented by trees of finite sequences: spread-laws,
//! closed subspaces given by removed subtrees, and the Baire metric balls.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::kernel::Tri;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("prefix of length {len} is too short for n = {n} (need length > n)")]
    PrefixTooShort { len: usize, n: usize },
}

/// A finite sequence of naturals; the root is the empty sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TreeNode(pub Vec<u64>);

impl TreeNode {
    pub fn root() -> Self {
        TreeNode(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, k: u64) -> TreeNode {
        let mut v = self.0.clone();
        v.push(k);
        TreeNode(v)
    }

    pub fn is_prefix_of(&self, other: &TreeNode) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Branching of the ambient tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    /// Binary: successors 0 and 1.
    Cantor,
    /// Successors are all naturals; searches look at `0..budget` only.
    Baire { branch_budget: u64 },
}

impl TreeKind {
    fn successors(&self) -> u64 {
        match *self {
            TreeKind::Cantor => 2,
            TreeKind::Baire { branch_budget } => branch_budget,
        }
    }

    fn exhaustive(&self) -> bool {
        matches!(self, TreeKind::Cantor)
    }
}

/// A decidable predicate on nodes.
#[derive(Clone)]
pub struct SpreadLaw {
    pub name: String,
    admits: Arc<dyn Fn(&TreeNode) -> bool + Send + Sync>,
}

impl fmt::Debug for SpreadLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpreadLaw({})", self.name)
    }
}

impl SpreadLaw {
    pub fn new(name: impl Into<String>, admits: impl Fn(&TreeNode) -> bool + Send + Sync + 'static) -> Self {
        SpreadLaw { name: name.into(), admits: Arc::new(admits) }
    }

    pub fn admits(&self, node: &TreeNode) -> bool {
        (self.admits)(node)
    }

    /// Every node.
    pub fn full() -> Self {
        SpreadLaw::new("full", |_| true)
    }

    /// Ternary codes of the middle-thirds Cantor set: digits 0 and 2 only.
    pub fn cantor_thirds() -> Self {
        SpreadLaw::new("cantor-thirds", |n: &TreeNode| n.0.iter().all(|&d| d == 0 || d == 2))
    }

    /// Admits exactly the prefixes of `end`, which then has no admitted successor.
    pub fn dead_end(end: TreeNode) -> Self {
        let name = format!("dead-end:{end}");
        SpreadLaw::new(name, move |n: &TreeNode| n.is_prefix_of(&end))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpreadViolation {
    /// Some node is admitted but the root is not.
    RootNotAdmitted { witness: TreeNode },
    /// Admitted node with no admitted successor within the branch budget.
    NoSuccessor { node: TreeNode },
}

impl fmt::Display for SpreadViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpreadViolation::RootNotAdmitted { witness } => write!(f, "root not admitted but {witness} is"),
            SpreadViolation::NoSuccessor { node } => write!(f, "no admitted successor of {node}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadReport {
    pub admitted_checked: usize,
    pub violations: Vec<SpreadViolation>,
}

impl SpreadReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the spread-law invariants below `start` on nodes of length up to
/// `start.len() + depth` with digits below `branch_budget`.
pub fn check_spread_mon_from(law: &SpreadLaw, start: &TreeNode, depth: usize, branch_budget: u64) -> SpreadReport {
    let mut report = SpreadReport { admitted_checked: 0, violations: Vec::new() };
    let limit = start.len() + depth;
    let mut stack = vec![start.clone()];
    let mut first_admitted: Option<TreeNode> = None;
    while let Some(node) = stack.pop() {
        let admitted = law.admits(&node);
        if admitted {
            report.admitted_checked += 1;
            first_admitted.get_or_insert_with(|| node.clone());
            if node.len() < limit && !(0..branch_budget).any(|k| law.admits(&node.child(k))) {
                report.violations.push(SpreadViolation::NoSuccessor { node: node.clone() });
            }
        }
        if node.len() < limit {
            stack.extend((0..branch_budget).rev().map(|k| node.child(k)));
        }
    }
    if let Some(w) = first_admitted {
        if !law.admits(start) {
            report.violations.insert(0, SpreadViolation::RootNotAdmitted { witness: w });
        }
    }
    report
}

/// Check the spread-law invariants from the root. On Cantor space use
/// `branch_budget = 2`, which makes the check complete to `depth`.
pub fn check_spread_mon(law: &SpreadLaw, depth: usize, branch_budget: u64) -> SpreadReport {
    check_spread_mon_from(law, &TreeNode::root(), depth, branch_budget)
}

/// Reading of the basic opens `0n` removed from Baire space to form `Y_α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaReading {
    /// The two-element sequence `(0, n)`.
    Pair,
    /// The run of `n` zeros, for `n ≥ 1`.
    ZeroRun,
}

/// Removed subtrees; removing a node removes every extension of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RemovalSet {
    /// Subtrees rooted at the listed nodes.
    Nodes(Vec<TreeNode>),
    /// `Y_α`: remove `0n` whenever `α(n) = 0`. Only the listed bits of `α`
    /// are known; later bits are undetermined.
    Alpha { bits: Vec<bool>, reading: AlphaReading },
}

impl RemovalSet {
    fn alpha_bit(bits: &[bool], n: u64) -> Tri {
        match usize::try_from(n).ok().and_then(|i| bits.get(i)) {
            Some(b) => Tri::from(*b),
            None => Tri::Unknown,
        }
    }

    /// Whether `node` lies in a removed subtree.
    pub fn removed(&self, node: &TreeNode) -> Tri {
        match self {
            RemovalSet::Nodes(gens) => gens.iter().any(|g| g.is_prefix_of(node)).into(),
            RemovalSet::Alpha { bits, reading: AlphaReading::Pair } => match node.0.as_slice() {
                [0, n, ..] => match Self::alpha_bit(bits, *n) {
                    Tri::True => Tri::False,
                    Tri::False => Tri::True,
                    Tri::Unknown => Tri::Unknown,
                },
                _ => Tri::False,
            },
            RemovalSet::Alpha { bits, reading: AlphaReading::ZeroRun } => {
                let run = node.0.iter().take_while(|&&d| d == 0).count() as u64;
                let mut verdict = Tri::False;
                for n in 1..=run {
                    match Self::alpha_bit(bits, n) {
                        Tri::False => return Tri::True,
                        Tri::Unknown => verdict = Tri::Unknown,
                        Tri::True => {}
                    }
                }
                verdict
            }
        }
    }

    /// No extension of `node` can change its removal status.
    pub fn settled(&self, node: &TreeNode) -> bool {
        match self {
            RemovalSet::Nodes(gens) => gens.iter().all(|g| !node.is_prefix_of(g) || g == node),
            RemovalSet::Alpha { reading: AlphaReading::Pair, .. } => node.len() >= 2 || node.0.first().is_some_and(|&d| d != 0),
            RemovalSet::Alpha { reading: AlphaReading::ZeroRun, .. } => node.0.iter().any(|&d| d != 0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeAnswer {
    Positive,
    NotPositive,
    UnknownBeyondHorizon,
}

impl fmt::Display for TreeAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeAnswer::Positive => "positive",
            TreeAnswer::NotPositive => "not-positive",
            TreeAnswer::UnknownBeyondHorizon => "unknown-beyond-horizon",
        })
    }
}

/// Positivity of `node` in the closed subspace left after the removals.
///
/// `Positive` needs a chain of surviving nodes from `node` to one that is
/// settled, of length at most `horizon`. `NotPositive` needs every branch to
/// die, which finite branching can confirm. Anything else is
/// `UnknownBeyondHorizon`.
pub fn closed_from_open_pos(removed: &RemovalSet, node: &TreeNode, horizon: usize, kind: TreeKind) -> TreeAnswer {
    match removed.removed(node) {
        Tri::True => return TreeAnswer::NotPositive,
        Tri::Unknown => return TreeAnswer::UnknownBeyondHorizon,
        Tri::False => {}
    }
    if removed.settled(node) {
        return TreeAnswer::Positive;
    }
    if node.len() >= horizon {
        return TreeAnswer::UnknownBeyondHorizon;
    }
    let mut all_dead = kind.exhaustive();
    for k in 0..kind.successors() {
        match closed_from_open_pos(removed, &node.child(k), horizon, kind) {
            TreeAnswer::Positive => return TreeAnswer::Positive,
            TreeAnswer::NotPositive => {}
            TreeAnswer::UnknownBeyondHorizon => all_dead = false,
        }
    }
    if all_dead {
        TreeAnswer::NotPositive
    } else {
        TreeAnswer::UnknownBeyondHorizon
    }
}

/// `d(α, β) < 2^{-n}` for points extending the given prefixes: agreement on
/// indices `0..=n`.
pub fn baire_ball(a: &TreeNode, b: &TreeNode, n: usize) -> Result<bool, TreeError> {
    for p in [a, b] {
        if p.len() <= n {
            return Err(TreeError::PrefixTooShort { len: p.len(), n });
        }
    }
    Ok(a.0[..=n] == b.0[..=n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(v: &[u64]) -> TreeNode {
        TreeNode(v.to_vec())
    }

    #[test]
    fn spread_examples() {
        assert!(check_spread_mon(&SpreadLaw::full(), 3, 2).passed());
        let r = check_spread_mon(&SpreadLaw::cantor_thirds(), 6, 3);
        assert!(r.passed());
        assert_eq!(r.admitted_checked, (0..=6).map(|k| 1usize << k).sum::<usize>());
        let r = check_spread_mon(&SpreadLaw::dead_end(node(&[0, 1])), 4, 2);
        assert_eq!(r.violations, vec![SpreadViolation::NoSuccessor { node: node(&[0, 1]) }]);
        let orphan = SpreadLaw::new("orphan", |n: &TreeNode| n.0 == [1]);
        let r = check_spread_mon(&orphan, 2, 2);
        assert!(matches!(r.violations[0], SpreadViolation::RootNotAdmitted { .. }));
    }

    #[test]
    fn cantor_removal_examples() {
        let starts_one = RemovalSet::Nodes(vec![node(&[1])]);
        assert_eq!(closed_from_open_pos(&starts_one, &TreeNode::root(), 4, TreeKind::Cantor), TreeAnswer::Positive);
        let depth2 = RemovalSet::Nodes(vec![node(&[0, 0]), node(&[0, 1]), node(&[1, 0]), node(&[1, 1])]);
        assert_eq!(closed_from_open_pos(&depth2, &TreeNode::root(), 3, TreeKind::Cantor), TreeAnswer::NotPositive);
        // below the removal depth nothing is settled yet
        assert_eq!(
            closed_from_open_pos(&depth2, &TreeNode::root(), 1, TreeKind::Cantor),
            TreeAnswer::UnknownBeyondHorizon
        );
    }

    #[test]
    fn y_alpha_readings() {
        let bits = vec![false, false, true, false];
        let kind = TreeKind::Baire { branch_budget: 4 };
        let pair = RemovalSet::Alpha { bits: bits.clone(), reading: AlphaReading::Pair };
        assert_eq!(closed_from_open_pos(&pair, &node(&[0]), 3, kind), TreeAnswer::Positive);
        let run = RemovalSet::Alpha { bits, reading: AlphaReading::ZeroRun };
        assert_eq!(closed_from_open_pos(&run, &node(&[0]), 3, kind), TreeAnswer::NotPositive);
        // nothing known beyond the listed bits: positivity of 0 is open
        let zeros = RemovalSet::Alpha { bits: vec![false; 3], reading: AlphaReading::Pair };
        assert_eq!(closed_from_open_pos(&zeros, &node(&[0]), 3, kind), TreeAnswer::UnknownBeyondHorizon);
    }

    #[test]
    fn baire_ball_examples() {
        let a = node(&[0, 1, 2]);
        let b = node(&[0, 1, 3]);
        assert_eq!(baire_ball(&a, &b, 1), Ok(true));
        assert_eq!(baire_ball(&a, &b, 2), Ok(false));
        assert_eq!(baire_ball(&a, &a, 2), Ok(true));
        assert_eq!(baire_ball(&a, &b, 3), Err(TreeError::PrefixTooShort { len: 3, n: 3 }));
    }

    #[test]
    fn node_display() {
        assert_eq!(node(&[0, 0, 1]).to_string(), "0,0,1");
        assert_eq!(TreeNode::root().to_string(), "()");
    }
}
