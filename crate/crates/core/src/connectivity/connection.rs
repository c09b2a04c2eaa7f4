//! Connections of roots, `¬J`-connections, and the equivalence classes they induce.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::ConnectError;
use crate::exact_linear::Subspace;
use crate::split::{Root, RootDecomposition};
use crate::triple::{is_subsystem, j_ideal, product_space};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionKind {
    Plain,
    NotJ,
}

/// Which half of `Λ¹` a root belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    J,
    NotJ,
}

impl std::fmt::Display for Part {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Part::J => "J",
            Part::NotJ => "not_J",
        })
    }
}

/// A chain `α₁, …, α_{2n+1}` witnessing that `α₁` is connected to `±β`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Connection {
    pub chain: Vec<Root>,
    pub kind: ConnectionKind,
    /// `+1` when the chain sums to `β`, `-1` when it sums to `-β`.
    pub target_sign: i8,
}

impl Connection {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Recomputes every partial sum from the chain alone.
    ///
    /// `odd_set` is `Λ¹` for plain connections and `Λ^γ` for `¬J`-connections;
    /// `increments` restricts `α₂, α₃, …` (`Λ¹` or `Λ^¬J`, zero always allowed).
    pub fn validate(
        &self,
        from: &Root,
        to: &Root,
        odd_set: &BTreeSet<Root>,
        increments: &BTreeSet<Root>,
        lambda0: &BTreeSet<Root>,
    ) -> bool {
        if self.chain.len().is_multiple_of(2) || self.chain.first() != Some(from) {
            return false;
        }
        let allowed = |r: &Root| r.is_zero() || increments.contains(r);
        if !self.chain[1..].iter().all(allowed) {
            return false;
        }
        let mut sum = self.chain[0].clone();
        if !odd_set.contains(&sum) {
            return false;
        }
        for pair in self.chain[1..].chunks(2) {
            sum = sum.add(&pair[0]);
            if !lambda0.contains(&sum) {
                return false;
            }
            sum = sum.add(&pair[1]);
            if !odd_set.contains(&sum) {
                return false;
            }
        }
        match self.target_sign {
            1 => sum == *to,
            -1 => sum == to.neg(),
            _ => false,
        }
    }
}

/// Search space shared by both connection notions.
struct Search<'a> {
    odd_set: &'a BTreeSet<Root>,
    /// Ordered: zero first, then ascending.
    increments: Vec<Root>,
    lambda0: &'a BTreeSet<Root>,
    min_len: usize,
}

impl Search<'_> {
    /// Breadth-first search over odd partial sums; shortest chain, ties broken by
    /// the order of increments.
    fn run(&self, from: &Root, to: &Root, kind: ConnectionKind) -> Option<Connection> {
        let neg_to = to.neg();
        let sign_of = |r: &Root| -> Option<i8> {
            if r == to {
                Some(1)
            } else if *r == neg_to {
                Some(-1)
            } else {
                None
            }
        };
        if self.min_len <= 1 {
            if let Some(sign) = sign_of(from) {
                return Some(Connection { chain: vec![from.clone()], kind, target_sign: sign });
            }
        }
        let mut parent: BTreeMap<Root, (Root, Root, Root)> = BTreeMap::new();
        let mut visited: BTreeSet<Root> = BTreeSet::from([from.clone()]);
        let mut queue = VecDeque::from([from.clone()]);
        let rebuild = |parent: &BTreeMap<Root, (Root, Root, Root)>, mut state: Root, last: (Root, Root)| {
            let mut steps = vec![last];
            while let Some((prev, g, d)) = parent.get(&state) {
                steps.push((g.clone(), d.clone()));
                state = prev.clone();
            }
            let mut chain = vec![from.clone()];
            for (g, d) in steps.into_iter().rev() {
                chain.push(g);
                chain.push(d);
            }
            chain
        };
        while let Some(state) = queue.pop_front() {
            for g in &self.increments {
                let even = state.add(g);
                if !self.lambda0.contains(&even) {
                    continue;
                }
                for d in &self.increments {
                    let next = even.add(d);
                    if !self.odd_set.contains(&next) {
                        continue;
                    }
                    if let Some(sign) = sign_of(&next) {
                        let chain = rebuild(&parent, state.clone(), (g.clone(), d.clone()));
                        return Some(Connection { chain, kind, target_sign: sign });
                    }
                    if visited.insert(next.clone()) {
                        parent.insert(next.clone(), (state.clone(), g.clone(), d.clone()));
                        queue.push_back(next);
                    }
                }
            }
        }
        None
    }
}

fn ordered_increments<'a>(zero: Root, roots: impl Iterator<Item = &'a Root>) -> Vec<Root> {
    std::iter::once(zero).chain(roots.cloned()).collect()
}

fn lambda_sets(d: &RootDecomposition) -> (BTreeSet<Root>, BTreeSet<Root>) {
    (d.t_roots().keys().cloned().collect(), d.l0_roots().keys().cloned().collect())
}

/// Shortest connection from `α` to `±β`, or `None` when the search space is exhausted.
pub fn find_connection(d: &RootDecomposition, alpha: &Root, beta: &Root) -> Result<Option<Connection>, ConnectError> {
    for r in [alpha, beta] {
        if !d.in_lambda1(r) {
            return Err(ConnectError::RootUnknown(r.clone()));
        }
    }
    let (lambda1, lambda0) = lambda_sets(d);
    let search = Search {
        odd_set: &lambda1,
        increments: ordered_increments(d.zero_root(), lambda1.iter()),
        lambda0: &lambda0,
        min_len: 1,
    };
    Ok(search.run(alpha, beta, ConnectionKind::Plain))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    /// `Λ¹_α` (or `Λ^γ_α`) for every root, in root order.
    pub reach: BTreeMap<String, Vec<Root>>,
    /// Equivalence classes when the relation is an equivalence, else `None`.
    pub classes: Option<Vec<Vec<Root>>>,
    /// Symmetry of the set the equivalence statement depends on.
    pub hypothesis_symmetric: bool,
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
}

impl ClassReport {
    pub fn is_equivalence(&self) -> bool {
        self.reflexive && self.symmetric && self.transitive
    }

    pub fn class_count(&self) -> Option<usize> {
        self.classes.as_ref().map(Vec::len)
    }
}

fn class_report<F>(roots: &[Root], hypothesis_symmetric: bool, mut related: F) -> ClassReport
where
    F: FnMut(&Root, &Root) -> bool,
{
    let mut relation: BTreeMap<&Root, BTreeSet<&Root>> = BTreeMap::new();
    for a in roots {
        let set = roots.iter().filter(|b| related(a, b)).collect();
        relation.insert(a, set);
    }
    let reflexive = roots.iter().all(|a| relation[a].contains(a));
    let symmetric = roots.iter().all(|a| relation[a].iter().all(|b| relation[b].contains(a)));
    let transitive =
        roots.iter().all(|a| relation[a].iter().all(|b| relation[b].iter().all(|c| relation[a].contains(c))));
    let classes = (reflexive && symmetric && transitive).then(|| {
        let mut seen = BTreeSet::new();
        let mut classes = Vec::new();
        for a in roots {
            if seen.insert(a) {
                let class: Vec<Root> = relation[a].iter().map(|r| (*r).clone()).collect();
                seen.extend(relation[a].iter().copied());
                classes.push(class);
            }
        }
        classes
    });
    let reach =
        relation.iter().map(|(a, set)| (a.to_cli_string(), set.iter().map(|r| (*r).clone()).collect())).collect();
    ClassReport { reach, classes, hypothesis_symmetric, reflexive, symmetric, transitive }
}

/// `Λ¹_α` for every `α`, grouped into classes when the relation is an equivalence.
pub fn connection_classes(d: &RootDecomposition) -> ClassReport {
    let roots = d.lambda1();
    let symmetric = crate::split::is_symmetric(&d.lambda0());
    class_report(&roots, symmetric, |a, b| find_connection(d, a, b).expect("roots come from Λ¹").is_some())
}

/// Symmetric and closed under the connection step.
pub fn is_root_subsystem(d: &RootDecomposition, omega: &[Root]) -> Result<bool, ConnectError> {
    check_subset(d, omega)?;
    let set: BTreeSet<&Root> = omega.iter().collect();
    if !omega.iter().all(|r| set.contains(&r.neg())) {
        return Ok(false);
    }
    let zero = d.zero_root();
    let with_zero: Vec<&Root> = std::iter::once(&zero).chain(omega.iter()).collect();
    for a in &with_zero {
        for b in &with_zero {
            let ab = a.add(b);
            if !d.in_lambda0(&ab) {
                continue;
            }
            for c in &with_zero {
                let abc = ab.add(c);
                if d.in_lambda1(&abc) && !set.contains(&abc) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn check_subset(d: &RootDecomposition, omega: &[Root]) -> Result<(), ConnectError> {
    match omega.iter().find(|r| !d.in_lambda1(r)) {
        Some(bad) => Err(ConnectError::NotSubset(bad.clone())),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSubsystem {
    /// `T_{0,Ω}`
    pub zero_part: Subspace,
    /// `T_{0,Ω} ⊕ V_Ω`
    pub space: Subspace,
    pub is_subsystem: bool,
}

/// Span of `{T_a,T_b,T_c}` over `a + b + c = 0` with `a, b, c ∈ roots`.
fn zero_sum_products(d: &RootDecomposition, roots: &[Root]) -> Subspace {
    let n = d.system().dim();
    let mut span = Subspace::zero(n);
    for a in roots {
        for b in roots {
            let c = a.add(b).neg();
            if roots.contains(&c) {
                let (sa, sb, sc) = (d.t_space(a).unwrap(), d.t_space(b).unwrap(), d.t_space(&c).unwrap());
                span = span.sum_unchecked(&product_space(d.system(), sa, sb, sc));
            }
        }
    }
    span
}

fn direct_sum_of(d: &RootDecomposition, roots: &[Root]) -> Subspace {
    roots
        .iter()
        .filter_map(|r| d.t_roots().get(r))
        .fold(Subspace::zero(d.system().dim()), |acc, s| acc.sum_unchecked(s))
}

/// `T_Ω = T_{0,Ω} ⊕ V_Ω` with `T_{0,Ω}` built over `Ω ∪ {0}`.
pub fn subsystem_from_roots(d: &RootDecomposition, omega: &[Root]) -> Result<RootSubsystem, ConnectError> {
    check_subset(d, omega)?;
    let with_zero: Vec<Root> = std::iter::once(d.zero_root()).chain(omega.iter().cloned()).collect();
    let zero_part = zero_sum_products(d, &with_zero);
    let space = zero_part.sum_unchecked(&direct_sum_of(d, omega));
    let is_subsystem = is_subsystem(d.system(), &space)?;
    Ok(RootSubsystem { zero_part, space, is_subsystem })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JPartition {
    pub lambda_j: Vec<Root>,
    pub lambda_not_j: Vec<Root>,
    pub j: Subspace,
}

impl JPartition {
    pub fn part_of(&self, r: &Root) -> Option<Part> {
        if self.lambda_j.contains(r) {
            Some(Part::J)
        } else if self.lambda_not_j.contains(r) {
            Some(Part::NotJ)
        } else {
            None
        }
    }

    pub fn roots_of(&self, part: Part) -> &[Root] {
        match part {
            Part::J => &self.lambda_j,
            Part::NotJ => &self.lambda_not_j,
        }
    }
}

/// Splits `Λ¹` into roots whose spaces lie in `J` and roots whose spaces meet `J` trivially.
pub fn j_partition(d: &RootDecomposition) -> Result<JPartition, ConnectError> {
    if !d.is_split_certified() {
        return Err(ConnectError::NotSplitCertified);
    }
    let j = j_ideal(d.system());
    let mut lambda_j = Vec::new();
    let mut lambda_not_j = Vec::new();
    for (alpha, space) in d.t_roots() {
        let meet = space.intersect_unchecked(&j);
        if meet == *space {
            lambda_j.push(alpha.clone());
        } else if meet.is_zero() {
            lambda_not_j.push(alpha.clone());
        } else {
            return Err(ConnectError::MixedRootSpace(alpha.clone()));
        }
    }
    Ok(JPartition { lambda_j, lambda_not_j, j })
}

/// Shortest `¬J`-connection from `α` to `±β`.
///
/// For `α ∈ Λ^¬J` the one-element chain `{α}` is admitted. For `α ∈ Λ^J` a
/// chain has at least three entries, so reflexivity there needs a witness such
/// as `{α, 0, 0}`.
pub fn find_nj_connection(
    d: &RootDecomposition,
    p: &JPartition,
    alpha: &Root,
    beta: &Root,
) -> Result<Option<Connection>, ConnectError> {
    let part_a = p.part_of(alpha).ok_or_else(|| ConnectError::RootUnknown(alpha.clone()))?;
    let part_b = p.part_of(beta).ok_or_else(|| ConnectError::RootUnknown(beta.clone()))?;
    if part_a != part_b {
        return Err(ConnectError::DifferentParts { alpha: alpha.clone(), beta: beta.clone() });
    }
    let odd_set: BTreeSet<Root> = p.roots_of(part_a).iter().cloned().collect();
    let lambda0: BTreeSet<Root> = d.l0_roots().keys().cloned().collect();
    let search = Search {
        odd_set: &odd_set,
        increments: ordered_increments(d.zero_root(), p.lambda_not_j.iter()),
        lambda0: &lambda0,
        min_len: if part_a == Part::J { 3 } else { 1 },
    };
    Ok(search.run(alpha, beta, ConnectionKind::NotJ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NjClasses {
    pub not_j: ClassReport,
    pub j: ClassReport,
    /// Hypotheses of the equivalence statement for the `Λ^J` part: `T = {T,T,T}`
    /// and both parts symmetric.
    pub j_hypotheses: bool,
}

pub fn nj_classes(d: &RootDecomposition, p: &JPartition) -> NjClasses {
    let not_j_sym = crate::split::is_symmetric(&p.lambda_not_j);
    let j_sym = crate::split::is_symmetric(&p.lambda_j);
    let spans = crate::triple::derived_space(d.system()).is_full();
    let related = |a: &Root, b: &Root| find_nj_connection(d, p, a, b).expect("same part").is_some();
    NjClasses {
        not_j: class_report(&p.lambda_not_j, not_j_sym, related),
        j: class_report(&p.lambda_j, spans && not_j_sym && j_sym, related),
        j_hypotheses: spans && not_j_sym && j_sym,
    }
}

/// The `¬J`-class of `α` within its part.
pub fn nj_class_of(d: &RootDecomposition, p: &JPartition, alpha: &Root) -> Result<Vec<Root>, ConnectError> {
    let part = p.part_of(alpha).ok_or_else(|| ConnectError::RootUnknown(alpha.clone()))?;
    let mut class = Vec::new();
    for b in p.roots_of(part) {
        if find_nj_connection(d, p, alpha, b)?.is_some() {
            class.push(b.clone());
        }
    }
    Ok(class)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSubspace {
    pub class: Vec<Root>,
    pub space: Subspace,
    /// Ideal test; recorded for every part, required by the Lemma only for `J` with `T = {T,T,T}`.
    pub is_ideal: bool,
    pub is_subsystem: bool,
}

/// `T_{Λ^γ_α} = T_{0,Λ^γ_α} ⊕ V_{Λ^γ_α}` for the `¬J`-class of `α`.
pub fn t_lambda_class(
    d: &RootDecomposition,
    p: &JPartition,
    alpha: &Root,
    part: Part,
) -> Result<ClassSubspace, ConnectError> {
    if p.part_of(alpha) != Some(part) {
        return Err(ConnectError::WrongPart { root: alpha.clone(), part });
    }
    let class = nj_class_of(d, p, alpha)?;
    let space = zero_sum_products(d, &class).sum_unchecked(&direct_sum_of(d, &class));
    let is_ideal = crate::triple::is_ideal(d.system(), &space)?;
    let is_subsystem = is_subsystem(d.system(), &space)?;
    Ok(ClassSubspace { class, space, is_ideal, is_subsystem })
}
