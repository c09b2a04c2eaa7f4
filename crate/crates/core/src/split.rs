//! Root-space decomposition of a triple system and of `L0` relative to a
//! chosen abelian subalgebra `H0`, together with the split axioms and the
//! grading checks that follow from them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::embedding::{masa_check, EmbeddingError, StandardEmbedding};
use crate::exact_linear::{
    add_scaled, common_eigenspaces, format_scalar, is_zero_vector, parse_scalar, zero_vector, LinalgError, Matrix,
    Scalar, Subspace, Vector,
};
use crate::triple::{is_ideal_unchecked, product_space, TripleSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("E_NOT_ABELIAN: the supplied elements do not span an abelian subalgebra of L0")]
    NotAbelian,
    #[error("E_NOT_SPLIT: T is not split over Q with respect to this MASA ({0})")]
    NotSplit(LinalgError),
    #[error("E_SYSTEM_MISMATCH: the embedding was built from a different triple system")]
    SystemMismatch,
    #[error("E_PROPORTIONAL: roots {alpha} and {beta} are proportional")]
    Proportional { alpha: Root, beta: Root },
    #[error("E_ZERO_ROOT: a nonzero root is required")]
    ZeroRoot,
    #[error("E_ROOT_UNKNOWN: {0} is not a recorded root")]
    RootUnknown(Root),
    #[error("E_NOT_IDEAL: the subspace is not an ideal")]
    NotIdeal,
    #[error("E_DECOMPOSITION_FAILS: the ideal is not the sum of its root-space intersections")]
    DecompositionFails,
    #[error("E_BAD_ROOT: cannot parse {0:?} as a root tuple")]
    BadRoot(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A root functional, given by its values on the ordered MASA basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(pub Vec<Scalar>);

impl Root {
    pub fn zero(rank: usize) -> Self {
        Root(zero_vector(rank))
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.0)
    }

    pub fn values(&self) -> &[Scalar] {
        &self.0
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn add3(&self, b: &Root, c: &Root) -> Root {
        self.add(b).add(c)
    }

    /// Comma-separated values, e.g. `-2,0`.
    pub fn to_cli_string(&self) -> String {
        self.0.iter().map(format_scalar).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_cli_string())
    }
}

impl FromStr for Root {
    type Err = SplitError;

    /// Accepts `a,b,c` with optional surrounding parentheses and spaces after commas.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let trimmed = text.trim();
        let inner = trimmed.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(trimmed);
        if inner.trim().is_empty() {
            return Ok(Root(Vec::new()));
        }
        inner
            .split(',')
            .map(|part| parse_scalar(part.trim()))
            .collect::<Result<Vec<_>, _>>()
            .map(Root)
            .map_err(|_| SplitError::BadRoot(text.to_string()))
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::exact_linear::scalar::serde_vector::serialize(&self.0, s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDecomposition {
    pub(crate) system: TripleSystem,
    pub(crate) embedding: StandardEmbedding,
    pub(crate) masa: Vec<Vector>,
    pub(crate) t_zero: Subspace,
    pub(crate) t_roots: BTreeMap<Root, Subspace>,
    pub(crate) l0_zero: Subspace,
    pub(crate) l0_roots: BTreeMap<Root, Subspace>,
    pub(crate) split_certified: bool,
}

impl RootDecomposition {
    pub fn system(&self) -> &TripleSystem {
        &self.system
    }

    pub fn embedding(&self) -> &StandardEmbedding {
        &self.embedding
    }

    pub fn masa(&self) -> &[Vector] {
        &self.masa
    }

    pub fn masa_rank(&self) -> usize {
        self.masa.len()
    }

    pub fn t_zero(&self) -> &Subspace {
        &self.t_zero
    }

    /// `Λ¹` with root spaces of `T`.
    pub fn t_roots(&self) -> &BTreeMap<Root, Subspace> {
        &self.t_roots
    }

    pub fn l0_zero(&self) -> &Subspace {
        &self.l0_zero
    }

    /// `Λ⁰` with root spaces of `L0`.
    pub fn l0_roots(&self) -> &BTreeMap<Root, Subspace> {
        &self.l0_roots
    }

    pub fn is_split_certified(&self) -> bool {
        self.split_certified
    }

    pub fn zero_root(&self) -> Root {
        Root::zero(self.masa.len())
    }

    pub fn lambda1(&self) -> Vec<Root> {
        self.t_roots.keys().cloned().collect()
    }

    pub fn lambda0(&self) -> Vec<Root> {
        self.l0_roots.keys().cloned().collect()
    }

    pub fn in_lambda1(&self, r: &Root) -> bool {
        self.t_roots.contains_key(r)
    }

    pub fn in_lambda0(&self, r: &Root) -> bool {
        self.l0_roots.contains_key(r)
    }

    /// Space of `T` for a root in `Λ¹ ∪ {0}`; `None` for anything else.
    pub fn t_space(&self, r: &Root) -> Option<&Subspace> {
        if r.is_zero() {
            Some(&self.t_zero)
        } else {
            self.t_roots.get(r)
        }
    }

    pub fn l0_space(&self, r: &Root) -> Option<&Subspace> {
        if r.is_zero() {
            Some(&self.l0_zero)
        } else {
            self.l0_roots.get(r)
        }
    }

    /// Root table `(root, dim T_root)` in root order.
    pub fn root_table(&self) -> Vec<(Root, usize)> {
        self.t_roots.iter().map(|(r, s)| (r.clone(), s.rank())).collect()
    }

    pub fn l0_root_table(&self) -> Vec<(Root, usize)> {
        self.l0_roots.iter().map(|(r, s)| (r.clone(), s.rank())).collect()
    }

    pub fn dim(&self) -> usize {
        self.system.dim()
    }
}

fn blocks_to_roots(
    dim: usize,
    rank: usize,
    ops: &[Matrix],
) -> Result<(Subspace, BTreeMap<Root, Subspace>), SplitError> {
    let blocks = common_eigenspaces(dim, ops).map_err(SplitError::NotSplit)?;
    let mut zero = Subspace::zero(dim);
    let mut roots = BTreeMap::new();
    for block in blocks {
        let root = Root(block.eigenvalues);
        debug_assert_eq!(root.0.len(), rank);
        if root.is_zero() {
            zero = block.space;
        } else {
            roots.insert(root, block.space);
        }
    }
    Ok((zero, roots))
}

/// Simultaneous eigenspaces of right multiplication by the MASA on `T` and on `L0`.
pub fn decompose(t: &TripleSystem, e: &StandardEmbedding, masa: &[Vector]) -> Result<RootDecomposition, SplitError> {
    if e.base() != t {
        return Err(SplitError::SystemMismatch);
    }
    if !masa_check(e, masa)?.abelian {
        return Err(SplitError::NotAbelian);
    }
    let t_ops: Vec<Matrix> = masa.iter().map(|h| e.right_action_on_t(h)).collect::<Result<_, _>>()?;
    let l0_ops: Vec<Matrix> = masa.iter().map(|h| e.right_action_on_l0(h)).collect::<Result<_, _>>()?;
    let (t_zero, t_roots) = blocks_to_roots(t.dim(), masa.len(), &t_ops)?;
    let (l0_zero, l0_roots) = blocks_to_roots(e.l0_dim(), masa.len(), &l0_ops)?;
    let mut d = RootDecomposition {
        system: t.clone(),
        embedding: e.clone(),
        masa: masa.to_vec(),
        t_zero,
        t_roots,
        l0_zero,
        l0_roots,
        split_certified: false,
    };
    d.split_certified = check_split(&d).passed();
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    /// Condition (1): `T = T0 ⊕ ⊕ T_α`.
    pub direct_sum: bool,
    /// Condition (2): `{T0,T0,T0} = 0`.
    pub t0_cube_zero: bool,
    /// Condition (3): `{T_α,T_-α,T0} = 0` for every `α` with `-α ∈ Λ¹`.
    pub opposite_pairs_zero: bool,
    pub failures: Vec<String>,
}

impl SplitReport {
    pub fn passed(&self) -> bool {
        self.direct_sum && self.t0_cube_zero && self.opposite_pairs_zero
    }
}

pub fn check_split(d: &RootDecomposition) -> SplitReport {
    let n = d.dim();
    let mut failures = Vec::new();
    let mut total = d.t_zero.clone();
    let mut rank_sum = d.t_zero.rank();
    for space in d.t_roots.values() {
        total = total.sum_unchecked(space);
        rank_sum += space.rank();
    }
    let direct_sum = total.is_full() && rank_sum == n;
    if !direct_sum {
        failures.push("condition (1): root spaces do not form a direct sum equal to T".to_string());
    }
    let t0_cube_zero = product_space(&d.system, &d.t_zero, &d.t_zero, &d.t_zero).is_zero();
    if !t0_cube_zero {
        failures.push("condition (2): {T0,T0,T0} != 0".to_string());
    }
    let mut opposite_pairs_zero = true;
    for (alpha, space) in &d.t_roots {
        if let Some(opposite) = d.t_roots.get(&alpha.neg()) {
            if !product_space(&d.system, space, opposite, &d.t_zero).is_zero() {
                opposite_pairs_zero = false;
                failures.push(format!("condition (3): {{T_a,T_-a,T0}} != 0 for a = {alpha}"));
            }
        }
    }
    SplitReport { direct_sum, t0_cube_zero, opposite_pairs_zero, failures }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingViolation {
    /// Lemma part, 1 to 5.
    pub part: u8,
    pub roots: Vec<Root>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingLemmaReport {
    /// `parts[k]` is true when part `k + 1` holds.
    pub parts: [bool; 5],
    pub violations: Vec<GradingViolation>,
}

impl GradingLemmaReport {
    pub fn passed(&self) -> bool {
        self.parts.iter().all(|&p| p)
    }
}

/// Element of the full algebra `L0 ⊕ L1` in the embedding's coordinates.
fn lift_t(e: &StandardEmbedding, t: &[Scalar]) -> Vector {
    let mut v = zero_vector(e.l0_dim());
    v.extend_from_slice(t);
    v
}

fn lift_l0(e: &StandardEmbedding, l: &[Scalar]) -> Vector {
    let mut v = l.to_vec();
    v.extend(zero_vector(e.dim()));
    v
}

fn lands_in(product: &[Scalar], block: std::ops::Range<usize>, target: Option<&Subspace>, other_zero: bool) -> bool {
    if !other_zero {
        return false;
    }
    let part = &product[block];
    match target {
        Some(space) => space.contains_unchecked(part),
        None => is_zero_vector(part),
    }
}

/// The five containments of the grading Lemma over every pair or triple of
/// roots in `Λ ∪ {0}`. A sum that is neither zero nor recorded forces the
/// product to vanish.
pub fn check_gradings(d: &RootDecomposition) -> GradingLemmaReport {
    let e = &d.embedding;
    let algebra = e.algebra();
    let m = e.l0_dim();
    let total = m + d.dim();
    let zero = d.zero_root();
    let t_keys: Vec<Root> = std::iter::once(zero.clone()).chain(d.t_roots.keys().cloned()).collect();
    let l_keys: Vec<Root> = std::iter::once(zero.clone()).chain(d.l0_roots.keys().cloned()).collect();
    let mut violations = Vec::new();
    let is_zero_block = |v: &[Scalar], r: std::ops::Range<usize>| v[r].iter().all(Zero::is_zero);

    // part 1: [T_a, T_b] ⊆ L0_{a+b}
    for a in &t_keys {
        for b in &t_keys {
            let target = d.l0_space(&a.add(b));
            let ok = d.t_space(a).unwrap().basis().iter().all(|x| {
                d.t_space(b).unwrap().basis().iter().all(|y| {
                    let p = algebra.product(&lift_t(e, x), &lift_t(e, y));
                    lands_in(&p, 0..m, target, is_zero_block(&p, m..total))
                })
            });
            if !ok {
                violations.push(GradingViolation { part: 1, roots: vec![a.clone(), b.clone()] });
            }
        }
    }
    // parts 2 and 3: [L0_g, T_a] ⊆ T_{g+a} and [T_a, L0_g] ⊆ T_{a+g}
    for g in &l_keys {
        for a in &t_keys {
            let target = d.t_space(&g.add(a));
            let (mut left_ok, mut right_ok) = (true, true);
            for l in d.l0_space(g).unwrap().basis() {
                for x in d.t_space(a).unwrap().basis() {
                    let p = algebra.product(&lift_l0(e, l), &lift_t(e, x));
                    left_ok &= lands_in(&p, m..total, target, is_zero_block(&p, 0..m));
                    let q = algebra.product(&lift_t(e, x), &lift_l0(e, l));
                    right_ok &= lands_in(&q, m..total, target, is_zero_block(&q, 0..m));
                }
            }
            if !left_ok {
                violations.push(GradingViolation { part: 2, roots: vec![g.clone(), a.clone()] });
            }
            if !right_ok {
                violations.push(GradingViolation { part: 3, roots: vec![a.clone(), g.clone()] });
            }
        }
    }
    // part 4: [L0_g, L0_h] ⊆ L0_{g+h}
    for g in &l_keys {
        for h in &l_keys {
            let target = d.l0_space(&g.add(h));
            let ok = d.l0_space(g).unwrap().basis().iter().all(|x| {
                d.l0_space(h).unwrap().basis().iter().all(|y| {
                    let p = algebra.product(&lift_l0(e, x), &lift_l0(e, y));
                    lands_in(&p, 0..m, target, is_zero_block(&p, m..total))
                })
            });
            if !ok {
                violations.push(GradingViolation { part: 4, roots: vec![g.clone(), h.clone()] });
            }
        }
    }
    // part 5: {T_a, T_b, T_c} ⊆ T_{a+b+c}
    for a in &t_keys {
        for b in &t_keys {
            for c in &t_keys {
                let target = d.t_space(&a.add3(b, c));
                let span =
                    product_space(&d.system, d.t_space(a).unwrap(), d.t_space(b).unwrap(), d.t_space(c).unwrap());
                let ok = match target {
                    Some(space) => space.contains_subspace(&span).expect("same ambient"),
                    None => span.is_zero(),
                };
                if !ok {
                    violations.push(GradingViolation { part: 5, roots: vec![a.clone(), b.clone(), c.clone()] });
                }
            }
        }
    }
    let mut parts = [true; 5];
    for v in &violations {
        parts[usize::from(v.part - 1)] = false;
    }
    GradingLemmaReport { parts, violations }
}

/// `[A, B] ⊆ L0` for subspaces of `T`.
pub fn bracket_span(e: &StandardEmbedding, a: &Subspace, b: &Subspace) -> Subspace {
    let vectors: Vec<Vector> =
        a.basis().iter().flat_map(|x| b.basis().iter().map(move |y| e.t_bracket(x, y))).collect();
    Subspace::span(e.l0_dim(), vectors).expect("L0 coordinates")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H0Report {
    /// `span H0 = [T0,T0] + Σ [T_α,T_-α]`
    pub h0_equals_bracket_span: bool,
    /// `[T0,[T0,T0]] = 0`
    pub t0_bracket_cube_zero: bool,
    pub h0: Subspace,
    pub bracket_span: Subspace,
}

impl H0Report {
    pub fn passed(&self) -> bool {
        self.h0_equals_bracket_span && self.t0_bracket_cube_zero
    }
}

pub fn check_h0_identities(d: &RootDecomposition) -> H0Report {
    let e = &d.embedding;
    let h0 = Subspace::span(e.l0_dim(), d.masa.iter().cloned()).expect("MASA in L0");
    let t0_square = bracket_span(e, &d.t_zero, &d.t_zero);
    let mut span = t0_square.clone();
    for (alpha, space) in &d.t_roots {
        if let Some(opposite) = d.t_roots.get(&alpha.neg()) {
            span = span.sum_unchecked(&bracket_span(e, space, opposite));
        }
    }
    let algebra = e.algebra();
    let t0_bracket_cube_zero = d
        .t_zero
        .basis()
        .iter()
        .all(|x| t0_square.basis().iter().all(|l| is_zero_vector(&algebra.product(&lift_t(e, x), &lift_l0(e, l)))));
    H0Report { h0_equals_bracket_span: h0 == span, t0_bracket_cube_zero, h0, bracket_span: span }
}

pub fn is_symmetric<'a, I>(roots: I) -> bool
where
    I: IntoIterator<Item = &'a Root> + Clone,
{
    let set: std::collections::BTreeSet<&Root> = roots.clone().into_iter().collect();
    roots.into_iter().all(|r| set.contains(&r.neg()))
}

/// Every nonzero root space of `T` is one-dimensional.
pub fn is_maximal_length(d: &RootDecomposition) -> bool {
    d.t_roots.values().all(|s| s.rank() == 1)
}

/// `h ∈ span H0` with `α(h) ≠ 0` and `β(h) = 0`, in `L0` coordinates.
pub fn separating_element(d: &RootDecomposition, alpha: &Root, beta: &Root) -> Result<Vector, SplitError> {
    let k = d.masa_rank();
    for r in [alpha, beta] {
        if r.0.len() != k {
            return Err(LinalgError::DimensionMismatch { expected: k, found: r.0.len() }.into());
        }
    }
    if alpha.is_zero() {
        return Err(SplitError::ZeroRoot);
    }
    let pair = Matrix::from_rows(k, &[alpha.0.clone(), beta.0.clone()])?;
    if pair.rank() < 2 {
        return Err(SplitError::Proportional { alpha: alpha.clone(), beta: beta.clone() });
    }
    let beta_kernel =
        if beta.is_zero() { Subspace::full(k) } else { Matrix::from_rows(k, std::slice::from_ref(&beta.0))?.kernel() };
    let coeffs = beta_kernel
        .basis()
        .iter()
        .find(|c| !crate::exact_linear::dot(c, &alpha.0).is_zero())
        .expect("alpha is independent of beta")
        .clone();
    let mut h = zero_vector(d.embedding.l0_dim());
    for (c, basis) in coeffs.iter().zip(&d.masa) {
        add_scaled(&mut h, c, basis);
    }
    Ok(h)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealDecomposition {
    pub zero_part: Subspace,
    pub roots: Vec<Root>,
}

/// Splits an ideal along the root decomposition and checks that the pieces
/// rebuild it.
pub fn ideal_root_decomposition(d: &RootDecomposition, ideal: &Subspace) -> Result<IdealDecomposition, SplitError> {
    if ideal.ambient_dim() != d.dim() {
        return Err(LinalgError::DimensionMismatch { expected: d.dim(), found: ideal.ambient_dim() }.into());
    }
    if !is_ideal_unchecked(&d.system, ideal) {
        return Err(SplitError::NotIdeal);
    }
    let zero_part = ideal.intersect_unchecked(&d.t_zero);
    let mut rebuilt = zero_part.clone();
    let mut roots = Vec::new();
    let maximal = is_maximal_length(d);
    for (alpha, space) in &d.t_roots {
        let piece = ideal.intersect_unchecked(space);
        if !piece.is_zero() {
            if maximal && piece != *space {
                return Err(SplitError::DecompositionFails);
            }
            rebuilt = rebuilt.sum_unchecked(&piece);
            roots.push(alpha.clone());
        }
    }
    if rebuilt != *ideal {
        return Err(SplitError::DecompositionFails);
    }
    Ok(IdealDecomposition { zero_part, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::{int, unit_vector};

    pub(crate) fn sl2_decomposition() -> RootDecomposition {
        let t = crate::fixtures::sl2_derived();
        let e = crate::embedding::standard_embedding(&t).unwrap();
        let h = e.embed_pair(&unit_vector(3, 0), &unit_vector(3, 2)).unwrap();
        decompose(&t, &e, &[h]).unwrap()
    }

    fn r(xs: &[i64]) -> Root {
        Root(xs.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn root_parsing() {
        assert_eq!("2,-1/2".parse::<Root>().unwrap(), Root(vec![int(2), crate::exact_linear::frac(-1, 2)]));
        assert_eq!("(2, 0)".parse::<Root>().unwrap(), r(&[2, 0]));
        assert!("2;0".parse::<Root>().is_err());
        assert_eq!(r(&[-2, 0]).to_string(), "(-2,0)");
    }

    #[test]
    fn sl2_cartan_decomposition() {
        let d = sl2_decomposition();
        assert!(d.is_split_certified());
        assert_eq!(d.t_zero().rank(), 1);
        assert_eq!(d.lambda1(), vec![r(&[-2]), r(&[2])]);
        assert_eq!(d.t_roots()[&r(&[-2])].basis(), &[unit_vector(3, 0)]);
        assert!(check_gradings(&d).passed());
        assert!(check_h0_identities(&d).passed());
        assert!(is_maximal_length(&d));
        assert!(is_symmetric(&d.lambda1()));
        assert!(!is_symmetric(&[r(&[2])]));
        let t0 = d.t_zero().clone();
        assert!(matches!(ideal_root_decomposition(&d, &t0), Err(SplitError::NotIdeal)));
        let full = ideal_root_decomposition(&d, &Subspace::full(3)).unwrap();
        assert_eq!(full.roots.len(), 2);
        assert!(ideal_root_decomposition(&d, &Subspace::zero(3)).unwrap().roots.is_empty());
    }

    #[test]
    fn empty_masa_keeps_everything_in_t0() {
        let t = crate::fixtures::sl2_derived();
        let e = crate::embedding::standard_embedding(&t).unwrap();
        let d = decompose(&t, &e, &[]).unwrap();
        assert!(d.t_zero().is_full());
        assert!(d.t_roots().is_empty());
        let report = check_split(&d);
        assert!(!report.t0_cube_zero);
        assert!(report.failures[0].contains("condition (2)"));
    }

    #[test]
    fn separating_coordinate_functionals() {
        let d = sl2_decomposition();
        assert!(matches!(separating_element(&d, &r(&[2]), &r(&[-2])), Err(SplitError::Proportional { .. })));
        assert!(matches!(separating_element(&d, &r(&[0]), &r(&[2])), Err(SplitError::ZeroRoot)));
    }
}
