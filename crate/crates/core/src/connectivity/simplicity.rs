//! The simplicity report: every hypothesis of the characterization evaluated
//! independently, the characterization's verdict, and a brute-force verdict
//! computed from the ideal lattice.

use serde::Serialize;

use super::connection::{j_partition, nj_classes, ClassReport, JPartition, NjClasses};
use super::ideals::{
    check_root_multiplicative, enumerate_ideals_maximal_length, lie_annihilator, mutually_annihilating, IdealFamily,
    MultiplicativityReport, DEFAULT_SUBSET_CAP,
};
use super::modules::{simplicity_by_modules, ModuleSimplicity, ModuleVerdict};
use super::ConnectError;
use crate::exact_linear::Subspace;
use crate::split::{is_maximal_length, is_symmetric, Root, RootDecomposition};
use crate::triple::{annihilator, derived_space, is_ideal_unchecked, product_space};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremVerdict {
    Simple,
    NotSimple,
    HypothesesUnmet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BruteForceVerdict {
    Simple,
    NotSimple,
    NotApplicable,
}

impl BruteForceVerdict {
    fn from_bool(simple: bool) -> Self {
        if simple {
            Self::Simple
        } else {
            Self::NotSimple
        }
    }
}

/// Each flag is `None` when it cannot be evaluated, typically because the
/// `J`-partition of `Λ¹` does not exist.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    /// `T = {T,T,T}`
    pub product_spans_t: Option<bool>,
    pub ann_lie_zero: Option<bool>,
    pub root_multiplicative: Option<bool>,
    /// `dim L⁰_α = 1` for every `α ∈ Λ¹`.
    pub dim_l0_alpha_one: Option<bool>,
    pub lambda_j_symmetric: Option<bool>,
    pub lambda_not_j_symmetric: Option<bool>,
    /// `{T0,Tα,Tβ} = {Tα,T0,Tβ} = {Tα,Tβ,T0} = 0` for `α, β ∈ Λ^¬J` with `α + β ≠ 0`.
    pub mixed_zero_products: Option<bool>,
    /// The same products for all `α, β ∈ Λ^¬J`, including opposite pairs.
    pub mixed_zero_products_strict: Option<bool>,
    pub maximal_length: bool,
}

impl Hypotheses {
    pub fn all_hold(&self) -> bool {
        self.maximal_length
            && [
                self.product_spans_t,
                self.ann_lie_zero,
                self.root_multiplicative,
                self.dim_l0_alpha_one,
                self.lambda_j_symmetric,
                self.lambda_not_j_symmetric,
                self.mixed_zero_products,
            ]
            .iter()
            .all(|flag| *flag == Some(true))
    }
}

/// Outcomes of the two intermediate propositions, checked over the enumerated family.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropositionChecks {
    /// Every ideal not contained in `T0 ⊕ J` equals `T`; `None` when its hypotheses fail.
    pub ideal_outside_j_is_t: Option<bool>,
    /// Every nonzero ideal `I ⊊ J` has `J = I ⊕ K` with `K = ⊕_{α∈Λ^{J,I}} T_{-α}` an ideal.
    pub j_splits: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub schema_version: u32,
    pub product_nonzero: bool,
    pub hypotheses: Hypotheses,
    pub partition: Option<JPartition>,
    /// Why the partition could not be formed.
    pub partition_error: Option<String>,
    pub multiplicativity: Option<MultiplicativityReport>,
    pub nj_classes: Option<NjClasses>,
    pub not_j_connected: Option<bool>,
    pub j_connected: Option<bool>,
    /// The family `F`; present for split systems of maximal length.
    pub enumerated_ideals: Option<IdealFamily>,
    /// Primeness relative to `F`, not to the full ideal lattice.
    pub prime_relative_to_family: Option<bool>,
    /// Simplicity read off `F`.
    pub family_verdict: Option<bool>,
    pub module_route: ModuleSimplicity,
    pub propositions: PropositionChecks,
    pub verdict_theorem: TheoremVerdict,
    pub verdict_bruteforce: BruteForceVerdict,
}

impl SimplicityReport {
    /// The brute-force verdict when available, else the characterization's.
    pub fn is_simple(&self) -> Option<bool> {
        match (self.verdict_bruteforce, self.verdict_theorem) {
            (BruteForceVerdict::Simple, _) | (_, TheoremVerdict::Simple) => Some(true),
            (BruteForceVerdict::NotSimple, _) | (_, TheoremVerdict::NotSimple) => Some(false),
            _ => None,
        }
    }
}

fn fully_connected(report: &ClassReport, size: usize) -> bool {
    report.reach.values().all(|reach| reach.len() == size)
}

fn sum_of(d: &RootDecomposition, roots: &[Root]) -> Subspace {
    roots.iter().fold(Subspace::zero(d.dim()), |acc, r| acc.sum_unchecked(&d.t_roots()[r]))
}

/// Returns `(weak, strict)` versions of the mixed zero-product condition.
fn mixed_zero_products(d: &RootDecomposition, p: &JPartition) -> (bool, bool) {
    let t = d.system();
    let t0 = d.t_zero();
    let (mut weak, mut strict) = (true, true);
    for a in &p.lambda_not_j {
        for b in &p.lambda_not_j {
            let (ta, tb) = (&d.t_roots()[a], &d.t_roots()[b]);
            let vanish = product_space(t, t0, ta, tb).is_zero()
                && product_space(t, ta, t0, tb).is_zero()
                && product_space(t, ta, tb, t0).is_zero();
            if !vanish {
                strict = false;
                if !a.add(b).is_zero() {
                    weak = false;
                }
            }
        }
    }
    (weak, strict)
}

fn is_trivial(space: &Subspace, j: &Subspace) -> bool {
    space.is_zero() || space.is_full() || space == j
}

fn family_verdict(family: &IdealFamily, product_nonzero: bool) -> bool {
    product_nonzero
        && family.ideals.iter().filter(|i| i.is_ideal).all(|i| is_trivial(&i.space, &family.j))
        && family.largest_in_t0.is_zero()
        && !family.w_star_nontrivial()
}

fn prime_over(d: &RootDecomposition, family: &IdealFamily) -> bool {
    let ideals: Vec<&Subspace> = family.ideals.iter().filter(|i| i.is_ideal).map(|i| &i.space).collect();
    ideals.iter().all(|i| {
        ideals.iter().all(|k| is_trivial(i, &family.j) || is_trivial(k, &family.j) || !mutually_annihilating(d, i, k))
    })
}

fn j_splits(d: &RootDecomposition, family: &IdealFamily) -> bool {
    let j = &family.j;
    family
        .ideals
        .iter()
        .filter(|i| i.is_ideal && i.decomposes && !i.space.is_zero() && i.space != *j)
        .filter(|i| j.contains_subspace(&i.space).expect("same ambient"))
        .all(|i| {
            let opposite: Vec<Root> = i.roots.iter().map(Root::neg).collect();
            if !opposite.iter().all(|r| d.in_lambda1(r)) {
                return false;
            }
            let k = sum_of(d, &opposite);
            is_ideal_unchecked(d.system(), &k)
                && i.space.intersect_unchecked(&k).is_zero()
                && i.space.sum_unchecked(&k) == *j
        })
}

/// Evaluates the characterization of simple split systems of maximal length
/// and cross-checks it against the ideal lattice.
///
/// A disagreement between any two applicable verdicts is returned as
/// [`ConnectError::VerdictMismatch`].
pub fn simplicity_report(d: &RootDecomposition) -> Result<SimplicityReport, ConnectError> {
    let t = d.system();
    let product = derived_space(t);
    let product_nonzero = !product.is_zero();
    let maximal_length = is_maximal_length(d);
    let mut hypotheses = Hypotheses {
        product_spans_t: Some(product.is_full()),
        dim_l0_alpha_one: Some(d.lambda1().iter().all(|a| d.l0_space(a).is_some_and(|s| s.rank() == 1))),
        maximal_length,
        ..Hypotheses::default()
    };
    let (partition, partition_error) = match j_partition(d) {
        Ok(p) => (Some(p), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let mut multiplicativity = None;
    let mut classes = None;
    let (mut not_j_connected, mut j_connected) = (None, None);
    if let Some(p) = &partition {
        hypotheses.ann_lie_zero = Some(lie_annihilator(d, p).space.is_zero());
        hypotheses.lambda_j_symmetric = Some(is_symmetric(&p.lambda_j));
        hypotheses.lambda_not_j_symmetric = Some(is_symmetric(&p.lambda_not_j));
        let (weak, strict) = mixed_zero_products(d, p);
        hypotheses.mixed_zero_products = Some(weak);
        hypotheses.mixed_zero_products_strict = Some(strict);
        if maximal_length {
            let report = check_root_multiplicative(d, p)?;
            hypotheses.root_multiplicative = Some(report.passed);
            multiplicativity = Some(report);
        }
        let nj = nj_classes(d, p);
        not_j_connected = Some(fully_connected(&nj.not_j, p.lambda_not_j.len()));
        j_connected = Some(fully_connected(&nj.j, p.lambda_j.len()));
        classes = Some(nj);
    }

    let family = if maximal_length && d.is_split_certified() {
        match enumerate_ideals_maximal_length(d, DEFAULT_SUBSET_CAP) {
            Ok(f) => Some(f),
            Err(ConnectError::TooManyRoots { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let prime = family.as_ref().map(|f| prime_over(d, f));
    let by_family = family.as_ref().map(|f| family_verdict(f, product_nonzero));
    let module_route = simplicity_by_modules(t);

    let mut propositions = PropositionChecks::default();
    if let (Some(f), Some(p)) = (&family, &partition) {
        let h = &hypotheses;
        if h.product_spans_t == Some(true)
            && h.ann_lie_zero == Some(true)
            && h.root_multiplicative == Some(true)
            && h.dim_l0_alpha_one == Some(true)
            && h.mixed_zero_products == Some(true)
            && not_j_connected == Some(true)
        {
            let t0_j = d.t_zero().sum_unchecked(&f.j);
            propositions.ideal_outside_j_is_t = Some(
                f.ideals
                    .iter()
                    .filter(|i| i.is_ideal && !t0_j.contains_subspace(&i.space).expect("same ambient"))
                    .all(|i| i.space.is_full()),
            );
        }
        if h.product_spans_t == Some(true)
            && annihilator(t).is_zero()
            && h.root_multiplicative == Some(true)
            && h.lambda_j_symmetric == Some(true)
            && h.lambda_not_j_symmetric == Some(true)
            && h.mixed_zero_products == Some(true)
            && j_connected == Some(true)
        {
            debug_assert_eq!(f.j, p.j);
            propositions.j_splits = Some(j_splits(d, f));
        }
    }

    let verdict_bruteforce = match (by_family, module_route.verdict) {
        (Some(a), ModuleVerdict::Simple | ModuleVerdict::NotSimple) => {
            if a != (module_route.verdict == ModuleVerdict::Simple) {
                return Err(ConnectError::VerdictMismatch {
                    detail: format!("ideal family says simple={a}, module route says {:?}", module_route.verdict),
                });
            }
            BruteForceVerdict::from_bool(a)
        }
        (Some(a), ModuleVerdict::Undetermined) => BruteForceVerdict::from_bool(a),
        (None, ModuleVerdict::Simple) => BruteForceVerdict::Simple,
        (None, ModuleVerdict::NotSimple) => BruteForceVerdict::NotSimple,
        (None, ModuleVerdict::Undetermined) => BruteForceVerdict::NotApplicable,
    };
    let verdict_theorem = if hypotheses.all_hold() {
        let connected = not_j_connected == Some(true) && j_connected == Some(true);
        match prime {
            Some(prime) if prime && connected => TheoremVerdict::Simple,
            Some(_) => TheoremVerdict::NotSimple,
            None => TheoremVerdict::HypothesesUnmet,
        }
    } else {
        TheoremVerdict::HypothesesUnmet
    };
    let agree = !matches!(
        (verdict_theorem, verdict_bruteforce),
        (TheoremVerdict::Simple, BruteForceVerdict::NotSimple) | (TheoremVerdict::NotSimple, BruteForceVerdict::Simple)
    );
    if !agree {
        return Err(ConnectError::VerdictMismatch {
            detail: format!("characterization says {verdict_theorem:?}, brute force says {verdict_bruteforce:?}"),
        });
    }

    Ok(SimplicityReport {
        schema_version: 1,
        product_nonzero,
        hypotheses,
        partition,
        partition_error,
        multiplicativity,
        nj_classes: classes,
        not_j_connected,
        j_connected,
        enumerated_ideals: family,
        prime_relative_to_family: prime,
        family_verdict: by_family,
        module_route,
        propositions,
        verdict_theorem,
        verdict_bruteforce,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::corpus_decomposition;

    #[test]
    fn sl2_is_simple_by_every_route() {
        let r = simplicity_report(&corpus_decomposition("c3-sl2")).unwrap();
        assert!(r.hypotheses.all_hold());
        assert_eq!(r.hypotheses.mixed_zero_products_strict, Some(false));
        assert_eq!(r.verdict_theorem, TheoremVerdict::Simple);
        assert_eq!(r.verdict_bruteforce, BruteForceVerdict::Simple);
        assert_eq!(r.module_route.verdict, ModuleVerdict::Simple);
        assert_eq!(r.propositions.ideal_outside_j_is_t, Some(true));
    }

    #[test]
    fn zero_system_is_not_simple() {
        let r = simplicity_report(&corpus_decomposition("c1-zero-1")).unwrap();
        assert!(!r.product_nonzero);
        assert_eq!(r.verdict_theorem, TheoremVerdict::HypothesesUnmet);
        assert_eq!(r.verdict_bruteforce, BruteForceVerdict::NotSimple);
    }

    #[test]
    fn sl2_sum_is_neither_prime_nor_simple() {
        let r = simplicity_report(&corpus_decomposition("c4-sl2-sum")).unwrap();
        assert!(r.hypotheses.all_hold());
        assert_eq!(r.prime_relative_to_family, Some(false));
        assert_eq!(r.not_j_connected, Some(false));
        assert_eq!(r.verdict_theorem, TheoremVerdict::NotSimple);
        assert_eq!(r.verdict_bruteforce, BruteForceVerdict::NotSimple);
    }

    #[test]
    fn adjoint_hemisemidirect_falls_back_to_modules() {
        let r = simplicity_report(&corpus_decomposition("c5-hs-adjoint")).unwrap();
        assert!(r.partition_error.as_deref().unwrap().starts_with("E_MIXED_ROOT_SPACE"));
        assert!(!r.hypotheses.maximal_length);
        assert!(r.enumerated_ideals.is_none());
        assert_eq!(r.verdict_theorem, TheoremVerdict::HypothesesUnmet);
        assert_eq!(r.verdict_bruteforce, BruteForceVerdict::Simple);
    }

    #[test]
    fn natural_hemisemidirect_has_nonzero_j_and_is_simple() {
        let r = simplicity_report(&corpus_decomposition("c6-hs-natural")).unwrap();
        assert_eq!(r.partition.as_ref().unwrap().j.rank(), 2);
        assert!(r.hypotheses.all_hold());
        assert_eq!(r.j_connected, Some(true));
        assert_eq!(r.verdict_theorem, TheoremVerdict::Simple);
        assert_eq!(r.verdict_bruteforce, BruteForceVerdict::Simple);
        assert_eq!(r.is_simple(), Some(true));
    }
}
