//! Root-multiplicativity, the Lie-annihilator, and the ideal family used to
//! decide simplicity for systems of maximal length.

use rayon::prelude::*;
use serde::Serialize;

use super::connection::JPartition;
use super::ConnectError;
use crate::exact_linear::{Matrix, Subspace, Vector};
use crate::split::{ideal_root_decomposition, is_maximal_length, Root, RootDecomposition};
use crate::triple::{
    annihilator, ideal_closure_unchecked, is_ideal_unchecked, j_ideal, kernel_of_stack, largest_ideal_within,
    product_space,
};

pub const DEFAULT_SUBSET_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicativityFailure {
    /// 1 or 2, the condition of the definition that failed.
    pub condition: u8,
    /// `(α, β, γ)` as named in the condition.
    pub roots: [Root; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicativityReport {
    pub passed: bool,
    pub triples_checked: usize,
    pub failures: Vec<MultiplicativityFailure>,
}

/// Checks both nonvanishing conditions of root-multiplicativity.
///
/// (1) `α, β, γ ∈ Λ^¬J ∪ {0}`, `α+β ∈ Λ⁰`, `α+β+γ ∈ Λ¹` gives `{T_α,T_β,T_γ} ≠ 0`.
/// (2) `α, β ∈ Λ^¬J ∪ {0}`, `γ ∈ Λ^J`, `α+β ∈ Λ⁰`, `α+β+γ ∈ Λ^J` gives `{T_γ,T_β,T_α} ≠ 0`.
pub fn check_root_multiplicative(
    d: &RootDecomposition,
    p: &JPartition,
) -> Result<MultiplicativityReport, ConnectError> {
    if !is_maximal_length(d) {
        return Err(ConnectError::NotMaximalLength);
    }
    let t = d.system();
    let not_j: Vec<Root> = std::iter::once(d.zero_root()).chain(p.lambda_not_j.iter().cloned()).collect();
    let space = |r: &Root| d.t_space(r).expect("recorded root");
    let mut failures = Vec::new();
    let mut triples_checked = 0;
    for a in &not_j {
        for b in &not_j {
            let ab = a.add(b);
            if !d.in_lambda0(&ab) {
                continue;
            }
            for c in &not_j {
                if d.in_lambda1(&ab.add(c)) {
                    triples_checked += 1;
                    if product_space(t, space(a), space(b), space(c)).is_zero() {
                        failures
                            .push(MultiplicativityFailure { condition: 1, roots: [a.clone(), b.clone(), c.clone()] });
                    }
                }
            }
            for c in &p.lambda_j {
                if p.lambda_j.contains(&ab.add(c)) {
                    triples_checked += 1;
                    if product_space(t, space(c), space(b), space(a)).is_zero() {
                        failures
                            .push(MultiplicativityFailure { condition: 2, roots: [a.clone(), b.clone(), c.clone()] });
                    }
                }
            }
        }
    }
    Ok(MultiplicativityReport { passed: failures.is_empty(), triples_checked, failures })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieAnnihilator {
    pub space: Subspace,
    /// `Ann(T) ⊆ Ann_Lie(T)`
    pub contains_annihilator: bool,
}

/// Elements killed by every product with `U = T0 ⊕ ⊕_{α∈Λ^¬J} T_α` in the other two slots.
pub fn lie_annihilator(d: &RootDecomposition, p: &JPartition) -> LieAnnihilator {
    let t = d.system();
    let n = t.dim();
    let u = p.lambda_not_j.iter().fold(d.t_zero().clone(), |acc, r| acc.sum_unchecked(&d.t_roots()[r]));
    let mut maps = Vec::new();
    let units: Vec<Vector> = (0..n).map(|i| crate::exact_linear::unit_vector(n, i)).collect();
    for a in u.basis() {
        for b in u.basis() {
            let cols = |f: &dyn Fn(&Vector) -> Vector| {
                let columns: Vec<Vector> = units.iter().map(f).collect();
                Matrix::from_columns(n, &columns).expect("products have length n")
            };
            maps.push(cols(&|x| t.product(x, a, b)));
            maps.push(cols(&|x| t.product(a, x, b)));
            maps.push(cols(&|x| t.product(a, b, x)));
        }
    }
    let space = kernel_of_stack(n, maps.iter());
    let contains_annihilator = space.contains_subspace(&annihilator(t)).expect("same ambient");
    LieAnnihilator { space, contains_annihilator }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledIdeal {
    /// Every construction in the family that produced this subspace.
    pub labels: Vec<String>,
    pub space: Subspace,
    pub is_ideal: bool,
    /// `I = (I∩T0) ⊕ ⊕(I∩T_α)` rebuilt exactly.
    pub decomposes: bool,
    /// `Λ^I`, when the decomposition succeeded.
    pub roots: Vec<Root>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealFamily {
    pub ideals: Vec<LabeledIdeal>,
    pub j: Subspace,
    /// Largest ideal of `T` inside `T0`.
    pub largest_in_t0: Subspace,
    /// Largest `W ⊆ T0` with `J + W` an ideal.
    pub w_star: Subspace,
}

impl IdealFamily {
    /// Members other than `0`, `J` and `T`.
    pub fn nontrivial(&self) -> impl Iterator<Item = &LabeledIdeal> {
        let n = self.j.ambient_dim();
        self.ideals.iter().filter(move |i| {
            !i.space.is_zero() && !i.space.is_full() && i.space != self.j && i.space.ambient_dim() == n
        })
    }

    /// `W*` contributes a new ideal only when it is not already inside `J`.
    pub fn w_star_nontrivial(&self) -> bool {
        !self.j.contains_subspace(&self.w_star).expect("same ambient")
    }
}

/// The family `F`: `0`, `T`, `J`, closures of sums of root spaces over every
/// nonempty subset of `Λ¹`, closures of the basis vectors of `T0`, the largest
/// ideal in `T0`, and `J + W*`.
pub fn enumerate_ideals_maximal_length(d: &RootDecomposition, cap: usize) -> Result<IdealFamily, ConnectError> {
    if !d.is_split_certified() {
        return Err(ConnectError::NotSplitCertified);
    }
    if !is_maximal_length(d) {
        return Err(ConnectError::NotMaximalLength);
    }
    let roots = d.lambda1();
    if roots.len() > cap {
        return Err(ConnectError::TooManyRoots { count: roots.len(), cap });
    }
    let t = d.system();
    let n = t.dim();
    let j = j_ideal(t);
    let largest_in_t0 = largest_ideal_within(t, d.t_zero(), &Subspace::zero(n))?;
    let w_star = largest_ideal_within(t, d.t_zero(), &j)?;

    let mut candidates: Vec<(String, Subspace)> =
        vec![("0".to_string(), Subspace::zero(n)), ("T".to_string(), Subspace::full(n)), ("J".to_string(), j.clone())];
    let subsets: Vec<(String, Subspace)> = (1u64..(1u64 << roots.len()))
        .into_par_iter()
        .map(|mask| {
            let chosen: Vec<&Root> =
                roots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, r)| r).collect();
            let seed = chosen.iter().fold(Subspace::zero(n), |acc, r| acc.sum_unchecked(&d.t_roots()[*r]));
            let label = format!("M{{{}}}", chosen.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" "));
            (label, ideal_closure_unchecked(t, &seed))
        })
        .collect();
    candidates.extend(subsets);
    for (i, v) in d.t_zero().basis().iter().enumerate() {
        let seed = Subspace::span(n, vec![v.clone()])?;
        candidates.push((format!("M(T0[{i}])"), ideal_closure_unchecked(t, &seed)));
    }
    candidates.push(("largest_in_T0".to_string(), largest_in_t0.clone()));
    candidates.push(("J+W*".to_string(), j.sum_unchecked(&w_star)));

    let mut ideals: Vec<LabeledIdeal> = Vec::new();
    for (label, space) in candidates {
        if let Some(existing) = ideals.iter_mut().find(|i| i.space == space) {
            existing.labels.push(label);
            continue;
        }
        let is_ideal = is_ideal_unchecked(t, &space);
        let (decomposes, found) = match ideal_root_decomposition(d, &space) {
            Ok(dec) => (true, dec.roots),
            Err(_) => (false, Vec::new()),
        };
        ideals.push(LabeledIdeal { labels: vec![label], space, is_ideal, decomposes, roots: found });
    }
    Ok(IdealFamily { ideals, j, largest_in_t0, w_star })
}

/// `{I,K,I} + {K,I,I} + {I,I,K} = 0`
pub fn mutually_annihilating(d: &RootDecomposition, i: &Subspace, k: &Subspace) -> bool {
    let t = d.system();
    product_space(t, i, k, i).is_zero() && product_space(t, k, i, i).is_zero() && product_space(t, i, i, k).is_zero()
}
