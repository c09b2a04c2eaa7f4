//! Leibniz triple systems given by structure constants.
//!
//! A system of dimension `n` stores `{e_i, e_j, e_k}` for every basis triple.
//! Identities are checked on basis tuples only; multilinearity makes that
//! complete. Ideals are computed as fixed points of linear conditions, so
//! every answer is exact.

use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact_linear::{is_zero_vector, zero_vector, LinalgError, Matrix, Scalar, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("a triple system needs dimension at least 1")]
    ZeroDimension,
    #[error("expected {expected} structure-constant entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which identity a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum IdentityId {
    #[serde(rename = "EQ1")]
    Eq1,
    #[serde(rename = "EQ2")]
    Eq2,
    #[serde(rename = "PROP3")]
    Prop3,
    /// `[[y,z],x] = [[y,x],z] + [y,[z,x]]`
    #[serde(rename = "RIGHT_LEIBNIZ")]
    RightLeibniz,
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            IdentityId::Eq1 => "EQ1",
            IdentityId::Eq2 => "EQ2",
            IdentityId::Prop3 => "PROP3",
            IdentityId::RightLeibniz => "RIGHT_LEIBNIZ",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: IdentityId,
    /// Basis indices in the order the identity names its variables.
    pub indices: Vec<usize>,
    /// `lhs - rhs`, nonzero.
    #[serde(with = "crate::exact_linear::scalar::serde_vector")]
    pub defect: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
    /// Basis tuples evaluated, summed over identities.
    pub tuples_checked: u64,
}

impl IdentityReport {
    pub(crate) fn from_violations(mut violations: Vec<Violation>, tuples_checked: u64) -> Self {
        violations.sort_by(|a, b| (&a.indices, a.identity).cmp(&(&b.indices, b.identity)));
        Self { passed: violations.is_empty(), violations, tuples_checked }
    }

    pub fn failed_identities(&self) -> Vec<IdentityId> {
        let mut ids: Vec<_> = self.violations.iter().map(|v| v.identity).collect();
        ids.sort();
        ids.dedup();
        ids
    }
}

type SparseVec = Vec<(usize, Scalar)>;

/// Finite-dimensional vector space with a trilinear product.
#[derive(Debug, Clone)]
pub struct TripleSystem {
    dim: usize,
    entries: Vec<Vector>,
    sparse: Vec<SparseVec>,
    operators: OnceLock<Vec<Matrix>>,
    verified: bool,
}

impl PartialEq for TripleSystem {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }
}

impl Eq for TripleSystem {}

fn sparsify(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

impl TripleSystem {
    pub fn zero(dim: usize) -> Result<Self, TripleError> {
        Self::from_entries(dim, vec![zero_vector(dim); dim * dim * dim])
    }

    /// `entries[(i * n + j) * n + k]` is `{e_i, e_j, e_k}`.
    pub fn from_entries(dim: usize, entries: Vec<Vector>) -> Result<Self, TripleError> {
        if dim == 0 {
            return Err(TripleError::ZeroDimension);
        }
        if entries.len() != dim * dim * dim {
            return Err(TripleError::EntryCount { expected: dim * dim * dim, found: entries.len() });
        }
        if let Some(bad) = entries.iter().find(|v| v.len() != dim) {
            return Err(LinalgError::DimensionMismatch { expected: dim, found: bad.len() }.into());
        }
        let sparse = entries.iter().map(|v| sparsify(v)).collect();
        Ok(Self { dim, entries, sparse, operators: OnceLock::new(), verified: false })
    }

    pub fn from_fn<F>(dim: usize, mut f: F) -> Result<Self, TripleError>
    where
        F: FnMut(usize, usize, usize) -> Vector,
    {
        let mut entries = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    entries.push(f(i, j, k));
                }
            }
        }
        Self::from_entries(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Vector {
        &self.entries[self.index(i, j, k)]
    }

    pub fn entries(&self) -> &[Vector] {
        &self.entries
    }

    /// Copy with one structure-constant vector replaced (unverified).
    pub fn with_entry(&self, i: usize, j: usize, k: usize, value: Vector) -> Result<Self, TripleError> {
        let mut entries = self.entries.clone();
        let idx = self.index(i, j, k);
        entries[idx] = value;
        Self::from_entries(self.dim, entries)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Runs the identity check and returns the system flagged as verified on success.
    pub fn into_verified(mut self) -> Result<Self, IdentityReport> {
        let report = check_leibniz_triple(&self);
        if report.passed {
            self.verified = true;
            Ok(self)
        } else {
            Err(report)
        }
    }

    pub fn is_zero_product(&self) -> bool {
        self.sparse.iter().all(Vec::is_empty)
    }

    /// Trilinear extension of the structure constants.
    pub fn triple_product(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vector, TripleError> {
        for v in [x, y, z] {
            if v.len() != self.dim {
                return Err(LinalgError::DimensionMismatch { expected: self.dim, found: v.len() }.into());
            }
        }
        Ok(self.product(x, y, z))
    }

    pub(crate) fn product(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let xy = xi * yj;
                for (k, zk) in z.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let coeff = &xy * zk;
                    for (l, c) in &self.sparse[self.index(i, j, k)] {
                        out[*l] += &coeff * c;
                    }
                }
            }
        }
        out
    }

    /// The `3 n^2` linear maps `x -> {x,e_j,e_k}`, `x -> {e_i,x,e_k}`, `x -> {e_i,e_j,x}`.
    ///
    /// A subspace is an ideal exactly when it is invariant under all of them.
    pub fn multiplication_operators(&self) -> &[Matrix] {
        self.operators.get_or_init(|| {
            let n = self.dim;
            let mut ops = Vec::with_capacity(3 * n * n);
            for a in 0..n {
                for b in 0..n {
                    ops.push(self.column_map(|l| self.index(l, a, b)));
                    ops.push(self.column_map(|l| self.index(a, l, b)));
                    ops.push(self.column_map(|l| self.index(a, b, l)));
                }
            }
            ops
        })
    }

    fn column_map(&self, idx: impl Fn(usize) -> usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for l in 0..self.dim {
            for (row, c) in &self.sparse[idx(l)] {
                m.set(*row, l, c.clone());
            }
        }
        m
    }

    /// `acc += sign * {v, e_d, e_e}` for sparse `v`.
    fn acc_outer_left(&self, acc: &mut [Scalar], sign: i32, v: &SparseVec, d: usize, e: usize) {
        for (l, vl) in v {
            accumulate(acc, sign, vl, &self.sparse[self.index(*l, d, e)]);
        }
    }

    /// `acc += sign * {e_a, v, e_e}`
    fn acc_middle(&self, acc: &mut [Scalar], sign: i32, a: usize, v: &SparseVec, e: usize) {
        for (l, vl) in v {
            accumulate(acc, sign, vl, &self.sparse[self.index(a, *l, e)]);
        }
    }

    /// `acc += sign * {e_a, e_b, v}`
    fn acc_right(&self, acc: &mut [Scalar], sign: i32, a: usize, b: usize, v: &SparseVec) {
        for (l, vl) in v {
            accumulate(acc, sign, vl, &self.sparse[self.index(a, b, *l)]);
        }
    }

    fn basic(&self, i: usize, j: usize, k: usize) -> &SparseVec {
        &self.sparse[self.index(i, j, k)]
    }
}

fn accumulate(acc: &mut [Scalar], sign: i32, coeff: &Scalar, v: &SparseVec) {
    for (m, x) in v {
        let term = coeff * x;
        if sign > 0 {
            acc[*m] += term;
        } else {
            acc[*m] -= term;
        }
    }
}

fn eq1_defect(t: &TripleSystem, [a, b, c, d, e]: [usize; 5]) -> Vector {
    let mut acc = zero_vector(t.dim);
    t.acc_middle(&mut acc, 1, a, t.basic(b, c, d), e);
    t.acc_outer_left(&mut acc, -1, t.basic(a, b, c), d, e);
    t.acc_outer_left(&mut acc, 1, t.basic(a, c, b), d, e);
    t.acc_outer_left(&mut acc, 1, t.basic(a, d, b), c, e);
    t.acc_outer_left(&mut acc, -1, t.basic(a, d, c), b, e);
    acc
}

fn eq2_defect(t: &TripleSystem, [a, b, c, d, e]: [usize; 5]) -> Vector {
    let mut acc = zero_vector(t.dim);
    t.acc_right(&mut acc, 1, a, b, t.basic(c, d, e));
    t.acc_outer_left(&mut acc, -1, t.basic(a, b, c), d, e);
    t.acc_outer_left(&mut acc, 1, t.basic(a, b, d), c, e);
    t.acc_outer_left(&mut acc, 1, t.basic(a, b, e), c, d);
    t.acc_outer_left(&mut acc, -1, t.basic(a, b, e), d, c);
    acc
}

fn prop3_defect(t: &TripleSystem, [a, b, c, d, e]: [usize; 5]) -> Vector {
    let mut acc = zero_vector(t.dim);
    t.acc_outer_left(&mut acc, 1, t.basic(c, d, e), b, a);
    t.acc_outer_left(&mut acc, -1, t.basic(c, d, e), a, b);
    t.acc_outer_left(&mut acc, -1, t.basic(c, b, a), d, e);
    t.acc_outer_left(&mut acc, 1, t.basic(c, a, b), d, e);
    t.acc_middle(&mut acc, -1, c, t.basic(a, b, d), e);
    t.acc_right(&mut acc, -1, c, d, t.basic(a, b, e));
    acc
}

type DefectFn = fn(&TripleSystem, [usize; 5]) -> Vector;

const IDENTITIES: [(IdentityId, DefectFn); 3] =
    [(IdentityId::Eq1, eq1_defect), (IdentityId::Eq2, eq2_defect), (IdentityId::Prop3, prop3_defect)];

fn quintuples(n: usize, a: usize) -> impl Iterator<Item = [usize; 5]> {
    (0..n.pow(4)).map(move |r| [a, r / (n * n * n), (r / (n * n)) % n, (r / n) % n, r % n])
}

/// Evaluates both defining identities and the derived five-variable identity
/// on every basis quintuple. Violations are sorted by index tuple.
pub fn check_leibniz_triple(t: &TripleSystem) -> IdentityReport {
    let n = t.dim;
    let violations: Vec<Violation> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            quintuples(n, a).flat_map(move |q| {
                IDENTITIES.iter().filter_map(move |(id, f)| {
                    let defect = f(t, q);
                    (!is_zero_vector(&defect)).then(|| Violation { identity: *id, indices: q.to_vec(), defect })
                })
            })
        })
        .collect();
    IdentityReport::from_violations(violations, 3 * (n as u64).pow(5))
}

/// First violation of the two defining identities, stopping early.
pub fn find_defining_violation(t: &TripleSystem) -> Option<Violation> {
    let n = t.dim;
    (0..n).find_map(|a| {
        quintuples(n, a).find_map(|q| {
            IDENTITIES[..2].iter().find_map(|(id, f)| {
                let defect = f(t, q);
                (!is_zero_vector(&defect)).then(|| Violation { identity: *id, indices: q.to_vec(), defect })
            })
        })
    })
}

/// `span {a, b, c}` over bases of the three subspaces.
pub fn product_space(t: &TripleSystem, a: &Subspace, b: &Subspace, c: &Subspace) -> Subspace {
    let mut vectors = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            for z in c.basis() {
                let p = t.product(x, y, z);
                if !is_zero_vector(&p) {
                    vectors.push(p);
                }
            }
        }
    }
    Subspace::span_unchecked(t.dim, vectors)
}

/// `{T, T, T}`: the span of all structure constants.
pub fn derived_space(t: &TripleSystem) -> Subspace {
    Subspace::span_unchecked(t.dim, t.entries.iter().filter(|v| !is_zero_vector(v)).cloned().collect())
}

fn check_ambient(t: &TripleSystem, s: &Subspace) -> Result<(), TripleError> {
    if s.ambient_dim() == t.dim {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { expected: t.dim, found: s.ambient_dim() }.into())
    }
}

/// `{S,T,T} + {T,S,T} + {T,T,S} ⊆ S`
pub fn is_ideal(t: &TripleSystem, s: &Subspace) -> Result<bool, TripleError> {
    check_ambient(t, s)?;
    Ok(is_ideal_unchecked(t, s))
}

pub(crate) fn is_ideal_unchecked(t: &TripleSystem, s: &Subspace) -> bool {
    t.multiplication_operators().iter().all(|op| s.basis().iter().all(|v| s.contains_unchecked(&op.apply(v))))
}

/// `{S,S,S} ⊆ S`
pub fn is_subsystem(t: &TripleSystem, s: &Subspace) -> Result<bool, TripleError> {
    check_ambient(t, s)?;
    Ok(s.contains_subspace(&product_space(t, s, s, s))?)
}

/// Least ideal containing `s`.
pub fn ideal_closure(t: &TripleSystem, s: &Subspace) -> Result<Subspace, TripleError> {
    check_ambient(t, s)?;
    Ok(ideal_closure_unchecked(t, s))
}

pub(crate) fn ideal_closure_unchecked(t: &TripleSystem, s: &Subspace) -> Subspace {
    let ops = t.multiplication_operators();
    let mut current = s.clone();
    loop {
        let images: Vec<Vector> = ops.iter().flat_map(|op| current.basis().iter().map(move |v| op.apply(v))).collect();
        let next = current.extend_with(images);
        if next.rank() == current.rank() {
            return current;
        }
        current = next;
    }
}

/// Largest `U ⊆ w` with `{U,T,T} + {T,U,T} + {T,T,U} ⊆ U + floor`.
///
/// With `floor = 0` this is the largest ideal contained in `w`.
pub fn largest_ideal_within(t: &TripleSystem, w: &Subspace, floor: &Subspace) -> Result<Subspace, TripleError> {
    check_ambient(t, w)?;
    check_ambient(t, floor)?;
    Ok(largest_invariant_within(t.dim, t.multiplication_operators(), w, floor))
}

/// Greatest fixed point of `U -> {u in U : op(u) in U + floor for all ops}`.
pub(crate) fn largest_invariant_within(dim: usize, ops: &[Matrix], w: &Subspace, floor: &Subspace) -> Subspace {
    let mut current = w.clone();
    loop {
        if current.is_zero() {
            return current;
        }
        let target = current.sum_unchecked(floor);
        let basis = current.basis();
        // rows: every coordinate of reduce(op(b_i)) as a linear form in the coefficients c_i
        let mut rows: Vec<Vector> = Vec::new();
        for op in ops {
            let images: Vec<Vector> = basis.iter().map(|b| target.reduce(&op.apply(b))).collect();
            for coord in 0..dim {
                let row: Vector = images.iter().map(|img| img[coord].clone()).collect();
                if !is_zero_vector(&row) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return current;
        }
        let kernel = Matrix::from_rows(basis.len(), &rows).expect("rows have basis length").kernel();
        if kernel.rank() == current.rank() {
            return current;
        }
        let next: Vec<Vector> = kernel
            .basis()
            .iter()
            .map(|coeffs| {
                let mut v = zero_vector(dim);
                for (c, b) in coeffs.iter().zip(basis) {
                    crate::exact_linear::add_scaled(&mut v, c, b);
                }
                v
            })
            .collect();
        current = Subspace::span_unchecked(dim, next);
    }
}

/// Span of `{a,b,c} - {a,c,b} + {b,c,a}` over basis triples.
pub fn j_generators(t: &TripleSystem) -> Subspace {
    let n = t.dim;
    let mut gens = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let g: Vector = t
                    .entry(a, b, c)
                    .iter()
                    .zip(t.entry(a, c, b))
                    .zip(t.entry(b, c, a))
                    .map(|((x, y), z)| x - y + z)
                    .collect();
                if !is_zero_vector(&g) {
                    gens.push(g);
                }
            }
        }
    }
    Subspace::span_unchecked(n, gens)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JReport {
    pub j: Subspace,
    /// `{T,T,J} = {T,J,T} = 0` held on the computed ideal.
    pub annihilated_inside: bool,
}

/// The ideal generated by `{a,b,c} - {a,c,b} + {b,c,a}`.
pub fn j_ideal(t: &TripleSystem) -> Subspace {
    ideal_closure_unchecked(t, &j_generators(t))
}

pub fn j_report(t: &TripleSystem) -> JReport {
    let j = j_ideal(t);
    let full = Subspace::full(t.dim);
    let annihilated_inside =
        product_space(t, &full, &full, &j).is_zero() && product_space(t, &full, &j, &full).is_zero();
    JReport { j, annihilated_inside }
}

/// Lie triple systems are exactly the systems with `J = 0`.
pub fn is_lie_triple_system(t: &TripleSystem) -> bool {
    j_generators(t).is_zero()
}

/// `{x : {x,T,T} + {T,x,T} + {T,T,x} = 0}`
pub fn annihilator(t: &TripleSystem) -> Subspace {
    kernel_of_stack(t.dim, t.multiplication_operators().iter())
}

/// Common kernel of a family of `n x n` maps.
pub(crate) fn kernel_of_stack<'a>(dim: usize, ops: impl Iterator<Item = &'a Matrix>) -> Subspace {
    let mut rows = Vec::new();
    for op in ops {
        rows.extend(op.row_vectors().into_iter().filter(|r| !is_zero_vector(r)));
    }
    if rows.is_empty() {
        return Subspace::full(dim);
    }
    Matrix::from_rows(dim, &rows).expect("operator rows have length dim").kernel()
}
