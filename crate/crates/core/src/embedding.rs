//! Right Leibniz algebras and the two-graded standard embedding `L0 ⊕ L1`
//! of a Leibniz triple system.
//!
//! The pair space `T⊗T` carries the product
//! `[(x⊗y, z), (u⊗v, w)] = ({x,y,u}⊗v - {x,y,v}⊗u + z⊗w, {x,y,w} + {z,u,v} - {z,v,u})`.
//! `L0` is the quotient of `T⊗T` by the largest subspace that acts trivially on
//! `T` and is stable under multiplication by pure tensors.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exact_linear::{
    add_scaled, is_zero_vector, unit_vector, zero_vector, LinalgError, Matrix, Scalar, Subspace, Vector,
};
use crate::triple::{
    check_leibniz_triple, largest_invariant_within, IdentityId, IdentityReport, TripleError, TripleSystem, Violation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("E_NOT_LEIBNIZ: the bracket fails the right Leibniz identity ({} violations)", .0.violations.len())]
    NotLeibniz(IdentityReport),
    #[error("E_NOT_LEIBNIZ_TRIPLE: the product fails the triple-system identities ({} violations)", .0.violations.len())]
    NotLeibnizTriple(IdentityReport),
    #[error("E_EMBEDDING_DEFECT: quotient algebra fails the right Leibniz identity at {:?}", .0.indices)]
    EmbeddingDefect(Violation),
    #[error("E_NOT_IN_L0: element has length {found}, expected l0_dim = {expected}")]
    NotInL0 { expected: usize, found: usize },
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Finite-dimensional algebra with a bilinear bracket given on basis pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    dim: usize,
    brackets: Vec<Vector>,
}

impl LeibnizAlgebra {
    pub fn zero(dim: usize) -> Self {
        Self { dim, brackets: vec![zero_vector(dim); dim * dim] }
    }

    /// `brackets[i * n + j]` is `[e_i, e_j]`.
    pub fn from_entries(dim: usize, brackets: Vec<Vector>) -> Result<Self, LinalgError> {
        if brackets.len() != dim * dim {
            return Err(LinalgError::DimensionMismatch { expected: dim * dim, found: brackets.len() });
        }
        if let Some(bad) = brackets.iter().find(|v| v.len() != dim) {
            return Err(LinalgError::DimensionMismatch { expected: dim, found: bad.len() });
        }
        Ok(Self { dim, brackets })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Vector>(dim: usize, mut f: F) -> Result<Self, LinalgError> {
        let mut brackets = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                brackets.push(f(i, j));
            }
        }
        Self::from_entries(dim, brackets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Vector {
        &self.brackets[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Vector] {
        &self.brackets
    }

    pub fn with_entry(&self, i: usize, j: usize, value: Vector) -> Result<Self, LinalgError> {
        let mut brackets = self.brackets.clone();
        brackets[i * self.dim + j] = value;
        Self::from_entries(self.dim, brackets)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, LinalgError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(LinalgError::DimensionMismatch { expected: self.dim, found: v.len() });
            }
        }
        Ok(self.product(x, y))
    }

    pub(crate) fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                add_scaled(&mut out, &(xi * yj), self.entry(i, j));
            }
        }
        out
    }

    /// Matrix of `v -> [v, x]`.
    pub fn right_multiplication(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|i| self.product(&unit_vector(self.dim, i), x)).collect();
        Matrix::from_columns(self.dim, &cols).expect("bracket values have algebra dimension")
    }

    /// Matrix of `v -> [x, v]`.
    pub fn left_multiplication(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|i| self.product(x, &unit_vector(self.dim, i))).collect();
        Matrix::from_columns(self.dim, &cols).expect("bracket values have algebra dimension")
    }

    /// Restriction to the coordinate block `range`; brackets must stay inside it.
    fn restrict(&self, range: std::ops::Range<usize>) -> LeibnizAlgebra {
        let offset = range.start;
        let len = range.len();
        LeibnizAlgebra::from_fn(len, |i, j| self.entry(i + offset, j + offset)[range.clone()].to_vec())
            .expect("restricted entries have block length")
    }
}

fn leibniz_defect(l: &LeibnizAlgebra, y: usize, z: usize, x: usize) -> Vector {
    let n = l.dim;
    let mut acc = zero_vector(n);
    for (m, c) in l.entry(y, z).iter().enumerate() {
        add_scaled(&mut acc, c, l.entry(m, x));
    }
    for (m, c) in l.entry(y, x).iter().enumerate() {
        add_scaled(&mut acc, &-c, l.entry(m, z));
    }
    for (m, c) in l.entry(z, x).iter().enumerate() {
        add_scaled(&mut acc, &-c, l.entry(y, m));
    }
    acc
}

/// `[[y,z],x] = [[y,x],z] + [y,[z,x]]` on every basis triple, indices ordered `(y, z, x)`.
pub fn check_right_leibniz(l: &LeibnizAlgebra) -> IdentityReport {
    let n = l.dim;
    let mut violations = Vec::new();
    for y in 0..n {
        for z in 0..n {
            for x in 0..n {
                let defect = leibniz_defect(l, y, z, x);
                if !is_zero_vector(&defect) {
                    violations.push(Violation { identity: IdentityId::RightLeibniz, indices: vec![y, z, x], defect });
                }
            }
        }
    }
    IdentityReport::from_violations(violations, (n as u64).pow(3))
}

/// `{x,y,z} = [[x,y],z]`.
pub fn derived_triple_system(l: &LeibnizAlgebra) -> Result<TripleSystem, EmbeddingError> {
    let report = check_right_leibniz(l);
    if !report.passed {
        return Err(EmbeddingError::NotLeibniz(report));
    }
    let t = TripleSystem::from_fn(l.dim, |i, j, k| {
        let mut out = zero_vector(l.dim);
        for (m, c) in l.entry(i, j).iter().enumerate() {
            add_scaled(&mut out, c, l.entry(m, k));
        }
        out
    })?;
    // a Leibniz algebra always yields a triple system; a failure here is an internal fault
    t.into_verified().map_err(EmbeddingError::NotLeibnizTriple)
}

/// Which containments of the two-grading hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub l0_l0_in_l0: bool,
    pub l0_l1_in_l1: bool,
    pub l1_l0_in_l1: bool,
    pub l1_l1_in_l0: bool,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.l0_l0_in_l0 && self.l0_l1_in_l1 && self.l1_l0_in_l1 && self.l1_l1_in_l0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardEmbedding {
    base: TripleSystem,
    kernel: Subspace,
    pair_map: Matrix,
    representatives: Vec<usize>,
    algebra: LeibnizAlgebra,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// Builds `L0 ⊕ L1` for a triple system, checking the identities first.
pub fn standard_embedding(t: &TripleSystem) -> Result<StandardEmbedding, EmbeddingError> {
    if !t.is_verified() {
        let report = check_leibniz_triple(t);
        if !report.passed {
            return Err(EmbeddingError::NotLeibnizTriple(report));
        }
    }
    let n = t.dim();
    let pairs = n * n;

    // action of a pair element on T: left {x,y,t} and right {t,x,y} - {t,y,x}
    let mut action_rows: Vec<Vector> = Vec::with_capacity(2 * n * n);
    for s in 0..n {
        for l in 0..n {
            let mut left = zero_vector(pairs);
            let mut right = zero_vector(pairs);
            for i in 0..n {
                for j in 0..n {
                    left[pair_index(n, i, j)] = t.entry(i, j, s)[l].clone();
                    right[pair_index(n, i, j)] = &t.entry(s, i, j)[l] - &t.entry(s, j, i)[l];
                }
            }
            action_rows.push(left);
            action_rows.push(right);
        }
    }
    let trivial_action = Matrix::from_rows(pairs, &action_rows)?.kernel();

    let mut stabilizers = Vec::with_capacity(2 * n * n);
    for a in 0..n {
        for b in 0..n {
            stabilizers.push(pair_right_multiplication(t, a, b));
            stabilizers.push(pair_left_multiplication(t, a, b));
        }
    }
    let kernel = largest_invariant_within(pairs, &stabilizers, &trivial_action, &Subspace::zero(pairs));

    let representatives = kernel.free_columns();
    let l0_dim = representatives.len();
    let pair_columns: Vec<Vector> = (0..pairs).map(|p| kernel.quotient_coordinates(&unit_vector(pairs, p))).collect();
    let pair_map = Matrix::from_columns(l0_dim, &pair_columns)?;

    let total = l0_dim + n;
    let split = |p: usize| (p / n, p % n);
    let mut brackets = Vec::with_capacity(total * total);
    for row in 0..total {
        for col in 0..total {
            let mut value = zero_vector(total);
            match (row < l0_dim, col < l0_dim) {
                (true, true) => {
                    let (x, y) = split(representatives[row]);
                    let (u, v) = split(representatives[col]);
                    let mut pair = zero_vector(pairs);
                    for (m, c) in t.entry(x, y, u).iter().enumerate() {
                        pair[pair_index(n, m, v)] += c;
                    }
                    for (m, c) in t.entry(x, y, v).iter().enumerate() {
                        pair[pair_index(n, m, u)] -= c;
                    }
                    value[..l0_dim].clone_from_slice(&kernel.quotient_coordinates(&pair));
                }
                (true, false) => {
                    let (x, y) = split(representatives[row]);
                    value[l0_dim..].clone_from_slice(t.entry(x, y, col - l0_dim));
                }
                (false, true) => {
                    let z = row - l0_dim;
                    let (u, v) = split(representatives[col]);
                    for (m, (a, b)) in t.entry(z, u, v).iter().zip(t.entry(z, v, u)).enumerate() {
                        value[l0_dim + m] = a - b;
                    }
                }
                (false, false) => {
                    let (z, w) = (row - l0_dim, col - l0_dim);
                    value[..l0_dim].clone_from_slice(&pair_map.column(pair_index(n, z, w)));
                }
            }
            brackets.push(value);
        }
    }
    let algebra = LeibnizAlgebra::from_entries(total, brackets)?;
    let report = check_right_leibniz(&algebra);
    if let Some(first) = report.violations.into_iter().next() {
        return Err(EmbeddingError::EmbeddingDefect(first));
    }
    let embedding = StandardEmbedding { base: t.clone(), kernel, pair_map, representatives, algebra };
    debug_assert!(embedding.check_grading().passed());
    Ok(embedding)
}

/// Matrix on `T⊗T` of `k -> [k, e_a⊗e_b] = Σ k_ij ({e_i,e_j,e_a}⊗e_b - {e_i,e_j,e_b}⊗e_a)`.
fn pair_right_multiplication(t: &TripleSystem, a: usize, b: usize) -> Matrix {
    let n = t.dim();
    let mut m = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let col = pair_index(n, i, j);
            accumulate_pair(&mut m, col, t.entry(i, j, a), b, 1, n);
            accumulate_pair(&mut m, col, t.entry(i, j, b), a, -1, n);
        }
    }
    m
}

/// Matrix on `T⊗T` of `k -> [e_a⊗e_b, k] = Σ k_uv ({e_a,e_b,e_u}⊗e_v - {e_a,e_b,e_v}⊗e_u)`.
fn pair_left_multiplication(t: &TripleSystem, a: usize, b: usize) -> Matrix {
    let n = t.dim();
    let mut m = Matrix::zeros(n * n, n * n);
    for u in 0..n {
        for v in 0..n {
            let col = pair_index(n, u, v);
            accumulate_pair(&mut m, col, t.entry(a, b, u), v, 1, n);
            accumulate_pair(&mut m, col, t.entry(a, b, v), u, -1, n);
        }
    }
    m
}

/// Adds `sign * (left ⊗ e_second)` into column `col`.
fn accumulate_pair(m: &mut Matrix, col: usize, left: &[Scalar], second: usize, sign: i32, n: usize) {
    for (first, c) in left.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let row = pair_index(n, first, second);
        let updated = if sign > 0 { m.get(row, col) + c } else { m.get(row, col) - c };
        m.set(row, col, updated);
    }
}

impl StandardEmbedding {
    pub fn base(&self) -> &TripleSystem {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn l0_dim(&self) -> usize {
        self.representatives.len()
    }

    /// The quotiented subspace of `T⊗T`.
    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn kernel_rank(&self) -> usize {
        self.kernel.rank()
    }

    /// `l0_dim x n^2` matrix sending `e_i⊗e_j` (column `i*n + j`) to `L0` coordinates.
    pub fn pair_map(&self) -> &Matrix {
        &self.pair_map
    }

    /// Pair index `(i, j)` whose class is the `c`-th basis vector of `L0`.
    pub fn representative(&self, c: usize) -> (usize, usize) {
        let n = self.dim();
        (self.representatives[c] / n, self.representatives[c] % n)
    }

    /// Full algebra on `L0 ⊕ L1`, `L0` coordinates first.
    pub fn algebra(&self) -> &LeibnizAlgebra {
        &self.algebra
    }

    /// `L0` with the induced product.
    pub fn l0_algebra(&self) -> LeibnizAlgebra {
        self.algebra.restrict(0..self.l0_dim())
    }

    /// `L0` coordinates of `x⊗y`.
    pub fn embed_pair(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, LinalgError> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(LinalgError::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        let mut pair = zero_vector(n * n);
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                pair[pair_index(n, i, j)] = xi * yj;
            }
        }
        Ok(self.pair_map.apply(&pair))
    }

    fn check_l0(&self, h: &[Scalar]) -> Result<(), EmbeddingError> {
        if h.len() == self.l0_dim() {
            Ok(())
        } else {
            Err(EmbeddingError::NotInL0 { expected: self.l0_dim(), found: h.len() })
        }
    }

    fn lift(&self, h: &[Scalar]) -> Vector {
        let mut full = h.to_vec();
        full.extend(zero_vector(self.dim()));
        full
    }

    /// Bracket inside `L0`.
    pub fn l0_bracket(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vector, EmbeddingError> {
        self.check_l0(a)?;
        self.check_l0(b)?;
        let mut out = self.algebra.product(&self.lift(a), &self.lift(b));
        out.truncate(self.l0_dim());
        Ok(out)
    }

    /// `n x n` matrix of `t -> [t, h]` on `T` for `h ∈ L0`.
    pub fn right_action_on_t(&self, h: &[Scalar]) -> Result<Matrix, EmbeddingError> {
        self.check_l0(h)?;
        let m = self.l0_dim();
        let cols: Vec<Vector> = (0..self.dim())
            .map(|z| self.algebra.product(&unit_vector(m + self.dim(), m + z), &self.lift(h))[m..].to_vec())
            .collect();
        Ok(Matrix::from_columns(self.dim(), &cols)?)
    }

    /// `l0_dim x l0_dim` matrix of `v -> [v, h]` on `L0`.
    pub fn right_action_on_l0(&self, h: &[Scalar]) -> Result<Matrix, EmbeddingError> {
        self.check_l0(h)?;
        let m = self.l0_dim();
        let cols: Vec<Vector> = (0..m)
            .map(|c| self.algebra.product(&unit_vector(m + self.dim(), c), &self.lift(h))[..m].to_vec())
            .collect();
        Ok(Matrix::from_columns(m, &cols)?)
    }

    /// `[x, y] ∈ L0` for `x, y ∈ T` (the class of `x⊗y`).
    pub fn t_bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.embed_pair(x, y).expect("callers pass vectors of dimension n")
    }

    /// Containments of the two-grading read off the structure constants.
    pub fn check_grading(&self) -> GradingReport {
        let m = self.l0_dim();
        let total = self.algebra.dim();
        let in_l0 = |v: &Vector| v[m..].iter().all(Zero::is_zero);
        let in_l1 = |v: &Vector| v[..m].iter().all(Zero::is_zero);
        let all = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>, pred: &dyn Fn(&Vector) -> bool| {
            rows.into_iter().all(|i| cols.clone().all(|j| pred(self.algebra.entry(i, j))))
        };
        GradingReport {
            l0_l0_in_l0: all(0..m, 0..m, &in_l0),
            l0_l1_in_l1: all(0..m, m..total, &in_l1),
            l1_l0_in_l1: all(m..total, 0..m, &in_l1),
            l1_l1_in_l0: all(m..total, m..total, &in_l0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Maximality {
    Yes,
    No,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MasaReport {
    pub abelian: bool,
    pub maximal: Maximality,
    pub centralizer: Subspace,
    /// A centralizer element outside `span H` with `[z,z] = 0`, when `maximal = no`.
    #[serde(serialize_with = "serialize_optional_vector")]
    pub extension_witness: Option<Vector>,
}

fn serialize_optional_vector<S: serde::Serializer>(v: &Option<Vector>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&crate::exact_linear::format_vector(v)),
        None => s.serialize_none(),
    }
}

/// Checks that `elements` span an abelian subalgebra of `L0` and probes maximality.
///
/// Maximality is `yes` when the centralizer equals `span H`. Otherwise the
/// probe set is a complement basis of `span H` inside the centralizer plus all
/// pairwise sums; any probe `z` with `[z,z] = 0` proves `no`. A non-abelian
/// input is reported as `undetermined`.
pub fn masa_check(e: &StandardEmbedding, elements: &[Vector]) -> Result<MasaReport, EmbeddingError> {
    for h in elements {
        e.check_l0(h)?;
    }
    let m = e.l0_dim();
    let mut abelian = true;
    'outer: for a in elements {
        for b in elements {
            if !is_zero_vector(&e.l0_bracket(a, b)?) {
                abelian = false;
                break 'outer;
            }
        }
    }
    let l0 = e.l0_algebra();
    let centralizer = crate::triple::kernel_of_stack(
        m,
        elements
            .iter()
            .flat_map(|h| [l0.right_multiplication(h), l0.left_multiplication(h)])
            .collect::<Vec<_>>()
            .iter(),
    );
    let span = Subspace::span(m, elements.iter().cloned())?;
    if !abelian {
        return Ok(MasaReport { abelian, maximal: Maximality::Undetermined, centralizer, extension_witness: None });
    }
    if centralizer == span {
        return Ok(MasaReport { abelian, maximal: Maximality::Yes, centralizer, extension_witness: None });
    }
    let mut complement = Vec::new();
    let mut grown = span.clone();
    for z in centralizer.basis() {
        if !grown.contains_unchecked(z) {
            grown = grown.extend_with([z.clone()]);
            complement.push(z.clone());
        }
    }
    let mut probes = complement.clone();
    for i in 0..complement.len() {
        for j in i + 1..complement.len() {
            probes.push(crate::exact_linear::scalar::add_vectors(&complement[i], &complement[j]));
        }
    }
    let witness = probes.into_iter().find(|z| is_zero_vector(&l0.product(z, z)));
    let maximal = if witness.is_some() { Maximality::No } else { Maximality::Undetermined };
    Ok(MasaReport { abelian, maximal, centralizer, extension_witness: witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::int;

    fn vec_of(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    /// sl2 on (e, h, f).
    fn sl2() -> LeibnizAlgebra {
        LeibnizAlgebra::from_fn(3, |i, j| match (i, j) {
            (0, 2) => vec_of(&[0, 1, 0]),
            (2, 0) => vec_of(&[0, -1, 0]),
            (1, 0) => vec_of(&[2, 0, 0]),
            (0, 1) => vec_of(&[-2, 0, 0]),
            (1, 2) => vec_of(&[0, 0, -2]),
            (2, 1) => vec_of(&[0, 0, 2]),
            _ => vec_of(&[0, 0, 0]),
        })
        .unwrap()
    }

    fn nilpotent_two() -> LeibnizAlgebra {
        LeibnizAlgebra::from_fn(2, |i, j| if (i, j) == (1, 1) { vec_of(&[1, 0]) } else { vec_of(&[0, 0]) }).unwrap()
    }

    #[test]
    fn right_leibniz_examples() {
        assert!(check_right_leibniz(&LeibnizAlgebra::zero(3)).passed);
        assert!(check_right_leibniz(&nilpotent_two()).passed);
        assert!(check_right_leibniz(&sl2()).passed);
        let flipped = sl2().with_entry(1, 0, vec_of(&[-2, 0, 0])).unwrap();
        assert!(!check_right_leibniz(&flipped).passed);
        assert!(matches!(derived_triple_system(&flipped), Err(EmbeddingError::NotLeibniz(_))));
    }

    #[test]
    fn derived_systems() {
        assert!(derived_triple_system(&LeibnizAlgebra::zero(2)).unwrap().is_zero_product());
        assert!(derived_triple_system(&nilpotent_two()).unwrap().is_zero_product());
        let t = derived_triple_system(&sl2()).unwrap();
        assert!(!t.is_zero_product());
        assert!(t.is_verified());
    }

    #[test]
    fn embedding_of_zero_system() {
        let e = standard_embedding(&TripleSystem::zero(3).unwrap()).unwrap();
        assert_eq!(e.l0_dim(), 0);
        assert_eq!(e.kernel_rank(), 9);
        assert!(e.algebra().entries().iter().all(|v| is_zero_vector(v)));
        let report = masa_check(&e, &[]).unwrap();
        assert_eq!(report.maximal, Maximality::Yes);
    }

    #[test]
    fn embedding_of_sl2() {
        let t = derived_triple_system(&sl2()).unwrap();
        let e = standard_embedding(&t).unwrap();
        assert_eq!(e.l0_dim(), 3);
        assert!(e.check_grading().passed());
        assert!(check_right_leibniz(&e.l0_algebra()).passed);
        let cartan = e.embed_pair(&unit_vector(3, 0), &unit_vector(3, 2)).unwrap();
        let report = masa_check(&e, std::slice::from_ref(&cartan)).unwrap();
        assert!(report.abelian);
        assert_eq!(report.maximal, Maximality::Yes);
        // [t, e⊗f] acts as ad h on sl2: e -> -2e, f -> 2f
        let action = e.right_action_on_t(&cartan).unwrap();
        assert_eq!(action.apply(&unit_vector(3, 0)), vec_of(&[-2, 0, 0]));
        assert_eq!(action.apply(&unit_vector(3, 2)), vec_of(&[0, 0, 2]));
        let root = e.embed_pair(&unit_vector(3, 0), &unit_vector(3, 1)).unwrap();
        assert!(!masa_check(&e, &[cartan, root]).unwrap().abelian);
        assert!(matches!(masa_check(&e, &[vec_of(&[1])]), Err(EmbeddingError::NotInL0 { .. })));
    }

    #[test]
    fn empty_masa_in_abelian_l0_is_not_maximal() {
        // {e0,e0,e0} = e1 and all else zero: L0 is spanned by the class of e0⊗e0
        let t =
            TripleSystem::from_fn(2, |i, j, k| if (i, j, k) == (0, 0, 0) { vec_of(&[0, 1]) } else { vec_of(&[0, 0]) })
                .unwrap();
        let e = standard_embedding(&t).unwrap();
        assert_eq!(e.l0_dim(), 1);
        let report = masa_check(&e, &[]).unwrap();
        assert!(report.abelian);
        assert_eq!(report.maximal, Maximality::No);
        assert!(report.extension_witness.is_some());
    }
}
