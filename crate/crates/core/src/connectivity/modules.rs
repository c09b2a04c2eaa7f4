//! Ideals of a triple system are exactly the subspaces invariant under the
//! multiplication operators, that is, submodules over the associative algebra
//! those operators generate. This file decides whether the ideal lattice is
//! `{0, J, T}` by module theory, independently of any root data.

use num_traits::Zero;
use serde::Serialize;

use crate::exact_linear::{rational_roots, unit_vector, zero_vector, Matrix, Scalar, Subspace, Vector};
use crate::triple::{derived_space, j_ideal, TripleSystem};

/// Outcome of an irreducibility test on a module given by generator matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A proper nonzero submodule, in module coordinates.
    Reducible(Subspace),
    Undetermined,
}

fn flatten(m: &Matrix) -> Vector {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

fn unflatten(d: usize, v: &[Scalar]) -> Matrix {
    let rows: Vec<Vector> = v.chunks(d).map(<[Scalar]>::to_vec).collect();
    Matrix::from_rows(d, &rows).expect("flattened square matrix")
}

/// Linearly independent subset of the generators.
fn independent(d: usize, gens: &[Matrix]) -> Vec<Matrix> {
    let mut span = Subspace::zero(d * d);
    let mut out = Vec::new();
    for g in gens {
        let v = flatten(g);
        if !span.contains_unchecked(&v) {
            span = span.extend_with([v]);
            out.push(g.clone());
        }
    }
    out
}

/// Least submodule containing `seed`.
fn generated_submodule(d: usize, gens: &[Matrix], seed: Vec<Vector>) -> Subspace {
    let mut current = Subspace::span_unchecked(d, seed);
    loop {
        let images: Vec<Vector> = gens.iter().flat_map(|g| current.basis().iter().map(move |v| g.apply(v))).collect();
        let next = current.extend_with(images);
        if next.rank() == current.rank() {
            return current;
        }
        current = next;
    }
}

/// Basis of the unital associative algebra generated by `gens`.
fn enveloping_algebra(d: usize, gens: &[Matrix]) -> Vec<Matrix> {
    let mut span = Subspace::zero(d * d);
    let mut basis = Vec::new();
    let mut frontier = vec![Matrix::identity(d)];
    while let Some(m) = frontier.pop() {
        let v = flatten(&m);
        if span.contains_unchecked(&v) {
            continue;
        }
        span = span.extend_with([v]);
        for g in gens {
            frontier.push(m.mul(g).expect("square matrices of one size"));
        }
        basis.push(m);
        if basis.len() == d * d {
            break;
        }
    }
    basis
}

/// Decides irreducibility of `Q^d` under the algebra generated by `gens`.
///
/// Order of tests: cyclic submodules of unit vectors and of dual unit
/// vectors, the full matrix algebra, the trace-form radical, and finally
/// rational eigenvalues of commutant elements. A module whose commutant is a
/// proper field extension of the rationals is reported as undetermined.
pub fn irreducibility(d: usize, gens: &[Matrix]) -> Irreducibility {
    if d <= 1 {
        return Irreducibility::Irreducible;
    }
    let gens = independent(d, gens);
    for i in 0..d {
        let sub = generated_submodule(d, &gens, vec![unit_vector(d, i)]);
        if !sub.is_full() {
            return Irreducibility::Reducible(sub);
        }
    }
    let transposed: Vec<Matrix> = gens.iter().map(Matrix::transpose).collect();
    for i in 0..d {
        let dual = generated_submodule(d, &transposed, vec![unit_vector(d, i)]);
        if !dual.is_full() {
            // annihilator of an invariant subspace of the dual
            return Irreducibility::Reducible(dual.orthogonal_complement());
        }
    }
    let algebra = enveloping_algebra(d, &gens);
    if algebra.len() == d * d {
        return Irreducibility::Irreducible;
    }
    // in characteristic zero the radical is the kernel of the trace form
    let k = algebra.len();
    let gram_rows: Vec<Vector> =
        (0..k).map(|i| (0..k).map(|j| algebra[i].mul(&algebra[j]).expect("square").trace()).collect()).collect();
    let radical = Matrix::from_rows(k, &gram_rows).expect("square gram").kernel();
    if !radical.is_zero() {
        let mut columns = Vec::new();
        for coeffs in radical.basis() {
            let mut r = Matrix::zeros(d, d);
            for (c, a) in coeffs.iter().zip(&algebra) {
                if !c.is_zero() {
                    for row in 0..d {
                        for col in 0..d {
                            let value = r.get(row, col) + c * a.get(row, col);
                            r.set(row, col, value);
                        }
                    }
                }
            }
            columns.extend((0..d).map(|j| r.column(j)));
        }
        return Irreducibility::Reducible(Subspace::span_unchecked(d, columns));
    }
    let commutant = commutant(d, &gens);
    if commutant.len() <= 1 {
        return Irreducibility::Irreducible;
    }
    let mut probes = commutant.clone();
    for i in 0..commutant.len() {
        for j in i + 1..commutant.len() {
            let sum = flatten(&commutant[i]).iter().zip(flatten(&commutant[j])).map(|(a, b)| a + b).collect::<Vec<_>>();
            probes.push(unflatten(d, &sum));
        }
    }
    for c in probes {
        if let Ok((roots, _)) = rational_roots(&c) {
            for (lambda, _) in roots {
                let kernel = c.shifted(&lambda).kernel();
                if !kernel.is_zero() && !kernel.is_full() {
                    return Irreducibility::Reducible(kernel);
                }
            }
        }
    }
    Irreducibility::Undetermined
}

/// Basis of `{X : X g = g X for all generators}`.
fn commutant(d: usize, gens: &[Matrix]) -> Vec<Matrix> {
    // unknown X[r][c] at index r * d + c; (X g - g X)[i][j] = Σ_k X[i][k] g[k][j] - g[i][k] X[k][j]
    let mut rows = Vec::new();
    for g in gens {
        for i in 0..d {
            for j in 0..d {
                let mut row = zero_vector(d * d);
                for k in 0..d {
                    row[i * d + k] += g.get(k, j);
                    row[k * d + j] -= g.get(i, k);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return (0..d * d).map(|i| unflatten(d, &unit_vector(d * d, i))).collect();
    }
    let kernel = Matrix::from_rows(d * d, &rows).expect("rows of length d^2").kernel();
    kernel.basis().iter().map(|v| unflatten(d, v)).collect()
}

/// Matrices of the generators restricted to an invariant subspace, in its basis coordinates.
fn restrict(gens: &[Matrix], sub: &Subspace) -> Vec<Matrix> {
    let r = sub.rank();
    gens.iter()
        .map(|g| {
            let cols: Vec<Vector> =
                sub.basis().iter().map(|b| sub.coordinates(&g.apply(b)).expect("subspace is invariant")).collect();
            Matrix::from_columns(r, &cols).expect("coordinate columns")
        })
        .collect()
}

/// Matrices of the generators on `V / sub`, using the free columns of `sub` as coordinates.
fn quotient(d: usize, gens: &[Matrix], sub: &Subspace) -> Vec<Matrix> {
    let free = sub.free_columns();
    gens.iter()
        .map(|g| {
            let cols: Vec<Vector> =
                free.iter().map(|&f| sub.quotient_coordinates(&g.apply(&unit_vector(d, f)))).collect();
            Matrix::from_columns(free.len(), &cols).expect("coordinate columns")
        })
        .collect()
}

/// A submodule `W` with `V = sub ⊕ W`, if one exists.
///
/// Writes `W` as the graph of `φ: W0 → sub` over the canonical complement
/// `W0` and solves the linear conditions on `φ`.
fn invariant_complement(d: usize, gens: &[Matrix], sub: &Subspace) -> Option<Subspace> {
    let pivots = sub.pivots().to_vec();
    let free = sub.free_columns();
    let (jd, wd) = (pivots.len(), free.len());
    let unknowns = jd * wd;
    let var = |a: usize, k: usize| a * wd + k;
    let mut rows: Vec<Vector> = Vec::new();
    for g in gens {
        // M: action on sub in its coordinates (values at pivots)
        let m: Vec<Vector> = sub
            .basis()
            .iter()
            .map(|b| {
                let v = g.apply(b);
                pivots.iter().map(|&p| v[p].clone()).collect()
            })
            .collect();
        for (k, &fk) in free.iter().enumerate() {
            let v = g.apply(&unit_vector(d, fk));
            let residual = sub.reduce(&v);
            for b in 0..jd {
                let mut row = zero_vector(unknowns + 1);
                for a in 0..jd {
                    row[var(a, k)] += &m[a][b];
                }
                for (l, &fl) in free.iter().enumerate() {
                    row[var(b, l)] -= &residual[fl];
                }
                row[unknowns] = -v[pivots[b]].clone();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let phi: Vector = if rows.is_empty() {
        zero_vector(unknowns)
    } else {
        let augmented = Matrix::from_rows(unknowns + 1, &rows).expect("rows");
        let (reduced, pivots_aug) = augmented.rref();
        if pivots_aug.last() == Some(&unknowns) {
            return None;
        }
        // particular solution: pivot variables take the right-hand side, free ones zero
        let mut x = zero_vector(unknowns);
        for (row, &p) in reduced.iter().zip(&pivots_aug) {
            x[p] = row[unknowns].clone();
        }
        x
    };
    let graph: Vec<Vector> = free
        .iter()
        .enumerate()
        .map(|(k, &fk)| {
            let mut w = unit_vector(d, fk);
            for (a, b) in sub.basis().iter().enumerate() {
                crate::exact_linear::add_scaled(&mut w, &phi[var(a, k)], b);
            }
            w
        })
        .collect();
    Some(Subspace::span_unchecked(d, graph))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleVerdict {
    Simple,
    NotSimple,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleSimplicity {
    pub verdict: ModuleVerdict,
    /// An ideal outside `{0, J, T}` proving non-simplicity.
    pub witness: Option<Subspace>,
    pub reason: String,
}

/// Simplicity in the sense "nonzero product and only the ideals `0`, `J`, `T`",
/// decided from the submodule structure of `T`.
pub fn simplicity_by_modules(t: &TripleSystem) -> ModuleSimplicity {
    let n = t.dim();
    let report = |verdict, witness, reason: &str| ModuleSimplicity { verdict, witness, reason: reason.to_string() };
    if derived_space(t).is_zero() {
        return report(ModuleVerdict::NotSimple, None, "the triple product is zero");
    }
    let gens = independent(n, t.multiplication_operators());
    let j = j_ideal(t);
    if j.is_zero() || j.is_full() {
        return match irreducibility(n, &gens) {
            Irreducibility::Irreducible => report(ModuleVerdict::Simple, None, "T is an irreducible module"),
            Irreducibility::Reducible(w) => report(ModuleVerdict::NotSimple, Some(w), "proper ideal found"),
            Irreducibility::Undetermined => {
                report(ModuleVerdict::Undetermined, None, "irreducibility of T undetermined")
            }
        };
    }
    let mut undetermined = Vec::new();
    match irreducibility(n - j.rank(), &quotient(n, &gens, &j)) {
        Irreducibility::Reducible(w) => {
            let free = j.free_columns();
            let lifted = w.basis().iter().map(|c| {
                let mut v = zero_vector(n);
                for (coord, &f) in c.iter().zip(&free) {
                    v[f] = coord.clone();
                }
                v
            });
            let ideal = j.extend_with(lifted);
            return report(ModuleVerdict::NotSimple, Some(ideal), "ideal strictly between J and T");
        }
        Irreducibility::Undetermined => undetermined.push("T/J"),
        Irreducibility::Irreducible => {}
    }
    match irreducibility(j.rank(), &restrict(&gens, &j)) {
        Irreducibility::Reducible(w) => {
            let vectors: Vec<Vector> = w
                .basis()
                .iter()
                .map(|c| {
                    let mut v = zero_vector(n);
                    for (coef, b) in c.iter().zip(j.basis()) {
                        crate::exact_linear::add_scaled(&mut v, coef, b);
                    }
                    v
                })
                .collect();
            return report(
                ModuleVerdict::NotSimple,
                Some(Subspace::span_unchecked(n, vectors)),
                "nonzero ideal strictly inside J",
            );
        }
        Irreducibility::Undetermined => undetermined.push("J"),
        Irreducibility::Irreducible => {}
    }
    if let Some(w) = invariant_complement(n, &gens, &j) {
        return report(ModuleVerdict::NotSimple, Some(w), "ideal complementing J");
    }
    if undetermined.is_empty() {
        report(ModuleVerdict::Simple, None, "J and T/J are irreducible and J has no ideal complement")
    } else {
        let reason = format!("irreducibility of {} undetermined", undetermined.join(" and "));
        report(ModuleVerdict::Undetermined, None, &reason)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Matrix::from_rows(rows[0].len(), &rows).unwrap()
    }

    #[test]
    fn triangular_action_is_reducible() {
        let gens = [m(&[&[1, 1], &[0, 1]])];
        match irreducibility(2, &gens) {
            Irreducibility::Reducible(w) => assert_eq!(w.rank(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rotation_is_irreducible_over_q_but_undetermined_here() {
        // the commutant is Q(i): irreducible over Q, not absolutely irreducible
        let gens = [m(&[&[0, -1], &[1, 0]])];
        assert_eq!(irreducibility(2, &gens), Irreducibility::Undetermined);
    }

    #[test]
    fn full_matrix_algebra_is_irreducible() {
        let gens = [m(&[&[0, 1], &[0, 0]]), m(&[&[0, 0], &[1, 0]])];
        assert_eq!(irreducibility(2, &gens), Irreducibility::Irreducible);
    }

    #[test]
    fn scalar_only_action_splits() {
        let gens = [Matrix::identity(3)];
        assert!(matches!(irreducibility(3, &gens), Irreducibility::Reducible(_)));
    }

    #[test]
    fn complement_found_for_split_sum() {
        let gens = [m(&[&[1, 0], &[0, 2]])];
        let line = Subspace::span(2, vec![vec![int(1), int(0)]]).unwrap();
        let w = invariant_complement(2, &gens, &line).unwrap();
        assert_eq!(w.basis(), &[vec![int(0), int(1)]]);
        let jordan = [m(&[&[1, 1], &[0, 1]])];
        assert!(invariant_complement(2, &jordan, &line).is_none());
    }

    #[test]
    fn sl2_is_simple_and_zero_is_not() {
        let t = crate::fixtures::sl2_derived();
        assert_eq!(simplicity_by_modules(&t).verdict, ModuleVerdict::Simple);
        let z = TripleSystem::zero(2).unwrap();
        assert_eq!(simplicity_by_modules(&z).verdict, ModuleVerdict::NotSimple);
    }
}
