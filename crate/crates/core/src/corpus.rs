//! Built-in example systems.
//!
//! Each case bundles a triple system with a MASA of its standard embedding.
//! Cases built from a Leibniz algebra also emit the algebra itself.

use crate::embedding::{derived_triple_system, standard_embedding, LeibnizAlgebra};
use crate::exact_linear::{unit_vector, zero_vector, Scalar, Vector};
use crate::format::{MasaFile, SystemFile};
use crate::triple::TripleSystem;

fn coords(n: usize, pairs: &[(usize, i64)]) -> Vector {
    let mut v = zero_vector(n);
    for &(i, c) in pairs {
        v[i] += Scalar::from_integer(c.into());
    }
    v
}

/// Bracket of sl2 on the basis `(e, h, f)` as a table of `(i, j) -> [(k, c)]`.
fn sl2_bracket(i: usize, j: usize) -> &'static [(usize, i64)] {
    match (i, j) {
        (0, 2) => &[(1, 1)],
        (2, 0) => &[(1, -1)],
        (1, 0) => &[(0, 2)],
        (0, 1) => &[(0, -2)],
        (1, 2) => &[(2, -2)],
        (2, 1) => &[(2, 2)],
        _ => &[],
    }
}

/// `[e2, e2] = e1` in dimension two, written on indices `0, 1`.
pub fn nilpotent_square() -> LeibnizAlgebra {
    LeibnizAlgebra::from_fn(2, |i, j| if (i, j) == (1, 1) { coords(2, &[(0, 1)]) } else { zero_vector(2) })
        .expect("valid table")
}

/// sl2 on `(e, h, f)`.
pub fn sl2() -> LeibnizAlgebra {
    LeibnizAlgebra::from_fn(3, |i, j| coords(3, sl2_bracket(i, j))).expect("valid table")
}

/// `sl2 ⊕ sl2` on `(e1, h1, f1, e2, h2, f2)`.
pub fn sl2_sum() -> LeibnizAlgebra {
    LeibnizAlgebra::from_fn(6, |i, j| {
        if i / 3 != j / 3 {
            return zero_vector(6);
        }
        let shift = 3 * (i / 3);
        let table: Vec<(usize, i64)> = sl2_bracket(i % 3, j % 3).iter().map(|&(k, c)| (k + shift, c)).collect();
        coords(6, &table)
    })
    .expect("valid table")
}

/// `sl2 ⋉ M` for the adjoint module `M` on `(e, h, f, eM, hM, fM)`, with
/// `[x + m, y + n] = [x, y] + [m, y]`.
pub fn hemisemidirect_adjoint() -> LeibnizAlgebra {
    LeibnizAlgebra::from_fn(6, |i, j| match (i / 3, j / 3) {
        (0, 0) => coords(6, sl2_bracket(i, j)),
        (1, 0) => {
            let table: Vec<(usize, i64)> = sl2_bracket(i - 3, j).iter().map(|&(k, c)| (k + 3, c)).collect();
            coords(6, &table)
        }
        _ => zero_vector(6),
    })
    .expect("valid table")
}

/// `sl2 ⋉ V` for the natural module on `(e, h, f, v1, v2)`, with
/// `[x + m, y + n] = [x, y] - ρ(y)m`, where `v1` has weight `1`, `e·v2 = v1`
/// and `f·v1 = v2`.
pub fn hemisemidirect_natural() -> LeibnizAlgebra {
    LeibnizAlgebra::from_fn(5, |i, j| match (i, j) {
        (0..=2, 0..=2) => coords(5, sl2_bracket(i, j)),
        (3, 1) => coords(5, &[(3, -1)]),
        (4, 1) => coords(5, &[(4, 1)]),
        (4, 0) => coords(5, &[(3, -1)]),
        (3, 2) => coords(5, &[(4, -1)]),
        _ => zero_vector(5),
    })
    .expect("valid table")
}

/// A triple system together with a MASA of its standard embedding.
#[derive(Debug, Clone)]
pub struct Case {
    pub name: &'static str,
    pub description: &'static str,
    pub algebra: Option<LeibnizAlgebra>,
    pub system: TripleSystem,
    pub basis: Option<Vec<String>>,
    /// MASA elements in `L0` coordinates.
    pub masa: Vec<Vector>,
    pub l0_dim: usize,
}

fn names(list: &[&str]) -> Option<Vec<String>> {
    Some(list.iter().map(|s| s.to_string()).collect())
}

/// `masa_pairs` lists basis pairs `(i, j)` whose classes `e_i ⊗ e_j` span the MASA.
fn from_algebra(
    name: &'static str,
    description: &'static str,
    algebra: LeibnizAlgebra,
    basis: Option<Vec<String>>,
    masa_pairs: &[(usize, usize)],
) -> Case {
    let system = derived_triple_system(&algebra).expect("corpus algebras are Leibniz");
    from_system(name, description, Some(algebra), system, basis, masa_pairs)
}

fn from_system(
    name: &'static str,
    description: &'static str,
    algebra: Option<LeibnizAlgebra>,
    system: TripleSystem,
    basis: Option<Vec<String>>,
    masa_pairs: &[(usize, usize)],
) -> Case {
    let n = system.dim();
    let e = standard_embedding(&system).expect("corpus systems embed");
    let masa = masa_pairs
        .iter()
        .map(|&(i, j)| e.embed_pair(&unit_vector(n, i), &unit_vector(n, j)).expect("basis pair"))
        .collect();
    Case { name, description, algebra, system, basis, masa, l0_dim: e.l0_dim() }
}

/// Every built-in case, in a fixed order.
pub fn cases() -> Vec<Case> {
    let mut out: Vec<Case> = (1..=3)
        .map(|n| {
            let (name, description) = match n {
                1 => ("c1-zero-1", "zero triple system of dimension 1"),
                2 => ("c1-zero-2", "zero triple system of dimension 2"),
                _ => ("c1-zero-3", "zero triple system of dimension 3"),
            };
            from_system(name, description, None, TripleSystem::zero(n).expect("positive dimension"), None, &[])
        })
        .collect();
    out.push(from_algebra(
        "c2-nilpotent",
        "2-dimensional Leibniz algebra [e2,e2] = e1",
        nilpotent_square(),
        names(&["e1", "e2"]),
        &[],
    ));
    out.push(from_algebra("c3-sl2", "sl2 with its Cartan subalgebra", sl2(), names(&["e", "h", "f"]), &[(0, 2)]));
    out.push(from_algebra(
        "c4-sl2-sum",
        "sl2 + sl2 with the sum of the Cartan subalgebras",
        sl2_sum(),
        names(&["e1", "h1", "f1", "e2", "h2", "f2"]),
        &[(0, 2), (3, 5)],
    ));
    out.push(from_algebra(
        "c5-hs-adjoint",
        "hemisemidirect product of sl2 with its adjoint module",
        hemisemidirect_adjoint(),
        names(&["e", "h", "f", "eM", "hM", "fM"]),
        &[(0, 2), (3, 2)],
    ));
    out.push(from_algebra(
        "c6-hs-natural",
        "hemisemidirect product of sl2 with its natural module",
        hemisemidirect_natural(),
        names(&["e", "h", "f", "v1", "v2"]),
        &[(0, 2)],
    ));
    out
}

pub fn case(name: &str) -> Option<Case> {
    cases().into_iter().find(|c| c.name == name)
}

/// A named file the corpus can emit.
#[derive(Debug, Clone)]
pub struct CorpusFile {
    pub name: String,
    pub description: String,
    pub contents: String,
}

/// Files per case: `<name>-algebra` when the case has one, `<name>`, and `<name>-masa`.
pub fn build_corpus() -> Vec<CorpusFile> {
    let mut files = Vec::new();
    for c in cases() {
        if let Some(algebra) = &c.algebra {
            files.push(CorpusFile {
                name: format!("{}-algebra", c.name),
                description: format!("{} (Leibniz algebra)", c.description),
                contents: SystemFile::from_algebra(algebra, c.basis.clone()).to_json(),
            });
        }
        let kind = if c.algebra.is_some() { "derived triple system" } else { "triple system" };
        files.push(CorpusFile {
            name: c.name.to_string(),
            description: format!("{} ({kind})", c.description),
            contents: SystemFile::from_triple(&c.system, c.basis.clone()).to_json(),
        });
        files.push(CorpusFile {
            name: format!("{}-masa", c.name),
            description: format!("{} (MASA)", c.description),
            contents: MasaFile::new(c.l0_dim, &c.masa).to_json(),
        });
    }
    files
}

pub fn corpus_file(name: &str) -> Option<CorpusFile> {
    build_corpus().into_iter().find(|f| f.name == name)
}
