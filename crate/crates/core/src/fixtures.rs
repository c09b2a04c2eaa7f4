//! Small algebras shared by unit tests.

use crate::embedding::{derived_triple_system, LeibnizAlgebra};
use crate::exact_linear::{int, Vector};
use crate::triple::TripleSystem;

pub(crate) fn vec_of(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| int(x)).collect()
}

/// sl2 on the basis (e, h, f).
pub(crate) fn sl2() -> LeibnizAlgebra {
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

pub(crate) fn sl2_derived() -> TripleSystem {
    derived_triple_system(&sl2()).unwrap()
}

/// Decomposition of a built-in corpus case with its shipped MASA.
pub(crate) fn corpus_decomposition(name: &str) -> crate::split::RootDecomposition {
    let case = crate::corpus::case(name).expect("known corpus case");
    let e = crate::embedding::standard_embedding(&case.system).unwrap();
    crate::split::decompose(&case.system, &e, &case.masa).unwrap()
}

pub(crate) fn root(xs: &[i64]) -> crate::split::Root {
    crate::split::Root(vec_of(xs))
}
