//! Connections between roots, the `J`-partition of the root system, ideal
//! computations and the simplicity characterization.

mod connection;
mod ideals;
mod modules;
mod simplicity;

use thiserror::Error;

use crate::exact_linear::LinalgError;
use crate::split::{Root, SplitError};
use crate::triple::TripleError;

pub use connection::{
    connection_classes, find_connection, find_nj_connection, is_root_subsystem, j_partition, nj_class_of, nj_classes,
    subsystem_from_roots, t_lambda_class, ClassReport, ClassSubspace, Connection, ConnectionKind, JPartition,
    NjClasses, Part, RootSubsystem,
};
pub use ideals::{
    check_root_multiplicative, enumerate_ideals_maximal_length, lie_annihilator, mutually_annihilating, IdealFamily,
    LabeledIdeal, LieAnnihilator, MultiplicativityFailure, MultiplicativityReport, DEFAULT_SUBSET_CAP,
};
pub use modules::{irreducibility, simplicity_by_modules, Irreducibility, ModuleSimplicity, ModuleVerdict};
pub use simplicity::{
    simplicity_report, BruteForceVerdict, Hypotheses, PropositionChecks, SimplicityReport, TheoremVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectError {
    #[error("E_ROOT_UNKNOWN: {0} is not a root of T")]
    RootUnknown(Root),
    #[error("E_NOT_SUBSET: {0} is not in Λ¹")]
    NotSubset(Root),
    #[error("E_NOT_SPLIT: the decomposition is not certified split")]
    NotSplitCertified,
    #[error("E_MIXED_ROOT_SPACE: T_{0} is neither contained in J nor disjoint from it")]
    MixedRootSpace(Root),
    #[error("E_DIFFERENT_PARTS: {alpha} and {beta} lie in different parts of Λ¹")]
    DifferentParts { alpha: Root, beta: Root },
    #[error("E_WRONG_PART: {root} is not in the {part} part")]
    WrongPart { root: Root, part: Part },
    #[error("E_NOT_MAXIMAL_LENGTH: some root space has dimension greater than one")]
    NotMaximalLength,
    #[error("E_TOO_MANY_ROOTS: {count} roots exceed the subset cap of {cap}")]
    TooManyRoots { count: usize, cap: usize },
    #[error("E_VERDICT_MISMATCH: {detail}")]
    VerdictMismatch { detail: String },
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
