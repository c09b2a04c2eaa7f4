//! JSON file formats for systems, MASAs, embeddings and decompositions.
//!
//! Every file is UTF-8 JSON carrying a `schema_version`. Scalars are strings
//! `"p"` or `"p/q"`. Emitting a parsed canonical file reproduces it byte for
//! byte.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{standard_embedding, EmbeddingError, LeibnizAlgebra, StandardEmbedding};
use crate::exact_linear::{format_scalar, format_vector, parse_scalar, zero_vector, LinalgError, Vector};
use crate::split::{decompose, Root, RootDecomposition, SplitError};
use crate::triple::{TripleError, TripleSystem};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("E_PARSE: {0}")]
    Parse(String),
    #[error("E_INDEX_RANGE: {field}: index {index} is out of range for dimension {dim}")]
    IndexRange { field: String, index: usize, dim: usize },
    #[error("E_BAD_SCALAR: {field}: cannot parse {text:?} as a rational number")]
    BadScalar { field: String, text: String },
    #[error("E_IO: {0}")]
    Io(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Split(#[from] SplitError),
}

fn parse_error(message: impl Into<String>) -> FormatError {
    FormatError::Parse(message.into())
}

impl From<TripleError> for FormatError {
    fn from(e: TripleError) -> Self {
        parse_error(e.to_string())
    }
}

impl From<LinalgError> for FormatError {
    fn from(e: LinalgError) -> Self {
        parse_error(e.to_string())
    }
}

fn default_version() -> u32 {
    SCHEMA_VERSION
}

fn check_version(found: u32) -> Result<(), FormatError> {
    if found == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(parse_error(format!("schema_version {found} is not supported (expected {SCHEMA_VERSION})")))
    }
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| parse_error(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("file types serialize");
    text.push('\n');
    text
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| FormatError::Io(format!("{}: {e}", path.display())))
}

fn parse_scalars(field: &str, items: &[String]) -> Result<Vector, FormatError> {
    items
        .iter()
        .map(|s| parse_scalar(s).map_err(|_| FormatError::BadScalar { field: field.to_string(), text: s.clone() }))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    LeibnizAlgebra,
    LeibnizTripleSystem,
}

impl SystemKind {
    fn arity(self) -> usize {
        match self {
            SystemKind::LeibnizAlgebra => 2,
            SystemKind::LeibnizTripleSystem => 3,
        }
    }
}

/// One nonzero structure constant vector: the product of the basis elements in `args`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub args: Vec<usize>,
    /// Output coordinate index to scalar string; omitted coordinates are zero.
    pub value: BTreeMap<usize, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub kind: SystemKind,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
}

#[derive(Debug, Clone)]
pub enum ParsedSystem {
    Algebra(LeibnizAlgebra),
    Triple(TripleSystem),
}

fn sparse_entry(args: Vec<usize>, v: &[crate::exact_linear::Scalar]) -> Option<ProductEntry> {
    let value: BTreeMap<usize, String> =
        v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, format_scalar(x))).collect();
    (!value.is_empty()).then_some(ProductEntry { args, value })
}

impl SystemFile {
    pub fn from_algebra(l: &LeibnizAlgebra, basis: Option<Vec<String>>) -> Self {
        let n = l.dim();
        let products = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| sparse_entry(vec![i, j], l.entry(i, j)))
            .collect();
        Self { schema_version: SCHEMA_VERSION, kind: SystemKind::LeibnizAlgebra, dim: n, basis, products }
    }

    pub fn from_triple(t: &TripleSystem, basis: Option<Vec<String>>) -> Self {
        let n = t.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    products.extend(sparse_entry(vec![i, j, k], t.entry(i, j, k)));
                }
            }
        }
        Self { schema_version: SCHEMA_VERSION, kind: SystemKind::LeibnizTripleSystem, dim: n, basis, products }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: SystemFile = from_json(text)?;
        check_version(file.schema_version)?;
        if let Some(names) = &file.basis {
            if names.len() != file.dim {
                return Err(parse_error(format!("basis lists {} names for dimension {}", names.len(), file.dim)));
            }
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// Dense structure constants; validates arity, index ranges, scalars and duplicates.
    fn dense(&self) -> Result<BTreeMap<Vec<usize>, Vector>, FormatError> {
        let n = self.dim;
        let arity = self.kind.arity();
        let mut table = BTreeMap::new();
        for (pos, entry) in self.products.iter().enumerate() {
            if entry.args.len() != arity {
                return Err(parse_error(format!(
                    "products[{pos}].args has {} indices, but a {:?} product takes {arity}",
                    entry.args.len(),
                    self.kind
                )));
            }
            for &index in entry.args.iter().chain(entry.value.keys()) {
                if index >= n {
                    return Err(FormatError::IndexRange { field: format!("products[{pos}]"), index, dim: n });
                }
            }
            let mut v = zero_vector(n);
            for (&index, text) in &entry.value {
                v[index] = parse_scalar(text).map_err(|_| FormatError::BadScalar {
                    field: format!("products[{pos}].value.{index}"),
                    text: text.clone(),
                })?;
            }
            if table.insert(entry.args.clone(), v).is_some() {
                return Err(parse_error(format!("products[{pos}]: duplicate args {:?}", entry.args)));
            }
        }
        Ok(table)
    }

    /// Builds the object; identities are not verified.
    pub fn build(&self) -> Result<ParsedSystem, FormatError> {
        let n = self.dim;
        let table = self.dense()?;
        let lookup = |args: Vec<usize>| table.get(&args).cloned().unwrap_or_else(|| zero_vector(n));
        match self.kind {
            SystemKind::LeibnizAlgebra => {
                Ok(ParsedSystem::Algebra(LeibnizAlgebra::from_fn(n, |i, j| lookup(vec![i, j]))?))
            }
            SystemKind::LeibnizTripleSystem => {
                if n == 0 {
                    return Err(parse_error("a triple system needs dimension at least 1"));
                }
                Ok(ParsedSystem::Triple(TripleSystem::from_fn(n, |i, j, k| lookup(vec![i, j, k]))?))
            }
        }
    }

    /// The triple system of the file, deriving it first when the file holds an algebra.
    pub fn triple_system(&self) -> Result<TripleSystem, FormatError> {
        match self.build()? {
            ParsedSystem::Triple(t) => Ok(t),
            ParsedSystem::Algebra(l) => Ok(crate::embedding::derived_triple_system(&l)?),
        }
    }
}

pub fn parse_system(text: &str) -> Result<(SystemFile, ParsedSystem), FormatError> {
    let file = SystemFile::parse(text)?;
    let parsed = file.build()?;
    Ok((file, parsed))
}

pub fn read_system(path: &Path) -> Result<(SystemFile, ParsedSystem), FormatError> {
    parse_system(&read_text(path)?)
}

/// Elements of `L0` spanning an abelian subalgebra, in `L0` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MasaFile {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub l0_dim: usize,
    pub elements: Vec<Vec<String>>,
}

impl MasaFile {
    pub fn new(l0_dim: usize, elements: &[Vector]) -> Self {
        Self { schema_version: SCHEMA_VERSION, l0_dim, elements: elements.iter().map(|v| format_vector(v)).collect() }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: MasaFile = from_json(text)?;
        check_version(file.schema_version)?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// Vectors checked against the `L0` dimension of `e`.
    pub fn elements_for(&self, e: &StandardEmbedding) -> Result<Vec<Vector>, FormatError> {
        if self.l0_dim != e.l0_dim() {
            return Err(parse_error(format!(
                "MASA file is for an L0 of dimension {}, the embedding has {}",
                self.l0_dim,
                e.l0_dim()
            )));
        }
        self.elements
            .iter()
            .enumerate()
            .map(|(pos, items)| {
                if items.len() != self.l0_dim {
                    return Err(parse_error(format!(
                        "elements[{pos}] has {} coordinates, expected {}",
                        items.len(),
                        self.l0_dim
                    )));
                }
                parse_scalars(&format!("elements[{pos}]"), items)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grading {
    /// Coordinates `0..l0_dim` of the algebra form `L0`.
    pub l0_dim: usize,
    /// The next `l1_dim` coordinates form `L1 = T`.
    pub l1_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingFile {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub system: SystemFile,
    pub kernel_rank: usize,
    /// Basis pair `(i, j)` whose class `e_i ⊗ e_j` is each `L0` basis element.
    pub l0_representatives: Vec<[usize; 2]>,
    pub grading: Grading,
    /// Rows of the quotient map `T⊗T → L0`; column `i·n + j` is the class of `e_i ⊗ e_j`.
    pub pair_map: Vec<Vec<String>>,
    pub algebra: SystemFile,
}

impl EmbeddingFile {
    pub fn new(e: &StandardEmbedding, basis: Option<Vec<String>>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            system: SystemFile::from_triple(e.base(), basis),
            kernel_rank: e.kernel_rank(),
            l0_representatives: (0..e.l0_dim())
                .map(|c| {
                    let (i, j) = e.representative(c);
                    [i, j]
                })
                .collect(),
            grading: Grading { l0_dim: e.l0_dim(), l1_dim: e.base().dim() },
            pair_map: e.pair_map().row_vectors().iter().map(|r| format_vector(r)).collect(),
            algebra: SystemFile::from_algebra(e.algebra(), None),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: EmbeddingFile = from_json(text)?;
        check_version(file.schema_version)?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// Rebuilds the embedding from the stored system and rejects a stale file.
    pub fn rebuild(&self) -> Result<StandardEmbedding, FormatError> {
        let t = self.system.triple_system()?;
        let e = standard_embedding(&t)?;
        if EmbeddingFile::new(&e, self.system.basis.clone()) != *self {
            return Err(parse_error("stored embedding does not match the one rebuilt from its system"));
        }
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootRow {
    pub root: Vec<String>,
    pub dim: usize,
}

fn root_rows(table: Vec<(Root, usize)>) -> Vec<RootRow> {
    table.into_iter().map(|(r, dim)| RootRow { root: format_vector(r.values()), dim }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionFile {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub system: SystemFile,
    pub masa: MasaFile,
    pub t_zero_dim: usize,
    pub roots: Vec<RootRow>,
    pub l0_zero_dim: usize,
    pub l0_roots: Vec<RootRow>,
    pub split_certified: bool,
}

impl DecompositionFile {
    pub fn new(d: &RootDecomposition, basis: Option<Vec<String>>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            system: SystemFile::from_triple(d.system(), basis),
            masa: MasaFile::new(d.embedding().l0_dim(), d.masa()),
            t_zero_dim: d.t_zero().rank(),
            roots: root_rows(d.root_table()),
            l0_zero_dim: d.l0_zero().rank(),
            l0_roots: root_rows(d.l0_root_table()),
            split_certified: d.is_split_certified(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: DecompositionFile = from_json(text)?;
        check_version(file.schema_version)?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// Recomputes the decomposition and checks it against the stored tables.
    pub fn rebuild(&self) -> Result<RootDecomposition, FormatError> {
        let t = self.system.triple_system()?;
        let e = standard_embedding(&t)?;
        let masa = self.masa.elements_for(&e)?;
        let d = decompose(&t, &e, &masa)?;
        if DecompositionFile::new(&d, self.system.basis.clone()) != *self {
            return Err(parse_error("stored root tables do not match the recomputed decomposition"));
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_triple_file_is_the_zero_system() {
        let (_, parsed) = parse_system(r#"{"kind": "leibniz_triple_system", "dim": 1, "products": []}"#).unwrap();
        match parsed {
            ParsedSystem::Triple(t) => assert!(t.is_zero_product()),
            ParsedSystem::Algebra(_) => panic!("wrong kind"),
        }
    }

    #[test]
    fn arity_mismatch_is_a_parse_error() {
        let text =
            r#"{"kind": "leibniz_triple_system", "dim": 2, "products": [{"args": [0, 1], "value": {"0": "1"}}]}"#;
        let err = parse_system(text).unwrap_err();
        assert!(matches!(err, FormatError::Parse(_)), "{err}");
    }

    #[test]
    fn diagnostics_carry_codes() {
        let range = r#"{"kind": "leibniz_algebra", "dim": 2, "products": [{"args": [0, 2], "value": {"0": "1"}}]}"#;
        assert!(parse_system(range).unwrap_err().to_string().starts_with("E_INDEX_RANGE"));
        let scalar = r#"{"kind": "leibniz_algebra", "dim": 2, "products": [{"args": [0, 1], "value": {"0": "1/0"}}]}"#;
        assert!(parse_system(scalar).unwrap_err().to_string().starts_with("E_BAD_SCALAR"));
        let syntax = "{\n  \"kind\": \"leibniz_algebra\",\n  \"dim\": }";
        let message = parse_system(syntax).unwrap_err().to_string();
        assert!(message.starts_with("E_PARSE") && message.contains("line 3"), "{message}");
    }

    #[test]
    fn canonical_round_trip() {
        let t = crate::fixtures::sl2_derived();
        let text = SystemFile::from_triple(&t, None).to_json();
        let (file, _) = parse_system(&text).unwrap();
        assert_eq!(file.to_json(), text);
        assert_eq!(file.triple_system().unwrap().entries(), t.entries());
    }
}
