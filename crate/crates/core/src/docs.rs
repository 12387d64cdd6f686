//! JSON document formats for algebras, envelopes, bimodules and derivations,
//! plus loaders that resolve cross-document references.
//!
//! Rationals serialize as strings `"p/q"` (or `"p"` when the denominator is
//! 1); matrices as row-major arrays of such strings. References to other
//! documents are either a path relative to the referring file or the name of
//! a bundled algebra.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Envelope};
use crate::bimodule::Bimodule;
use crate::corpus;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::linalg::{LinMap, Scalar};

pub type MatrixDoc = Vec<Vec<Scalar>>;

pub fn matrix_to_doc(m: &LinMap) -> MatrixDoc {
    m.row_vecs()
}

pub fn matrix_from_doc(doc: &MatrixDoc, rows: usize, cols: usize) -> Result<LinMap> {
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        return Err(Error::Doc(format!("expected a {rows}x{cols} matrix")));
    }
    Ok(LinMap::from_fn(rows, cols, |r, c| doc[r][c].clone()))
}

/// `{ "name", "dim", "basis", "mult" }` with `mult[i][j]` the coefficient
/// vector of `e_i·e_j`.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AlgebraDoc {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub mult: Vec<Vec<Vec<Scalar>>>,
}

impl AlgebraDoc {
    pub fn from_algebra(alg: &Algebra) -> Self {
        AlgebraDoc {
            name: alg.name().to_owned(),
            dim: alg.dim(),
            basis: alg.basis_names().to_vec(),
            mult: alg.structure_constants().to_vec(),
        }
    }

    pub fn to_algebra(&self) -> Result<Arc<Algebra>> {
        if self.basis.len() != self.dim {
            return Err(Error::Doc(format!(
                "algebra {:?}: basis has {} labels for dim {}",
                self.name,
                self.basis.len(),
                self.dim
            )));
        }
        Ok(Arc::new(Algebra::new(
            self.name.clone(),
            self.basis.clone(),
            self.mult.clone(),
        )?))
    }
}

/// Inline document or path to one.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum DocRef<T> {
    Path(String),
    Inline(T),
}

/// `{ "sub", "amb", "embedding" }`.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct EnvelopeDoc {
    pub sub: DocRef<AlgebraDoc>,
    pub amb: DocRef<AlgebraDoc>,
    pub embedding: MatrixDoc,
}

/// `{ "algebra", "dim", "left", "right" }` with one action matrix per
/// algebra basis element on each side.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BimoduleDoc {
    pub algebra: String,
    pub dim: usize,
    pub left: Vec<MatrixDoc>,
    pub right: Vec<MatrixDoc>,
}

impl BimoduleDoc {
    pub fn from_bimodule(algebra_ref: impl Into<String>, x: &Bimodule) -> Self {
        let n = x.algebra().dim();
        BimoduleDoc {
            algebra: algebra_ref.into(),
            dim: x.dim(),
            left: (0..n).map(|i| matrix_to_doc(x.left_action(i))).collect(),
            right: (0..n).map(|i| matrix_to_doc(x.right_action(i))).collect(),
        }
    }

    pub fn to_bimodule(&self, alg: Arc<Algebra>) -> Result<Bimodule> {
        let n = alg.dim();
        if self.left.len() != n || self.right.len() != n {
            return Err(Error::Doc(format!(
                "module needs {n} action matrices per side"
            )));
        }
        let conv = |docs: &[MatrixDoc]| -> Result<Vec<LinMap>> {
            docs.iter()
                .map(|d| matrix_from_doc(d, self.dim, self.dim))
                .collect()
        };
        Bimodule::new(alg, self.dim, conv(&self.left)?, conv(&self.right)?)
    }
}

/// `{ "algebra", "module", "map" }`.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DerivationDoc {
    pub algebra: String,
    pub module: String,
    pub map: MatrixDoc,
}

/// `{ "S", "T" }`: one double centralizer as a pair of matrices.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PairDoc {
    #[serde(rename = "S")]
    pub s: MatrixDoc,
    #[serde(rename = "T")]
    pub t: MatrixDoc,
}

/// Expected cohomology dimensions for a regression entry.
#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedDims {
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
}

/// One module instance of the verification corpus.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ModuleEntry {
    pub name: String,
    pub algebra: String,
    pub module: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedDims>,
}

/// One push-out instance of the verification corpus.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PushoutEntry {
    pub name: String,
    pub envelope: String,
    pub module_b: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<String>,
}

/// The corpus manifest: which documents to verify and what is expected of
/// them.
#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct Manifest {
    pub modules: Vec<ModuleEntry>,
    pub pushouts: Vec<PushoutEntry>,
}

// ---- loading -------------------------------------------------------------

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Read {
        path: path.display().to_string(),
        source: e,
    })?;
    serde_json::from_str(&text).map_err(Error::Json)
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or_else(|| Path::new("."))
}

/// Resolve an algebra reference: a bundled algebra name, or a path relative
/// to `base`.
pub fn resolve_algebra(reference: &str, base: &Path) -> Result<Arc<Algebra>> {
    if let Some(alg) = corpus::builtin_algebra(reference) {
        return Ok(alg);
    }
    load_algebra(&base.join(reference))
}

pub fn load_algebra(path: &Path) -> Result<Arc<Algebra>> {
    read_json::<AlgebraDoc>(path)?.to_algebra()
}

pub fn load_envelope(path: &Path) -> Result<Envelope> {
    let doc: EnvelopeDoc = read_json(path)?;
    let base = base_dir(path);
    let resolve = |r: &DocRef<AlgebraDoc>| -> Result<Arc<Algebra>> {
        match r {
            DocRef::Path(p) => resolve_algebra(p, base),
            DocRef::Inline(d) => d.to_algebra(),
        }
    };
    let sub = resolve(&doc.sub)?;
    let amb = resolve(&doc.amb)?;
    let embedding = matrix_from_doc(&doc.embedding, amb.dim(), sub.dim())?;
    Envelope::new(sub, amb, embedding)
}

pub fn load_bimodule(path: &Path) -> Result<(Arc<Algebra>, Bimodule)> {
    let doc: BimoduleDoc = read_json(path)?;
    let alg = resolve_algebra(&doc.algebra, base_dir(path))?;
    let module = doc.to_bimodule(alg.clone())?;
    Ok((alg, module))
}

pub fn load_derivation(path: &Path) -> Result<(Arc<Algebra>, Derivation)> {
    let doc: DerivationDoc = read_json(path)?;
    let base = base_dir(path);
    let alg = resolve_algebra(&doc.algebra, base)?;
    let (module_alg, module) = load_bimodule(&base.join(&doc.module))?;
    if *module_alg != *alg {
        return Err(Error::Doc(format!(
            "derivation algebra {:?} does not match its module's algebra {:?}",
            alg.name(),
            module_alg.name()
        )));
    }
    let map = matrix_from_doc(&doc.map, module.dim(), alg.dim())?;
    let derivation = Derivation::new(module, map)?;
    Ok((alg, derivation))
}

pub fn load_manifest(path: &Path) -> Result<Manifest> {
    read_json(path)
}

/// What kind of document a JSON file is, detected from its fields.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DocKind {
    Algebra,
    Envelope,
    Bimodule,
    Derivation,
    Manifest,
}

pub fn sniff_kind(value: &serde_json::Value) -> Option<DocKind> {
    let obj = value.as_object()?;
    if obj.contains_key("mult") {
        Some(DocKind::Algebra)
    } else if obj.contains_key("embedding") {
        Some(DocKind::Envelope)
    } else if obj.contains_key("left") && obj.contains_key("right") {
        Some(DocKind::Bimodule)
    } else if obj.contains_key("map") {
        Some(DocKind::Derivation)
    } else if obj.contains_key("modules") || obj.contains_key("pushouts") {
        Some(DocKind::Manifest)
    } else {
        None
    }
}

/// Validate a document of any recognized kind; returns its kind.
pub fn check_document(path: &Path) -> Result<DocKind> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Read {
        path: path.display().to_string(),
        source: e,
    })?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let kind = sniff_kind(&value)
        .ok_or_else(|| Error::Doc(format!("{}: unrecognized document", path.display())))?;
    match kind {
        DocKind::Algebra => {
            load_algebra(path)?;
        }
        DocKind::Envelope => {
            load_envelope(path)?;
        }
        DocKind::Bimodule => {
            load_bimodule(path)?;
        }
        DocKind::Derivation => {
            load_derivation(path)?;
        }
        DocKind::Manifest => {
            load_manifest(path)?;
        }
    }
    Ok(kind)
}
