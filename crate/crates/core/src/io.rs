//! JSON documents for models, states and fermionic models, and CSV/JSON
//! export of sweep results.
//!
//! Every file is `{"kind": ..., "version": 1, "payload": ...}`. Unknown
//! fields are rejected. Complex numbers are `[re, im]` pairs and matrices
//! are flat row-major lists.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::entropy::EntropyReport;
use crate::error::{Error, Result};
use crate::fermionic::{make_super, SuperModel};
use crate::linalg::CMat;
use crate::model::{catalog_get, validate, AnyonModel, ChargeId, ModelData, QDim};
use crate::state::{BipartitePureState, Block, SectorState};
use crate::tee::TeeResult;

pub const FORMAT_VERSION: u32 = 1;

/// Tolerance used when a loaded model is checked against the axioms.
pub const LOAD_TOL: f64 = 1e-9;

pub const CSV_COLUMNS: [&str; 13] = [
    "model",
    "geometry",
    "convention",
    "n",
    "m",
    "l",
    "charges",
    "alpha",
    "entropy",
    "linear_term",
    "topo_term",
    "charge_term",
    "F",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document<T> {
    pub kind: String,
    pub version: u32,
    pub payload: T,
}

#[derive(Deserialize)]
struct Header {
    kind: String,
    version: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QDimRepr {
    Tag(String),
    Value(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub charges: Vec<String>,
    pub dual: Vec<usize>,
    /// `[a, b, c, N_ab^c]`, zero entries omitted.
    pub fusion: Vec<[u64; 4]>,
    pub qdim: Vec<QDimRepr>,
    /// Fractions of a full turn, e.g. `"2/5"`.
    pub twist: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smatrix: Option<Vec<[f64; 2]>>,
    pub modular: bool,
}

/// A catalog name or an inline model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelRef {
    Name(String),
    Inline(Box<ModelFile>),
}

fn is_one(x: &u64) -> bool {
    *x == 1
}

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorEntry {
    pub charge: String,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub multiplicity: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_tags: Option<Vec<String>>,
    #[serde(rename = "W")]
    pub w: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BipartiteEntry {
    pub charge: String,
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    pub psi: Vec<[f64; 2]>,
}

/// Either `sectors` (a mixed state) or `bipartite` (a pure state of A and B).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub model: ModelRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sectors: Option<Vec<SectorEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartite: Option<Vec<BipartiteEntry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuperFile {
    pub model: ModelRef,
    pub fermion: String,
}

pub enum LoadedState {
    Mixed(SectorState),
    Pure(BipartitePureState),
}

fn parse_err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Parses a document of the given kind, reporting line, column and field path on failure.
pub fn parse_document<T: DeserializeOwned>(text: &str, kind: &str, origin: &str) -> Result<T> {
    let header: Header =
        serde_json::from_str(text).map_err(|e| parse_err(origin, format!("bad document header: {e}")))?;
    if header.kind != kind {
        return Err(parse_err(
            origin,
            format!("expected a `{kind}` document, found `{}`", header.kind),
        ));
    }
    if header.version != FORMAT_VERSION {
        return Err(Error::Version {
            kind: kind.to_string(),
            expected: FORMAT_VERSION,
            found: header.version,
        });
    }
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: Document<T> = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let inner = e.inner();
        parse_err(
            origin,
            format!(
                "line {} column {}: field `{}`: {}",
                inner.line(),
                inner.column(),
                e.path(),
                inner
            ),
        )
    })?;
    Ok(doc.payload)
}

pub fn document_string<T: Serialize>(kind: &str, payload: &T) -> Result<String> {
    let doc = Document {
        kind: kind.to_string(),
        version: FORMAT_VERSION,
        payload,
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn pairs(m: &CMat) -> Vec<[f64; 2]> {
    // nalgebra stores column-major
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push([m[(i, j)].re, m[(i, j)].im]);
        }
    }
    out
}

fn matrix(v: &[[f64; 2]], rows: usize, cols: usize, what: &str) -> Result<CMat> {
    if v.len() != rows * cols {
        return Err(Error::InvalidState(format!(
            "{what} has {} entries, expected {rows}x{cols}",
            v.len()
        )));
    }
    Ok(DMatrix::from_fn(rows, cols, |i, j| {
        let [re, im] = v[i * cols + j];
        Complex64::new(re, im)
    }))
}

fn square(v: &[[f64; 2]], what: &str) -> Result<CMat> {
    let n = (v.len() as f64).sqrt().round() as usize;
    if n * n != v.len() {
        return Err(Error::InvalidState(format!("{what} has {} entries, not a square", v.len())));
    }
    matrix(v, n, n, what)
}

pub fn model_to_file(m: &AnyonModel) -> ModelFile {
    let data = m.to_data();
    ModelFile {
        name: data.name,
        charges: data.labels,
        dual: data.dual,
        fusion: data.fusion.iter().map(|&(a, b, c, n)| [a as u64, b as u64, c as u64, n as u64]).collect(),
        qdim: data
            .qdim
            .iter()
            .map(|q| match q.tag() {
                Some(t) => QDimRepr::Tag(t.to_string()),
                None => QDimRepr::Value(q.value()),
            })
            .collect(),
        twist: data.twist.iter().map(|t| t.to_string()).collect(),
        smatrix: data.smatrix.as_ref().map(pairs),
        modular: data.modular,
    }
}

/// Builds the model and checks it: the fusion axioms always, the modular
/// ones when the file declares the model modular.
pub fn model_from_file(f: &ModelFile, origin: &str) -> Result<AnyonModel> {
    let qdim = f
        .qdim
        .iter()
        .enumerate()
        .map(|(i, q)| match q {
            QDimRepr::Tag(t) => QDim::from_tag(t).ok_or_else(|| parse_err(origin, format!("qdim[{i}]: unknown tag `{t}`"))),
            QDimRepr::Value(v) if *v == 1.0 => Ok(QDim::One),
            QDimRepr::Value(v) => Ok(QDim::Value(*v)),
        })
        .collect::<Result<Vec<_>>>()?;
    let twist = f
        .twist
        .iter()
        .enumerate()
        .map(|(i, t)| {
            t.trim()
                .parse::<Rational64>()
                .map_err(|e| parse_err(origin, format!("twist[{i}]: `{t}`: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let fusion = f
        .fusion
        .iter()
        .map(|&[a, b, c, n]| {
            let n = u32::try_from(n).map_err(|_| parse_err(origin, format!("fusion multiplicity {n} too large")))?;
            Ok((a as usize, b as usize, c as usize, n))
        })
        .collect::<Result<Vec<_>>>()?;
    let smatrix = f.smatrix.as_deref().map(|s| square(s, "smatrix")).transpose()?;
    let m = AnyonModel::from_data(ModelData {
        name: f.name.clone(),
        labels: f.charges.clone(),
        dual: f.dual.clone(),
        fusion,
        qdim,
        twist,
        smatrix,
        modular: f.modular,
    })?;
    let report = validate(&m, LOAD_TOL);
    let failed = report
        .checks
        .iter()
        .find(|c| !c.passed && (f.modular || !report_is_modular_check(c.name)));
    if let Some(c) = failed {
        return Err(Error::ModelCheck {
            check: c.name.to_string(),
            residual: c.residual,
        });
    }
    Ok(m)
}

fn report_is_modular_check(name: &str) -> bool {
    matches!(name, "s_unitary" | "s_symmetric" | "s_dimensions" | "balancing" | "verlinde")
}

fn resolve(r: &ModelRef, origin: &str) -> Result<AnyonModel> {
    match r {
        ModelRef::Name(n) => catalog_get(n),
        ModelRef::Inline(f) => model_from_file(f, origin),
    }
}

pub fn model_json(m: &AnyonModel) -> Result<String> {
    document_string("model", &model_to_file(m))
}

pub fn save_model(m: &AnyonModel, path: &Path) -> Result<()> {
    fs::write(path, model_json(m)?)?;
    Ok(())
}

pub fn parse_model(text: &str, origin: &str) -> Result<AnyonModel> {
    let f: ModelFile = parse_document(text, "model", origin)?;
    model_from_file(&f, origin)
}

pub fn load_model(path: &Path) -> Result<AnyonModel> {
    parse_model(&read(path)?, &path.display().to_string())
}

/// Resolves a catalog name, or a path to a model file.
pub fn model_from_name_or_path(spec: &str) -> Result<AnyonModel> {
    match catalog_get(spec) {
        Ok(m) => Ok(m),
        Err(e) => {
            let p = Path::new(spec);
            if p.is_file() {
                load_model(p)
            } else {
                Err(e)
            }
        }
    }
}

fn model_ref(m: &AnyonModel, inline: bool) -> ModelRef {
    if inline {
        ModelRef::Inline(Box::new(model_to_file(m)))
    } else {
        ModelRef::Name(m.name().to_string())
    }
}

fn use_inline(m: &AnyonModel) -> bool {
    catalog_get(m.name()).map(|c| c != *m).unwrap_or(true)
}

pub fn state_to_file(s: &SectorState) -> StateFile {
    let m = s.model();
    let mut sectors = Vec::new();
    for (&c, blocks) in s.sectors() {
        for b in blocks {
            sectors.push(SectorEntry {
                charge: m.label(c).to_string(),
                multiplicity: b.multiplicity,
                basis_tags: b.tags.clone(),
                w: pairs(&b.w),
            });
        }
    }
    StateFile {
        model: model_ref(m, use_inline(m)),
        sectors: Some(sectors),
        bipartite: None,
    }
}

pub fn pure_state_to_file(psi: &BipartitePureState) -> StateFile {
    let m = psi.model();
    let blocks = psi
        .blocks()
        .iter()
        .map(|(&c, b)| BipartiteEntry {
            charge: m.label(c).to_string(),
            dim_a: b.nrows(),
            dim_b: b.ncols(),
            psi: pairs(b),
        })
        .collect();
    StateFile {
        model: model_ref(m, use_inline(m)),
        sectors: None,
        bipartite: Some(blocks),
    }
}

pub fn state_from_file(f: &StateFile, origin: &str) -> Result<LoadedState> {
    let m = Arc::new(resolve(&f.model, origin)?);
    match (&f.sectors, &f.bipartite) {
        (Some(entries), None) => {
            let mut sectors: BTreeMap<ChargeId, Vec<Block>> = BTreeMap::new();
            for (i, e) in entries.iter().enumerate() {
                let c = m.charge(&e.charge)?;
                let w = square(&e.w, &format!("sectors[{i}].W"))?;
                if let Some(t) = &e.basis_tags {
                    if t.len() != w.nrows() {
                        return Err(parse_err(origin, format!("sectors[{i}].basis_tags: {} tags for dimension {}", t.len(), w.nrows())));
                    }
                }
                sectors.entry(c).or_default().push(Block {
                    w,
                    multiplicity: e.multiplicity,
                    tags: e.basis_tags.clone(),
                });
            }
            Ok(LoadedState::Mixed(SectorState::new(m, sectors)?))
        }
        (None, Some(entries)) => {
            let mut blocks = BTreeMap::new();
            for (i, e) in entries.iter().enumerate() {
                let c = m.charge(&e.charge)?;
                let b = matrix(&e.psi, e.dim_a, e.dim_b, &format!("bipartite[{i}].psi"))?;
                if blocks.insert(c, b).is_some() {
                    return Err(parse_err(origin, format!("bipartite[{i}]: charge `{}` repeated", e.charge)));
                }
            }
            Ok(LoadedState::Pure(BipartitePureState::new(m, blocks)?))
        }
        _ => Err(parse_err(origin, "a state needs exactly one of `sectors` and `bipartite`")),
    }
}

pub fn state_json(s: &SectorState) -> Result<String> {
    document_string("state", &state_to_file(s))
}

pub fn save_state(s: &SectorState, path: &Path) -> Result<()> {
    fs::write(path, state_json(s)?)?;
    Ok(())
}

pub fn save_pure_state(psi: &BipartitePureState, path: &Path) -> Result<()> {
    fs::write(path, document_string("state", &pure_state_to_file(psi))?)?;
    Ok(())
}

pub fn parse_state(text: &str, origin: &str) -> Result<LoadedState> {
    let f: StateFile = parse_document(text, "state", origin)?;
    state_from_file(&f, origin)
}

pub fn load_state(path: &Path) -> Result<LoadedState> {
    parse_state(&read(path)?, &path.display().to_string())
}

pub fn save_super(sm: &SuperModel, path: &Path) -> Result<()> {
    let m = sm.base();
    let f = SuperFile {
        model: model_ref(m, use_inline(m)),
        fermion: m.label(sm.fermion()).to_string(),
    };
    fs::write(path, document_string("super", &f)?)?;
    Ok(())
}

pub fn load_super(path: &Path) -> Result<SuperModel> {
    let origin = path.display().to_string();
    let f: SuperFile = parse_document(&read(path)?, "super", &origin)?;
    let m = resolve(&f.model, &origin)?;
    let psi = m.charge(&f.fermion)?;
    make_super(&m, psi)
}

/// 17 significant digits in scientific notation.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn export_csv<W: Write>(rows: &[TeeResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(CSV_COLUMNS).map_err(csv_err)?;
    let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in rows {
        w.write_record([
            r.model.clone(),
            r.geometry.clone(),
            r.convention.as_str().to_string(),
            r.n.to_string(),
            opt(r.m),
            opt(r.l),
            r.charges.clone(),
            fmt_real(r.alpha),
            fmt_real(r.entropy),
            fmt_real(r.linear_term),
            fmt_real(r.topo_term),
            fmt_real(r.charge_term),
            fmt_real(r.f),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_json(rows: &[TeeResult]) -> Result<String> {
    document_string("result", &rows)
}

pub fn import_json(text: &str, origin: &str) -> Result<Vec<TeeResult>> {
    parse_document(text, "result", origin)
}

/// `{vn, renyi: {alpha: value}, shannon, charge, units}`.
pub fn report_json(r: &EntropyReport) -> serde_json::Value {
    let renyi: serde_json::Map<String, serde_json::Value> = r
        .renyi
        .iter()
        .map(|v| (v.alpha.to_string(), serde_json::json!(v.value)))
        .collect();
    serde_json::json!({
        "vn": r.von_neumann,
        "renyi": renyi,
        "shannon": r.shannon_part,
        "charge": r.charge_part,
        "units": r.units,
    })
}
