//! Anyon models: fusion rules, quantum dimensions, twists and the modular S-matrix.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod catalog;
mod validate;

pub use catalog::{catalog_get, catalog_names, table1_names};
pub use validate::{validate, CheckResult, ModelValidationReport};

/// Index of a charge inside its model. Charge 0 is always the vacuum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChargeId(pub usize);

impl ChargeId {
    pub const VACUUM: ChargeId = ChargeId(0);

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ChargeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Quantum dimension, kept symbolic where a closed form is known so that
/// model files round-trip without loss.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QDim {
    One,
    Phi,
    Sqrt2,
    OnePlusSqrt2,
    Value(f64),
}

impl QDim {
    pub fn value(self) -> f64 {
        match self {
            QDim::One => 1.0,
            QDim::Phi => (1.0 + 5f64.sqrt()) / 2.0,
            QDim::Sqrt2 => 2f64.sqrt(),
            QDim::OnePlusSqrt2 => 1.0 + 2f64.sqrt(),
            QDim::Value(v) => v,
        }
    }

    pub fn tag(self) -> Option<&'static str> {
        match self {
            QDim::Phi => Some("phi"),
            QDim::Sqrt2 => Some("sqrt2"),
            QDim::OnePlusSqrt2 => Some("1+sqrt2"),
            _ => None,
        }
    }

    pub fn from_tag(tag: &str) -> Option<QDim> {
        match tag {
            "1" | "one" => Some(QDim::One),
            "phi" => Some(QDim::Phi),
            "sqrt2" => Some(QDim::Sqrt2),
            "1+sqrt2" => Some(QDim::OnePlusSqrt2),
            _ => None,
        }
    }

    pub fn times(self, other: QDim) -> QDim {
        match (self, other) {
            (QDim::One, x) | (x, QDim::One) => x,
            (a, b) => QDim::Value(a.value() * b.value()),
        }
    }
}

/// Raw model data before any axiom checking.
#[derive(Clone, Debug)]
pub struct ModelData {
    pub name: String,
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    /// Sparse fusion table as `(a, b, c, N_ab^c)`; omitted entries are zero.
    pub fusion: Vec<(usize, usize, usize, u32)>,
    pub qdim: Vec<QDim>,
    /// Topological spins as fractions of a full turn.
    pub twist: Vec<Rational64>,
    pub smatrix: Option<DMatrix<Complex64>>,
    pub modular: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnyonModel {
    name: String,
    labels: Vec<String>,
    dual: Vec<usize>,
    fusion: Vec<u32>,
    qdim: Vec<QDim>,
    dims: Vec<f64>,
    twist: Vec<Rational64>,
    smatrix: Option<DMatrix<Complex64>>,
    total_qdim: f64,
    modular: bool,
}

fn reduce_turns(t: Rational64) -> Rational64 {
    let fl = t.floor();
    t - fl
}

impl AnyonModel {
    /// Builds a model after checking only the shapes of the tables. Use
    /// [`validate`] for the fusion and modularity axioms.
    pub fn from_data(data: ModelData) -> Result<Self> {
        let n = data.labels.len();
        if n == 0 {
            return Err(Error::MalformedModel("model has no charges".into()));
        }
        let bad = |what: &str, len: usize| {
            Error::MalformedModel(format!("{what} has length {len}, expected {n}"))
        };
        if data.dual.len() != n {
            return Err(bad("dual", data.dual.len()));
        }
        if data.qdim.len() != n {
            return Err(bad("qdim", data.qdim.len()));
        }
        if data.twist.len() != n {
            return Err(bad("twist", data.twist.len()));
        }
        if let Some(&d) = data.dual.iter().find(|&&d| d >= n) {
            return Err(Error::MalformedModel(format!("dual index {d} out of range")));
        }
        let mut fusion = vec![0u32; n * n * n];
        for &(a, b, c, m) in &data.fusion {
            if a >= n || b >= n || c >= n {
                return Err(Error::MalformedModel(format!(
                    "fusion entry ({a},{b},{c}) out of range"
                )));
            }
            fusion[(a * n + b) * n + c] = m;
        }
        if let Some(s) = &data.smatrix {
            if s.nrows() != n || s.ncols() != n {
                return Err(Error::MalformedModel(format!(
                    "S-matrix is {}x{}, expected {n}x{n}",
                    s.nrows(),
                    s.ncols()
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for l in &data.labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::MalformedModel(format!("duplicate charge label `{l}`")));
            }
        }
        let dims: Vec<f64> = data.qdim.iter().map(|q| q.value()).collect();
        let total_qdim = dims.iter().map(|d| d * d).sum::<f64>().sqrt();
        Ok(AnyonModel {
            name: data.name,
            labels: data.labels,
            dual: data.dual,
            fusion,
            qdim: data.qdim,
            dims,
            twist: data.twist.into_iter().map(reduce_turns).collect(),
            smatrix: data.smatrix,
            total_qdim,
            modular: data.modular,
        })
    }

    pub fn to_data(&self) -> ModelData {
        let n = self.rank();
        let mut fusion = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let m = self.fusion[(a * n + b) * n + c];
                    if m > 0 {
                        fusion.push((a, b, c, m));
                    }
                }
            }
        }
        ModelData {
            name: self.name.clone(),
            labels: self.labels.clone(),
            dual: self.dual.clone(),
            fusion,
            qdim: self.qdim.clone(),
            twist: self.twist.clone(),
            smatrix: self.smatrix.clone(),
            modular: self.modular,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Number of charges.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn charges(&self) -> impl Iterator<Item = ChargeId> {
        (0..self.rank()).map(ChargeId)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, c: ChargeId) -> &str {
        &self.labels[c.0]
    }

    /// Looks a charge up by label, falling back to a numeric index.
    pub fn charge(&self, label: &str) -> Result<ChargeId> {
        let label = label.trim();
        if let Some(i) = self.labels.iter().position(|l| l == label) {
            return Ok(ChargeId(i));
        }
        match label.parse::<usize>() {
            Ok(i) if i < self.rank() => Ok(ChargeId(i)),
            _ => Err(Error::charge(&self.name, label)),
        }
    }

    pub fn dual(&self, c: ChargeId) -> ChargeId {
        ChargeId(self.dual[c.0])
    }

    /// Fusion multiplicity `N_ab^c`.
    pub fn n(&self, a: ChargeId, b: ChargeId, c: ChargeId) -> u32 {
        let r = self.rank();
        self.fusion[(a.0 * r + b.0) * r + c.0]
    }

    /// Nonzero channels of `a x b`.
    pub fn fuse(&self, a: ChargeId, b: ChargeId) -> impl Iterator<Item = (ChargeId, u32)> + '_ {
        let r = self.rank();
        let base = (a.0 * r + b.0) * r;
        self.fusion[base..base + r]
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(c, &m)| (ChargeId(c), m))
    }

    pub fn qdim(&self, c: ChargeId) -> f64 {
        self.dims[c.0]
    }

    pub fn qdim_exact(&self, c: ChargeId) -> QDim {
        self.qdim[c.0]
    }

    pub fn qdims(&self) -> &[f64] {
        &self.dims
    }

    /// Total quantum dimension `D`.
    pub fn total_qdim(&self) -> f64 {
        self.total_qdim
    }

    /// `D^2 = sum_a d_a^2`, summed directly rather than squared from `D`.
    pub fn total_qdim_sq(&self) -> f64 {
        self.dims.iter().map(|d| d * d).sum()
    }

    pub fn twist_turns(&self, c: ChargeId) -> Rational64 {
        self.twist[c.0]
    }

    pub fn twist(&self, c: ChargeId) -> Complex64 {
        let t = self.twist[c.0];
        let x = *t.numer() as f64 / *t.denom() as f64;
        Complex64::from_polar(1.0, 2.0 * PI * x)
    }

    pub fn smatrix(&self) -> Option<&DMatrix<Complex64>> {
        self.smatrix.as_ref()
    }

    pub fn is_modular(&self) -> bool {
        self.modular && self.smatrix.is_some()
    }

    pub(crate) fn require_modular(&self) -> Result<&DMatrix<Complex64>> {
        match (&self.smatrix, self.modular) {
            (Some(s), true) => Ok(s),
            _ => Err(Error::NotModular(self.name.clone())),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.dims.iter().all(|&d| (d - 1.0).abs() < 1e-12)
    }

    /// Fusion matrix `(N_a)_{bc} = N_ab^c`.
    pub fn fusion_matrix(&self, a: ChargeId) -> DMatrix<f64> {
        let r = self.rank();
        DMatrix::from_fn(r, r, |b, c| self.n(a, ChargeId(b), ChargeId(c)) as f64)
    }

    /// Time-reversed model: conjugated twists and S-matrix.
    pub fn conjugate(&self) -> AnyonModel {
        let mut m = self.clone();
        m.name = format!("conj({})", self.name);
        m.twist = self.twist.iter().map(|&t| reduce_turns(-t)).collect();
        m.smatrix = self.smatrix.as_ref().map(|s| s.map(|z| z.conj()));
        m
    }

    /// Parses a label list `a,b,c` into charges.
    pub fn parse_charges(&self, list: &str) -> Result<Vec<ChargeId>> {
        if list.trim().is_empty() {
            return Ok(Vec::new());
        }
        list.split(',').map(|s| self.charge(s)).collect()
    }
}

/// Deligne product `m1 x m2`. Charge `(i, j)` gets index `i * rank(m2) + j`.
pub fn product(m1: &AnyonModel, m2: &AnyonModel) -> AnyonModel {
    let (r1, r2) = (m1.rank(), m2.rank());
    let idx = |i: usize, j: usize| i * r2 + j;
    let mut labels = Vec::with_capacity(r1 * r2);
    let mut dual = Vec::with_capacity(r1 * r2);
    let mut qdim = Vec::with_capacity(r1 * r2);
    let mut twist = Vec::with_capacity(r1 * r2);
    for i in 0..r1 {
        for j in 0..r2 {
            labels.push(format!("({},{})", m1.labels[i], m2.labels[j]));
            dual.push(idx(m1.dual[i], m2.dual[j]));
            qdim.push(m1.qdim[i].times(m2.qdim[j]));
            twist.push(m1.twist[i] + m2.twist[j]);
        }
    }
    let mut fusion = Vec::new();
    for a1 in m1.charges() {
        for b1 in m1.charges() {
            for (c1, n1) in m1.fuse(a1, b1) {
                for a2 in m2.charges() {
                    for b2 in m2.charges() {
                        for (c2, n2) in m2.fuse(a2, b2) {
                            fusion.push((idx(a1.0, a2.0), idx(b1.0, b2.0), idx(c1.0, c2.0), n1 * n2));
                        }
                    }
                }
            }
        }
    }
    let smatrix = match (&m1.smatrix, &m2.smatrix) {
        (Some(s1), Some(s2)) => Some(s1.kronecker(s2)),
        _ => None,
    };
    let data = ModelData {
        name: format!("{}x{}", m1.name, m2.name),
        labels,
        dual,
        fusion,
        qdim,
        twist,
        modular: m1.is_modular() && m2.is_modular(),
        smatrix,
    };
    AnyonModel::from_data(data).expect("product of well-formed models is well-formed")
}

/// S-matrix from the balancing identity
/// `S_ab = D^-1 sum_c N_{abar b}^c d_c theta_c / (theta_a theta_b)`.
pub fn smatrix_from_twists(m: &AnyonModel) -> DMatrix<Complex64> {
    let r = m.rank();
    let d = m.total_qdim();
    DMatrix::from_fn(r, r, |a, b| {
        let (a, b) = (ChargeId(a), ChargeId(b));
        let abar = m.dual(a);
        let mut s = Complex64::new(0.0, 0.0);
        for (c, mult) in m.fuse(abar, b) {
            s += m.twist(c) * (mult as f64 * m.qdim(c));
        }
        s / (m.twist(a) * m.twist(b)) / d
    })
}

/// Fusion multiplicity reconstructed from the S-matrix by the Verlinde formula.
pub fn verlinde(s: &DMatrix<Complex64>, a: usize, b: usize, c: usize) -> Complex64 {
    (0..s.nrows())
        .map(|x| s[(a, x)] * s[(b, x)] * s[(c, x)].conj() / s[(0, x)])
        .sum()
}

/// Multiplicities `N^c_{a1 a2 ... an}` for every total charge `c`.
pub fn fusion_vector(m: &AnyonModel, charges: &[ChargeId]) -> Vec<u64> {
    let r = m.rank();
    let mut v = vec![0u64; r];
    v[0] = 1;
    for &a in charges {
        v = apply_charge(m, &v, a);
    }
    v
}

pub(crate) fn apply_charge(m: &AnyonModel, v: &[u64], a: ChargeId) -> Vec<u64> {
    let r = m.rank();
    let mut out = vec![0u64; r];
    for (e, &ve) in v.iter().enumerate() {
        if ve == 0 {
            continue;
        }
        for (c, mult) in m.fuse(ChargeId(e), a) {
            out[c.0] += ve * mult as u64;
        }
    }
    out
}

/// Dimension of the fusion space of `charges` with total charge `total`.
pub fn fusion_space_dim(m: &AnyonModel, charges: &[ChargeId], total: ChargeId) -> u64 {
    fusion_vector(m, charges)[total.0]
}

/// Ground-state degeneracy on a genus-`g` surface with punctures, from the S-matrix.
pub fn genus_dim(m: &AnyonModel, g: u32, charges: &[ChargeId]) -> Result<f64> {
    let s = m.require_modular()?;
    let power = 2 - charges.len() as i32 - 2 * g as i32;
    let mut total = Complex64::new(0.0, 0.0);
    for x in 0..m.rank() {
        let mut term = Complex64::new(s[(0, x)].re.powi(power), 0.0);
        for a in charges {
            term *= s[(a.0, x)];
        }
        total += term;
    }
    Ok(total.re)
}

/// The same degeneracy by summing fusion multiplicities over handle charges:
/// each handle contributes `sum_z N_z N_zbar`.
pub fn genus_dim_by_fusion(m: &AnyonModel, g: u32, charges: &[ChargeId]) -> u64 {
    let r = m.rank();
    let mut v = vec![0u64; r];
    v[0] = 1;
    for _ in 0..g {
        let mut next = vec![0u64; r];
        for z in m.charges() {
            let w = apply_charge(m, &apply_charge(m, &v, z), m.dual(z));
            for (n, x) in next.iter_mut().zip(w) {
                *n += x;
            }
        }
        v = next;
    }
    for &a in charges {
        v = apply_charge(m, &v, a);
    }
    v[0]
}
