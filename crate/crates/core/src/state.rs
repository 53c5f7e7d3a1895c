//! Anyonic density matrices stored as total-charge sector blocks.
//!
//! A sector `c` holds a direct sum of blocks `W`, each possibly repeated
//! `multiplicity` times. The density operator restricted to sector `c` is
//! `W_c / d_c`, so `p_c = Tr W_c` and the quantum trace is `sum_c p_c`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, hermiticity_residual, kron, CMat};
use crate::model::{AnyonModel, ChargeId};

pub const STATE_TOL: f64 = 1e-9;

/// Largest sector dimension that will be expanded into a dense matrix.
pub const DENSE_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub w: CMat,
    pub multiplicity: u64,
    pub tags: Option<Vec<String>>,
}

impl Block {
    pub fn new(w: CMat) -> Self {
        Block {
            w,
            multiplicity: 1,
            tags: None,
        }
    }

    pub fn scalar(x: f64) -> Self {
        Block::new(CMat::from_element(1, 1, Complex64::new(x, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.w.nrows()
    }

    fn trace(&self) -> f64 {
        self.w.trace().re * self.multiplicity as f64
    }
}

#[derive(Clone, Debug)]
pub struct SectorState {
    model: Arc<AnyonModel>,
    sectors: BTreeMap<ChargeId, Vec<Block>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectorSpectrum {
    pub charge: ChargeId,
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<u64>,
}

pub(crate) fn same_model(a: &Arc<AnyonModel>, b: &Arc<AnyonModel>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ModelMismatch(a.name().into(), b.name().into()))
    }
}

/// Checks that `p` is a probability vector.
pub fn check_distribution(p: &[f64]) -> Result<()> {
    if let Some(x) = p.iter().find(|x| !x.is_finite() || **x < -STATE_TOL) {
        return Err(Error::InvalidDistribution(format!("entry {x} is negative or not finite")));
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > STATE_TOL {
        return Err(Error::InvalidDistribution(format!("entries sum to {s}")));
    }
    Ok(())
}

impl SectorState {
    /// Builds a state and checks Hermiticity, positivity and normalization.
    pub fn new(model: Arc<AnyonModel>, sectors: BTreeMap<ChargeId, Vec<Block>>) -> Result<Self> {
        let s = Self::from_sectors_unchecked(model, sectors);
        s.validate(STATE_TOL)?;
        Ok(s)
    }

    pub fn from_sectors_unchecked(model: Arc<AnyonModel>, sectors: BTreeMap<ChargeId, Vec<Block>>) -> Self {
        SectorState { model, sectors }
    }

    /// One dense block per sector.
    pub fn from_dense(model: Arc<AnyonModel>, sectors: BTreeMap<ChargeId, CMat>) -> Result<Self> {
        let sectors = sectors.into_iter().map(|(c, w)| (c, vec![Block::new(w)])).collect();
        Self::new(model, sectors)
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let r = self.model.rank();
        for (c, blocks) in &self.sectors {
            if c.0 >= r {
                return Err(Error::InvalidState(format!("sector {c} out of range")));
            }
            for b in blocks {
                if b.w.nrows() != b.w.ncols() {
                    return Err(Error::InvalidState(format!(
                        "sector `{}` has a non-square block",
                        self.model.label(*c)
                    )));
                }
                if let Some(t) = &b.tags {
                    if t.len() != b.dim() {
                        return Err(Error::InvalidState(format!(
                            "sector `{}`: {} basis tags for a block of dimension {}",
                            self.model.label(*c),
                            t.len(),
                            b.dim()
                        )));
                    }
                }
                let h = hermiticity_residual(&b.w);
                if h > tol {
                    return Err(Error::InvalidState(format!(
                        "sector `{}` is not Hermitian (residual {h:.3e})",
                        self.model.label(*c)
                    )));
                }
                if b.dim() > 0 {
                    let min = hermitian_eigenvalues(&b.w).into_iter().fold(f64::INFINITY, f64::min);
                    if min < -tol {
                        return Err(Error::InvalidState(format!(
                            "sector `{}` has negative eigenvalue {min:.3e}",
                            self.model.label(*c)
                        )));
                    }
                }
            }
        }
        let t = self.quantum_trace();
        if (t - 1.0).abs() > tol {
            return Err(Error::InvalidState(format!("quantum trace is {t}, expected 1")));
        }
        Ok(())
    }

    pub fn model(&self) -> &Arc<AnyonModel> {
        &self.model
    }

    pub fn sectors(&self) -> &BTreeMap<ChargeId, Vec<Block>> {
        &self.sectors
    }

    pub fn sector_dim(&self, c: ChargeId) -> u64 {
        self.sectors
            .get(&c)
            .map(|bs| bs.iter().map(|b| b.dim() as u64 * b.multiplicity).sum())
            .unwrap_or(0)
    }

    /// `p_c = Tr W_c` for every stored sector.
    pub fn charge_probabilities(&self) -> BTreeMap<ChargeId, f64> {
        self.sectors
            .iter()
            .map(|(c, bs)| (*c, bs.iter().map(Block::trace).sum()))
            .collect()
    }

    /// `aTr rho = sum_c d_c Tr(W_c / d_c)`.
    pub fn quantum_trace(&self) -> f64 {
        self.sectors
            .iter()
            .map(|(c, bs)| {
                let d = self.model.qdim(*c);
                d * bs.iter().map(Block::trace).sum::<f64>() / d
            })
            .sum()
    }

    /// `sum_c Tr(W_c) / d_c`.
    pub fn ordinary_trace(&self) -> f64 {
        self.sectors
            .iter()
            .map(|(c, bs)| bs.iter().map(Block::trace).sum::<f64>() / self.model.qdim(*c))
            .sum()
    }

    /// Eigenvalues of every sector, with block multiplicities.
    pub fn spectrum(&self) -> Vec<SectorSpectrum> {
        self.sectors
            .iter()
            .map(|(c, bs)| {
                let mut eigenvalues = Vec::new();
                let mut multiplicities = Vec::new();
                for b in bs {
                    for l in hermitian_eigenvalues(&b.w) {
                        eigenvalues.push(l);
                        multiplicities.push(b.multiplicity);
                    }
                }
                SectorSpectrum {
                    charge: *c,
                    eigenvalues,
                    multiplicities,
                }
            })
            .collect()
    }

    /// Sector `c` as a single block-diagonal matrix.
    pub fn dense_sector(&self, c: ChargeId) -> Result<CMat> {
        let dim = self.sector_dim(c) as usize;
        if dim > DENSE_CAP {
            return Err(Error::Infeasible {
                size: dim as f64,
                cap: DENSE_CAP as f64,
            });
        }
        let mut out = CMat::zeros(dim, dim);
        let mut off = 0;
        for b in self.sectors.get(&c).into_iter().flatten() {
            for _ in 0..b.multiplicity {
                out.view_mut((off, off), (b.dim(), b.dim())).copy_from(&b.w);
                off += b.dim();
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, p: f64) -> SectorState {
        let sectors = self
            .sectors
            .iter()
            .map(|(c, bs)| {
                let bs = bs
                    .iter()
                    .map(|b| Block {
                        w: &b.w * Complex64::new(p, 0.0),
                        ..b.clone()
                    })
                    .collect();
                (*c, bs)
            })
            .collect();
        SectorState::from_sectors_unchecked(self.model.clone(), sectors)
    }

    /// Joint state of two independent systems. The `W_c1 (x) W_c2` block lands
    /// in every channel `e` of `c1 x c2` with weight `d_e / (d_c1 d_c2)`,
    /// repeated `N_{c1 c2}^e` times. Identical blocks are merged.
    pub fn tensor(&self, other: &SectorState) -> Result<SectorState> {
        same_model(&self.model, &other.model)?;
        let m = &self.model;
        let mut sectors: BTreeMap<ChargeId, Vec<Block>> = BTreeMap::new();
        let mut index: HashMap<(ChargeId, Vec<u64>), usize> = HashMap::new();
        for (&c1, bs1) in &self.sectors {
            for (&c2, bs2) in &other.sectors {
                let base = 1.0 / (m.qdim(c1) * m.qdim(c2));
                for (e, n) in m.fuse(c1, c2) {
                    let weight = Complex64::new(base * m.qdim(e), 0.0);
                    for b1 in bs1 {
                        for b2 in bs2 {
                            let w = kron(&b1.w, &b2.w) * weight;
                            let mult = b1.multiplicity * b2.multiplicity * n as u64;
                            let key: Vec<u64> = std::iter::once(w.nrows() as u64)
                                .chain(w.iter().flat_map(|z| [z.re.to_bits(), z.im.to_bits()]))
                                .collect();
                            let entry = sectors.entry(e).or_default();
                            match index.get(&(e, key.clone())) {
                                Some(&i) => entry[i].multiplicity += mult,
                                None => {
                                    index.insert((e, key), entry.len());
                                    entry.push(Block {
                                        w,
                                        multiplicity: mult,
                                        tags: None,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(SectorState::from_sectors_unchecked(m.clone(), sectors))
    }

    /// Keeps only the vacuum sector and renormalizes.
    pub fn project_vacuum(&self) -> Result<SectorState> {
        let v = ChargeId::VACUUM;
        let blocks = self.sectors.get(&v).cloned().unwrap_or_default();
        let weight: f64 = blocks.iter().map(Block::trace).sum();
        if !(weight > 1e-300) {
            return Err(Error::DegenerateProjection);
        }
        let mut sectors = BTreeMap::new();
        sectors.insert(v, blocks);
        Ok(SectorState::from_sectors_unchecked(self.model.clone(), sectors).scaled(1.0 / weight))
    }

    /// Removes coherences between parts of a partition of each listed
    /// sector's dense basis. Sectors without a partition are left untouched.
    pub fn measure_decohere(&self, partition: &BTreeMap<ChargeId, Vec<Vec<usize>>>) -> Result<SectorState> {
        let mut sectors = self.sectors.clone();
        for (&c, parts) in partition {
            let label = self.model.label(c).to_string();
            let dim = self.sector_dim(c) as usize;
            let mut owner = vec![usize::MAX; dim];
            for (k, part) in parts.iter().enumerate() {
                for &i in part {
                    if i >= dim {
                        return Err(Error::BadPartition {
                            sector: label,
                            detail: format!("index {i} outside dimension {dim}"),
                        });
                    }
                    if owner[i] != usize::MAX {
                        return Err(Error::BadPartition {
                            sector: label,
                            detail: format!("index {i} appears in two blocks"),
                        });
                    }
                    owner[i] = k;
                }
            }
            if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
                return Err(Error::BadPartition {
                    sector: label,
                    detail: format!("index {i} is not covered"),
                });
            }
            let mut w = self.dense_sector(c)?;
            for i in 0..dim {
                for j in 0..dim {
                    if owner[i] != owner[j] {
                        w[(i, j)] = Complex64::new(0.0, 0.0);
                    }
                }
            }
            sectors.insert(c, vec![Block::new(w)]);
        }
        Ok(SectorState::from_sectors_unchecked(self.model.clone(), sectors))
    }

    /// Partition into one-dimensional blocks for every sector.
    pub fn finest_partition(&self) -> BTreeMap<ChargeId, Vec<Vec<usize>>> {
        self.sectors
            .keys()
            .map(|&c| (c, (0..self.sector_dim(c) as usize).map(|i| vec![i]).collect()))
            .collect()
    }
}

/// A single anyon of charge `a`.
pub fn single_anyon_state(model: Arc<AnyonModel>, a: ChargeId) -> SectorState {
    let mut sectors = BTreeMap::new();
    sectors.insert(a, vec![Block::scalar(1.0)]);
    SectorState::from_sectors_unchecked(model, sectors)
}

/// Tensor product of a list of states, left to right.
pub fn tensor_all(states: &[SectorState]) -> Result<SectorState> {
    let (first, rest) = states
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("empty tensor product".into()))?;
    rest.iter().try_fold(first.clone(), |acc, s| acc.tensor(s))
}

/// Direct sum `sum_i p_i rho_i` of states on orthogonal subspaces. Blocks
/// are concatenated in input order, zero-weight ones included.
pub fn orthogonal_mixture(states: &[SectorState], probs: &[f64]) -> Result<SectorState> {
    if states.is_empty() || states.len() != probs.len() {
        return Err(Error::InvalidArgument("need one probability per state".into()));
    }
    check_distribution(probs)?;
    let model = states[0].model.clone();
    let mut sectors: BTreeMap<ChargeId, Vec<Block>> = BTreeMap::new();
    for (s, &p) in states.iter().zip(probs) {
        same_model(&model, &s.model)?;
        for (c, bs) in s.scaled(p).sectors {
            sectors.entry(c).or_default().extend(bs);
        }
    }
    Ok(SectorState::from_sectors_unchecked(model, sectors))
}

fn same_layout(a: &SectorState, b: &SectorState) -> bool {
    a.sectors.len() == b.sectors.len()
        && a.sectors.iter().zip(&b.sectors).all(|((c1, b1), (c2, b2))| {
            c1 == c2
                && b1.len() == b2.len()
                && b1
                    .iter()
                    .zip(b2)
                    .all(|(x, y)| x.dim() == y.dim() && x.multiplicity == y.multiplicity)
        })
}

/// `sum_i p_i rho_i` on a common basis.
pub fn convex_combination(states: &[SectorState], probs: &[f64]) -> Result<SectorState> {
    if states.is_empty() || states.len() != probs.len() {
        return Err(Error::InvalidArgument("need one probability per state".into()));
    }
    check_distribution(probs)?;
    let model = states[0].model.clone();
    for s in states {
        same_model(&model, &s.model)?;
    }
    if states.iter().all(|s| same_layout(&states[0], s)) {
        let mut out = states[0].scaled(probs[0]);
        for (s, &p) in states.iter().zip(probs).skip(1) {
            for (acc, add) in out.sectors.values_mut().zip(s.sectors.values()) {
                for (x, y) in acc.iter_mut().zip(add) {
                    x.w += &y.w * Complex64::new(p, 0.0);
                }
            }
        }
        return Ok(out);
    }
    let charges: std::collections::BTreeSet<ChargeId> =
        states.iter().flat_map(|s| s.sectors.keys().copied()).collect();
    let mut sectors = BTreeMap::new();
    for c in charges {
        let dims: Vec<u64> = states
            .iter()
            .map(|s| s.sector_dim(c))
            .filter(|&d| d > 0)
            .collect();
        if dims.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::InvalidState(format!(
                "sector `{}` has different dimensions across the mixture",
                model.label(c)
            )));
        }
        let dim = dims.first().copied().unwrap_or(0) as usize;
        let mut w = CMat::zeros(dim, dim);
        for (s, &p) in states.iter().zip(probs) {
            if s.sector_dim(c) > 0 {
                w += s.dense_sector(c)? * Complex64::new(p, 0.0);
            }
        }
        sectors.insert(c, vec![Block::new(w)]);
    }
    Ok(SectorState::from_sectors_unchecked(model, sectors))
}

/// A pure state of two subsystems already split at a single charge line:
/// `psi_c` has the A-side sector-`c` basis as rows and the B-side
/// sector-`dual(c)` basis as columns.
#[derive(Clone, Debug)]
pub struct BipartitePureState {
    model: Arc<AnyonModel>,
    blocks: BTreeMap<ChargeId, CMat>,
}

impl BipartitePureState {
    pub fn new(model: Arc<AnyonModel>, blocks: BTreeMap<ChargeId, CMat>) -> Result<Self> {
        if let Some(c) = blocks.keys().find(|c| c.0 >= model.rank()) {
            return Err(Error::InvalidState(format!("charge {c} out of range")));
        }
        let norm: f64 = blocks.values().map(|b| b.norm_squared()).sum();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("squared norm is {norm}, expected 1")));
        }
        Ok(BipartitePureState { model, blocks })
    }

    pub fn model(&self) -> &Arc<AnyonModel> {
        &self.model
    }

    pub fn blocks(&self) -> &BTreeMap<ChargeId, CMat> {
        &self.blocks
    }

    pub fn charge_probabilities(&self) -> BTreeMap<ChargeId, f64> {
        self.blocks.iter().map(|(c, b)| (*c, b.norm_squared())).collect()
    }

    /// Sectors `W_c = psi_c psi_c^dagger`.
    pub fn reduce_a(&self) -> SectorState {
        let sectors = self
            .blocks
            .iter()
            .map(|(c, psi)| (*c, vec![Block::new(psi * psi.adjoint())]))
            .collect();
        SectorState::from_sectors_unchecked(self.model.clone(), sectors)
    }

    /// Sectors `W_{dual(c)} = (psi_c^dagger psi_c)^T`.
    pub fn reduce_b(&self) -> SectorState {
        let sectors = self
            .blocks
            .iter()
            .map(|(c, psi)| (self.model.dual(*c), vec![Block::new((psi.adjoint() * psi).transpose())]))
            .collect();
        SectorState::from_sectors_unchecked(self.model.clone(), sectors)
    }

    fn stacked(&self) -> CMat {
        let len: usize = self.blocks.values().map(|b| b.len()).sum();
        let mut v = CMat::zeros(len, 1);
        let mut off = 0;
        for b in self.blocks.values() {
            for z in b.iter() {
                v[(off, 0)] = *z;
                off += 1;
            }
        }
        v
    }

    /// The pure joint state: vacuum sector, rank one.
    pub fn joint_state(&self) -> SectorState {
        let v = self.stacked();
        let mut sectors = BTreeMap::new();
        sectors.insert(ChargeId::VACUUM, vec![Block::new(&v * v.adjoint())]);
        SectorState::from_sectors_unchecked(self.model.clone(), sectors)
    }

    /// Severs the charge line between A and B. Each charge-`c` component
    /// becomes the product of its A and B parts: its block lands in every
    /// channel `e` of `c x dual(c)` with weight `d_e / d_c^2`.
    pub fn decohere_charge_line(&self) -> SectorState {
        let m = &self.model;
        let mut sectors: BTreeMap<ChargeId, Vec<Block>> = BTreeMap::new();
        for (&c, psi) in &self.blocks {
            let v = CMat::from_column_slice(psi.len(), 1, psi.as_slice());
            let vv = &v * v.adjoint();
            let dc = m.qdim(c);
            for (e, n) in m.fuse(c, m.dual(c)) {
                sectors.entry(e).or_default().push(Block {
                    w: &vv * Complex64::new(m.qdim(e) / (dc * dc), 0.0),
                    multiplicity: n as u64,
                    tags: None,
                });
            }
        }
        SectorState::from_sectors_unchecked(m.clone(), sectors)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairVariant {
    /// `rho_1 = sum_a p_a rho_a (x) rho_abar`: no charge line between the pair.
    Product,
    /// `rho_2`: each pair `a, abar` fused to vacuum, mixed over `a`.
    Correlated,
    /// `rho_3`: coherent superposition over `a` of pairs fused to vacuum.
    Pure,
}

#[derive(Clone, Debug)]
pub enum PairState {
    Mixed(SectorState),
    Pure(BipartitePureState),
}

/// The two-anyon family with charge distribution `probs` (indexed by charge).
pub fn pair_states(model: Arc<AnyonModel>, probs: &[f64], variant: PairVariant) -> Result<PairState> {
    if probs.len() != model.rank() {
        return Err(Error::InvalidDistribution(format!(
            "{} probabilities for {} charges",
            probs.len(),
            model.rank()
        )));
    }
    check_distribution(probs)?;
    match variant {
        PairVariant::Product => {
            let parts: Vec<SectorState> = model
                .charges()
                .map(|a| {
                    single_anyon_state(model.clone(), a).tensor(&single_anyon_state(model.clone(), model.dual(a)))
                })
                .collect::<Result<_>>()?;
            Ok(PairState::Mixed(orthogonal_mixture(&parts, probs)?))
        }
        PairVariant::Correlated => {
            let blocks = model
                .charges()
                .map(|a| Block {
                    tags: Some(vec![format!("{},{};0", model.label(a), model.label(model.dual(a)))]),
                    ..Block::scalar(probs[a.0].max(0.0))
                })
                .collect();
            let mut sectors = BTreeMap::new();
            sectors.insert(ChargeId::VACUUM, blocks);
            Ok(PairState::Mixed(SectorState::from_sectors_unchecked(model, sectors)))
        }
        PairVariant::Pure => {
            let blocks = model
                .charges()
                .filter(|a| probs[a.0] > 0.0)
                .map(|a| (a, CMat::from_element(1, 1, Complex64::new(probs[a.0].sqrt(), 0.0))))
                .collect();
            Ok(PairState::Pure(BipartitePureState::new(model, blocks)?))
        }
    }
}

pub fn boundary_anyon_state(model: Arc<AnyonModel>) -> SectorState {
    let d2 = model.total_qdim_sq();
    let sectors = model
        .charges()
        .map(|a| (a, vec![Block::scalar(model.qdim(a).powi(2) / d2)]))
        .collect();
    SectorState::from_sectors_unchecked(model, sectors)
}

/// The boundary state of a disk with `n` boundary segments and an optional
/// puncture of charge `c`: `n` boundary anyons, tensored, projected onto
/// trivial total charge.
pub fn heuristic_boundary_state(model: Arc<AnyonModel>, n: usize, puncture: Option<ChargeId>) -> Result<SectorState> {
    let mut parts = vec![boundary_anyon_state(model.clone()); n];
    if let Some(c) = puncture {
        parts.push(single_anyon_state(model.clone(), c));
    }
    tensor_all(&parts)?.project_vacuum()
}
