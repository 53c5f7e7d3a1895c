//! Anyonic entropy functionals, in nats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::model::{AnyonModel, ChargeId};
use crate::state::{check_distribution, BipartitePureState, Block, SectorState};

/// Eigenvalues below this are treated as zero inside logarithms.
pub const EIG_CUTOFF: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum EntropyOrder {
    VonNeumann,
    Renyi(f64),
}

impl EntropyOrder {
    /// `alpha = 1` selects von Neumann.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidAlpha(alpha));
        }
        Ok(if alpha == 1.0 {
            EntropyOrder::VonNeumann
        } else {
            EntropyOrder::Renyi(alpha)
        })
    }

    pub fn alpha(self) -> f64 {
        match self {
            EntropyOrder::VonNeumann => 1.0,
            EntropyOrder::Renyi(a) => a,
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::InvalidAlpha(alpha));
    }
    Ok(())
}

fn clamp(l: f64) -> f64 {
    if l < EIG_CUTOFF {
        0.0
    } else {
        l
    }
}

/// Shannon entropy of a (sub)distribution, `0 log 0 = 0`.
pub fn shannon(p: impl IntoIterator<Item = f64>) -> f64 {
    p.into_iter()
        .map(clamp)
        .filter(|&x| x > 0.0)
        .map(|x| -x * x.ln())
        .sum()
}

/// `-sum_{c,j} lambda_{c,j} log(lambda_{c,j} / d_c)`.
pub fn von_neumann(s: &SectorState) -> f64 {
    let m = s.model();
    let mut total = 0.0;
    for sp in s.spectrum() {
        let d = m.qdim(sp.charge);
        for (&l, &k) in sp.eigenvalues.iter().zip(&sp.multiplicities) {
            let l = clamp(l);
            if l > 0.0 {
                total -= k as f64 * l * (l / d).ln();
            }
        }
    }
    total
}

/// `log(sum_c d_c^(1-alpha) Tr W_c^alpha) / (1 - alpha)`.
pub fn renyi(s: &SectorState, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let m = s.model();
    let mut sum = 0.0;
    for sp in s.spectrum() {
        let w = m.qdim(sp.charge).powf(1.0 - alpha);
        for (&l, &k) in sp.eigenvalues.iter().zip(&sp.multiplicities) {
            let l = clamp(l);
            if l > 0.0 {
                sum += k as f64 * w * l.powf(alpha);
            }
        }
    }
    Ok(sum.ln() / (1.0 - alpha))
}

pub fn entropy(s: &SectorState, order: EntropyOrder) -> Result<f64> {
    match order {
        EntropyOrder::VonNeumann => Ok(von_neumann(s)),
        EntropyOrder::Renyi(a) => renyi(s, a),
    }
}

/// `Tr W (log W - log V)` for one aligned pair of blocks; `None` when the
/// support condition fails.
fn block_relative(w: &CMat, v: &CMat) -> Option<f64> {
    let n = w.nrows();
    if n == 0 {
        return Some(0.0);
    }
    let hw = (w + w.adjoint()) * num_complex::Complex64::new(0.5, 0.0);
    let hv = (v + v.adjoint()) * num_complex::Complex64::new(0.5, 0.0);
    let ew = hw.clone().symmetric_eigen();
    let ev = hv.symmetric_eigen();
    let mut out = 0.0;
    for &l in ew.eigenvalues.iter() {
        let l = clamp(l);
        if l > 0.0 {
            out += l * l.ln();
        }
    }
    for (k, &mu) in ev.eigenvalues.iter().enumerate() {
        let u = ev.eigenvectors.column(k);
        let weight = (u.adjoint() * &hw * u)[(0, 0)].re;
        if clamp(mu) > 0.0 {
            out -= weight * mu.ln();
        } else if weight > 1e-12 {
            return None;
        }
    }
    Some(out)
}

fn aligned(a: &[Block], b: &[Block]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.dim() == y.dim() && x.multiplicity == y.multiplicity)
}

/// Anyonic relative entropy `S(rho || sigma)`. The d_c weights cancel, so
/// each sector contributes `Tr W (log W - log V)`. Support failure gives
/// `+inf`.
pub fn relative_entropy(rho: &SectorState, sigma: &SectorState) -> Result<f64> {
    crate::state::same_model(rho.model(), sigma.model())?;
    let mut total = 0.0;
    for (c, bs) in rho.sectors() {
        let p: f64 = bs.iter().map(|b| b.w.trace().re * b.multiplicity as f64).sum();
        let Some(vs) = sigma.sectors().get(c) else {
            if p > 1e-12 {
                return Ok(f64::INFINITY);
            }
            continue;
        };
        if aligned(bs, vs) {
            for (b, v) in bs.iter().zip(vs) {
                match block_relative(&b.w, &v.w) {
                    Some(x) => total += x * b.multiplicity as f64,
                    None => return Ok(f64::INFINITY),
                }
            }
        } else {
            if rho.sector_dim(*c) != sigma.sector_dim(*c) {
                return Err(Error::InvalidState(format!(
                    "sector `{}` has dimension {} in the first state and {} in the second",
                    rho.model().label(*c),
                    rho.sector_dim(*c),
                    sigma.sector_dim(*c)
                )));
            }
            match block_relative(&rho.dense_sector(*c)?, &sigma.dense_sector(*c)?) {
                Some(x) => total += x,
                None => return Ok(f64::INFINITY),
            }
        }
    }
    Ok(total.max(0.0))
}

/// `S(rho_A) + S(rho_B) - S(joint)` with caller-supplied marginals.
pub fn mutual_information(joint: &SectorState, rho_a: &SectorState, rho_b: &SectorState) -> f64 {
    von_neumann(rho_a) + von_neumann(rho_b) - von_neumann(joint)
}

/// `sum_i S(rho_i) - S(joint)`.
pub fn multipartite_information(parts: &[SectorState], joint: &SectorState) -> f64 {
    parts.iter().map(von_neumann).sum::<f64>() - von_neumann(joint)
}

fn charge_term(m: &AnyonModel, p: impl IntoIterator<Item = (ChargeId, f64)>) -> f64 {
    p.into_iter().map(|(c, pc)| pc * m.qdim(c).ln()).sum()
}

/// Entropy of anyonic charge entanglement of a bipartite pure state,
/// `H({p_c}) + 2 sum_c p_c log d_c`.
pub fn ace_entropy(psi: &BipartitePureState) -> f64 {
    let p = psi.charge_probabilities();
    shannon(p.values().copied()) + 2.0 * charge_term(psi.model(), p)
}

/// Closed-form charge-entanglement entropy of the two-anyon family.
pub fn ace_entropy_family(m: &AnyonModel, variant: crate::state::PairVariant, probs: &[f64]) -> Result<f64> {
    use crate::state::PairVariant::*;
    if probs.len() != m.rank() {
        return Err(Error::InvalidDistribution(format!(
            "{} probabilities for {} charges",
            probs.len(),
            m.rank()
        )));
    }
    check_distribution(probs)?;
    let ct = charge_term(m, m.charges().map(|c| (c, probs[c.0])));
    Ok(match variant {
        Product => 0.0,
        Correlated => 2.0 * ct,
        Pure => shannon(probs.iter().copied()) + 2.0 * ct,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenyiValue {
    pub alpha: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub von_neumann: f64,
    pub renyi: Vec<RenyiValue>,
    /// `-sum lambda log lambda` over all sector eigenvalues.
    pub shannon_part: f64,
    /// `sum_c p_c log d_c`.
    pub charge_part: f64,
    pub units: String,
}

/// Entropy report of a sector state.
pub fn entropy_report(s: &SectorState, alphas: &[f64]) -> Result<EntropyReport> {
    let mut shannon_part = 0.0;
    for sp in s.spectrum() {
        for (&l, &k) in sp.eigenvalues.iter().zip(&sp.multiplicities) {
            shannon_part += k as f64 * shannon([l]);
        }
    }
    let charge_part = charge_term(s.model(), s.charge_probabilities());
    let renyi = alphas
        .iter()
        .map(|&a| Ok(RenyiValue { alpha: a, value: renyi(s, a)? }))
        .collect::<Result<_>>()?;
    Ok(EntropyReport {
        von_neumann: von_neumann(s),
        renyi,
        shannon_part,
        charge_part,
        units: "nats".into(),
    })
}

/// Anyonic entanglement entropy of a bipartite pure state from the singular
/// values of each `psi_c`.
pub fn aee_bipartite(psi: &BipartitePureState, alphas: &[f64]) -> Result<EntropyReport> {
    let m = psi.model();
    let mut lambdas: Vec<(ChargeId, f64)> = Vec::new();
    for (c, block) in psi.blocks() {
        if block.is_empty() {
            continue;
        }
        let sv = block.clone().svd(false, false).singular_values;
        lambdas.extend(sv.iter().map(|s| (*c, s * s)));
    }
    let shannon_part = shannon(lambdas.iter().map(|x| x.1));
    let charge_part = charge_term(m, psi.charge_probabilities());
    let mut renyi = Vec::new();
    for &a in alphas {
        check_alpha(a)?;
        let sum: f64 = lambdas
            .iter()
            .filter(|(_, l)| clamp(*l) > 0.0)
            .map(|&(c, l)| m.qdim(c).powf(1.0 - a) * l.powf(a))
            .sum();
        renyi.push(RenyiValue {
            alpha: a,
            value: sum.ln() / (1.0 - a),
        });
    }
    Ok(EntropyReport {
        von_neumann: shannon_part + charge_part,
        renyi,
        shannon_part,
        charge_part,
        units: "nats".into(),
    })
}
