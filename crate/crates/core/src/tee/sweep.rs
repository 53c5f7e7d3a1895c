//! Grids of entropies over segment counts and Renyi orders.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{annulus_components, component_terms, geometry_entropy, sphere3_components, Convention, Method};
use crate::entropy::EntropyOrder;
use crate::error::Result;
use crate::model::{AnyonModel, ChargeId};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Geometry {
    Disk { charge: ChargeId },
    /// `m` segments on the second boundary; `n` is swept on the first.
    Annulus { m: usize, charge: ChargeId },
    Torus { m: usize, charge: ChargeId },
    /// Segments `[l, m, n]` with `n` swept.
    Sphere3 { l: usize, m: usize, charges: [ChargeId; 3] },
}

impl Geometry {
    pub fn tag(&self) -> &'static str {
        match self {
            Geometry::Disk { .. } => "disk",
            Geometry::Annulus { .. } => "annulus",
            Geometry::Torus { .. } => "torus",
            Geometry::Sphere3 { .. } => "sphere3",
        }
    }

    fn components(&self, model: &AnyonModel, n: usize) -> Result<Vec<(usize, ChargeId)>> {
        Ok(match *self {
            Geometry::Disk { charge } => vec![(n, charge)],
            Geometry::Annulus { m, charge } | Geometry::Torus { m, charge } => annulus_components(model, n, m, charge).to_vec(),
            Geometry::Sphere3 { l, m, charges } => sphere3_components(model, [l, m, n], charges)?.to_vec(),
        })
    }

    fn charge_labels(&self, model: &AnyonModel) -> String {
        let ids: Vec<ChargeId> = match *self {
            Geometry::Disk { charge } | Geometry::Annulus { charge, .. } | Geometry::Torus { charge, .. } => vec![charge],
            Geometry::Sphere3 { charges, .. } => charges.to_vec(),
        };
        ids.iter().map(|&c| model.label(c)).collect::<Vec<_>>().join(";")
    }
}

/// One grid point. `entropy = linear_term * segments + topo_term + charge_term + F`,
/// where `segments` is the total over all boundaries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TeeResult {
    pub model: String,
    pub geometry: String,
    pub convention: Convention,
    pub n: usize,
    pub m: Option<usize>,
    pub l: Option<usize>,
    pub charges: String,
    /// `1` for von Neumann.
    pub alpha: f64,
    pub entropy: f64,
    pub linear_term: f64,
    pub topo_term: f64,
    pub charge_term: f64,
    #[serde(rename = "F")]
    pub f: f64,
}

impl TeeResult {
    pub fn segments(&self) -> usize {
        self.n + self.m.unwrap_or(0) + self.l.unwrap_or(0)
    }

    pub fn reconstructed(&self) -> f64 {
        self.linear_term * self.segments() as f64 + self.topo_term + self.charge_term + self.f
    }
}

/// Evaluates every `(n, alpha)` pair, in parallel, sorted by `(n, alpha)`.
pub fn sweep(
    model: &AnyonModel,
    geometry: Geometry,
    ns: &[usize],
    alphas: &[f64],
    convention: Convention,
    method: Method,
) -> Result<Vec<TeeResult>> {
    let orders = alphas
        .iter()
        .map(|&a| EntropyOrder::from_alpha(a))
        .collect::<Result<Vec<_>>>()?;
    let grid: Vec<(usize, EntropyOrder)> = ns.iter().flat_map(|&n| orders.iter().map(move |&o| (n, o))).collect();
    let charges = geometry.charge_labels(model);
    let (m, l) = match geometry {
        Geometry::Disk { .. } => (None, None),
        Geometry::Annulus { m, .. } | Geometry::Torus { m, .. } => (Some(m), None),
        Geometry::Sphere3 { l, m, .. } => (Some(m), Some(l)),
    };
    let mut rows = grid
        .par_iter()
        .map(|&(n, order)| {
            let comps = geometry.components(model, n)?;
            let terms = component_terms(model, &comps, order, convention)?;
            let entropy = geometry_entropy(model, &comps, order, convention, method)?;
            Ok(TeeResult {
                model: model.name().to_string(),
                geometry: geometry.tag().to_string(),
                convention,
                n,
                m,
                l,
                charges: charges.clone(),
                alpha: order.alpha(),
                entropy,
                linear_term: terms.linear_term,
                topo_term: terms.topo_term,
                charge_term: terms.charge_term,
                f: terms.correction,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.n.cmp(&b.n).then(a.alpha.total_cmp(&b.alpha)));
    Ok(rows)
}
