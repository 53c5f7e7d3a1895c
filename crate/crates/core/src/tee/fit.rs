//! Least-squares extrapolation of the constant term.

use serde::{Deserialize, Serialize};

use super::{geometry_entropy, Convention, Method};
use crate::entropy::EntropyOrder;
use crate::error::{Error, Result};
use crate::model::{AnyonModel, ChargeId};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum FitGeometry {
    Disk { charge: ChargeId },
    /// Both boundaries carry `n` segments; the abscissa is the total `2n`.
    Annulus { charge: ChargeId },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// Entropy per boundary segment.
    pub slope: f64,
    pub intercept: f64,
    pub residual_max: f64,
}

/// Fits `entropy = slope * segments + intercept` over `ns`.
pub fn fit_stopo(
    m: &AnyonModel,
    geometry: FitGeometry,
    ns: &[usize],
    order: EntropyOrder,
    convention: Convention,
) -> Result<FitResult> {
    let mut distinct = ns.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::InvalidArgument("a fit needs at least three distinct n".into()));
    }
    let mut pts = Vec::with_capacity(ns.len());
    for &n in ns {
        let (x, s) = match geometry {
            FitGeometry::Disk { charge } => (n, geometry_entropy(m, &[(n, charge)], order, convention, Method::Closed)?),
            FitGeometry::Annulus { charge } => {
                let comps = super::annulus_components(m, n, n, charge);
                (2 * n, geometry_entropy(m, &comps, order, convention, Method::Closed)?)
            }
        };
        pts.push((x as f64, s));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual_max = pts
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).abs())
        .fold(0.0, f64::max);
    Ok(FitResult {
        slope,
        intercept,
        residual_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::catalog_get;
    use crate::tee::{boundary_anyon_entropy, stopo, TransferMatrix};

    #[test]
    fn fibonacci_doubled_disk() {
        let m = catalog_get("Fib").unwrap();
        let ns: Vec<usize> = (3..=8).collect();
        let f = fit_stopo(&m, FitGeometry::Disk { charge: ChargeId(0) }, &ns, EntropyOrder::VonNeumann, Convention::Doubled).unwrap();
        assert!((f.slope - boundary_anyon_entropy(&m, EntropyOrder::VonNeumann)).abs() < 1e-12);
        assert!((f.intercept - 2.0 * stopo(&m)).abs() < 1e-11);
        assert!(f.residual_max < 1e-9);
    }

    #[test]
    fn toric_code_undoubled() {
        let m = catalog_get("DZ2").unwrap();
        let f = fit_stopo(&m, FitGeometry::Disk { charge: ChargeId(0) }, &[2, 3, 4, 5], EntropyOrder::VonNeumann, Convention::Undoubled).unwrap();
        assert!((f.slope - 2f64.ln()).abs() < 1e-12);
        assert!((f.intercept + 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn annulus_intercept() {
        let m = catalog_get("K(1)").unwrap();
        let sigma = ChargeId(1);
        let f = fit_stopo(&m, FitGeometry::Annulus { charge: sigma }, &[2, 3, 4], EntropyOrder::VonNeumann, Convention::Doubled).unwrap();
        assert!((f.intercept - 4.0 * stopo(&m) - 2f64.ln()).abs() < 1e-11);
    }

    #[test]
    fn ising_renyi_intercept_near_topological_term() {
        let m = catalog_get("K(1)").unwrap();
        let ns: Vec<usize> = (6..=12).collect();
        let f = fit_stopo(&m, FitGeometry::Disk { charge: ChargeId(0) }, &ns, EntropyOrder::Renyi(2.0), Convention::Doubled).unwrap();
        let f6 = TransferMatrix::new(&m, 2.0).unwrap().correction_f_spectral(6, ChargeId(0));
        let dev = (f.intercept - 2.0 * stopo(&m)).abs();
        assert!(dev <= f6.abs());
    }

    #[test]
    fn too_few_points() {
        let m = catalog_get("Fib").unwrap();
        assert!(fit_stopo(&m, FitGeometry::Disk { charge: ChargeId(0) }, &[3, 4, 4], EntropyOrder::VonNeumann, Convention::Doubled).is_err());
    }
}
