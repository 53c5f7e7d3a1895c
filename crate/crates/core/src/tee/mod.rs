//! Topological entanglement entropy of regions bounded by `n` boundary
//! segments, from the boundary-anyon state.
//!
//! Every geometry reduces to a list of boundary components, each with a
//! segment count and the charge threading it. In the doubled convention a
//! component with `n` segments and charge `x` contributes the disk value
//! `n S_bnd + 2 S_topo + log d_x` (plus a Renyi correction); the undoubled
//! value of a geometry is `(doubled + sum_k log d_{x_k}) / 2`.

use serde::{Deserialize, Serialize};

use crate::entropy::EntropyOrder;
use crate::error::{Error, Result};
use crate::model::{fusion_space_dim, AnyonModel, ChargeId};

pub mod brute;
mod fit;
mod stringnet;
pub mod sweep;
pub mod transfer;

pub use brute::{brute_annulus, brute_annulus_literal, brute_boundary_oracle};
pub use fit::{fit_stopo, FitGeometry, FitResult};
pub use stringnet::{stringnet_check, stringnet_entropy, StringNetCheck};
pub use sweep::{sweep, Geometry, TeeResult};
pub use transfer::TransferMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Mirror-doubled surface: boundary and topological terms counted twice.
    Doubled,
    /// The physical region.
    Undoubled,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Doubled => "doubled",
            Convention::Undoubled => "undoubled",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Closed forms; the Renyi correction from the transfer-matrix eigen-sum.
    Closed,
    /// Matrix powers of the transfer matrix.
    Transfer,
    /// Literal enumeration of boundary-charge tuples.
    Brute,
}

/// `-log D`.
pub fn stopo(m: &AnyonModel) -> f64 {
    -0.5 * m.total_qdim_sq().ln()
}

/// Entropy of one boundary anyon, charge `a` with probability `d_a^2 / D^2`:
/// `-sum_a (d_a^2/D^2) log(d_a/D^2)`, or `log(kappa_0 / D^(2 alpha)) / (1 - alpha)`
/// with `kappa_0 = sum_a d_a^(1+alpha)`.
pub fn boundary_anyon_entropy(m: &AnyonModel, order: EntropyOrder) -> f64 {
    let d2 = m.total_qdim_sq();
    match order {
        EntropyOrder::VonNeumann => m
            .qdims()
            .iter()
            .map(|&d| -(d * d / d2) * (d / d2).ln())
            .sum(),
        EntropyOrder::Renyi(a) => {
            let kappa0: f64 = m.qdims().iter().map(|d| d.powf(1.0 + a)).sum();
            (kappa0.ln() - a * d2.ln()) / (1.0 - a)
        }
    }
}

/// Additive decomposition of an entropy:
/// `linear_term * segments + topo_term + charge_term + correction`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Terms {
    /// Coefficient per boundary segment.
    pub linear_term: f64,
    pub segments: usize,
    pub topo_term: f64,
    pub charge_term: f64,
    /// Renyi correction `sum_k F(n_k, x_k) / (1 - alpha)`, halved when undoubled.
    pub correction: f64,
}

impl Terms {
    pub fn total(&self) -> f64 {
        self.linear_term * self.segments as f64 + self.topo_term + self.charge_term + self.correction
    }
}

fn check_segments(components: &[(usize, ChargeId)]) -> Result<()> {
    if components.iter().any(|&(n, _)| n == 0) {
        return Err(Error::InvalidArgument("every boundary needs at least one segment".into()));
    }
    Ok(())
}

fn transfer_for(m: &AnyonModel, order: EntropyOrder) -> Result<TransferMatrix> {
    TransferMatrix::new(m, order.alpha())
}

/// Closed-form decomposition for a set of boundary components.
pub fn component_terms(
    m: &AnyonModel,
    components: &[(usize, ChargeId)],
    order: EntropyOrder,
    convention: Convention,
) -> Result<Terms> {
    check_segments(components)?;
    let k = components.len() as f64;
    let segments: usize = components.iter().map(|c| c.0).sum();
    let charge_term: f64 = components.iter().map(|&(_, x)| m.qdim(x).ln()).sum();
    let correction = match order {
        EntropyOrder::VonNeumann => 0.0,
        EntropyOrder::Renyi(a) => {
            let t = transfer_for(m, order)?;
            components
                .iter()
                .map(|&(n, x)| t.correction_f_spectral(n, m.dual(x)))
                .sum::<f64>()
                / (1.0 - a)
        }
    };
    let sb = boundary_anyon_entropy(m, order);
    let st = stopo(m);
    Ok(match convention {
        Convention::Doubled => Terms {
            linear_term: sb,
            segments,
            topo_term: 2.0 * k * st,
            charge_term,
            correction,
        },
        Convention::Undoubled => Terms {
            linear_term: sb / 2.0,
            segments,
            topo_term: k * st,
            charge_term,
            correction: correction / 2.0,
        },
    })
}

fn doubled_disk(m: &AnyonModel, n: usize, c: ChargeId, order: EntropyOrder, method: Method, t: Option<&TransferMatrix>) -> Result<f64> {
    match method {
        Method::Closed => Ok(component_terms(m, &[(n, c)], order, Convention::Doubled)?.total()),
        Method::Brute => brute_boundary_oracle(m, n, c, order),
        Method::Transfer => {
            let owned;
            let t = match t {
                Some(t) => t,
                None => {
                    owned = transfer_for(m, order)?;
                    &owned
                }
            };
            let v = ChargeId::VACUUM;
            let cbar = m.dual(c);
            let log_z = t.log_power_element(n, v, cbar)?;
            match order {
                EntropyOrder::VonNeumann => Ok(log_z - t.log_power_derivative(n, v, cbar)?),
                EntropyOrder::Renyi(a) => {
                    let log_norm = m.qdim(c).ln() + (n as f64 - 1.0) * m.total_qdim_sq().ln();
                    Ok((log_z - a * log_norm) / (1.0 - a))
                }
            }
        }
    }
}

/// Entropy of a region whose boundary components are `(segments, charge)`.
pub fn geometry_entropy(
    m: &AnyonModel,
    components: &[(usize, ChargeId)],
    order: EntropyOrder,
    convention: Convention,
    method: Method,
) -> Result<f64> {
    check_segments(components)?;
    if method == Method::Closed {
        return Ok(component_terms(m, components, order, convention)?.total());
    }
    let t = match method {
        Method::Transfer => Some(transfer_for(m, order)?),
        _ => None,
    };
    let mut doubled = 0.0;
    for &(n, x) in components {
        doubled += doubled_disk(m, n, x, order, method, t.as_ref())?;
    }
    Ok(match convention {
        Convention::Doubled => doubled,
        Convention::Undoubled => {
            let charge: f64 = components.iter().map(|&(_, x)| m.qdim(x).ln()).sum();
            (doubled + charge) / 2.0
        }
    })
}

/// Disk with `n` boundary segments enclosing a puncture of charge `c`.
pub fn disk_entropy(
    m: &AnyonModel,
    n: usize,
    c: ChargeId,
    order: EntropyOrder,
    convention: Convention,
    method: Method,
) -> Result<f64> {
    geometry_entropy(m, &[(n, c)], order, convention, method)
}

pub fn annulus_components(m: &AnyonModel, n: usize, mm: usize, c: ChargeId) -> [(usize, ChargeId); 2] {
    [(n, m.dual(c)), (mm, c)]
}

/// Annulus with `n` and `mm` segments on its two boundaries and charge `c`
/// threading it.
pub fn annulus_entropy(
    m: &AnyonModel,
    n: usize,
    mm: usize,
    c: ChargeId,
    order: EntropyOrder,
    convention: Convention,
    method: Method,
) -> Result<f64> {
    geometry_entropy(m, &annulus_components(m, n, mm, c), order, convention, method)
}

/// A torus cut into two annuli gives the annulus value.
pub fn torus_entropy(
    m: &AnyonModel,
    n: usize,
    mm: usize,
    c: ChargeId,
    order: EntropyOrder,
    convention: Convention,
    method: Method,
) -> Result<f64> {
    annulus_entropy(m, n, mm, c, order, convention, method)
}

pub fn sphere3_components(m: &AnyonModel, segments: [usize; 3], charges: [ChargeId; 3]) -> Result<[(usize, ChargeId); 3]> {
    if fusion_space_dim(m, &charges, ChargeId::VACUUM) == 0 {
        return Err(Error::FusionForbidden(
            charges.iter().map(|&c| m.label(c).to_string()).collect(),
        ));
    }
    Ok([
        (segments[0], charges[0]),
        (segments[1], charges[1]),
        (segments[2], charges[2]),
    ])
}

/// Sphere with three disks removed; the three boundaries carry charges
/// `x, y, z` that must fuse to the vacuum.
pub fn sphere3_entropy(
    m: &AnyonModel,
    segments: [usize; 3],
    charges: [ChargeId; 3],
    order: EntropyOrder,
    convention: Convention,
    method: Method,
) -> Result<f64> {
    geometry_entropy(m, &sphere3_components(m, segments, charges)?, order, convention, method)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub segments: usize,
    /// Probability of each boundary charge, indexed by charge.
    pub charge_dist: Vec<f64>,
}

/// Boundary components with independent charge marginals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub components: Vec<BoundaryComponent>,
    pub convention: Convention,
}

/// `sum_k [(n_k/2) S_bnd - log D + sum_c p_c^(k) log d_c] + interior`
/// (boundary and topological terms doubled in the doubled convention).
/// Correlations between components beyond their marginals are not modeled.
pub fn general_entropy(m: &AnyonModel, spec: &BoundarySpec, interior_entropy: f64) -> Result<f64> {
    let sb = boundary_anyon_entropy(m, EntropyOrder::VonNeumann);
    let st = stopo(m);
    let scale = match spec.convention {
        Convention::Doubled => 1.0,
        Convention::Undoubled => 0.5,
    };
    let mut total = interior_entropy;
    for comp in &spec.components {
        if comp.segments == 0 {
            return Err(Error::InvalidArgument("every boundary needs at least one segment".into()));
        }
        if comp.charge_dist.len() != m.rank() {
            return Err(Error::InvalidDistribution(format!(
                "{} probabilities for {} charges",
                comp.charge_dist.len(),
                m.rank()
            )));
        }
        crate::state::check_distribution(&comp.charge_dist)?;
        let charge: f64 = m.charges().map(|c| comp.charge_dist[c.0] * m.qdim(c).ln()).sum();
        total += scale * (comp.segments as f64 * sb + 2.0 * st) + charge;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KpResult {
    pub stopo: f64,
    /// `2 S_3 - (3/2) S_4` with von Neumann disk entropies.
    pub vn_combo: f64,
    pub alpha: Option<f64>,
    pub renyi_combo: Option<f64>,
    /// `renyi_combo - stopo`.
    pub renyi_residual: Option<f64>,
}

/// Kitaev-Preskill combination of doubled, unpunctured disks with three and
/// four segments. Exact for von Neumann; the Renyi version picks up the
/// transfer-matrix corrections.
pub fn kitaev_preskill(m: &AnyonModel, alpha: Option<f64>) -> Result<KpResult> {
    let v = ChargeId::VACUUM;
    let s = |n, order, method| disk_entropy(m, n, v, order, Convention::Doubled, method);
    let vn_combo = 2.0 * s(3, EntropyOrder::VonNeumann, Method::Closed)? - 1.5 * s(4, EntropyOrder::VonNeumann, Method::Closed)?;
    let st = stopo(m);
    let (renyi_combo, renyi_residual) = match alpha {
        None => (None, None),
        Some(a) => {
            let order = EntropyOrder::from_alpha(a)?;
            let combo = 2.0 * s(3, order, Method::Transfer)? - 1.5 * s(4, order, Method::Transfer)?;
            (Some(combo), Some(combo - st))
        }
    };
    Ok(KpResult {
        stopo: st,
        vn_combo,
        alpha,
        renyi_combo,
        renyi_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::catalog_get;

    const VN: EntropyOrder = EntropyOrder::VonNeumann;

    fn phi() -> f64 {
        (1.0 + 5f64.sqrt()) / 2.0
    }

    #[test]
    fn stopo_values() {
        assert!((stopo(&catalog_get("DZ2").unwrap()) + 2f64.ln()).abs() < 1e-15);
        assert_eq!(stopo(&catalog_get("ZN(1,0)").unwrap()), 0.0);
        assert!((stopo(&catalog_get("Fib").unwrap()) + 0.6429654).abs() < 1e-7);
    }

    #[test]
    fn boundary_entropy_values() {
        let dz2 = catalog_get("DZ2").unwrap();
        assert!((boundary_anyon_entropy(&dz2, VN) - 4f64.ln()).abs() < 1e-15);
        let fib = catalog_get("Fib").unwrap();
        let d2 = phi() + 2.0;
        let want = (d2 * d2 / (1.0 + phi().powi(3))).ln();
        assert!((boundary_anyon_entropy(&fib, EntropyOrder::Renyi(2.0)) - want).abs() < 1e-14);
    }

    #[test]
    fn toric_code_disk_all_methods() {
        let m = catalog_get("DZ2").unwrap();
        for n in 1..=8 {
            for method in [Method::Closed, Method::Transfer, Method::Brute] {
                let s = disk_entropy(&m, n, ChargeId(0), VN, Convention::Doubled, method).unwrap();
                assert!((s - (n as f64 - 1.0) * 4f64.ln()).abs() < 1e-12, "n={n} {method:?}");
            }
        }
    }

    #[test]
    fn punctured_fibonacci_disk() {
        let m = catalog_get("Fib").unwrap();
        let tau = ChargeId(1);
        let sb = boundary_anyon_entropy(&m, VN);
        for n in 2..6 {
            let want = n as f64 * sb - (phi() + 2.0).ln() + phi().ln();
            for method in [Method::Closed, Method::Transfer, Method::Brute] {
                let s = disk_entropy(&m, n, tau, VN, Convention::Doubled, method).unwrap();
                assert!((s - want).abs() < 1e-12, "{method:?}");
            }
        }
    }

    #[test]
    fn undoubled_disk_halves_boundary_terms() {
        let m = catalog_get("K(1)").unwrap();
        let sigma = ChargeId(1);
        let s = disk_entropy(&m, 5, sigma, VN, Convention::Undoubled, Method::Closed).unwrap();
        let want = 2.5 * boundary_anyon_entropy(&m, VN) + stopo(&m) + 2f64.sqrt().ln();
        assert!((s - want).abs() < 1e-14);
    }

    #[test]
    fn toric_code_annulus() {
        let m = catalog_get("DZ2").unwrap();
        let s = annulus_entropy(&m, 2, 2, ChargeId(0), VN, Convention::Undoubled, Method::Closed).unwrap();
        assert!((s - 2f64.ln() * 2.0).abs() < 1e-14);
    }

    #[test]
    fn fibonacci_annulus_methods_agree() {
        let m = catalog_get("Fib").unwrap();
        for c in m.charges() {
            let order = EntropyOrder::Renyi(2.0);
            let closed = annulus_entropy(&m, 2, 2, c, order, Convention::Doubled, Method::Closed).unwrap();
            let literal = brute_annulus_literal(&m, 2, 2, c, order).unwrap();
            assert!((closed - literal).abs() < 1e-12);
        }
    }

    #[test]
    fn sphere3_admissibility() {
        let m = catalog_get("K(1)").unwrap();
        let (s, p) = (ChargeId(1), ChargeId(2));
        assert!(sphere3_entropy(&m, [2, 2, 2], [s, s, p], VN, Convention::Undoubled, Method::Closed).is_ok());
        assert!(matches!(
            sphere3_entropy(&m, [2, 2, 2], [s, s, s], VN, Convention::Undoubled, Method::Closed),
            Err(Error::FusionForbidden(_))
        ));
    }

    #[test]
    fn sphere3_fibonacci() {
        let m = catalog_get("Fib").unwrap();
        let t = ChargeId(1);
        let s = sphere3_entropy(&m, [2, 2, 2], [t, t, t], VN, Convention::Undoubled, Method::Closed).unwrap();
        let want = 3.0 * boundary_anyon_entropy(&m, VN) + 3.0 * stopo(&m) + 3.0 * phi().ln();
        assert!((s - want).abs() < 1e-13);
    }

    #[test]
    fn general_entropy_specializes() {
        let m = catalog_get("Fib").unwrap();
        let point = |c: usize| {
            let mut p = vec![0.0; 2];
            p[c] = 1.0;
            p
        };
        let spec = BoundarySpec {
            components: vec![BoundaryComponent {
                segments: 4,
                charge_dist: point(1),
            }],
            convention: Convention::Undoubled,
        };
        let g = general_entropy(&m, &spec, 0.0).unwrap();
        let d = disk_entropy(&m, 4, ChargeId(1), VN, Convention::Undoubled, Method::Closed).unwrap();
        assert!((g - d).abs() < 1e-14);

        let d2 = phi() + 2.0;
        let spec = BoundarySpec {
            components: vec![BoundaryComponent {
                segments: 3,
                charge_dist: vec![1.0 / d2, phi() * phi() / d2],
            }],
            convention: Convention::Undoubled,
        };
        let g = general_entropy(&m, &spec, 0.0).unwrap();
        let want = 1.5 * boundary_anyon_entropy(&m, VN) - 0.5 * d2.ln() + phi() * phi() / d2 * phi().ln();
        assert!((g - want).abs() < 1e-14);
    }

    #[test]
    fn kp_fibonacci() {
        let m = catalog_get("Fib").unwrap();
        let kp = kitaev_preskill(&m, Some(2.0)).unwrap();
        assert!((kp.vn_combo - stopo(&m)).abs() < 1e-12);
        // kappa_1 = -1/phi at alpha = 2, so the Renyi combination is off
        let t = TransferMatrix::new(&m, 2.0).unwrap();
        assert!((t.eigenvalues()[1] + 1.0 / phi()).abs() < 1e-12);
        let v = ChargeId(0);
        let want = -(2.0 * t.correction_f(3, v).unwrap() - 1.5 * t.correction_f(4, v).unwrap());
        assert!((kp.renyi_residual.unwrap() - want).abs() < 1e-12);
        let t1 = TransferMatrix::new(&m, 1.0).unwrap();
        assert!(t1.eigenvalues()[1].abs() < 1e-12);
    }

    #[test]
    fn single_segment_von_neumann() {
        // the closed form is the large-n law; the literal sum has a single term
        let m = catalog_get("Fib").unwrap();
        let v = ChargeId(0);
        let exact = disk_entropy(&m, 1, v, VN, Convention::Doubled, Method::Brute).unwrap();
        assert!(exact.abs() < 1e-15);
        let closed = disk_entropy(&m, 1, v, VN, Convention::Doubled, Method::Closed).unwrap();
        assert!((closed - boundary_anyon_entropy(&m, VN) - 2.0 * stopo(&m)).abs() < 1e-15);
        let abelian = catalog_get("ZN(3,1)").unwrap();
        let closed = disk_entropy(&abelian, 1, v, VN, Convention::Doubled, Method::Closed).unwrap();
        assert!(closed.abs() < 1e-15);
    }

    #[test]
    fn kp_ising_residual_matches_corrections() {
        let m = catalog_get("K(1)").unwrap();
        let kp = kitaev_preskill(&m, Some(2.0)).unwrap();
        let t = TransferMatrix::new(&m, 2.0).unwrap();
        let v = ChargeId(0);
        let want = (2.0 * t.correction_f_spectral(3, v) - 1.5 * t.correction_f_spectral(4, v)) / (1.0 - 2.0);
        let got = kp.renyi_residual.unwrap();
        assert!(got.abs() > 1e-4);
        assert!((got - want).abs() < 1e-10);
    }

    #[test]
    fn zero_segments_rejected() {
        let m = catalog_get("Fib").unwrap();
        assert!(disk_entropy(&m, 0, ChargeId(0), VN, Convention::Doubled, Method::Closed).is_err());
    }
}
