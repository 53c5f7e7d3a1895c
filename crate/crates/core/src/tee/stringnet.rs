//! Fixed-point string-net entropy from input fusion data, and its
//! comparison with the doubled theory `E x conj(E)`.

use serde::{Deserialize, Serialize};

use super::{boundary_anyon_entropy, stopo};
use crate::entropy::EntropyOrder;
use crate::model::{product, AnyonModel};

/// `-n sum_i (d_i^2/D) log(d_i/D) - log D` with `D = sum_i d_i^2`. Braiding is ignored.
pub fn stringnet_entropy(m: &AnyonModel, n: usize) -> f64 {
    let dsn = m.total_qdim_sq();
    let per: f64 = m.qdims().iter().map(|&d| -(d * d / dsn) * (d / dsn).ln()).sum();
    n as f64 * per - dsn.ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StringNetCheck {
    /// `|(1/2) S_bnd(C) - S_bnd(E)|` at von Neumann order.
    pub boundary_residual: f64,
    /// `|S_topo(C) - (-log D_sn)|`.
    pub tee_residual: f64,
    pub passed: bool,
}

/// Builds `C = E x conj(E)` and compares its boundary term and TEE with the
/// string-net values of `E`.
pub fn stringnet_check(e: &AnyonModel) -> StringNetCheck {
    let c = product(e, &e.conjugate());
    let vn = EntropyOrder::VonNeumann;
    let boundary_residual = (0.5 * boundary_anyon_entropy(&c, vn) - boundary_anyon_entropy(e, vn)).abs();
    let tee_residual = (stopo(&c) + e.total_qdim_sq().ln()).abs();
    StringNetCheck {
        boundary_residual,
        tee_residual,
        passed: boundary_residual < 1e-9 && tee_residual < 1e-9,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::catalog_get;

    #[test]
    fn fibonacci_closed_form() {
        let m = catalog_get("Fib").unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let d = phi + 2.0;
        let per = -(1.0 / d) * (1.0 / d).ln() - (phi * phi / d) * (phi / d).ln();
        assert!((stringnet_entropy(&m, 5) - (5.0 * per - d.ln())).abs() < 1e-13);
        assert!(stringnet_check(&m).passed);
    }

    #[test]
    fn abelian_input() {
        for (name, k) in [("ZN(3,1)", 3.0), ("ZN(5,2)", 5.0), ("DZ2", 4.0)] {
            let m = catalog_get(name).unwrap();
            for n in 1..6 {
                let want = (n as f64 - 1.0) * f64::ln(k);
                assert!((stringnet_entropy(&m, n) - want).abs() < 1e-13);
            }
        }
    }
}
