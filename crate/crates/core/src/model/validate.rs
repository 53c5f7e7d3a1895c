use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::max_abs;
use super::{smatrix_from_twists, verlinde, AnyonModel, ChargeId};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelValidationReport {
    pub model: String,
    pub checks: Vec<CheckResult>,
    /// Modular verdict: fusion axioms hold and the S-matrix is unitary,
    /// consistent with the dimensions and reproduces fusion via Verlinde.
    pub modular: bool,
}

const FUSION_CHECKS: [&str; 8] = [
    "vacuum",
    "duality",
    "commutativity",
    "associativity",
    "dimension_product",
    "dimension_positivity",
    "total_dimension",
    "twist",
];

impl ModelValidationReport {
    pub fn fusion_ok(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| FUSION_CHECKS.contains(&c.name))
            .all(|c| c.passed)
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs every axiom check once. When the model carries no S-matrix the
/// modular checks run on the S-matrix built from the twists.
pub fn validate(m: &AnyonModel, tol: f64) -> ModelValidationReport {
    let r = m.rank();
    let ids: Vec<ChargeId> = m.charges().collect();
    let nf = |a: ChargeId, b: ChargeId, c: ChargeId| m.n(a, b, c) as f64;
    let mut checks = Vec::new();
    let mut push = |name: &'static str, residual: f64| {
        checks.push(CheckResult {
            name,
            passed: residual <= tol,
            residual,
        })
    };

    let v = ChargeId::VACUUM;
    let mut res: f64 = 0.0;
    for &a in &ids {
        for &c in &ids {
            let want = if a == c { 1.0 } else { 0.0 };
            res = res.max((nf(v, a, c) - want).abs()).max((nf(a, v, c) - want).abs());
        }
    }
    push("vacuum", res);

    let mut res: f64 = if m.dual(v) == v { 0.0 } else { 1.0 };
    for &a in &ids {
        if m.dual(m.dual(a)) != a {
            res = res.max(1.0);
        }
        for &b in &ids {
            let want = if b == m.dual(a) { 1.0 } else { 0.0 };
            res = res.max((nf(a, b, v) - want).abs());
        }
    }
    push("duality", res);

    let mut res: f64 = 0.0;
    for &a in &ids {
        for &b in &ids {
            for &c in &ids {
                res = res.max((nf(a, b, c) - nf(b, a, c)).abs());
            }
        }
    }
    push("commutativity", res);

    let mut res: f64 = 0.0;
    for &a in &ids {
        for &b in &ids {
            for &c in &ids {
                for &d in &ids {
                    let left: f64 = ids.iter().map(|&e| nf(a, b, e) * nf(e, c, d)).sum();
                    let right: f64 = ids.iter().map(|&f| nf(b, c, f) * nf(a, f, d)).sum();
                    res = res.max((left - right).abs());
                }
            }
        }
    }
    push("associativity", res);

    let mut res: f64 = 0.0;
    for &a in &ids {
        for &b in &ids {
            let rhs: f64 = ids.iter().map(|&c| nf(a, b, c) * m.qdim(c)).sum();
            res = res.max((m.qdim(a) * m.qdim(b) - rhs).abs());
        }
    }
    push("dimension_product", res);

    let mut res: f64 = (m.qdim(v) - 1.0).abs();
    for &a in &ids {
        res = res
            .max((1.0 - m.qdim(a)).max(0.0))
            .max((m.qdim(a) - m.qdim(m.dual(a))).abs());
    }
    push("dimension_positivity", res);

    let d2: f64 = m.qdims().iter().map(|d| d * d).sum();
    push("total_dimension", (m.total_qdim() * m.total_qdim() - d2).abs());

    let mut res: f64 = (m.twist(v) - Complex64::new(1.0, 0.0)).norm();
    for &a in &ids {
        res = res.max((m.twist(a) - m.twist(m.dual(a))).norm());
    }
    push("twist", res);

    let balanced = smatrix_from_twists(m);
    let s = m.smatrix().cloned().unwrap_or_else(|| balanced.clone());

    let unit = max_abs(&(&s * s.adjoint() - DMatrix::<Complex64>::identity(r, r)));
    push("s_unitary", unit);

    push("s_symmetric", max_abs(&(&s - s.transpose())));

    let d = m.total_qdim();
    let mut res: f64 = 0.0;
    for &a in &ids {
        res = res.max((s[(0, a.0)] - Complex64::new(m.qdim(a) / d, 0.0)).norm());
    }
    push("s_dimensions", res);

    push("balancing", max_abs(&(&s - &balanced)));

    let mut res: f64 = 0.0;
    if s.row(0).iter().all(|z| z.norm() > 1e-300) {
        for &a in &ids {
            for &b in &ids {
                for &c in &ids {
                    let n = verlinde(&s, a.0, b.0, c.0);
                    res = res.max((n - Complex64::new(nf(a, b, c), 0.0)).norm());
                }
            }
        }
    } else {
        res = f64::INFINITY;
    }
    push("verlinde", res);

    let modular = checks.iter().all(|c| c.passed);
    ModelValidationReport {
        model: m.name().to_string(),
        checks,
        modular,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{catalog_get, AnyonModel};

    #[test]
    fn broken_fibonacci_fails_dimension_product() {
        let mut data = catalog_get("Fib(+1)").unwrap().to_data();
        for e in data.fusion.iter_mut() {
            if (e.0, e.1, e.2) == (1, 1, 1) {
                e.3 = 2;
            }
        }
        let m = AnyonModel::from_data(data).unwrap();
        let rep = validate(&m, 1e-10);
        assert!(!rep.check("dimension_product").unwrap().passed);
        assert!(!rep.modular);
    }

    #[test]
    fn z4_with_integer_spin_is_fusion_ok_but_not_modular() {
        let m = catalog_get("ZN(4,1)").unwrap();
        let rep = validate(&m, 1e-10);
        assert!(rep.fusion_ok());
        assert!(!rep.check("s_unitary").unwrap().passed);
        assert!(!rep.modular);
    }

    #[test]
    fn every_check_appears_once() {
        let rep = validate(&catalog_get("K(3)").unwrap(), 1e-10);
        let mut names: Vec<_> = rep.checks.iter().map(|c| c.name).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
        assert!(rep.all_ok());
    }
}
