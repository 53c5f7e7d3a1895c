//! Super-modular (fermionic) models: charges grouped into supersectors
//! `{a, a x psi}` by a transparent fermion `psi`.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::model::{catalog_get, AnyonModel, ChargeId};

#[derive(Clone, Debug)]
pub struct SuperModel {
    base: AnyonModel,
    fermion: ChargeId,
    supersectors: Vec<(ChargeId, ChargeId)>,
    dhat_sq: f64,
}

/// The single fusion channel of `a x psi`, if there is exactly one with multiplicity one.
fn fuse_simple(m: &AnyonModel, a: ChargeId, psi: ChargeId) -> Option<ChargeId> {
    let mut it = m.fuse(a, psi);
    match (it.next(), it.next()) {
        (Some((c, 1)), None) => Some(c),
        _ => None,
    }
}

/// Groups the charges of `m` into supersectors using the fermion `psi`.
///
/// Transparency is checked through its consequence on twists,
/// `theta_{a x psi} = -theta_a`; the full braiding is not available.
pub fn make_super(m: &AnyonModel, psi: ChargeId) -> Result<SuperModel> {
    let fail = |reason: String| Error::NotFermion {
        model: m.name().to_string(),
        fermion: m.label(psi).to_string(),
        reason,
    };
    if psi.0 >= m.rank() {
        return Err(Error::charge(m.name(), &psi.0.to_string()));
    }
    if psi == ChargeId::VACUUM {
        return Err(fail("the vacuum is not a fermion".into()));
    }
    if fuse_simple(m, psi, psi) != Some(ChargeId::VACUUM) {
        return Err(fail("psi x psi is not the vacuum".into()));
    }
    if (m.qdim(psi) - 1.0).abs() > 1e-12 {
        return Err(fail(format!("d_psi = {}", m.qdim(psi))));
    }
    if m.twist_turns(psi) != Rational64::new(1, 2) {
        return Err(fail("theta_psi is not -1".into()));
    }
    if m.rank() % 2 == 1 {
        return Err(fail(format!("odd number of charges ({})", m.rank())));
    }
    let half = Rational64::new(1, 2);
    let mut seen = vec![false; m.rank()];
    let mut supersectors = Vec::with_capacity(m.rank() / 2);
    for a in m.charges() {
        let b = fuse_simple(m, a, psi).ok_or_else(|| fail(format!("{} x psi has several channels", m.label(a))))?;
        if b == a {
            return Err(fail(format!("{} x psi = {}", m.label(a), m.label(a))));
        }
        let diff = m.twist_turns(b) - m.twist_turns(a);
        if (diff - half).fract() != Rational64::from_integer(0) {
            return Err(fail(format!("theta_{} != -theta_{}", m.label(b), m.label(a))));
        }
        if !seen[a.0] {
            seen[a.0] = true;
            seen[b.0] = true;
            supersectors.push((a, b));
        }
    }
    let dhat_sq = supersectors.iter().map(|&(a, _)| m.qdim(a).powi(2)).sum();
    Ok(SuperModel {
        base: m.clone(),
        fermion: psi,
        supersectors,
        dhat_sq,
    })
}

impl SuperModel {
    pub fn base(&self) -> &AnyonModel {
        &self.base
    }

    pub fn name(&self) -> &str {
        self.base.name()
    }

    pub fn fermion(&self) -> ChargeId {
        self.fermion
    }

    /// Pairs `(a, a x psi)`, each listed once with the smaller charge first.
    pub fn supersectors(&self) -> &[(ChargeId, ChargeId)] {
        &self.supersectors
    }

    /// `d_ahat = d_a`, one per supersector.
    pub fn super_qdims(&self) -> Vec<f64> {
        self.supersectors.iter().map(|&(a, _)| self.base.qdim(a)).collect()
    }

    /// The partner of `a` in its supersector.
    pub fn partner(&self, a: ChargeId) -> ChargeId {
        self.supersectors
            .iter()
            .find_map(|&(x, y)| {
                if x == a {
                    Some(y)
                } else if y == a {
                    Some(x)
                } else {
                    None
                }
            })
            .expect("every charge lies in a supersector")
    }

    /// `Dhat^2 = sum over supersectors of d_ahat^2`.
    pub fn dhat_sq(&self) -> f64 {
        self.dhat_sq
    }
}

/// `-log Dhat`, independent of the spin structure.
pub fn fermionic_stopo(sm: &SuperModel) -> f64 {
    -0.5 * sm.dhat_sq().ln()
}

/// A row of the fermionic catalog with its tabulated `Dhat^2`.
#[derive(Clone, Debug)]
pub struct SuperCatalogEntry {
    pub name: String,
    pub model: SuperModel,
    pub dhat_sq_expected: f64,
}

/// `(model name, fermion label, tabulated Dhat^2)` for every fermionic model
/// with `Dhat^2 <= 7`.
pub fn fermionic_table() -> Vec<(String, String, f64)> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let with_trivial = |x: &str, vac: &str| (format!("ZN(2,1)x{x}"), format!("(1,{vac})"));
    let mut rows = vec![("ZN(2,1)".to_string(), "1".to_string(), 1.0)];
    let mut push = |x: &str, vac: &str, d: f64| {
        let (n, f) = with_trivial(x, vac);
        rows.push((n, f, d));
    };
    push("ZN(2,1/2)", "0", 2.0);
    push("ZN(3,1)", "0", 3.0);
    push("ZN(3,2)", "0", 3.0);
    push("Fib(1)", "0", phi + 2.0);
    push("Fib(-1)", "0", phi + 2.0);
    for nu in 0..8 {
        let vac = if nu % 2 == 1 {
            "I"
        } else if nu % 4 == 0 {
            "(0,0)"
        } else {
            "0"
        };
        push(&format!("K({nu})"), vac, 4.0);
    }
    push("ZN(5,1)", "0", 5.0);
    push("ZN(5,2)", "0", 5.0);
    push("ZN(6,1/2)", "0", 6.0);
    push("ZN(6,5/2)", "0", 6.0);
    push("ZN(7,1)", "0", 7.0);
    push("ZN(7,3)", "0", 7.0);
    rows.push(("SO3_6".to_string(), "3".to_string(), 4.0 + 2.0 * 2f64.sqrt()));
    rows.sort_by(|a, b| a.2.total_cmp(&b.2));
    rows
}

pub fn fermionic_catalog() -> Result<Vec<SuperCatalogEntry>> {
    fermionic_table()
        .into_iter()
        .map(|(name, psi, d)| {
            let m = catalog_get(&name)?;
            let psi = m.charge(&psi)?;
            Ok(SuperCatalogEntry {
                name,
                model: make_super(&m, psi)?,
                dhat_sq_expected: d,
            })
        })
        .collect()
}
