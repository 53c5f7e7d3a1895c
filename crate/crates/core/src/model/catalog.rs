//! Built-in anyon models, addressed by name.
//!
//! Names: `ZN(N,p)` for cyclic models with twist `exp(2 pi i p a^2 / N)`,
//! `Fib(+1)`/`Fib(-1)`, `K(nu)` for the sixteen-fold way, `SO3_6`,
//! the alias `DZ2` (toric code) and products joined by `x`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;

use super::{product, AnyonModel, ModelData, QDim};
use crate::error::{Error, Result};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn cplx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Cyclic model `Z_N^(p)`. Modularity follows the number-theoretic rule:
/// odd `N` needs `gcd(N, p mod N) = 1`, even `N` needs half-integer `p`
/// with `gcd(N, 2p) = 1`.
pub fn zn(n: usize, p: Rational64) -> Result<AnyonModel> {
    if n == 0 {
        return Err(Error::MalformedModel("ZN needs N >= 1".into()));
    }
    let two_p = p * 2;
    if !two_p.is_integer() {
        return Err(Error::MalformedModel(format!("ZN({n},{p}): p must be a multiple of 1/2")));
    }
    let half_integer = !p.is_integer();
    if half_integer && n % 2 == 1 {
        return Err(Error::MalformedModel(format!(
            "ZN({n},{p}): half-integer p needs even N"
        )));
    }
    let ni = n as i64;
    let modular = if n == 1 {
        true
    } else if n % 2 == 1 {
        let pm = p.to_integer().rem_euclid(ni);
        pm != 0 && gcd(ni, pm) == 1
    } else {
        half_integer && gcd(ni, two_p.to_integer().abs()) == 1
    };
    let labels = (0..n).map(|a| a.to_string()).collect();
    let dual = (0..n).map(|a| (n - a) % n).collect();
    let mut fusion = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            fusion.push((a, b, (a + b) % n, 1));
        }
    }
    let twist = (0..n as i64).map(|a| p * a * a / ni).collect();
    let smatrix = modular.then(|| {
        let norm = 1.0 / (n as f64).sqrt();
        let pf = *p.numer() as f64 / *p.denom() as f64;
        DMatrix::from_fn(n, n, |a, b| {
            let ab = ((a * b) % (2 * n)) as f64;
            Complex64::from_polar(norm, -4.0 * PI * pf * ab / n as f64)
        })
    });
    AnyonModel::from_data(ModelData {
        name: format!("ZN({n},{p})"),
        labels,
        dual,
        fusion,
        qdim: vec![QDim::One; n],
        twist,
        smatrix,
        modular,
    })
}

/// Fibonacci model with twist `exp(+-4 pi i / 5)` on `tau`.
pub fn fibonacci(chirality: i8) -> AnyonModel {
    let sign = if chirality < 0 { -1 } else { 1 };
    let phi = QDim::Phi.value();
    let d = (phi + 2.0).sqrt();
    let s = DMatrix::from_row_slice(
        2,
        2,
        &[cplx(1.0 / d, 0.0), cplx(phi / d, 0.0), cplx(phi / d, 0.0), cplx(-1.0 / d, 0.0)],
    );
    AnyonModel::from_data(ModelData {
        name: format!("Fib({}1)", if sign < 0 { "-" } else { "+" }),
        labels: vec!["0".into(), "tau".into()],
        dual: vec![0, 1],
        fusion: vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)],
        qdim: vec![QDim::One, QDim::Phi],
        twist: vec![Rational64::from_integer(0), Rational64::new(2 * sign, 5)],
        smatrix: Some(s),
        modular: true,
    })
    .expect("static data")
}

/// Kitaev's sixteen-fold way, `nu` in `0..16`.
pub fn kitaev(nu: u32) -> Result<AnyonModel> {
    if nu >= 16 {
        return Err(Error::MalformedModel(format!("K({nu}): nu must be in 0..16")));
    }
    let name = format!("K({nu})");
    let half = Rational64::new(1, 2);
    if nu % 2 == 1 {
        let r2 = 2f64.sqrt();
        let s = DMatrix::from_row_slice(
            3,
            3,
            &[1.0, r2, 1.0, r2, 0.0, -r2, 1.0, -r2, 1.0],
        )
        .map(|x| cplx(x / 2.0, 0.0));
        return AnyonModel::from_data(ModelData {
            name,
            labels: vec!["I".into(), "sigma".into(), "psi".into()],
            dual: vec![0, 1, 2],
            fusion: vec![
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (0, 2, 2, 1),
                (1, 0, 1, 1),
                (2, 0, 2, 1),
                (1, 1, 0, 1),
                (1, 1, 2, 1),
                (1, 2, 1, 1),
                (2, 1, 1, 1),
                (2, 2, 0, 1),
            ],
            qdim: vec![QDim::One, QDim::Sqrt2, QDim::One],
            twist: vec![Rational64::from_integer(0), Rational64::new(nu as i64, 16), half],
            smatrix: Some(s),
            modular: true,
        });
    }
    if nu % 4 == 2 {
        return Ok(zn(4, Rational64::new(nu as i64, 4))?.renamed(name));
    }
    let t = Complex64::from_polar(1.0, -PI * nu as f64 / 4.0);
    let h = cplx(0.5, 0.0);
    let s = DMatrix::from_row_slice(
        4,
        4,
        &[
            h, h, h, h,
            h, t * 0.5, -t * 0.5, -h,
            h, -t * 0.5, t * 0.5, -h,
            h, -h, -h, h,
        ],
    );
    let mut fusion = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            fusion.push((a, b, a ^ b, 1));
        }
    }
    let th = Rational64::new(nu as i64, 16);
    AnyonModel::from_data(ModelData {
        name,
        labels: vec!["(0,0)".into(), "(0,1)".into(), "(1,0)".into(), "(1,1)".into()],
        dual: vec![0, 1, 2, 3],
        fusion,
        qdim: vec![QDim::One; 4],
        twist: vec![Rational64::from_integer(0), th, th, half],
        smatrix: Some(s),
        modular: true,
    })
}

/// `SO(3)_6`: a super-modular category whose charge `3` is a transparent fermion.
pub fn so3_6() -> AnyonModel {
    let fusion = vec![
        (0, 0, 0, 1),
        (0, 1, 1, 1),
        (0, 2, 2, 1),
        (0, 3, 3, 1),
        (1, 0, 1, 1),
        (2, 0, 2, 1),
        (3, 0, 3, 1),
        (3, 3, 0, 1),
        (1, 3, 2, 1),
        (3, 1, 2, 1),
        (2, 3, 1, 1),
        (3, 2, 1, 1),
        (1, 1, 0, 1),
        (1, 1, 1, 1),
        (1, 1, 2, 1),
        (2, 2, 0, 1),
        (2, 2, 1, 1),
        (2, 2, 2, 1),
        (1, 2, 1, 1),
        (1, 2, 2, 1),
        (1, 2, 3, 1),
        (2, 1, 1, 1),
        (2, 1, 2, 1),
        (2, 1, 3, 1),
    ];
    AnyonModel::from_data(ModelData {
        name: "SO3_6".into(),
        labels: vec!["0".into(), "1".into(), "2".into(), "3".into()],
        dual: vec![0, 1, 2, 3],
        fusion,
        qdim: vec![QDim::One, QDim::OnePlusSqrt2, QDim::OnePlusSqrt2, QDim::One],
        twist: vec![
            Rational64::from_integer(0),
            Rational64::new(1, 4),
            Rational64::new(3, 4),
            Rational64::new(1, 2),
        ],
        smatrix: None,
        modular: false,
    })
    .expect("static data")
}

fn split_product(name: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in name.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' | '×' | '*' if depth == 0 => {
                parts.push(&name[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&name[start..]);
    parts
}

fn parse_ratio(s: &str) -> Option<Rational64> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational64::new(n, d))
        }
        None => Some(Rational64::from_integer(s.parse().ok()?)),
    }
}

fn base_model(name: &str) -> Result<AnyonModel> {
    let unknown = || Error::UnknownModel(name.to_string());
    let n = name.trim();
    match n {
        "Fib" | "Fib(+1)" | "Fib+1" | "Fib(1)" => return Ok(fibonacci(1)),
        "Fib(-1)" | "Fib-1" => return Ok(fibonacci(-1)),
        "SO3_6" => return Ok(so3_6()),
        "DZ2" => return Ok(kitaev(0)?.renamed("DZ2")),
        "Ising" => return Ok(kitaev(1)?.renamed("Ising")),
        "Z1" | "trivial" => return zn(1, Rational64::from_integer(0)),
        _ => {}
    }
    if let Some(inner) = n.strip_prefix("ZN(").and_then(|r| r.strip_suffix(')')) {
        let (a, p) = inner.split_once(',').ok_or_else(unknown)?;
        let a: usize = a.trim().parse().map_err(|_| unknown())?;
        let p = parse_ratio(p).ok_or_else(unknown)?;
        return zn(a, p);
    }
    if let Some(inner) = n.strip_prefix("K(").and_then(|r| r.strip_suffix(')')) {
        let nu: u32 = inner.trim().parse().map_err(|_| unknown())?;
        return kitaev(nu);
    }
    Err(unknown())
}

/// Looks up a catalog model by name.
pub fn catalog_get(name: &str) -> Result<AnyonModel> {
    let parts = split_product(name.trim());
    let mut it = parts.into_iter();
    let mut m = base_model(it.next().unwrap_or(""))?;
    for p in it {
        m = product(&m, &base_model(p)?);
    }
    Ok(m)
}

/// The modular models with `D^2 < 8`.
pub fn table1_names() -> Vec<String> {
    let mut v: Vec<String> = [
        "ZN(1,0)",
        "ZN(2,1/2)",
        "ZN(2,3/2)",
        "ZN(3,1)",
        "ZN(3,2)",
        "Fib(+1)",
        "Fib(-1)",
        "ZN(2,1/2)xZN(2,3/2)",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    v.extend((0..16).map(|nu| format!("K({nu})")));
    v.extend(
        [
            "ZN(5,1)",
            "ZN(5,2)",
            "ZN(6,1/2)",
            "ZN(6,5/2)",
            "ZN(6,7/2)",
            "ZN(6,11/2)",
            "ZN(7,1)",
            "ZN(7,3)",
            "Fib(+1)xZN(2,1/2)",
            "Fib(+1)xZN(2,3/2)",
            "Fib(-1)xZN(2,1/2)",
            "Fib(-1)xZN(2,3/2)",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    v
}

/// Every named catalog entry: the table above plus `SO3_6`.
pub fn catalog_names() -> Vec<String> {
    let mut v = table1_names();
    v.push("SO3_6".into());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{smatrix_from_twists, validate, ChargeId};

    #[test]
    fn table_has_36_models_below_eight() {
        let names = table1_names();
        assert_eq!(names.len(), 36);
        for n in &names {
            let m = catalog_get(n).unwrap();
            assert!(m.total_qdim_sq() < 8.0, "{n}");
            assert!(m.is_modular(), "{n}");
        }
    }

    #[test]
    fn every_catalog_model_passes_fusion_axioms() {
        for n in catalog_names() {
            let m = catalog_get(&n).unwrap();
            let r = validate(&m, 1e-10);
            assert!(r.fusion_ok(), "{n}: {:?}", r.failures());
            assert_eq!(r.modular, m.is_modular(), "{n}");
        }
    }

    #[test]
    fn closed_form_s_agrees_with_balancing() {
        for n in table1_names() {
            let m = catalog_get(&n).unwrap();
            let s = smatrix_from_twists(&m);
            let diff = crate::linalg::max_abs(&(s - m.smatrix().unwrap()));
            assert!(diff < 1e-12, "{n}: {diff}");
        }
    }

    #[test]
    fn zn_modularity_rule_matches_unitarity() {
        for n in 1..=8usize {
            for twice_p in 0..(4 * n as i64) {
                let p = Rational64::new(twice_p, 2);
                let Ok(m) = zn(n, p) else { continue };
                let s = smatrix_from_twists(&m);
                let u = crate::linalg::max_abs(&(&s * s.adjoint() - DMatrix::identity(n, n)));
                assert_eq!(u < 1e-10, m.is_modular(), "ZN({n},{p})");
            }
        }
    }

    #[test]
    fn kitaev_even_fusion_is_klein_or_cyclic() {
        assert_eq!(kitaev(8).unwrap().rank(), 4);
        let k2 = kitaev(2).unwrap();
        assert_eq!(k2.n(ChargeId(1), ChargeId(1), ChargeId(2)), 1);
        let k4 = kitaev(4).unwrap();
        assert_eq!(k4.n(ChargeId(1), ChargeId(1), ChargeId(0)), 1);
    }

    #[test]
    fn names_parse() {
        assert_eq!(catalog_get("Fib+1").unwrap().name(), "Fib(+1)");
        assert_eq!(catalog_get("ZN(2,1/2)×ZN(2,3/2)").unwrap().rank(), 4);
        assert_eq!(catalog_get("DZ2").unwrap().rank(), 4);
        assert!(matches!(catalog_get("Foo"), Err(Error::UnknownModel(_))));
        assert!(catalog_get("ZN(3,1/2)").is_err());
    }

    #[test]
    fn so3_6_is_not_modular() {
        let m = so3_6();
        assert!(!m.is_modular());
        let d2 = m.total_qdim_sq();
        assert!((d2 - 2.0 * (4.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
    }
}
