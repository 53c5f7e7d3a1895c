use std::sync::Arc;

use anyonic_entropy::entropy::{von_neumann, EntropyOrder};
use anyonic_entropy::fermionic::{fermionic_catalog, fermionic_stopo, make_super};
use anyonic_entropy::model::{catalog_get, catalog_names, product, table1_names, AnyonModel, ChargeId};
use anyonic_entropy::state::heuristic_boundary_state;
use anyonic_entropy::tee::*;

const VN: EntropyOrder = EntropyOrder::VonNeumann;

fn models() -> Vec<AnyonModel> {
    catalog_names().iter().map(|n| catalog_get(n).unwrap()).collect()
}

/// `log sum_b N^{cbar}_b (d_b / (d_c D^(2n-2)))^alpha` over explicit tuples, written
/// independently of the library enumerator.
fn tuple_sum(m: &AnyonModel, n: usize, c: ChargeId, alpha: f64) -> f64 {
    let r = m.rank();
    let target = m.dual(c);
    let norm = m.qdim(c) * m.total_qdim_sq().powi(n as i32 - 1);
    let mut total = 0.0;
    for idx in 0..r.pow(n as u32) {
        let mut k = idx;
        let mut dist = vec![0u64; r];
        dist[0] = 1;
        let mut d = 1.0;
        for _ in 0..n {
            let b = ChargeId(k % r);
            k /= r;
            d *= m.qdim(b);
            let mut next = vec![0u64; r];
            for (x, &cnt) in dist.iter().enumerate() {
                for (y, mult) in m.fuse(ChargeId(x), b) {
                    next[y.0] += cnt * mult as u64;
                }
            }
            dist = next;
        }
        total += dist[target.0] as f64 * (d / norm).powf(alpha);
    }
    total.ln()
}

#[test]
fn methods_agree_on_disks_and_annuli() {
    for m in models() {
        for alpha in [0.5, 2.0, 3.0] {
            let order = EntropyOrder::Renyi(alpha);
            for c in m.charges() {
                for n in 1..=4 {
                    let vals: Vec<f64> = [Method::Closed, Method::Transfer, Method::Brute]
                        .iter()
                        .map(|&meth| disk_entropy(&m, n, c, order, Convention::Doubled, meth).unwrap())
                        .collect();
                    assert!((vals[0] - vals[1]).abs() < 1e-9 && (vals[0] - vals[2]).abs() < 1e-9, "{} {n} {c} {alpha} {vals:?}", m.name());
                    if m.rank() <= 4 && n <= 3 {
                        let oracle = tuple_sum(&m, n, c, alpha) / (1.0 - alpha);
                        assert!((vals[0] - oracle).abs() < 1e-9);
                    }
                }
                let a = annulus_entropy(&m, 2, 3, c, order, Convention::Undoubled, Method::Closed).unwrap();
                let b = annulus_entropy(&m, 2, 3, c, order, Convention::Undoubled, Method::Brute).unwrap();
                assert!((a - b).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn von_neumann_disk_is_affine() {
    for m in models() {
        let s: Vec<f64> = (1..=8)
            .map(|n| disk_entropy(&m, n, ChargeId(0), VN, Convention::Doubled, Method::Transfer).unwrap())
            .collect();
        // exact sums are affine from two segments on
        let step = s[2] - s[1];
        for w in s[1..].windows(2) {
            assert!((w[1] - w[0] - step).abs() < 1e-12, "{}", m.name());
        }
        assert!((step - boundary_anyon_entropy(&m, VN)).abs() < 1e-12);
    }
}

#[test]
fn kitaev_preskill_recovers_stopo() {
    for m in models() {
        let kp = kitaev_preskill(&m, None).unwrap();
        assert!((kp.vn_combo - stopo(&m)).abs() < 1e-12);
        let want = -0.5 * m.qdims().iter().map(|d| d * d).sum::<f64>().ln();
        assert!((kp.stopo - want).abs() < 1e-12);
    }
}

#[test]
fn correction_decays_geometrically() {
    // anchored at n = 3 for the trivial charge
    for name in ["K(1)", "SO3_6", "Fib", "ZN(5,2)xFib"] {
        let m = catalog_get(name).unwrap();
        let t = TransferMatrix::new(&m, 2.0).unwrap();
        let r = t.decay_ratio() + 1e-12;
        let f3 = t.correction_f(3, ChargeId(0)).unwrap().abs();
        for n in 3..=12 {
            let f = t.correction_f_spectral(n, ChargeId(0)).abs();
            assert!(f <= f3 * r.powi(n as i32 - 3) + 1e-15, "{name} n={n}");
        }
    }
}

#[test]
fn correction_bounded_by_subleading_modes() {
    // |log(1 + x)| <= |x| / (1 - |x|) with |x| <= C r^n
    for m in models() {
        let t = TransferMatrix::new(&m, 2.0).unwrap();
        let r = t.decay_ratio();
        let v = t.eigenvectors();
        for c in m.charges() {
            let amp: f64 = (1..m.rank()).map(|mu| (v[(0, mu)] * v[(c.0, mu)]).abs()).sum::<f64>()
                * m.total_qdim_sq()
                / m.qdim(c);
            for n in 1..=12 {
                let y = amp * r.powi(n);
                if y < 0.5 {
                    let f = t.correction_f_spectral(n as usize, c).abs();
                    assert!(f <= y / (1.0 - y) + 1e-14, "{} n={n} c={c}", m.name());
                }
            }
        }
    }
}

#[test]
fn torus_equals_annulus_and_sphere_is_three_disks() {
    for m in models() {
        for c in m.charges() {
            for order in [VN, EntropyOrder::Renyi(2.0)] {
                let a = annulus_entropy(&m, 3, 4, c, order, Convention::Undoubled, Method::Closed).unwrap();
                let t = torus_entropy(&m, 3, 4, c, order, Convention::Undoubled, Method::Closed).unwrap();
                assert_eq!(a, t);
            }
        }
        let x = ChargeId(m.rank() - 1);
        let triple = [x, m.dual(x), ChargeId(0)];
        let s = sphere3_entropy(&m, [2, 3, 4], triple, VN, Convention::Undoubled, Method::Closed).unwrap();
        let disks: f64 = [(2, x), (3, m.dual(x)), (4, ChargeId(0))]
            .iter()
            .map(|&(n, c)| disk_entropy(&m, n, c, VN, Convention::Undoubled, Method::Closed).unwrap())
            .sum();
        assert!((s - disks).abs() < 1e-12);
    }
}

#[test]
fn general_entropy_specializations() {
    for m in models() {
        let point = |c: ChargeId| {
            let mut p = vec![0.0; m.rank()];
            p[c.0] = 1.0;
            p
        };
        let c = ChargeId(m.rank() - 1);
        let spec = BoundarySpec {
            components: vec![
                BoundaryComponent { segments: 3, charge_dist: point(m.dual(c)) },
                BoundaryComponent { segments: 5, charge_dist: point(c) },
            ],
            convention: Convention::Undoubled,
        };
        let g = general_entropy(&m, &spec, 0.0).unwrap();
        let a = annulus_entropy(&m, 3, 5, c, VN, Convention::Undoubled, Method::Closed).unwrap();
        assert!((g - a).abs() < 1e-12, "{}", m.name());
    }
}

#[test]
fn boundary_state_pipeline_matches_disk() {
    for m in models() {
        let nmax = if m.is_abelian() { 8 } else { 5 };
        let arc = Arc::new(m.clone());
        for c in m.charges() {
            for n in 2..=nmax {
                let state = heuristic_boundary_state(arc.clone(), n, Some(c)).unwrap();
                let s = von_neumann(&state);
                let want = disk_entropy(&m, n, c, VN, Convention::Doubled, Method::Closed).unwrap();
                assert!((s - want).abs() < 1e-9, "{} n={n} c={c}: {s} {want}", m.name());
            }
        }
    }
}

#[test]
fn fit_is_exact_for_von_neumann() {
    for m in models() {
        let f = fit_stopo(&m, FitGeometry::Disk { charge: ChargeId(0) }, &[2, 3, 4, 5, 6], VN, Convention::Doubled).unwrap();
        assert!(f.residual_max < 1e-9);
        assert!((f.intercept - 2.0 * stopo(&m)).abs() < 1e-9);
    }
}

#[test]
fn string_net_matches_doubled_disk() {
    for name in table1_names() {
        let m = catalog_get(&name).unwrap();
        for n in 2..=6 {
            let d = disk_entropy(&m, n, ChargeId(0), VN, Convention::Doubled, Method::Closed).unwrap();
            assert!((stringnet_entropy(&m, n) - d).abs() < 1e-12);
        }
        assert!(stringnet_check(&m).passed, "{name}");
    }
}

#[test]
fn fermionic_invariants() {
    for e in fermionic_catalog().unwrap() {
        let sm = &e.model;
        assert!((sm.dhat_sq() - 0.5 * sm.base().total_qdim_sq()).abs() < 1e-12);
        for a in sm.base().charges() {
            let b = sm.partner(a);
            assert_ne!(a, b);
            assert_eq!(sm.partner(b), a);
        }
    }
    let z2 = catalog_get("ZN(2,1)").unwrap();
    for name in table1_names() {
        let x = catalog_get(&name).unwrap();
        let sm = make_super(&product(&z2, &x), ChargeId(x.rank())).unwrap();
        assert!((fermionic_stopo(&sm) - stopo(&x)).abs() < 1e-12);
    }
}
