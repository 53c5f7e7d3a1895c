use std::collections::BTreeMap;
use std::sync::Arc;

use anyonic_entropy::entropy::{renyi, von_neumann};
use anyonic_entropy::model::{catalog_get, catalog_names, fusion_vector, AnyonModel, ChargeId};
use anyonic_entropy::random::{random_bipartite, random_distribution, random_layout, random_state, random_state_on, rng};
use anyonic_entropy::state::{convex_combination, orthogonal_mixture, single_anyon_state, tensor_all, Block, SectorState};
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const SLACK: f64 = 1e-9;

fn model(i: usize) -> Arc<AnyonModel> {
    let names = catalog_names();
    Arc::new(catalog_get(&names[i % names.len()]).unwrap())
}

fn n_models() -> usize {
    catalog_names().len()
}

/// `-sum_c Tr W_c log(W_c / d_c)` through the real 2n x 2n embedding of each block.
fn entropy_oracle(s: &SectorState) -> f64 {
    let m = s.model();
    let mut total = 0.0;
    for (&c, blocks) in s.sectors() {
        let d = m.qdim(c);
        for b in blocks {
            let n = b.w.nrows();
            let real = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
                let z = b.w[(i % n, j % n)];
                match (i < n, j < n) {
                    (true, true) | (false, false) => z.re,
                    (true, false) => -z.im,
                    (false, true) => z.im,
                }
            });
            let eig = SymmetricEigen::new(real);
            // each eigenvalue appears twice in the embedding
            let s: f64 = eig
                .eigenvalues
                .iter()
                .filter(|&&l| l > 1e-14)
                .map(|&l| -l * (l / d).ln())
                .sum();
            total += b.multiplicity as f64 * s / 2.0;
        }
    }
    total
}

fn random_partition(rng: &mut impl Rng, s: &SectorState) -> BTreeMap<ChargeId, Vec<Vec<usize>>> {
    s.sectors()
        .keys()
        .map(|&c| {
            let dim = s.sector_dim(c) as usize;
            let mut idx: Vec<usize> = (0..dim).collect();
            idx.shuffle(rng);
            let groups = rng.random_range(1..=dim);
            let mut parts = vec![Vec::new(); groups];
            for (k, i) in idx.into_iter().enumerate() {
                parts[k % groups].push(i);
            }
            (c, parts)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn entropy_matches_embedding_oracle(mi in 0..n_models(), seed in any::<u64>()) {
        let s = random_state(&mut rng(seed), model(mi), 4);
        prop_assert!((von_neumann(&s) - entropy_oracle(&s)).abs() < 1e-10);
    }

    #[test]
    fn non_negative(mi in 0..n_models(), seed in any::<u64>()) {
        let s = random_state(&mut rng(seed), model(mi), 4);
        prop_assert!(von_neumann(&s) >= -SLACK);
        prop_assert!(renyi(&s, 2.0).unwrap() >= -SLACK);
    }

    #[test]
    fn traces_related_by_dimensions(mi in 0..n_models(), seed in any::<u64>()) {
        let s = random_state(&mut rng(seed), model(mi), 4);
        let m = s.model();
        let via_blocks: f64 = s.sectors().iter()
            .map(|(&c, bs)| m.qdim(c) * bs.iter().map(|b| b.multiplicity as f64 * b.w.trace().re / m.qdim(c)).sum::<f64>())
            .sum();
        prop_assert!((s.quantum_trace() - via_blocks).abs() < 1e-12);
        prop_assert!((s.quantum_trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn renyi_limit(mi in 0..n_models(), seed in any::<u64>()) {
        let s = random_state(&mut rng(seed), model(mi), 4);
        let vn = von_neumann(&s);
        prop_assert!((renyi(&s, 1.0 + 1e-6).unwrap() - vn).abs() < 1e-5);
        prop_assert!((renyi(&s, 1.0 - 1e-6).unwrap() - vn).abs() < 1e-5);
    }

    #[test]
    fn pure_state_marginals_agree(mi in 0..n_models(), seed in any::<u64>()) {
        let psi = random_bipartite(&mut rng(seed), model(mi), 4);
        let (a, b) = (psi.reduce_a(), psi.reduce_b());
        prop_assert!((von_neumann(&a) - von_neumann(&b)).abs() < SLACK);
        prop_assert!(von_neumann(&psi.joint_state()).abs() < SLACK);
    }

    #[test]
    fn tensor_additivity(mi in 0..n_models(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = model(mi);
        let s1 = random_state(&mut r, m.clone(), 3);
        let s2 = random_state(&mut r, m, 3);
        let joint = s1.tensor(&s2).unwrap();
        prop_assert!((joint.quantum_trace() - 1.0).abs() < 1e-12);
        prop_assert!((von_neumann(&joint) - von_neumann(&s1) - von_neumann(&s2)).abs() < SLACK);
    }

    #[test]
    fn orthogonal_mixture_entropy(mi in 0..n_models(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = model(mi);
        let k = r.random_range(2..=4);
        let states: Vec<SectorState> = (0..k).map(|_| random_state(&mut r, m.clone(), 3)).collect();
        let p = random_distribution(&mut r, k);
        let mix = orthogonal_mixture(&states, &p).unwrap();
        let h: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum();
        let want = h + p.iter().zip(&states).map(|(pi, s)| pi * von_neumann(s)).sum::<f64>();
        prop_assert!((von_neumann(&mix) - want).abs() < SLACK);
    }

    #[test]
    fn measurement_never_decreases_entropy(mi in 0..n_models(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_state(&mut r, model(mi), 4);
        let part = random_partition(&mut r, &s);
        let after = s.measure_decohere(&part).unwrap();
        prop_assert!(von_neumann(&after) >= von_neumann(&s) - SLACK);
        prop_assert!((after.quantum_trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn subadditivity_and_triangle(mi in 0..n_models(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = model(mi);
        let psi = random_bipartite(&mut r, m.clone(), 3);
        let (a, b) = (psi.reduce_a(), psi.reduce_b());
        let (sa, sb) = (von_neumann(&a), von_neumann(&b));
        for joint in [psi.joint_state(), psi.decohere_charge_line()] {
            let sj = von_neumann(&joint);
            prop_assert!(sj <= sa + sb + SLACK);
            prop_assert!(sj >= (sa - sb).abs() - SLACK);
        }
        let x = random_state(&mut r, m.clone(), 3);
        let y = random_state(&mut r, m, 3);
        let prod = x.tensor(&y).unwrap();
        let (sx, sy, sp) = (von_neumann(&x), von_neumann(&y), von_neumann(&prod));
        prop_assert!((sp - sx - sy).abs() < SLACK);
        prop_assert!(sp >= (sx - sy).abs() - SLACK);
    }

    #[test]
    fn concavity(mi in 0..n_models(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = model(mi);
        let k = r.random_range(2..=4);
        let shared = r.random_bool(0.5);
        let layout = random_layout(&mut r, &m, 4);
        // states share a basis per sector but may leave sectors empty
        let states: Vec<SectorState> = (0..k)
            .map(|_| {
                let mut own = layout.clone();
                if !shared {
                    let keep = *own.keys().next().unwrap();
                    own.retain(|&c, _| c == keep || r.random_bool(0.5));
                }
                random_state_on(&mut r, m.clone(), &own)
            })
            .collect();
        let p = random_distribution(&mut r, k);
        let mix = convex_combination(&states, &p).unwrap();
        let avg: f64 = p.iter().zip(&states).map(|(pi, s)| pi * von_neumann(s)).sum();
        prop_assert!(von_neumann(&mix) >= avg - SLACK);
    }

    #[test]
    fn maximum_entropy_of_anyons(mi in 0..n_models(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = model(mi);
        let n = r.random_range(1..=3);
        let charges: Vec<ChargeId> = (0..n).map(|_| ChargeId(r.random_range(0..m.rank()))).collect();
        let bound: f64 = charges.iter().map(|&a| m.qdim(a).ln()).sum();
        let dims = fusion_vector(&m, &charges);
        let layout: BTreeMap<ChargeId, usize> = dims.iter().enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(c, &k)| (ChargeId(c), k as usize))
            .collect();
        let s = random_state_on(&mut r, m.clone(), &layout);
        prop_assert!(von_neumann(&s) <= bound + SLACK);
        let uniform = tensor_all(&charges.iter().map(|&a| single_anyon_state(m.clone(), a)).collect::<Vec<_>>()).unwrap();
        prop_assert!((von_neumann(&uniform) - bound).abs() < SLACK);
    }

    #[test]
    fn project_vacuum_has_one_sector(mi in 0..n_models(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = model(mi);
        let s1 = random_state(&mut r, m.clone(), 2);
        let dual: BTreeMap<ChargeId, Vec<Block>> = s1.sectors().iter()
            .map(|(&c, bs)| (m.dual(c), bs.clone()))
            .collect();
        let s2 = SectorState::new(m, dual).unwrap();
        let v = s1.tensor(&s2).unwrap().project_vacuum().unwrap();
        prop_assert_eq!(v.sectors().len(), 1);
        prop_assert!(v.sectors().contains_key(&ChargeId::VACUUM));
        prop_assert!((v.quantum_trace() - 1.0).abs() < 1e-12);
    }
}
