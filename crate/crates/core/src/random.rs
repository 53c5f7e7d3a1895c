//! Seeded random states for property tests and benchmarks.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::linalg::CMat;
use crate::model::{AnyonModel, ChargeId};
use crate::state::{BipartitePureState, Block, SectorState};

pub use rand::SeedableRng;

pub type StateRng = ChaCha8Rng;

pub fn rng(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `rows x cols` matrix of independent complex Gaussians.
pub fn gaussian(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    })
}

/// Uniform point on the probability simplex of size `k`.
pub fn random_distribution(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let x: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = x.iter().sum();
    x.into_iter().map(|v| v / s).collect()
}

/// Sector dimensions `1..=max_dim` on a random nonempty subset of charges.
pub fn random_layout(rng: &mut impl Rng, m: &AnyonModel, max_dim: usize) -> BTreeMap<ChargeId, usize> {
    loop {
        let mut layout = BTreeMap::new();
        for c in m.charges() {
            if rng.random_bool(0.6) {
                layout.insert(c, rng.random_range(1..=max_dim));
            }
        }
        if !layout.is_empty() {
            return layout;
        }
    }
}

/// Random mixed state `W_c ∝ G G^dagger` on a fixed layout, normalized to unit quantum trace.
pub fn random_state_on(rng: &mut impl Rng, m: Arc<AnyonModel>, layout: &BTreeMap<ChargeId, usize>) -> SectorState {
    let mut ws: BTreeMap<ChargeId, CMat> = layout
        .iter()
        .map(|(&c, &d)| {
            let g = gaussian(rng, d, d);
            (c, &g * g.adjoint())
        })
        .collect();
    let total: f64 = ws.values().map(|w| w.trace().re).sum();
    for w in ws.values_mut() {
        *w /= Complex64::new(total, 0.0);
    }
    let sectors = ws.into_iter().map(|(c, w)| (c, vec![Block::new(w)])).collect();
    SectorState::from_sectors_unchecked(m, sectors)
}

pub fn random_state(rng: &mut impl Rng, m: Arc<AnyonModel>, max_dim: usize) -> SectorState {
    let layout = random_layout(rng, &m, max_dim);
    random_state_on(rng, m, &layout)
}

/// Random pure state with blocks `psi_c` of size `dim_A(c) x dim_B(dual c)`.
pub fn random_bipartite(rng: &mut impl Rng, m: Arc<AnyonModel>, max_dim: usize) -> BipartitePureState {
    let layout = random_layout(rng, &m, max_dim);
    let mut blocks: BTreeMap<ChargeId, CMat> = layout
        .keys()
        .map(|&c| {
            let cols = rng.random_range(1..=max_dim);
            (c, gaussian(rng, layout[&c], cols))
        })
        .collect();
    let norm: f64 = blocks.values().map(|b| b.norm_squared()).sum::<f64>().sqrt();
    for b in blocks.values_mut() {
        *b /= Complex64::new(norm, 0.0);
    }
    BipartitePureState::new(m, blocks).expect("normalized by construction")
}
