//! Literal tuple enumeration of the boundary-state spectrum. Used as the
//! ground truth for the closed-form and transfer-matrix routes.

use crate::entropy::EntropyOrder;
use crate::error::{Error, Result};
use crate::model::{apply_charge, AnyonModel, ChargeId};

/// Largest number of tuples the oracles will enumerate.
pub const BRUTE_CAP: f64 = 1e7;

fn check_size(m: &AnyonModel, n: usize) -> Result<()> {
    let size = (m.rank() as f64).powi(n as i32);
    if size > BRUTE_CAP {
        return Err(Error::Infeasible { size, cap: BRUTE_CAP });
    }
    Ok(())
}

/// Calls `visit(log d_b1...d_bn, N^x_{b1...bn} for all x)` for every tuple.
fn enumerate(m: &AnyonModel, n: usize, visit: &mut dyn FnMut(f64, &[u64])) {
    let logd: Vec<f64> = m.qdims().iter().map(|d| d.ln()).collect();
    let mut start = vec![0u64; m.rank()];
    start[0] = 1;
    fn rec(m: &AnyonModel, logd: &[f64], depth: usize, v: &[u64], acc: f64, visit: &mut dyn FnMut(f64, &[u64])) {
        if depth == 0 {
            visit(acc, v);
            return;
        }
        for b in m.charges() {
            let next = apply_charge(m, v, b);
            rec(m, logd, depth - 1, &next, acc + logd[b.0], visit);
        }
    }
    rec(m, &logd, n, &start, 0.0, visit);
}

/// Accumulates `sum N w^alpha` (or `-sum N w log w`) for a disk with `n`
/// segments around a puncture `c`, with `w = d_b / (d_c D^(2n-2))`.
struct DiskSum {
    log_norm: f64,
    target: usize,
    order: EntropyOrder,
    acc: Compensated,
    count: u64,
}

/// Neumaier summation; the tuple sums run to millions of equal-sized terms.
#[derive(Default)]
struct Compensated {
    sum: f64,
    err: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.err += (self.sum - t) + x;
        } else {
            self.err += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.err
    }
}

impl DiskSum {
    fn new(m: &AnyonModel, n: usize, c: ChargeId, order: EntropyOrder) -> Self {
        DiskSum {
            log_norm: m.qdim(c).ln() + (n as f64 - 1.0) * m.total_qdim_sq().ln(),
            target: m.dual(c).0,
            order,
            acc: Compensated::default(),
            count: 0,
        }
    }

    fn add(&mut self, logd: f64, v: &[u64]) {
        let mult = v[self.target];
        if mult == 0 {
            return;
        }
        self.count += mult;
        let lw = logd - self.log_norm;
        match self.order {
            EntropyOrder::VonNeumann => self.acc.add(-(mult as f64) * lw.exp() * lw),
            EntropyOrder::Renyi(a) => self.acc.add(mult as f64 * (a * lw).exp()),
        }
    }

    /// Returns the entropy contribution for von Neumann or the raw sum for Renyi.
    fn value(&self) -> f64 {
        self.acc.value()
    }
}

fn finish(order: EntropyOrder, sums: &[f64]) -> f64 {
    match order {
        EntropyOrder::VonNeumann => sums.iter().sum(),
        EntropyOrder::Renyi(a) => sums.iter().map(|s| s.ln()).sum::<f64>() / (1.0 - a),
    }
}

fn disk_sum(m: &AnyonModel, n: usize, c: ChargeId, order: EntropyOrder) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("a boundary needs at least one segment".into()));
    }
    check_size(m, n)?;
    let mut sum = DiskSum::new(m, n, c, order);
    enumerate(m, n, &mut |l, v| sum.add(l, v));
    if sum.count == 0 {
        return Err(Error::Unreachable(m.label(c).to_string()));
    }
    Ok(sum.value())
}

/// Doubled disk entropy from `sum_b N^{cbar}_{b} (d_b / (d_c D^(2n-2)))^alpha`,
/// enumerated tuple by tuple.
pub fn brute_boundary_oracle(m: &AnyonModel, n: usize, c: ChargeId, order: EntropyOrder) -> Result<f64> {
    Ok(finish(order, &[disk_sum(m, n, c, order)?]))
}

/// Doubled annulus entropy; the double sum over both boundaries factorizes
/// into one disk sum per boundary.
pub fn brute_annulus(m: &AnyonModel, n: usize, mm: usize, c: ChargeId, order: EntropyOrder) -> Result<f64> {
    let a = disk_sum(m, n, m.dual(c), order)?;
    let b = disk_sum(m, mm, c, order)?;
    Ok(finish(order, &[a, b]))
}

/// Doubled annulus entropy from the unfactorized double sum
/// `sum_{a,b} N^c_a N^{cbar}_b (d_a d_b / (D^(2(n+m-2)) d_c^2))^alpha`.
pub fn brute_annulus_literal(m: &AnyonModel, n: usize, mm: usize, c: ChargeId, order: EntropyOrder) -> Result<f64> {
    if n == 0 || mm == 0 {
        return Err(Error::InvalidArgument("a boundary needs at least one segment".into()));
    }
    check_size(m, n + mm)?;
    let cbar = m.dual(c);
    let mut outer: Vec<(f64, u64)> = Vec::new();
    enumerate(m, n, &mut |l, v| {
        if v[c.0] > 0 {
            outer.push((l, v[c.0]));
        }
    });
    let log_norm = 2.0 * m.qdim(c).ln() + (n + mm) as f64 * m.total_qdim_sq().ln() - 2.0 * m.total_qdim_sq().ln();
    let mut acc = Compensated::default();
    enumerate(m, mm, &mut |l2, v| {
        let k2 = v[cbar.0];
        if k2 == 0 {
            return;
        }
        for &(l1, k1) in &outer {
            let lw = l1 + l2 - log_norm;
            let mult = (k1 * k2) as f64;
            match order {
                EntropyOrder::VonNeumann => acc.add(-mult * lw.exp() * lw),
                EntropyOrder::Renyi(a) => acc.add(mult * (a * lw).exp()),
            }
        }
    });
    Ok(finish(order, &[acc.value()]))
}
