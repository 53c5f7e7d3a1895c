//! Transfer matrix `[K_alpha]_{ee'} = sum_b N_{eb}^{e'} d_b^alpha`, which
//! resums boundary-charge tuples: `[(K_alpha)^n]_{0c}` is the Renyi sum over
//! `n` boundary anyons fusing to `c`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::model::{AnyonModel, ChargeId};

#[derive(Clone, Debug)]
pub struct TransferMatrix {
    alpha: f64,
    k: DMatrix<f64>,
    dk: DMatrix<f64>,
    kappa: Vec<f64>,
    vectors: DMatrix<f64>,
    total_qdim_sq: f64,
    dims: Vec<f64>,
}

fn build(m: &AnyonModel, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let r = m.rank();
    let mut k = DMatrix::zeros(r, r);
    for e in m.charges() {
        for b in m.charges() {
            let w = f(m.qdim(b));
            for (e2, n) in m.fuse(e, b) {
                k[(e.0, e2.0)] += n as f64 * w;
            }
        }
    }
    k
}

impl TransferMatrix {
    pub fn new(m: &AnyonModel, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidAlpha(alpha));
        }
        let k = build(m, |d| d.powf(alpha));
        let dk = build(m, |d| d.powf(alpha) * d.ln());
        let scale = k.amax();
        let asym = (&k - k.transpose()).amax();
        if asym > 1e-12 * scale {
            return Err(Error::Numerical(format!(
                "transfer matrix of `{}` is not symmetric (residual {asym:.3e})",
                m.name()
            )));
        }
        let eig = SymmetricEigen::new(k.clone());
        let r = m.rank();
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[j].abs().total_cmp(&eig.eigenvalues[i].abs()));
        // the Perron root is the largest eigenvalue; keep it first even on magnitude ties
        let top = (0..r).max_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j])).unwrap();
        order.retain(|&i| i != top);
        order.insert(0, top);
        let kappa: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut vectors = DMatrix::zeros(r, r);
        for (col, &i) in order.iter().enumerate() {
            vectors.set_column(col, &eig.eigenvectors.column(i));
        }
        if vectors.column(0).sum() < 0.0 {
            vectors.column_mut(0).neg_mut();
        }
        let tm = TransferMatrix {
            alpha,
            k,
            dk,
            kappa,
            vectors,
            total_qdim_sq: m.total_qdim_sq(),
            dims: m.qdims().to_vec(),
        };
        let ratio = tm.decay_ratio();
        if !(ratio < 1.0 - 1e-12) {
            return Err(Error::Numerical(format!(
                "leading eigenvalue of the transfer matrix of `{}` is not isolated (ratio {ratio})",
                m.name()
            )));
        }
        Ok(tm)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.k
    }

    /// `d K_alpha / d alpha`.
    pub fn derivative(&self) -> &DMatrix<f64> {
        &self.dk
    }

    /// Eigenvalues, Perron root first, the rest by decreasing magnitude.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.kappa
    }

    /// Orthonormal eigenvectors as columns, matching [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn leading_eigenvalue(&self) -> f64 {
        self.kappa[0]
    }

    /// `max_{mu != 0} |kappa_mu / kappa_0|`.
    pub fn decay_ratio(&self) -> f64 {
        self.kappa[1..]
            .iter()
            .map(|k| (k / self.kappa[0]).abs())
            .fold(0.0, f64::max)
    }

    /// `lambda = -log(decay_ratio)`; infinite when every subleading eigenvalue vanishes.
    pub fn decay_rate(&self) -> f64 {
        -self.decay_ratio().ln()
    }

    fn scaled(&self) -> DMatrix<f64> {
        &self.k / self.kappa[0]
    }

    /// `(K / kappa_0)^n`.
    pub fn normalized_power(&self, n: usize) -> DMatrix<f64> {
        let r = self.k.nrows();
        let base = self.scaled();
        let mut p = DMatrix::identity(r, r);
        for _ in 0..n {
            p = &p * &base;
        }
        p
    }

    /// `log [(K_alpha)^n]_{e e'}`.
    pub fn log_power_element(&self, n: usize, e: ChargeId, e2: ChargeId) -> Result<f64> {
        let x = self.normalized_power(n)[(e.0, e2.0)];
        if !(x > 0.0) {
            return Err(Error::Unreachable(format!("{}", e2.0)));
        }
        Ok(n as f64 * self.kappa[0].ln() + x.ln())
    }

    /// `d/d alpha log [(K_alpha)^n]_{e e'}` by the product rule.
    pub fn log_power_derivative(&self, n: usize, e: ChargeId, e2: ChargeId) -> Result<f64> {
        if n == 0 {
            return Ok(0.0);
        }
        let r = self.k.nrows();
        let base = self.scaled();
        let dbase = &self.dk / self.kappa[0];
        let mut powers = vec![DMatrix::identity(r, r)];
        for i in 1..n {
            let next = &powers[i - 1] * &base;
            powers.push(next);
        }
        let mut total = DMatrix::zeros(r, r);
        for k in 0..n {
            total += &powers[k] * &dbase * &powers[n - 1 - k];
        }
        let full = &powers[n - 1] * &base;
        let x = full[(e.0, e2.0)];
        if !(x > 0.0) {
            return Err(Error::Unreachable(format!("{}", e2.0)));
        }
        Ok(total[(e.0, e2.0)] / x)
    }

    /// `F(n, c) = log([(K)^n]_{0c} D^2 / (d_c kappa_0^n))` from the matrix power.
    pub fn correction_f(&self, n: usize, c: ChargeId) -> Result<f64> {
        let x = self.normalized_power(n)[(0, c.0)];
        if !(x > 0.0) {
            return Err(Error::Unreachable(format!("{}", c.0)));
        }
        Ok((x * self.total_qdim_sq / self.dims[c.0]).ln())
    }

    /// The same correction from the eigen-sum
    /// `log(1 + (D^2/d_c) sum_{mu != 0} (kappa_mu/kappa_0)^n v_mu(0) v_mu(c))`.
    pub fn correction_f_spectral(&self, n: usize, c: ChargeId) -> f64 {
        let mut s = 0.0;
        for mu in 1..self.kappa.len() {
            let ratio = self.kappa[mu] / self.kappa[0];
            s += ratio.powi(n as i32) * self.vectors[(0, mu)] * self.vectors[(c.0, mu)];
        }
        (s * self.total_qdim_sq / self.dims[c.0]).ln_1p()
    }

    /// `||K K^T - K^T K||`, zero for a normal matrix.
    pub fn normality_residual(&self) -> f64 {
        (&self.k * self.k.transpose() - self.k.transpose() * &self.k).amax()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::catalog_get;

    #[test]
    fn fibonacci_at_alpha_one() {
        let m = catalog_get("Fib").unwrap();
        let t = TransferMatrix::new(&m, 1.0).unwrap();
        let phi = m.qdim(ChargeId(1));
        let want = DMatrix::from_row_slice(2, 2, &[1.0, phi, phi, phi * phi]);
        assert!((t.matrix() - want).amax() < 1e-14);
        assert!((t.eigenvalues()[0] - (2.0 + phi)).abs() < 1e-12);
        assert!(t.eigenvalues()[1].abs() < 1e-12);
        for n in 2..8 {
            assert!(t.correction_f(n, ChargeId(0)).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn toric_code_is_rank_one() {
        let m = catalog_get("DZ2").unwrap();
        let t = TransferMatrix::new(&m, 1.0).unwrap();
        assert!((t.matrix() - DMatrix::from_element(4, 4, 1.0)).amax() < 1e-15);
        assert!((t.eigenvalues()[0] - 4.0).abs() < 1e-12);
        let t2 = TransferMatrix::new(&m, 2.0).unwrap();
        assert!(t2.correction_f(4, ChargeId(0)).unwrap().abs() < 1e-14);
        assert_eq!(t2.decay_rate(), f64::INFINITY);
    }

    #[test]
    fn leading_pair_matches_dimensions() {
        for name in ["K(1)", "SO3_6", "Fib(-1)xZN(2,1/2)", "ZN(5,2)"] {
            let m = catalog_get(name).unwrap();
            for alpha in [0.5, 1.0, 2.0, 3.0] {
                let t = TransferMatrix::new(&m, alpha).unwrap();
                let kappa0: f64 = m.qdims().iter().map(|d| d.powf(1.0 + alpha)).sum();
                assert!((t.leading_eigenvalue() - kappa0).abs() < 1e-9 * kappa0);
                for e in m.charges() {
                    let v = t.eigenvectors()[(e.0, 0)];
                    assert!((v - m.qdim(e) / m.total_qdim()).abs() < 1e-9);
                }
                assert!(t.normality_residual() < 1e-9);
            }
        }
    }

    #[test]
    fn spectral_and_power_forms_agree() {
        let m = catalog_get("K(1)").unwrap();
        let t = TransferMatrix::new(&m, 2.0).unwrap();
        for n in 1..10 {
            for c in m.charges() {
                let a = t.correction_f(n, c).unwrap();
                let b = t.correction_f_spectral(n, c);
                assert!((a - b).abs() < 1e-12, "n={n} c={c}: {a} {b}");
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let m = catalog_get("K(3)").unwrap();
        let h = 1e-6;
        let t = TransferMatrix::new(&m, 2.0).unwrap();
        let tp = TransferMatrix::new(&m, 2.0 + h).unwrap();
        let tm = TransferMatrix::new(&m, 2.0 - h).unwrap();
        let v = ChargeId(0);
        let fd = (tp.log_power_element(4, v, v).unwrap() - tm.log_power_element(4, v, v).unwrap()) / (2.0 * h);
        let exact = t.log_power_derivative(4, v, v).unwrap();
        assert!((fd - exact).abs() < 1e-6);
    }
}
