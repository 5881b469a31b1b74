//! Banded Gaussian elimination with partial pivoting.

use crate::error::{check_len, GwigError, Result};

/// Square matrix with `kl` sub- and `ku` super-diagonals. Storage reserves
/// `kl` extra super-diagonals for pivoting fill-in.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![0.0; n * width],
        }
    }

    pub fn tridiagonal(n: usize) -> Self {
        Self::zeros(n, 1, 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n || j >= self.n || j + self.kl < i || j > i + self.kl + self.ku {
            return None;
        }
        Some(i * self.width + (j + self.kl - i))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |s| self.data[s])
    }

    /// Sets an entry inside the declared band.
    pub fn set(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        if i >= self.n || j >= self.n || j + self.kl < i || j > i + self.ku {
            return Err(GwigError::Invalid(format!(
                "entry ({i}, {j}) outside band (kl = {}, ku = {})",
                self.kl, self.ku
            )));
        }
        let s = self.slot(i, j).expect("inside band");
        self.data[s] = value;
        Ok(())
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len("BandedMatrix::matvec", self.n, x.len())?;
        Ok((0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kl);
                let hi = (i + self.kl + self.ku).min(self.n - 1);
                (lo..=hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect())
    }

    /// Solves `A x = b`, consuming the matrix.
    pub fn solve(mut self, b: &[f64]) -> Result<Vec<f64>> {
        check_len("BandedMatrix::solve", self.n, b.len())?;
        let n = self.n;
        let kl = self.kl;
        let reach = kl + self.ku;
        let scale = self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 || !scale.is_finite() {
            return Err(GwigError::Singular(format!("matrix max-norm {scale}")));
        }
        let mut x = b.to_vec();
        let (mut min_piv, mut max_piv) = (f64::INFINITY, 0.0f64);

        for k in 0..n {
            let last = (k + kl).min(n - 1);
            let p = (k..=last)
                .max_by(|&a, &b| self.get(a, k).abs().total_cmp(&self.get(b, k).abs()))
                .expect("non-empty pivot range");
            let piv = self.get(p, k);
            if piv.abs() <= 1e-300 || piv.abs() <= f64::EPSILON * 1e-4 * scale {
                return Err(GwigError::Singular(format!(
                    "pivot {piv:e} at row {k}, matrix scale {scale:e}"
                )));
            }
            min_piv = min_piv.min(piv.abs());
            max_piv = max_piv.max(piv.abs());
            let col_hi = (k + reach).min(n - 1);
            if p != k {
                for j in k..=col_hi {
                    let a = self.get(k, j);
                    let c = self.get(p, j);
                    let sk = self.slot(k, j).expect("pivot row slot");
                    self.data[sk] = c;
                    if let Some(sp) = self.slot(p, j) {
                        self.data[sp] = a;
                    }
                }
                x.swap(k, p);
            }
            for i in k + 1..=last {
                let factor = self.get(i, k) / piv;
                if factor == 0.0 {
                    continue;
                }
                for j in k..=col_hi {
                    let akj = self.get(k, j);
                    if let Some(s) = self.slot(i, j) {
                        self.data[s] -= factor * akj;
                    }
                }
                x[i] -= factor * x[k];
            }
        }

        for k in (0..n).rev() {
            let col_hi = (k + reach).min(n - 1);
            let mut acc = x[k];
            for j in k + 1..=col_hi {
                acc -= self.get(k, j) * x[j];
            }
            x[k] = acc / self.get(k, k);
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(GwigError::Singular(format!(
                "non-finite solution, pivot ratio {:e}",
                min_piv / max_piv
            )));
        }
        Ok(x)
    }
}
