//! Lowest eigenpairs of a real symmetric tridiagonal matrix: Sturm-count bisection for the
//! values, inverse iteration for the vectors.

use crate::error::{Error, Result};
use crate::par::{map_range, Parallelism};

const BISECTION_BUDGET: usize = 400;
const INVERSE_ITERATION_BUDGET: usize = 12;
pub const RESIDUAL_BOUND: f64 = 1e-8;

/// Symmetric tridiagonal matrix: `diag[i]` and `off[i] = T[i][i+1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    /// Unit 2-norm vectors, sign fixed so the largest component is positive.
    pub vectors: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
    pub norm: f64,
}

impl Tridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len().max(1), "off-diagonal length must be dim - 1");
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Infinity norm (an upper bound on the spectral radius).
    pub fn norm(&self) -> f64 {
        (0..self.dim())
            .map(|i| {
                let l = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let r = if i + 1 < self.dim() { self.off[i].abs() } else { 0.0 };
                self.diag[i].abs() + l + r
            })
            .fold(0.0, f64::max)
    }

    fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.dim() {
            let l = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let r = if i + 1 < self.dim() { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - l - r);
            hi = hi.max(self.diag[i] + l + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt() * (1.0 + self.norm());
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.dim() {
            let coupling = if i > 0 { self.off[i - 1] * self.off[i - 1] / q } else { 0.0 };
            q = self.diag[i] - lambda - coupling;
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// The `index`-th smallest eigenvalue (0-based).
    pub fn eigenvalue(&self, index: usize) -> Result<f64> {
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * (1.0 + lo.abs().max(hi.abs()));
        lo -= pad;
        hi += pad;
        for _ in 0..BISECTION_BUDGET {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                return Ok(0.5 * (lo + hi));
            }
        }
        Err(Error::ConvergenceFailure { budget: BISECTION_BUDGET })
    }

    /// Solves `(T − shift) x = rhs` by Gaussian elimination with partial pivoting.
    fn shifted_solve(&self, shift: f64, rhs: &[f64], floor: f64) -> Vec<f64> {
        let n = self.dim();
        if n == 1 {
            let p = self.diag[0] - shift;
            return vec![rhs[0] / if p.abs() < floor { floor } else { p }];
        }
        // rows kept as (a: sub, b: diag, c: super, d: second super after a swap)
        let mut b: Vec<f64> = self.diag.iter().map(|d| d - shift).collect();
        let mut c: Vec<f64> = self.off.clone();
        c.push(0.0);
        let mut d = vec![0.0; n];
        let mut x = rhs.to_vec();
        let mut sub: Vec<f64> = self.off.clone();
        for i in 0..n - 1 {
            if sub[i].abs() > b[i].abs() {
                // swap rows i and i+1
                let (bi, ci, di, xi) = (b[i], c[i], d[i], x[i]);
                b[i] = sub[i];
                c[i] = b[i + 1];
                d[i] = c[i + 1];
                x[i] = x[i + 1];
                sub[i] = bi;
                b[i + 1] = ci;
                c[i + 1] = di;
                x[i + 1] = xi;
            }
            if b[i].abs() < floor {
                b[i] = floor.copysign(if b[i] == 0.0 { 1.0 } else { b[i] });
            }
            let l = sub[i] / b[i];
            b[i + 1] -= l * c[i];
            c[i + 1] -= l * d[i];
            x[i + 1] -= l * x[i];
        }
        if b[n - 1].abs() < floor {
            b[n - 1] = floor.copysign(if b[n - 1] == 0.0 { 1.0 } else { b[n - 1] });
        }
        x[n - 1] /= b[n - 1];
        x[n - 2] = (x[n - 2] - c[n - 2] * x[n - 1]) / b[n - 2];
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - c[i] * x[i + 1] - d[i] * x[i + 2]) / b[i];
        }
        x
    }

    fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        self.apply(v).iter().zip(v).map(|(hv, vi)| (hv - lambda * vi).powi(2)).sum::<f64>().sqrt()
    }

    /// Eigenvectors for a cluster of close eigenvalues, orthogonalized against each other.
    fn cluster_vectors(&self, values: &[f64], norm: f64) -> Result<Vec<(Vec<f64>, f64)>> {
        let n = self.dim();
        let floor = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
        let mut out: Vec<(Vec<f64>, f64)> = Vec::with_capacity(values.len());
        for (c, &lambda) in values.iter().enumerate() {
            let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * ((i + 7 * c) as f64 * 0.618_033_988_75).sin()).collect();
            normalize(&mut v);
            let mut res = f64::INFINITY;
            for _ in 0..INVERSE_ITERATION_BUDGET {
                v = self.shifted_solve(lambda, &v, floor);
                for (prev, _) in &out {
                    let dot: f64 = prev.iter().zip(&v).map(|(a, b)| a * b).sum();
                    v.iter_mut().zip(prev).for_each(|(vi, pi)| *vi -= dot * pi);
                }
                normalize(&mut v);
                res = self.residual(lambda, &v);
                if res <= RESIDUAL_BOUND * norm * 1e-3 {
                    break;
                }
            }
            if !(res <= RESIDUAL_BOUND * norm) {
                return Err(Error::ConvergenceFailure { budget: INVERSE_ITERATION_BUDGET });
            }
            fix_sign(&mut v);
            out.push((v, res));
        }
        Ok(out)
    }

    /// The `k` smallest eigenpairs.
    pub fn lowest(&self, k: usize, par: Parallelism) -> Result<Eigenpairs> {
        if k > self.dim() {
            return Err(Error::Parameter(format!("requested {k} eigenpairs of a {}-dimensional matrix", self.dim())));
        }
        let norm = self.norm();
        let values = map_range(k, par, |i| self.eigenvalue(i)).into_iter().collect::<Result<Vec<_>>>()?;
        let gap = 1e-3 * norm.max(f64::MIN_POSITIVE);
        let mut clusters: Vec<std::ops::Range<usize>> = Vec::new();
        for i in 0..k {
            match clusters.last_mut() {
                Some(r) if values[i] - values[i - 1] < gap => r.end = i + 1,
                _ => clusters.push(i..i + 1),
            }
        }
        let solved = map_slice_ranges(&clusters, par, |r| self.cluster_vectors(&values[r.clone()], norm));
        let mut vectors = Vec::with_capacity(k);
        let mut residuals = Vec::with_capacity(k);
        for block in solved {
            for (v, r) in block? {
                vectors.push(v);
                residuals.push(r);
            }
        }
        Ok(Eigenpairs { values, vectors, residuals, norm })
    }
}

fn map_slice_ranges<T: Send, F>(ranges: &[std::ops::Range<usize>], par: Parallelism, f: F) -> Vec<T>
where
    F: Fn(&std::ops::Range<usize>) -> T + Sync + Send,
{
    crate::par::map_slice(ranges, par, f)
}

fn normalize(v: &mut [f64]) {
    let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if s > 0.0 {
        v.iter_mut().for_each(|x| *x /= s);
    }
}

fn fix_sign(v: &mut [f64]) {
    let big = v.iter().copied().fold(0.0, |m: f64, x| if x.abs() > m.abs() { x } else { m });
    if big < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}
