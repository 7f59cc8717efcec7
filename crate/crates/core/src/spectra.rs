//! The matrix family `aD(G) + bA(G)` and a cyclic Jacobi eigensolver for
//! dense symmetric matrices.

use crate::graph::Graph;
use serde::Serialize;
use thiserror::Error;

/// Solver accuracy used unless a caller asks for something else.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Sweep budget before the solver gives up.
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("matrix orders differ: {0} vs {1}")]
    ShapeMismatch(usize, usize),
}

/// Dense real symmetric matrix; every write is mirrored.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    /// Builds from a closure evaluated on the upper triangle only.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * factor).collect() }
    }

    pub fn try_add(&self, other: &SymmetricMatrix) -> Result<Self, SpectraError> {
        if self.n != other.n {
            return Err(SpectraError::ShapeMismatch(self.n, other.n));
        }
        Ok(Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect() })
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    sum += self.get(i, j).powi(2);
                }
            }
        }
        sum.sqrt()
    }
}

/// `a·D(G) + b·A(G)`: `(0,1)` is the adjacency matrix, `(1,-1)` the
/// Laplacian and `(1,1)` the signless Laplacian.
pub fn build_matrix(g: &Graph, a: f64, b: f64) -> SymmetricMatrix {
    let mut m = SymmetricMatrix::zeros(g.n());
    for v in 0..g.n() {
        m.set(v, v, a * g.degree(v) as f64);
    }
    for &(u, v) in g.edges() {
        m.set(u, v, b);
    }
    m
}

/// All eigenvalues of `m`, non-increasing.
///
/// Cyclic Jacobi: sweep over every off-diagonal pair, annihilating each
/// with a plane rotation, until the off-diagonal Frobenius norm drops below
/// `tol·‖m‖_F`. The diagonal then carries each eigenvalue to within that
/// norm.
pub fn sym_eigenvalues(m: &SymmetricMatrix, tol: f64) -> Result<Vec<f64>, SpectraError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpectraError::BadTolerance(tol));
    }
    let n = m.n;
    let mut a = m.data.clone();
    let target = tol * m.frobenius_norm();
    let mut off = m.off_diagonal_norm();
    let mut sweeps = 0;
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(SpectraError::NoConvergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
        sweeps += 1;
        off = {
            let mut sum = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        sum += a[i * n + j].powi(2);
                    }
                }
            }
            sum.sqrt()
        };
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// One Jacobi rotation `A ← JᵀAJ` zeroing entry `(p, q)`.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.is_infinite() { 0.0 } else { theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
}

/// Ordered spectrum of `aD(G) + bA(G)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralProfile {
    pub a: f64,
    pub b: f64,
    pub eigenvalues: Vec<f64>,
}

impl SpectralProfile {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `i`-th largest, 1-based (`λ_i`).
    pub fn kth_largest(&self, i: usize) -> Option<f64> {
        i.checked_sub(1).and_then(|i| self.eigenvalues.get(i).copied())
    }

    /// `j`-th smallest, 1-based: `kth_smallest(3)` on a Laplacian is `μ_{n-2}`.
    pub fn kth_smallest(&self, j: usize) -> Option<f64> {
        let n = self.eigenvalues.len();
        if j == 0 || j > n {
            return None;
        }
        self.kth_largest(n - j + 1)
    }
}

pub fn spectral_profile(g: &Graph, a: f64, b: f64, tol: f64) -> Result<SpectralProfile, SpectraError> {
    let eigenvalues = sym_eigenvalues(&build_matrix(g, a, b), tol)?;
    Ok(SpectralProfile { a, b, eigenvalues })
}

pub fn laplacian_profile(g: &Graph, tol: f64) -> Result<SpectralProfile, SpectraError> {
    spectral_profile(g, 1.0, -1.0, tol)
}
