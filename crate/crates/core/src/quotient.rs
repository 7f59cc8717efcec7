//! Laplacian quotient matrices over vertex partitions, and checkers for
//! eigenvalue interlacing and the Weyl inequalities.

use crate::graph::{Graph, VertexPartition};
use crate::rational::{to_f64, Rational};
use crate::spectra::{sym_eigenvalues, SpectraError, SymmetricMatrix};
use serde::Serialize;
use thiserror::Error;

/// Default slack for comparisons between two computed spectra.
pub const INTERLACING_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuotientError {
    #[error("partition invalid: {0}")]
    PartitionInvalid(String),
    #[error("interlacing needs fewer small eigenvalues than big ones ({small} >= {big})")]
    LengthError { big: usize, small: usize },
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Boundary counts of a partition: `r[i] = e(V_i, V \ V_i)` and
/// `r_pair[i][j] = e(V_i, V_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutProfile {
    pub partition: VertexPartition,
    pub r: Vec<usize>,
    pub r_pair: Vec<Vec<usize>>,
}

pub fn cut_profile(g: &Graph, partition: &VertexPartition) -> Result<CutProfile, QuotientError> {
    if partition.n() != g.n() {
        return Err(QuotientError::PartitionInvalid(format!(
            "partition covers {} vertices, graph has {}",
            partition.n(),
            g.n()
        )));
    }
    let t = partition.len();
    let labels = partition.labels();
    let mut r_pair = vec![vec![0; t]; t];
    for &(u, v) in g.edges() {
        let (bu, bv) = (labels[u], labels[v]);
        if bu != bv {
            r_pair[bu][bv] += 1;
            r_pair[bv][bu] += 1;
        }
    }
    let r = r_pair.iter().map(|row| row.iter().sum()).collect();
    Ok(CutProfile { partition: partition.clone(), r, r_pair })
}

/// Block-average matrix of `L(G)`: `m_ii = r_i / |V_i|`,
/// `m_ij = -e(V_i, V_j) / |V_i|`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix {
    entries: Vec<Vec<Rational>>,
    profile: CutProfile,
}

impl QuotientMatrix {
    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn profile(&self) -> &CutProfile {
        &self.profile
    }

    pub fn trace(&self) -> Rational {
        (0..self.order()).map(|i| self.entries[i][i]).sum()
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.entries.iter().map(|row| row.iter().copied().sum()).collect()
    }

    /// The similar symmetric matrix `S^{1/2} M S^{-1/2}` with
    /// `S = diag(|V_i|)`; off-diagonal `-e_ij / sqrt(|V_i| |V_j|)`.
    pub fn symmetrized(&self) -> SymmetricMatrix {
        let sizes: Vec<f64> = self.profile.partition.blocks().iter().map(|b| b.len() as f64).collect();
        let pairs = &self.profile.r_pair;
        SymmetricMatrix::from_fn(self.order(), |i, j| {
            if i == j {
                to_f64(&self.entries[i][i])
            } else {
                -(pairs[i][j] as f64) / (sizes[i] * sizes[j]).sqrt()
            }
        })
    }

    /// Eigenvalues, non-increasing.
    pub fn eigenvalues(&self, tol: f64) -> Result<Vec<f64>, QuotientError> {
        Ok(sym_eigenvalues(&self.symmetrized(), tol)?)
    }
}

pub fn quotient_laplacian(g: &Graph, partition: &VertexPartition) -> Result<QuotientMatrix, QuotientError> {
    let profile = cut_profile(g, partition)?;
    let sizes: Vec<i64> = partition.blocks().iter().map(|b| b.len() as i64).collect();
    let t = partition.len();
    let entries = (0..t)
        .map(|i| {
            (0..t)
                .map(|j| {
                    if i == j {
                        Rational::new(profile.r[i] as i64, sizes[i])
                    } else {
                        Rational::new(-(profile.r_pair[i][j] as i64), sizes[i])
                    }
                })
                .collect()
        })
        .collect();
    Ok(QuotientMatrix { entries, profile })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "index", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Interlacing {
    Pass,
    /// First violated position, 1-based.
    Fail(usize),
}

/// Checks `big_i >= small_i >= big_{n-m+i}` (each with slack `tol`) for
/// `i = 1..m`; both lists non-increasing.
pub fn check_interlacing(big: &[f64], small: &[f64], tol: f64) -> Result<Interlacing, QuotientError> {
    let (n, m) = (big.len(), small.len());
    if m >= n {
        return Err(QuotientError::LengthError { big: n, small: m });
    }
    for i in 0..m {
        if big[i] + tol < small[i] || small[i] + tol < big[n - m + i] {
            return Ok(Interlacing::Fail(i + 1));
        }
    }
    Ok(Interlacing::Pass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeylCase {
    /// `λ_{i+j-1}(A+B) <= λ_i(A) + λ_j(B)`
    Upper,
    /// `λ_i(A) + λ_j(B) <= λ_{i+j-n}(A+B)`
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeylViolation {
    pub i: usize,
    pub j: usize,
    pub case: WeylCase,
}

/// Every Weyl inequality for `A + B` that fails by more than `tol`
/// (indices 1-based). An empty list is a pass.
pub fn check_weyl(a: &SymmetricMatrix, b: &SymmetricMatrix, tol: f64) -> Result<Vec<WeylViolation>, QuotientError> {
    let sum = a.try_add(b)?;
    let n = a.order();
    let la = sym_eigenvalues(a, crate::spectra::DEFAULT_TOL)?;
    let lb = sym_eigenvalues(b, crate::spectra::DEFAULT_TOL)?;
    let ls = sym_eigenvalues(&sum, crate::spectra::DEFAULT_TOL)?;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let bound = la[i - 1] + lb[j - 1];
            if i + j - 1 <= n && ls[i + j - 2] > bound + tol {
                out.push(WeylViolation { i, j, case: WeylCase::Upper });
            }
            if i + j > n && bound > ls[i + j - n - 1] + tol {
                out.push(WeylViolation { i, j, case: WeylCase::Lower });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;
    use crate::spectra::{build_matrix, laplacian_profile, DEFAULT_TOL};
    use proptest::prelude::*;

    fn partition(blocks: &[&[usize]], n: usize) -> VertexPartition {
        VertexPartition::new(blocks.iter().map(|b| VertexSet::new(b.iter().copied())).collect(), n).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn k4_halves() {
        let q = quotient_laplacian(&Graph::complete(4), &partition(&[&[0, 1], &[2, 3]], 4)).unwrap();
        let r = |x: i64| Rational::from_integer(x);
        assert_eq!(q.entries(), &[vec![r(2), r(-2)], vec![r(-2), r(2)]]);
        assert!(close(&q.eigenvalues(DEFAULT_TOL).unwrap(), &[4.0, 0.0]));
        assert_eq!(q.trace(), r(4));
        assert!(q.row_sums().iter().all(|s| *s == r(0)));
    }

    #[test]
    fn c4_halves() {
        let q = quotient_laplacian(&Graph::cycle(4), &partition(&[&[0, 1], &[2, 3]], 4)).unwrap();
        let r = |x: i64| Rational::from_integer(x);
        assert_eq!(q.entries(), &[vec![r(1), r(-1)], vec![r(-1), r(1)]]);
        assert!(close(&q.eigenvalues(DEFAULT_TOL).unwrap(), &[2.0, 0.0]));
    }

    #[test]
    fn singleton_partition_is_the_laplacian() {
        let g = Graph::path(3);
        let q = quotient_laplacian(&g, &partition(&[&[0], &[1], &[2]], 3)).unwrap();
        let l = build_matrix(&g, 1.0, -1.0);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(to_f64(&q.entry(i, j)), l.get(i, j));
            }
        }
    }

    #[test]
    fn uneven_blocks_are_symmetrized() {
        // P3 with blocks {0} and {1,2}: M = [[1,-1],[-1/2,1/2]], spectrum {3/2, 0}
        let q = quotient_laplacian(&Graph::path(3), &partition(&[&[0], &[1, 2]], 3)).unwrap();
        assert_eq!(q.entry(1, 0), Rational::new(-1, 2));
        assert!(close(&q.eigenvalues(DEFAULT_TOL).unwrap(), &[1.5, 0.0]));
    }

    #[test]
    fn interlacing_examples() {
        assert_eq!(check_interlacing(&[4.0, 4.0, 4.0, 0.0], &[4.0, 0.0], 1e-8).unwrap(), Interlacing::Pass);
        assert_eq!(check_interlacing(&[3.0, 1.0, 0.0], &[2.9, 1.1], 1e-8).unwrap(), Interlacing::Fail(2));
        assert_eq!(check_interlacing(&[5.0, 5.0], &[5.0], 1e-8).unwrap(), Interlacing::Pass);
        assert_eq!(check_interlacing(&[1.0], &[1.0], 1e-8), Err(QuotientError::LengthError { big: 1, small: 1 }));
    }

    #[test]
    fn weyl_examples() {
        let g = Graph::complete(4);
        let d = SymmetricMatrix::diagonal(&[3.0; 4]);
        let neg_l = build_matrix(&g, 1.0, -1.0).scaled(-1.0);
        assert!(check_weyl(&d, &neg_l, 1e-8).unwrap().is_empty());
        let z = SymmetricMatrix::zeros(3);
        assert!(check_weyl(&z, &z, 1e-8).unwrap().is_empty());
        assert!(matches!(
            check_weyl(&SymmetricMatrix::zeros(2), &z, 1e-8),
            Err(QuotientError::Spectra(SpectraError::ShapeMismatch(..)))
        ));
    }

    #[test]
    fn partition_size_mismatch() {
        let p = partition(&[&[0, 1]], 2);
        assert!(matches!(quotient_laplacian(&Graph::path(3), &p), Err(QuotientError::PartitionInvalid(_))));
    }

    fn arb_graph_and_labels() -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (2usize..10).prop_flat_map(|n| {
            (proptest::collection::vec(any::<bool>(), n * (n - 1) / 2), proptest::collection::vec(0usize..n, n))
                .prop_map(move |(bits, labels)| {
                    let mut edges = Vec::new();
                    let mut idx = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if bits[idx] {
                                edges.push((u, v));
                            }
                            idx += 1;
                        }
                    }
                    (Graph::new(n, edges).unwrap(), labels)
                })
        })
    }

    proptest! {
        #[test]
        fn quotient_spectrum_interlaces((g, labels) in arb_graph_and_labels()) {
            let p = VertexPartition::from_labels(&labels);
            let q = quotient_laplacian(&g, &p).unwrap();
            let small = q.eigenvalues(DEFAULT_TOL).unwrap();
            let big = laplacian_profile(&g, DEFAULT_TOL).unwrap().eigenvalues;
            let trace = to_f64(&q.trace());
            prop_assert!((small.iter().sum::<f64>() - trace).abs() < 1e-8 * (1.0 + trace));
            let expected: Rational = q.profile().r.iter().zip(p.blocks())
                .map(|(&r, b)| Rational::new(r as i64, b.len() as i64)).sum();
            prop_assert_eq!(q.trace(), expected);
            prop_assert!(small.iter().all(|&x| x >= -1e-8));
            if p.len() < g.n() {
                prop_assert_eq!(check_interlacing(&big, &small, INTERLACING_TOL).unwrap(), Interlacing::Pass);
            }
        }

        #[test]
        fn weyl_holds_for_random_pairs(
            n in 1usize..7,
            xs in proptest::collection::vec(-5.0f64..5.0, 36),
            ys in proptest::collection::vec(-5.0f64..5.0, 36),
        ) {
            let a = SymmetricMatrix::from_fn(n, |i, j| xs[i * 6 + j]);
            let b = SymmetricMatrix::from_fn(n, |i, j| ys[i * 6 + j]);
            prop_assert!(check_weyl(&a, &b, 1e-8).unwrap().is_empty());
        }
    }
}
