use super::PackingError;
use crate::graph::{components, Graph, VertexPartition};
use crate::rational::{self, Rational};
use serde::Serialize;

/// Default order cap for set-partition enumeration (Bell(12) ≈ 4.2M).
pub const NU_F_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionalPackingResult {
    #[serde(serialize_with = "serialize_ratio")]
    pub value: Rational,
    pub minimizing_partition: VertexPartition,
    pub p: usize,
    /// Edges between different blocks of the partition.
    pub crossing: usize,
}

fn serialize_ratio<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn nu_f_exact(g: &Graph) -> Result<FractionalPackingResult, PackingError> {
    nu_f_exact_with_cap(g, NU_F_MAX_N)
}

/// Minimum of `crossing / (p - 1)` over all partitions with `p >= 2` blocks,
/// by complete enumeration of set partitions as restricted growth strings.
/// Ties go to the larger `p`, then to the lexicographically first string.
pub fn nu_f_exact_with_cap(g: &Graph, cap: usize) -> Result<FractionalPackingResult, PackingError> {
    let n = g.n();
    if n < 2 {
        return Err(PackingError::TooSmall(n));
    }
    let comps = components(g);
    if comps.len() > 1 {
        let p = comps.len();
        return Ok(FractionalPackingResult {
            value: Rational::from_integer(0),
            minimizing_partition: VertexPartition::new(comps, n).expect("components partition V"),
            p,
            crossing: 0,
        });
    }
    if n > cap {
        return Err(PackingError::TooLarge { n, cap });
    }
    let lower: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().filter(|&u| u < v).collect()).collect();
    let mut search = PartitionSearch { lower: &lower, labels: vec![0; n], best: None };
    search.labels[0] = 0;
    search.descend(1, 1, 0);
    let (crossing, p, labels) = search.best.expect("n >= 2 admits a 2-block partition");
    Ok(FractionalPackingResult {
        value: Rational::new(crossing as i64, p as i64 - 1),
        minimizing_partition: VertexPartition::from_labels(&labels),
        p,
        crossing,
    })
}

struct PartitionSearch<'a> {
    lower: &'a [Vec<usize>],
    labels: Vec<usize>,
    best: Option<(usize, usize, Vec<usize>)>,
}

impl PartitionSearch<'_> {
    fn descend(&mut self, v: usize, blocks: usize, crossing: usize) {
        let n = self.labels.len();
        if v == n {
            if blocks >= 2 {
                self.offer(crossing, blocks);
            }
            return;
        }
        for b in 0..=blocks {
            let added = self.lower[v].iter().filter(|&&u| self.labels[u] != b).count();
            self.labels[v] = b;
            self.descend(v + 1, blocks.max(b + 1), crossing + added);
        }
    }

    fn offer(&mut self, crossing: usize, p: usize) {
        let replace = match &self.best {
            None => true,
            Some((bc, bp, _)) => {
                // crossing/(p-1) vs bc/(bp-1)
                let lhs = crossing * (bp - 1);
                let rhs = bc * (p - 1);
                lhs < rhs || (lhs == rhs && p > *bp)
            }
        };
        if replace {
            self.best = Some((crossing, p, self.labels.clone()));
        }
    }
}

/// `τ(G) = ⌊ν_f(G)⌋`, disconnected graphs giving 0.
pub fn tau_partition_bruteforce(g: &Graph) -> Result<usize, PackingError> {
    let result = nu_f_exact(g)?;
    Ok(rational::floor(&result.value) as usize)
}
