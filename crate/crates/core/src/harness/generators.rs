use crate::graph::Graph;
use crate::packing::{lemma41_gadget, Lemma41Gadget};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Resampling attempts for families that must come out connected or simple.
pub const MAX_RESAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("invalid {family} parameters: {reason}")]
    Invalid { family: &'static str, reason: String },
    #[error("no connected sample after {MAX_RESAMPLES} attempts")]
    NoConnectedSample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Gnp {
        n: usize,
        p: f64,
    },
    RandomRegular {
        n: usize,
        r: usize,
    },
    /// `blocks` copies of `K_q` in a row, consecutive blocks joined by
    /// `links` random edges.
    CliqueChain {
        blocks: usize,
        q: usize,
        links: usize,
    },
    /// A central `K_center` with `pendants` copies of `K_q`, each joined to
    /// the centre by `links` random edges.
    CliqueStar {
        center: usize,
        pendants: usize,
        q: usize,
        links: usize,
    },
    /// Five `K_{3k+4}` blocks wired so that the A–B, A–C, B–C links form a
    /// three-component cut meeting the refinement hypotheses.
    CliqueGadgetLemma41 {
        k: usize,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Complete { .. } => "complete",
            Family::Cycle { .. } => "cycle",
            Family::Path { .. } => "path",
            Family::Gnp { .. } => "gnp",
            Family::RandomRegular { .. } => "random_regular",
            Family::CliqueChain { .. } => "clique_chain",
            Family::CliqueStar { .. } => "clique_star",
            Family::CliqueGadgetLemma41 { .. } => "clique_gadget_lemma41",
        }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        let fail = |reason: &str| Err(SpecError::Invalid { family: self.name(), reason: reason.to_string() });
        match *self {
            Family::Complete { n } | Family::Path { n } if n < 1 => fail("n must be at least 1"),
            Family::Cycle { n } if n < 3 => fail("n must be at least 3"),
            Family::Gnp { n, p } if n < 1 || !(0.0..=1.0).contains(&p) => fail("need n >= 1 and 0 <= p <= 1"),
            Family::RandomRegular { n, r } if r >= n || (n * r) % 2 == 1 => fail("need r < n and n r even"),
            Family::CliqueChain { blocks, q, links } if blocks < 2 || q < 2 || links < 1 || links > q * q => {
                fail("need blocks >= 2, q >= 2 and 1 <= links <= q^2")
            }
            Family::CliqueStar { center, pendants, q, links }
                if center < 1 || pendants < 2 || q < 2 || links < 1 || links > center * q =>
            {
                fail("need center >= 1, pendants >= 2, q >= 2 and 1 <= links <= center q")
            }
            Family::CliqueGadgetLemma41 { k } if k < 1 => fail("k must be positive"),
            _ => Ok(()),
        }
    }

    /// Whether the family is guaranteed to be in `G_t`, and for which `t`.
    pub fn class_guarantee(&self) -> Option<usize> {
        match *self {
            Family::CliqueChain { blocks, links: 1, .. } if blocks >= 3 => Some(1),
            Family::CliqueStar { pendants, links: 1, .. } if pendants >= 3 => Some(2),
            Family::CliqueGadgetLemma41 { .. } => Some(2),
            _ => None,
        }
    }

    /// Draws one graph. Random families that can come out disconnected are
    /// resampled up to [`MAX_RESAMPLES`] times.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Result<Graph, SpecError> {
        self.sample_instance(rng).map(|(g, _)| g)
    }

    /// Like [`Family::sample`], also returning the gadget's designated cut
    /// and class witness for `clique_gadget_lemma41`.
    pub fn sample_instance(&self, rng: &mut ChaCha8Rng) -> Result<(Graph, Option<Lemma41Gadget>), SpecError> {
        self.validate()?;
        if let Family::CliqueGadgetLemma41 { k } = *self {
            let gadget = lemma41_gadget(k, rng.next_u64());
            return Ok((gadget.graph.clone(), Some(gadget)));
        }
        Ok((self.sample_plain(rng)?, None))
    }

    fn sample_plain(&self, rng: &mut ChaCha8Rng) -> Result<Graph, SpecError> {
        Ok(match *self {
            Family::Complete { n } => Graph::complete(n),
            Family::Cycle { n } => Graph::cycle(n),
            Family::Path { n } => Graph::path(n),
            Family::Gnp { n, p } => {
                return (0..MAX_RESAMPLES)
                    .map(|_| gnp(n, p, rng))
                    .find(Graph::is_connected)
                    .ok_or(SpecError::NoConnectedSample)
            }
            Family::RandomRegular { n, r } => {
                return (0..MAX_RESAMPLES)
                    .filter_map(|_| random_regular(n, r, rng))
                    .find(Graph::is_connected)
                    .ok_or(SpecError::NoConnectedSample)
            }
            Family::CliqueChain { blocks, q, links } => {
                let sizes = vec![q; blocks];
                let joins: Vec<(usize, usize)> = (1..blocks).map(|b| (b - 1, b)).collect();
                linked_cliques(&sizes, &joins, links, rng)
            }
            Family::CliqueStar { center, pendants, q, links } => {
                let mut sizes = vec![center];
                sizes.extend(std::iter::repeat_n(q, pendants));
                let joins: Vec<(usize, usize)> = (1..=pendants).map(|b| (0, b)).collect();
                linked_cliques(&sizes, &joins, links, rng)
            }
            Family::CliqueGadgetLemma41 { .. } => unreachable!("handled by sample_instance"),
        })
    }
}

/// One family instance together with its seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub seed: u64,
}

pub fn generate(spec: &FamilySpec) -> Result<Graph, SpecError> {
    spec.family.sample(&mut ChaCha8Rng::seed_from_u64(spec.seed))
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("pairs are distinct")
}

/// Pairing model; `None` if this attempt produced a loop or a repeated pair.
fn random_regular(n: usize, r: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, r)).collect();
    points.shuffle(rng);
    let mut edges: Vec<(usize, usize)> =
        points.chunks(2).map(|pair| (pair[0].min(pair[1]), pair[0].max(pair[1]))).collect();
    if edges.iter().any(|&(u, v)| u == v) {
        return None;
    }
    edges.sort_unstable();
    if edges.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Graph::new(n, edges).ok()
}

/// Disjoint cliques of the given sizes; each join gets `links` distinct
/// random edges between the two blocks.
fn linked_cliques(sizes: &[usize], joins: &[(usize, usize)], links: usize, rng: &mut ChaCha8Rng) -> Graph {
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let start = *acc;
            *acc += s;
            Some(start)
        })
        .collect();
    let block = |b: usize| offsets[b]..offsets[b] + sizes[b];
    let mut edges = Vec::new();
    for b in 0..sizes.len() {
        for u in block(b) {
            for v in u + 1..block(b).end {
                edges.push((u, v));
            }
        }
    }
    for &(x, y) in joins {
        let mut pairs: Vec<(usize, usize)> = block(x).flat_map(|u| block(y).map(move |v| (u, v))).collect();
        pairs.shuffle(rng);
        edges.extend(pairs.into_iter().take(links));
    }
    Graph::new(offsets.last().unwrap_or(&0) + sizes.last().unwrap_or(&0), edges).expect("blocks are disjoint")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{edge_connectivity, gt_membership};

    fn spec(family: Family, seed: u64) -> FamilySpec {
        FamilySpec { family, seed }
    }

    #[test]
    fn deterministic_families() {
        assert_eq!(generate(&spec(Family::Complete { n: 7 }, 0)).unwrap(), Graph::complete(7));
        assert_eq!(generate(&spec(Family::Cycle { n: 5 }, 3)).unwrap(), Graph::cycle(5));
    }

    #[test]
    fn gnp_is_reproducible() {
        let s = spec(Family::Gnp { n: 8, p: 0.5 }, 42);
        let g = generate(&s).unwrap();
        assert_eq!(g, generate(&s).unwrap());
        assert!(g.is_connected());
        assert_eq!(generate(&spec(Family::Gnp { n: 6, p: 0.0 }, 1)), Err(SpecError::NoConnectedSample));
    }

    #[test]
    fn clique_star_is_in_g2() {
        let g = generate(&spec(Family::CliqueStar { center: 5, pendants: 3, q: 5, links: 1 }, 9)).unwrap();
        assert_eq!(g.n(), 20);
        assert_eq!(edge_connectivity(&g).unwrap().0, 1);
        let w = gt_membership(&g, 2).unwrap().unwrap();
        w.validate(&g).unwrap();
    }

    #[test]
    fn clique_chain_is_in_g1() {
        let g = generate(&spec(Family::CliqueChain { blocks: 3, q: 4, links: 1 }, 5)).unwrap();
        assert_eq!(g.m(), 3 * 6 + 2);
        assert!(gt_membership(&g, 1).unwrap().is_some());
    }

    #[test]
    fn random_regular_degrees() {
        let g = generate(&spec(Family::RandomRegular { n: 10, r: 3 }, 11)).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn invalid_parameters() {
        assert!(generate(&spec(Family::CliqueStar { center: 5, pendants: 1, q: 5, links: 1 }, 0)).is_err());
        assert!(generate(&spec(Family::RandomRegular { n: 5, r: 3 }, 0)).is_err());
        assert!(generate(&spec(Family::Gnp { n: 5, p: 1.5 }, 0)).is_err());
    }

    #[test]
    fn spec_json_shape() {
        let s: FamilySpec =
            serde_json::from_str(r#"{"family":"clique_star","center":5,"pendants":3,"q":5,"links":1,"seed":4}"#)
                .unwrap();
        assert_eq!(s.family, Family::CliqueStar { center: 5, pendants: 3, q: 5, links: 1 });
        assert!(serde_json::from_str::<FamilySpec>(r#"{"family":"complete","n":4,"extra":1}"#).is_err());
    }
}
