//! Extraction of a subgraph in which prescribed families of small sets are "full": every set
//! has degree `0` or at least its threshold.
//!
//! The sparse sequence is built greedily. Classes are scanned in order, each class in
//! lexicographic order. The first element whose current degree lies in `1..d_j` is recorded,
//! every edge through it is deleted, and the scan restarts. Each recorded element costs at
//! most `d_j - 1` edges and is recorded at most once, so the output keeps at least
//! `|H| - Σ_j (d_j - 1)|E_j|` edges. Elements already at degree `0` are never recorded.

use std::collections::HashSet;

use thiserror::Error;

use crate::hypergraph::{Graph, ThreeGraph, UniformHypergraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FullnessError {
    #[error("element {element:?} appears in classes {first} and {second}")]
    Overlap {
        element: Vec<u32>,
        first: usize,
        second: usize,
    },
    #[error("class {0} has threshold 0")]
    ZeroThreshold(usize),
    #[error("element {0:?} does not have the declared size {1}")]
    WrongSize(Vec<u32>, usize),
    #[error("subset size {size} must be below the edge size {rank}")]
    SizeNotBelowRank { size: usize, rank: usize },
    #[error("element {0:?} mentions a vertex outside the host")]
    OutOfRange(Vec<u32>),
}

/// Pairwise disjoint classes `E_j` of `size`-subsets, each with threshold `d_j >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullnessSpec {
    pub size: usize,
    pub classes: Vec<(Vec<Vec<u32>>, usize)>,
}

impl FullnessSpec {
    pub fn new(size: usize, classes: Vec<(Vec<Vec<u32>>, usize)>) -> Self {
        let classes = classes
            .into_iter()
            .map(|(mut elems, d)| {
                for e in &mut elems {
                    e.sort_unstable();
                }
                elems.sort();
                (elems, d)
            })
            .collect();
        Self { size, classes }
    }

    /// `Σ_j (d_j - 1) |E_j|`.
    pub fn deletion_budget(&self) -> usize {
        self.classes.iter().map(|(e, d)| d.saturating_sub(1) * e.len()).sum()
    }

    fn validate(&self, n: usize, rank: usize) -> Result<(), FullnessError> {
        if self.size >= rank {
            return Err(FullnessError::SizeNotBelowRank { size: self.size, rank });
        }
        let mut owner: std::collections::HashMap<&[u32], usize> = std::collections::HashMap::new();
        for (j, (elems, d)) in self.classes.iter().enumerate() {
            if *d == 0 {
                return Err(FullnessError::ZeroThreshold(j));
            }
            for e in elems {
                if e.len() != self.size || e.windows(2).any(|w| w[0] == w[1]) {
                    return Err(FullnessError::WrongSize(e.clone(), self.size));
                }
                if e.iter().any(|&v| v as usize >= n) {
                    return Err(FullnessError::OutOfRange(e.clone()));
                }
                if let Some(&first) = owner.get(e.as_slice()) {
                    return Err(FullnessError::Overlap {
                        element: e.clone(),
                        first,
                        second: j,
                    });
                }
                owner.insert(e, j);
            }
        }
        Ok(())
    }
}

/// Hosts the extraction can shrink: graphs and 3-graphs.
pub trait Shrinkable: UniformHypergraph + Sized {
    fn keep_edges(&self, keep: &[bool]) -> Self;
}

impl Shrinkable for Graph {
    fn keep_edges(&self, keep: &[bool]) -> Self {
        let edges = self
            .edges()
            .iter()
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|(&e, _)| e)
            .collect();
        Graph::from_sorted(self.n(), edges)
    }
}

impl Shrinkable for ThreeGraph {
    fn keep_edges(&self, keep: &[bool]) -> Self {
        let edges = self
            .edges()
            .iter()
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|(&e, _)| e)
            .collect();
        ThreeGraph::from_sorted(self.n(), edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction<H> {
    pub host: H,
    /// Recorded sparse elements as `(class index, element)`, in selection order.
    pub sequence: Vec<(usize, Vec<u32>)>,
}

fn contains(edge: &[u32], sub: &[u32]) -> bool {
    sub.iter().all(|v| edge.contains(v))
}

pub fn extract_full<H: Shrinkable>(h: &H, spec: &FullnessSpec) -> Result<Extraction<H>, FullnessError> {
    spec.validate(h.vertex_count(), h.rank())?;
    let edges = h.edge_list();
    // Edge indices through each element, per class.
    let through: Vec<Vec<Vec<usize>>> = spec
        .classes
        .iter()
        .map(|(elems, _)| {
            elems
                .iter()
                .map(|e| (0..edges.len()).filter(|&i| contains(&edges[i], e)).collect())
                .collect()
        })
        .collect();
    let mut alive = vec![true; edges.len()];
    let mut sequence = Vec::new();
    'scan: loop {
        for (j, (elems, d)) in spec.classes.iter().enumerate() {
            for (k, e) in elems.iter().enumerate() {
                let deg = through[j][k].iter().filter(|&&i| alive[i]).count();
                if deg > 0 && deg < *d {
                    for &i in &through[j][k] {
                        alive[i] = false;
                    }
                    sequence.push((j, e.clone()));
                    continue 'scan;
                }
            }
        }
        break;
    }
    Ok(Extraction {
        host: h.keep_edges(&alive),
        sequence,
    })
}

/// Elements of the spec whose degree in `h` is neither `0` nor at least the threshold.
pub fn fullness_violations<H: UniformHypergraph>(h: &H, spec: &FullnessSpec) -> Vec<(usize, Vec<u32>)> {
    let edges = h.edge_list();
    let mut out = Vec::new();
    for (j, (elems, d)) in spec.classes.iter().enumerate() {
        for e in elems {
            let deg = edges.iter().filter(|edge| contains(edge, e)).count();
            if deg > 0 && deg < *d {
                out.push((j, e.clone()));
            }
        }
    }
    out
}

/// `true` if `sub`'s edges are a subset of `sup`'s.
pub fn is_subhypergraph<H: UniformHypergraph>(sub: &H, sup: &H) -> bool {
    let all: HashSet<Vec<u32>> = sup.edge_list().into_iter().collect();
    sub.edge_list().iter().all(|e| all.contains(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pairs(n: u32) -> Vec<Vec<u32>> {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| vec![a, b])).collect()
    }

    #[test]
    fn threshold_one_is_vacuous() {
        let h = ThreeGraph::new(5, [[0, 1, 2], [1, 2, 3], [0, 3, 4]]).unwrap();
        let spec = FullnessSpec::new(2, vec![(all_pairs(5), 1)]);
        let out = extract_full(&h, &spec).unwrap();
        assert_eq!(out.host, h);
        assert!(out.sequence.is_empty());
    }

    #[test]
    fn single_triple_vanishes() {
        let h = ThreeGraph::new(3, [[0, 1, 2]]).unwrap();
        let spec = FullnessSpec::new(2, vec![(all_pairs(3), 2)]);
        let out = extract_full(&h, &spec).unwrap();
        assert_eq!(out.host.edge_count(), 0);
        assert_eq!(out.sequence, vec![(0, vec![0, 1])]);
        assert!(out.host.edge_count() + spec.deletion_budget() >= h.edge_count());
    }

    #[test]
    fn graph_vertices() {
        // path 0-1-2-3 with every vertex needing degree 2: the leaves cascade inwards
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let spec = FullnessSpec::new(1, vec![((0..4).map(|v| vec![v]).collect(), 2)]);
        let out = extract_full(&g, &spec).unwrap();
        assert_eq!(out.host.edge_count(), 0);
        assert_eq!(out.sequence, vec![(0, vec![0]), (0, vec![1]), (0, vec![2])]);
        assert!(fullness_violations(&out.host, &spec).is_empty());
    }

    #[test]
    fn invalid_specs() {
        let h = ThreeGraph::complete(4);
        let overlap = FullnessSpec::new(2, vec![(vec![vec![0, 1]], 2), (vec![vec![1, 0]], 3)]);
        assert!(matches!(extract_full(&h, &overlap), Err(FullnessError::Overlap { .. })));
        let zero = FullnessSpec::new(2, vec![(vec![vec![0, 1]], 0)]);
        assert_eq!(extract_full(&h, &zero).unwrap_err(), FullnessError::ZeroThreshold(0));
        let rank = FullnessSpec::new(3, vec![(vec![vec![0, 1, 2]], 2)]);
        assert!(matches!(
            extract_full(&h, &rank),
            Err(FullnessError::SizeNotBelowRank { .. })
        ));
        let range = FullnessSpec::new(2, vec![(vec![vec![0, 9]], 2)]);
        assert!(matches!(extract_full(&h, &range), Err(FullnessError::OutOfRange(_))));
    }

    #[test]
    fn idempotent_on_output() {
        let h = ThreeGraph::new(6, [[0, 1, 2], [0, 1, 3], [0, 1, 4], [2, 3, 5], [1, 4, 5]]).unwrap();
        let spec = FullnessSpec::new(2, vec![(all_pairs(6), 2)]);
        let once = extract_full(&h, &spec).unwrap();
        let twice = extract_full(&once.host, &spec).unwrap();
        assert_eq!(twice.host, once.host);
        assert!(twice.sequence.is_empty());
        assert!(is_subhypergraph(&once.host, &h));
    }
}
