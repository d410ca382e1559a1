//! The compatibility graph `T(n)`: vertices `1..n`, with `{i, j}` an edge when
//! `x^n - x^i + 1` and `x^n - x^j + 1` dyadically resolve.

mod io;
mod structure;

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

use crate::par::{self, Execution};
use crate::resolve::PairClassifier;

pub use io::{export_graph, load_graph, parse_graph, save_graph, write_graph, ExportFormat};
pub use structure::{
    gcd_scaling_check, structural_edge_check, StructuralFamily, StructuralViolation,
};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("T(n) needs n >= 2, got {0}")]
    TooSmall(usize),
    #[error("{small} does not divide {large}")]
    NotADivisor { small: usize, large: usize },
    #[error("malformed graph file: {0}")]
    Malformed(String),
    #[error("unsupported graph file version {0}")]
    Version(String),
    #[error("checksum mismatch: file says {expected:08x}, body hashes to {actual:08x}")]
    Checksum { expected: u32, actual: u32 },
    #[error("unknown export format {0:?}")]
    UnknownFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Symmetric bit-packed adjacency over vertices `1..n`. Row and column 0 are
/// allocated but never set, so vertex labels index the matrix directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrinomialGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    edge_count: usize,
}

impl TrinomialGraph {
    pub(crate) fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        TrinomialGraph {
            n,
            words,
            bits: vec![0; words * n],
            edge_count: 0,
        }
    }

    pub(crate) fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut g = TrinomialGraph::empty(n);
        for (i, j) in edges {
            g.insert(i, j);
        }
        g
    }

    fn insert(&mut self, i: usize, j: usize) {
        debug_assert!(i != j && i >= 1 && j >= 1 && i < self.n && j < self.n);
        if !self.has_edge(i, j) {
            self.bits[i * self.words + j / 64] |= 1 << (j % 64);
            self.bits[j * self.words + i / 64] |= 1 << (i % 64);
            self.edge_count += 1;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices, `n - 1`.
    pub fn order(&self) -> usize {
        self.n - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        1..self.n
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        v >= 1 && v < self.n
    }

    /// False for out-of-range labels and for `i == j`.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.contains_vertex(i)
            && self.contains_vertex(j)
            && self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Adjacency row of `v` as bit words (bit `u` set when `{u, v}` is an edge).
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertices().filter(move |&u| self.has_edge(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices()
            .flat_map(move |i| (i + 1..self.n).filter(move |&j| self.has_edge(i, j)).map(move |j| (i, j)))
    }

    /// True when every pair of `members` is an edge.
    pub fn is_clique(&self, members: &[usize]) -> bool {
        members.iter().enumerate().all(|(a, &i)| {
            members[a + 1..].iter().all(|&j| self.has_edge(i, j))
        })
    }

    /// True when no pair of `members` is an edge.
    pub fn is_independent(&self, members: &[usize]) -> bool {
        members.iter().enumerate().all(|(a, &i)| {
            members[a + 1..].iter().all(|&j| !self.has_edge(i, j))
        })
    }
}

/// Builds `T(n)` from exact pair verdicts.
pub fn build_graph(n: usize) -> Result<TrinomialGraph, GraphError> {
    build_graph_with(n, Execution::default())
}

pub fn build_graph_with(n: usize, exec: Execution) -> Result<TrinomialGraph, GraphError> {
    if n < 2 {
        return Err(GraphError::TooSmall(n));
    }
    let classifier = PairClassifier::new(n);
    // lower triangle: row k holds the j < k that resolve with k
    let rows = par::map_range(exec, 2..n, |k| {
        (1..k).filter(|&j| classifier.resolves(k, j)).collect::<Vec<_>>()
    });
    let edges = rows
        .into_iter()
        .zip(2..n)
        .flat_map(|(row, k)| row.into_iter().map(move |j| (j, k)));
    Ok(TrinomialGraph::from_edges(n, edges))
}

/// Counts of resolving and of coprime pairs for one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub pairs: u64,
    pub edge_count: u64,
    pub coprime_pairs: u64,
    pub edge_density: Ratio<u64>,
    pub coprime_density: Ratio<u64>,
}

fn density(count: u64, pairs: u64) -> Ratio<u64> {
    if pairs == 0 {
        Ratio::from_integer(0)
    } else {
        Ratio::new(count, pairs)
    }
}

/// Edge and coprime densities. Coprimality is counted from resultants, not
/// assumed.
pub fn graph_stats(g: &TrinomialGraph) -> GraphStats {
    graph_stats_with(g, Execution::default())
}

pub fn graph_stats_with(g: &TrinomialGraph, exec: Execution) -> GraphStats {
    let n = g.n();
    let m = (n - 1) as u64;
    let pairs = m * m.saturating_sub(1) / 2;
    let classifier = PairClassifier::new(n);
    let coprime_pairs: u64 = par::map_range(exec, 2..n, |k| {
        (1..k).filter(|&j| classifier.classify(k, j).coprime).count() as u64
    })
    .into_iter()
    .sum();
    let edge_count = g.edge_count() as u64;
    GraphStats {
        n,
        pairs,
        edge_count,
        coprime_pairs,
        edge_density: density(edge_count, pairs),
        coprime_density: density(coprime_pairs, pairs),
    }
}

/// Fixed-point decimal rendering of a ratio with `places` digits, rounded
/// half up, using integer arithmetic only.
pub fn ratio_decimal(r: &Ratio<u64>, places: u32) -> String {
    let scale = 10u128.pow(places);
    let num = *r.numer() as u128 * scale;
    let den = *r.denom() as u128;
    let (q, rem) = num.div_rem(&den);
    let scaled = if rem * 2 >= den { q + 1 } else { q };
    let (int, frac) = scaled.div_rem(&scale);
    if places == 0 {
        int.to_string()
    } else {
        format!("{int}.{frac:0width$}", width = places as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_graphs() {
        let g = build_graph(3).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
        let g = build_graph(2).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.edge_count(), 0);
        assert!(matches!(build_graph(1), Err(GraphError::TooSmall(1))));
    }

    #[test]
    fn five_contains_four_clique() {
        let g = build_graph(5).unwrap();
        assert!(g.is_clique(&[1, 2, 3, 4]));
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn symmetric_without_loops() {
        for n in [2usize, 17, 64, 65, 130] {
            let g = build_graph(n).unwrap();
            for i in 0..=n + 1 {
                assert!(!g.has_edge(i, i));
                for j in 0..=n + 1 {
                    assert_eq!(g.has_edge(i, j), g.has_edge(j, i));
                }
            }
            assert_eq!(g.edges().count(), g.edge_count());
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for n in [10usize, 57, 101] {
            assert_eq!(
                build_graph_with(n, Execution::Sequential).unwrap(),
                build_graph_with(n, Execution::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn edges_match_pairwise_verdicts() {
        use crate::bigpoly::Trinomial;
        use crate::resolve::dyadically_resolve;
        for n in [6usize, 13, 24] {
            let g = build_graph(n).unwrap();
            for i in 1..n {
                for j in 1..n {
                    let t = |k| Trinomial::new(n, k).unwrap();
                    assert_eq!(g.has_edge(i, j), dyadically_resolve(t(i), t(j)).unwrap().resolves);
                }
            }
        }
    }

    #[test]
    fn stats_edge_cases() {
        let s = graph_stats(&build_graph(3).unwrap());
        assert_eq!(s.edge_density, Ratio::from_integer(1));
        let s = graph_stats(&build_graph(2).unwrap());
        assert_eq!(s.pairs, 0);
        assert_eq!(s.edge_density, Ratio::from_integer(0));
        assert_eq!(s.coprime_density, Ratio::from_integer(0));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(ratio_decimal(&Ratio::new(1, 3), 4), "0.3333");
        assert_eq!(ratio_decimal(&Ratio::new(2, 3), 4), "0.6667");
        assert_eq!(ratio_decimal(&Ratio::from_integer(1), 2), "1.00");
        assert_eq!(ratio_decimal(&Ratio::new(1, 8), 0), "0");
    }
}
