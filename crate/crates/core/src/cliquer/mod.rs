//! Cliques in `T(n)`: exact maximum-clique search, pairwise verification
//! without building the graph, the `a(k)` record scan, divisibility-sequence
//! cliques and the coloring that bounds the clique number.

mod coloring;
mod search;
mod sequence;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use thiserror::Error;

use crate::bigpoly::Trinomial;
use crate::par::Execution;
use crate::resolve::dyadically_resolve;
use crate::trigraph::{build_graph_with, GraphError, TrinomialGraph};

pub use coloring::{
    coloring_classes, construct_coloring, construct_coloring_with, Coloring, CongruenceClass,
};
pub use sequence::{
    divisibility_sequences, grow_divisibility_sequence, sequence_is_clique, DivisibilitySequence,
};

#[derive(Debug, Error)]
pub enum CliqueError {
    #[error("T(n) needs n >= 2, got {0}")]
    TooSmall(usize),
    #[error("vertex {vertex} is outside 1..{n}")]
    OutOfRange { n: usize, vertex: usize },
    #[error("vertex {0} is listed twice")]
    Duplicate(usize),
    #[error("search budget exhausted before the maximum was proven")]
    BudgetExhausted { best: Option<Clique> },
    #[error("sequence is empty")]
    EmptySequence,
    #[error("sequence members must be positive")]
    ZeroMember,
    #[error("{j} - {i} does not divide both terms, or the terms are not increasing")]
    SequenceInvariant { i: BigUint, j: BigUint },
    #[error("n = {n} must exceed the largest member {max}")]
    SequenceTooLarge { n: BigUint, max: BigUint },
    #[error("coloring of T({n}) leaves vertex {vertex} uncolored")]
    Uncolored { n: usize, vertex: usize },
    #[error("coloring of T({n}) uses {colors} colors, above the bound {bound}")]
    TooManyColors { n: usize, colors: usize, bound: usize },
    #[error("coloring of T({n}) puts the edge {{{i}, {j}}} inside one class")]
    ColoringFailure { n: usize, i: usize, j: usize },
    #[error("malformed record: {0}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A vertex set of `T(n)` with sorted, distinct members. Membership in the
/// graph is checked separately by [`verify_clique`] or [`TrinomialGraph::is_clique`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clique {
    n: usize,
    members: Vec<usize>,
}

impl Clique {
    /// Sorts `members` and checks range and distinctness.
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self, CliqueError> {
        if n < 2 {
            return Err(CliqueError::TooSmall(n));
        }
        members.sort_unstable();
        if let Some(&v) = members.iter().find(|&&v| v == 0 || v >= n) {
            return Err(CliqueError::OutOfRange { n, vertex: v });
        }
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(CliqueError::Duplicate(w[0]));
        }
        Ok(Clique { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// `n=<n> size=<s> members=<a,b,...>`
impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "n={} size={} members={}", self.n, self.size(), members.join(","))
    }
}

pub(crate) fn parse_members(list: &str) -> Result<Vec<usize>, CliqueError> {
    if list.is_empty() {
        return Ok(Vec::new());
    }
    list.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliqueError::Malformed(format!("bad member {t:?}")))
        })
        .collect()
}

impl FromStr for Clique {
    type Err = CliqueError;

    fn from_str(line: &str) -> Result<Self, CliqueError> {
        let bad = || CliqueError::Malformed(format!("expected `n=<n> size=<s> members=<list>`, got {line:?}"));
        let mut it = line.split_whitespace();
        let n = it.next().and_then(|t| t.strip_prefix("n=")).ok_or_else(bad)?;
        let size = it.next().and_then(|t| t.strip_prefix("size=")).ok_or_else(bad)?;
        let members = it.next().and_then(|t| t.strip_prefix("members=")).ok_or_else(bad)?;
        if it.next().is_some() {
            return Err(bad());
        }
        let n: usize = n.parse().map_err(|_| bad())?;
        let size: usize = size.parse().map_err(|_| bad())?;
        let c = Clique::new(n, parse_members(members)?)?;
        if c.size() != size {
            return Err(CliqueError::Malformed(format!(
                "size={size} but {} members listed",
                c.size()
            )));
        }
        Ok(c)
    }
}

/// True when every pair of `members` dyadically resolves at degree `n`.
/// Uses pairwise resultants only; `T(n)` is never built.
pub fn verify_clique(n: usize, members: &[usize]) -> Result<bool, CliqueError> {
    let c = Clique::new(n, members.to_vec())?;
    let m = c.members();
    for (a, &i) in m.iter().enumerate() {
        for &j in &m[a + 1..] {
            let t = |k| Trinomial::new(n, k).expect("members are in range");
            let v = dyadically_resolve(t(i), t(j)).expect("equal degrees, distinct exponents");
            if !v.resolves {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `2 floor(log2 n) - nu2(n)`, an upper bound on the clique number of `T(n)`.
pub fn upper_bound(n: usize) -> usize {
    assert!(n >= 1, "upper bound needs n >= 1");
    let floor_log = (usize::BITS - 1 - n.leading_zeros()) as usize;
    2 * floor_log - n.trailing_zeros() as usize
}

/// Clique number and every maximum clique, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxCliques {
    pub omega: usize,
    pub cliques: Vec<Clique>,
}

fn wrap(g: &TrinomialGraph, raw: Vec<Vec<usize>>) -> Vec<Clique> {
    raw.into_iter()
        .map(|m| Clique::new(g.n(), m).expect("search returns graph vertices"))
        .collect()
}

pub fn max_cliques(g: &TrinomialGraph) -> MaxCliques {
    max_cliques_with(g, None, Execution::default()).expect("no deadline")
}

/// All maximum cliques, giving up at `deadline`. On timeout the error carries
/// the largest clique seen, which need not be maximum.
pub fn max_cliques_with(
    g: &TrinomialGraph,
    deadline: Option<Instant>,
    exec: Execution,
) -> Result<MaxCliques, CliqueError> {
    let out = search::search(g, true, deadline, exec);
    let cliques = wrap(g, out.cliques);
    if !out.complete {
        return Err(CliqueError::BudgetExhausted {
            best: cliques.into_iter().next(),
        });
    }
    Ok(MaxCliques {
        omega: cliques.first().map_or(0, Clique::size),
        cliques,
    })
}

/// One maximum clique; cheaper than enumerating all of them.
pub fn maximum_clique(g: &TrinomialGraph, deadline: Option<Instant>, exec: Execution) -> Result<Clique, CliqueError> {
    let out = search::search(g, false, deadline, exec);
    let best = wrap(g, out.cliques).into_iter().next();
    match (out.complete, best) {
        (true, Some(c)) => Ok(c),
        (_, best) => Err(CliqueError::BudgetExhausted { best }),
    }
}

pub fn clique_number(g: &TrinomialGraph) -> usize {
    maximum_clique(g, None, Execution::default())
        .expect("no deadline")
        .size()
}

/// `a(k)` for one `k`: the least `n` found, with a witness clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordEntry {
    pub k: usize,
    pub first: Option<Clique>,
}

impl RecordEntry {
    pub fn n(&self) -> Option<usize> {
        self.first.as_ref().map(Clique::n)
    }
}

/// For `k = 2..=k_max`, the least `n <= n_ceiling` with a clique of size `k` in
/// `T(n)`, or `None` when there is none up to the ceiling.
pub fn a_of_k_scan(k_max: usize, n_ceiling: usize) -> Vec<RecordEntry> {
    a_of_k_scan_with(k_max, n_ceiling, Execution::default())
}

pub fn a_of_k_scan_with(k_max: usize, n_ceiling: usize, exec: Execution) -> Vec<RecordEntry> {
    let mut table: Vec<RecordEntry> = (2..=k_max).map(|k| RecordEntry { k, first: None }).collect();
    let mut reached = 1;
    for n in 2..=n_ceiling {
        if reached >= k_max {
            break;
        }
        let g = build_graph_with(n, exec).expect("n >= 2");
        let c = maximum_clique(&g, None, exec).expect("no deadline");
        for entry in table.iter_mut().filter(|e| e.k > reached && e.k <= c.size()) {
            entry.first = Some(Clique::new(n, c.members()[..entry.k].to_vec()).expect("subset of a clique"));
        }
        reached = reached.max(c.size());
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigraph::build_graph;

    /// Exhaustive clique enumeration over all vertex subsets.
    fn brute_force(g: &TrinomialGraph) -> (usize, Vec<Vec<usize>>) {
        let m = g.order();
        let mut best = 0;
        let mut all = Vec::new();
        for mask in 1u32..(1 << m) {
            let members: Vec<usize> = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            if members.len() < best || !g.is_clique(&members) {
                continue;
            }
            if members.len() > best {
                best = members.len();
                all.clear();
            }
            all.push(members);
        }
        all.sort();
        (best, all)
    }

    #[test]
    fn matches_brute_force_up_to_twenty() {
        for n in 2..=20 {
            let g = build_graph(n).unwrap();
            let (omega, all) = brute_force(&g);
            let got = max_cliques(&g);
            assert_eq!(got.omega, omega, "n = {n}");
            let members: Vec<Vec<usize>> = got.cliques.iter().map(|c| c.members().to_vec()).collect();
            assert_eq!(members, all, "n = {n}");
            assert_eq!(clique_number(&g), omega);
        }
    }

    #[test]
    fn small_clique_numbers() {
        assert_eq!(max_cliques(&build_graph(2).unwrap()).omega, 1);
        let t5 = max_cliques(&build_graph(5).unwrap());
        assert_eq!(t5.omega, 4);
        assert_eq!(t5.cliques, vec![Clique::new(5, vec![1, 2, 3, 4]).unwrap()]);
        assert_eq!(max_cliques(&build_graph(10).unwrap()).omega, 5);
    }

    #[test]
    fn sequential_search_agrees() {
        for n in [30usize, 41, 64] {
            let g = build_graph(n).unwrap();
            assert_eq!(
                max_cliques_with(&g, None, Execution::Sequential).unwrap(),
                max_cliques_with(&g, None, Execution::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn expired_deadline_reports_budget() {
        let g = build_graph(200).unwrap();
        let past = Instant::now();
        std::thread::sleep(std::time::Duration::from_millis(2));
        let r = max_cliques_with(&g, Some(past), Execution::Sequential);
        // tiny searches can finish before the first deadline probe
        if let Err(e) = r {
            assert!(matches!(e, CliqueError::BudgetExhausted { .. }));
        }
    }

    #[test]
    fn listed_cliques_verify() {
        assert!(verify_clique(19, &[12, 15, 16, 18]).unwrap());
        assert!(verify_clique(781, &[720, 760, 765, 768, 780]).unwrap());
        assert!(verify_clique(5, &[1, 2, 3, 4]).unwrap());
        assert!(!verify_clique(10, &[1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap());
        assert!(matches!(verify_clique(5, &[1, 5]), Err(CliqueError::OutOfRange { vertex: 5, .. })));
        assert!(matches!(verify_clique(5, &[2, 2]), Err(CliqueError::Duplicate(2))));
    }

    #[test]
    fn bound_values() {
        assert_eq!(upper_bound(1024), 10);
        assert_eq!(upper_bound(82), 11);
        assert_eq!(upper_bound(3), 2);
        assert_eq!(upper_bound(2), 1);
    }

    #[test]
    fn bound_holds_small() {
        for n in 2..=80 {
            assert!(clique_number(&build_graph(n).unwrap()) <= upper_bound(n), "n = {n}");
        }
    }

    #[test]
    fn record_lines() {
        let c = Clique::new(19, vec![18, 12, 16, 15]).unwrap();
        assert_eq!(c.to_string(), "n=19 size=4 members=12,15,16,18");
        assert_eq!(c.to_string().parse::<Clique>().unwrap(), c);
        assert!("n=19 size=3 members=12,15,16,18".parse::<Clique>().is_err());
        assert!("n=19 members=12".parse::<Clique>().is_err());
    }

    #[test]
    fn first_records() {
        let table = a_of_k_scan(6, 20);
        let ns: Vec<Option<usize>> = table.iter().map(RecordEntry::n).collect();
        assert_eq!(ns, vec![Some(3), Some(5), Some(5), Some(10), Some(11)]);
        for e in &table {
            let c = e.first.as_ref().unwrap();
            assert_eq!(c.size(), e.k);
            assert!(verify_clique(c.n(), c.members()).unwrap());
        }
        let short = a_of_k_scan(6, 9);
        assert_eq!(short[3].first, None);
    }
}
