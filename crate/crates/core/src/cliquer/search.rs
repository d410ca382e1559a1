//! Bron-Kerbosch over bit rows with pivoting, a degeneracy-ordered outer
//! loop and a shared size bound, so that only maximum cliques survive.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Instant;

use crate::par::{self, Execution};
use crate::trigraph::TrinomialGraph;

type Bits = Vec<u64>;

fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

fn and(a: &[u64], b: &[u64]) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            (rest != 0).then(|| {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                w * 64 + b
            })
        })
    })
}

fn set(bits: &mut [u64], v: usize) {
    bits[v / 64] |= 1 << (v % 64);
}

fn clear(bits: &mut [u64], v: usize) {
    bits[v / 64] &= !(1 << (v % 64));
}

/// Vertices by repeatedly removing one of minimum remaining degree.
pub(crate) fn degeneracy_order(g: &TrinomialGraph) -> Vec<usize> {
    let mut degree: Vec<usize> = (0..g.n()).map(|v| if v == 0 { 0 } else { g.degree(v) }).collect();
    let mut removed = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.order());
    for _ in g.vertices() {
        let v = g
            .vertices()
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        removed[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    order
}

struct Search<'a> {
    g: &'a TrinomialGraph,
    /// size of the largest clique seen by any branch
    best: &'a AtomicUsize,
    /// keep cliques that tie `best`, or only strictly larger ones
    keep_ties: bool,
    deadline: Option<Instant>,
    aborted: &'a AtomicBool,
    calls: usize,
}

impl Search<'_> {
    fn out_of_time(&mut self) -> bool {
        if self.aborted.load(Ordering::Relaxed) {
            return true;
        }
        self.calls += 1;
        if self.calls.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    fn hopeless(&self, have: usize, room: usize) -> bool {
        let best = self.best.load(Ordering::Relaxed);
        if self.keep_ties {
            have + room < best
        } else {
            have + room <= best
        }
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: Bits, mut x: Bits, found: &mut Vec<Vec<usize>>) {
        if self.out_of_time() {
            return;
        }
        let room = count(&p);
        if room == 0 {
            if count(&x) == 0 && !self.hopeless(r.len(), 0) {
                self.best.fetch_max(r.len(), Ordering::Relaxed);
                found.push(r.clone());
            }
            return;
        }
        if self.hopeless(r.len(), room) {
            return;
        }
        let pivot = ones(&p)
            .chain(ones(&x))
            .max_by_key(|&u| (and_count(&p, self.g.row(u)), std::cmp::Reverse(u)))
            .expect("P is nonempty");
        let candidates: Vec<usize> = ones(&p).filter(|&v| !self.g.has_edge(pivot, v)).collect();
        for v in candidates {
            if self.hopeless(r.len(), count(&p)) {
                break;
            }
            let row = self.g.row(v);
            r.push(v);
            self.expand(r, and(&p, row), and(&x, row), found);
            r.pop();
            clear(&mut p, v);
            set(&mut x, v);
        }
    }
}

/// Result of a bounded search. `complete` is false when the deadline fired;
/// the cliques are then only the largest ones seen so far.
pub(crate) struct Outcome {
    pub cliques: Vec<Vec<usize>>,
    pub complete: bool,
}

/// Maximum cliques of `g`; with `keep_ties` false only one per size level is
/// guaranteed to be reported.
pub(crate) fn search(g: &TrinomialGraph, keep_ties: bool, deadline: Option<Instant>, exec: Execution) -> Outcome {
    let order = degeneracy_order(g);
    let mut position = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let words = g.row(1).len();
    let best = AtomicUsize::new(0);
    let aborted = AtomicBool::new(false);

    // later vertices in the ordering carry the dense core; start there so the
    // bound tightens early
    let branches = par::map_range(exec, 0..order.len(), |i| {
        let v = order[order.len() - 1 - i];
        let mut later = vec![0u64; words];
        let mut earlier = vec![0u64; words];
        for u in g.neighbors(v) {
            if position[u] > position[v] {
                set(&mut later, u);
            } else {
                set(&mut earlier, u);
            }
        }
        let mut s = Search {
            g,
            best: &best,
            keep_ties,
            deadline,
            aborted: &aborted,
            calls: 0,
        };
        let mut found = Vec::new();
        s.expand(&mut vec![v], later, earlier, &mut found);
        found
    });

    let omega = best.load(Ordering::Relaxed);
    let mut cliques: Vec<Vec<usize>> = branches
        .into_iter()
        .flatten()
        .filter(|c| c.len() == omega)
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    cliques.sort();
    cliques.dedup();
    if !keep_ties {
        cliques.truncate(1);
    }
    Outcome {
        cliques,
        complete: !aborted.load(Ordering::Relaxed),
    }
}
