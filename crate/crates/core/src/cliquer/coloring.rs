//! A proper coloring of `T(n)` by congruence classes of 2-power moduli.
//!
//! With `n = 2^v * n1`, `n1` odd, the classes `k = 2^(i-1) (mod 2^i)` for
//! `i <= v` are independent. The remaining vertices are `2^v * j`, a copy of
//! `T(n1)`, and for odd `n1` every class mod `2^t` other than `0` and `n1` is
//! independent. Splitting those two leftover classes at each modulus `4, 8, ...`
//! yields two new colors per step until nothing is left.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use super::{upper_bound, CliqueError};
use crate::par::{self, Execution};
use crate::resolve::PairClassifier;
use crate::trigraph::TrinomialGraph;

/// The vertices `k` in `1..n` with `k = residue (mod 2^exponent)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongruenceClass {
    pub residue: usize,
    pub exponent: u32,
}

impl CongruenceClass {
    pub fn contains(&self, k: usize) -> bool {
        k % (1usize << self.exponent) == self.residue
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    n: usize,
    /// indexed by vertex; entry 0 unused
    color_of: Vec<usize>,
    num_colors: usize,
}

impl Coloring {
    /// Checks every vertex of `1..n` gets a color below `num_colors`.
    pub fn new(n: usize, color_of: Vec<usize>, num_colors: usize) -> Result<Self, CliqueError> {
        if n < 2 || color_of.len() != n {
            return Err(CliqueError::Malformed(format!(
                "coloring of T({n}) needs exactly {} vertices",
                n.saturating_sub(1)
            )));
        }
        if let Some(v) = (1..n).find(|&v| color_of[v] >= num_colors) {
            return Err(CliqueError::Malformed(format!("vertex {v} has no valid color")));
        }
        Ok(Coloring {
            n,
            color_of,
            num_colors,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.color_of[v]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_colors];
        for v in 1..self.n {
            out[self.color_of[v]].push(v);
        }
        out
    }

    /// First monochromatic edge of `g`, if any.
    pub fn conflict(&self, g: &TrinomialGraph) -> Option<(usize, usize)> {
        g.edges().find(|&(i, j)| self.color_of[i] == self.color_of[j])
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = format!("n={} colors={}\n", self.n, self.num_colors);
        for v in 1..self.n {
            let _ = writeln!(s, "{v} {}", self.color_of[v]);
        }
        f.write_str(&s)
    }
}

impl FromStr for Coloring {
    type Err = CliqueError;

    fn from_str(text: &str) -> Result<Self, CliqueError> {
        let bad = |m: &str| CliqueError::Malformed(m.to_string());
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty coloring file"))?;
        let mut it = header.split(' ');
        let n: usize = it
            .next()
            .and_then(|t| t.strip_prefix("n="))
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad("expected n=<n>"))?;
        let colors: usize = it
            .next()
            .and_then(|t| t.strip_prefix("colors="))
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad("expected colors=<c>"))?;
        if it.next().is_some() || n < 2 {
            return Err(bad("bad coloring header"));
        }
        let mut color_of = vec![usize::MAX; n];
        color_of[0] = 0;
        for line in lines {
            let (v, c) = line.split_once(' ').ok_or_else(|| bad("expected `vertex color`"))?;
            let (v, c): (usize, usize) = match (v.parse(), c.parse()) {
                (Ok(v), Ok(c)) => (v, c),
                _ => return Err(bad("expected `vertex color`")),
            };
            if v == 0 || v >= n || color_of[v] != usize::MAX {
                return Err(CliqueError::Malformed(format!("vertex {v} out of range or repeated")));
            }
            color_of[v] = c;
        }
        Coloring::new(n, color_of, colors)
    }
}

/// The classes used for `T(n)`, in color order. Empty classes are omitted.
pub fn coloring_classes(n: usize) -> Vec<CongruenceClass> {
    assert!(n >= 2, "T(n) needs n >= 2");
    let v = n.trailing_zeros();
    let n1 = n >> v;
    let mut classes: Vec<CongruenceClass> = (1..=v)
        .map(|i| CongruenceClass {
            residue: 1 << (i - 1),
            exponent: i,
        })
        .collect();

    // classes of the odd part j in 1..n1, lifted to k = 2^v * j
    let mut t = 2;
    while (1usize << (t - 1)) < n1 {
        let m = 1usize << t;
        let keep = [0, n1 % m];
        let pending = [0, n1 % (m / 2)];
        let mut fresh: Vec<usize> = (0..m)
            .filter(|r| !keep.contains(r))
            .filter(|&r| pending.contains(&(r % (m / 2))))
            .collect();
        fresh.sort_unstable();
        fresh.truncate(2);
        for r in fresh {
            if r < n1 {
                classes.push(CongruenceClass {
                    residue: r << v,
                    exponent: t + v,
                });
            }
        }
        t += 1;
    }
    classes
}

/// Colors `T(n)` with at most `2 floor(log2 n) - nu2(n)` colors and checks
/// every class is independent using exact pair verdicts.
pub fn construct_coloring(n: usize) -> Result<Coloring, CliqueError> {
    construct_coloring_with(n, Execution::default())
}

pub fn construct_coloring_with(n: usize, exec: Execution) -> Result<Coloring, CliqueError> {
    if n < 2 {
        return Err(CliqueError::TooSmall(n));
    }
    let classes = coloring_classes(n);
    let mut color_of = vec![usize::MAX; n];
    color_of[0] = 0;
    for (k, slot) in color_of.iter_mut().enumerate().skip(1) {
        *slot = classes
            .iter()
            .position(|cl| cl.contains(k))
            .ok_or(CliqueError::Uncolored { n, vertex: k })?;
    }
    if classes.len() > upper_bound(n) {
        return Err(CliqueError::TooManyColors {
            n,
            colors: classes.len(),
            bound: upper_bound(n),
        });
    }

    let classifier = PairClassifier::new(n);
    let conflicts = par::map_range(exec, 2..n, |k| {
        (1..k)
            .find(|&j| color_of[j] == color_of[k] && classifier.resolves(k, j))
            .map(|j| (j, k))
    });
    if let Some((i, j)) = conflicts.into_iter().flatten().next() {
        return Err(CliqueError::ColoringFailure { n, i, j });
    }
    Coloring::new(n, color_of, classes.len())
}
