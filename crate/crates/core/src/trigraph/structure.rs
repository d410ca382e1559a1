//! Edge families every `T(n)` must contain, and the gcd-scaling isomorphism.

use num_integer::Integer;

use super::{GraphError, TrinomialGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructuralFamily {
    /// `{k, 2k}`
    Cardioid,
    /// `{floor(n/2) + k + n mod 2, 2k + n mod 2}`
    Circle,
    /// `{k, k + 1}`
    Consecutive,
    /// `{i, j}` present but `{n - i, n - j}` missing
    Reflection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuralViolation {
    pub family: StructuralFamily,
    pub i: usize,
    pub j: usize,
}

/// Lists every required edge that is missing. Family endpoints outside
/// `1..n`, or coinciding endpoints, are skipped.
pub fn structural_edge_check(g: &TrinomialGraph) -> Vec<StructuralViolation> {
    let n = g.n();
    let odd = n % 2;
    let mut out = Vec::new();
    let mut require = |family, i: usize, j: usize| {
        if i != j && g.contains_vertex(i) && g.contains_vertex(j) && !g.has_edge(i, j) {
            out.push(StructuralViolation { family, i, j });
        }
    };
    for k in 1..=n / 2 {
        require(StructuralFamily::Cardioid, k, 2 * k);
        require(StructuralFamily::Circle, n / 2 + k + odd, 2 * k + odd);
    }
    for k in 1..n.saturating_sub(1) {
        require(StructuralFamily::Consecutive, k, k + 1);
    }
    for (i, j) in g.edges() {
        require(StructuralFamily::Reflection, n - i, n - j);
    }
    out
}

/// Checks `{k, j} in T(n) <=> {k/d, j/d} in T(n/d)` for every pair with
/// `gcd(n, k, j) = d`, where `d = n / small.n()`.
pub fn gcd_scaling_check(g: &TrinomialGraph, small: &TrinomialGraph) -> Result<bool, GraphError> {
    let (n, m) = (g.n(), small.n());
    if n % m != 0 {
        return Err(GraphError::NotADivisor { small: m, large: n });
    }
    let d = n / m;
    let ok = g.vertices().all(|k| {
        (k + 1..n)
            .filter(|&j| n.gcd(&k).gcd(&j) == d)
            .all(|j| g.has_edge(k, j) == small.has_edge(k / d, j / d))
    });
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigraph::build_graph;

    #[test]
    fn families_hold_for_small_graphs() {
        for n in 2..=60 {
            let g = build_graph(n).unwrap();
            assert_eq!(structural_edge_check(&g), vec![], "n = {n}");
        }
    }

    #[test]
    fn missing_edges_are_reported() {
        let g = build_graph(10).unwrap();
        let stripped = TrinomialGraph::from_edges(10, g.edges().filter(|&e| e != (3, 6)));
        let v = structural_edge_check(&stripped);
        assert!(v.contains(&StructuralViolation {
            family: StructuralFamily::Cardioid,
            i: 3,
            j: 6
        }));
        assert!(v.iter().any(|x| x.family == StructuralFamily::Reflection));
    }

    #[test]
    fn scaling_examples() {
        let t40 = build_graph(40).unwrap();
        let t20 = build_graph(20).unwrap();
        assert!(gcd_scaling_check(&t40, &t20).unwrap());
        assert!(gcd_scaling_check(&t40, &t40).unwrap());
        let t100 = build_graph(100).unwrap();
        let t25 = build_graph(25).unwrap();
        assert!(gcd_scaling_check(&t100, &t25).unwrap());
        assert!(matches!(
            gcd_scaling_check(&t40, &t25),
            Err(GraphError::NotADivisor { .. })
        ));
    }
}
