//! Small named graphs used throughout tests, examples and the CLI.

use super::Graph;

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge_unchecked(u, v);
        }
    }
    g
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::empty(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge_unchecked(u, v);
        }
    }
    g
}

/// The cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let mut g = Graph::empty(n);
    for v in 0..n {
        g.add_edge_unchecked(v, (v + 1) % n);
    }
    g
}

/// `K_{1,leaves}` with leaves `0..leaves` and the centre last.
pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::empty(leaves + 1);
    for v in 0..leaves {
        g.add_edge_unchecked(v, leaves);
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.add_edge_unchecked(v - 1, v);
    }
    g
}
