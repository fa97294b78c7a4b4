//! Small graphs on the vertex set `[n]`, `n <= 31`, stored as adjacency
//! bitmasks.

use std::fmt;

/// An undirected simple graph on `[n]`. Parallel edges collapse.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    // bit (v - 1) of adj[u - 1] is set iff {u, v} is an edge
    adj: Vec<u32>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 31, "SimpleGraph supports at most 31 vertices");
        SimpleGraph { n, adj: vec![0; n] }
    }

    /// Builds a graph from 1-based vertex pairs. Loops and out-of-range
    /// vertices panic.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut g = SimpleGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && (1..=self.n).contains(&u) && (1..=self.n).contains(&v));
        self.adj[u - 1] |= 1 << (v - 1);
        self.adj[v - 1] |= 1 << (u - 1);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u - 1] & (1 << (v - 1)) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Distinct edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// True iff no three vertices are pairwise adjacent.
    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    /// Some triangle `(a, b, c)` with `a < b < c`, if one exists.
    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        for (u, v) in self.edges() {
            let common = self.adj[u - 1] & self.adj[v - 1] & !((1u32 << v) - 1);
            if common != 0 {
                return Some((u, v, common.trailing_zeros() as usize + 1));
            }
        }
        None
    }

    /// If the graph is complete bipartite with sides of sizes `floor(n/2)` and
    /// `ceil(n/2)`, returns the two sides. The side of size `floor(n/2)` comes
    /// first; when both sides have equal size the one containing vertex 1
    /// comes first.
    pub fn balanced_bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.n;
        if n < 2 {
            return None;
        }
        let all: u32 = (1u32 << n) - 1;
        let other = self.adj[0];
        let own = all & !other;
        let (a, b) = (own.count_ones() as usize, other.count_ones() as usize);
        if a.min(b) != n / 2 || a.max(b) != n - n / 2 {
            return None;
        }
        for v in 1..=n {
            let bit = 1u32 << (v - 1);
            let expected = if own & bit != 0 { other } else { own };
            if self.adj[v - 1] != expected {
                return None;
            }
        }
        let own_side = mask_to_vec(own);
        let other_side = mask_to_vec(other);
        if b < a {
            Some((other_side, own_side))
        } else {
            Some((own_side, other_side))
        }
    }
}

fn mask_to_vec(mask: u32) -> Vec<usize> {
    (0..32)
        .filter(|k| mask & (1 << k) != 0)
        .map(|k| k + 1)
        .collect()
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// A directed graph on `[n]` given by its arc list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Self {
        assert!(arcs
            .iter()
            .all(|&(u, v)| u != v && (1..=n).contains(&u) && (1..=n).contains(&v)));
        arcs.sort_unstable();
        arcs.dedup();
        Digraph { n, arcs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs in lexicographic order, without repeats.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn reversed(&self) -> Digraph {
        Digraph::new(self.n, self.arcs.iter().map(|&(u, v)| (v, u)).collect())
    }

    /// True iff some edge carries both orientations.
    pub fn has_doubly_oriented_edge(&self) -> bool {
        self.arcs
            .iter()
            .any(|&(u, v)| self.arcs.binary_search(&(v, u)).is_ok())
    }

    /// Kahn's algorithm: acyclic iff every vertex can be peeled off at
    /// in-degree zero.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n + 1];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.arcs {
            indeg[v] += 1;
            out[u].push(v);
        }
        let mut ready: Vec<usize> = (1..=self.n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = ready.pop() {
            order.push(u);
            for &v in &out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(v);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn underlying(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, self.arcs.iter().copied())
    }
}
