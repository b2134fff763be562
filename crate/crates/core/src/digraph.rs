//! The transition digraph of `P(n,k)`.
//!
//! Vertices are the (k-1)-permutations of `[n]` in lexicographic order. There
//! is an arc `i1..i(k-1) -> i2..i(k-1)x` for every `x` not among
//! `i1..i(k-1)`, and that arc stands for the k-permutation `i1..i(k-1)x`. Arcs
//! are stored grouped by tail vertex and, within a tail, by increasing `x`,
//! so arc order is the lexicographic order of the arc labels.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;
use crate::perm::{self, count_k_permutations, KPermutation};

/// Hard cap on the number of arcs `build` will materialize.
pub const MAX_ARCS: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    /// The symbol appended when the arc is traversed.
    pub symbol: u32,
}

#[derive(Debug, Clone)]
pub struct TransitionDigraph {
    n: usize,
    k: usize,
    vertices: Vec<KPermutation>,
    arcs: Vec<Arc>,
    /// `arcs[out_start[v]..out_start[v + 1]]` leave `v`.
    out_start: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub out_degree: Vec<usize>,
    pub in_degree: Vec<usize>,
}

impl DegreeProfile {
    pub fn is_balanced(&self) -> bool {
        self.out_degree == self.in_degree
    }
}

impl TransitionDigraph {
    /// Builds the transition digraph of `P(n,k)` for `2 <= k < n`.
    pub fn build(n: usize, k: usize) -> Result<Self> {
        if k < 2 || k >= n {
            return Err(Error::Parameter(format!(
                "transition digraph needs 2 <= k < n, got n = {n}, k = {k}; \
                 universal cycles for k-permutations exist whenever k < n, \
                 and k = 1 is counted directly"
            )));
        }
        perm::Alphabet::new(n)?;
        let arc_count = count_k_permutations(n, k)
            .filter(|&a| a <= MAX_ARCS)
            .ok_or_else(|| {
                Error::Parameter(format!(
                    "P({n},{k}) has more than {MAX_ARCS} k-permutations"
                ))
            })?;
        let vertex_count = count_k_permutations(n, k - 1).expect("smaller than arc count");

        let vertices: Vec<KPermutation> = (0..vertex_count)
            .map(|r| perm::unrank(r, n, k - 1).expect("rank in range"))
            .collect();
        let mut arcs = Vec::with_capacity(arc_count as usize);
        let mut out_start = Vec::with_capacity(vertices.len() + 1);
        let mut next = Vec::with_capacity(k - 1);
        for (tail, v) in vertices.iter().enumerate() {
            out_start.push(arcs.len());
            let s = v.symbols();
            for x in (1..=n as u32).filter(|x| !s.contains(x)) {
                next.clear();
                next.extend_from_slice(&s[1..]);
                next.push(x);
                let head = perm::rank_unchecked(&next, n) as usize;
                arcs.push(Arc {
                    tail,
                    head,
                    symbol: x,
                });
            }
        }
        out_start.push(arcs.len());
        Ok(TransitionDigraph {
            n,
            k,
            vertices,
            arcs,
            out_start,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertices(&self) -> &[KPermutation] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &KPermutation {
        &self.vertices[v]
    }

    /// Vertex index of a (k-1)-permutation.
    pub fn vertex_index(&self, p: &KPermutation) -> Result<usize> {
        if p.len() != self.k - 1 {
            return Err(Error::InvalidPermutation(format!(
                "vertex labels have length {}, got {}",
                self.k - 1,
                p.len()
            )));
        }
        perm::rank(p, self.n).map(|r| r as usize)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, a: usize) -> Arc {
        self.arcs[a]
    }

    /// Index range of the arcs leaving `v`.
    pub fn out_arcs(&self, v: usize) -> std::ops::Range<usize> {
        self.out_start[v]..self.out_start[v + 1]
    }

    /// The k-permutation an arc stands for: its tail followed by its symbol.
    pub fn arc_label(&self, a: usize) -> KPermutation {
        let arc = self.arcs[a];
        let mut s = self.vertices[arc.tail].symbols().to_vec();
        s.push(arc.symbol);
        KPermutation::from_trusted(s)
    }

    /// Arc index of the arc labelled `p`. Because arcs are sorted by label,
    /// this is the lexicographic rank of `p` among k-permutations.
    pub fn arc_index(&self, p: &KPermutation) -> Result<usize> {
        if p.len() != self.k {
            return Err(Error::InvalidPermutation(format!(
                "arc labels have length {}, got {}",
                self.k,
                p.len()
            )));
        }
        perm::rank(p, self.n).map(|r| r as usize)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut in_degree = vec![0; self.vertex_count()];
        for a in &self.arcs {
            in_degree[a.head] += 1;
        }
        let out_degree = (0..self.vertex_count())
            .map(|v| self.out_arcs(v).len())
            .collect();
        DegreeProfile {
            out_degree,
            in_degree,
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.degree_profile().is_balanced()
    }

    pub fn is_strongly_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for a in &self.arcs {
            adj[a.tail].push(a.head);
        }
        strongly_connected(&adj)
    }

    pub fn adjacency_matrix(&self) -> ExactMatrix {
        let size = self.vertex_count();
        let mut m = ExactMatrix::zeros(size, size);
        for a in &self.arcs {
            m.set(a.tail, a.head, BigInt::from(1));
        }
        m
    }

    /// `L = T - A` with `T` the diagonal matrix of out-degrees.
    pub fn laplacian_matrix(&self) -> ExactMatrix {
        let size = self.vertex_count();
        let mut m = ExactMatrix::zeros(size, size);
        for v in 0..size {
            m.set(v, v, BigInt::from(self.out_arcs(v).len()));
        }
        for a in &self.arcs {
            let cur = m.get(a.tail, a.head) - 1;
            m.set(a.tail, a.head, cur);
        }
        m
    }

    /// One arc per line, `u -> v : label`, tails in lexicographic order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.arcs.iter().enumerate() {
            let _ = writeln!(
                out,
                "{} -> {} : {}",
                self.vertices[a.tail],
                self.vertices[a.head],
                self.arc_label(i)
            );
        }
        out
    }
}

/// Every vertex reachable from vertex 0 both forwards and backwards.
fn strongly_connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return true;
    }
    let mut rev = vec![Vec::new(); adj.len()];
    for (u, outs) in adj.iter().enumerate() {
        for &v in outs {
            rev[v].push(u);
        }
    }
    reaches_all(adj) && reaches_all(&rev)
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == adj.len()
}
