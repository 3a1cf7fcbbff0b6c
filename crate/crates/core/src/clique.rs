//! Simple graphs as bitset adjacency matrices, and exact maximum cliques by
//! branch and bound with greedy-colouring bounds.

use rayon::prelude::*;

/// Undirected simple graph on `0..len`, one bit row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    len: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(len: usize) -> Self {
        let stride = len.div_ceil(64);
        Self {
            len,
            stride,
            bits: vec![0; len * stride],
        }
    }

    /// Adjacency from a symmetric predicate, evaluated once per unordered pair.
    pub fn from_fn<F>(len: usize, adjacent: F) -> Self
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        let mut g = Self::empty(len);
        let stride = g.stride;
        if stride == 0 {
            return g;
        }
        g.bits
            .par_chunks_mut(stride)
            .enumerate()
            .for_each(|(i, row)| {
                for j in 0..len {
                    if i != j && adjacent(i.min(j), i.max(j)) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
            });
        g
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        self.bits[u * self.stride + v / 64] |= 1 << (v % 64);
        self.bits[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.row(v))
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && self.has_edge(u, v))
        })
    }

    /// Rows packed least-significant bit first, `⌈len/8⌉` bytes each.
    pub fn packed_rows(&self) -> Vec<u8> {
        let row_bytes = self.len.div_ceil(8);
        let mut out = Vec::with_capacity(row_bytes * self.len);
        for v in 0..self.len {
            let row = self.row(v);
            out.extend((0..row_bytes).map(|b| (row[b / 8] >> (8 * (b % 8))) as u8));
        }
        out
    }

    /// Copy with vertex `order[i]` renamed to `i`.
    fn permuted(&self, order: &[usize]) -> Self {
        Self::from_fn(self.len, |i, j| self.has_edge(order[i], order[j]))
    }
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + bit)
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    pub size: usize,
    /// Sorted vertex indices.
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
}

/// Smallest-last order: repeatedly strip a minimum-degree vertex; the
/// result lists the last stripped vertex first.
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.len();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .unwrap();
        removed[v] = true;
        order.push(v);
        for u in g.neighbours(v) {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    order.reverse();
    order
}

struct Search<'a> {
    g: &'a Graph,
    /// Cliques smaller than this are pruned.
    target: usize,
    best: Vec<usize>,
    /// Collect every clique of size `target` instead of improving `best`.
    collect_all: bool,
    found: Vec<Vec<usize>>,
    nodes: u64,
}

impl Search<'_> {
    /// Greedy colouring of `candidates`; returns vertices with their colour,
    /// colours non-decreasing.
    fn colour(&self, candidates: &[u64]) -> Vec<(usize, usize)> {
        let mut uncoloured = candidates.to_vec();
        let mut out = Vec::new();
        let mut colour = 0;
        let mut class = vec![0u64; candidates.len()];
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            class.copy_from_slice(&uncoloured);
            while let Some(v) = first_one(&class) {
                clear(&mut class, v);
                clear(&mut uncoloured, v);
                for (c, n) in class.iter_mut().zip(self.g.row(v)) {
                    *c &= !n;
                }
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut candidates: Vec<u64>) {
        self.nodes += 1;
        let coloured = self.colour(&candidates);
        for &(v, colour) in coloured.iter().rev() {
            let bound = clique.len() + colour;
            if bound < self.target || (!self.collect_all && bound <= self.best.len()) {
                return;
            }
            clique.push(v);
            let next: Vec<u64> = candidates
                .iter()
                .zip(self.g.row(v))
                .map(|(c, n)| c & n)
                .collect();
            if next.iter().all(|&w| w == 0) {
                self.record(clique);
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            clear(&mut candidates, v);
        }
    }

    fn record(&mut self, clique: &[usize]) {
        if self.collect_all {
            if clique.len() == self.target {
                self.found.push(clique.to_vec());
            }
        } else if clique.len() > self.best.len() {
            self.best = clique.to_vec();
        }
    }
}

fn first_one(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

fn clear(words: &mut [u64], v: usize) {
    words[v / 64] &= !(1 << (v % 64));
}

fn all_vertices(len: usize) -> Vec<u64> {
    let mut words = vec![0u64; len.div_ceil(64)];
    for v in 0..len {
        words[v / 64] |= 1 << (v % 64);
    }
    words
}

/// An exact maximum clique. Deterministic: the same graph always yields the
/// same witness.
pub fn max_clique(g: &Graph) -> CliqueResult {
    if g.is_empty() {
        return CliqueResult {
            size: 0,
            witness: Vec::new(),
            nodes_explored: 0,
        };
    }
    let order = degeneracy_order(g);
    let h = g.permuted(&order);
    let mut search = Search {
        g: &h,
        target: 1,
        best: Vec::new(),
        collect_all: false,
        found: Vec::new(),
        nodes: 0,
    };
    search.expand(&mut Vec::new(), all_vertices(h.len()));
    let mut witness: Vec<usize> = search.best.iter().map(|&v| order[v]).collect();
    witness.sort_unstable();
    CliqueResult {
        size: witness.len(),
        witness,
        nodes_explored: search.nodes,
    }
}

/// Every clique of size `size`, each sorted, in lexicographic order.
/// With `size` equal to the clique number these are the maximum cliques.
pub fn cliques_of_size(g: &Graph, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let order = degeneracy_order(g);
    let h = g.permuted(&order);
    let mut search = Search {
        g: &h,
        target: size,
        best: Vec::new(),
        collect_all: true,
        found: Vec::new(),
        nodes: 0,
    };
    search.expand(&mut Vec::new(), all_vertices(h.len()));
    let mut out: Vec<Vec<usize>> = search
        .found
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|v| order[v]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    out
}

/// Clique number with all maximum cliques.
pub fn all_max_cliques(g: &Graph) -> (usize, Vec<Vec<usize>>) {
    let size = max_clique(g).size;
    (size, cliques_of_size(g, size))
}

/// Clique number by checking every vertex subset; for at most 20 vertices.
pub fn brute_force_clique_number(g: &Graph) -> usize {
    let n = g.len();
    assert!(n <= 20, "brute force limited to 20 vertices");
    let masks: Vec<u32> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| g.has_edge(v, u))
                .fold(0, |m, u| m | 1 << u)
        })
        .collect();
    (0u32..1 << n)
        .filter(|&s| {
            (0..n)
                .filter(|&v| s >> v & 1 == 1)
                .all(|v| s & !(1 << v) & !masks[v] == 0)
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}
