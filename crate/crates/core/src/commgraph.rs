//! Commuting graphs of non-commutative semigroups.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::clique::{self, CliqueResult, Graph};
use crate::error::{Error, Result};
use crate::semigroup::SemigroupSet;
use crate::transform::{Element, Kind};

/// Vertices are the non-central elements; distinct vertices are adjacent
/// when they commute.
#[derive(Debug, Clone)]
pub struct CommGraph<E> {
    degree: usize,
    /// Index of each vertex in the source set.
    vertices: Vec<usize>,
    elements: Vec<E>,
    center: Vec<E>,
    graph: Graph,
}

impl<E: Element> CommGraph<E> {
    pub fn build(s: &SemigroupSet<E>) -> Result<Self> {
        if !s.is_closed() {
            return Err(Error::NotClosed);
        }
        if s.is_commutative() {
            return Err(Error::Commutative);
        }
        let center = s.center()?;
        let vertices: Vec<usize> = (0..s.len())
            .filter(|&i| !center.contains(&s.elements()[i]))
            .collect();
        let elements: Vec<E> = vertices.iter().map(|&i| s.elements()[i].clone()).collect();
        let graph = Graph::from_fn(elements.len(), |i, j| {
            elements[i].commutes_with(&elements[j])
        });
        Ok(Self {
            degree: s.degree(),
            vertices,
            elements,
            center: center.into_elements(),
            graph,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> Kind {
        E::KIND
    }

    pub fn vertex_count(&self) -> usize {
        self.elements.len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn source_indices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn center(&self) -> &[E] {
        &self.center
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn max_clique(&self) -> CliqueResult {
        clique::max_clique(&self.graph)
    }

    /// Shortest cycle length; `None` if the graph is a forest.
    pub fn girth(&self) -> Option<usize> {
        girth(&self.graph)
    }

    /// Graphviz rendering with 1-based image arrays as labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph commuting {\n");
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{e}\"];");
        }
        for u in 0..self.vertex_count() {
            for v in self.graph.neighbours(u).filter(|&v| v > u) {
                let _ = writeln!(out, "  v{u} -- v{v};");
            }
        }
        out.push_str("}\n");
        out
    }

    /// 8-byte little-endian header (degree: u16, kind: u16 with 0 = full and
    /// 1 = partial, vertex count: u32), then the packed adjacency rows.
    pub fn adjacency_dump(&self) -> Vec<u8> {
        let kind: u16 = match E::KIND {
            Kind::Full => 0,
            Kind::Partial => 1,
        };
        let mut out = Vec::with_capacity(8);
        out.extend_from_slice(&(self.degree as u16).to_le_bytes());
        out.extend_from_slice(&kind.to_le_bytes());
        out.extend_from_slice(&(self.vertex_count() as u32).to_le_bytes());
        out.extend(self.graph.packed_rows());
        out
    }

    /// Whether `path` (vertex indices) is a left path: distinct endpoints,
    /// consecutive vertices adjacent, no repeated edge, and
    /// `first·v = last·v` for every vertex `v` on it.
    pub fn is_left_path(&self, path: &[usize]) -> bool {
        let (Some(&a), Some(&b)) = (path.first(), path.last()) else {
            return false;
        };
        if a == b || path.iter().any(|&v| v >= self.vertex_count()) {
            return false;
        }
        let mut edges: Vec<(usize, usize)> = path
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect();
        if edges
            .iter()
            .any(|&(u, v)| u == v || !self.graph.has_edge(u, v))
        {
            return false;
        }
        let count = edges.len();
        edges.sort_unstable();
        edges.dedup();
        if edges.len() != count {
            return false;
        }
        let (x, y) = (&self.elements[a], &self.elements[b]);
        path.iter()
            .all(|&v| x.mul(&self.elements[v]) == y.mul(&self.elements[v]))
    }

    /// A shortest left path with at most `max_len` edges, if any. The
    /// knit degree is its length.
    pub fn knit_degree(&self, max_len: usize) -> Option<Vec<usize>> {
        if max_len == 0 {
            return None;
        }
        let n = self.vertex_count();
        let products: Vec<Vec<E>> = self
            .elements
            .iter()
            .map(|x| self.elements.iter().map(|v| x.mul(v)).collect())
            .collect();
        let agree = |a: usize, b: usize, v: usize| products[a][v] == products[b][v];

        // Length 1 is a direct check; longer paths need a search per pair.
        for a in 0..n {
            for b in self.graph.neighbours(a).filter(|&b| b > a) {
                if agree(a, b, a) && agree(a, b, b) {
                    return Some(vec![a, b]);
                }
            }
        }
        let mut best: Option<Vec<usize>> = None;
        for a in 0..n {
            for b in a + 1..n {
                if !(agree(a, b, a) && agree(a, b, b)) {
                    continue;
                }
                let limit = best.as_ref().map_or(max_len, |p| p.len() - 2);
                if limit < 2 {
                    continue;
                }
                if let Some(path) = self.bounded_path(a, b, limit, |v| agree(a, b, v)) {
                    best = Some(path);
                }
            }
        }
        best
    }

    /// Breadth-first shortest path from `a` to `b` through vertices passing
    /// `allowed`, with at most `limit` edges.
    fn bounded_path(
        &self,
        a: usize,
        b: usize,
        limit: usize,
        allowed: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut parent = vec![usize::MAX; n];
        let mut dist = vec![usize::MAX; n];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            if dist[u] == limit {
                continue;
            }
            for v in self.graph.neighbours(u) {
                if dist[v] != usize::MAX || !allowed(v) {
                    continue;
                }
                dist[v] = dist[u] + 1;
                parent[v] = u;
                if v == b {
                    let mut path = vec![b];
                    while *path.last().unwrap() != a {
                        path.push(parent[*path.last().unwrap()]);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(v);
            }
        }
        None
    }
}

/// Shortest cycle length by a breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.len();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for v in g.neighbours(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 3 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}

/// A maximum commutative subsemigroup: a maximum clique plus the center,
/// with closure and commutativity re-checked.
pub fn max_comm_subsemigroup<E: Element>(s: &SemigroupSet<E>) -> Result<SemigroupSet<E>> {
    let g = CommGraph::build(s)?;
    let clique = g.max_clique();
    let mut members: Vec<E> = clique
        .witness
        .iter()
        .map(|&v| g.elements[v].clone())
        .collect();
    members.extend(g.center.iter().cloned());
    let t = SemigroupSet::from_elements(s.degree(), members)?;
    if !t.is_closed() || !t.is_commutative() {
        return Err(Error::internal(format!(
            "maximum clique plus center is not a commutative subsemigroup: {:?}",
            t.elements()
        )));
    }
    Ok(t)
}
