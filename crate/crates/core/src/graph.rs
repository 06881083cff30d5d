//! Immutable simple graphs with bitset neighbourhood rows.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::bitset::{words_for, VertexSet};
use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..order`.
///
/// Rows are symmetric and irreflexive; `order >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    rows: Vec<VertexSet>,
}

impl Graph {
    pub fn from_edge_list(order: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut rows = vec![VertexSet::new(order); order];
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(Error::EndpointOutOfRange { u, v, order });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Graph { order, rows })
    }

    pub fn empty(order: usize) -> Result<Graph> {
        Graph::from_edge_list(order, &[])
    }

    pub fn complete(order: usize) -> Result<Graph> {
        Graph::empty(order).map(|g| g.complement())
    }

    pub fn path(order: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..order).map(|v| (v - 1, v)).collect();
        Graph::from_edge_list(order, &edges)
    }

    /// Cycle `0-1-...-(n-1)-0`; requires `order >= 3`.
    pub fn cycle(order: usize) -> Result<Graph> {
        if order < 3 {
            return Err(Error::ParameterOutOfRange { value: order, reason: "a cycle needs 3 vertices".into() });
        }
        let mut edges: Vec<_> = (1..order).map(|v| (v - 1, v)).collect();
        edges.push((order - 1, 0));
        Graph::from_edge_list(order, &edges)
    }

    /// Star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edge_list(leaves + 1, &edges)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub(crate) fn words(&self) -> usize {
        words_for(self.order)
    }

    /// Row of `v` as a single word; only meaningful when `order <= 64`.
    #[inline]
    pub(crate) fn row_mask(&self, v: usize) -> u64 {
        self.rows[v].words()[0]
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order {
            out.extend(self.rows[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let rows = (0..self.order)
            .map(|v| {
                let mut row = self.rows[v].complement();
                row.remove(v);
                row
            })
            .collect();
        Graph { order: self.order, rows }
    }

    /// `copies` disjoint copies of `self`; copy `i` occupies `[i*n, (i+1)*n)`.
    pub fn disjoint_copies(&self, copies: usize) -> Result<Graph> {
        if copies == 0 {
            return Err(Error::ZeroCopies);
        }
        let n = self.order;
        let base = self.edges();
        let edges: Vec<_> = (0..copies).flat_map(|i| base.iter().map(move |&(u, v)| (i * n + u, i * n + v))).collect();
        Graph::from_edge_list(n * copies, &edges)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.order;
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(u, v)| (u + n, v + n)));
        Graph::from_edge_list(n + other.order, &edges).expect("valid by construction")
    }

    /// Adds one vertex (index `order`) adjacent to every existing vertex.
    pub fn with_apex(&self) -> Graph {
        let n = self.order;
        let mut edges = self.edges();
        edges.extend((0..n).map(|v| (v, n)));
        Graph::from_edge_list(n + 1, &edges).expect("valid by construction")
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        let mut s = VertexSet::new(self.order);
        for v in (0..self.order).filter(|&v| self.rows[v].is_empty()) {
            s.insert(v);
        }
        s
    }

    pub fn universal_vertices(&self) -> VertexSet {
        let mut s = VertexSet::new(self.order);
        for v in (0..self.order).filter(|&v| self.degree(v) + 1 == self.order) {
            s.insert(v);
        }
        s
    }

    /// Breadth-first 2-colouring, component by component in index order.
    ///
    /// Each component's lowest-index vertex goes on the first side.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let n = self.order;
        let mut side: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for v in self.rows[u].iter() {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let mut left = VertexSet::new(n);
        let mut right = VertexSet::new(n);
        for (v, s) in side.into_iter().enumerate() {
            if s == Some(false) {
                left.insert(v);
            } else {
                right.insert(v);
            }
        }
        Some((left, right))
    }

    /// Induced subgraph on `keep`, renumbered in increasing index order.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        let kept = keep.to_vec();
        let mut new_index = vec![usize::MAX; self.order];
        for (i, &v) in kept.iter().enumerate() {
            new_index[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|(u, v)| (new_index[u], new_index[v]))
            .collect();
        Ok((Graph::from_edge_list(kept.len(), &edges)?, kept))
    }

    /// Drops isolated vertices. The returned map sends new indices to old ones.
    pub fn strip_isolated(&self) -> Result<(Graph, Vec<usize>)> {
        let keep = self.isolated_vertices().complement();
        if keep.is_empty() {
            return Err(Error::AllIsolated);
        }
        self.induced_subgraph(&keep)
    }

    pub fn remove_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>)> {
        let mut keep = VertexSet::full(self.order);
        keep.remove(v);
        self.induced_subgraph(&keep)
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> Graph {
        let edges: Vec<_> = self.edges().into_iter().filter(|&e| e != (u.min(v), u.max(v))).collect();
        Graph::from_edge_list(self.order, &edges).expect("valid by construction")
    }

    /// Serializes to the text edge-list format: `n m`, then `u v` per edge
    /// with `u < v` in lexicographic order.
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.order, edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Graph> {
        parse_annotated(text).map(|a| a.graph)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order, self.edges())
    }
}

/// A parsed graph file together with its `# key: value` comment lines.
#[derive(Debug, Clone)]
pub struct AnnotatedGraph {
    pub graph: Graph,
    pub annotations: Vec<(String, String)>,
}

impl AnnotatedGraph {
    pub fn annotation(&self, key: &str) -> Option<&str> {
        self.annotations.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// Parses the text format. Lines starting with `#` are comments; comments of
/// the form `# key: value` are kept as annotations.
pub fn parse_annotated(text: &str) -> Result<AnnotatedGraph> {
    let mut annotations = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((k, v)) = comment.split_once(':') {
                annotations.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let a = parse_int(fields.next(), line_no)?;
        let b = parse_int(fields.next(), line_no)?;
        if fields.next().is_some() {
            return Err(Error::Parse { line: line_no, message: "expected exactly two integers".into() });
        }
        match header {
            None => header = Some((a, b)),
            Some(_) => edges.push((a, b)),
        }
    }
    let (n, m) = header.ok_or(Error::Parse { line: 0, message: "missing `n m` header".into() })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header declares {m} edges but {} were listed", edges.len()),
        });
    }
    Ok(AnnotatedGraph { graph: Graph::from_edge_list(n, &edges)?, annotations })
}

fn parse_int(field: Option<&str>, line: usize) -> Result<usize> {
    let f = field.ok_or(Error::Parse { line, message: "expected two integers".into() })?;
    f.parse().map_err(|_| Error::Parse { line, message: format!("`{f}` is not a non-negative integer") })
}
