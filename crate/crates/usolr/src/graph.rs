//! Undirected simple graphs on integer vertices `0..n`, text parsing, and
//! the deterministic traversals every other module builds on.
//!
//! The text format is one header line `n m` followed by `m` lines `u v`,
//! with `#` starting a comment anywhere and blank lines ignored.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, ParseError};

/// Vertex id, always in `0..n` for its host graph.
pub type Vertex = usize;

/// Undirected simple graph.
///
/// Edges are normalized to `u < v` and kept sorted; adjacency lists are
/// sorted ascending, so every traversal visits neighbors in a fixed order
/// and all derived artifacts are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges (in either orientation), and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, Error> {
        let mut norm: Vec<(Vertex, Vertex)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange { v: a, n });
            }
            if b >= n {
                return Err(Error::VertexOutOfRange { v: b, n });
            }
            if a == b {
                return Err(Error::SelfLoop { v: a });
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge { u: w[0].0, v: w[0].1 });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: norm, adj })
    }

    /// Parses the `n m` / `u v` text format. Errors carry 1-based physical
    /// line numbers; `#` comments and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Graph, ParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let body = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            if tokens.len() != 2 {
                return Err(ParseError::Malformed {
                    line,
                    msg: format!("expected two integers, got {} tokens", tokens.len()),
                });
            }
            let a = parse_usize(tokens[0], line)?;
            let b = parse_usize(tokens[1], line)?;
            match header {
                None => {
                    header = Some((a, b));
                }
                Some((n, m)) => {
                    if edges.len() == m {
                        return Err(ParseError::Malformed {
                            line,
                            msg: format!("more than the declared {m} edges"),
                        });
                    }
                    if a == b {
                        return Err(ParseError::SelfLoop { line, v: a });
                    }
                    for &v in &[a, b] {
                        if v >= n {
                            return Err(ParseError::VertexOutOfRange { line, v, n });
                        }
                    }
                    let e = (a.min(b), a.max(b));
                    if edges.contains(&e) {
                        return Err(ParseError::DuplicateEdge { line, u: e.0, v: e.1 });
                    }
                    edges.push(e);
                }
            }
        }
        let (n, m) = header.ok_or(ParseError::Malformed {
            line: last_line.max(1),
            msg: "missing `n m` header line".to_string(),
        })?;
        if edges.len() != m {
            return Err(ParseError::Malformed {
                line: last_line + 1,
                msg: format!("expected {m} edges, found {}", edges.len()),
            });
        }
        match Graph::new(n, &edges) {
            Ok(g) => Ok(g),
            // Range, loop, and duplicate violations are caught per line above;
            // anything left is unreachable, but map it defensively.
            Err(e) => Err(ParseError::Malformed { line: last_line, msg: e.to_string() }),
        }
    }

    /// Renders the graph in the same text format `parse` accepts.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Normalized (`u < v`), sorted edge list.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// All vertex pairs `u < v` that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Copy of this graph with `extra_vertices` fresh vertices appended and
    /// `extra_edges` added on top of the existing edge set.
    pub fn with_additions(
        &self,
        extra_vertices: usize,
        extra_edges: &[(Vertex, Vertex)],
    ) -> Result<Graph, Error> {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(extra_edges);
        Graph::new(self.n + extra_vertices, &edges)
    }

    /// Connected components as sorted vertex lists, ordered by minimum id.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Deterministic breadth-first traversal from vertex 0 with neighbors
    /// expanded in ascending order. Errors if the graph is disconnected.
    pub fn bfs_tree(&self) -> Result<BfsTree, Error> {
        if self.n == 0 {
            return Ok(BfsTree {
                order: Vec::new(),
                parent: Vec::new(),
                rank: Vec::new(),
                depth: Vec::new(),
            });
        }
        let mut order = Vec::with_capacity(self.n);
        let mut parent = vec![None; self.n];
        let mut rank = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        let mut queue = VecDeque::from([0]);
        rank[0] = 0;
        order.push(0);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if rank[w] == usize::MAX {
                    rank[w] = order.len();
                    order.push(w);
                    parent[w] = Some(u);
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if order.len() != self.n {
            return Err(Error::Disconnected);
        }
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        Ok(BfsTree { order, parent, rank, depth })
    }

    /// Induced subgraph on `vertices` (must be distinct), relabeled to
    /// `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                edges.push((index[u], index[v]));
            }
        }
        Graph::new(vertices.len(), &edges).expect("induced subgraph of a valid graph is valid")
    }
}

fn parse_usize(token: &str, line: usize) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError::Malformed {
        line,
        msg: format!("`{token}` is not a non-negative integer"),
    })
}

/// Breadth-first tree rooted at vertex 0.
#[derive(Debug, Clone)]
pub struct BfsTree {
    /// Visit order; `order[i]` is the `(i+1)`-th vertex reached.
    pub order: Vec<Vertex>,
    /// Tree parent per vertex (`None` for the root).
    pub parent: Vec<Option<Vertex>>,
    /// Position of each vertex in `order`.
    pub rank: Vec<usize>,
    /// Tree depth per vertex.
    pub depth: Vec<usize>,
}

impl BfsTree {
    /// Unique tree path from `from` to `to`, endpoints included.
    pub fn path(&self, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let mut a = from;
        let mut b = to;
        let mut head = vec![a];
        let mut tail = vec![b];
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].expect("non-root vertex has a parent");
            head.push(a);
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].expect("non-root vertex has a parent");
            tail.push(b);
        }
        while a != b {
            a = self.parent[a].expect("non-root vertex has a parent");
            b = self.parent[b].expect("non-root vertex has a parent");
            head.push(a);
            tail.push(b);
        }
        tail.pop();
        tail.reverse();
        head.extend(tail);
        head
    }
}
