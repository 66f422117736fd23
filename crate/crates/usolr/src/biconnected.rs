//! Biconnected components, cut vertices, the block-cut tree, and the
//! whole-graph structural classification used by the fast feasibility rules.
//!
//! The decomposition is an iterative Hopcroft–Tarjan depth-first search with
//! an explicit frame stack, so it handles graphs with hundreds of thousands
//! of vertices without recursion.

use crate::graph::{Graph, Vertex};

/// Shape of one biconnected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    /// A single edge (a bridge), kept distinct from cycles on purpose: a
    /// lone edge supports no rotation.
    SingleEdge,
    /// A chordless cycle of the given length.
    SimpleCycle(usize),
    /// A 2-connected component on at least 4 vertices that is not a cycle.
    NonCycle2Connected(usize),
}

/// One biconnected component: a maximal edge set without a cut vertex
/// separating it internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiconnectedComponent {
    /// Sorted vertex list.
    pub vertices: Vec<Vertex>,
    /// Normalized (`u < v`), sorted edge list.
    pub edges: Vec<(Vertex, Vertex)>,
    pub kind: ComponentKind,
}

/// Biconnected components plus the bipartite block-cut tree.
#[derive(Debug, Clone)]
pub struct BlockCutDecomposition {
    /// Components in a deterministic discovery order.
    pub components: Vec<BiconnectedComponent>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<Vertex>,
    /// Block-cut tree edges `(component index, cut vertex)`.
    pub tree_edges: Vec<(usize, Vertex)>,
}

impl BlockCutDecomposition {
    pub fn compute(g: &Graph) -> BlockCutDecomposition {
        let n = g.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0usize;
        let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
        let mut component_edges: Vec<Vec<(Vertex, Vertex)>> = Vec::new();

        struct Frame {
            v: Vertex,
            parent: Vertex,
            next: usize,
        }

        for root in 0..n {
            if disc[root] != usize::MAX || g.degree(root) == 0 {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0usize;
            let mut stack = vec![Frame { v: root, parent: usize::MAX, next: 0 }];
            while let Some(top) = stack.last_mut() {
                let v = top.v;
                let parent = top.parent;
                if top.next < g.degree(v) {
                    let w = g.neighbors(v)[top.next];
                    top.next += 1;
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push((v, w));
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push(Frame { v: w, parent: v, next: 0 });
                    } else if disc[w] < disc[v] {
                        // Back edge to an ancestor; the reverse view of a
                        // back edge (disc[w] > disc[v]) is skipped.
                        edge_stack.push((v, w));
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent == usize::MAX {
                        continue;
                    }
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        // The tree edge (parent, v) closes one component.
                        let mut comp = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            comp.push((a.min(b), a.max(b)));
                            if (a, b) == (parent, v) {
                                break;
                            }
                        }
                        component_edges.push(comp);
                        if parent != root {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
            debug_assert!(edge_stack.is_empty());
        }

        let mut components = Vec::with_capacity(component_edges.len());
        for mut edges in component_edges {
            edges.sort_unstable();
            let mut vertices: Vec<Vertex> =
                edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            let kind = if edges.len() == 1 {
                ComponentKind::SingleEdge
            } else if edges.len() == vertices.len() {
                // A 2-connected component with |E| = |V| is a chordless cycle.
                ComponentKind::SimpleCycle(vertices.len())
            } else {
                ComponentKind::NonCycle2Connected(vertices.len())
            };
            components.push(BiconnectedComponent { vertices, edges, kind });
        }

        let cut_vertices: Vec<Vertex> = (0..n).filter(|&v| is_cut[v]).collect();
        let mut tree_edges = Vec::new();
        for (ci, comp) in components.iter().enumerate() {
            for &v in &comp.vertices {
                if is_cut[v] {
                    tree_edges.push((ci, v));
                }
            }
        }
        BlockCutDecomposition { components, cut_vertices, tree_edges }
    }

    /// Bridges (cut edges), i.e. the single-edge components.
    pub fn bridges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<(Vertex, Vertex)> = self
            .components
            .iter()
            .filter(|c| c.kind == ComponentKind::SingleEdge)
            .map(|c| c.edges[0])
            .collect();
        out.sort_unstable();
        out
    }
}

/// Coarse shape of a whole graph, as used by the fast feasibility rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralClass {
    Disconnected,
    /// The whole graph is one 2-connected non-cycle component.
    TwoConnectedNonCycle { size: usize },
    /// The whole graph is a chordless cycle.
    SimpleCycleGraph { length: usize },
    /// Connected, no bridge, but at least one cut vertex.
    TwoEdgeConnectedNotTwoConnected { all_odd_cycles: bool },
    /// Connected with at least one bridge; carries the least such bridge.
    OneEdgeConnected { bridge: (Vertex, Vertex) },
}

/// Classifies a graph with at least two vertices into exactly one
/// [`StructuralClass`].
pub fn classify(g: &Graph) -> StructuralClass {
    assert!(g.n() >= 2, "classification requires at least two vertices");
    if !g.is_connected() {
        return StructuralClass::Disconnected;
    }
    let d = BlockCutDecomposition::compute(g);
    classify_decomposed(&d)
}

/// Same as [`classify`] for a connected graph whose decomposition is already
/// at hand.
pub fn classify_decomposed(d: &BlockCutDecomposition) -> StructuralClass {
    if d.components.len() == 1 {
        match d.components[0].kind {
            ComponentKind::NonCycle2Connected(size) => {
                return StructuralClass::TwoConnectedNonCycle { size };
            }
            ComponentKind::SimpleCycle(length) => {
                return StructuralClass::SimpleCycleGraph { length };
            }
            // A lone edge (K2) is a bridge, handled below.
            ComponentKind::SingleEdge => {}
        }
    }
    let bridges = d.bridges();
    if let Some(&bridge) = bridges.first() {
        return StructuralClass::OneEdgeConnected { bridge };
    }
    let all_odd = d
        .components
        .iter()
        .all(|c| matches!(c.kind, ComponentKind::SimpleCycle(l) if l % 2 == 1));
    StructuralClass::TwoEdgeConnectedNotTwoConnected { all_odd_cycles: all_odd }
}

/// Index of the first non-cycle 2-connected component with at least `p`
/// vertices, if any.
pub fn has_large_noncycle_two_connected(
    d: &BlockCutDecomposition,
    p: usize,
) -> Option<usize> {
    d.components.iter().position(
        |c| matches!(c.kind, ComponentKind::NonCycle2Connected(s) if s >= p),
    )
}

/// All connected labeled graphs on `n` vertices, in ascending order of the
/// edge-subset bitmask. Intended for exhaustive small-`n` cross-checks.
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 31, "exhaustive enumeration is for small n");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let edges: Vec<(Vertex, Vertex)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::new(n, &edges).expect("enumerated edge set is valid");
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}
