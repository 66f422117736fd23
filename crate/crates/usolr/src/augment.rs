//! Making a graph universally solvable by adding edges, or vertices and
//! edges.
//!
//! [`augment_constructive`] follows a case analysis over the structural
//! class of the input: a chord fixes a cycle, one bridging edge fixes an
//! all-triangle cactus, one chord into a long odd cycle fixes the rest of
//! the bridgeless cases, and graphs with bridges get a cycle threaded
//! through `p` chosen vertices. Every plan is verified by re-running the
//! solver on the augmented graph before it is returned.
//!
//! [`min_edge_augmentation_bf`] and [`min_vertex_edge_augmentation_bf`]
//! search budgets exhaustively with the oracle as judge; they exist to
//! certify lower bounds at small scale, not to be fast.
//!
//! [`generate`] builds the named graph families the planners and tests
//! exercise.

use itertools::Itertools;

use crate::biconnected::{classify, BlockCutDecomposition, ComponentKind, StructuralClass};
use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::oracle::{universally_solvable_bf, SearchCaps};
use crate::solver::{solve_optimized, Solvability};

/// A named graph family with deterministic vertex labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// Center 0 with `n - 1` leaves.
    Star(usize),
    Cycle(usize),
    Path(usize),
    /// Odd cycles chained left to right, consecutive cycles sharing one
    /// vertex.
    OddCactus(Vec<usize>),
    /// Center 0 with `2 * beta + 1` attached paths of `alpha + 1` vertices
    /// each.
    Z { alpha: usize, beta: usize },
    Complete(usize),
}

/// Builds the graph described by `spec`.
pub fn generate(spec: &FamilySpec) -> Result<Graph, Error> {
    match *spec {
        FamilySpec::Star(n) => {
            if n < 2 {
                return Err(Error::InvalidFamily {
                    msg: format!("star needs at least 2 vertices, got {n}"),
                });
            }
            let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
            Graph::new(n, &edges)
        }
        FamilySpec::Cycle(n) => {
            if n < 3 {
                return Err(Error::InvalidFamily {
                    msg: format!("cycle needs at least 3 vertices, got {n}"),
                });
            }
            let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
            Graph::new(n, &edges)
        }
        FamilySpec::Path(n) => {
            if n < 1 {
                return Err(Error::InvalidFamily {
                    msg: "path needs at least 1 vertex".to_owned(),
                });
            }
            let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            Graph::new(n, &edges)
        }
        FamilySpec::OddCactus(ref lengths) => {
            if lengths.is_empty() {
                return Err(Error::InvalidFamily {
                    msg: "odd cactus needs at least one cycle".to_owned(),
                });
            }
            if let Some(&l) = lengths.iter().find(|&&l| l < 3 || l % 2 == 0) {
                return Err(Error::InvalidFamily {
                    msg: format!("odd cactus cycle lengths must be odd and >= 3, got {l}"),
                });
            }
            let mut edges = Vec::new();
            let mut anchor = 0;
            let mut next = 1;
            for &l in lengths {
                // Cycle through the shared anchor and l - 1 fresh vertices.
                let mut ring = vec![anchor];
                ring.extend(next..next + l - 1);
                next += l - 1;
                for i in 0..l {
                    edges.push((ring[i], ring[(i + 1) % l]));
                }
                anchor = next - 1;
            }
            Graph::new(next, &edges)
        }
        FamilySpec::Z { alpha, beta } => {
            if alpha < 1 || beta < 1 {
                return Err(Error::InvalidFamily {
                    msg: format!("Z needs alpha >= 1 and beta >= 1, got ({alpha}, {beta})"),
                });
            }
            let mut edges = Vec::new();
            let mut next = 1;
            for _ in 0..2 * beta + 1 {
                edges.push((0, next));
                for v in next..next + alpha {
                    edges.push((v, v + 1));
                }
                next += alpha + 1;
            }
            Graph::new(next, &edges)
        }
        FamilySpec::Complete(n) => {
            if n < 1 {
                return Err(Error::InvalidFamily {
                    msg: "complete graph needs at least 1 vertex".to_owned(),
                });
            }
            let edges: Vec<_> = (0..n).array_combinations().map(|[u, v]| (u, v)).collect();
            Graph::new(n, &edges)
        }
    }
}

/// The constructive rule that produced an augmentation plan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AugmentationMethod {
    /// One chord added to a cycle graph.
    CycleChord,
    /// One edge bridging two triangles that share a cut vertex.
    TriangleCactusBridge,
    /// One chord added to an odd cycle of length at least five.
    OddCycleChord,
    /// A cycle threaded through `p` chosen vertices, plus a chord when the
    /// graph is fully occupied.
    PCycleConstruction,
    /// Brute-force search over edge (and vertex) budgets.
    ExhaustiveSearch,
}

/// Additions that make a graph universally solvable, plus the verification
/// verdict obtained by re-solving the augmented graph.
#[derive(Clone, Debug)]
pub struct AugmentationPlan {
    pub added_vertices: usize,
    /// New edges, possibly touching new vertices (labeled after the old).
    pub added_edges: Vec<(Vertex, Vertex)>,
    pub method: AugmentationMethod,
    pub verified: Solvability,
}

impl AugmentationPlan {
    /// Number of edges added.
    pub fn beta_used(&self) -> usize {
        self.added_edges.len()
    }

    /// The augmented graph this plan describes.
    pub fn apply(&self, g: &Graph) -> Result<Graph, Error> {
        g.with_additions(self.added_vertices, &self.added_edges)
    }
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Plans edge additions for a connected, not yet universally solvable
/// instance by structural case analysis, verifying the result.
///
/// Cycle graphs and bridgeless graphs need exactly one edge; graphs with
/// bridges get a cycle through `p` vertices costing at most `p - 2` new
/// edges. Instances with fewer than four robots fall back to exhaustive
/// search, which also certifies minimality there.
pub fn augment_constructive(
    g: &Graph,
    p: usize,
    caps: SearchCaps,
) -> Result<AugmentationPlan, Error> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if solve_optimized(g, p, caps)?.answer.is_solvable() {
        return Err(Error::AlreadySolvable { p });
    }
    if p < 4 {
        return exhaustive_edge_fallback(g, p, caps);
    }
    let (method, added) = match classify(g) {
        StructuralClass::SimpleCycleGraph { .. } => {
            // Any chord turns a cycle into one 2-connected non-cycle
            // block, solvable for every robot count.
            let chord = *g.non_edges().first().expect("a cycle on >= 4 vertices has a chord");
            (AugmentationMethod::CycleChord, vec![chord])
        }
        StructuralClass::TwoEdgeConnectedNotTwoConnected { all_odd_cycles } => {
            // A bridgeless graph is only unsolvable when fully occupied
            // with every block an odd cycle; one edge creating an even
            // cycle or a non-cycle block repairs it.
            debug_assert!(all_odd_cycles && p == g.n());
            let d = BlockCutDecomposition::compute(g);
            if d.components
                .iter()
                .all(|c| matches!(c.kind, ComponentKind::SimpleCycle(3)))
            {
                (AugmentationMethod::TriangleCactusBridge, vec![bridge_triangles(&d)])
            } else {
                (AugmentationMethod::OddCycleChord, vec![chord_long_odd_cycle(g, &d)])
            }
        }
        StructuralClass::OneEdgeConnected { .. } => {
            (AugmentationMethod::PCycleConstruction, thread_p_cycle(g, p))
        }
        // A lone 2-connected non-cycle block is already solvable, and
        // disconnected graphs were rejected above.
        StructuralClass::TwoConnectedNonCycle { .. } | StructuralClass::Disconnected => {
            unreachable!()
        }
    };
    debug_assert!(added.iter().all(|&(u, v)| u != v && !g.has_edge(u, v)));
    let plan = AugmentationPlan {
        added_vertices: 0,
        added_edges: added,
        method,
        verified: Solvability::UniversallySolvable,
    };
    let verdict = solve_optimized(&plan.apply(g)?, p, caps)?;
    if !verdict.answer.is_solvable() {
        return Err(Error::VerificationFailed {
            detail: format!("constructed plan {:?} did not verify", plan.added_edges),
        });
    }
    Ok(plan)
}

/// Least edge joining two triangles that share a cut vertex.
fn bridge_triangles(d: &BlockCutDecomposition) -> (Vertex, Vertex) {
    let v = *d.cut_vertices.first().expect("a cactus of two or more blocks has a cut vertex");
    let mut blocks: Vec<&Vec<Vertex>> = d
        .components
        .iter()
        .filter(|c| c.vertices.contains(&v))
        .map(|c| &c.vertices)
        .collect();
    blocks.sort();
    let (t1, t2) = (blocks[0], blocks[1]);
    t1.iter()
        .filter(|&&a| a != v)
        .flat_map(|&a| t2.iter().filter(|&&b| b != v).map(move |&b| ordered(a, b)))
        .min()
        .expect("triangles have two non-shared vertices each")
}

/// Least missing edge inside the least block that is an odd cycle of
/// length five or more.
fn chord_long_odd_cycle(g: &Graph, d: &BlockCutDecomposition) -> (Vertex, Vertex) {
    let block = d
        .components
        .iter()
        .filter(|c| matches!(c.kind, ComponentKind::SimpleCycle(l) if l >= 5))
        .map(|c| &c.vertices)
        .min()
        .expect("a non-triangle odd cactus has a long cycle");
    block
        .iter()
        .copied()
        .array_combinations()
        .map(|[u, v]| ordered(u, v))
        .find(|&(u, v)| !g.has_edge(u, v))
        .expect("a cycle of length >= 5 misses some pair")
}

/// Edges completing a cycle through `p` lexicographically chosen vertices:
/// the least vertex of degree two or more, its two least neighbors, and
/// the least remaining vertices. When the graph is fully occupied the
/// cycle also needs a chord; an original off-cycle edge provides one, or
/// the least missing pair is added.
fn thread_p_cycle(g: &Graph, p: usize) -> Vec<(Vertex, Vertex)> {
    let w = (0..g.n())
        .find(|&v| g.degree(v) >= 2)
        .expect("a connected graph on >= 3 vertices has a branch vertex");
    let x = g.neighbors(w)[0];
    let y = g.neighbors(w)[1];
    let mut cycle = vec![x, w, y];
    let rest: Vec<Vertex> = (0..g.n()).filter(|v| !cycle.contains(v)).take(p - 3).collect();
    cycle.extend(rest);
    let mut added: Vec<(Vertex, Vertex)> = Vec::new();
    for i in 0..cycle.len() {
        let e = ordered(cycle[i], cycle[(i + 1) % cycle.len()]);
        if !g.has_edge(e.0, e.1) {
            added.push(e);
        }
    }
    if p == g.n() {
        // The cycle spans everything, so any edge off the cycle ring is a
        // chord; rotations alone never suffice, hence one must exist.
        let ring: std::collections::BTreeSet<(Vertex, Vertex)> = (0..cycle.len())
            .map(|i| ordered(cycle[i], cycle[(i + 1) % cycle.len()]))
            .collect();
        let has_chord = g.edges().iter().any(|&e| !ring.contains(&e));
        if !has_chord {
            let chord = (0..g.n())
                .array_combinations()
                .map(|[u, v]| (u, v))
                .find(|&(u, v)| !g.has_edge(u, v) && !added.contains(&(u, v)))
                .expect("p >= 4 leaves room for a chord");
            added.push(chord);
        }
    } else {
        // Connectivity guarantees a vertex outside the cycle adjacent to
        // it; that vertex gives the spare robots room to wait.
        debug_assert!(
            (0..g.n())
                .filter(|v| !cycle.contains(v))
                .any(|u| g.neighbors(u).iter().any(|v| cycle.contains(v))),
            "no waiting vertex adjacent to the threaded cycle"
        );
    }
    added.sort_unstable();
    added
}

fn exhaustive_edge_fallback(
    g: &Graph,
    p: usize,
    caps: SearchCaps,
) -> Result<AugmentationPlan, Error> {
    let all = g.non_edges().len();
    match min_edge_augmentation_bf(g, p, all, caps)? {
        Some(plan) => Ok(plan),
        None => Err(Error::NoAugmentationFound),
    }
}

/// Smallest set of added edges (up to `beta_max`) making `g` universally
/// solvable for `p` robots, judged by the exhaustive oracle; edge subsets
/// are tried in ascending size then lexicographic order, so the witness is
/// deterministic.
pub fn min_edge_augmentation_bf(
    g: &Graph,
    p: usize,
    beta_max: usize,
    caps: SearchCaps,
) -> Result<Option<AugmentationPlan>, Error> {
    let non_edges = g.non_edges();
    for beta in 0..=beta_max.min(non_edges.len()) {
        for subset in non_edges.iter().copied().combinations(beta) {
            let aug = g.with_additions(0, &subset)?;
            if !aug.is_connected() {
                continue;
            }
            if universally_solvable_bf(&aug, p, caps)? {
                return Ok(Some(AugmentationPlan {
                    added_vertices: 0,
                    added_edges: subset,
                    method: AugmentationMethod::ExhaustiveSearch,
                    verified: Solvability::UniversallySolvable,
                }));
            }
        }
    }
    Ok(None)
}

/// Lexicographically least `(alpha, beta)` within the budgets such that
/// adding `alpha` vertices and `beta` edges makes `g` universally solvable
/// for the same `p` robots, with a witness plan.
///
/// New vertices are interchangeable, so edge sets that only differ by
/// relabeling them are tested once.
pub fn min_vertex_edge_augmentation_bf(
    g: &Graph,
    p: usize,
    alpha_max: usize,
    beta_max: usize,
    caps: SearchCaps,
) -> Result<Option<AugmentationPlan>, Error> {
    for alpha in 0..=alpha_max {
        let base = g.with_additions(alpha, &[])?;
        let non_edges = base.non_edges();
        for beta in 0..=beta_max.min(non_edges.len()) {
            for subset in non_edges.iter().copied().combinations(beta) {
                if !canonical_new_labels(&subset, g.n(), alpha) {
                    continue;
                }
                let aug = base.with_additions(0, &subset)?;
                if !aug.is_connected() {
                    continue;
                }
                if universally_solvable_bf(&aug, p, caps)? {
                    return Ok(Some(AugmentationPlan {
                        added_vertices: alpha,
                        added_edges: subset,
                        method: AugmentationMethod::ExhaustiveSearch,
                        verified: Solvability::UniversallySolvable,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `edges` is the least representative of its orbit under
/// relabeling the `alpha` new vertices `n..n + alpha`.
fn canonical_new_labels(edges: &[(Vertex, Vertex)], n: usize, alpha: usize) -> bool {
    if alpha < 2 {
        return true;
    }
    let relabel = |perm: &[usize], v: Vertex| if v >= n { n + perm[v - n] } else { v };
    for perm in (0..alpha).permutations(alpha).skip(1) {
        let mapped: Vec<(Vertex, Vertex)> = edges
            .iter()
            .map(|&(u, v)| ordered(relabel(&perm, u), relabel(&perm, v)))
            .sorted_unstable()
            .collect();
        if mapped.as_slice() < edges {
            return false;
        }
    }
    true
}
