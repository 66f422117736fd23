//! Robot configurations, permutations acting on them, validated moves, and
//! the successor relation that drives every search.
//!
//! A configuration of `p` robots is an injective assignment of robots
//! `1..=p` to vertices; internally robots are indexed `0..p`. Composition
//! with a permutation renames robots without touching vertices:
//! `(s ∘ pi)(i) = s(pi(i))`.
//!
//! Moves come in three shapes: a path move along a simple path whose last
//! vertex is empty, a rotation of a fully occupied simple cycle, and the
//! do-nothing dummy move. [`apply_move`] enforces the maximal-push form of a
//! path move (no interior holes); [`successors`] normalizes further to
//! single-step pushes plus full-cycle rotations, which reaches exactly the
//! same configurations. [`unrestricted_successors`] keeps interior holes and
//! arbitrary path lengths so tests can cross-check that claim.

use std::collections::BTreeSet;

use crate::error::{Error, MoveErrorKind, ParseError};
use crate::graph::{Graph, Vertex};

/// Injective assignment of robots to vertices; entry `i` is the vertex of
/// robot `i + 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Configuration {
    assignment: Vec<Vertex>,
}

impl Configuration {
    pub fn new(assignment: Vec<Vertex>) -> Result<Configuration, Error> {
        let mut sorted = assignment.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex { v: w[0] });
        }
        Ok(Configuration { assignment })
    }

    /// Parses a single line of `p` whitespace-separated vertex ids, the
    /// `i`-th being robot `i`'s vertex.
    pub fn parse(line: &str) -> Result<Configuration, ParseError> {
        let body = line.split('#').next().unwrap_or("");
        let mut assignment = Vec::new();
        for token in body.split_whitespace() {
            let v: usize = token.parse().map_err(|_| ParseError::Malformed {
                line: 1,
                msg: format!("`{token}` is not a vertex id"),
            })?;
            if assignment.contains(&v) {
                return Err(ParseError::DuplicateVertex { line: 1, v });
            }
            assignment.push(v);
        }
        Ok(Configuration { assignment })
    }

    pub fn to_line(&self) -> String {
        self.assignment
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Number of robots.
    pub fn p(&self) -> usize {
        self.assignment.len()
    }

    /// Vertex of robot `i + 1` (0-based robot index).
    pub fn vertex_of(&self, robot: usize) -> Vertex {
        self.assignment[robot]
    }

    pub fn assignment(&self) -> &[Vertex] {
        &self.assignment
    }

    /// Occupied vertices in ascending order.
    pub fn occupied(&self) -> Vec<Vertex> {
        let mut v = self.assignment.clone();
        v.sort_unstable();
        v
    }

    /// Per-vertex robot index, `None` on empty vertices.
    pub fn occupancy(&self, n: usize) -> Vec<Option<usize>> {
        let mut occ = vec![None; n];
        for (i, &v) in self.assignment.iter().enumerate() {
            occ[v] = Some(i);
        }
        occ
    }

    /// Checks every entry is a vertex of `g`.
    pub fn validate_on(&self, g: &Graph) -> Result<(), Error> {
        match self.assignment.iter().find(|&&v| v >= g.n()) {
            Some(&v) => Err(Error::VertexOutOfRange { v, n: g.n() }),
            None => Ok(()),
        }
    }

    /// `self ∘ pi`: robot `i` moves to where robot `pi(i)` was.
    pub fn compose(&self, pi: &Permutation) -> Result<Configuration, Error> {
        if pi.p() != self.p() {
            return Err(Error::SizeMismatch { expected: self.p(), got: pi.p() });
        }
        Ok(Configuration {
            assignment: pi.map.iter().map(|&j| self.assignment[j]).collect(),
        })
    }
}

impl std::fmt::Display for Configuration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Permutation of robot indices `0..p` (robot ids `1..=p` externally).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    map: Vec<usize>,
}

/// Parity of a permutation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Permutation, Error> {
        let mut seen = vec![false; map.len()];
        for &j in &map {
            if j >= map.len() || seen[j] {
                return Err(Error::NotAPermutation);
            }
            seen[j] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(p: usize) -> Permutation {
        Permutation { map: (0..p).collect() }
    }

    /// Swap of robots `t` and `t + 1` (1-based), identity elsewhere.
    pub fn adjacent_transposition(p: usize, t: usize) -> Result<Permutation, Error> {
        if t == 0 || t >= p {
            return Err(Error::RobotCountOutOfRange { p: t, n: p });
        }
        let mut map: Vec<usize> = (0..p).collect();
        map.swap(t - 1, t);
        Ok(Permutation { map })
    }

    pub fn p(&self) -> usize {
        self.map.len()
    }

    /// Image of 0-based robot index `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, Error> {
        if self.p() != other.p() {
            return Err(Error::SizeMismatch { expected: self.p(), got: other.p() });
        }
        Ok(Permutation { map: other.map.iter().map(|&j| self.map[j]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { map: inv }
    }

    /// Parity via cycle decomposition.
    pub fn parity(&self) -> Parity {
        let mut seen = vec![false; self.map.len()];
        let mut transpositions = 0;
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.map[i];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A single valid move.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Move {
    /// Simple path `u_0..u_k`: `u_k` empty, every earlier vertex occupied,
    /// each robot advances one step toward `u_k`.
    Path(Vec<Vertex>),
    /// Fully occupied simple cycle `c_0..c_{k-1}`: robot on `c_j` advances
    /// to `c_{j+1 mod k}`.
    Rotation(Vec<Vertex>),
    /// No-op.
    Dummy,
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |vs: &[Vertex]| {
            vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        };
        match self {
            Move::Path(p) => write!(f, "path {}", join(p)),
            Move::Rotation(c) => write!(f, "rotate {}", join(c)),
            Move::Dummy => f.write_str("dummy"),
        }
    }
}

fn invalid(kind: MoveErrorKind) -> Error {
    Error::InvalidMove { kind }
}

fn check_simple_sequence(g: &Graph, seq: &[Vertex], kind: MoveErrorKind) -> Result<(), Error> {
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.last().is_some_and(|&v| v >= g.n()) {
        return Err(invalid(kind));
    }
    if seq.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return Err(invalid(kind));
    }
    Ok(())
}

/// Applies one move, validating it against the graph and the occupancy of
/// `s`.
pub fn apply_move(g: &Graph, s: &Configuration, m: &Move) -> Result<Configuration, Error> {
    s.validate_on(g)?;
    let occ = s.occupancy(g.n());
    let mut next = s.assignment.clone();
    match m {
        Move::Dummy => {}
        Move::Path(seq) => {
            if seq.len() < 2 {
                return Err(invalid(MoveErrorKind::NotAPath));
            }
            check_simple_sequence(g, seq, MoveErrorKind::NotAPath)?;
            let last = *seq.last().expect("non-empty path");
            if occ[last].is_some() {
                return Err(invalid(MoveErrorKind::TargetOccupied));
            }
            if occ[seq[0]].is_none() {
                return Err(invalid(MoveErrorKind::SourceEmpty));
            }
            if seq[1..seq.len() - 1].iter().any(|&v| occ[v].is_none()) {
                return Err(invalid(MoveErrorKind::GapInPath));
            }
            for w in seq.windows(2) {
                let robot = occ[w[0]].expect("path vertex occupied");
                next[robot] = w[1];
            }
        }
        Move::Rotation(seq) => {
            if seq.len() < 3 {
                return Err(invalid(MoveErrorKind::NotACycle));
            }
            check_simple_sequence(g, seq, MoveErrorKind::NotACycle)?;
            if !g.has_edge(seq[0], *seq.last().expect("non-empty cycle")) {
                return Err(invalid(MoveErrorKind::NotACycle));
            }
            if seq.iter().any(|&v| occ[v].is_none()) {
                return Err(invalid(MoveErrorKind::CycleNotFull));
            }
            for (j, &v) in seq.iter().enumerate() {
                let robot = occ[v].expect("cycle vertex occupied");
                next[robot] = seq[(j + 1) % seq.len()];
            }
        }
    }
    Ok(Configuration { assignment: next })
}

/// Simple cycles of the subgraph induced by the occupied vertices, each
/// listed once (least vertex first, lesser neighbor second). `cycle_cap`
/// bounds the count per biconnected component.
pub fn occupied_cycles(
    g: &Graph,
    s: &Configuration,
    cycle_cap: Option<usize>,
) -> Result<Vec<Vec<Vertex>>, Error> {
    let occupied = s.occupied();
    let induced = g.induced(&occupied);
    let decomposition = crate::biconnected::BlockCutDecomposition::compute(&induced);
    let mut cycles = Vec::new();
    for comp in &decomposition.components {
        if comp.vertices.len() < 3 {
            continue;
        }
        let local = induced.induced(&comp.vertices);
        let found = cycles_in_graph(&local, cycle_cap)?;
        for cycle in found {
            cycles.push(
                cycle.iter().map(|&i| occupied[comp.vertices[i]]).collect(),
            );
        }
    }
    cycles.sort_unstable();
    Ok(cycles)
}

/// Every simple cycle of `g`, each exactly once: the least cycle vertex
/// comes first and its lesser cycle-neighbor second.
fn cycles_in_graph(g: &Graph, cap: Option<usize>) -> Result<Vec<Vec<Vertex>>, Error> {
    let n = g.n();
    let mut cycles: Vec<Vec<Vertex>> = Vec::new();
    let mut in_path = vec![false; n];
    for start in 0..n {
        let mut path = vec![start];
        let mut iters = vec![0usize];
        in_path[start] = true;
        while let Some(&v) = path.last() {
            let i = iters.last_mut().expect("one iterator per path vertex");
            if *i < g.degree(v) {
                let w = g.neighbors(v)[*i];
                *i += 1;
                if w == start {
                    if path.len() >= 3 && path[1] < path[path.len() - 1] {
                        if let Some(cap) = cap {
                            if cycles.len() >= cap {
                                return Err(Error::CycleCapExceeded { cap });
                            }
                        }
                        cycles.push(path.clone());
                    }
                    continue;
                }
                if w < start || in_path[w] {
                    continue;
                }
                in_path[w] = true;
                path.push(w);
                iters.push(0);
            } else {
                in_path[v] = false;
                path.pop();
                iters.pop();
            }
        }
    }
    Ok(cycles)
}

pub(crate) fn rotation_results(s: &Configuration, occ: &[Option<usize>], cycle: &[Vertex], out: &mut BTreeSet<Configuration>) {
    let k = cycle.len();
    let mut forward = s.assignment.clone();
    let mut backward = s.assignment.clone();
    for (j, &v) in cycle.iter().enumerate() {
        let robot = occ[v].expect("cycle vertices are occupied");
        forward[robot] = cycle[(j + 1) % k];
        backward[robot] = cycle[(j + k - 1) % k];
    }
    out.insert(Configuration { assignment: forward });
    out.insert(Configuration { assignment: backward });
}

/// All configurations one normalized move away: single-step pushes into an
/// empty neighbor plus both rotations of every fully occupied simple cycle.
pub fn successors(g: &Graph, s: &Configuration) -> Vec<Configuration> {
    successors_capped(g, s, None).expect("uncapped successor enumeration cannot fail")
}

/// [`successors`] with a per-component bound on enumerated rotation cycles.
pub fn successors_capped(
    g: &Graph,
    s: &Configuration,
    cycle_cap: Option<usize>,
) -> Result<Vec<Configuration>, Error> {
    let occ = s.occupancy(g.n());
    let mut out = BTreeSet::new();
    push_results(g, s, &occ, &mut out);
    for cycle in occupied_cycles(g, s, cycle_cap)? {
        rotation_results(s, &occ, &cycle, &mut out);
    }
    Ok(out.into_iter().collect())
}

/// Single-step pushes: one robot slides into an adjacent empty vertex.
pub(crate) fn push_results(
    g: &Graph,
    s: &Configuration,
    occ: &[Option<usize>],
    out: &mut BTreeSet<Configuration>,
) {
    for e in 0..g.n() {
        if occ[e].is_some() {
            continue;
        }
        for &u in g.neighbors(e) {
            if let Some(robot) = occ[u] {
                let mut next = s.assignment.clone();
                next[robot] = e;
                out.insert(Configuration { assignment: next });
            }
        }
    }
}

/// All configurations reachable by one move in the unrestricted move model:
/// path moves of any length, interior holes allowed, plus rotations. Search
/// surface for cross-checks; exponential in graph size.
pub fn unrestricted_successors(g: &Graph, s: &Configuration) -> BTreeSet<Configuration> {
    let occ = s.occupancy(g.n());
    let mut out = BTreeSet::new();
    // Walk simple paths backwards from each empty end vertex; a reversed
    // prefix (w_len .. w_0) is a path move when some robot sits on it.
    for end in 0..g.n() {
        if occ[end].is_some() {
            continue;
        }
        let mut path = vec![end];
        let mut iters = vec![0usize];
        let mut in_path = vec![false; g.n()];
        in_path[end] = true;
        while let Some(&v) = path.last() {
            let i = iters.last_mut().expect("one iterator per path vertex");
            if *i < g.degree(v) {
                let w = g.neighbors(v)[*i];
                *i += 1;
                if in_path[w] {
                    continue;
                }
                in_path[w] = true;
                path.push(w);
                iters.push(0);
                // Path move along (w_last, ..., w_0 = end): every robot on
                // it advances one step toward `end`.
                let mut next = s.assignment.clone();
                let mut any = false;
                for j in 1..path.len() {
                    if let Some(robot) = occ[path[j]] {
                        next[robot] = path[j - 1];
                        any = true;
                    }
                }
                if any {
                    out.insert(Configuration { assignment: next });
                }
            } else {
                in_path[v] = false;
                path.pop();
                iters.pop();
            }
        }
    }
    let cycles = occupied_cycles(g, s, None).expect("uncapped enumeration cannot fail");
    for cycle in cycles {
        rotation_results(s, &occ, &cycle, &mut out);
    }
    out
}

/// Whether `(a, b)` is a valid move pair in the unrestricted move model
/// (including the dummy move).
pub fn is_valid_move_pair(g: &Graph, a: &Configuration, b: &Configuration) -> bool {
    a == b || unrestricted_successors(g, a).contains(b)
}

/// Given a valid move pair `(s, s_next)` and a permutation `pi`, checks that
/// `(s ∘ pi, s_next ∘ pi)` is again a valid move pair. Renaming robots never
/// invalidates a move, so this returns `true` on every valid input.
pub fn check_move_permutation_equivariance(
    g: &Graph,
    s: &Configuration,
    s_next: &Configuration,
    pi: &Permutation,
) -> Result<bool, Error> {
    Ok(is_valid_move_pair(g, &s.compose(pi)?, &s_next.compose(pi)?))
}
