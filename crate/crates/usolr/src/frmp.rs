//! Deciding whether one configuration can reach another.
//!
//! [`feasible`] answers single-pair reachability through a ladder of
//! structural rules, each cheap and each certified against the exhaustive
//! oracle by tests: equality, connected-component decomposition, a large
//! 2-connected non-cycle block, bridgeless graphs with a spare vertex,
//! cyclic-order comparison on cycle graphs, and a parity argument on fully
//! occupied odd-cycle cacti. Instances no rule covers fall back to the
//! brute-force search, so every verdict is exact; only the fallback can
//! exhaust a search cap.

use crate::biconnected::{
    classify_decomposed, has_large_noncycle_two_connected, BlockCutDecomposition,
    StructuralClass,
};
use crate::config::{Configuration, Parity, Permutation};
use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::oracle::{reachable_bf, SearchCaps};

/// Verdict of a feasibility query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Reachable,
    Unreachable,
}

impl Answer {
    pub fn is_reachable(self) -> bool {
        self == Answer::Reachable
    }
}

fn answer(reachable: bool) -> Answer {
    if reachable {
        Answer::Reachable
    } else {
        Answer::Unreachable
    }
}

/// The rule that settled a feasibility query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// The two configurations are equal.
    TrivialEqual,
    /// The graph is disconnected; robots were matched per component and
    /// each component was decided on its own.
    ComponentDecomposition,
    /// Some 2-connected non-cycle block has room for all robots.
    TwoConnRule,
    /// No bridges, at least one cut vertex, and at least one empty vertex.
    TwoEdgeConnRule,
    /// The graph is a simple cycle: compare cyclic robot orders.
    CycleRule,
    /// Fully occupied bridgeless graph: rotations fix or flip permutation
    /// parity depending on cycle lengths.
    ParityRule,
    /// Exhaustive search.
    OracleFallback,
}

/// Outcome of [`feasible`]: the verdict, the rule that produced it, and an
/// optional human-readable witness.
#[derive(Clone, Debug)]
pub struct FeasibilityDecision {
    pub answer: Answer,
    pub method: Method,
    pub certificate: Option<String>,
}

impl FeasibilityDecision {
    fn new(ans: Answer, method: Method, certificate: Option<String>) -> Self {
        FeasibilityDecision {
            answer: ans,
            method,
            certificate,
        }
    }
}

/// Decides whether `t` is reachable from `s` on `g` with `p` robots.
///
/// Rules are tried in a fixed order and the first whose precondition holds
/// wins; all of them agree with the exhaustive search wherever it can run.
/// Only the final fallback is exponential, and only it can report a cap
/// error.
pub fn feasible(
    g: &Graph,
    p: usize,
    s: &Configuration,
    t: &Configuration,
    caps: SearchCaps,
) -> Result<FeasibilityDecision, Error> {
    s.validate_on(g)?;
    t.validate_on(g)?;
    if s.p() != p || t.p() != p {
        return Err(Error::SizeMismatch {
            expected: p,
            got: if s.p() != p { s.p() } else { t.p() },
        });
    }
    if s == t {
        return Ok(FeasibilityDecision::new(
            Answer::Reachable,
            Method::TrivialEqual,
            Some("dummy".to_owned()),
        ));
    }
    // Two distinct configurations need a robot and two vertices.
    debug_assert!(p >= 1 && g.n() >= 2);

    let components = g.connected_components();
    if components.len() > 1 {
        return decide_per_component(g, s, t, &components, caps);
    }

    let d = BlockCutDecomposition::compute(g);
    if let Some(c) = has_large_noncycle_two_connected(&d, p) {
        let size = d.components[c].vertices.len();
        return Ok(FeasibilityDecision::new(
            Answer::Reachable,
            Method::TwoConnRule,
            Some(format!(
                "2-connected non-cycle block on {size} vertices holds all {p} robots"
            )),
        ));
    }
    match classify_decomposed(&d) {
        StructuralClass::SimpleCycleGraph { .. } => {
            let a = cycle_order(g, s)?;
            let b = cycle_order(g, t)?;
            let same = a == b;
            Ok(FeasibilityDecision::new(
                answer(same),
                Method::CycleRule,
                Some(format!("cyclic robot orders {a:?} and {b:?}")),
            ))
        }
        StructuralClass::TwoEdgeConnectedNotTwoConnected { all_odd_cycles } => {
            if p < g.n() {
                Ok(FeasibilityDecision::new(
                    Answer::Reachable,
                    Method::TwoEdgeConnRule,
                    Some("no bridges and an empty vertex".to_owned()),
                ))
            } else if !all_odd_cycles {
                Ok(FeasibilityDecision::new(
                    Answer::Reachable,
                    Method::ParityRule,
                    Some("an even cycle rotation realizes odd permutations".to_owned()),
                ))
            } else {
                let parity = permutation_parity(s, t)?;
                Ok(FeasibilityDecision::new(
                    answer(parity == Parity::Even),
                    Method::ParityRule,
                    Some(format!(
                        "odd-cycle rotations preserve parity; rearrangement is {parity:?}"
                    )),
                ))
            }
        }
        // A whole-graph 2-connected non-cycle block always has size n >= p.
        StructuralClass::TwoConnectedNonCycle { .. } => unreachable!(),
        StructuralClass::Disconnected => unreachable!(),
        StructuralClass::OneEdgeConnected { .. } => Ok(FeasibilityDecision::new(
            answer(reachable_bf(g, s, t, caps)?),
            Method::OracleFallback,
            None,
        )),
    }
}

/// A robot can never leave its connected component, so feasibility splits
/// into one sub-instance per component holding a robot.
fn decide_per_component(
    g: &Graph,
    s: &Configuration,
    t: &Configuration,
    components: &[Vec<Vertex>],
    caps: SearchCaps,
) -> Result<FeasibilityDecision, Error> {
    let mut comp_of = vec![0usize; g.n()];
    for (c, verts) in components.iter().enumerate() {
        for &v in verts {
            comp_of[v] = c;
        }
    }
    for i in 0..s.p() {
        if comp_of[s.vertex_of(i)] != comp_of[t.vertex_of(i)] {
            return Ok(FeasibilityDecision::new(
                Answer::Unreachable,
                Method::ComponentDecomposition,
                Some(format!("robot {} cannot change component", i + 1)),
            ));
        }
    }
    for (c, verts) in components.iter().enumerate() {
        let robots: Vec<usize> =
            (0..s.p()).filter(|&i| comp_of[s.vertex_of(i)] == c).collect();
        if robots.is_empty() {
            continue;
        }
        let sub = g.induced(verts);
        let local = |v: Vertex| verts.binary_search(&v).expect("vertex is in component");
        let sub_s = Configuration::new(
            robots.iter().map(|&i| local(s.vertex_of(i))).collect(),
        )?;
        let sub_t = Configuration::new(
            robots.iter().map(|&i| local(t.vertex_of(i))).collect(),
        )?;
        let sub_decision = feasible(&sub, robots.len(), &sub_s, &sub_t, caps)?;
        if !sub_decision.answer.is_reachable() {
            return Ok(FeasibilityDecision::new(
                Answer::Unreachable,
                Method::ComponentDecomposition,
                Some(format!("sub-instance on component {c} is unreachable")),
            ));
        }
    }
    Ok(FeasibilityDecision::new(
        Answer::Reachable,
        Method::ComponentDecomposition,
        None,
    ))
}

/// Robot ids in order of appearance when walking a cycle graph from vertex
/// 0 toward its smaller neighbor, normalized to the least rotation.
///
/// Slides preserve this cyclic word, and on a fully occupied cycle each
/// rotation shifts it by one position, so two configurations on a cycle
/// graph are mutually reachable exactly when their words agree.
pub fn cycle_order(g: &Graph, s: &Configuration) -> Result<Vec<usize>, Error> {
    if g.n() < 3 || !g.is_connected() || (0..g.n()).any(|v| g.degree(v) != 2) {
        return Err(Error::NotACycleGraph);
    }
    let occ = s.occupancy(g.n());
    let mut word = Vec::with_capacity(s.p());
    let mut prev = 0;
    let mut cur = g.neighbors(0)[0];
    if let Some(robot) = occ[0] {
        word.push(robot + 1);
    }
    while cur != 0 {
        if let Some(robot) = occ[cur] {
            word.push(robot + 1);
        }
        let next = if g.neighbors(cur)[0] == prev {
            g.neighbors(cur)[1]
        } else {
            g.neighbors(cur)[0]
        };
        prev = cur;
        cur = next;
    }
    let shift = least_rotation(&word);
    word.rotate_left(shift);
    Ok(word)
}

/// Starting index of the lexicographically least rotation, by the standard
/// two-candidate scan.
fn least_rotation(w: &[usize]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let (a, b) = (w[(i + k) % n], w[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Parity of the robot rearrangement `sigma` with `t = s ∘ sigma`, which
/// exists only when both configurations occupy the same vertex set.
pub fn permutation_parity(s: &Configuration, t: &Configuration) -> Result<Parity, Error> {
    if s.occupied() != t.occupied() {
        return Err(Error::OccupiedSetsDiffer);
    }
    let max = s.occupied().last().copied().map_or(0, |v| v + 1);
    let mut robot_at = vec![usize::MAX; max];
    for i in 0..s.p() {
        robot_at[s.vertex_of(i)] = i;
    }
    let sigma = Permutation::new((0..t.p()).map(|i| robot_at[t.vertex_of(i)]).collect())?;
    Ok(sigma.parity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biconnected::all_connected_graphs;
    use crate::oracle::equivalence_classes;
    use rand::rngs::ChaCha8Rng;
    use rand::{RngExt, SeedableRng};

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn bowtie() -> Graph {
        Graph::new(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn caps() -> SearchCaps {
        SearchCaps::default()
    }

    fn check(g: &Graph, s: &[Vertex], t: &[Vertex]) -> FeasibilityDecision {
        let s = Configuration::new(s.to_vec()).unwrap();
        let t = Configuration::new(t.to_vec()).unwrap();
        feasible(g, s.p(), &s, &t, caps()).unwrap()
    }

    #[test]
    fn equal_configurations_are_trivially_reachable() {
        let d = check(&cycle(4), &[3, 1], &[3, 1]);
        assert_eq!(d.answer, Answer::Reachable);
        assert_eq!(d.method, Method::TrivialEqual);
        assert_eq!(d.certificate.as_deref(), Some("dummy"));
    }

    #[test]
    fn complete_graph_reaches_everything() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let d = check(&k4, &[0, 1, 2, 3], &[3, 2, 1, 0]);
        assert_eq!(d.answer, Answer::Reachable);
        assert_eq!(d.method, Method::TwoConnRule);
    }

    #[test]
    fn cycle_rule_separates_robot_orders() {
        let c5 = cycle(5);
        // Same cyclic order, shifted: reachable.
        let d = check(&c5, &[0, 1, 2], &[2, 3, 4]);
        assert_eq!(d.answer, Answer::Reachable);
        assert_eq!(d.method, Method::CycleRule);
        // Two robots swapped: the cyclic word differs.
        let d = check(&c5, &[0, 1, 2], &[1, 0, 2]);
        assert_eq!(d.answer, Answer::Unreachable);
        assert_eq!(d.method, Method::CycleRule);
        // Fully occupied: rotations realize exactly the shifts.
        let d = check(&c5, &[0, 1, 2, 3, 4], &[1, 2, 3, 4, 0]);
        assert_eq!(d.answer, Answer::Reachable);
        let d = check(&c5, &[0, 1, 2, 3, 4], &[1, 0, 2, 3, 4]);
        assert_eq!(d.answer, Answer::Unreachable);
    }

    #[test]
    fn two_robots_on_a_cycle_always_meet() {
        let c4 = cycle(4);
        for s in [[0usize, 1], [1, 0], [0, 2], [2, 0]] {
            let d = check(&c4, &s, &[3, 1]);
            assert_eq!(d.answer, Answer::Reachable, "from {s:?}");
        }
    }

    #[test]
    fn bowtie_with_hole_is_unrestricted() {
        let d = check(&bowtie(), &[0, 1, 2, 3], &[4, 3, 1, 0]);
        assert_eq!(d.answer, Answer::Reachable);
        assert_eq!(d.method, Method::TwoEdgeConnRule);
    }

    #[test]
    fn saturated_bowtie_obeys_parity() {
        let g = bowtie();
        let s: Vec<Vertex> = (0..5).collect();
        // Adjacent transposition: odd, hence unreachable.
        let d = check(&g, &s, &[1, 0, 2, 3, 4]);
        assert_eq!(d.answer, Answer::Unreachable);
        assert_eq!(d.method, Method::ParityRule);
        // Three-cycle: even, hence reachable.
        let d = check(&g, &s, &[1, 2, 0, 3, 4]);
        assert_eq!(d.answer, Answer::Reachable);
        assert_eq!(d.method, Method::ParityRule);
    }

    #[test]
    fn saturated_even_cycle_pair_reaches_everything() {
        // Two squares sharing a vertex: bridgeless, an even cycle present.
        let g = Graph::new(
            7,
            &[(0, 1), (1, 2), (2, 3), (0, 3), (3, 4), (4, 5), (5, 6), (3, 6)],
        )
        .unwrap();
        let s: Vec<Vertex> = (0..7).collect();
        let d = check(&g, &s, &[1, 0, 2, 3, 4, 5, 6]);
        assert_eq!(d.answer, Answer::Reachable);
        assert_eq!(d.method, Method::ParityRule);
    }

    #[test]
    fn robots_cannot_change_components() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let d = check(&g, &[0, 2], &[2, 0]);
        assert_eq!(d.answer, Answer::Unreachable);
        assert_eq!(d.method, Method::ComponentDecomposition);
        let d = check(&g, &[0, 2], &[1, 3]);
        assert_eq!(d.answer, Answer::Reachable);
        assert_eq!(d.method, Method::ComponentDecomposition);
    }

    #[test]
    fn per_component_subinstances_decide_the_whole() {
        // A triangle next to a separate edge: the pair on the edge can
        // never swap, robots on the triangle may rotate.
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let d = check(&g, &[0, 1, 3, 4], &[1, 0, 3, 4]);
        assert_eq!(d.answer, Answer::Reachable);
        let d = check(&g, &[0, 1, 3, 4], &[0, 1, 4, 3]);
        assert_eq!(d.answer, Answer::Unreachable);
        assert_eq!(
            d.certificate.as_deref(),
            Some("sub-instance on component 1 is unreachable")
        );
    }

    #[test]
    fn cycle_order_walks_ascending_from_zero() {
        let c4 = cycle(4);
        let all = Configuration::new(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(cycle_order(&c4, &all).unwrap(), vec![1, 2, 3, 4]);
        let two = Configuration::new(vec![0, 2]).unwrap();
        assert_eq!(cycle_order(&c4, &two).unwrap(), vec![1, 2]);
        // A rotated copy normalizes to the same word.
        let rotated = Configuration::new(vec![1, 2, 3, 0]).unwrap();
        assert_eq!(
            cycle_order(&c4, &rotated).unwrap(),
            cycle_order(&c4, &all).unwrap()
        );
    }

    #[test]
    fn cycle_order_rejects_non_cycles() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = Configuration::new(vec![0]).unwrap();
        assert!(matches!(
            cycle_order(&path, &s),
            Err(Error::NotACycleGraph)
        ));
    }

    #[test]
    fn least_rotation_picks_the_smallest_shift() {
        assert_eq!(least_rotation(&[2, 1, 3]), 1);
        assert_eq!(least_rotation(&[1, 2, 3]), 0);
        assert_eq!(least_rotation(&[3, 2, 1]), 2);
        assert_eq!(least_rotation(&[]), 0);
    }

    #[test]
    fn parity_of_rearrangements() {
        let s = Configuration::new(vec![0, 1, 2, 3, 4]).unwrap();
        assert_eq!(permutation_parity(&s, &s).unwrap(), Parity::Even);
        let swapped = Configuration::new(vec![1, 0, 2, 3, 4]).unwrap();
        assert_eq!(permutation_parity(&s, &swapped).unwrap(), Parity::Odd);
        let rotated = Configuration::new(vec![1, 2, 3, 4, 0]).unwrap();
        assert_eq!(permutation_parity(&s, &rotated).unwrap(), Parity::Even);
        let other = Configuration::new(vec![0, 1, 2, 3, 5]).unwrap();
        assert!(matches!(
            permutation_parity(&s, &other),
            Err(Error::OccupiedSetsDiffer)
        ));
    }

    #[test]
    fn queries_are_symmetric() {
        let g = bowtie();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let p = rng.random_range(1..=5);
            let s = random_config(&mut rng, 5, p);
            let t = random_config(&mut rng, 5, p);
            let fwd = feasible(&g, p, &s, &t, caps()).unwrap();
            let bwd = feasible(&g, p, &t, &s, caps()).unwrap();
            assert_eq!(fwd.answer, bwd.answer);
        }
    }

    #[test]
    fn ladder_matches_oracle_exhaustively_up_to_n4() {
        for n in 2..=4 {
            for g in all_connected_graphs(n) {
                for p in 1..=n {
                    let report = equivalence_classes(&g, p, caps()).unwrap();
                    for s in report.classes.iter().flatten() {
                        for t in report.classes.iter().flatten() {
                            let want = report.class_of(s) == report.class_of(t);
                            let got = feasible(&g, p, s, t, caps()).unwrap();
                            assert_eq!(
                                got.answer.is_reachable(),
                                want,
                                "n={n} p={p} edges={:?} s={s:?} t={t:?} via {:?}",
                                g.edges(),
                                got.method
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ladder_matches_oracle_on_sampled_pairs_at_n5() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for g in all_connected_graphs(5) {
            for p in 1..=5 {
                let report = equivalence_classes(&g, p, caps()).unwrap();
                for _ in 0..12 {
                    let s = random_config(&mut rng, 5, p);
                    let t = random_config(&mut rng, 5, p);
                    let want = report.class_of(&s) == report.class_of(&t);
                    let got = feasible(&g, p, &s, &t, caps()).unwrap();
                    assert_eq!(
                        got.answer.is_reachable(),
                        want,
                        "p={p} edges={:?} s={s:?} t={t:?} via {:?}",
                        g.edges(),
                        got.method
                    );
                }
            }
        }
    }

    fn random_config(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Configuration {
        let mut pool: Vec<Vertex> = (0..n).collect();
        let mut assignment = Vec::with_capacity(p);
        for _ in 0..p {
            let i = rng.random_range(0..pool.len());
            assignment.push(pool.swap_remove(i));
        }
        Configuration::new(assignment).unwrap()
    }
}
