//! Exhaustive search over the full configuration space.
//!
//! These routines enumerate reachability classes by breadth-first search
//! over all `n! / (n - p)!` configurations. They are exponential and meant
//! for small instances only: as the ground truth that the polynomial
//! deciders and the augmentation planners are checked against, and as the
//! last-resort fallback when no structural rule applies.
//!
//! Every search respects [`SearchCaps`]; exceeding a cap is reported as an
//! error rather than silently truncating, so a capped run can never be
//! mistaken for an exact answer.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use itertools::Itertools;
use num_rational::Ratio;

use crate::config::{occupied_cycles, push_results, rotation_results, Configuration};
use crate::error::Error;
use crate::graph::{Graph, Vertex};

/// Resource bounds for configuration-space searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchCaps {
    /// Most configurations a single search may visit.
    pub max_states: usize,
    /// Most simple cycles enumerated per biconnected component of an
    /// occupied subgraph.
    pub max_cycles_per_component: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            max_states: 2_000_000,
            max_cycles_per_component: 10_000,
        }
    }
}

/// Rotation cycles depend only on the occupied vertex set, which many
/// configurations share, so one search keeps them keyed by that set.
type CycleCache = HashMap<Vec<Vertex>, Vec<Vec<Vertex>>>;

fn cached_successors(
    g: &Graph,
    s: &Configuration,
    caps: SearchCaps,
    cache: &mut CycleCache,
) -> Result<Vec<Configuration>, Error> {
    let occ = s.occupancy(g.n());
    let mut out = BTreeSet::new();
    push_results(g, s, &occ, &mut out);
    let occupied = s.occupied();
    if !cache.contains_key(&occupied) {
        let cycles = occupied_cycles(g, s, Some(caps.max_cycles_per_component))?;
        cache.insert(occupied.clone(), cycles);
    }
    for cycle in &cache[&occupied] {
        rotation_results(s, &occ, cycle, &mut out);
    }
    Ok(out.into_iter().collect())
}

/// Breadth-first closure of `start` under moves. Stops early when `target`
/// is reached; the returned flag says whether it was.
fn explore(
    g: &Graph,
    start: &Configuration,
    target: Option<&Configuration>,
    caps: SearchCaps,
    cache: &mut CycleCache,
) -> Result<(HashSet<Configuration>, bool), Error> {
    if target == Some(start) {
        return Ok((HashSet::from([start.clone()]), true));
    }
    let mut seen = HashSet::from([start.clone()]);
    let mut frontier = VecDeque::from([start.clone()]);
    while let Some(cur) = frontier.pop_front() {
        for next in cached_successors(g, &cur, caps, cache)? {
            if seen.contains(&next) {
                continue;
            }
            if target == Some(&next) {
                seen.insert(next);
                return Ok((seen, true));
            }
            if seen.len() >= caps.max_states {
                return Err(Error::StateCapExceeded {
                    cap: caps.max_states,
                });
            }
            seen.insert(next.clone());
            frontier.push_back(next);
        }
    }
    Ok((seen, false))
}

/// Whether `t` is reachable from `s` by a sequence of moves.
///
/// Moves are invertible, so this relation is symmetric; it is the ground
/// truth every faster feasibility check is validated against.
pub fn reachable_bf(
    g: &Graph,
    s: &Configuration,
    t: &Configuration,
    caps: SearchCaps,
) -> Result<bool, Error> {
    s.validate_on(g)?;
    t.validate_on(g)?;
    if s.p() != t.p() {
        return Err(Error::SizeMismatch {
            expected: s.p(),
            got: t.p(),
        });
    }
    let mut cache = CycleCache::new();
    let (_, found) = explore(g, s, Some(t), caps, &mut cache)?;
    Ok(found)
}

/// The full reachability class of `s`, sorted.
pub fn reachable_class(
    g: &Graph,
    s: &Configuration,
    caps: SearchCaps,
) -> Result<Vec<Configuration>, Error> {
    s.validate_on(g)?;
    let mut cache = CycleCache::new();
    let (class, _) = explore(g, s, None, caps, &mut cache)?;
    let mut class: Vec<Configuration> = class.into_iter().collect();
    class.sort_unstable();
    Ok(class)
}

/// Number of configurations of `p` robots on `n` vertices, saturating on
/// overflow. A saturated total always exceeds any practical state cap, so
/// searches fail on the cap before the value is ever compared.
fn configuration_count(n: usize, p: usize) -> u64 {
    ((n - p + 1)..=n).fold(1u64, |acc, x| acc.saturating_mul(x as u64))
}

/// Complete partition of the configuration space into reachability classes.
#[derive(Clone, Debug)]
pub struct ClassReport {
    /// Total number of configurations, `n! / (n - p)!`.
    pub total: u64,
    /// The classes, each sorted, ordered by their least member.
    pub classes: Vec<Vec<Configuration>>,
    /// Share of the space reachable from any one configuration. `None` on
    /// a disconnected graph, where classes need not share a size.
    pub reachable_fraction: Option<Ratio<u64>>,
}

impl ClassReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Index of the class containing `s`, if `s` occurs at all.
    pub fn class_of(&self, s: &Configuration) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.binary_search(s).is_ok())
    }
}

/// Partition all configurations of `p` robots on `g` into reachability
/// classes by seeding a search from each lexicographically least unvisited
/// configuration.
pub fn equivalence_classes(
    g: &Graph,
    p: usize,
    caps: SearchCaps,
) -> Result<ClassReport, Error> {
    let n = g.n();
    if p == 0 || p > n {
        return Err(Error::RobotCountOutOfRange { p, n });
    }
    let total = configuration_count(n, p);
    if total > caps.max_states as u64 {
        return Err(Error::StateCapExceeded {
            cap: caps.max_states,
        });
    }
    // `permutations` on a sorted range is lexicographic, so each seed below
    // is its class's least member and the classes come out ordered by it.
    let all = (0..n)
        .permutations(p)
        .map(|a| Configuration::new(a).expect("assignments are injective"));
    let mut cache = CycleCache::new();
    let mut visited: HashSet<Configuration> = HashSet::new();
    let mut classes = Vec::new();
    for seed in all {
        if visited.contains(&seed) {
            continue;
        }
        let (class, _) = explore(g, &seed, None, caps, &mut cache)?;
        let mut class: Vec<Configuration> = class.into_iter().collect();
        class.sort_unstable();
        visited.extend(class.iter().cloned());
        classes.push(class);
    }
    debug_assert_eq!(visited.len() as u64, total);
    let reachable_fraction = if g.is_connected() {
        Some(Ratio::new(classes[0].len() as u64, total))
    } else {
        None
    };
    Ok(ClassReport {
        total,
        classes,
        reachable_fraction,
    })
}

/// Whether every pair of `p`-robot configurations on `g` is mutually
/// reachable, decided by exhausting one reachability class.
///
/// Reachability is symmetric, so a single class covering the whole space
/// is equivalent to universal solvability; a search seeded anywhere that
/// closes early settles the answer as no. Disconnected graphs need no
/// special case: a class can never cross components.
pub fn universally_solvable_bf(g: &Graph, p: usize, caps: SearchCaps) -> Result<bool, Error> {
    let n = g.n();
    if p == 0 || p > n {
        return Err(Error::RobotCountOutOfRange { p, n });
    }
    let seed = Configuration::new((0..p).collect()).expect("identity is injective");
    let class = reachable_class(g, &seed, caps)?;
    Ok(class.len() as u64 == configuration_count(n, p))
}

/// Fraction of the configuration space reachable from `s`.
pub fn reachable_fraction(
    g: &Graph,
    s: &Configuration,
    caps: SearchCaps,
) -> Result<Ratio<u64>, Error> {
    let class = reachable_class(g, s, caps)?;
    Ok(Ratio::new(
        class.len() as u64,
        configuration_count(g.n(), s.p()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biconnected::all_connected_graphs;
    use crate::config::Permutation;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn caps() -> SearchCaps {
        SearchCaps::default()
    }

    #[test]
    fn triangle_fully_occupied_splits_in_two() {
        let report = equivalence_classes(&cycle(3), 3, caps()).unwrap();
        assert_eq!(report.total, 6);
        assert_eq!(report.class_count(), 2);
        let sizes: Vec<usize> = report.classes.iter().map(Vec::len).collect();
        assert_eq!(sizes, [3, 3]);
        assert_eq!(report.reachable_fraction, Some(Ratio::new(1, 2)));
    }

    #[test]
    fn four_cycle_fully_occupied_has_six_classes() {
        let report = equivalence_classes(&cycle(4), 4, caps()).unwrap();
        assert_eq!(report.total, 24);
        assert_eq!(report.class_count(), 6);
        assert!(report.classes.iter().all(|c| c.len() == 4));
        assert_eq!(report.reachable_fraction, Some(Ratio::new(1, 6)));
    }

    #[test]
    fn saturated_star_freezes_every_configuration() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let report = equivalence_classes(&star, 4, caps()).unwrap();
        assert_eq!(report.total, 24);
        assert_eq!(report.class_count(), 24);
        assert_eq!(report.reachable_fraction, Some(Ratio::new(1, 24)));
    }

    #[test]
    fn two_separate_edges_have_unequal_classes() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let report = equivalence_classes(&g, 2, caps()).unwrap();
        assert_eq!(report.total, 12);
        let mut sizes: Vec<usize> = report.classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 1, 1, 1, 4, 4]);
        assert_eq!(report.reachable_fraction, None);
    }

    #[test]
    fn reachability_is_symmetric_and_matches_classes() {
        let g = cycle(4);
        let report = equivalence_classes(&g, 2, caps()).unwrap();
        let all: Vec<&Configuration> = report.classes.iter().flatten().collect();
        for s in &all {
            for t in &all {
                let same_class = report.class_of(s) == report.class_of(t);
                assert_eq!(reachable_bf(&g, s, t, caps()).unwrap(), same_class);
                assert_eq!(reachable_bf(&g, t, s, caps()).unwrap(), same_class);
            }
        }
    }

    #[test]
    fn connected_graphs_give_equal_class_sizes() {
        for n in 2..=4 {
            for g in all_connected_graphs(n) {
                for p in 1..=n {
                    let report = equivalence_classes(&g, p, caps()).unwrap();
                    let size = report.classes[0].len();
                    assert!(
                        report.classes.iter().all(|c| c.len() == size),
                        "unequal classes on n={n} p={p} edges={:?}",
                        g.edges()
                    );
                    assert_eq!(
                        report.reachable_fraction,
                        Some(Ratio::new(1, report.class_count() as u64))
                    );
                }
            }
        }
    }

    #[test]
    fn renaming_robots_permutes_whole_classes() {
        for g in all_connected_graphs(4) {
            for p in 1..=4 {
                let report = equivalence_classes(&g, p, caps()).unwrap();
                let as_sets: BTreeSet<Vec<Configuration>> =
                    report.classes.iter().cloned().collect();
                for perm in (0..p).permutations(p) {
                    let pi = Permutation::new(perm).unwrap();
                    for class in &report.classes {
                        let mut image: Vec<Configuration> = class
                            .iter()
                            .map(|s| s.compose(&pi).unwrap())
                            .collect();
                        image.sort_unstable();
                        assert!(as_sets.contains(&image));
                    }
                }
            }
        }
    }

    #[test]
    fn universal_solvability_agrees_with_class_count() {
        for n in 2..=4 {
            for g in all_connected_graphs(n) {
                for p in 1..=n {
                    let report = equivalence_classes(&g, p, caps()).unwrap();
                    assert_eq!(
                        universally_solvable_bf(&g, p, caps()).unwrap(),
                        report.class_count() == 1
                    );
                }
            }
        }
    }

    #[test]
    fn single_robot_on_connected_graph_is_solvable() {
        for g in all_connected_graphs(4) {
            assert!(universally_solvable_bf(&g, 1, caps()).unwrap());
        }
    }

    #[test]
    fn state_cap_aborts_the_search() {
        let tight = SearchCaps {
            max_states: 3,
            ..SearchCaps::default()
        };
        let err = universally_solvable_bf(&cycle(5), 2, tight).unwrap_err();
        assert!(err.is_cap_exceeded());
        let err = equivalence_classes(&cycle(5), 3, tight).unwrap_err();
        assert!(err.is_cap_exceeded());
    }

    #[test]
    fn fraction_matches_class_share() {
        let g = cycle(4);
        let s = Configuration::new(vec![2, 0]).unwrap();
        assert_eq!(
            reachable_fraction(&g, &s, caps()).unwrap(),
            Ratio::new(1, 1)
        );
        let full = Configuration::new(vec![2, 0, 1, 3]).unwrap();
        assert_eq!(
            reachable_fraction(&g, &full, caps()).unwrap(),
            Ratio::new(1, 6)
        );
    }
}
