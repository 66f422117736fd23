//! Accumulation: deterministically herd all robots onto the first `p`
//! vertices of the breadth-first order, logging replayable moves.
//!
//! Each round picks the least-rank unoccupied target vertex and the
//! least-rank occupied vertex outside the target set, then pushes every
//! robot on the unique tree path between them one step toward the target.
//! The sum over robots of tree-distance to the target set strictly
//! decreases each round, which bounds the loop; that decrease is asserted.
//!
//! The final configuration depends only on the occupied vertex set, not on
//! which robot sits where; renaming robots commutes with the whole
//! procedure. Both facts back [`accumulation_map`] and [`retarget`].

use std::collections::BTreeMap;

use crate::config::{Configuration, Move};
use crate::error::Error;
use crate::graph::{Graph, Vertex};

/// Outcome of accumulating one configuration.
#[derive(Debug, Clone)]
pub struct AccumulationResult {
    /// Final configuration, supported on the target set.
    pub final_config: Configuration,
    /// Replayable single-step path moves, in order.
    pub moves: Vec<Move>,
    /// Initial vertex of each robot mapped to its final vertex.
    pub map: BTreeMap<Vertex, Vertex>,
}

/// First `p` vertices of the breadth-first order, in that order.
pub fn target_set(g: &Graph, p: usize) -> Result<Vec<Vertex>, Error> {
    if p > g.n() {
        return Err(Error::RobotCountOutOfRange { p, n: g.n() });
    }
    let tree = g.bfs_tree()?;
    Ok(tree.order[..p].to_vec())
}

/// The pinned start configuration: robot `i` on the `i`-th vertex of the
/// breadth-first order.
pub fn identity_configuration(g: &Graph, p: usize) -> Result<Configuration, Error> {
    Ok(Configuration::new(target_set(g, p)?).expect("breadth-first order is duplicate-free"))
}

/// Runs the accumulation procedure on `s`.
pub fn accumulate(g: &Graph, s: &Configuration) -> Result<AccumulationResult, Error> {
    s.validate_on(g)?;
    let p = s.p();
    if p > g.n() {
        return Err(Error::RobotCountOutOfRange { p, n: g.n() });
    }
    let tree = g.bfs_tree()?;

    // Tree distance to the nearest target vertex: targets are closed under
    // taking parents, so it is the distance to the first target ancestor.
    let mut dist = vec![0usize; g.n()];
    for &v in &tree.order[p.min(g.n())..] {
        dist[v] = dist[tree.parent[v].expect("non-root vertex has a parent")] + 1;
    }

    let mut assignment = s.assignment().to_vec();
    let mut occ = s.occupancy(g.n());
    let mut inside = assignment.iter().filter(|&&v| tree.rank[v] < p).count();
    let mut metric: usize = assignment.iter().map(|&v| dist[v]).sum();
    let mut moves = Vec::new();

    while inside < p {
        let a = tree.order[..p]
            .iter()
            .copied()
            .find(|&v| occ[v].is_none())
            .expect("some target vertex is unoccupied while robots remain outside");
        let b = tree.order[p..]
            .iter()
            .copied()
            .find(|&v| occ[v].is_some())
            .expect("some robot sits outside the target set");
        let path = tree.path(b, a);
        for j in (0..path.len() - 1).rev() {
            let Some(robot) = occ[path[j]] else { continue };
            debug_assert!(occ[path[j + 1]].is_none(), "push target must be empty");
            occ[path[j]] = None;
            occ[path[j + 1]] = Some(robot);
            assignment[robot] = path[j + 1];
            if tree.rank[path[j]] < p {
                inside -= 1;
            }
            if tree.rank[path[j + 1]] < p {
                inside += 1;
            }
            moves.push(Move::Path(vec![path[j], path[j + 1]]));
        }
        let next_metric: usize = assignment.iter().map(|&v| dist[v]).sum();
        assert!(
            next_metric < metric,
            "accumulation metric failed to decrease ({metric} -> {next_metric})"
        );
        metric = next_metric;
    }

    let final_config =
        Configuration::new(assignment).expect("moves preserve injectivity");
    let map = s
        .assignment()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, final_config.vertex_of(i)))
        .collect();
    Ok(AccumulationResult { final_config, moves, map })
}

/// The map `occupied vertex -> target vertex` induced by accumulating any
/// configuration supported on `occupied`; independent of robot naming.
pub fn accumulation_map(
    g: &Graph,
    occupied: &[Vertex],
) -> Result<BTreeMap<Vertex, Vertex>, Error> {
    let canonical = canonical_config(g, occupied)?;
    Ok(accumulate(g, &canonical)?.map)
}

/// Configuration reachable from `s` that occupies exactly the vertex set
/// `x`: robots are placed by accumulating both sides onto the target set
/// and matching them up there.
pub fn retarget(g: &Graph, s: &Configuration, x: &[Vertex]) -> Result<Configuration, Error> {
    if x.len() != s.p() {
        return Err(Error::SizeMismatch { expected: s.p(), got: x.len() });
    }
    let y_s = accumulate(g, s)?.final_config;
    let t_x = accumulation_map(g, x)?;
    let mut back: BTreeMap<Vertex, Vertex> =
        t_x.iter().map(|(&from, &to)| (to, from)).collect();
    debug_assert_eq!(back.len(), x.len(), "accumulation map must be injective");
    let assignment = (0..s.p())
        .map(|i| {
            back.remove(&y_s.vertex_of(i))
                .expect("both accumulations land on the same target set")
        })
        .collect();
    Ok(Configuration::new(assignment).expect("preimages are distinct"))
}

fn canonical_config(g: &Graph, occupied: &[Vertex]) -> Result<Configuration, Error> {
    let mut sorted = occupied.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateVertex { v: w[0] });
    }
    let c = Configuration::new(sorted).expect("duplicates were rejected");
    c.validate_on(g)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{apply_move, Permutation};
    use rand::rngs::ChaCha8Rng;
    use rand::{RngExt, SeedableRng};

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        graph(n, &edges)
    }

    fn config(v: &[usize]) -> Configuration {
        Configuration::new(v.to_vec()).unwrap()
    }

    /// Random connected graph: a random tree plus a few random chords.
    fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
        let mut edges: Vec<(usize, usize)> = (1..n)
            .map(|v| (rng.random_range(0..v), v))
            .collect();
        let g = Graph::new(n, &edges).unwrap();
        let mut spare = g.non_edges();
        for _ in 0..rng.random_range(0..=n) {
            if spare.is_empty() {
                break;
            }
            let i = rng.random_range(0..spare.len());
            edges.push(spare.swap_remove(i));
        }
        Graph::new(n, &edges).unwrap()
    }

    fn random_config(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Configuration {
        let mut pool: Vec<usize> = (0..n).collect();
        let mut assignment = Vec::with_capacity(p);
        for _ in 0..p {
            let i = rng.random_range(0..pool.len());
            assignment.push(pool.swap_remove(i));
        }
        Configuration::new(assignment).unwrap()
    }

    #[test]
    fn target_set_examples() {
        assert_eq!(target_set(&graph(3, &[(0, 1), (1, 2)]), 2).unwrap(), vec![0, 1]);
        assert_eq!(
            target_set(&graph(4, &[(0, 1), (0, 2), (0, 3)]), 2).unwrap(),
            vec![0, 1]
        );
        assert_eq!(target_set(&cycle(4), 3).unwrap(), vec![0, 1, 3]);
        assert!(target_set(&cycle(4), 5).is_err());
        assert_eq!(identity_configuration(&cycle(4), 3).unwrap(), config(&[0, 1, 3]));
    }

    #[test]
    fn already_accumulated_is_fixed() {
        let g = cycle(4);
        let s = config(&[0, 1, 3]);
        let r = accumulate(&g, &s).unwrap();
        assert_eq!(r.final_config, s);
        assert!(r.moves.is_empty());
        assert_eq!(r.map, BTreeMap::from([(0, 0), (1, 1), (3, 3)]));
    }

    #[test]
    fn single_robot_walks_to_root() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let r = accumulate(&g, &config(&[2])).unwrap();
        assert_eq!(r.final_config, config(&[0]));
        assert_eq!(
            r.moves,
            vec![Move::Path(vec![2, 1]), Move::Path(vec![1, 0])]
        );
    }

    #[test]
    fn four_cycle_pair_lands_swapped() {
        let g = cycle(4);
        let r = accumulate(&g, &config(&[2, 3])).unwrap();
        assert_eq!(r.final_config, config(&[1, 0]));
        assert_eq!(r.map, BTreeMap::from([(2, 1), (3, 0)]));
    }

    #[test]
    fn replay_matches_and_lands_on_target_set() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(2..=7);
            let g = random_connected(&mut rng, n);
            let p = rng.random_range(1..=n);
            let s = random_config(&mut rng, n, p);
            let r = accumulate(&g, &s).unwrap();
            let mut replay = s.clone();
            for m in &r.moves {
                replay = apply_move(&g, &replay, m).unwrap();
            }
            assert_eq!(replay, r.final_config);
            assert_eq!(r.final_config.occupied(), {
                let mut t = target_set(&g, p).unwrap();
                t.sort_unstable();
                t
            });
        }
    }

    #[test]
    fn accumulation_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let n = rng.random_range(2..=7);
            let g = random_connected(&mut rng, n);
            let p = rng.random_range(1..=n);
            let s = random_config(&mut rng, n, p);
            let once = accumulate(&g, &s).unwrap();
            let twice = accumulate(&g, &once.final_config).unwrap();
            assert_eq!(twice.final_config, once.final_config);
            assert!(twice.moves.is_empty());
        }
    }

    #[test]
    fn renaming_robots_commutes_with_accumulation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..150 {
            let n = rng.random_range(2..=7);
            let g = random_connected(&mut rng, n);
            let p = rng.random_range(1..=n);
            let s = random_config(&mut rng, n, p);
            let mut perm: Vec<usize> = (0..p).collect();
            for i in (1..p).rev() {
                perm.swap(i, rng.random_range(0..=i));
            }
            let pi = Permutation::new(perm).unwrap();
            let lhs = accumulate(&g, &s.compose(&pi).unwrap()).unwrap().final_config;
            let rhs = accumulate(&g, &s)
                .unwrap()
                .final_config
                .compose(&pi)
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn map_depends_only_on_occupied_set() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..100 {
            let n = rng.random_range(2..=7);
            let g = random_connected(&mut rng, n);
            let p = rng.random_range(1..=n);
            let s = random_config(&mut rng, n, p);
            let from_config = accumulate(&g, &s).unwrap().map;
            let from_set = accumulation_map(&g, &s.occupied()).unwrap();
            assert_eq!(from_config, from_set);
        }
    }

    #[test]
    fn accumulation_map_examples() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(accumulation_map(&g, &[2]).unwrap(), BTreeMap::from([(2, 0)]));
        let c4 = cycle(4);
        assert_eq!(
            accumulation_map(&c4, &[0, 1, 3]).unwrap(),
            BTreeMap::from([(0, 0), (1, 1), (3, 3)])
        );
        assert!(accumulation_map(&c4, &[1, 1]).is_err());
    }

    #[test]
    fn retarget_examples() {
        let g = cycle(4);
        // Robots on {2,3} moved to occupy {1,2}.
        let t = retarget(&g, &config(&[2, 3]), &[1, 2]).unwrap();
        assert_eq!(t, config(&[2, 1]));
        // Retargeting onto the current occupied set is the identity.
        let s = config(&[2, 3]);
        assert_eq!(retarget(&g, &s, &[3, 2]).unwrap(), s);
        // Retargeting onto the target set is plain accumulation.
        assert_eq!(
            retarget(&g, &s, &[0, 1]).unwrap(),
            accumulate(&g, &s).unwrap().final_config
        );
        assert!(retarget(&g, &s, &[0]).is_err());
    }

    #[test]
    fn disconnected_graphs_are_rejected() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        assert_eq!(accumulate(&g, &config(&[3])).unwrap_err(), Error::Disconnected);
        assert_eq!(target_set(&g, 2).unwrap_err(), Error::Disconnected);
    }
}
