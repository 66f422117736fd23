//! Deciders for universal solvability.
//!
//! A graph with `p` robots is universally solvable when every configuration
//! reaches every other. Three deciders share one identity configuration
//! `S_I` (robot `i` on the `i`-th vertex of the canonical search order):
//!
//! * [`solve_randomized`] asks whether one uniformly sampled configuration
//!   is reachable from `S_I`. It never rejects a solvable instance, and on
//!   an unsolvable one it errs toward yes with probability at most 1/2,
//!   because the reachable share of the space is then at most half.
//! * [`solve_deterministic`] reduces the whole question to the `p - 1`
//!   adjacent robot swaps: the instance is solvable exactly when each swap
//!   of `S_I` is reachable from `S_I`.
//! * [`solve_optimized`] first tries two constant-rule shortcuts — an edge
//!   count of at least `p * n` forces yes, as does a 2-connected non-cycle
//!   block with room for all robots — and otherwise delegates to the
//!   deterministic reduction.
//!
//! All three agree with the exhaustive oracle wherever it can run; the
//! tests check that exhaustively on small graphs.

use rand::rngs::ChaCha8Rng;
use rand::{Rng, RngExt, SeedableRng};

use crate::accumulation::identity_configuration;
use crate::biconnected::{has_large_noncycle_two_connected, BlockCutDecomposition};
use crate::config::{Configuration, Permutation};
use crate::error::Error;
use crate::frmp::feasible;
use crate::graph::{Graph, Vertex};
use crate::oracle::{universally_solvable_bf, SearchCaps};

/// Verdict of a solvability query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solvability {
    UniversallySolvable,
    NotUniversallySolvable,
}

impl Solvability {
    pub fn is_solvable(self) -> bool {
        self == Solvability::UniversallySolvable
    }
}

fn verdict(solvable: bool) -> Solvability {
    if solvable {
        Solvability::UniversallySolvable
    } else {
        Solvability::NotUniversallySolvable
    }
}

/// Which decider produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Randomized,
    Deterministic,
    Optimized,
    Oracle,
}

/// A solvability verdict plus the evidence that settled it.
#[derive(Clone, Debug)]
pub struct SolveVerdict {
    pub answer: Solvability,
    pub algorithm: Algorithm,
    /// The failing swap index, the shortcut that fired, or the sampled
    /// configuration, depending on the algorithm.
    pub detail: Option<String>,
}

fn require_robot_range(g: &Graph, p: usize) -> Result<(), Error> {
    if p < 2 || p > g.n() {
        return Err(Error::RobotCountOutOfRange { p, n: g.n() });
    }
    Ok(())
}

/// Draws one configuration uniformly from all `n! / (n - p)!` by sampling
/// vertices sequentially without replacement (a partial shuffle).
pub fn sample_uniform_configuration(
    g: &Graph,
    p: usize,
    rng: &mut impl Rng,
) -> Result<Configuration, Error> {
    let n = g.n();
    if p > n {
        return Err(Error::RobotCountOutOfRange { p, n });
    }
    let mut pool: Vec<Vertex> = (0..n).collect();
    for i in 0..p {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(p);
    Configuration::new(pool)
}

/// One-sided randomized decider: yes exactly when a configuration sampled
/// uniformly with the given seed is reachable from the identity
/// configuration.
///
/// A solvable instance is accepted for every seed. An unsolvable one is
/// accepted with probability `1 / (k + 1)` where `k + 1` is the number of
/// reachability classes, which is at most `1/2`.
pub fn solve_randomized(
    g: &Graph,
    p: usize,
    seed: u64,
    caps: SearchCaps,
) -> Result<SolveVerdict, Error> {
    require_robot_range(g, p)?;
    if !g.is_connected() {
        return Ok(SolveVerdict {
            answer: Solvability::NotUniversallySolvable,
            algorithm: Algorithm::Randomized,
            detail: Some("graph is disconnected".to_owned()),
        });
    }
    let s_i = identity_configuration(g, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s_r = sample_uniform_configuration(g, p, &mut rng)?;
    let decision = feasible(g, p, &s_i, &s_r, caps)?;
    Ok(SolveVerdict {
        answer: verdict(decision.answer.is_reachable()),
        algorithm: Algorithm::Randomized,
        detail: Some(format!("sampled configuration {}", s_r.to_line())),
    })
}

/// Exact decider via the `p - 1` adjacent-swap queries: solvable exactly
/// when every swap of robots `t` and `t + 1` applied to the identity
/// configuration stays reachable from it.
pub fn solve_deterministic(g: &Graph, p: usize, caps: SearchCaps) -> Result<SolveVerdict, Error> {
    require_robot_range(g, p)?;
    if !g.is_connected() {
        return Ok(SolveVerdict {
            answer: Solvability::NotUniversallySolvable,
            algorithm: Algorithm::Deterministic,
            detail: Some("graph is disconnected".to_owned()),
        });
    }
    let s_i = identity_configuration(g, p)?;
    for t in 1..p {
        let swap = Permutation::adjacent_transposition(p, t)?;
        let target = s_i.compose(&swap)?;
        if !feasible(g, p, &s_i, &target, caps)?.answer.is_reachable() {
            return Ok(SolveVerdict {
                answer: Solvability::NotUniversallySolvable,
                algorithm: Algorithm::Deterministic,
                detail: Some(format!("swap of robots {t} and {} is unreachable", t + 1)),
            });
        }
    }
    Ok(SolveVerdict {
        answer: Solvability::UniversallySolvable,
        algorithm: Algorithm::Deterministic,
        detail: None,
    })
}

/// [`solve_deterministic`] behind two linear-time shortcuts: a density
/// bound (an unsolvable connected instance must satisfy `m < p * n`) and a
/// structural certificate (a 2-connected non-cycle block with at least `p`
/// vertices). The structural shortcut can be disabled to exercise the
/// density bound and delegation on their own.
pub fn solve_optimized_with(
    g: &Graph,
    p: usize,
    structural_shortcut: bool,
    caps: SearchCaps,
) -> Result<SolveVerdict, Error> {
    require_robot_range(g, p)?;
    if !g.is_connected() {
        return Ok(SolveVerdict {
            answer: Solvability::NotUniversallySolvable,
            algorithm: Algorithm::Optimized,
            detail: Some("graph is disconnected".to_owned()),
        });
    }
    if g.m() >= p * g.n() {
        return Ok(SolveVerdict {
            answer: Solvability::UniversallySolvable,
            algorithm: Algorithm::Optimized,
            detail: Some(format!(
                "density shortcut: {} edges >= {p} robots * {} vertices",
                g.m(),
                g.n()
            )),
        });
    }
    if structural_shortcut {
        let d = BlockCutDecomposition::compute(g);
        if let Some(c) = has_large_noncycle_two_connected(&d, p) {
            let size = d.components[c].vertices.len();
            return Ok(SolveVerdict {
                answer: Solvability::UniversallySolvable,
                algorithm: Algorithm::Optimized,
                detail: Some(format!(
                    "structural shortcut: 2-connected non-cycle block on {size} vertices"
                )),
            });
        }
    }
    let delegated = solve_deterministic(g, p, caps)?;
    Ok(SolveVerdict {
        answer: delegated.answer,
        algorithm: Algorithm::Optimized,
        detail: delegated.detail,
    })
}

/// [`solve_optimized_with`] with the structural shortcut enabled.
pub fn solve_optimized(g: &Graph, p: usize, caps: SearchCaps) -> Result<SolveVerdict, Error> {
    solve_optimized_with(g, p, true, caps)
}

/// Exhaustive decider, usable only within the search caps.
pub fn solve_oracle(g: &Graph, p: usize, caps: SearchCaps) -> Result<SolveVerdict, Error> {
    require_robot_range(g, p)?;
    Ok(SolveVerdict {
        answer: verdict(universally_solvable_bf(g, p, caps)?),
        algorithm: Algorithm::Oracle,
        detail: None,
    })
}
