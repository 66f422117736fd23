//! Deciding when every arrangement of robots on a graph can be rearranged
//! into every other.
//!
//! `p` robots occupy distinct vertices of a simple undirected graph and move
//! by sliding along a path into an empty vertex or by rotating around a
//! fully occupied cycle. An instance is universally solvable when all
//! configurations of the robots are mutually reachable. This crate provides
//! the move model and configuration spaces ([`config`]), an exhaustive
//! reference oracle ([`oracle`]), structural graph analysis
//! ([`biconnected`]), the accumulation procedure that funnels robots into a
//! canonical vertex set ([`accumulation`]), fast feasibility and
//! solvability deciders ([`frmp`], [`solver`]), and planners that augment a
//! graph until it becomes universally solvable ([`augment`]).

pub mod accumulation;
pub mod augment;
pub mod biconnected;
pub mod config;
pub mod error;
pub mod frmp;
pub mod graph;
pub mod oracle;
pub mod solver;
