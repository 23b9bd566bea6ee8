//! Finite-scale models of hereditarily indecomposable continua.
//!
//! The crate makes a family of classical constructions computable at desk
//! scale: finite bounded lattices and first-order sentences over them
//! ([`formula`]), Wallman spaces of finite distributive lattices
//! ([`wallman`]), grid approximations of cubes with Urysohn functions,
//! partitions and essential families ([`grid`]), the crooked partition of
//! the square with chicanes and Bing's constructions ([`crooked`]), and
//! hyperspace tools: Hausdorff metric, Whitney maps, cover degrees
//! ([`hyperspace`]).
//!
//! All predicates use exact rational arithmetic; searches that are
//! exponential in principle report three-valued outcomes (yes / no with a
//! witness / unknown within budget).

pub mod bits;
pub mod budget;
pub mod crooked;
pub mod formula;
pub mod grid;
pub mod hyperspace;
pub mod lattice;
pub mod rational;
pub mod wallman;

pub use bits::Bits;
pub use budget::Budget;
pub use rational::{format_ratio, parse_ratio, Q};
