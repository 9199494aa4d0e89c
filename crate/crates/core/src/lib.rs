//! Plane star-forest decompositions of complete convex geometric graphs.
//!
//! The crate provides exact geometry ([`geom`]), a data model for centered
//! stars and coverings ([`model`]), the explicit constructions
//! ([`constructions`]), an executable recoloring engine that turns any
//! covering of a convex `K_n` by plane star-forests into a descent
//! certificate ([`recolor`]), exhaustive search oracles ([`search`]),
//! seeded random coverings ([`random`]), canonical JSON ([`io`]) and SVG
//! drawings ([`svg`]).

pub mod constructions;
pub mod geom;
pub mod io;
pub mod model;
pub mod random;
pub mod recolor;
pub mod search;
pub mod svg;
