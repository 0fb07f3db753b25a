//! Lombardi drawings: graph drawings whose edges are circular arcs and whose
//! vertices have perfect angular resolution.
//!
//! The crate is organized as a small geometry kernel ([`euclid`],
//! [`hyperbolic`]), a graph model ([`graph`], [`decompose`]), one module per
//! layout engine ([`circular`], [`degenerate`], [`halin`], [`spiro`]) and an
//! independent checker ([`verify`]). Drawings can be stored as JSON
//! ([`io`]) and rendered to SVG ([`render`]).

pub mod euclid;
pub mod circular;
pub mod cli;
pub mod decompose;
pub mod degenerate;
pub mod drawing;
pub mod graph;
pub mod halin;
pub mod hyperbolic;
pub mod io;
pub mod render;
pub mod spiro;
pub mod verify;
