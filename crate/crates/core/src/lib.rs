//! Topological-conjugacy invariants for maps with a pseudolinear attracting
//! boundary component, instantiated for complex polynomials on the basin of
//! infinity.
//!
//! The invariant is a [`graph::InvariantCertificate`]: the map degree plus
//! a distinguishing graph, i.e. critical labels `(d, n, C C̄)` placed on
//! `[0, 1)` by their fractional timeline coordinate. Two maps are
//! conjugate on their basins exactly when their certificates are
//! equivalent.
//!
//! * [`fraction`], [`label`], [`graph`]: the exact combinatorial core.
//! * [`portrait`], [`covering`]: symbolic critical portraits and the
//!   component numbering that turns them into certificates.
//! * [`poly`]: Green's function, external angles and portraits of actual
//!   polynomials.
//! * [`oracle`]: a grid flood-fill cross-check of the combinatorics.
//! * [`render`]: SVG pictures of level curves, rays and band components.
//! * [`cli`], [`config`]: the `dgraph` command line.

pub mod angle;
pub mod cli;
pub mod config;
pub mod covering;
pub mod fraction;
pub mod graph;
pub mod label;
pub mod oracle;
pub mod poly;
pub mod render;
pub mod portrait;

pub use covering::{build_certificate, Orientation};
pub use graph::{certificates_equivalent, DistinguishingGraph, InvariantCertificate};
