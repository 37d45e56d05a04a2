//! Word problem, Fox calculus, grid flows and geodesics in free solvable
//! groups.
//!
//! The free solvable group `S_{r,d}` is the quotient of the free group of
//! rank `r` by the `d`-th derived subgroup; `d = 1` gives the free abelian
//! group and `d = 2` the free metabelian group `M_r`. This crate provides:
//!
//! * [`words`] — word parsing, free reduction and abelianization;
//! * [`fox`] — abelianized Fox derivatives and the `O(r n log n)` word
//!   problem in `M_r`;
//! * [`solvable`] — prefix partition refinement, Fox derivatives in
//!   `Z S_{r,d}` and the `O(d r n^3)` word problem in `S_{r,d}`;
//! * [`magnus`] — images under the Magnus embedding, with wreath-product
//!   arithmetic over the abelian base;
//! * [`flow`] — geometric flows on the integer grid, the flow/derivative
//!   correspondence and flow realization by path words;
//! * [`steiner`] — exact rectilinear Steiner trees on the Hanan grid;
//! * [`geodesic`] — geodesic words and lengths in `M_r` via minimal
//!   forests and Euler tours, and the bounded geodesic length decision;
//! * [`rstp`] — the encoding of rectilinear Steiner instances as words,
//!   reducing RSTP to bounded geodesic length.
//!
//! The crate is `no_std` (with `alloc`); IO, JSON and the command line
//! live in the companion `freesolv-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod flow;
pub mod fox;
pub mod geodesic;
pub mod magnus;
pub mod rstp;
pub mod solvable;
pub mod steiner;
pub mod words;

pub use error::{Error, Result};
pub use flow::{flow_equal, path_flow, GridEdge, GridFlow};
pub use fox::{fox_abelian, wp_metabelian, AbelianDerivativeMap, AbelianRingElement};
pub use geodesic::{
    bglp, bglp_with_limits, euler_word, geodesic, geodesic_length, geodesic_with_limits,
    minimal_forest, support_components, Forest, ForestMode, GeodesicResult, SupportGraph,
};
pub use magnus::{magnus_image, magnus_is_identity, magnus_multiply, MagnusImage};
pub use rstp::{parse_points, rstp_decide, rstp_encode, RstpInstance};
pub use solvable::{
    abelian_partition, collect_similar_terms, derivative_difference_is_zero, fox_solvable,
    partition, wp_solvable, PartitionFunction, PrefixSet, SolvableRingElement,
};
pub use steiner::{steiner_size, ExactLimits, SteinerTree};
pub use words::{AbelianVector, Letter, Word};
