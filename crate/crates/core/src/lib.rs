//! Constructive Kleinian-group toolkit on the Riemann sphere.
//!
//! The crate is organized around six layers:
//!
//! - [`moebius`]: normalized Moebius transformations, classification, fixed
//!   points, spherical derivatives, and parameterized loxodromic families.
//! - [`sphere`]: round circles/disks as spherical caps, chordal metric,
//!   tangency/disjointness predicates, invariant arcs and strips.
//! - [`group`]: marked groups, reduced-word enumeration, ping-pong and
//!   freeness checks, limit-set sampling, upper-half-space geometry, and
//!   collar estimates.
//! - [`combination`]: precise invariance, cyclic amalgamation and HNN
//!   extension checkers with margin certificates, parabolic tangent disks.
//! - [`handles`]: one-handle attachment by translation-length search and the
//!   tangent disk-chain extension with parabolic tuning of the cusp word.
//! - [`cantor`]: nested handle iterations with branching/diameter
//!   certificates, bilipschitz ledgers, and injectivity-radius witnesses.
//!
//! File formats (group files, point clouds, certificates, tree exports) live
//! in [`io`].

pub mod cantor;
pub mod combination;
pub mod error;
pub mod group;
pub mod handles;
pub mod io;
pub mod moebius;
pub mod sphere;

pub use error::{Error, Result};
pub use moebius::{MapClass, Moebius, SpherePoint};
pub use sphere::{Circle, Disk, Side};
