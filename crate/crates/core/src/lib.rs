//! Quaternionic polynomial algebra and the geometry of its critical points.
//!
//! The crate provides the ring `H[X]` of one-variable polynomials over the
//! quaternions with right-side coefficients, left-root extraction through
//! the normal polynomial, planar and circular convex hulls, per-plane slice
//! hulls and their union (the snail), Cauchy-type coefficient bounds on root
//! norms, and the classification machinery that separates polynomials whose
//! critical points stay inside the circular root hull from those that
//! escape it.

pub mod bounds;
pub mod croots;
pub mod error;
pub mod format;
pub mod glverify;
pub mod hull2d;
pub mod qpoly;
pub mod qroots;
pub mod quat;
pub mod snail;
mod util;

pub use bounds::{BoundReport, EstimateComparison};
pub use croots::{CPoly, CRoot, CRootList};
pub use error::{Error, Result};
pub use glverify::{CounterexampleFamily, GLReport, TheoremWitness};
pub use hull2d::Hull2D;
pub use qpoly::{QPoly, RealPoly};
pub use qroots::RootSet;
pub use quat::{ImUnit, Quaternion, Sphere};
pub use snail::{SliceHull, SliceRegion, SnailConfig, SnailMembership, SnailWitness};
pub use util::thread_cap;
