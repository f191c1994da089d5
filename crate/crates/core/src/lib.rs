//! Verification toolkit for log-concavity of `t ↦ |e^t K ∩ L|` for planar
//! symmetric convex shapes.
//!
//! The exact-rational side (geometry, boundary flux, the parallelogram
//! closed forms, violation certificates) never rounds; the dihedral module
//! is floating point because the angle-scaling map is transcendental.

pub mod counterexamples;
pub mod dihedral;
pub mod dynamics;
pub mod geom;
pub mod oracle;
pub mod random;
pub mod reduction;
pub mod scalar;

pub use geom::{convex_hull, hausdorff_distance, intersect, orientation, ConvexPolygon, Point};
pub use scalar::Scalar;
