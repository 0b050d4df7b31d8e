//! Exact-arithmetic toolkit for minimal distances between lattice and
//! rational polytopes in a fixed hypercube.
//!
//! The crate computes exact squared distances between polytopes given by
//! their vertices, produces checkable optimality certificates, evaluates
//! closed-form lower and upper bounds on how close two disjoint lattice
//! `(d,k)`-polytopes can get, generates near-kissing pairs in high
//! dimension, and determines `eps(d,k)` — the smallest distance between two
//! disjoint lattice polytopes in `[0,k]^d` — by exhaustive search over
//! simplex pairs reduced by hypercube symmetry.
//!
//! All arithmetic is exact: squared distances of rational polytopes are
//! rational, and every result is produced and verified as an exact
//! `Rational`.

pub mod bounds;
pub mod construction;
pub mod distance;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod rational;
pub mod search;

pub use error::{Error, Result};
pub use linalg::{gram, Matrix, Vector};
pub use rational::{approx_f64, format_rational, parse_rational, Int, Rational};

pub use distance::{
    cramer_distance_sq, facial_distance, min_distance_sq, min_distance_sq_enumerated,
    verify_certificate, vertex_facet_distance, CramerSystem, DistanceCertificate,
};
pub use geometry::{
    affine_rank, barycentric_membership, lattice_points_in_hyperplane, proper_faces, Barycentric,
    Face, LatticePoint, LatticePolytope,
};
pub use search::{epsilon, EpsilonOptions, EpsilonResult};
