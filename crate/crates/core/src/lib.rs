//! Exact lattice-point counting polynomials for Delzant lattice polytopes.
//!
//! Given a polytope as half-spaces `⟨x, n_i⟩ ≤ μ_i` with primitive integer
//! normals, this crate computes
//!
//! * the Ehrhart polynomial `#(kΔ ∩ ℤⁿ)` from `Π Td(∂_i)` applied to the
//!   volume polynomial `vol(Δ(λ))`,
//! * the interior polynomial from `Π Td(−∂_i)`,
//! * the boundary polynomial `#(k∂Δ ∩ ℤⁿ)` from
//!   `Π Â(∂_i) · (1/Â)(Σ ∂_i)` applied to `vol(∂Δ(λ))`,
//!
//! all in exact rational arithmetic, and checks them against a brute-force
//! enumeration of lattice points.

pub mod bundled;
pub mod counting;
pub mod error;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod polytope;
pub mod rational;
pub mod report;
pub mod series;
pub mod volume;

pub use counting::{
    boundary_polynomial, boundary_polynomial_by_subtraction, count_lattice_points,
    counting_polynomials, ehrhart_polynomial, interior_polynomial, quantization_weights,
    CountReport, CountingPolynomials, DelzantPolytope, Pipeline, DEFAULT_GUARD,
};
pub use error::{Error, Result};
pub use par::Execution;
pub use poly::{MultiPoly, UniPoly};
pub use polytope::{parse_hrep, HRep, VRep};
pub use rational::Rational;
