//! Bounds on locally accessible information for bipartite quantum states.
//!
//! The crate provides dense Hermitian-operator primitives (partial transpose,
//! partial traces, norms, entropies), the Werner and isotropic families, the
//! B1/B2 upper bounds and the one-way protocol lower bound on the localisable
//! information rate, closed-form entanglement measures for the two families,
//! and small PPT fidelity programs with dual certificates.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x <= tol)` also rejects NaN

pub mod bounds;
pub mod entropy;
pub mod error;
pub mod families;
pub mod measures;
pub mod operator;
pub mod random;
pub mod sdp;

pub use bounds::{
    b1_general, b2_best, b2_general, b2_optimize_family, b2_optimize_symmetric, closed_form_bounds,
    deficit_bounds, dual_fidelity_bound, dual_fidelity_bound_mixed, information_content,
    r_protocol_general, r_protocol_sup, BoundReport, ClosedFormBounds, Measurement, ReportOptions,
    SigmaStar,
};
pub use entropy::{binary_entropy, relative_entropy, shannon_entropy, von_neumann_entropy};
pub use error::{Error, Result};
pub use families::{registry, twirl_uu, twirl_uustar, Isotropic, StateFamily, Symmetry, Werner};
pub use measures::{ef_isotropic, ef_werner, er_inf_werner, er_isotropic, MeasurePoint};
pub use operator::{BipartiteDims, HermitianOperator, C64};
pub use sdp::{SdpOptions, SdpProblem, SdpResult, Variant};
