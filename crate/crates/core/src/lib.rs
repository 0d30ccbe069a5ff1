//! Spectral analysis of the p-Gramian of finite metric spaces, with closed
//! forms for finite ultrametrics.
//!
//! For points `x_0..x_n` and `p >= 0` the p-Gramian is the `n x n` matrix
//!
//! ```text
//! g_ij = (d(x_i,x_0)^p + d(x_j,x_0)^p - d(x_i,x_j)^p) / 2
//! ```
//!
//! A space has (strict) p-negative type exactly when `G_p` is (strictly)
//! positive semidefinite. For an ultrametric whose smallest nonzero distance
//! is `alpha_1`, and whose base point is not one of exactly two points forming
//! the only coterie, `lambda_min(G_p) = alpha_1^p / 2` with an eigenspace
//! spanned by differences of points sharing a coterie.
//!
//! The crate computes these quantities numerically (cyclic Jacobi) and in
//! closed form, so each can be checked against the other.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod gap;
pub mod generate;
pub mod gramian;
pub mod io;
pub mod linalg;
pub mod metric;
pub mod negtype;
pub mod report;
pub mod ultrametric;

pub use error::{Error, Result};
pub use gap::{estimate_gap_classic, estimate_gap_s, estimate_supremal_negtype, SupremalType};
pub use generate::generate_random_ultrametric;
pub use gramian::{build_gramian, hilbert_embedding, min_eigenpair, psd_check, MinEigenpair};
pub use linalg::{sym_eigen, Spectrum, SymMatrix};
pub use metric::{
    distinct_distances, power_transform, validate, DistanceMatrix, DistanceSpectrum,
    ValidationReport,
};
pub use negtype::{
    check_flat_condition, epsilon_extension, extract_coefficients, gamma_value, negtype_quadratic,
    Extension, GammaExpansion, MetricSummary, SNormalized, WeightVector,
};
pub use ultrametric::{
    closed_form_min_eigenvalue, eigenspace_basis, eigenspace_dimension, eigenspace_membership,
    find_coteries, is_degenerate, reorder_nondegenerate, CoterieDecomposition,
    EigenspaceDescription,
};
