//! Computational lab for Cesàro-type integral operators acting on α-Bloch
//! spaces of the unit disk.
//!
//! Functions are represented by truncated Taylor coefficients
//! ([`PowerSeries`]). The operators
//!
//! ```text
//! C_g(f)(z) = ∫₀ᶻ f(w) g(w) / w dw,     g(w) = Σ a_j (1 − b_j w)^(−β) + h(w)
//! ```
//!
//! act exactly in that representation: the coefficient matrix is lower
//! triangular, so truncating before or after applying the operator gives the
//! same coefficients. Seminorms are estimated by sampling the disk on a
//! boundary-clustered polar grid.
//!
//! Modules:
//! - [`series`]: truncated power-series arithmetic.
//! - [`bloch`]: α-Bloch seminorm estimation and growth bounds.
//! - [`operators`]: the operator symbol, application, matrices, spectra and
//!   eigenfunctions.
//! - [`certificates`]: explicit boundedness constants, the (α, β) decision
//!   table and divergence probes.
//! - [`compactness`]: null-sequence and approximant-distance probes.

pub mod bloch;
pub mod certificates;
pub mod compactness;
pub mod error;
pub mod operators;
pub mod series;

pub use error::{LabError, Result};
pub use series::{binomial_series, pochhammer, ComplexScalar, PowerSeries, DEFAULT_ORDER};

pub use bloch::{
    bloch_norm, default_grid, growth_bound, growth_check, seminorm_estimate, standard_grid,
    BlochParams, GrowthReport, SampleGrid, SeminormEstimate,
};
pub use certificates::{
    bound_constant, bound_constant_detail, classify, counterexample_probe, default_t_list,
    one_minus_power_bound, BoundConstant, Classification, ProbeReport, ProbeVerdict, Verdict,
    Witness,
};
pub use compactness::{
    compactness_probe, default_test_family, essential_norm_probe, null_family, DecayReport,
    DecayVerdict, EssNormReport, NullFamily, NullKind, TestFunction,
};
pub use operators::{
    apply_beta_cesaro, apply_generalized, approximate_eigen_probe, compact_approximant,
    eigenfunction_psi, eigenvector, operator_matrix, point_spectrum, preimage_under_cesaro,
    symbol_series, truncated_spectrum, Admissibility, OperatorMatrix, SpectrumReport,
    SymbolGBeta, SymbolTerm,
};
