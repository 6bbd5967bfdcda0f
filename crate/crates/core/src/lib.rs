//! Geometry engine for weighted-area critical hypersurfaces of
//! Lorentz-Minkowski space.
//!
//! A hypersurface `S` of `L^{n+1}` is alpha-stationary when
//! `H = -alpha <N,p> / |<p,p>|` holds at every point. The crate evaluates
//! that residual on charts, extracts the cleared polynomial of ruled
//! surfaces, ships a catalog of known stationary families and verifies the
//! transport and classification statements built on top of them.

pub mod catalog;
pub mod curve;
pub mod error;
pub mod minkowski;
pub mod ruled;
pub mod surface;
pub mod verifier;

pub use error::{GeomError, Result};
pub use minkowski::{
    causal_class, cone_region, far_from_cone, inversion, inversion_differential, lorentz_cross,
    mink_dot, mink_norm, triple, CausalClass, ConeRegion, MVec,
};
pub use surface::{
    fit_alpha, fundamental_forms, graph_residual, jets_from_position, mean_curvature,
    stationarity_residual, Chart, ChartJet2, FundamentalForms, GraphJet, GraphKind, HyperJet,
    ParamBox, StationaritySigns,
};
