//! Exact convex geometry for checking refinements of polytopes.
//!
//! Polytopes are given by extreme points with coordinates in an exact
//! ordered field ([`Rational`] or [`QuadScalar`]). On top of that sit
//! convex-form spaces, partial affine maps and their dual form maps, a
//! feature-by-feature verifier for the hexagon refinement, and a scan of the
//! same construction over regular n-gons.

pub mod error;
pub mod form_space;
pub mod hexagon;
pub mod linalg;
pub mod lp;
pub mod ngon;
pub mod polytope;
pub mod refinement;
pub mod scalar;

pub use error::{Error, Result};
pub use form_space::{build_form_space, Form, FormSpace, FormSpaceReport};
pub use hexagon::{
    build_hexagon_instance, build_window_instance, instance_compatibility, verify_features,
    FeatureReport, HexagonInstance, RefinementInstance,
};
pub use linalg::{Matrix, Vector};
pub use lp::{lp_feasible, FarkasCertificate, Feasibility, HSystem};
pub use ngon::{
    full_check, realizable_on_regular_ngon, regular_ngon_vertices, scan, window_pattern, CellCheck,
    ScanReport, ScanRow, Stage, Verdict,
};
pub use polytope::{affine_dependencies, extreme_points, vertices_of_hsystem, Face, VPolytope};
pub use refinement::{
    check_compatibility, make_dual_form_map, make_partial_affine_map, CompatibilityReport,
    DualFormMap, PartialAffineMap,
};
pub use scalar::{CycloElement, QuadScalar, Rational, Scalar, Sign};
