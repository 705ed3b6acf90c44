//! Exact computations on toric Fano 3-folds given by lattice polytopes:
//! polytopes and their polars, affine toric charts and their singularities,
//! M-graded T¹ modules glued by a Čech complex, Q-Gorenstein deformation
//! hulls with their invariant rings, and classical periods of Laurent
//! polynomials.
//!
//! All arithmetic is exact.

pub mod deformation;
pub mod error;
pub mod fixtures;
pub mod graded_t1;
pub mod lattice_algebra;
pub mod period;
pub mod polytope;
mod serde_util;
pub mod toric_charts;

pub use deformation::{
    assemble_hull, build_group_action, hull_for_polytope, invariant_generators,
    invariant_hilbert_function, verify_invariant_presentation, ActionGenerator, GroupAction,
    HullPresentation, HullReport, InvariantCertificate, VanishingAssumptions,
};
pub use error::{Error, Result};
pub use graded_t1::{
    cech_h0_h1, global_t1, partition, restriction, t1_for_chart, CechCohomology, CechData,
    DegreeClass, GlobalT1, GradedLinearMap, Label, RayFamilyModule,
};
pub use lattice_algebra::{IntMatrix, IntVector, Integer, QVector, Rational};
pub use period::{classical_period, classical_period_split, LaurentPolynomial, PeriodSeries};
pub use polytope::{Facet, FanoReport, LatticePolytope, MatrixGroup, RationalPolytope};
pub use toric_charts::{
    chart_atlas, ChartAtlas, ChartKind, ChartPresentation, ChartReport, Cone, QuotientType,
};
