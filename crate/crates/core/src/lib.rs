//! Reinhardt domains in C², their invariants, and proper holomorphic maps
//! between them.
//!
//! The geometry of a domain is encoded in its logarithmic image, an open
//! convex polyhedral region with integer normals, plus axis attachment data.
//! All invariants that depend on normals alone are computed exactly with
//! integer arithmetic; offsets, radii and map evaluation use a generic
//! [`Real`] scalar.

pub mod domains;
pub mod loggeom;
pub mod maps;
pub mod scalar;
pub mod unimod;
pub mod verify;

pub use num_complex::Complex;
pub use num_rational::Ratio;

pub use domains::{
    Axis, AxisAttachment, AxisSlice, DomainError, ExpHornDomain, InvariantTuple, PolyhedralDomain,
    RadiiSet, SliceShape, Var, Witness,
};
pub use loggeom::{GeomError, HalfPlane, IntMat2, IntVec2, OpenInterval, RecessionCone};
pub use maps::{BlaschkeProduct, MapError, MapKind, MapSpec, ProperPair, TypeOneParams, TypeTwoParams};
pub use scalar::Real;
pub use unimod::{bounding_unimodular, UnimodError};
pub use verify::{
    existence_oracle, fiber_count, ExistenceVerdict, Rule, VerificationReport, VerifyConfig,
};

pub type LogPolyhedron = loggeom::LogPolyhedron<f64>;
pub type ReinhardtDomain = domains::ReinhardtDomain<f64>;
pub type C64 = Complex<f64>;
