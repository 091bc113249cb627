//! Six and seven lines in the plane.

pub mod action;
pub mod canonical;
pub mod configuration;
pub mod cremona;
pub mod f2;
pub mod families;
pub mod seven;
pub mod stability;

pub use action::{
    act, orbit, orbit_classes, quadrangle_census, Action, Group, QuadrangleCensus, W3,
};
pub use canonical::{canonical_form, class_key, equivalent, CanonicalForm, ClassKey};
pub use configuration::{plucker, triple_points, ConfigMatrix, PluckerVector, TriplePoint};
pub use cremona::cremona;
pub use f2::{census, F2Census, Gl3F2};
pub use seven::{
    drop_line, drop_line_via_quadrics, drop_slots, node_report, seven_line_config, smoothness,
    NodeKind, NodeReport, QuadricSystem, Smoothness,
};
pub use stability::{stability, StabilityReport, Status};
