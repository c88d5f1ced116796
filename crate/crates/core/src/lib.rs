//! Distance-regular graphs, their invariants, and rule-based certificates of
//! the absence of quantum symmetry.

pub mod audit;
pub mod automorphisms;
pub mod certifier;
pub mod drg;
pub mod families;
pub mod graph;
pub mod io;
pub mod knowledge;
pub mod tables;

pub use audit::{audit, AuditReport};
pub use automorphisms::{automorphism_group, AutGroup};
pub use certifier::{
    certify, certify_family, complement_transfer, Certificate, CertifyOptions, Verdict,
};
pub use drg::{is_distance_regular, DrgCheck, IntersectionArray};
pub use families::{build, FamilySpec, NamedGraph};
pub use graph::Graph;
