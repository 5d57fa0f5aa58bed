//! Sample-based checks of properness and the existence decision table.

pub mod checks;
pub mod exhaustion;
pub mod fiber;
pub mod oracle;
pub mod sampling;

pub use checks::{
    check_axis_mapping, check_boundary_escape, check_containment, verify_map, verify_pair, AxisResult,
    ContainmentResult, EscapeResult, FnMap, JoukowskiProduct, PairMap, Verdict, VerificationReport, VerifyConfig,
};
pub use exhaustion::in_compact;
pub use fiber::{fiber_count, FiberError};
pub use oracle::{existence_oracle, ExistenceVerdict, ExistenceWitness, Rule};
pub use sampling::{sample_domain, DomainSampler};
