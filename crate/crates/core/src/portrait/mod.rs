//! Numerical engine: integration on the Poincaré sphere, separatrix tracing,
//! return-map cycle detection, limit-set estimation and portrait rendering.

pub mod cycle;
pub mod integrate;
pub mod limits;
pub mod render;
pub mod separatrix;
pub mod signature;

pub use cycle::{detect_limit_cycle, CycleInfo, CycleSearch};
pub use integrate::{integrate, integrate_plane, Controls, State, Termination, Trajectory};
pub use limits::{limit_set, omega_limits_on_square, LimitSet};
pub use separatrix::{trace_separatrices, Endpoint, Inventory, Separatrix, SeparatrixSkeleton};
pub use signature::{coarse_signature, fine_signature, CoarseSignature, FineSignature};
