//! Independent broadcasts on circulant graphs `C(n;1,a)`: exact search,
//! closed-form predictions, explicit constructions and a verification
//! harness that cross-checks them.

pub mod broadcast;
pub mod clique;
pub mod constructions;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod solver;
pub mod verify;

pub use broadcast::{AnalysisReport, AnalysisSet, Axis, Broadcast, SetKind, Witness};
pub use constructions::{construct_witness, reduce_to_2bounded, segment_pattern};
pub use error::{Error, Result};
pub use formulas::{predict_alpha, predict_beta, Kind, Prediction, TheoremId};
pub use graph::{
    closed_form_diameter_1_2, connection_set_equivalent, equivalence_multiplier, CirculantGraph,
    DistanceOracle,
};
pub use solver::{
    broadcast_independence, max_independent_set, verify_lower_bound_mu, LowerBoundCheck,
    SolveResult, SolverConfig,
};
pub use verify::{Status, VerificationRecord};
