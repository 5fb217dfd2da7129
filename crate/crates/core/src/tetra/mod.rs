//! Character inequalities, the distance functional `D`, degree asymptotics
//! of 6j norms and the entropic consequences, for tuples `(a,b,c,d,e,f)`.

pub mod asymptotics;
pub mod distance;
pub mod entropy;
pub mod inequality;
pub mod tuple;

pub use asymptotics::{
    asymptotics_scan, divergence_r, max_label, rank_of_e, rounding_error, sequence_weights, AsymptoticsReport, AsymptoticsRow,
    MaxLabel, Witness,
};
pub use distance::{distance_d, Budget, DistanceCertificate, DistanceMode};
pub use entropy::{entropic_check, hook_ratio_identity, random_psd, random_tetra_sample, random_tetra_sample_with, TetraSample};
pub use inequality::{first_tet_violation, tet_distance_bound, tet_inequality_check, InequalityReport, TripleRecord, SLACK_TOL};
pub use tuple::{SpectrumTuple, TRACE_TOL};
