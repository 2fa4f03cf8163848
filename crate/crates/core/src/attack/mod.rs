//! Node-removal attacks and the connectivity / controllability curves they
//! produce.

mod betweenness;
mod io;
mod matching;
mod sim;

pub use betweenness::betweenness;
pub use io::{
    read_curve_csv, read_sequence_csv, write_curve_csv, write_sequence_csv, CURVE_CSV_HEADER,
    SEQUENCE_CSV_HEADER,
};
pub use matching::{
    augmenting_path_matching_size, maximum_matching, maximum_matching_size, min_driver_nodes,
};
pub use sim::{
    averaged_random_curve, curve_value, replay_curve, simulate_attack, AttackMode, AttackSpec,
    CurveKind, RemovalSequence, RobustnessCurve, Strategy,
};
