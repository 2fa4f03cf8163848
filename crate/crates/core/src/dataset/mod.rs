//! Reproducible dataset assembly: networks, ground-truth curves, (masked)
//! adjacency images and a JSON manifest describing every entry.

mod build;
mod eval;
mod manifest;
mod rimg;
mod seed;

pub use build::{build_experiment1, build_experiment2, exp1_counts, exp2_counts};
pub use eval::evaluate_predictions;
pub use manifest::{
    AttackParams, BuildParams, DatasetManifest, Exp1Params, Exp2Params, Experiment, InstanceRecord,
    Role, MANIFEST_FILE, MANIFEST_SCHEMA,
};
pub use rimg::{
    decode_rimg, encode_rimg, read_image, write_image, RIMG_HEADER_LEN, RIMG_MAGIC, RIMG_VERSION,
};
pub use seed::derive_seed;
