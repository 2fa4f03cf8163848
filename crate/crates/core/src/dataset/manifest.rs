use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::attack::{AttackMode, AttackSpec, CurveKind, Strategy};
use crate::error::{Error, Result};
use crate::mask::{MaskKind, MaskSpec};
use crate::netgen::Topology;

pub const MANIFEST_SCHEMA: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Experiment {
    I,
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Train,
    Test,
}

impl Role {
    pub fn code(self) -> &'static str {
        match self {
            Role::Train => "train",
            Role::Test => "test",
        }
    }
}

/// Attack applied to every instance of a dataset; seeds are derived per instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttackParams {
    pub strategy: Strategy,
    #[serde(default)]
    pub mode: AttackMode,
    #[serde(default = "one")]
    pub recompute_every: usize,
    /// Random-attack curves are averaged over this many realizations.
    #[serde(default = "one")]
    pub realizations: usize,
}

fn one() -> usize {
    1
}

impl AttackParams {
    pub fn new(strategy: Strategy, mode: AttackMode) -> Self {
        AttackParams {
            strategy,
            mode,
            recompute_every: 1,
            realizations: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Exp1Params {
    pub n: usize,
    pub k_avg_list: Vec<f64>,
    pub topologies: Vec<Topology>,
    pub train_per_config: usize,
    pub test_per_config: usize,
    pub attack: AttackParams,
    pub curve_kind: CurveKind,
    pub mask_sizes: Vec<usize>,
    pub master_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Exp2Params {
    pub n: usize,
    pub k_avg_list: Vec<f64>,
    pub topologies: Vec<Topology>,
    pub originals_per_config: usize,
    pub masked_per_original: usize,
    pub mask_size: usize,
    pub mask_kinds: Vec<MaskKind>,
    /// Held-out instances, each emitted unmasked and once per mask kind.
    #[serde(default)]
    pub test_per_config: usize,
    pub attack: AttackParams,
    pub curve_kind: CurveKind,
    pub master_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BuildParams {
    I(Exp1Params),
    II(Exp2Params),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub id: String,
    pub topology: Topology,
    pub k_avg: f64,
    pub instance_index: usize,
    /// Seed of the network generator for this instance.
    pub seed: u64,
    pub role: Role,
    pub attack: AttackSpec,
    pub curve_kind: CurveKind,
    pub mask: Option<MaskSpec>,
    pub image_path: String,
    pub curve_path: String,
    pub graph_path: String,
    pub sequence_path: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    #[serde(rename = "rnet-manifest")]
    pub schema: u32,
    pub master_seed: u64,
    pub experiment: Experiment,
    pub n: usize,
    pub params: BuildParams,
    pub entries: Vec<InstanceRecord>,
}

impl DatasetManifest {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: DatasetManifest = serde_json::from_str(text)?;
        if m.schema != MANIFEST_SCHEMA {
            return Err(Error::parse(
                "manifest",
                format!("unsupported rnet-manifest version {}", m.schema),
            ));
        }
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn count(&self, role: Role) -> usize {
        self.entries.iter().filter(|e| e.role == role).count()
    }
}
