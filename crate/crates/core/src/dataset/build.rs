//! Experiment I and II dataset builders.
//!
//! Every instance is an independent job whose seeds derive from the master
//! seed and the instance's coordinates, so the output does not depend on the
//! worker count or scheduling. Ground-truth curves always come from the
//! intact network; masks only touch the image.

use std::fs;
use std::io::BufWriter;
use std::path::Path;

use rayon::prelude::*;

use super::manifest::{
    AttackParams, BuildParams, DatasetManifest, Exp1Params, Exp2Params, Experiment, InstanceRecord,
    Role, MANIFEST_FILE, MANIFEST_SCHEMA,
};
use super::rimg::write_image;
use super::seed::derive_seed;
use crate::attack::{
    simulate_attack, write_curve_csv, write_sequence_csv, AttackSpec, CurveKind, RobustnessCurve,
    Strategy,
};
use crate::error::{Error, Result};
use crate::fmtnum::format_g17;
use crate::graph::{write_edge_list, GrayImage};
use crate::mask::{apply_mask, MaskKind, MaskSpec};
use crate::netgen::{generate, NetConfig, Topology};
use crate::rng::seeded;

const SEED_GRAPH: u64 = 0;
const SEED_ATTACK: u64 = 1;
const SEED_MASK: u64 = 2;

#[derive(Debug, Clone, Copy)]
struct Job {
    topology: Topology,
    k_avg: f64,
    role: Role,
    index: usize,
}

impl Job {
    fn stem(&self) -> String {
        format!(
            "{}-k{}-{}-{:05}",
            self.topology.code().to_ascii_lowercase(),
            format_g17(self.k_avg),
            self.role.code(),
            self.index
        )
    }

    fn seed(&self, master: u64, experiment: Experiment, purpose: &[u64]) -> u64 {
        let topo = Topology::ALL
            .iter()
            .position(|&t| t == self.topology)
            .unwrap() as u64;
        let mut idx = vec![
            experiment as u64,
            topo,
            self.k_avg.to_bits(),
            self.role as u64,
            self.index as u64,
        ];
        idx.extend_from_slice(purpose);
        derive_seed(master, &idx)
    }
}

fn jobs(topologies: &[Topology], k_avg_list: &[f64], per_role: &[(Role, usize)]) -> Vec<Job> {
    let mut out = Vec::new();
    for &topology in topologies {
        for &k_avg in k_avg_list {
            for &(role, count) in per_role {
                out.extend((0..count).map(|index| Job {
                    topology,
                    k_avg,
                    role,
                    index,
                }));
            }
        }
    }
    out
}

fn ensure_dirs(out: &Path) -> Result<()> {
    for sub in ["graphs", "curves", "sequences", "images"] {
        let p = out.join(sub);
        fs::create_dir_all(&p).map_err(|e| Error::io(&p, e))?;
    }
    Ok(())
}

fn write_with<F>(path: &Path, f: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<fs::File>) -> std::io::Result<()>,
{
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w).map_err(|e| Error::io(path, e))
}

/// Intact network, its ground truth and the files describing it.
struct Instance {
    job: Job,
    graph_seed: u64,
    attack: AttackSpec,
    image: GrayImage,
    graph_path: String,
    curve_path: String,
    sequence_path: String,
}

fn build_instance(
    job: Job,
    n: usize,
    master: u64,
    experiment: Experiment,
    attack: &AttackParams,
    kind: CurveKind,
    out: &Path,
) -> Result<Instance> {
    let graph_seed = job.seed(master, experiment, &[SEED_GRAPH]);
    let g = generate(&NetConfig::new(job.topology, n, job.k_avg, graph_seed))?;
    let spec = AttackSpec {
        strategy: attack.strategy,
        mode: attack.mode,
        seed: job.seed(master, experiment, &[SEED_ATTACK]),
        recompute_every: attack.recompute_every,
    };
    let mut rng = spec.rng();
    let (sequence, mut curve) = simulate_attack(&g, &spec, kind, &mut rng)?;
    if spec.strategy == Strategy::Random && attack.realizations > 1 {
        let mut sum = curve.values.clone();
        for _ in 1..attack.realizations {
            let (_, c) = simulate_attack(&g, &spec, kind, &mut rng)?;
            sum.iter_mut().zip(&c.values).for_each(|(s, v)| *s += v);
        }
        let r = attack.realizations as f64;
        curve = RobustnessCurve {
            kind,
            values: sum.into_iter().map(|s| s / r).collect(),
        };
    }

    let stem = job.stem();
    let graph_path = format!("graphs/{stem}.edges");
    let curve_path = format!("curves/{stem}.csv");
    let sequence_path = format!("sequences/{stem}.csv");
    write_with(&out.join(&graph_path), |w| write_edge_list(&g, w))?;
    write_with(&out.join(&curve_path), |w| write_curve_csv(&curve, w))?;
    write_with(&out.join(&sequence_path), |w| {
        write_sequence_csv(&sequence, w)
    })?;
    Ok(Instance {
        job,
        graph_seed,
        attack: spec,
        image: g.to_adjacency_image(),
        graph_path,
        curve_path,
        sequence_path,
    })
}

impl Instance {
    /// Writes the (optionally masked) image and returns its manifest entry.
    fn entry(
        &self,
        suffix: &str,
        mask: Option<MaskSpec>,
        kind: CurveKind,
        out: &Path,
    ) -> Result<InstanceRecord> {
        let id = format!("{}{suffix}", self.job.stem());
        let image_path = format!("images/{id}.rimg");
        match &mask {
            Some(m) => write_image(&apply_mask(&self.image, m)?, &out.join(&image_path))?,
            None => write_image(&self.image, &out.join(&image_path))?,
        }
        Ok(InstanceRecord {
            id,
            topology: self.job.topology,
            k_avg: self.job.k_avg,
            instance_index: self.job.index,
            seed: self.graph_seed,
            role: self.job.role,
            attack: self.attack,
            curve_kind: kind,
            mask,
            image_path,
            curve_path: self.curve_path.clone(),
            graph_path: self.graph_path.clone(),
            sequence_path: self.sequence_path.clone(),
        })
    }
}

fn check_common(n: usize, k_avg_list: &[f64], topologies: &[Topology]) -> Result<()> {
    if k_avg_list.is_empty() || topologies.is_empty() {
        return Err(Error::InvalidConfig(
            "need at least one topology and one average degree".into(),
        ));
    }
    for &t in topologies {
        for &k in k_avg_list {
            NetConfig::new(t, n, k, 0).validate()?;
        }
    }
    Ok(())
}

fn check_mask_size(n: usize, s: usize) -> Result<()> {
    if s == 0 || s >= n {
        return Err(Error::InvalidMask(format!(
            "mask size {s} must lie in 1..{n} for n={n}"
        )));
    }
    Ok(())
}

fn run_jobs<T, F>(jobs: &[Job], workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Job) -> Result<T> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("worker pool: {e}")))?;
    pool.install(|| jobs.par_iter().map(|&j| f(j)).collect())
}

fn finish(
    out: &Path,
    experiment: Experiment,
    n: usize,
    master_seed: u64,
    params: BuildParams,
    entries: Vec<Vec<InstanceRecord>>,
) -> Result<DatasetManifest> {
    let manifest = DatasetManifest {
        schema: MANIFEST_SCHEMA,
        master_seed,
        experiment,
        n,
        params,
        entries: entries.into_iter().flatten().collect(),
    };
    manifest.save(&out.join(MANIFEST_FILE))?;
    Ok(manifest)
}

/// Unmasked training set; each test instance is emitted unmasked and once
/// per mask size with a freshly drawn null-mask position.
pub fn build_experiment1(p: &Exp1Params, out: &Path, workers: usize) -> Result<DatasetManifest> {
    check_common(p.n, &p.k_avg_list, &p.topologies)?;
    for &s in &p.mask_sizes {
        check_mask_size(p.n, s)?;
    }
    if p.train_per_config + p.test_per_config == 0 {
        return Err(Error::InvalidConfig("dataset would be empty".into()));
    }
    ensure_dirs(out)?;
    let all = jobs(
        &p.topologies,
        &p.k_avg_list,
        &[
            (Role::Train, p.train_per_config),
            (Role::Test, p.test_per_config),
        ],
    );
    let entries = run_jobs(&all, available_workers(workers), |job| {
        let inst = build_instance(
            job,
            p.n,
            p.master_seed,
            Experiment::I,
            &p.attack,
            p.curve_kind,
            out,
        )?;
        let mut recs = vec![inst.entry("", None, p.curve_kind, out)?];
        if job.role == Role::Test {
            for &s in &p.mask_sizes {
                let mut rng =
                    seeded(job.seed(p.master_seed, Experiment::I, &[SEED_MASK, s as u64]));
                let m = MaskSpec::random(MaskKind::Null, p.n, s, &mut rng)?;
                recs.push(inst.entry(&format!("-s{s}"), Some(m), p.curve_kind, out)?);
            }
        }
        Ok(recs)
    })?;
    finish(
        out,
        Experiment::I,
        p.n,
        p.master_seed,
        BuildParams::I(p.clone()),
        entries,
    )
}

/// Originals plus `masked_per_original` masked variants each, all in the
/// training role. With both kinds requested, even variant indices get a null
/// mask and odd ones a confusion mask.
pub fn build_experiment2(p: &Exp2Params, out: &Path, workers: usize) -> Result<DatasetManifest> {
    check_common(p.n, &p.k_avg_list, &p.topologies)?;
    check_mask_size(p.n, p.mask_size)?;
    let mut kinds = p.mask_kinds.clone();
    kinds.sort();
    kinds.dedup();
    if kinds.is_empty() {
        return Err(Error::InvalidConfig("need at least one mask kind".into()));
    }
    if p.originals_per_config + p.test_per_config == 0 {
        return Err(Error::InvalidConfig("dataset would be empty".into()));
    }
    ensure_dirs(out)?;
    let all = jobs(
        &p.topologies,
        &p.k_avg_list,
        &[
            (Role::Train, p.originals_per_config),
            (Role::Test, p.test_per_config),
        ],
    );
    let s = p.mask_size;
    let entries = run_jobs(&all, available_workers(workers), |job| {
        let inst = build_instance(
            job,
            p.n,
            p.master_seed,
            Experiment::II,
            &p.attack,
            p.curve_kind,
            out,
        )?;
        let mut recs = vec![inst.entry("", None, p.curve_kind, out)?];
        match job.role {
            Role::Train => {
                for j in 0..p.masked_per_original {
                    let kind = kinds[j % kinds.len()];
                    let mut rng =
                        seeded(job.seed(p.master_seed, Experiment::II, &[SEED_MASK, j as u64]));
                    let m = MaskSpec::random(kind, p.n, s, &mut rng)?;
                    recs.push(inst.entry(&format!("-m{j:04}"), Some(m), p.curve_kind, out)?);
                }
            }
            Role::Test => {
                for &kind in &kinds {
                    let mut rng =
                        seeded(job.seed(p.master_seed, Experiment::II, &[SEED_MASK, kind as u64]));
                    let m = MaskSpec::random(kind, p.n, s, &mut rng)?;
                    recs.push(inst.entry(&format!("-s{s}-{kind}"), Some(m), p.curve_kind, out)?);
                }
            }
        }
        Ok(recs)
    })?;
    finish(
        out,
        Experiment::II,
        p.n,
        p.master_seed,
        BuildParams::II(p.clone()),
        entries,
    )
}

fn available_workers(requested: usize) -> usize {
    if requested > 0 {
        requested
    } else {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }
}

/// Entry counts `(train, test)` implied by Experiment I parameters.
pub fn exp1_counts(p: &Exp1Params) -> (usize, usize) {
    let configs = p.topologies.len() * p.k_avg_list.len();
    (
        configs * p.train_per_config,
        configs * p.test_per_config * (1 + p.mask_sizes.len()),
    )
}

/// Entry counts `(train, test)` implied by Experiment II parameters.
pub fn exp2_counts(p: &Exp2Params) -> (usize, usize) {
    let configs = p.topologies.len() * p.k_avg_list.len();
    let mut kinds = p.mask_kinds.clone();
    kinds.sort();
    kinds.dedup();
    (
        configs * p.originals_per_config * (1 + p.masked_per_original),
        configs * p.test_per_config * (1 + kinds.len()),
    )
}
