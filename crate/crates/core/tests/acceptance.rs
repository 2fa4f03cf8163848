//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use netrobust_core::attack::{
    betweenness, min_driver_nodes, simulate_attack, AttackMode, AttackSpec, CurveKind, Strategy,
};
use netrobust_core::dataset::{build_experiment1, AttackParams, Exp1Params};
use netrobust_core::mask::{pixel_loss_fraction, pixel_loss_ratio};
use netrobust_core::netgen::{generate, generate_with, NetConfig, Topology};
use netrobust_core::rng::seeded;
use netrobust_core::stats::{mann_whitney_with, threshold_sweep, Alternative, Method};
use rand::Rng;
use rand_distr::{Distribution, Normal};

const MATCHING_GRAPHS: usize = 200;
const MATCHING_TIME_LIMIT: Duration = Duration::from_secs(10);
const BETWEENNESS_GRAPHS: usize = 100;
const BETWEENNESS_TOL: f64 = 1e-9;
const CURVE_FUZZ_GRAPHS: usize = 500;
const MWU_EXACT_TOL: f64 = 1e-9;
const MWU_APPROX_TOL: f64 = 0.02;
const SWEEP_REPLICATIONS: usize = 100;
const SWEEP_MIN_SUCCESS: usize = 95;
const SWEEP_TIME_LIMIT: Duration = Duration::from_secs(60);
const BUILD_TIME_LIMIT: Duration = Duration::from_secs(15 * 60);
const GENERATOR_SEEDS: u64 = 100;
const HEAVY_TAIL_MIN_WINS: usize = 95;
const QS_CHI_SQUARE_MIN_P: f64 = 0.01;

/// Mean NLCC of ER(500, 2000) under 50 averaged random attacks, at removal
/// fractions 0.5 and 0.9, from a pilot run of this check.
const PERCOLATION_REFERENCE: (f64, f64) = (0.9814, 0.1696);
const PERCOLATION_REFERENCE_TOL: f64 = 0.02;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn matching_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(0xA11);
    for i in 0..MATCHING_GRAPHS {
        let n = rng.gen_range(1..=8);
        let density = (i % 9 + 1) as f64 / 10.0;
        let g = common::random_digraph(n, density, &mut rng);
        let expected = n.saturating_sub(common::brute_force_matching(&g)).max(1);
        let got = min_driver_nodes(&g).map_err(|e| e.to_string())?;
        ensure(got == expected, || {
            format!("graph {i} (n={n}): driver nodes {got}, oracle {expected}")
        })?;
    }
    let took = start.elapsed();
    ensure(took < MATCHING_TIME_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "{MATCHING_GRAPHS} graphs exact in {:.2} s",
        took.as_secs_f64()
    ))
}

fn betweenness_oracle() -> Outcome {
    let mut rng = seeded(0xB7);
    let mut worst = 0.0f64;
    for i in 0..BETWEENNESS_GRAPHS {
        let n = rng.gen_range(1..=7);
        let g = common::random_digraph(n, rng.gen_range(0.1..0.9), &mut rng);
        let got = betweenness(&g).map_err(|e| e.to_string())?;
        let want = common::path_enumeration_betweenness(&g);
        for (a, b) in got.iter().zip(&want) {
            worst = worst.max((a - b).abs());
        }
        ensure(worst <= BETWEENNESS_TOL, || {
            format!("graph {i}: deviation {worst:e}")
        })?;
    }
    Ok(format!(
        "{BETWEENNESS_GRAPHS} graphs, max deviation {worst:e}"
    ))
}

fn curve_invariants() -> Outcome {
    let mut rng = seeded(0xC3);
    let mut attacks = 0;
    for i in 0..CURVE_FUZZ_GRAPHS {
        let topology = Topology::ALL[i % 4];
        let n = rng.gen_range(5..=40);
        let k = rng.gen_range(1.0..4.0);
        let g = generate(&NetConfig::new(topology, n, k, rng.gen())).map_err(|e| e.to_string())?;
        for strategy in Strategy::ALL {
            for kind in [CurveKind::Connectivity, CurveKind::Controllability] {
                let mode = if rng.gen_bool(0.5) {
                    AttackMode::Adaptive
                } else {
                    AttackMode::Static
                };
                let spec = AttackSpec::new(strategy, mode, rng.gen());
                let (_, curve) =
                    simulate_attack(&g, &spec, kind, &mut spec.rng()).map_err(|e| e.to_string())?;
                let v = &curve.values;
                ensure(v.len() == n, || format!("graph {i}: length {}", v.len()))?;
                ensure(v[n - 1] == 1.0, || {
                    format!("graph {i}: last value {}", v[n - 1])
                })?;
                for (step, &x) in v.iter().enumerate() {
                    let floor = 1.0 / (n - step) as f64;
                    ensure(x >= floor && x <= 1.0, || {
                        format!("graph {i} {strategy:?} {kind:?}: values[{step}] = {x}")
                    })?;
                }
                attacks += 1;
            }
        }
    }
    Ok(format!("{CURVE_FUZZ_GRAPHS} graphs, {attacks} attacks"))
}

fn pixel_loss() -> Outcome {
    // Percentages in hundredths of a percent.
    for (s, n, hundredths) in [
        (30usize, 1000usize, 9u64),
        (110, 1000, 121),
        (270, 1000, 729),
    ] {
        let (num, den) = pixel_loss_fraction(n, s);
        ensure(num * 10_000 == hundredths * den, || {
            format!("S={s}: {num}/{den} is not {hundredths}/10000")
        })?;
        let ratio = pixel_loss_ratio(n, s);
        ensure(ratio == hundredths as f64 / 10_000.0, || {
            format!("S={s}: ratio {ratio}")
        })?;
    }
    Ok("0.09%, 1.21%, 7.29% exact".into())
}

fn u_test() -> Outcome {
    let mut rng = seeded(0xD5);
    let mut pairs = 0;
    let mut worst_exact = 0.0f64;
    for n in 3..=9usize {
        for m in 3..=(12 - n) {
            pairs += 1;
            for trial in 0..10 {
                // Half the trials draw from a small integer range to force ties.
                let draw = |rng: &mut netrobust_core::rng::Rng| {
                    if trial % 2 == 0 {
                        rng.gen_range(0..4) as f64
                    } else {
                        rng.gen::<f64>()
                    }
                };
                let x: Vec<f64> = (0..n).map(|_| draw(&mut rng)).collect();
                let y: Vec<f64> = (0..m).map(|_| draw(&mut rng)).collect();
                let (greater, two_sided) = common::enumerated_mwu_p(&x, &y);
                for (alt, want) in [
                    (Alternative::Greater, greater),
                    (Alternative::TwoSided, two_sided),
                ] {
                    let r =
                        mann_whitney_with(&x, &y, alt, Method::Exact).map_err(|e| e.to_string())?;
                    if r.degenerate {
                        continue;
                    }
                    worst_exact = worst_exact.max((r.p_value - want).abs());
                    ensure(worst_exact <= MWU_EXACT_TOL, || {
                        format!("n={n} m={m} {alt:?}: p={} oracle {want}", r.p_value)
                    })?;
                }
            }
        }
    }
    let mut worst_approx = 0.0f64;
    for _ in 0..300 {
        let x: Vec<f64> = (0..8).map(|_| rng.gen::<f64>()).collect();
        let y: Vec<f64> = (0..8)
            .map(|_| rng.gen::<f64>() + rng.gen_range(0.0..0.6))
            .collect();
        for alt in [Alternative::Greater, Alternative::TwoSided] {
            let exact = mann_whitney_with(&x, &y, alt, Method::Exact).map_err(|e| e.to_string())?;
            let approx =
                mann_whitney_with(&x, &y, alt, Method::Normal).map_err(|e| e.to_string())?;
            worst_approx = worst_approx.max((exact.p_value - approx.p_value).abs());
        }
    }
    ensure(worst_approx <= MWU_APPROX_TOL, || {
        format!("n=m=8 approximation off by {worst_approx}")
    })?;
    Ok(format!(
        "{pairs} size pairs, exact dev {worst_exact:e}; n=m=8 normal dev {worst_approx:.4}"
    ))
}

/// One replication of the planted-shift sweep. With `paired`, every masked
/// group re-measures the baseline instances plus small noise; otherwise each
/// group is an independent draw.
fn planted_sweep(rng: &mut netrobust_core::rng::Rng, paired: bool) -> Option<usize> {
    let base: Normal<f64> = Normal::new(0.01, 0.002).unwrap();
    let jitter: Normal<f64> = Normal::new(0.0, 0.0002).unwrap();
    let baseline: Vec<f64> = (0..100).map(|_| base.sample(rng).max(0.0)).collect();
    let by_size: BTreeMap<usize, Vec<f64>> = (10..=100)
        .step_by(10)
        .map(|size| {
            let shift = if size >= 50 { 0.05 } else { 0.0 };
            let group = (0..100)
                .map(|i| {
                    let v = if paired {
                        baseline[i] + jitter.sample(rng)
                    } else {
                        base.sample(rng)
                    };
                    (v + shift).max(0.0)
                })
                .collect();
            (size, group)
        })
        .collect();
    threshold_sweep(&by_size, &baseline, 0.05)
        .unwrap()
        .threshold
}

fn sweep_power() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(0xE9);
    let hits = (0..SWEEP_REPLICATIONS)
        .filter(|_| planted_sweep(&mut rng, true) == Some(50))
        .count();
    let independent = (0..SWEEP_REPLICATIONS)
        .filter(|_| planted_sweep(&mut rng, false) == Some(50))
        .count();
    let took = start.elapsed();
    ensure(hits >= SWEEP_MIN_SUCCESS, || {
        format!("recovered S*=50 in {hits}/{SWEEP_REPLICATIONS}")
    })?;
    ensure(took < SWEEP_TIME_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "S*=50 in {hits}/{SWEEP_REPLICATIONS} paired replications ({:.2} s); \
         info: independent groups {independent}/{SWEEP_REPLICATIONS}, about 0.95^4 expected",
        took.as_secs_f64()
    ))
}

fn desk_params(seed: u64) -> Exp1Params {
    Exp1Params {
        n: 100,
        k_avg_list: vec![4.0],
        topologies: Topology::ALL.to_vec(),
        train_per_config: 50,
        test_per_config: 10,
        attack: AttackParams::new(Strategy::Random, AttackMode::Adaptive),
        curve_kind: CurveKind::Controllability,
        mask_sizes: vec![10, 20, 30, 40, 50],
        master_seed: seed,
    }
}

fn determinism() -> Outcome {
    let start = Instant::now();
    let mut hashes = Vec::new();
    for seed in [2024u64, 2024, 2025] {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        build_experiment1(&desk_params(seed), dir.path(), 4).map_err(|e| e.to_string())?;
        hashes.push(common::tree_hash(dir.path()));
    }
    let took = start.elapsed();
    ensure(hashes[0] == hashes[1], || {
        "same seed, different trees".into()
    })?;
    ensure(hashes[0] != hashes[2], || {
        "different seeds, same tree".into()
    })?;
    let per_build = took / 3;
    ensure(per_build < BUILD_TIME_LIMIT, || {
        format!("build took {per_build:?}")
    })?;
    Ok(format!(
        "tree {}.. reproduced, differs under another seed; {:.1} s per build",
        &hashes[0][..12],
        per_build.as_secs_f64()
    ))
}

fn generator_contracts() -> Outcome {
    for t in Topology::ALL {
        for k in [4.0, 7.0, 9.0] {
            for seed in 0..GENERATOR_SEEDS {
                let cfg = NetConfig::new(t, 100, k, seed);
                let g = generate(&cfg).map_err(|e| e.to_string())?;
                ensure(g.edge_count() == cfg.edge_target(), || {
                    format!("{t:?} k={k} seed={seed}: {} edges", g.edge_count())
                })?;
            }
        }
    }

    let sf = NetConfig::new(Topology::ScaleFree, 200, 4.0, 0);
    let er = NetConfig::new(Topology::ErdosRenyi, 200, 4.0, 0);
    let max_deg = |cfg: &NetConfig, seed: u64| {
        let g = generate_with(cfg, &mut seeded(seed)).unwrap();
        g.degrees().total_deg.into_iter().max().unwrap()
    };
    let wins = (0..100u64)
        .filter(|&s| max_deg(&sf, s) > max_deg(&er, 10_000 + s))
        .count();
    ensure(wins >= HEAVY_TAIL_MIN_WINS, || {
        format!("SF heavier tail in only {wins}/100 runs")
    })?;

    let qs = NetConfig::new(Topology::QSnapback, 100, 4.0, 0);
    for seed in 0..GENERATOR_SEEDS {
        let g = generate_with(&qs, &mut seeded(seed)).unwrap();
        ensure((0..99).all(|i| g.has_edge(i, i + 1)), || {
            format!("seed {seed}: chain broken")
        })?;
        let back = g.edges().iter().filter(|(u, v)| u > v).count();
        ensure(back == 301, || format!("seed {seed}: {back} snapbacks"))?;
    }
    let small = NetConfig::new(Topology::QSnapback, 10, 2.0, 0);
    let mut counts = vec![0f64; 45];
    for seed in 0..200u64 {
        for (u, v) in generate_with(&small, &mut seeded(seed)).unwrap().edges() {
            if u > v {
                counts[u * (u - 1) / 2 + v] += 1.0;
            }
        }
    }
    let expected = vec![200.0 * 11.0 / 45.0; 45];
    let p = common::chi_square_p(&counts, &expected);
    ensure(p > QS_CHI_SQUARE_MIN_P, || {
        format!("QS snapback chi-square p = {p}")
    })?;
    Ok(format!(
        "exact M for 4x3x{GENERATOR_SEEDS} networks; SF tail {wins}/100; QS chi-square p={p:.3}"
    ))
}

fn percolation_direction() -> Outcome {
    let g =
        generate(&NetConfig::new(Topology::ErdosRenyi, 500, 4.0, 9)).map_err(|e| e.to_string())?;
    let mut sum = vec![0.0; 500];
    for seed in 0..50 {
        let spec = AttackSpec::new(Strategy::Random, AttackMode::Adaptive, seed);
        let (_, c) = simulate_attack(&g, &spec, CurveKind::Connectivity, &mut spec.rng())
            .map_err(|e| e.to_string())?;
        for (acc, v) in sum.iter_mut().zip(&c.values) {
            *acc += v;
        }
    }
    let half = sum[250] / 50.0;
    let late = sum[450] / 50.0;
    ensure(half > late, || {
        format!("s(0.5)={half} not above s(0.9)={late}")
    })?;
    let (ref_half, ref_late) = PERCOLATION_REFERENCE;
    ensure(
        (half - ref_half).abs() <= PERCOLATION_REFERENCE_TOL
            && (late - ref_late).abs() <= PERCOLATION_REFERENCE_TOL,
        || format!("s(0.5)={half:.4}, s(0.9)={late:.4} drifted from reference"),
    )?;
    Ok(format!("mean s(0.5)={half:.4} > s(0.9)={late:.4}"))
}

fn main() {
    let checks: [Check; 9] = [
        ("matching oracle", matching_oracle),
        ("betweenness oracle", betweenness_oracle),
        ("curve invariants", curve_invariants),
        ("pixel-loss closed forms", pixel_loss),
        ("U-test correctness", u_test),
        ("threshold-sweep power", sweep_power),
        ("dataset determinism", determinism),
        ("generator contracts", generator_contracts),
        ("percolation direction", percolation_direction),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS  criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        checks.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
