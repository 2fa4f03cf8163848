use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use netrobust_core::attack::{read_curve_csv, write_curve_csv, CurveKind, RobustnessCurve};
use netrobust_core::dataset::{read_image, DatasetManifest, Role, MANIFEST_FILE};
use netrobust_core::graph::read_edge_list;

fn netrobust(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netrobust"))
        .current_dir(dir)
        .env("NETROBUST_LOG", "warn")
        .args(args)
        .output()
        .unwrap()
}

fn ok(dir: &Path, args: &[&str]) {
    let out = netrobust(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn code(dir: &Path, args: &[&str]) -> i32 {
    netrobust(dir, args).status.code().unwrap()
}

#[test]
fn single_network_workflow() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(
        d,
        &[
            "gen",
            "--topology",
            "er",
            "--n",
            "100",
            "--k",
            "4",
            "--seed",
            "7",
            "--out",
            "g.edges",
        ],
    );
    let g = read_edge_list(std::io::BufReader::new(
        fs::File::open(d.join("g.edges")).unwrap(),
    ))
    .unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (100, 400));

    ok(
        d,
        &[
            "gen",
            "--topology",
            "er",
            "--n",
            "100",
            "--k",
            "4",
            "--seed",
            "7",
            "--out",
            "again.edges",
        ],
    );
    assert_eq!(
        fs::read(d.join("g.edges")).unwrap(),
        fs::read(d.join("again.edges")).unwrap()
    );

    ok(
        d,
        &[
            "attack",
            "--in",
            "g.edges",
            "--strategy",
            "td",
            "--mode",
            "adaptive",
            "--kind",
            "controllability",
            "--out",
            "c.csv",
            "--sequence-out",
            "c.seq.csv",
        ],
    );
    let text = fs::read_to_string(d.join("c.csv")).unwrap();
    let curve = read_curve_csv(text.as_bytes(), CurveKind::Controllability).unwrap();
    assert_eq!(curve.values.len(), 100);
    assert_eq!(curve.values[99], 1.0);
    assert!(d.join("c.seq.csv").exists());

    ok(d, &["image", "--in", "g.edges", "--out", "img.rimg"]);
    ok(
        d,
        &[
            "mask",
            "--in",
            "img.rimg",
            "--kind",
            "confusion",
            "--size",
            "20",
            "--row",
            "5",
            "--col",
            "5",
            "--out",
            "m.rimg",
        ],
    );
    let masked = read_image(&d.join("m.rimg")).unwrap();
    assert_eq!(masked.get(4, 4), 0.5);
    assert_eq!(masked.get(23, 23), 0.5);
    assert_eq!(masked.get(24, 24), g.to_adjacency_image().get(24, 24));

    ok(
        d,
        &[
            "mask", "--in", "img.rimg", "--kind", "null", "--size", "20", "--seed", "3", "--out",
            "r.rimg",
        ],
    );
}

#[test]
fn config_file_supplies_defaults() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    fs::write(
        d.join("net.cfg"),
        "topology = sf\nn = 50\nk_avg = 3\nseed = 11\n",
    )
    .unwrap();
    ok(d, &["gen", "--config", "net.cfg", "--out", "a.edges"]);
    ok(
        d,
        &[
            "gen", "--config", "net.cfg", "--n", "60", "--out", "b.edges",
        ],
    );
    let read = |p: &str| {
        read_edge_list(std::io::BufReader::new(fs::File::open(d.join(p)).unwrap())).unwrap()
    };
    assert_eq!(read("a.edges").edge_count(), 150);
    assert_eq!(read("b.edges").node_count(), 60);
    fs::write(d.join("bad.cfg"), "topology = sf\ncolour = red\n").unwrap();
    assert_eq!(
        code(d, &["gen", "--config", "bad.cfg", "--out", "c.edges"]),
        2
    );
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    // Bad or missing flags.
    assert_eq!(code(d, &["gen", "--frobnicate"]), 2);
    assert_eq!(
        code(
            d,
            &[
                "gen",
                "--topology",
                "er",
                "--n",
                "10",
                "--k",
                "2",
                "--out",
                "x"
            ]
        ),
        2
    );
    assert_eq!(
        code(
            d,
            &[
                "gen",
                "--topology",
                "xx",
                "--n",
                "10",
                "--k",
                "2",
                "--seed",
                "1",
                "--out",
                "x"
            ]
        ),
        2
    );
    // I/O.
    assert_eq!(
        code(d, &["image", "--in", "missing.edges", "--out", "x.rimg"]),
        3
    );
    // Validation.
    assert_eq!(
        code(
            d,
            &[
                "gen",
                "--topology",
                "er",
                "--n",
                "3",
                "--k",
                "1",
                "--seed",
                "1",
                "--out",
                "x"
            ]
        ),
        4
    );
    ok(
        d,
        &[
            "gen",
            "--topology",
            "qs",
            "--n",
            "10",
            "--k",
            "2",
            "--seed",
            "1",
            "--out",
            "q.edges",
        ],
    );
    assert_eq!(
        code(
            d,
            &[
                "attack",
                "--in",
                "q.edges",
                "--strategy",
                "ra",
                "--kind",
                "connectivity",
                "--out",
                "c.csv"
            ]
        ),
        2
    );
    fs::write(d.join("broken.edges"), "# RNET-EDGES v1 N=3 M=2\n0 1\n").unwrap();
    assert_eq!(
        code(d, &["image", "--in", "broken.edges", "--out", "x.rimg"]),
        4
    );
    ok(d, &["image", "--in", "q.edges", "--out", "q.rimg"]);
    assert_eq!(
        code(
            d,
            &[
                "mask", "--in", "q.rimg", "--kind", "null", "--size", "10", "--row", "1", "--col",
                "1", "--out", "m.rimg"
            ]
        ),
        4
    );
}

fn write_prediction(path: &Path, values: Vec<f64>) {
    let mut buf = Vec::new();
    write_curve_csv(
        &RobustnessCurve {
            kind: CurveKind::Connectivity,
            values,
        },
        &mut buf,
    )
    .unwrap();
    fs::write(path, buf).unwrap();
}

#[test]
fn dataset_eval_sweep_and_difftable() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(
        d,
        &[
            "dataset",
            "exp1",
            "--out",
            "exp1",
            "--n",
            "20",
            "--k",
            "3",
            "--topologies",
            "er,qs",
            "--train",
            "2",
            "--test",
            "5",
            "--strategy",
            "tb",
            "--kind",
            "connectivity",
            "--mask-sizes",
            "3:6:3",
            "--seed",
            "5",
            "--workers",
            "2",
        ],
    );
    ok(
        d,
        &[
            "dataset",
            "exp2",
            "--out",
            "exp2",
            "--n",
            "20",
            "--k",
            "3",
            "--topologies",
            "er,qs",
            "--originals",
            "2",
            "--masked",
            "2",
            "--mask-size",
            "6",
            "--test",
            "5",
            "--strategy",
            "tb",
            "--kind",
            "connectivity",
            "--seed",
            "5",
        ],
    );

    for set in ["exp1", "exp2"] {
        let m = DatasetManifest::load(&d.join(set).join(MANIFEST_FILE)).unwrap();
        let preds = d.join(format!("{set}-pred"));
        fs::create_dir_all(&preds).unwrap();
        for e in m.entries.iter().filter(|e| e.role == Role::Test) {
            let text = fs::read_to_string(d.join(set).join(&e.curve_path)).unwrap();
            let truth = read_curve_csv(text.as_bytes(), e.curve_kind).unwrap();
            let err = match e.mask {
                None => 0.01,
                Some(mk) if set == "exp1" && mk.size == 3 => 0.0101,
                Some(_) if set == "exp1" => 0.3,
                Some(mk) if mk.kind == netrobust_core::mask::MaskKind::Confusion => 0.02,
                Some(_) => 0.04,
            } + 0.001 * e.instance_index as f64;
            let values = truth.values.iter().map(|v| (v - err).max(0.0)).collect();
            write_prediction(&preds.join(format!("{}.csv", e.id)), values);
        }
        let pred_dir = format!("{set}-pred");
        let errors = format!("{set}-errors.csv");
        let manifest = format!("{set}/manifest.json");
        ok(
            d,
            &[
                "eval",
                "--manifest",
                &manifest,
                "--predictions",
                &pred_dir,
                "--out",
                &errors,
            ],
        );
    }

    ok(
        d,
        &[
            "sweep",
            "--errors",
            "exp1-errors.csv",
            "--out",
            "sweep.json",
            "--csv",
            "sweep.csv",
        ],
    );
    let sweep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("sweep.json")).unwrap()).unwrap();
    let configs = sweep.as_array().unwrap();
    assert_eq!(configs.len(), 2);
    for c in configs {
        assert_eq!(c["report"]["threshold"], 6);
    }
    let csv = fs::read_to_string(d.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 2);

    ok(
        d,
        &[
            "difftable",
            "--null",
            "exp2-errors.csv",
            "--confusion",
            "exp2-errors.csv",
            "--out",
            "diff.csv",
            "--json",
            "diff.json",
        ],
    );
    let diff: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("diff.json")).unwrap()).unwrap();
    assert_eq!(diff["positive_count"], 2);
    assert_eq!(diff["negative_count"], 0);
    let rows = fs::read_to_string(d.join("diff.csv")).unwrap();
    assert_eq!(rows.lines().count(), 3);
}

#[test]
fn every_subcommand_has_help() {
    let tmp = tempfile::tempdir().unwrap();
    for sub in [
        &["gen"][..],
        &["image"],
        &["attack"],
        &["mask"],
        &["dataset", "exp1"],
        &["dataset", "exp2"],
        &["eval"],
        &["sweep"],
        &["difftable"],
    ] {
        let mut args = sub.to_vec();
        args.push("--help");
        let out = netrobust(tmp.path(), &args);
        assert!(out.status.success(), "{sub:?}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("Usage:"));
    }
}
