use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gbclab_cli::domain::{Domain, DomainFile};
use gbclab_cli::error::CliError;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn gbclab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbclab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(o)).unwrap()
}

fn polygon_fixtures() -> Vec<PathBuf> {
    ["square.json", "triangle.json", "notch_0.1.json", "hexagon.json"].map(fixture).to_vec()
}

fn barycentric(t: [[f64; 2]; 3], x: [f64; 2]) -> [f64; 3] {
    let det = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let total = det(t[0], t[1], t[2]);
    [det(x, t[1], t[2]) / total, det(t[0], x, t[2]) / total, det(t[0], t[1], x) / total]
}

#[test]
fn triangle_coordinates_are_barycentric_on_the_grid() {
    let path = fixture("triangle.json");
    let o = gbclab(&["coords", path.to_str().unwrap(), "--vertex", "0", "--grid", "15", "--level", "3"]);
    let v = json(&o);
    let tri = [[0.1, -0.2], [1.3, 0.4], [0.2, 0.9]];
    let samples = v["samples"].as_array().unwrap();
    assert!(samples.len() > 20);
    for s in samples {
        let x = [s["point"][0].as_f64().unwrap(), s["point"][1].as_f64().unwrap()];
        let l = s["lambda"][0].as_f64().unwrap();
        assert!((l - barycentric(tri, x)[0]).abs() < 1e-6, "{x:?}: {l}");
    }
}

#[test]
fn square_axiom_report_passes() {
    let path = fixture("square.json");
    let v = json(&gbclab(&["coords", path.to_str().unwrap(), "--level", "4"]));
    let a = &v["axioms"];
    for key in ["partition_of_unity", "linear_completeness", "linear_precision", "invariance"] {
        assert!(a[key].as_f64().unwrap() < 1e-8, "{key}: {}", a[key]);
    }
    assert_eq!(a["interpolation"].as_f64().unwrap(), 0.0);
    assert!(v["passed"].as_array().unwrap().iter().all(|b| b.as_bool().unwrap()));
    assert_eq!(v["samples"][0]["lambda"].as_array().unwrap().len(), 4);
}

#[test]
fn bad_json_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"kind\": \"polygon\", \"vertices\": [[0, 0], [1, 0]").unwrap();
    let out = dir.path().join("out.json");
    let o = gbclab(&["coords", bad.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!out.exists());
    let msg = String::from_utf8(o.stderr).unwrap();
    assert!(msg.contains("line 1"), "{msg}");
}

#[test]
fn invalid_domains_exit_2_with_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("bowtie.json", r#"{"kind": "polygon", "vertices": [[0, 0], [1, 1], [1, 0], [0, 1]]}"#, "vertices"),
        (
            "faces.json",
            r#"{"kind": "polyhedron", "vertices": [[0,0,0],[1,0,0],[0,1,0],[0,0,1]], "faces": [[0,1,7]]}"#,
            "faces[0][2]",
        ),
        ("extra.json", r#"{"kind": "polygon", "vertices": [], "colour": 1}"#, "colour"),
        ("kind.json", r#"{"kind": "sphere"}"#, "sphere"),
    ];
    for (name, text, needle) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        let o = gbclab(&["audit", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        let msg = String::from_utf8(o.stderr).unwrap();
        assert!(msg.contains(needle), "{name}: {msg}");
    }
    let o = gbclab(&["coords", fixture("octahedron.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = gbclab(&["coords", fixture("square.json").to_str().unwrap(), "--vertex", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn audit_reports_circumradii() {
    let square = json(&gbclab(&["audit", fixture("square.json").to_str().unwrap()]));
    assert!((square["ratio"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    let notch = json(&gbclab(&["audit", fixture("notch_0.1.json").to_str().unwrap()]));
    // Circle through (-1, 0), (1, 0), (0, eps): radius (1 + eps^2) / (2 eps).
    let eps: f64 = 0.1;
    let r = notch["max_circumradius"].as_f64().unwrap();
    assert!((r - (1.0 + eps * eps) / (2.0 * eps)).abs() < 1e-12, "{r}");
    assert!((r - 5.05).abs() < 1e-12);
    assert!(notch["longest_edge_on_boundary"].as_bool().unwrap());
    for path in polygon_fixtures() {
        let v = json(&gbclab(&["audit", path.to_str().unwrap()]));
        assert!(v["walk_lemma_ok"].as_bool().unwrap(), "{}", path.display());
        let ratio = v["max_circumradius"].as_f64().unwrap() / v["diameter"].as_f64().unwrap();
        assert!((ratio - v["ratio"].as_f64().unwrap()).abs() < 1e-15);
    }
}

fn parse_csv(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,param,dist,h1_error,h2_seminorm,ratio,paper_bound,max_circumradius"
    );
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn summary_value(summary: &str, key: &str) -> f64 {
    let rest = &summary[summary.find(key).unwrap() + key.len()..];
    rest.split_whitespace().next().unwrap().trim_end_matches(',').parse().unwrap()
}

#[test]
fn convex2d_family_csv_and_slope() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c2.csv");
    let o = gbclab(&["family", "--family", "convex2d", "--params", "0.2,0.1,0.05", "--level", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = parse_csv(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 3);
    let mut previous = f64::INFINITY;
    for (row, h) in rows.iter().zip([0.2, 0.1, 0.05]) {
        assert_eq!(row.len(), 8);
        assert_eq!(row[0], "convex2d");
        let param: f64 = row[1].parse().unwrap();
        assert_eq!(param, h);
        assert!(param < previous);
        previous = param;
        // Linear interpolant of x^2 on the triangle: error^2 = 1/(32h) + h/12.
        let err: f64 = row[3].parse().unwrap();
        let want = 1.0 / (32.0 * h) + h / 12.0;
        assert!((err * err - want).abs() < 1e-9 * want, "{h}: {}", err * err);
        assert!(row[1].contains('e') && row[3].split('e').next().unwrap().len() == 18);
    }
    let slope = summary_value(&stdout(&o), "slope ");
    assert!((slope + 0.5).abs() < 0.05, "{slope}");
}

#[test]
fn nonconvex3d_ratio_spread_is_small() {
    let o = gbclab(&["family", "--family", "nonconvex3d", "--params", "0.1,0.05,0.025", "--level", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = parse_csv(&stdout(&o));
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[7].is_empty()));
    let summary = String::from_utf8(o.stderr).unwrap();
    let spread = summary_value(&summary, "ratio spread ");
    assert!(spread < 1.2, "{summary}");
    let ratios: Vec<f64> = rows.iter().map(|r| r[5].parse().unwrap()).collect();
    let (max, min) = (ratios.iter().cloned().fold(0.0, f64::max), ratios.iter().cloned().fold(f64::INFINITY, f64::min));
    assert!((max / min - spread).abs() < 1e-4);
}

#[test]
fn family_usage_errors_exit_2() {
    for args in [
        vec!["family", "--family", "convex2d", "--params", ""],
        vec!["family", "--family", "bogus", "--params", "0.1"],
        vec!["family", "--family", "convex2d", "--params", "0.1,0.2"],
        vec!["family", "--family", "convex2d", "--params", "0.1,x"],
        vec!["family", "--family", "classP", "--params", "1"],
        vec!["family", "--family", "convex2d"],
        vec!["verify", "--suite", "nope"],
    ] {
        assert_eq!(gbclab(&args).status.code(), Some(2), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_gbclab"))
        .args(["verify", "--suite", "walk", "--cases", "1"])
        .env("GBCLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_of_range_member_exits_3() {
    let o = gbclab(&["family", "--family", "convex2d", "--params", "5,0.1", "--level", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let rows = parse_csv(&stdout(&o));
    assert_eq!(rows[0][3], "NaN");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = gbclab(&["family", "--family", "nonconvex2d", "--params", "0.2,0.1", "--level", "3", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(out).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));
    let v = |seed: &str| stdout(&gbclab(&["--seed", seed, "verify", "--suite", "tetquality", "--cases", "500"]));
    assert_eq!(v("7"), v("7"));
    assert_ne!(v("7"), v("8"));
    let c = |seed: &str| stdout(&gbclab(&["--seed", seed, "coords", fixture("hexagon.json").to_str().unwrap(), "--level", "2"]));
    assert_eq!(c("3"), c("3"));
}

#[test]
fn verify_suites_pass() {
    for suite in ["walk", "adjacent", "tetquality", "flattening"] {
        let o = gbclab(&["verify", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&o.stderr));
        let text = stdout(&o);
        assert!(text.trim_end().ends_with("0 counterexamples"), "{suite}");
    }
    let walk = stdout(&gbclab(&["verify", "--suite", "walk"]));
    assert_eq!(walk.lines().filter(|l| l.starts_with("walk case")).count(), 500);
    let adjacent = stdout(&gbclab(&["verify", "--suite", "adjacent"]));
    assert_eq!(adjacent.lines().filter(|l| l.starts_with("adjacent case")).count(), 1000);
    assert!(adjacent.contains("adjacent flipped kite rejected: ok"));
    let flat = stdout(&gbclab(&["verify", "--suite", "flattening"]));
    let sups: Vec<f64> = flat
        .lines()
        .filter_map(|l| l.split("sup |b'| ").nth(1))
        .map(|s| s.trim_end_matches(": ok").parse().unwrap())
        .collect();
    assert_eq!(sups.len(), 100);
    assert!(sups.iter().all(|&s| s < 5.5));
}

#[test]
fn octahedron_is_a_class_member() {
    let path = fixture("octahedron.json");
    let o = gbclab(&["verify", "--suite", "classP", "--gamma-star", "10", "--domain", path.to_str().unwrap(), "--cases", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o).lines().next().unwrap().to_string();
    // Eight faces and six vertices, both below pi * 10^2.
    assert!(line.starts_with("classP fixture: member"), "{line}");
    assert!(line.contains("8 faces, 6 vertices"));
    assert!(line.ends_with("ok"));
}

#[test]
fn domain_files_round_trip_bit_exactly() {
    let awkward = [0.1 + 0.2, std::f64::consts::PI, 1e-300, -2.5e17, 1.0 / 3.0, 5e-324];
    let vertices = vec![[0.0, 0.0], [awkward[0], awkward[5]], [awkward[1], awkward[2]], [awkward[3], awkward[4]]];
    let file = DomainFile::Polygon { vertices: vertices.clone() };
    let back = DomainFile::parse(&file.to_json()).unwrap();
    assert_eq!(back, file);
    if let DomainFile::Polygon { vertices: v } = &back {
        for (a, b) in v.iter().flatten().zip(vertices.iter().flatten()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }
    let path = fixture("octahedron.json");
    let Domain::Polyhedron(p) = Domain::load(&path).unwrap() else { panic!("expected a polyhedron") };
    let written = DomainFile::from_polyhedron(&p);
    let reread = DomainFile::parse(&written.to_json()).unwrap();
    assert_eq!(reread, written);
    let Domain::Polyhedron(q) = reread.to_domain().unwrap() else { panic!("expected a polyhedron") };
    assert_eq!(q.vertices(), p.vertices());
    assert_eq!(q.faces(), p.faces());
    let Domain::Polygon(sq) = Domain::load(&fixture("square.json")).unwrap() else { panic!("expected a polygon") };
    let again = DomainFile::parse(&DomainFile::from_polygon(&sq).to_json()).unwrap().to_domain().unwrap();
    let Domain::Polygon(again) = again else { panic!("expected a polygon") };
    assert_eq!(again.vertices(), sq.vertices());
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(CliError::Counterexample(String::new()).code(), 1);
    assert_eq!(CliError::usage("x").code(), 2);
    assert_eq!(CliError::numerical("x").code(), 3);
}
