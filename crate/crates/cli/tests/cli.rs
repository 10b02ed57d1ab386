use std::path::PathBuf;
use std::process::Command;

use maghom_cli::{
    run_args, AnalyzeReport, CarathReport, CoreReport, EquivReport, EulerCheckReport, HomologyReport, Outcome,
    PhiReport, ThinReport, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn maghom(args: &[&str]) -> Outcome {
    run_args(std::iter::once("maghom").chain(args.iter().copied()))
}

fn round_trip<T: Serialize + DeserializeOwned>(out: &Outcome) -> T {
    let parsed: T = serde_json::from_str(&out.stdout).expect("report re-parses");
    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(again, out.stdout, "re-serialisation is byte-identical");
    parsed
}

#[test]
fn analyze_reports_witnesses() {
    let five = data("five_cycle.json");
    assert!(maghom(&["analyze", &five])
        .stdout
        .starts_with("not aligned; 4-cut (v,w,x,y)\n"));
    let diamond = data("diamond.json");
    assert!(maghom(&["analyze", &diamond]).stdout.contains("w,y ∈ [x,z]"));
    let ears = data("square_with_ears.json");
    assert!(maghom(&["analyze", &ears])
        .stdout
        .starts_with("not aligned; 4-cut (x,w,v,y)\n"));
    let path = data("path4.json");
    assert!(maghom(&["analyze", &path]).stdout.starts_with("aligned\n"));
    let single = data("singleton.json");
    assert_eq!(maghom(&["analyze", &single]).stdout, "aligned; inner boundary empty\n");
}

#[test]
fn homology_tables() {
    let out = maghom(&["homology", &data("line4.csv"), "--nmax", "2", "--ky", "--json"]);
    assert_eq!(out.code, EXIT_OK);
    let report: HomologyReport = round_trip(&out);
    let one = maghom::ExactReal::from_int(1);
    assert_eq!(report.table.group(1, &one).unwrap().to_string(), "Z^6");
    assert!(report.ky.unwrap().ok());

    let out = maghom(&["homology", &data("line3.csv"), "--nmax", "2"]);
    let row1 = out.stdout.lines().find(|l| l.starts_with("1 ")).unwrap();
    assert!(row1.contains("Z^4"));

    let out = maghom(&["homology", &data("line4.csv"), "--nmax", "0", "--json"]);
    let report: HomologyReport = round_trip(&out);
    assert_eq!(report.table.cells.len(), 1);
    assert_eq!(report.table.cells[0].n, 0);

    let out = maghom(&["homology", &data("line4.csv"), "--nmax", "2", "--cap", "5"]);
    assert!(out.stdout.contains("uncomputed"));
}

#[test]
fn equivalence_verdicts_and_exit_codes() {
    let a = data("line4.csv");
    let out = maghom(&["equiv", &a, &data("line4_rotated.json"), "--json"]);
    assert_eq!(out.code, EXIT_OK);
    match round_trip::<EquivReport>(&out) {
        EquivReport::Points {
            equivalent,
            lipschitz_verified,
            f,
            ..
        } => {
            assert!(equivalent && lipschitz_verified);
            assert_eq!(f.unwrap().len(), 4);
        }
        other => panic!("{other:?}"),
    }
    let out = maghom(&["equiv", &a, &a]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("f: 0->0 1->1 2->2 3->3"));
    assert_eq!(maghom(&["equiv", &a, &data("line3.csv")]).code, EXIT_MISMATCH);
    let plane = data("fig_plane.json");
    for other in ["fig_hull.json", "fig_ellipse.json"] {
        let out = maghom(&["equiv", &data(other), &plane, "--json"]);
        assert_eq!(out.code, EXIT_OK, "{other}");
        round_trip::<EquivReport>(&out);
    }
    assert_eq!(
        maghom(&["equiv", &data("annulus.json"), &data("two_discs.json")]).code,
        EXIT_MISMATCH
    );
    let mixed = maghom(&["equiv", &data("annulus.json"), &a]);
    assert_eq!(mixed.code, EXIT_INPUT);
    assert!(mixed.stderr.contains("shape2d and points"));
}

#[test]
fn cores_certificates_and_checks() {
    let out = maghom(&["core", &data("annulus.json")]);
    assert!(out.stdout.starts_with("core is the circle centre (0, 0), r^2 = 1"));
    round_trip::<CoreReport>(&maghom(&["core", &data("fig_hull.json"), "--json"]));
    round_trip::<CoreReport>(&maghom(&["core", &data("square.csv"), "--json"]));

    let out = maghom(&["carath", &data("square.csv"), "--point", "1/4,1/2", "--json"]);
    let report: CarathReport = round_trip(&out);
    assert!(report.verified);
    assert_eq!(report.certificate.subset.len(), 3);

    let out = maghom(&["euler-check", &data("two_point.json")]);
    assert_eq!(out.stdout, "match up to ℓ=8\n");
    let report: EulerCheckReport = round_trip(&maghom(&[
        "euler-check",
        &data("five_cycle.json"),
        "--lmax",
        "6",
        "--json",
    ]));
    assert!(report.matches);

    let report: PhiReport = round_trip(&maghom(&["phi-check", &data("line4.csv"), "--seed", "7", "--json"]));
    assert!(report.ok());
    assert!(report.face_relations_checked > 0);

    let thin: ThinReport = round_trip(&maghom(&["thin", &data("line3.csv"), "--json"]));
    assert!(thin.blocks.iter().any(|b| b.n == 2 && b.chains.len() == 4));
    round_trip::<AnalyzeReport>(&maghom(&["analyze", &data("triangle_slits.json"), "--json"]));
}

#[test]
fn determinism() {
    for args in [
        vec!["phi-check", "line4.csv", "--seed", "11", "--samples", "50", "--json"],
        vec!["homology", "five_cycle.json", "--nmax", "2", "--json"],
        vec!["equiv", "fig_ellipse.json", "fig_plane.json", "--json"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.contains('.') { data(a) } else { a.to_string() })
            .collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(maghom(&refs), maghom(&refs));
    }
}

#[test]
fn input_errors() {
    let dir = std::env::temp_dir().join(format!("maghom-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        "{\"type\":\"graph\",\n\"vertices\": 3,\n\"edges\": [[0, 1], [1, \"q\"]]}",
    )
    .unwrap();
    let out = maghom(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
    let csv = dir.join("bad.csv");
    std::fs::write(&csv, "0,0\n1,1/0\n").unwrap();
    let out = maghom(&["analyze", csv.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("line 2, column 3"), "{}", out.stderr);
    let bad_metric = dir.join("metric.json");
    std::fs::write(
        &bad_metric,
        r#"{"type":"finite_metric","dist":[[0,1,5],[1,0,1],[5,1,0]]}"#,
    )
    .unwrap();
    let out = maghom(&["analyze", bad_metric.to_str().unwrap()]);
    assert!(out.stderr.contains("not a metric"), "{}", out.stderr);
    assert_eq!(maghom(&["homology", &data("annulus.json")]).code, EXIT_INPUT);
    assert_eq!(maghom(&["no-such-command"]).code, EXIT_INPUT);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_maghom");
    let ok = Command::new(bin)
        .args(["equiv", &data("line4.csv"), &data("line4.csv")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("equivalent"));
    let not = Command::new(bin)
        .args(["equiv", &data("line4.csv"), &data("line3.csv")])
        .output()
        .unwrap();
    assert_eq!(not.status.code(), Some(EXIT_MISMATCH));
    let bad = Command::new(bin)
        .args(["analyze", "/nonexistent/input.json"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
}
