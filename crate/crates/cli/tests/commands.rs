use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_fuzzyfix");

struct Run {
    code: i32,
    stderr: String,
    out: tempfile::TempDir,
}

impl Run {
    fn file(&self, name: &str) -> PathBuf {
        self.out.path().join(name)
    }

    fn json(&self, name: &str) -> Value {
        serde_json::from_str(&std::fs::read_to_string(self.file(name)).unwrap()).unwrap()
    }

    fn files(&self) -> Vec<String> {
        let mut names: Vec<String> = std::fs::read_dir(self.out.path())
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        names.sort();
        names
    }
}

fn run(subcommand: &str, document: &str, extra: &[&str]) -> Run {
    let out = tempfile::tempdir().unwrap();
    let config = out.path().join("config.json.in");
    std::fs::write(&config, document).unwrap();
    let target = out.path().join("out");
    let output = Command::new(BIN)
        .arg(subcommand)
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(&target)
        .args(extra)
        .output()
        .unwrap();
    std::fs::remove_file(&config).unwrap();
    std::fs::create_dir_all(&target).unwrap();
    let moved = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(&target).unwrap() {
        let entry = entry.unwrap();
        std::fs::rename(entry.path(), moved.path().join(entry.file_name())).unwrap();
    }
    Run {
        code: output.status.code().unwrap(),
        stderr: String::from_utf8(output.stderr).unwrap(),
        out: moved,
    }
}

const MD: &str = r#"{ "kind": "from_metric", "metric": "euclidean" }"#;

fn banach(name: &str, extra_options: &str) -> String {
    format!(
        r#"{{
  "name": "{name}",
  "space": {MD},
  "tnorm": "product",
  "relation": "trivial",
  "theta": "banach:0.5",
  "map": {{ "name": "banach_ln", "params": ["0.5"] }},
  "x0": "1",
  "options": {{ "t_grid": ["0.5", "1", "2"] {extra_options} }}
}}"#
    )
}

#[test]
fn verify_space_passes_for_md_with_product() {
    let doc = format!(
        r#"{{ "name": "md", "space": {MD}, "tnorm": "product",
             "random_points": {{ "count": "12", "low": "-5", "high": "5" }},
             "options": {{ "t_grid": ["0.5", "1", "3"] }},
             "axioms": ["KM1", "KM2", "KM3", "KM4", "KM5", "non_archimedean", "monotone_in_t"] }}"#
    );
    let r = run("verify-space", &doc, &["--seed", "7"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = r.json("md.report.json");
    assert_eq!(report["passed"], true);
    assert_eq!(report["axioms"].as_array().unwrap().len(), 7);
    assert_eq!(report["points"].as_array().unwrap().len(), 12);
}

#[test]
fn verify_space_reports_the_minimum_norm_witness() {
    let doc = format!(
        r#"{{ "name": "md_min", "space": {MD}, "tnorm": "minimum", "points": ["0", "1", "2"],
             "options": {{ "t_grid": ["1", "2"] }}, "axioms": ["non_archimedean"] }}"#
    );
    let r = run("verify-space", &doc, &[]);
    assert_eq!(r.code, 2);
    let report = r.json("md_min.report.json");
    assert_eq!(report["passed"], false);
    let axiom = &report["axioms"][0];
    assert_eq!(axiom["verdict"], "fail");
    let witness = &axiom["witness"];
    assert_eq!(witness["t"], 1.0);
    let m_xz = witness["m_xz"].as_f64().unwrap();
    let m_xy = witness["m_xy"].as_f64().unwrap();
    let m_yz = witness["m_yz"].as_f64().unwrap();
    assert!((m_xz - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!((m_xy, m_yz), (0.5, 0.5));
}

#[test]
fn malformed_descriptor_writes_nothing() {
    let doc = r#"{ "name": "bad", "space": { "kind": "from_metric", "metric": "taxicab" },
                   "tnorm": "product", "points": ["0", "1", "2"] }"#;
    let r = run("verify-space", doc, &[]);
    assert_eq!(r.code, 4);
    assert!(r.stderr.contains("space.metric"), "{}", r.stderr);
    assert!(r.files().is_empty());

    let r = run("solve", r#"{ "name": "x", "x0": "one" }"#, &[]);
    assert_eq!(r.code, 4);
    assert!(r.files().is_empty());

    let r = run("solve", r#"{ "name": "x", "unexpected": "1" }"#, &[]);
    assert_eq!(r.code, 4);
    assert!(r.files().is_empty());
}

#[test]
fn one_bad_experiment_blocks_the_whole_batch() {
    let doc = format!(
        "[{}, {}]",
        banach("good", ""),
        r#"{ "name": "bad", "space": { "kind": "from_metric", "metric": "euclidean" }, "tnorm": "nope" }"#
    );
    let r = run("solve", &doc, &[]);
    assert_eq!(r.code, 4);
    assert!(r.stderr.contains("bad.tnorm"), "{}", r.stderr);
    assert!(r.files().is_empty());
}

#[test]
fn verify_tnorm_checks_order_and_continuity() {
    let r = run(
        "verify-tnorm",
        r#"{ "name": "prod", "tnorm": "product", "compare_to": "minimum" }"#,
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = r.json("prod.report.json");
    let checks: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert!(checks.contains(&"one_boundary_continuity"));
    assert!(checks.contains(&"below_minimum"));

    let r = run(
        "verify-tnorm",
        r#"{ "name": "min", "tnorm": "minimum", "compare_to": "product" }"#,
        &[],
    );
    assert_eq!(r.code, 2);
    assert_eq!(r.json("min.report.json")["passed"], false);
}

#[test]
fn solve_banach_reaches_zero() {
    let r = run("solve", &banach("banach", ""), &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = r.json("banach.report.json");
    assert_eq!(report["outcome"]["kind"], "fixed_point");
    assert!(report["outcome"]["point"].as_f64().unwrap().abs() < 1e-8);
    let trace = std::fs::read_to_string(r.file("banach.trace.csv")).unwrap();
    let mut lines = trace.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,x_n,M_t0.5,M_t1,M_t2,margin_t0.5,margin_t1,margin_t2"
    );
    assert!(lines.next().unwrap().starts_with("0,1,"));
}

#[test]
fn solve_identity_is_a_hypothesis_violation() {
    let doc = format!(
        r#"{{ "name": "id", "space": {MD}, "tnorm": "product", "relation": "trivial",
             "theta": "psi:sqrt", "map": {{ "name": "identity" }}, "x0": "1",
             "options": {{ "probe_points": ["0", "2"] }} }}"#
    );
    let r = run("solve", &doc, &[]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json("id.report.json")["outcome"]["kind"], "hypothesis_violation");
}

#[test]
fn solve_budget_exhaustion_is_nonconvergent() {
    let r = run("solve", &banach("slow", r#", "max_iterations": "3""#), &[]);
    assert_eq!(r.code, 3);
    assert_eq!(r.json("slow.report.json")["outcome"]["kind"], "nonconvergent");

    let r = run("solve", &banach("slow", ""), &["--max-iter", "3"]);
    assert_eq!(r.code, 3);
}

#[test]
fn nc_demo_on_harmonic_sums_writes_the_witness() {
    let doc = format!(
        r#"{{ "name": "h", "space": {MD}, "sequence": {{ "generator": "harmonic", "length": "2000" }},
             "nc": {{ "t_grid": ["1"], "windows": ["100", "1000"] }} }}"#
    );
    let r = run("nc-demo", &doc, &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let csv = std::fs::read_to_string(r.file("h.nc.csv")).unwrap();
    assert!(csv.starts_with("k,n_k,m_k,M_outer,M_inner,residual_outer,residual_inner\n"));
    assert!(csv.lines().count() > 5);
    let report = r.json("h.report.json");
    assert_eq!(report["verified"], true);
    assert_eq!(report["trend"].as_array().unwrap().len(), 2);
}

#[test]
fn nc_demo_rejects_cauchy_sequences() {
    let doc = format!(
        r#"{{ "name": "c", "space": {MD}, "map": {{ "name": "half" }},
             "sequence": {{ "generator": "picard", "x0": "1", "length": "40" }} }}"#
    );
    let r = run("nc-demo", &doc, &[]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("precondition: not Cauchy"), "{}", r.stderr);
    assert!(r.files().is_empty());
}

#[test]
fn nc_demo_names_the_regularity_check() {
    let values: Vec<String> = (0..60).map(|i| format!("\"{}\"", i % 2)).collect();
    let doc = format!(
        r#"{{ "name": "flip", "space": {MD}, "sequence": {{ "generator": "explicit", "values": [{}] }} }}"#,
        values.join(", ")
    );
    let r = run("nc-demo", &doc, &[]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("asymptotic regularity"), "{}", r.stderr);
}

fn read_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn batch() -> String {
    format!(
        r#"[
  {},
  {{ "name": "sp", "command": "verify-space", "space": {MD}, "tnorm": "product",
     "random_points": {{ "count": "8", "low": "0", "high": "3" }} }},
  {{ "name": "tn", "command": "verify-tnorm", "tnorm": "lukasiewicz" }},
  {{ "name": "nc", "command": "nc-demo", "space": {MD},
     "sequence": {{ "generator": "harmonic", "length": "500" }}, "nc": {{ "t_grid": ["1"] }} }}
]"#,
        banach("bn", "").replacen('{', r#"{ "command": "solve","#, 1)
    )
}

#[test]
fn identical_documents_give_identical_bytes() {
    let a = run("report", &batch(), &["--seed", "3"]);
    let b = run("report", &batch(), &["--seed", "3"]);
    assert_eq!(a.code, b.code);
    let (fa, fb) = (read_all(a.out.path()), read_all(b.out.path()));
    assert!(!fa.is_empty());
    assert_eq!(fa, fb);

    let c = run("report", &batch(), &["--seed", "4"]);
    assert_ne!(a.json("sp.report.json")["points"], c.json("sp.report.json")["points"]);
}

#[test]
fn report_runs_each_experiment_under_its_command() {
    let r = run("report", &batch(), &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(
        r.files(),
        [
            "bn.report.json",
            "bn.trace.csv",
            "nc.nc.csv",
            "nc.report.json",
            "sp.report.json",
            "summary.json",
            "tn.report.json",
        ]
    );
    let summary = r.json("summary.json");
    let commands: Vec<&str> = summary.as_array().unwrap().iter().map(|e| e["command"].as_str().unwrap()).collect();
    assert_eq!(commands, ["solve", "verify-space", "verify-tnorm", "nc-demo"]);
}

#[test]
fn batch_exit_code_is_the_worst_class() {
    let doc = format!("[{}, {}]", banach("ok", ""), banach("slow", r#", "max_iterations": "2""#));
    let r = run("solve", &doc, &[]);
    assert_eq!(r.code, 3);
    assert!(r.file("ok.trace.csv").exists());
    assert!(r.file("slow.trace.csv").exists());
    assert!(!r.file("summary.json").exists());
}

#[test]
fn report_requires_a_command_field() {
    let r = run("report", &banach("nocmd", ""), &[]);
    assert_eq!(r.code, 4);
    assert!(r.stderr.contains("command"), "{}", r.stderr);
}

#[test]
fn shipped_configs_plan_cleanly() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        for cfg in fuzzyfix::config::parse_document(&text).unwrap() {
            let command = fuzzyfix::commands::Command::parse(cfg.command.as_deref().unwrap()).unwrap();
            let planned = fuzzyfix::commands::plan(&cfg, command, &Default::default());
            assert!(planned.is_ok(), "{}: {}", path.display(), cfg.name);
            seen += 1;
        }
    }
    assert!(seen >= 7);
}
