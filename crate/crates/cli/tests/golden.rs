use std::path::{Path, PathBuf};

use ramislope_cli::{emit_report, parse_job, parse_report, run_job, Format};
use ramislope_core::precision::PrecisionPolicy;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn jobs() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "job"))
        .collect();
    v.sort();
    v
}

fn render(job: &Path) -> String {
    let src = std::fs::read(job).unwrap();
    let job = parse_job(&src).unwrap_or_else(|e| panic!("{}: {e}", job.display()));
    emit_report(&run_job(&job, PrecisionPolicy::default()), Format::Json).unwrap()
}

#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let jobs = jobs();
    assert_eq!(jobs.len(), 6);
    for job in jobs {
        let got = render(&job);
        let path = job.with_extension("json");
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap();
        assert!(got == want, "{} differs from its golden report", job.display());
    }
}

#[test]
fn reports_round_trip() {
    for job in jobs() {
        let text = render(&job);
        let report = parse_report(&text).unwrap();
        assert_eq!(emit_report(&report, Format::Json).unwrap(), text);
        let src = std::fs::read(&job).unwrap();
        let direct = run_job(&parse_job(&src).unwrap(), PrecisionPolicy::default());
        assert_eq!(report, direct);
    }
}

#[test]
fn reports_are_deterministic() {
    for job in jobs() {
        assert_eq!(render(&job), render(&job));
    }
}

#[test]
fn schema_file_matches_version() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(schema["properties"]["schema_version"]["const"], "1.0");
    for job in jobs() {
        let report: serde_json::Value = serde_json::from_str(&render(&job)).unwrap();
        assert_eq!(report["schema_version"], schema["properties"]["schema_version"]["const"]);
        let kinds: Vec<&str> = schema["$defs"]["result"]["oneOf"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v["properties"]["kind"]["const"].as_str().unwrap())
            .collect();
        for t in report["tasks"].as_array().unwrap() {
            assert!(kinds.contains(&t["result"]["kind"].as_str().unwrap()));
        }
    }
}
