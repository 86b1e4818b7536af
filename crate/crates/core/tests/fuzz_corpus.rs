//! Replays the checked-in fuzz seeds through the same checks as the fuzz targets.

use std::path::PathBuf;

use concordance::family::{nonconcordance_report, WitnessFamily};
use concordance::knotfile::{parse_knot_file, KnotFile};
use concordance::laurent::from_json;
use concordance::rational::{format_rational, parse_rational};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.display().to_string(), std::fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn knot_file_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("knot_file") {
        if let Ok(desc) = parse_knot_file(&data) {
            let text = KnotFile::from_description(&desc).to_json();
            assert_eq!(parse_knot_file(text.as_bytes()).unwrap(), desc, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted >= 4);
}

#[test]
fn laurent_json_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("laurent_json") {
        let Ok(text) = std::str::from_utf8(&data) else {
            continue;
        };
        if let Ok(p) = from_json(text) {
            let out = serde_json::to_string(&p).unwrap();
            assert_eq!(from_json(&out).unwrap(), p, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn rational_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("rational") {
        let Ok(text) = std::str::from_utf8(&data) else {
            continue;
        };
        if let Ok(r) = parse_rational(text) {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted >= 6);
}

#[test]
fn witness_family_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("witness_family_json") {
        if let Ok(fam) = serde_json::from_slice::<WitnessFamily>(&data) {
            let out = serde_json::to_string(&fam).unwrap();
            assert_eq!(
                serde_json::from_str::<WitnessFamily>(&out).unwrap(),
                fam,
                "{name}"
            );
            if let Ok(report) = nonconcordance_report(&fam) {
                assert_eq!(report.valid, report.certificates.iter().all(|c| c.valid));
            }
            accepted += 1;
        }
    }
    assert!(accepted >= 3);
}
