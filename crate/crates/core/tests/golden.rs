use refilt::presets::{broken_three_generator, uq_sl2};
use refilt::refilter::regularity_report;

fn golden(name: &str) -> String {
    let path = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn uq_sl2_report_matches_golden() {
    let report = regularity_report(uq_sl2().unwrap().data());
    let text = serde_json::to_string_pretty(&report.to_json()).unwrap() + "\n";
    assert_eq!(text, golden("uq_sl2_report.json"));
}

#[test]
fn broken_report_matches_golden() {
    let report = regularity_report(broken_three_generator().unwrap().data());
    let text = serde_json::to_string_pretty(&report.to_json()).unwrap() + "\n";
    assert_eq!(text, golden("broken3_report.json"));
}
