use std::sync::Arc;

use bruhat::rpoly::RtildeCache;
use bruhat::sweep::{run_sweep, Executor, Mode, SweepConfig, SweepReport};
use bruhat::CheckKind;

fn body(report: &SweepReport) -> String {
    report
        .records
        .iter()
        .map(|r| r.to_json_line() + "\n")
        .collect()
}

fn all_checks(n: usize) -> SweepConfig {
    SweepConfig::new(n, Mode::Exhaustive, CheckKind::ALL.to_vec())
}

#[test]
fn warm_cache_and_cold_memory_give_identical_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rtilde.jsonl");
    let config = all_checks(3);

    let cold = run_sweep(
        &config,
        Arc::new(RtildeCache::in_memory()),
        Executor::Sequential,
    )
    .unwrap();
    {
        let cache = Arc::new(RtildeCache::open(&path).unwrap());
        run_sweep(&config, cache.clone(), Executor::Sequential).unwrap();
        cache.flush().unwrap();
        assert!(!cache.is_empty());
    }
    let warm_cache = Arc::new(RtildeCache::open(&path).unwrap());
    let loaded = warm_cache.len();
    assert!(loaded > 0);
    let warm = run_sweep(&config, warm_cache.clone(), Executor::Sequential).unwrap();
    assert_eq!(body(&cold), body(&warm));
    assert_eq!(warm_cache.len(), loaded, "a warm run computes nothing new");
    assert!(!cold.has_failures());
}

#[test]
fn repeated_runs_are_byte_identical_apart_from_the_start_time() {
    let mut config = SweepConfig::new(
        5,
        Mode::Sample,
        vec![CheckKind::Congettura, CheckKind::StrongDs],
    );
    config.seed = Some(42);
    config.sample_size = 30;
    config.max_interval_size = Some(40);
    let a = run_sweep(
        &config,
        Arc::new(RtildeCache::in_memory()),
        Executor::Sequential,
    )
    .unwrap();
    let b = run_sweep(
        &config,
        Arc::new(RtildeCache::in_memory()),
        Executor::Sequential,
    )
    .unwrap();
    assert_eq!(body(&a), body(&b));
    assert_eq!(a.header["fingerprint"], b.header["fingerprint"]);
    let mut other = config.clone();
    other.seed = Some(43);
    assert_ne!(config.fingerprint(), other.fingerprint());
}

#[test]
fn parallel_and_sequential_executors_agree_on_s4() {
    let config = all_checks(4);
    let seq = run_sweep(
        &config,
        Arc::new(RtildeCache::in_memory()),
        Executor::Sequential,
    )
    .unwrap();
    let par = run_sweep(
        &config,
        Arc::new(RtildeCache::in_memory()),
        Executor::Parallel { threads: Some(2) },
    )
    .unwrap();
    assert_eq!(body(&seq), body(&par));
}

#[test]
fn json_report_starts_with_a_header_line() {
    let report = run_sweep(
        &SweepConfig::new(2, Mode::Exhaustive, vec![CheckKind::Dyer]),
        Arc::new(RtildeCache::in_memory()),
        Executor::Sequential,
    )
    .unwrap();
    let mut out = Vec::new();
    report.write_json(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["config"]["n"], 2);
    assert!(header["fingerprint"].as_str().unwrap().len() == 64);
    assert_eq!(lines.count(), report.records.len());
}
