use std::path::Path;

use tpsa::harness::cache::Cache;
use tpsa::harness::checks::{run_all, run_check, CheckContext, CheckParams, REGISTRY};
use tpsa::harness::emit_report;
use tpsa::harness::fixture::{canonical_fixtures, load_fixture};
use tpsa::harness::generator::{FixtureGenerator, GeneratorCaps};
use tpsa::harness::search::{search_open_question, QUESTION_IDS};
use tpsa::paction::check_axioms;
use tpsa::report::Status;
use tpsa::ringcore::FactorSpec;
use tpsa::Error;

fn ctx_for<'a>(
    fixture: &'a tpsa::harness::fixture::Fixture,
    key: &'a str,
    cache: &'a Cache,
) -> CheckContext<'a> {
    CheckContext {
        fixture_name: &fixture.name,
        fixture_key: key,
        cache,
        params: CheckParams::default(),
    }
}

#[test]
fn shipped_fixture_files_match_builtins() {
    let files = ["f1.json", "f2.json", "f3.json", "f3p.json", "trivial_global.json"];
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for (builtin, file) in canonical_fixtures().iter().zip(files) {
        let loaded = load_fixture(&dir.join(file)).expect(file);
        assert_eq!(
            serde_json::to_value(&loaded).unwrap(),
            serde_json::to_value(builtin).unwrap(),
            "{file} drifted from the built-in fixture"
        );
        assert_eq!(loaded.content_hash(), builtin.content_hash());
        let act = loaded.to_action().expect(file);
        assert_eq!(check_axioms(&act).status, Status::Pass, "{file}");
    }
}

#[test]
fn content_hashes_distinguish_fixtures() {
    let hashes: Vec<String> =
        canonical_fixtures().iter().map(|f| f.content_hash()).collect();
    for (i, a) in hashes.iter().enumerate() {
        for b in &hashes[i + 1..] {
            assert_ne!(a, b);
        }
    }
}

fn load_text(text: &str) -> tpsa::Result<tpsa::harness::fixture::Fixture> {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixture.json");
    std::fs::write(&path, text).unwrap();
    load_fixture(&path)
}

#[test]
fn malformed_json_is_a_parse_error() {
    match load_text("{ \"name\": ") {
        Err(Error::ParseError(msg)) => assert!(msg.contains("line"), "{msg}"),
        other => panic!("expected ParseError, got {other:?}"),
    }
}

#[test]
fn unknown_field_is_a_schema_error() {
    let text = r#"{"name":"x","presentation":"finite_support",
        "ring":{"factors":[{"kind":"cyclic","modulus":2}]},"bogus":1}"#;
    assert!(matches!(load_text(text), Err(Error::SchemaError(_))));
}

#[test]
fn modulus_one_is_a_schema_error() {
    let text = r#"{"name":"x","presentation":"restricted_global",
        "ring":{"factors":[{"kind":"cyclic","modulus":1}]},
        "automorphism":{"permutation":[0]},"e":[1]}"#;
    assert!(matches!(load_text(text), Err(Error::SchemaError(_))));
}

#[test]
fn non_idempotent_restriction_is_a_schema_error() {
    let text = r#"{"name":"x","presentation":"restricted_global",
        "ring":{"factors":[{"kind":"cyclic","modulus":5}]},
        "automorphism":{"permutation":[0]},"e":[3]}"#;
    let fixture = load_text(text).expect("shape is fine");
    assert!(matches!(fixture.to_action(), Err(Error::SchemaError(_))));
}

#[test]
fn registry_covers_every_canonical_fixture() {
    let cache = Cache::disabled();
    for fixture in canonical_fixtures() {
        let act = fixture.to_action().unwrap();
        let key = fixture.content_hash();
        let (reports, skipped) = run_all(&act, &ctx_for(&fixture, &key, &cache)).unwrap();
        // every registered id appears exactly once, in registry order
        let mut seen: Vec<&str> = reports.iter().map(|r| r.check_id.as_str()).collect();
        seen.extend(skipped.iter().map(|(id, _)| id.as_str()));
        let mut expected: Vec<&str> = REGISTRY.iter().map(|e| e.id).collect();
        seen.sort();
        expected.sort();
        assert_eq!(seen, expected, "{}", fixture.name);
        for r in &reports {
            assert_ne!(r.status, Status::Fail, "{} {}: {:?}", fixture.name, r.check_id, r.items);
            assert_eq!(r.fixture, fixture.name);
        }
        for (_, reason) in &skipped {
            assert!(!reason.is_empty());
        }
    }
}

#[test]
fn run_check_rejects_unknown_and_incompatible() {
    let cache = Cache::disabled();
    let fixture = &canonical_fixtures()[2]; // finite support, no enveloping data
    let act = fixture.to_action().unwrap();
    let key = fixture.content_hash();
    let ctx = ctx_for(fixture, &key, &cache);
    assert!(matches!(run_check("NOPE-0.0", &act, &ctx), Err(Error::UnknownCheck(_))));
    assert!(matches!(
        run_check("MORITA-3.6", &act, &ctx),
        Err(Error::IncompatibleFixture { .. })
    ));
}

#[test]
fn generator_streams_are_deterministic() {
    let mut a = FixtureGenerator::new(11, GeneratorCaps::default());
    let mut b = FixtureGenerator::new(11, GeneratorCaps::default());
    for _ in 0..5 {
        let (fa, _) = a.next_fixture();
        let (fb, _) = b.next_fixture();
        assert_eq!(fa.name, fb.name);
        assert_eq!(fa.content_hash(), fb.content_hash());
    }
    assert_eq!(a.attempts, b.attempts);
    assert_eq!(a.rejected, b.rejected);
}

#[test]
fn generator_caps_filter_matrix_factors() {
    let caps = GeneratorCaps { allow_matrix: false, ..GeneratorCaps::default() };
    let mut gen = FixtureGenerator::new(3, caps);
    for _ in 0..10 {
        let (f, _) = gen.next_fixture();
        assert!(f
            .ring
            .factors
            .iter()
            .all(|f| matches!(f, FactorSpec::Cyclic { .. })));
    }
}

#[test]
fn generator_output_passes_axioms() {
    let mut gen = FixtureGenerator::new(0, GeneratorCaps::default());
    for _ in 0..5 {
        let (_, act) = gen.next_fixture();
        assert_eq!(check_axioms(&act).status, Status::Pass);
    }
}

#[test]
fn cache_hits_match_cold_computation() {
    let dir = tempfile::tempdir().unwrap();
    let warm = Cache::new(Some(dir.path().to_path_buf()), true);
    let cold = Cache::disabled();
    let act = canonical_fixtures()[2].to_action().unwrap();
    let r = &*act.ring;
    let first = warm.lattice("k1", r, 4096).unwrap();
    let second = warm.lattice("k1", r, 4096).unwrap(); // memo/disk hit
    let reference = cold.lattice("k1", r, 4096).unwrap();
    assert_eq!(first.prime_indices, reference.prime_indices);
    assert_eq!(second.prime_indices, reference.prime_indices);
    for (a, b) in first.ideals.iter().zip(&reference.ideals) {
        assert_eq!(a.members, b.members);
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let act = canonical_fixtures()[2].to_action().unwrap();
    let r = &*act.ring;
    {
        let warm = Cache::new(Some(dir.path().to_path_buf()), true);
        warm.lattice("k1", r, 4096).unwrap();
    }
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "garbage").unwrap();
    // fresh cache (no in-process memo) must fall back to recomputation
    let warm = Cache::new(Some(dir.path().to_path_buf()), true);
    let data = warm.lattice("k1", r, 4096).unwrap();
    let reference = Cache::disabled().lattice("k1", r, 4096).unwrap();
    assert_eq!(data.prime_indices, reference.prime_indices);
    let rewritten = std::fs::read_to_string(&entry).unwrap();
    assert_ne!(rewritten, "garbage");
}

#[test]
fn emit_report_duplicates_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let value = serde_json::json!({"a": 1, "b": [2, 3]});
    let text = emit_report(&value, Some(&path)).unwrap();
    assert!(text.ends_with('\n'));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    let reparsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(reparsed, value);
}

#[test]
fn alpha_ideal_search_finds_the_builtin_witness() {
    let cache = Cache::disabled();
    let out = search_open_question("OQ-2.5", 50, 0, &cache).unwrap();
    assert!(!out.budget_exceeded);
    assert_eq!(out.report.status, Status::Reported);
    assert!(out
        .report
        .witnesses
        .iter()
        .any(|w| w["fixture"] == "swap2"));
    for item in &out.report.items {
        assert_eq!(item.status, Status::Reported);
    }
}

#[test]
fn exhausted_witness_search_flags_the_budget() {
    let cache = Cache::disabled();
    let out = search_open_question("OQ-2.16i", 1, 0, &cache).unwrap();
    assert!(out.budget_exceeded);
    assert_eq!(out.report.params["fixtures_scanned"], 1);
}

#[test]
fn table_search_completes_at_budget() {
    let cache = Cache::disabled();
    let out = search_open_question("OQ-3.14", 6, 0, &cache).unwrap();
    assert!(!out.budget_exceeded);
    assert_eq!(out.report.params["fixtures_scanned"], 6);
    let table = out.report.params["table"].as_array().unwrap();
    assert_eq!(table.len(), 6);
}

#[test]
fn unknown_question_is_rejected() {
    let cache = Cache::disabled();
    assert!(matches!(
        search_open_question("OQ-9.9", 1, 0, &cache),
        Err(Error::UnknownCheck(_))
    ));
    for q in QUESTION_IDS {
        assert!(tpsa::harness::search::is_question(q));
    }
}
