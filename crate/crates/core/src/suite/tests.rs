use std::path::PathBuf;

use super::*;
use crate::fincat::MorphismDoc;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sigmacat-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn shipped_corpus_matches_the_generator() {
    let dir = corpus_dir();
    if std::env::var_os("SIGMACAT_BLESS").is_some() {
        write_bundled(&dir).unwrap();
    }
    for (name, f) in bundled() {
        let on_disk = std::fs::read(dir.join(format!("{name}.json"))).unwrap_or_default();
        assert!(on_disk == fixture_bytes(&f), "{name}.json is stale; rerun with SIGMACAT_BLESS=1");
    }
}

#[test]
fn bundled_corpus_covers_every_kind() {
    let c = bundled_corpus().unwrap();
    assert!(c.n_fixtures() >= 12);
    assert!(c.diagrams.iter().filter(|d| d.lex).count() >= 2);
    assert!(c.representables.len() >= 2);
    assert!(c.idempotents.len() >= 2);
    assert!(!c.maps.is_empty() && !c.commutations.is_empty());
    let names: Vec<&str> = c.indices.iter().map(|i| i.name.as_str()).collect();
    for n in ["terminal", "poset_top", "poset_bottom", "chain3", "discrete2", "parallel_pair", "iso_hom"] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn every_lemma_passes_on_the_bundled_corpus() {
    let report = verify_suite(&bundled_corpus().unwrap());
    assert!(report.passed(), "{}", report.human());
    for l in &report.lemmas {
        assert!(l.checked > 0, "{}", l.lemma);
    }
    assert_eq!(report.lemmas.len(), LEMMAS.len());
}

#[test]
fn loading_from_disk_round_trips() {
    let dir = temp_dir("roundtrip");
    let n = write_bundled(&dir).unwrap();
    let c = Corpus::load(&dir).unwrap();
    assert_eq!(c.n_fixtures(), n);
    let mem = bundled_corpus().unwrap();
    assert_eq!(c.entries, mem.entries);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn empty_corpus_warns() {
    let dir = temp_dir("empty");
    let report = verify_suite(&Corpus::load(&dir).unwrap());
    assert!(report.passed());
    assert_eq!(report.fixtures.len(), 0);
    assert_eq!(report.warnings.len(), 1);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn non_associative_category_is_rejected_at_validation() {
    let dir = temp_dir("nonassoc");
    let m = |n: &str| MorphismDoc {
        name: n.into(),
        dom: "a".into(),
        cod: "a".into(),
    };
    let mut composition: Vec<[String; 3]> = Vec::new();
    for [g, f, h] in [
        ["id_a", "id_a", "id_a"],
        ["id_a", "e", "e"],
        ["e", "id_a", "e"],
        ["id_a", "f", "f"],
        ["f", "id_a", "f"],
        // (e∘e)∘f = e but e∘(e∘f) = f
        ["e", "e", "f"],
        ["e", "f", "e"],
        ["f", "e", "f"],
        ["f", "f", "e"],
    ] {
        composition.push([g.into(), f.into(), h.into()]);
    }
    let doc = crate::fincat::FinCatDoc {
        objects: vec!["a".into()],
        morphisms: vec![m("id_a"), m("e"), m("f")],
        identities: [("a".to_string(), "id_a".to_string())].into(),
        composition,
    };
    let err = crate::fincat::validate_fincat(&doc).unwrap_err();
    assert!(err.violations().iter().any(|v| v.axiom.contains("assoc")), "{err}");
    std::fs::write(dir.join("bad.json"), fixture_bytes(&Fixture::Category { category: doc })).unwrap();
    match Corpus::load(&dir) {
        Err(crate::Error::Fixture { location, .. }) => assert_eq!(location, "bad"),
        other => panic!("{:?}", other.map(|c| c.n_fixtures())),
    }
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn malformed_json_reports_its_position() {
    let dir = temp_dir("malformed");
    std::fs::write(dir.join("x.json"), "{\"kind\": \"category\",\n  \"category\": [}").unwrap();
    let e = Corpus::load(&dir).err().unwrap();
    assert!(e.to_string().contains("x.json:2:"), "{e}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn missing_corpus_is_an_error() {
    assert!(Corpus::load(&corpus_dir().join("missing")).is_err());
}

#[test]
fn scheduling_order_does_not_change_the_report() {
    let c = bundled_corpus().unwrap();
    let order: Vec<usize> = (0..LEMMAS.len()).rev().collect();
    assert_eq!(verify_suite(&c).machine(), verify_suite_scheduled(&c, &order).machine());
}

#[test]
fn a_single_fixture_loads_with_its_dependencies() {
    let (c, root) = Corpus::load_file(&corpus_dir().join("product_chain_twisted.json")).unwrap();
    assert_eq!(root, "product_chain_twisted");
    assert_eq!(c.commutations.len(), 1);
    assert_eq!(c.indices.len(), 1);
    assert_eq!(c.diagrams.len(), 2);
}
