//! One pass/fail line per acceptance criterion, computed over the shipped
//! corpus directory.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use sigmacat::flat::check_flat;
use sigmacat::lexkit::{verify_lex_bicolimit, SAMPLE_MORPHISMS, SAMPLE_OBJECTS};
use sigmacat::suite::{verify_suite, verify_suite_scheduled, Corpus, SuiteReport, LEMMAS};

fn corpus() -> Corpus {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    Corpus::load(&dir).expect("shipped corpus loads")
}

fn lemma_clean(report: &SuiteReport, name: &str) -> Result<String, String> {
    let l = report.lemma(name).ok_or_else(|| format!("lemma {name} missing"))?;
    if l.checked == 0 {
        return Err("nothing checked".into());
    }
    match l.failures.first() {
        None => Ok(format!("{}/{} checks", l.passed, l.checked)),
        Some(f) => Err(format!("{} failures, first {}: {}", l.failures.len(), f.fixture, f.detail)),
    }
}

#[test]
fn acceptance() {
    let c = corpus();
    let start = Instant::now();
    let report = verify_suite(&c);
    let suite_time = start.elapsed();
    let mut results: Vec<(&str, Result<String, String>)> = Vec::new();

    results.push(("checker coherence", lemma_clean(&report, "checker_coherence")));
    results.push(("trivialization lemma", lemma_clean(&report, "trivialization")));
    results.push(("triangle lemma", lemma_clean(&report, "triangle")));
    results.push(("coequification", lemma_clean(&report, "coequification")));
    results.push(("finite categories are bicompact", lemma_clean(&report, "bicompact")));

    let flat = lemma_clean(&report, "flatness").and_then(|s| {
        let rejected = c.diagrams.iter().find(|d| {
            check_flat(&d.diagram)
                .map(|v| !v.holds() && v.first_counterexample().is_some())
                .unwrap_or(false)
        });
        match rejected {
            Some(d) => Ok(format!("{s}, {} rejected with a counterexample", d.name)),
            None => Err("no non-flat fixture rejected".into()),
        }
    });
    results.push(("flatness characterizations agree", flat));
    results.push(("commutation with finite bilimits", lemma_clean(&report, "commutation")));
    results.push(("idempotent splitting", lemma_clean(&report, "splitting")));

    let lex = lemma_clean(&report, "lex_closure").and_then(|s| {
        let mut sampled = 0;
        for d in c.diagrams.iter().filter(|d| d.lex) {
            let r = verify_lex_bicolimit(&d.diagram).map_err(|e| e.to_string())?;
            if r.sampled == 0 {
                return Err(format!("{}: nothing sampled", d.name));
            }
            sampled += r.sampled;
        }
        Ok(format!("{s}, {sampled} diagrams with ≤{SAMPLE_OBJECTS} objects and ≤{SAMPLE_MORPHISMS} arrows"))
    });
    results.push(("lex closure", lex));
    results.push(("cofinality transfer and colimit invariance", lemma_clean(&report, "cofinality")));

    let again = verify_suite(&c);
    let reversed: Vec<usize> = (0..LEMMAS.len()).rev().collect();
    let shuffled = verify_suite_scheduled(&corpus(), &reversed);
    let det = if report.machine() == again.machine() && report.machine() == shuffled.machine() {
        Ok(format!("{} bytes identical across three runs", report.machine().len()))
    } else {
        Err("machine reports differ".into())
    };
    results.push(("determinism", det));

    // written to the raw handle so the lines show without --nocapture
    let mut out = std::io::stdout().lock();
    writeln!(out, "suite over {} fixtures in {:.2?}", c.n_fixtures(), suite_time).unwrap();
    for (k, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(s) => writeln!(out, "criterion {:>2} PASS {name}: {s}", k + 1).unwrap(),
            Err(s) => writeln!(out, "criterion {:>2} FAIL {name}: {s}", k + 1).unwrap(),
        }
    }
    drop(out);
    let failed: Vec<&str> = results.iter().filter(|r| r.1.is_err()).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
