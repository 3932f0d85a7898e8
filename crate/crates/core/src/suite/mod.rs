//! The on-disk fixture corpus and the suite that replays every cross-module
//! invariant over it.

mod fixture;
#[cfg(test)]
mod tests;

use std::sync::Arc;

use serde::Serialize;

pub use fixture::{
    bundled, bundled_corpus, content_hash, fixture_bytes, write_bundled, Corpus, Entry, Fixture, LoadedDiagram,
    LoadedIndex, LoadedMap, ShapeDoc,
};

use crate::bilim::{biequalizer, biproduct, check_commutation, split_pseudoidempotent, Shape};
use crate::colim::oracle::{naive_classes, same_partition};
use crate::colim::{bifiltered_bicolimit, premorphism_equal, sigma_bicolimit, sigma_bicolimit_direct, ColimitCat};
use crate::compact::check_bicompact_against;
use crate::error::Result;
use crate::fincat::{check_equivalence, FinCat, Functor};
use crate::filtered::{
    check_bifiltered, check_sigma_cofinal, check_sigma_filtered, triangle_completion, trivialization_check,
};
use crate::flat::{check_flat, decompose_flat};
use crate::lexkit::verify_lex_bicolimit;
use crate::twocat::{sigma_closure, CatPseudoFunctor, SigmaClass};

pub const LEMMAS: [&str; 10] = [
    "checker_coherence",
    "trivialization",
    "triangle",
    "coequification",
    "bicompact",
    "flatness",
    "commutation",
    "splitting",
    "lex_closure",
    "cofinality",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub fixture: String,
    pub detail: String,
    /// A command that reproduces the failing check.
    pub replay: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaResult {
    pub lemma: &'static str,
    pub checked: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
}

impl LemmaResult {
    fn new(lemma: &'static str) -> Self {
        LemmaResult {
            lemma,
            checked: 0,
            passed: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, fixture: &str, replay: String, outcome: Result<std::result::Result<(), String>>) {
        self.checked += 1;
        let detail = match outcome {
            Ok(Ok(())) => {
                self.passed += 1;
                return;
            }
            Ok(Err(d)) => d,
            Err(e) => format!("error: {e}"),
        };
        self.failures.push(Failure {
            fixture: fixture.to_string(),
            detail,
            replay,
        });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub fixtures: Vec<Entry>,
    pub lemmas: Vec<LemmaResult>,
    pub warnings: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lemmas.iter().all(|l| l.failures.is_empty())
    }

    pub fn lemma(&self, name: &str) -> Option<&LemmaResult> {
        self.lemmas.iter().find(|l| l.lemma == name)
    }

    /// Structured-text report; identical corpora give identical bytes.
    pub fn machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn human(&self) -> String {
        let mut out = format!("{} fixtures\n", self.fixtures.len());
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for l in &self.lemmas {
            let status = if l.failures.is_empty() { "ok" } else { "FAIL" };
            out.push_str(&format!("{:<18} {:>4}/{:<4} {status}\n", l.lemma, l.passed, l.checked));
            for f in &l.failures {
                out.push_str(&format!("  {}: {}\n    replay: {}\n", f.fixture, f.detail, f.replay));
            }
        }
        out
    }
}

fn check(ok: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn equivalent(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    check_equivalence(a, b).holds()
}

/// The diagram restricted to the sub-2-category on its closed Σ-class, or
/// `None` when the pair is not σ-filtered.
pub fn restricted(d: &LoadedDiagram) -> Result<Option<CatPseudoFunctor>> {
    let f = &d.diagram;
    let closed = sigma_closure(f.source(), &d.sigma);
    if !check_sigma_filtered(f.source(), &closed)?.outcome {
        return Ok(None);
    }
    let (_, incl) = f.source().restrict_one_cells(&closed)?;
    Ok(Some(f.precompose(&incl)?))
}

/// Runs every lemma over the corpus.
pub fn verify_suite(corpus: &Corpus) -> SuiteReport {
    let order: Vec<usize> = (0..LEMMAS.len()).collect();
    verify_suite_scheduled(corpus, &order)
}

/// Runs the lemmas on worker threads, started in `order` (a permutation
/// of `0..LEMMAS.len()`); the report is in canonical order regardless.
pub fn verify_suite_scheduled(corpus: &Corpus, order: &[usize]) -> SuiteReport {
    let mut warnings = Vec::new();
    if corpus.n_fixtures() == 0 {
        warnings.push("corpus contains no fixtures".to_string());
    }
    let runners: [fn(&Corpus) -> LemmaResult; 10] = [
        checker_coherence,
        trivialization,
        triangle,
        coequification,
        bicompact,
        flatness,
        commutation,
        splitting,
        lex_closure,
        cofinality,
    ];
    let mut slots: Vec<Option<LemmaResult>> = vec![None; LEMMAS.len()];
    std::thread::scope(|scope| {
        let handles: Vec<_> = order
            .iter()
            .map(|&k| (k, scope.spawn(move || runners[k](corpus))))
            .collect();
        for (k, h) in handles {
            slots[k] = Some(h.join().expect("lemma worker"));
        }
    });
    let lemmas = slots.into_iter().map(|s| s.expect("every lemma scheduled")).collect();
    SuiteReport {
        fixtures: corpus.entries.clone(),
        lemmas,
        warnings,
    }
}

fn checker_coherence(corpus: &Corpus) -> LemmaResult {
    let mut r = LemmaResult::new("checker_coherence");
    for i in &corpus.indices {
        let outcome = (|| {
            let b = check_bifiltered(&i.cat)?.outcome;
            let s = check_sigma_filtered(&i.cat, &SigmaClass::all(&i.cat))?.outcome;
            Ok(check(b == s, || format!("bifiltered {b}, sigma-filtered over all 1-cells {s}")))
        })();
        r.record(&i.name, format!("sigmacat check bifiltered {}", i.name), outcome);
    }
    r
}

fn trivialization(corpus: &Corpus) -> LemmaResult {
    let mut r = LemmaResult::new("trivialization");
    for i in &corpus.indices {
        for (sn, s) in &i.sigma {
            let outcome = trivialization_check(&i.cat, s)
                .map(|t| check(t.agrees(), || format!("sides disagree: {} vs {}", t.left(), t.right())));
            r.record(
                &format!("{}/{sn}", i.name),
                format!("sigmacat check sigma-filtered {} --sigma {sn}", i.name),
                outcome,
            );
        }
    }
    for d in &corpus.diagrams {
        let outcome = (|| {
            let Some(g) = restricted(d)? else {
                return Ok(Ok(()));
            };
            let bi = bifiltered_bicolimit(&g)?;
            let triv = sigma_bicolimit(&d.diagram, &d.sigma)?;
            let direct = sigma_bicolimit_direct(&d.diagram, &d.sigma)?;
            Ok(check(
                equivalent(triv.result(), bi.result()) && equivalent(direct.result(), bi.result()),
                || "σ-bicolimit is not equivalent to the restricted bicolimit".into(),
            ))
        })();
        r.record(&d.name, format!("sigmacat colimit {} --sigma {}", d.name, d.sigma_name), outcome);
    }
    r
}

fn triangle(corpus: &Corpus) -> LemmaResult {
    let mut r = LemmaResult::new("triangle");
    for i in &corpus.indices {
        for (sn, s) in &i.sigma {
            let s = sigma_closure(&i.cat, s);
            if !check_sigma_filtered(&i.cat, &s).map(|v| v.outcome).unwrap_or(false) {
                continue;
            }
            for d in i.cat.one_cells() {
                let outcome = triangle_completion(&i.cat, &s, d)
                    .map(|t| check(t.validate(&i.cat, &s), || "witness does not re-validate".into()));
                r.record(
                    &format!("{}/{sn}/{}", i.name, i.cat.one_name(d)),
                    format!("sigmacat check sigma-filtered {} --sigma {sn}", i.name),
                    outcome,
                );
            }
        }
    }
    r
}

fn coequification_on(col: &ColimitCat) -> Result<std::result::Result<(), String>> {
    let f = col.diagram();
    let c = f.source();
    for i in c.zero_cells() {
        let fi = f.fiber(i);
        for g in fi.morphisms() {
            for &h in fi.hom(fi.dom(g), fi.cod(g)) {
                let equal = premorphism_equal(col, &col.embed(i, g), &col.embed(i, h))?;
                let oracle = c
                    .out1(i)
                    .iter()
                    .any(|&v| col.sigma().contains(v) && f.on1(v).mor(g) == f.on1(v).mor(h));
                if equal != oracle {
                    return Ok(Err(format!(
                        "{} vs {} at {}: quotient {equal}, equalizing arrow {oracle}",
                        fi.morphism_name(g),
                        fi.morphism_name(h),
                        c.zero_name(i)
                    )));
                }
            }
        }
    }
    let closed = col.sigma().clone();
    let (all, label) = naive_classes(f, &|x| closed.contains(x));
    Ok(check(same_partition(col, &all, &label), || {
        "quotient differs from the brute-force closure".into()
    }))
}

fn coequification(corpus: &Corpus) -> LemmaResult {
    let mut r = LemmaResult::new("coequification");
    for d in &corpus.diagrams {
        let outcome = (|| {
            if restricted(d)?.is_none() {
                return Ok(Ok(()));
            }
            coequification_on(&sigma_bicolimit_direct(&d.diagram, &d.sigma)?)
        })();
        r.record(&d.name, format!("sigmacat colimit {} --sigma {}", d.name, d.sigma_name), outcome);
    }
    r
}

fn bicompact(corpus: &Corpus) -> LemmaResult {
    let mut r = LemmaResult::new("bicompact");
    let mut ks: Vec<(String, Arc<FinCat>)> = corpus.categories.clone();
    let n = corpus.categories.len();
    for (k, (a, x)) in corpus.categories.iter().enumerate() {
        let (b, y) = &corpus.categories[(k + 1) % n];
        ks.push((format!("{a}*{b}"), biproduct(x, y).cat));
        let id = Functor::identity(x.clone());
        if let Ok(e) = biequalizer(&id, &id) {
            ks.push((format!("eq({a})"), e.cat));
        }
    }
    let diagrams: Vec<(&LoadedDiagram, Option<CatPseudoFunctor>)> =
        corpus.diagrams.iter().map(|d| (d, restricted(d).ok().flatten())).collect();
    for (kn, k) in &ks {
        for (d, g) in &diagrams {
            let Some(g) = g else { continue };
            let outcome = check_bicompact_against(k, g).map(|v| {
                check(v.holds(), || format!("{:?}", v.first_counterexample()))
            });
            r.record(&format!("{kn}/{}", d.name), format!("sigmacat compact check {kn} {}", d.name), outcome);
        }
    }
    r
}

fn flat_agrees(f: &CatPseudoFunctor) -> Result<std::result::Result<(), String>> {
    let flat = check_flat(f)?.holds();
    let reconstructs = match decompose_flat(f) {
        Ok(d) => d.reconstructs(),
        Err(crate::Error::Precondition(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(check(flat == reconstructs, || {
        format!("flat {flat}, decomposition reconstructs {reconstructs}")
    }))
}

fn flatness(corpus: &Corpus) -> LemmaResult {
    let mut r = LemmaResult::new("flatness");
    let mut rejected = 0;
    for d in &corpus.diagrams {
        if let Ok(v) = check_flat(&d.diagram) {
            if !v.holds() && v.first_counterexample().is_some() {
                rejected += 1;
            }
        }
        r.record(&d.name, format!("sigmacat flat decompose {}", d.name), flat_agrees(&d.diagram));
    }
    for (name, f) in &corpus.representables {
        let outcome = (|| {
            let flat = check_flat(f)?.holds();
            Ok(match flat_agrees(f)? {
                Ok(()) => check(flat, || "representable is not flat".into()),
                e => e,
            })
        })();
        r.record(name, format!("sigmacat flat decompose {name}"), outcome);
    }
    if !corpus.diagrams.is_empty() {
        r.record(
            "non-flat witness",
            "sigmacat flat check <diagram>".into(),
            Ok(check(rejected > 0, || "no diagram is rejected as non-flat".into())),
        );
    }
    r
}

fn commutation(corpus: &Corpus) -> LemmaResult {
    let mut r = LemmaResult::new("commutation");
    for (name, shape) in &corpus.commutations {
        let outcome = check_commutation(shape)
            .map(|c| check(c.equivalent, || format!("{}: colimit of limits differs", c.shape)));
        let cmd = match shape {
            Shape::Product(..) => "product",
            Shape::Equalizer { .. } => "equalizer",
            Shape::Cotensor(..) => "cotensor",
        };
        r.record(name, format!("sigmacat bilim {cmd} {name}"), outcome);
    }
    r
}

fn splitting(corpus: &Corpus) -> LemmaResult {
    let mut r = LemmaResult::new("splitting");
    for (name, p) in &corpus.idempotents {
        let outcome = split_pseudoidempotent(p).map(|s| {
            let v = s.violations(p);
            check(v.is_empty(), || format!("{v:?}"))
        });
        r.record(name, format!("sigmacat bilim split {name}"), outcome);
    }
    r
}

fn lex_closure(corpus: &Corpus) -> LemmaResult {
    let mut r = LemmaResult::new("lex_closure");
    for d in corpus.diagrams.iter().filter(|d| d.lex) {
        let outcome = verify_lex_bicolimit(&d.diagram).map(|rep| check(rep.holds(), || format!("{rep:?}")));
        r.record(&d.name, format!("sigmacat lex verify-colimit {}", d.name), outcome);
    }
    r
}

fn cofinality(corpus: &Corpus) -> LemmaResult {
    let mut r = LemmaResult::new("cofinality");
    for m in &corpus.maps {
        let outcome = (|| {
            let f = &m.map;
            let (src, tgt) = (f.source(), f.target());
            let (sigma, target_sigma) = (sigma_closure(src, &m.sigma), sigma_closure(tgt, &m.target_sigma));
            let v = check_sigma_cofinal(f, &sigma, &target_sigma)?;
            if !v.holds() {
                return Ok(Err(format!("not σ-cofinal: {:?}", v.first_counterexample())));
            }
            if src.one_cells().any(|s| sigma.contains(s) && !target_sigma.contains(f.on1(s))) {
                return Ok(Err("F(Σ) is not contained in Σ'".into()));
            }
            if check_sigma_filtered(src, &sigma)?.outcome && !check_sigma_filtered(tgt, &target_sigma)?.outcome {
                return Ok(Err("filteredness does not transfer".into()));
            }
            let g = &corpus.diagram(&m.diagram)?.diagram;
            let whole = sigma_bicolimit(g, &m.target_sigma)?;
            let part = sigma_bicolimit(&g.precompose(f)?, &m.sigma)?;
            Ok(check(equivalent(whole.result(), part.result()), || {
                "colimits along the map are not equivalent".into()
            }))
        })();
        r.record(&m.name, format!("sigmacat check cofinal {}", m.name), outcome);
    }
    r
}
