use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;
use sigmacat::bilim::{
    arrow_cotensor, biequalizer, biproduct, check_commutation, pseudolimit_cocycle, split_pseudoidempotent,
    Pseudoidempotent, Summary,
};
use sigmacat::colim::sigma_bicolimit;
use sigmacat::compact::{check_bicompact_against, SCOPE_STATEMENT};
use sigmacat::fincat::{FinCat, FinCatDoc, Functor, FunctorDoc, NatTransDoc};
use sigmacat::filtered::{check_bifiltered, check_sigma_cofinal, check_sigma_filtered};
use sigmacat::flat::{check_flat, decompose_flat};
use sigmacat::lexkit::{finite_limit_witnesses, verify_lex_bicolimit};
use sigmacat::suite::{restricted, verify_suite_scheduled, Corpus, Entry, LEMMAS};
use sigmacat::twocat::{sigma_closure, CatPseudoFunctor, SigmaClass, TwoCat};
use sigmacat::{Error, Result};

use crate::render::{emit, verdict, Output};
use crate::{BilimCommand, CheckCommand, Cli, Command, CompactCommand, FlatCommand, LexCommand};

/// A fixture and the corpus slice needed to interpret it.
struct Loaded {
    corpus: Corpus,
    root: String,
}

impl Loaded {
    fn entry(&self) -> &Entry {
        self.corpus
            .entries
            .iter()
            .find(|e| e.name == self.root)
            .expect("root fixture is loaded")
    }

    fn wrong_kind(&self, expected: &str) -> Error {
        Error::Fixture {
            location: self.root.clone(),
            message: format!("expected a {expected} fixture, found {}", self.entry().kind),
        }
    }

    fn index(&self) -> Result<(Arc<TwoCat>, &BTreeMap<String, SigmaClass>)> {
        let i = self.corpus.indices.iter().find(|i| i.name == self.root);
        i.map(|i| (i.cat.clone(), &i.sigma)).ok_or_else(|| self.wrong_kind("index"))
    }

    fn category(&self) -> Result<Arc<FinCat>> {
        let c = self.corpus.categories.iter().find(|c| c.0 == self.root);
        c.map(|c| c.1.clone()).ok_or_else(|| self.wrong_kind("category"))
    }

    fn diagram(&self) -> Result<&sigmacat::suite::LoadedDiagram> {
        self.corpus.diagram(&self.root).map_err(|_| self.wrong_kind("diagram"))
    }

    /// A diagram or representable.
    fn pseudofunctor(&self) -> Result<CatPseudoFunctor> {
        if let Ok(d) = self.corpus.diagram(&self.root) {
            return Ok(d.diagram.clone());
        }
        let r = self.corpus.representables.iter().find(|r| r.0 == self.root);
        r.map(|r| r.1.clone()).ok_or_else(|| self.wrong_kind("diagram or representable"))
    }

    fn idempotent(&self) -> Result<Pseudoidempotent> {
        let p = self.corpus.idempotents.iter().find(|p| p.0 == self.root);
        p.map(|p| p.1.clone()).ok_or_else(|| self.wrong_kind("pseudoidempotent"))
    }
}

fn load(cli: &Cli, arg: &str) -> Result<Loaded> {
    let direct = Path::new(arg);
    let path = if direct.is_file() {
        direct.to_path_buf()
    } else {
        cli.corpus.join(format!("{arg}.json"))
    };
    if !path.is_file() {
        return Err(Error::Fixture {
            location: arg.to_string(),
            message: "fixture not found".into(),
        });
    }
    let (corpus, root) = Corpus::load_file(&path)?;
    Ok(Loaded { corpus, root })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}

#[derive(Serialize)]
struct ColimitEmit {
    category: FinCatDoc,
    cocone: BTreeMap<String, FunctorDoc>,
    transitions: BTreeMap<String, NatTransDoc>,
}

#[derive(Serialize)]
struct CategoryResult {
    objects: Vec<String>,
    summary: Summary,
}

fn category_result(c: &FinCat) -> CategoryResult {
    CategoryResult {
        objects: c.object_names().to_vec(),
        summary: Summary::from(c),
    }
}

fn category_human(label: &str, c: &FinCat) -> String {
    format!(
        "{label}: {} objects, {} morphisms\n  objects: {}\n",
        c.n_objects(),
        c.n_morphisms(),
        c.object_names().join(", ")
    )
}

pub fn run(cli: &Cli) -> Result<Output> {
    let f = cli.format;
    match &cli.command {
        Command::Check(CheckCommand::Bifiltered { fixture }) => {
            let l = load(cli, fixture)?;
            let (c, _) = l.index()?;
            let v = check_bifiltered(&c)?;
            Ok(emit(f, "check bifiltered", &[l.entry()], v.holds(), &v, || verdict(&v)))
        }
        Command::Check(CheckCommand::SigmaFiltered { fixture, sigma }) => {
            let l = load(cli, fixture)?;
            let (c, classes) = l.index()?;
            let s = classes
                .get(sigma)
                .ok_or_else(|| Error::unknown("sigma class", sigma.clone()))?;
            let v = check_sigma_filtered(&c, &sigma_closure(&c, s))?;
            Ok(emit(f, "check sigma-filtered", &[l.entry()], v.holds(), &v, || verdict(&v)))
        }
        Command::Check(CheckCommand::Cofinal { fixture }) => {
            let l = load(cli, fixture)?;
            let m = l
                .corpus
                .maps
                .iter()
                .find(|m| m.name == l.root)
                .ok_or_else(|| l.wrong_kind("cofinal_map"))?;
            let (src, tgt) = (m.map.source(), m.map.target());
            let v = check_sigma_cofinal(
                &m.map,
                &sigma_closure(src, &m.sigma),
                &sigma_closure(tgt, &m.target_sigma),
            )?;
            Ok(emit(f, "check cofinal", &[l.entry()], v.holds(), &v, || verdict(&v)))
        }
        Command::Colimit { fixture, sigma, emit: path } => {
            let l = load(cli, fixture)?;
            let d = l.diagram()?;
            let g = &d.diagram;
            let s = match sigma {
                None => d.sigma.clone(),
                Some(name) => l
                    .corpus
                    .indices
                    .iter()
                    .find(|i| Arc::ptr_eq(&i.cat, g.source()))
                    .and_then(|i| i.sigma.get(name).cloned())
                    .ok_or_else(|| Error::unknown("sigma class", name.clone()))?,
            };
            let col = sigma_bicolimit(g, &s)?;
            let c = g.source();
            if let Some(path) = path {
                let out = ColimitEmit {
                    category: col.result().to_doc(),
                    cocone: c
                        .zero_cells()
                        .map(|i| (c.zero_name(i).to_string(), col.cocone(i).to_doc()))
                        .collect(),
                    transitions: c
                        .one_cells()
                        .map(|d| (c.one_name(d).to_string(), col.transition(d).to_doc()))
                        .collect(),
                };
                write_json(path, &out)?;
            }
            let r = category_result(col.result());
            Ok(emit(f, "colimit", &[l.entry()], true, &r, || {
                category_human(&format!("colimit ({:?})", col.route()), col.result())
            }))
        }
        Command::Bilim(b) => bilim(cli, b),
        Command::Flat(FlatCommand::Check { fixture }) => {
            let l = load(cli, fixture)?;
            let v = check_flat(&l.pseudofunctor()?)?;
            Ok(emit(f, "flat check", &[l.entry()], v.holds(), &v, || verdict(&v)))
        }
        Command::Flat(FlatCommand::Decompose { fixture, report }) => {
            let l = load(cli, fixture)?;
            match decompose_flat(&l.pseudofunctor()?) {
                Ok(d) => {
                    if let Some(path) = report {
                        write_json(path, &d)?;
                    }
                    let ok = d.reconstructs();
                    Ok(emit(f, "flat decompose", &[l.entry()], ok, &d, || {
                        let mut s = format!("decomposition: {}\n", if ok { "reconstructs" } else { "fails" });
                        for st in &d.stages {
                            s.push_str(&format!(
                                "  {}: {} objects rebuilt, equivalent {}\n",
                                st.zero_cell, st.colimit.objects, st.equivalent
                            ));
                        }
                        s
                    }))
                }
                Err(Error::Precondition(msg)) => {
                    let r = serde_json::json!({ "precondition": msg });
                    Ok(emit(f, "flat decompose", &[l.entry()], false, &r, || {
                        format!("decomposition: not flat\n  {msg}\n")
                    }))
                }
                Err(e) => Err(e),
            }
        }
        Command::Compact(CompactCommand::Check { k, diagram }) => {
            let lk = load(cli, k)?;
            let ld = load(cli, diagram)?;
            let kc = lk.category()?;
            let d = ld.diagram()?;
            let g = restricted(d)?
                .ok_or_else(|| Error::Precondition(format!("{} is not σ-filtered", d.name)))?;
            let v = check_bicompact_against(&kc, &g)?;
            Ok(emit(f, "compact check", &[lk.entry(), ld.entry()], v.holds(), &v, || {
                format!("{}note: {SCOPE_STATEMENT}\n", verdict(&v))
            }))
        }
        Command::Lex(LexCommand::Check { fixture }) => {
            let l = load(cli, fixture)?;
            let c = l.category()?;
            match finite_limit_witnesses(&c) {
                Ok(w) => Ok(emit(f, "lex check", &[l.entry()], true, &w, || {
                    format!(
                        "lex: holds\n  terminal: {}\n  products: {}\n  equalizers: {}\n",
                        c.object_name(w.terminal),
                        w.products.len(),
                        w.equalizers.len()
                    )
                })),
                Err(m) => Ok(emit(f, "lex check", &[l.entry()], false, &m, || {
                    format!("lex: fails\n  missing {} for [{}]\n", m.shape, m.instance.join(", "))
                })),
            }
        }
        Command::Lex(LexCommand::VerifyColimit { fixture }) => {
            let l = load(cli, fixture)?;
            let r = verify_lex_bicolimit(&l.diagram()?.diagram)?;
            let ok = r.holds();
            Ok(emit(f, "lex verify-colimit", &[l.entry()], ok, &r, || {
                format!(
                    "lex closure: {}\n  colimit lex: {}\n  legs not lex: {}\n  sampled diagrams: {}\n  formula failures: {}\n",
                    if ok { "holds" } else { "fails" },
                    r.colimit_lex.is_none(),
                    r.legs_not_lex.len(),
                    r.sampled,
                    r.formula_failures.len()
                )
            }))
        }
        Command::VerifySuite => {
            let corpus = Corpus::load(&cli.corpus)?;
            let mut order: Vec<usize> = (0..LEMMAS.len()).collect();
            if let Some(seed) = cli.seed_order {
                order.shuffle(&mut StdRng::seed_from_u64(seed));
            }
            let report = verify_suite_scheduled(&corpus, &order);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let text = match f {
                crate::Format::Human => report.human(),
                crate::Format::Machine => format!("{}\n", report.machine()),
            };
            Ok(Output {
                text,
                positive: report.passed(),
            })
        }
    }
}

fn bilim(cli: &Cli, b: &BilimCommand) -> Result<Output> {
    let f = cli.format;
    let finish = |name: &str, entries: &[&Entry], cat: &FinCat, path: &Option<std::path::PathBuf>| -> Result<Output> {
        if let Some(p) = path {
            write_json(p, &cat.to_doc())?;
        }
        let r = category_result(cat);
        Ok(emit(f, name, entries, true, &r, || category_human(name, cat)))
    };
    match b {
        BilimCommand::Product { first, second, emit } => {
            let (a, b) = (load(cli, first)?, load(cli, second)?);
            let p = biproduct(&a.category()?, &b.category()?);
            finish("bilim product", &[a.entry(), b.entry()], &p.cat, emit)
        }
        BilimCommand::Equalizer { fixture, emit } => {
            let l = load(cli, fixture)?;
            let p = l.idempotent()?;
            let e = biequalizer(&p.endo, &Functor::identity(p.carrier.clone()))?;
            finish("bilim equalizer", &[l.entry()], &e.cat, emit)
        }
        BilimCommand::Cotensor { fixture, emit } => {
            let l = load(cli, fixture)?;
            let c = arrow_cotensor(&l.category()?);
            finish("bilim cotensor", &[l.entry()], &c.cat, emit)
        }
        BilimCommand::Pseudolimit { fixture, emit } => {
            let l = load(cli, fixture)?;
            let p = pseudolimit_cocycle(&l.diagram()?.diagram)?;
            finish("bilim pseudolimit", &[l.entry()], &p.cat, emit)
        }
        BilimCommand::Split { fixture, emit } => {
            let l = load(cli, fixture)?;
            let p = l.idempotent()?;
            let s = split_pseudoidempotent(&p)?;
            let v = s.violations(&p);
            if !v.is_empty() {
                let r = serde_json::json!({ "violations": v });
                return Ok(emit_fail(f, "bilim split", &[l.entry()], &r, format!("splitting fails: {v:?}\n")));
            }
            finish("bilim split", &[l.entry()], &s.cat, emit)
        }
        BilimCommand::Commute { fixture } => {
            let l = load(cli, fixture)?;
            let shape = l
                .corpus
                .commutations
                .iter()
                .find(|c| c.0 == l.root)
                .map(|c| &c.1)
                .ok_or_else(|| l.wrong_kind("commutation"))?;
            let r = check_commutation(shape)?;
            Ok(emit(f, "bilim commute", &[l.entry()], r.equivalent, &r, || {
                format!(
                    "{}: colimit of limits {}/{}, limit of colimits {}/{}, equivalent {}\n",
                    r.shape,
                    r.colimit_of_limits.objects,
                    r.colimit_of_limits.morphisms,
                    r.limit_of_colimits.objects,
                    r.limit_of_colimits.morphisms,
                    r.equivalent
                )
            }))
        }
    }
}

fn emit_fail(f: crate::Format, name: &str, entries: &[&Entry], r: &serde_json::Value, human: String) -> Output {
    emit(f, name, entries, false, r, || human)
}
