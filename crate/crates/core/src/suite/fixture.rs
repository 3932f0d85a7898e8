use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bilim::{Pseudoidempotent, Shape};
use crate::corpus::{categories, diagrams, indices, instances, lex, maps};
use crate::error::{Error, Result};
use crate::fincat::{validate_fincat, FinCat, FinCatDoc, Functor, FunctorDoc, NatTrans, NatTransDoc};
use crate::flat::representable_pseudofunctor;
use crate::twocat::{
    validate_pseudofunctor, validate_twocat, CatPseudoFunctor, PseudoFunctorDoc, SigmaClass, TwoCat, TwoCatDoc,
    TwoFunctor, TwoFunctorDoc,
};

/// One fixture document, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fixture {
    Category {
        category: FinCatDoc,
    },
    Index {
        index: TwoCatDoc,
    },
    Diagram {
        diagram: PseudoFunctorDoc,
        #[serde(default = "all_sigma")]
        sigma: String,
        #[serde(default)]
        lex: bool,
    },
    Representable {
        index: String,
        at: String,
    },
    CofinalMap {
        source: String,
        target: String,
        map: TwoFunctorDoc,
        sigma: String,
        target_sigma: String,
        diagram: String,
    },
    Pseudoidempotent {
        carrier: FinCatDoc,
        endo: FunctorDoc,
        mult: NatTransDoc,
    },
    Commutation {
        shape: ShapeDoc,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ShapeDoc {
    Product {
        first: String,
        second: String,
    },
    Cotensor {
        diagram: String,
    },
    /// Stage-wise functors keyed by 0-cell name.
    Equalizer {
        source: String,
        target: String,
        first: BTreeMap<String, FunctorDoc>,
        second: BTreeMap<String, FunctorDoc>,
    },
}

fn all_sigma() -> String {
    "all".into()
}

impl Fixture {
    pub fn kind(&self) -> &'static str {
        match self {
            Fixture::Category { .. } => "category",
            Fixture::Index { .. } => "index",
            Fixture::Diagram { .. } => "diagram",
            Fixture::Representable { .. } => "representable",
            Fixture::CofinalMap { .. } => "cofinal_map",
            Fixture::Pseudoidempotent { .. } => "pseudoidempotent",
            Fixture::Commutation { .. } => "commutation",
        }
    }

    /// Names of the fixtures this one refers to.
    pub fn dependencies(&self) -> Vec<String> {
        match self {
            Fixture::Diagram { diagram, .. } => vec![diagram.index.clone()],
            Fixture::Representable { index, .. } => vec![index.clone()],
            Fixture::CofinalMap {
                source,
                target,
                diagram,
                ..
            } => vec![source.clone(), target.clone(), diagram.clone()],
            Fixture::Commutation { shape } => match shape {
                ShapeDoc::Product { first, second } => vec![first.clone(), second.clone()],
                ShapeDoc::Cotensor { diagram } => vec![diagram.clone()],
                ShapeDoc::Equalizer { source, target, .. } => vec![source.clone(), target.clone()],
            },
            _ => Vec::new(),
        }
    }

    /// Dependency rank: fixtures are resolved in increasing rank.
    fn rank(&self) -> u8 {
        match self {
            Fixture::Category { .. } | Fixture::Index { .. } | Fixture::Pseudoidempotent { .. } => 0,
            Fixture::Diagram { .. } | Fixture::Representable { .. } => 1,
            Fixture::CofinalMap { .. } | Fixture::Commutation { .. } => 2,
        }
    }
}

/// Name, kind and content hash of a loaded fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub name: String,
    pub kind: &'static str,
    pub sha256: String,
}

pub struct LoadedIndex {
    pub name: String,
    pub cat: Arc<TwoCat>,
    /// Always contains `all` and `identities`.
    pub sigma: BTreeMap<String, SigmaClass>,
}

pub struct LoadedDiagram {
    pub name: String,
    pub diagram: CatPseudoFunctor,
    pub sigma_name: String,
    pub sigma: SigmaClass,
    pub lex: bool,
}

pub struct LoadedMap {
    pub name: String,
    pub map: TwoFunctor,
    pub sigma: SigmaClass,
    pub target_sigma: SigmaClass,
    pub diagram: String,
}

/// A validated corpus; every list is sorted by fixture name.
#[derive(Default)]
pub struct Corpus {
    pub entries: Vec<Entry>,
    pub categories: Vec<(String, Arc<FinCat>)>,
    pub indices: Vec<LoadedIndex>,
    pub diagrams: Vec<LoadedDiagram>,
    pub representables: Vec<(String, CatPseudoFunctor)>,
    pub maps: Vec<LoadedMap>,
    pub idempotents: Vec<(String, Pseudoidempotent)>,
    pub commutations: Vec<(String, Shape)>,
}

fn parse(path: &Path, bytes: &[u8]) -> Result<Fixture> {
    serde_json::from_slice(bytes).map_err(|e| Error::Fixture {
        location: format!("{}:{}:{}", path.display(), e.line(), e.column()),
        message: e.to_string(),
    })
}

fn located(name: &str, e: Error) -> Error {
    match e {
        Error::Fixture { .. } => e,
        other => Error::Fixture {
            location: name.to_string(),
            message: other.to_string(),
        },
    }
}

pub fn content_hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Corpus {
    /// Loads every `*.json` file of `dir`.
    pub fn load(dir: &Path) -> Result<Corpus> {
        if !dir.is_dir() {
            return Err(Error::Fixture {
                location: dir.display().to_string(),
                message: "corpus directory not found".into(),
            });
        }
        let mut files = Vec::new();
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) == Some("json") {
                files.push(path);
            }
        }
        files.sort();
        let mut docs = Vec::new();
        for path in files {
            let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            let bytes = std::fs::read(&path)?;
            let fixture = parse(&path, &bytes)?;
            docs.push((name, content_hash(&bytes), fixture));
        }
        Corpus::from_fixtures(docs)
    }

    /// Loads one fixture file together with the fixtures it refers to,
    /// looked up by name in the same directory.
    pub fn load_file(path: &Path) -> Result<(Corpus, String)> {
        let dir = path.parent().unwrap_or(Path::new("."));
        let root = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        let mut docs: Vec<(String, String, Fixture)> = Vec::new();
        let mut queue = vec![(root.clone(), path.to_path_buf())];
        while let Some((name, file)) = queue.pop() {
            if docs.iter().any(|d| d.0 == name) {
                continue;
            }
            let bytes = std::fs::read(&file).map_err(|e| Error::Fixture {
                location: file.display().to_string(),
                message: e.to_string(),
            })?;
            let fixture = parse(&file, &bytes)?;
            for dep in fixture.dependencies() {
                queue.push((dep.clone(), dir.join(format!("{dep}.json"))));
            }
            docs.push((name, content_hash(&bytes), fixture));
        }
        Ok((Corpus::from_fixtures(docs)?, root))
    }

    /// Resolves `(name, hash, fixture)` triples.
    pub fn from_fixtures(mut docs: Vec<(String, String, Fixture)>) -> Result<Corpus> {
        docs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut corpus = Corpus {
            entries: docs
                .iter()
                .map(|(name, sha256, f)| Entry {
                    name: name.clone(),
                    kind: f.kind(),
                    sha256: sha256.clone(),
                })
                .collect(),
            ..Corpus::default()
        };
        for rank in 0..3 {
            for (name, _, f) in docs.iter().filter(|d| d.2.rank() == rank) {
                corpus.resolve(name, f).map_err(|e| located(name, e))?;
            }
        }
        Ok(corpus)
    }

    fn index(&self, name: &str) -> Result<&LoadedIndex> {
        self.indices
            .iter()
            .find(|i| i.name == name)
            .ok_or_else(|| Error::unknown("index", name))
    }

    pub fn diagram(&self, name: &str) -> Result<&LoadedDiagram> {
        self.diagrams
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| Error::unknown("diagram", name))
    }

    fn sigma(&self, index: &str, name: &str) -> Result<SigmaClass> {
        self.index(index)?
            .sigma
            .get(name)
            .cloned()
            .ok_or_else(|| Error::unknown("sigma class", format!("{index}/{name}")))
    }

    fn resolve(&mut self, name: &str, f: &Fixture) -> Result<()> {
        let name = name.to_string();
        match f {
            Fixture::Category { category } => {
                self.categories.push((name, Arc::new(validate_fincat(category)?)));
            }
            Fixture::Index { index } => {
                let (cat, mut sigma) = validate_twocat(index)?;
                sigma.entry("all".into()).or_insert_with(|| SigmaClass::all(&cat));
                sigma.entry("identities".into()).or_insert_with(|| SigmaClass::identities(&cat));
                self.indices.push(LoadedIndex {
                    name,
                    cat: Arc::new(cat),
                    sigma,
                });
            }
            Fixture::Diagram { diagram, sigma, lex } => {
                let index = self.index(&diagram.index)?.cat.clone();
                let f = validate_pseudofunctor(diagram, index)?;
                let s = self.sigma(&diagram.index, sigma)?;
                self.diagrams.push(LoadedDiagram {
                    name,
                    diagram: f,
                    sigma_name: sigma.clone(),
                    sigma: s,
                    lex: *lex,
                });
            }
            Fixture::Representable { index, at } => {
                let c = self.index(index)?.cat.clone();
                let x = c.zero_id(at).ok_or_else(|| Error::unknown("0-cell", at))?;
                self.representables.push((name, representable_pseudofunctor(&c, x)));
            }
            Fixture::CofinalMap {
                source,
                target,
                map,
                sigma,
                target_sigma,
                diagram,
            } => {
                let (s, t) = (self.index(source)?.cat.clone(), self.index(target)?.cat.clone());
                let g = self.diagram(diagram)?;
                if !Arc::ptr_eq(g.diagram.source(), &t) {
                    return Err(Error::Precondition(format!("diagram {diagram} is not over {target}")));
                }
                self.maps.push(LoadedMap {
                    name,
                    map: TwoFunctor::from_doc(map, s, t)?,
                    sigma: self.sigma(source, sigma)?,
                    target_sigma: self.sigma(target, target_sigma)?,
                    diagram: diagram.clone(),
                });
            }
            Fixture::Pseudoidempotent { carrier, endo, mult } => {
                let x = Arc::new(validate_fincat(carrier)?);
                let e = Functor::from_doc(endo, x.clone(), x)?;
                let m = NatTrans::from_doc(mult, e.after(&e), e.clone())?;
                self.idempotents.push((name, Pseudoidempotent::new(e, m)?));
            }
            Fixture::Commutation { shape } => {
                let d = |n: &str| self.diagram(n).map(|d| d.diagram.clone());
                let shape = match shape {
                    ShapeDoc::Product { first, second } => Shape::Product(d(first)?, d(second)?),
                    ShapeDoc::Cotensor { diagram } => Shape::Cotensor(d(diagram)?),
                    ShapeDoc::Equalizer {
                        source,
                        target,
                        first,
                        second,
                    } => {
                        let (a, b) = (d(source)?, d(target)?);
                        let stage = |docs: &BTreeMap<String, FunctorDoc>| -> Result<Vec<Functor>> {
                            a.source()
                                .zero_cells()
                                .map(|i| {
                                    let z = a.source().zero_name(i);
                                    let doc = docs.get(z).ok_or_else(|| Error::unknown("stage", z))?;
                                    Functor::from_doc(doc, a.fiber(i).clone(), b.fiber(i).clone())
                                })
                                .collect()
                        };
                        let (first, second) = (stage(first)?, stage(second)?);
                        Shape::Equalizer {
                            source: a,
                            target: b,
                            first,
                            second,
                        }
                    }
                };
                self.commutations.push((name, shape));
            }
        }
        Ok(())
    }

    pub fn n_fixtures(&self) -> usize {
        self.entries.len()
    }
}

fn index_doc(c: &TwoCat, sigma: &[(&str, SigmaClass)]) -> TwoCatDoc {
    let mut doc = c.to_doc();
    for (name, s) in sigma {
        if *name != "all" && *name != "identities" {
            doc.sigma.insert(name.to_string(), s.names(c));
        }
    }
    doc
}

fn shape_doc(shape: &Shape, names: &dyn Fn(&CatPseudoFunctor) -> String) -> ShapeDoc {
    match shape {
        Shape::Product(a, b) => ShapeDoc::Product {
            first: names(a),
            second: names(b),
        },
        Shape::Cotensor(a) => ShapeDoc::Cotensor { diagram: names(a) },
        Shape::Equalizer {
            source,
            target,
            first,
            second,
        } => {
            let c = source.source();
            let stages = |fs: &[Functor]| c.zero_cells().map(|i| (c.zero_name(i).to_string(), fs[i].to_doc())).collect();
            ShapeDoc::Equalizer {
                source: names(source),
                target: names(target),
                first: stages(first),
                second: stages(second),
            }
        }
    }
}

/// The bundled corpus, generated from the programmatic fixtures.
pub fn bundled() -> Vec<(String, Fixture)> {
    let mut out: Vec<(String, Fixture)> = Vec::new();
    for (name, c) in categories::all() {
        out.push((format!("cat_{name}"), Fixture::Category { category: c.to_doc() }));
    }
    let mut index_names: Vec<(String, TwoCat)> = Vec::new();
    for (name, c, sigma) in indices::all() {
        out.push((name.to_string(), Fixture::Index { index: index_doc(&c, &sigma) }));
        index_names.push((name.to_string(), c));
    }
    let c2 = indices::chain2();
    out.push(("chain2".into(), Fixture::Index { index: index_doc(&c2, &[]) }));
    index_names.push(("chain2".into(), c2));
    let index_of = |c: &TwoCat| -> String {
        index_names
            .iter()
            .find(|(_, d)| d.to_doc() == c.to_doc())
            .map(|(n, _)| n.clone())
            .expect("diagram over a corpus index")
    };
    let mut diagram_docs: Vec<(String, PseudoFunctorDoc)> = Vec::new();
    let push_diagram = |out: &mut Vec<(String, Fixture)>,
                        docs: &mut Vec<(String, PseudoFunctorDoc)>,
                        name: String,
                        f: &CatPseudoFunctor,
                        sigma: &str,
                        lex: bool| {
        let doc = f.to_doc(&index_of(f.source()));
        docs.push((name.clone(), doc.clone()));
        out.push((
            name,
            Fixture::Diagram {
                diagram: doc,
                sigma: sigma.to_string(),
                lex,
            },
        ));
    };
    for (name, f, s) in diagrams::all() {
        let c = f.source();
        let sigma = indices::all()
            .into_iter()
            .find(|(_, d, _)| d.to_doc() == c.to_doc())
            .and_then(|(_, _, classes)| classes.into_iter().find(|(_, t)| t == &s).map(|(n, _)| n))
            .expect("named Σ-class");
        push_diagram(&mut out, &mut diagram_docs, name.to_string(), &f, sigma, false);
    }
    for (name, f) in lex::all() {
        push_diagram(&mut out, &mut diagram_docs, name.to_string(), &f, "all", true);
    }
    let extra: Vec<(String, CatPseudoFunctor)> = instances::commutation_instances()
        .into_iter()
        .flat_map(|(_, shape)| match shape {
            Shape::Product(_, b) => vec![b],
            Shape::Equalizer { target, .. } => vec![target],
            Shape::Cotensor(_) => vec![],
        })
        .enumerate()
        .map(|(k, f)| (format!("commutation_factor_{k}"), f))
        .collect();
    let known = |f: &CatPseudoFunctor, docs: &[(String, PseudoFunctorDoc)]| {
        let doc = f.to_doc(&index_of(f.source()));
        docs.iter().find(|(_, d)| *d == doc).map(|(n, _)| n.clone())
    };
    for (name, f) in &extra {
        if known(f, &diagram_docs).is_none() {
            push_diagram(&mut out, &mut diagram_docs, name.clone(), f, "all", false);
        }
    }
    for (name, index, at) in [
        ("representable_poset_top_a", "poset_top", "a"),
        ("representable_iso_hom_a", "iso_hom", "a"),
        ("representable_idempotent", "idempotent_counit", "i"),
    ] {
        out.push((
            name.into(),
            Fixture::Representable {
                index: index.into(),
                at: at.into(),
            },
        ));
    }
    for (name, m) in maps::all() {
        out.push((
            name.into(),
            Fixture::CofinalMap {
                source: m.source.into(),
                target: m.target.into(),
                map: m.map.to_doc(),
                sigma: m.sigma.into(),
                target_sigma: m.target_sigma.into(),
                diagram: m.diagram.into(),
            },
        ));
    }
    for (name, p) in instances::pseudoidempotents() {
        out.push((
            name.into(),
            Fixture::Pseudoidempotent {
                carrier: p.carrier.to_doc(),
                endo: p.endo.to_doc(),
                mult: p.mult.to_doc(),
            },
        ));
    }
    for (name, shape) in instances::commutation_instances() {
        let names = |f: &CatPseudoFunctor| known(f, &diagram_docs).expect("registered diagram");
        out.push((name.into(), Fixture::Commutation { shape: shape_doc(&shape, &names) }));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Serialized bytes of a fixture as stored on disk.
pub fn fixture_bytes(f: &Fixture) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(f).expect("fixtures serialize");
    s.push('\n');
    s.into_bytes()
}

/// Writes the bundled corpus into `dir`, one file per fixture.
pub fn write_bundled(dir: &Path) -> Result<usize> {
    std::fs::create_dir_all(dir)?;
    let fixtures = bundled();
    for (name, f) in &fixtures {
        std::fs::write(dir.join(format!("{name}.json")), fixture_bytes(f))?;
    }
    Ok(fixtures.len())
}

/// The bundled corpus resolved in memory, hashed as it would be on disk.
pub fn bundled_corpus() -> Result<Corpus> {
    let docs = bundled()
        .into_iter()
        .map(|(name, f)| {
            let hash = content_hash(&fixture_bytes(&f));
            (name, hash, f)
        })
        .collect();
    Corpus::from_fixtures(docs)
}
