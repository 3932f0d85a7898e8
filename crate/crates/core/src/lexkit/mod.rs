//! Finite limits in finite categories, lex functors, and the lex closure of
//! bifiltered bicolimits checked on concrete diagrams.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::colim::{bifiltered_bicolimit, ColimitCat, Premorphism};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, Functor};
use crate::twocat::{CatPseudoFunctor, Counterexample, Verdict, Witness};

mod graph;
#[cfg(test)]
mod tests;

pub use graph::{enumerate_diagrams, is_limit, limit_of, Cone, GraphDiagram};

/// `(apex, first, second)` of a product cone.
pub type ProductCone = (usize, usize, usize);

/// Terminal object, binary products and equalizers, each with a cone whose
/// universal property was checked exhaustively.
#[derive(Clone, Debug, Serialize)]
pub struct LimitWitnesses {
    pub terminal: usize,
    /// Keyed by the ordered object pair.
    #[serde(serialize_with = "entries")]
    pub products: BTreeMap<(usize, usize), ProductCone>,
    /// Keyed by the ordered parallel pair; value `(apex, inclusion)`.
    #[serde(serialize_with = "entries")]
    pub equalizers: BTreeMap<(usize, usize), (usize, usize)>,
}

fn entries<S: serde::Serializer, K: Serialize, V: Serialize>(m: &BTreeMap<K, V>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter())
}

/// The first finite diagram without a limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MissingLimit {
    pub shape: String,
    pub instance: Vec<String>,
}

pub fn is_terminal(c: &FinCat, t: usize) -> bool {
    c.objects().all(|x| c.hom(x, t).len() == 1)
}

pub fn is_product(c: &FinCat, a: usize, b: usize, cone: ProductCone) -> bool {
    let (p, f, g) = cone;
    if c.dom(f) != p || c.dom(g) != p || c.cod(f) != a || c.cod(g) != b {
        return false;
    }
    c.objects().all(|x| {
        let mut seen: Vec<(usize, usize)> = c.hom(x, p).iter().map(|&h| (c.comp(f, h), c.comp(g, h))).collect();
        let n = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == n && n == c.hom(x, a).len() * c.hom(x, b).len()
    })
}

pub fn is_equalizer(c: &FinCat, f: usize, g: usize, e: usize, m: usize) -> bool {
    let a = c.dom(f);
    if c.dom(m) != e || c.cod(m) != a || c.comp(f, m) != c.comp(g, m) {
        return false;
    }
    c.objects().all(|x| {
        let mut seen: Vec<usize> = c.hom(x, e).iter().map(|&h| c.comp(m, h)).collect();
        let n = seen.len();
        seen.sort_unstable();
        seen.dedup();
        let equalized = c.hom(x, a).iter().filter(|&&h| c.comp(f, h) == c.comp(g, h)).count();
        seen.len() == n && n == equalized
    })
}

pub fn finite_limit_witnesses(c: &FinCat) -> std::result::Result<LimitWitnesses, MissingLimit> {
    let name = |x: usize| c.object_name(x).to_string();
    let terminal = c.objects().find(|&t| is_terminal(c, t)).ok_or(MissingLimit {
        shape: "terminal".into(),
        instance: Vec::new(),
    })?;
    let mut products = BTreeMap::new();
    for a in c.objects() {
        for b in c.objects() {
            let cone = c.objects().find_map(|p| {
                c.hom(p, a).iter().find_map(|&f| {
                    c.hom(p, b)
                        .iter()
                        .find(|&&g| is_product(c, a, b, (p, f, g)))
                        .map(|&g| (p, f, g))
                })
            });
            match cone {
                Some(x) => products.insert((a, b), x),
                None => {
                    return Err(MissingLimit {
                        shape: "product".into(),
                        instance: vec![name(a), name(b)],
                    })
                }
            };
        }
    }
    let mut equalizers = BTreeMap::new();
    for f in c.morphisms() {
        for &g in c.hom(c.dom(f), c.cod(f)) {
            let found = c
                .objects()
                .find_map(|e| c.hom(e, c.dom(f)).iter().find(|&&m| is_equalizer(c, f, g, e, m)).map(|&m| (e, m)));
            match found {
                Some(x) => equalizers.insert((f, g), x),
                None => {
                    return Err(MissingLimit {
                        shape: "equalizer".into(),
                        instance: vec![c.morphism_name(f).into(), c.morphism_name(g).into()],
                    })
                }
            };
        }
    }
    Ok(LimitWitnesses {
        terminal,
        products,
        equalizers,
    })
}

/// Whether `f` carries the witness cones of its (lex) source to limit
/// cones; the verdict names the first cone that is not preserved.
pub fn is_lex_functor(f: &Functor) -> Result<Verdict> {
    let (c, d) = (f.source(), f.target());
    let w = finite_limit_witnesses(c)
        .map_err(|m| Error::Precondition(format!("source is not lex: no {} for {:?}", m.shape, m.instance)))?;
    let fail = |shape: &str, instance: Vec<String>| {
        Ok(Verdict::negative(
            "lex functor",
            Counterexample {
                condition: format!("preserves {shape}"),
                instance,
                searched: 0,
                detail: "image cone is not a limit".into(),
            },
        ))
    };
    if !is_terminal(d, f.obj(w.terminal)) {
        return fail("terminal", vec![c.object_name(w.terminal).into()]);
    }
    for (&(a, b), &(p, g, h)) in &w.products {
        if !is_product(d, f.obj(a), f.obj(b), (f.obj(p), f.mor(g), f.mor(h))) {
            return fail(
                "product",
                vec![c.object_name(p).into(), c.morphism_name(g).into(), c.morphism_name(h).into()],
            );
        }
    }
    for (&(g, h), &(e, m)) in &w.equalizers {
        if !is_equalizer(d, f.mor(g), f.mor(h), f.obj(e), f.mor(m)) {
            return fail("equalizer", vec![c.object_name(e).into(), c.morphism_name(m).into()]);
        }
    }
    let n = 1 + w.products.len() + w.equalizers.len();
    Ok(Verdict::positive(
        "lex functor",
        vec![Witness::Note {
            text: format!("{n} witness cones preserved"),
        }],
    ))
}

/// The outcome of the three lex-closure checks on one diagram.
#[derive(Clone, Debug, Serialize)]
pub struct LexColimitReport {
    pub colimit_lex: Option<MissingLimit>,
    /// Stages whose cocone leg is not lex.
    pub legs_not_lex: Vec<String>,
    pub sampled: usize,
    /// Sampled diagrams whose stage-wise limit does not map to a limit.
    pub formula_failures: Vec<String>,
}

impl LexColimitReport {
    pub fn holds(&self) -> bool {
        self.colimit_lex.is_none() && self.legs_not_lex.is_empty() && self.formula_failures.is_empty()
    }
}

/// Bounds of the stage-wise limit sampling.
pub const SAMPLE_OBJECTS: usize = 3;
pub const SAMPLE_MORPHISMS: usize = 4;

/// Checks that the bifiltered bicolimit of lex categories along lex
/// functors is lex, that its legs are lex, and that limits of sampled
/// finite diagrams are computed at a single stage.
pub fn verify_lex_bicolimit(f: &CatPseudoFunctor) -> Result<LexColimitReport> {
    let c = f.source();
    for i in c.zero_cells() {
        if let Err(m) = finite_limit_witnesses(f.fiber(i)) {
            return Err(Error::Precondition(format!(
                "fiber at {} is not lex: no {} for {:?}",
                c.zero_name(i),
                m.shape,
                m.instance
            )));
        }
    }
    for d in c.one_cells() {
        if !is_lex_functor(f.on1(d))?.holds() {
            return Err(Error::Precondition(format!("F({}) is not lex", c.one_name(d))));
        }
    }
    let col = bifiltered_bicolimit(f)?;
    let colimit_lex = finite_limit_witnesses(col.result()).err();
    let mut legs_not_lex = Vec::new();
    for i in c.zero_cells() {
        if !is_lex_functor(col.cocone(i))?.holds() {
            legs_not_lex.push(c.zero_name(i).to_string());
        }
    }
    let diagrams = enumerate_diagrams(col.result(), SAMPLE_OBJECTS, SAMPLE_MORPHISMS);
    let mut formula_failures = Vec::new();
    for g in &diagrams {
        if !stagewise_limit_holds(&col, g) {
            formula_failures.push(g.describe(col.result()));
        }
    }
    Ok(LexColimitReport {
        colimit_lex,
        legs_not_lex,
        sampled: diagrams.len(),
        formula_failures,
    })
}

/// Lifts `g` to one stage `J`, takes the limit there, and checks that its
/// image under `q_J` is a limit of `g`.
pub fn stagewise_limit_holds(col: &ColimitCat, g: &GraphDiagram) -> bool {
    let f = col.diagram();
    let c = f.source();
    let r = col.result();
    let names = |x: usize| -> (usize, usize) {
        let name = r.object_name(x);
        let (i, a) = name.split_once(':').expect("colimit objects are named i:a");
        let i = c.zero_id(i).expect("stage");
        (i, f.fiber(i).object_id(a).expect("object"))
    };
    let nodes: Vec<(usize, usize)> = g.nodes.iter().map(|&x| names(x)).collect();
    for stage in c.zero_cells() {
        let Some(legs) = nodes
            .iter()
            .map(|&(i, _)| c.hom(i, stage).first().copied())
            .collect::<Option<Vec<usize>>>()
        else {
            continue;
        };
        let fj = f.fiber(stage);
        let lifted_nodes: Vec<usize> = nodes.iter().zip(&legs).map(|(&(_, a), &u)| f.on1(u).obj(a)).collect();
        let lifted_edges: Option<Vec<(usize, usize, usize)>> = g
            .edges
            .iter()
            .map(|&(s, t, m)| {
                fj.hom(lifted_nodes[s], lifted_nodes[t])
                    .iter()
                    .copied()
                    .find(|&psi| {
                        let p = Premorphism {
                            src: nodes[s],
                            tgt: nodes[t],
                            apex: stage,
                            left: legs[s],
                            right: legs[t],
                            cell: psi,
                        };
                        col.class_of(&p) == Some(m)
                    })
                    .map(|psi| (s, t, psi))
            })
            .collect();
        let Some(edges) = lifted_edges else {
            continue;
        };
        let local = GraphDiagram {
            nodes: lifted_nodes,
            edges,
        };
        let Some(limit) = limit_of(fj, &local) else {
            return false;
        };
        let apex = col.object_id(stage, limit.apex).expect("colimit object");
        let one = c.id1(stage);
        let image: Option<Vec<usize>> = limit
            .legs
            .iter()
            .enumerate()
            .map(|(k, &l)| {
                let cell = fj.comp(l, f.iota_inv_at(stage, limit.apex));
                col.class_of(&Premorphism {
                    src: (stage, limit.apex),
                    tgt: nodes[k],
                    apex: stage,
                    left: one,
                    right: legs[k],
                    cell,
                })
            })
            .collect();
        let Some(image) = image else {
            return false;
        };
        return is_limit(r, g, &Cone { apex, legs: image });
    }
    false
}
