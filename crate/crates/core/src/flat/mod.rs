//! Flatness of Cat-valued pseudofunctors, decided on the 1-cell dual of the
//! category of elements, and the reconstruction of a flat pseudofunctor as a
//! bifiltered bicolimit of representables.

use std::sync::Arc;

use serde::Serialize;

use crate::bilim::{biproduct, Summary};
use crate::colim::{bifiltered_bicolimit, elements_category, factor_cocone, ElementsCat, SigmaCocone};
use crate::error::{Error, Result};
use crate::fincat::{analyze_functor, check_equivalence, FinCat, Functor, FunctorAnalysis, NatTrans};
use crate::filtered::check_sigma_filtered;
use crate::twocat::{CatPseudoFunctor, Counterexample, SigmaClass, TwoCat, Verdict, Witness};

#[cfg(test)]
mod tests;

fn morphism_named(cat: &FinCat, name: &str) -> usize {
    cat.morphism_id(name)
        .unwrap_or_else(|| panic!("2-cell {name} missing from its hom-category"))
}

fn position(list: &[usize], x: usize) -> usize {
    list.iter().position(|&y| y == x).expect("1-cell in its hom")
}

/// The strict 2-functor `C(x, −)`: post-composition on 1-cells, whiskering
/// on 2-cells.
pub fn representable_pseudofunctor(c: &Arc<TwoCat>, x: usize) -> CatPseudoFunctor {
    let cats: Vec<Arc<FinCat>> = c.zero_cells().map(|j| Arc::new(c.hom_cat(x, j))).collect();
    let on1: Vec<Functor> = c
        .one_cells()
        .map(|t| post_compose(c, &cats, x, t))
        .collect();
    let on2 = c
        .two_cells()
        .map(|b| {
            let (t, t2) = (c.dom2(b), c.cod2(b));
            let k = c.tgt(t);
            let components = c
                .hom(x, c.src(t))
                .iter()
                .map(|&s| morphism_named(&cats[k], c.two_name(c.whisker_r(b, s))))
                .collect();
            NatTrans::new(on1[t].clone(), on1[t2].clone(), components).expect("whiskering is natural")
        })
        .collect();
    CatPseudoFunctor::strict(c.clone(), cats, on1, on2).expect("representable 2-functor")
}

fn post_compose(c: &TwoCat, cats: &[Arc<FinCat>], x: usize, t: usize) -> Functor {
    let (j, k) = (c.src(t), c.tgt(t));
    let (from, to) = (&cats[j], &cats[k]);
    let obj = c.hom(x, j).iter().map(|&s| position(c.hom(x, k), c.h1(t, s))).collect();
    let mor = from
        .morphisms()
        .map(|m| {
            let a = c.two_id(from.morphism_name(m)).expect("2-cell");
            morphism_named(to, c.two_name(c.whisker_l(t, a)))
        })
        .collect();
    Functor::new(from.clone(), to.clone(), obj, mor).expect("post-composition functor")
}

/// `(∫F)^op` with the opcartesian 1-cells.
fn dual_elements(el: &ElementsCat) -> Result<(Arc<TwoCat>, SigmaClass)> {
    let op = Arc::new(el.total.op1());
    let sigma = SigmaClass::new(&op, el.opcartesian.members())?;
    Ok((op, sigma))
}

/// Decides flatness: `(∫F)^op` must be σ-filtered relative to the
/// opcartesian 1-cells.
pub fn check_flat(f: &CatPseudoFunctor) -> Result<Verdict> {
    let el = elements_category(f)?;
    if el.total.n0() == 0 {
        return Ok(Verdict::negative(
            "flat",
            Counterexample {
                condition: "nonempty elements".into(),
                instance: Vec::new(),
                searched: 0,
                detail: "the category of elements is empty".into(),
            },
        ));
    }
    let (op, sigma) = dual_elements(&el)?;
    let inner = check_sigma_filtered(&op, &sigma)?;
    Ok(Verdict::all("flat", vec![inner]))
}

/// Reconstruction of one fiber `F(j)` as a bicolimit of representables.
#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub zero_cell: String,
    pub colimit: Summary,
    pub fiber: Summary,
    /// Analysis of the canonical comparison functor into `F(j)`.
    pub comparison: FunctorAnalysis,
    pub equivalent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub elements: usize,
    pub opcartesian: usize,
    pub stages: Vec<Stage>,
    /// Failed naturality spot checks, by base 1-cell and object.
    pub naturality_failures: Vec<String>,
}

impl Decomposition {
    pub fn reconstructs(&self) -> bool {
        self.naturality_failures.is_empty() && self.stages.iter().all(|s| s.equivalent && s.comparison.is_equivalence())
    }
}

/// Rebuilds every fiber of a flat `F` as the bifiltered bicolimit of
/// `C(c, j)` over the opcartesian part of `(∫F)^op`.
pub fn decompose_flat(f: &CatPseudoFunctor) -> Result<Decomposition> {
    let verdict = check_flat(f)?;
    if !verdict.holds() {
        let why = verdict
            .first_counterexample()
            .map(|c| format!("{} at {:?}", c.condition, c.instance))
            .unwrap_or_default();
        return Err(Error::Precondition(format!("not flat: {why}")));
    }
    let base = f.source().clone();
    let el = elements_category(f)?;
    let (op, sigma) = dual_elements(&el)?;
    let (sub, incl) = op.restrict_one_cells(&sigma)?;

    let mut stages = Vec::new();
    let mut comparisons = Vec::new();
    let mut colimits = Vec::new();
    for j in base.zero_cells() {
        let reps: Vec<Arc<FinCat>> = base.zero_cells().map(|c| Arc::new(base.hom_cat(c, j))).collect();
        let cats: Vec<Arc<FinCat>> = sub
            .zero_cells()
            .map(|x| reps[el.object(incl.on0(x)).0].clone())
            .collect();
        let on1: Vec<Functor> = sub
            .one_cells()
            .map(|u| {
                let (g, _, _) = el.one_cell(incl.on1(u));
                pre_compose(&base, &reps, j, g)
            })
            .collect();
        let on2 = sub
            .two_cells()
            .map(|w| {
                let (u, u2) = (sub.dom2(w), sub.cod2(w));
                let alpha = el.projection.on2(incl.on2(w));
                let (g, _, _) = el.one_cell(incl.on1(u));
                let components = base
                    .hom(base.tgt(g), j)
                    .iter()
                    .map(|&s| morphism_named(&reps[base.src(g)], base.two_name(base.whisker_l(s, alpha))))
                    .collect();
                NatTrans::new(on1[u].clone(), on1[u2].clone(), components)
            })
            .collect::<Result<Vec<_>>>()?;
        let g = CatPseudoFunctor::strict(sub.clone(), cats, on1, on2)?;
        let col = bifiltered_bicolimit(&g)?;

        let target = f.fiber(j).clone();
        let legs: Vec<Functor> = sub
            .zero_cells()
            .map(|x| {
                let (c, a) = el.object(incl.on0(x));
                evaluation(f, &base, &reps[c], c, j, a)
            })
            .collect();
        let cells = sub
            .one_cells()
            .map(|u| {
                let (g1, a, phi) = el.one_cell(incl.on1(u));
                let components = base
                    .hom(base.tgt(g1), j)
                    .iter()
                    .map(|&s| target.comp(f.on1(s).mor(phi), f.mu_inv_at(g1, s, a)))
                    .collect();
                let (from, to) = (sub.src(u), sub.tgt(u));
                NatTrans::new(legs[to].after(g.on1(u)), legs[from].clone(), components)
            })
            .collect::<Result<Vec<_>>>()?;
        let cone = SigmaCocone {
            target: target.clone(),
            legs,
            cells,
        };
        let k = factor_cocone(&col, &cone)?.functor;
        let comparison = analyze_functor(&k);
        stages.push(Stage {
            zero_cell: base.zero_name(j).to_string(),
            colimit: Summary::from(&**col.result()),
            fiber: Summary::from(&*target),
            equivalent: check_equivalence(col.result(), &target).holds(),
            comparison,
        });
        comparisons.push(k);
        colimits.push(col);
    }

    let mut naturality_failures = Vec::new();
    for t in base.one_cells() {
        let (j, j2) = (base.src(t), base.tgt(t));
        for x in sub.zero_cells() {
            let c = el.object(incl.on0(x)).0;
            for (k, &s) in base.hom(c, j).iter().enumerate() {
                let here = colimits[j].object_id(x, k).expect("colimit object");
                let k2 = position(base.hom(c, j2), base.h1(t, s));
                let there = colimits[j2].object_id(x, k2).expect("colimit object");
                let lhs = f.on1(t).obj(comparisons[j].obj(here));
                let rhs = comparisons[j2].obj(there);
                if f.fiber(j2).iso_between(lhs, rhs).is_none() {
                    naturality_failures.push(format!(
                        "{} at {}",
                        base.one_name(t),
                        colimits[j].result().object_name(here)
                    ));
                }
            }
        }
    }
    Ok(Decomposition {
        elements: el.total.n0(),
        opcartesian: sigma.len(),
        stages,
        naturality_failures,
    })
}

/// `C(c', j) → C(c, j)` by precomposition with `g: c → c'`.
fn pre_compose(base: &TwoCat, reps: &[Arc<FinCat>], j: usize, g: usize) -> Functor {
    let (c, c2) = (base.src(g), base.tgt(g));
    let (from, to) = (&reps[c2], &reps[c]);
    let obj = base.hom(c2, j).iter().map(|&s| position(base.hom(c, j), base.h1(s, g))).collect();
    let mor = from
        .morphisms()
        .map(|m| {
            let a = base.two_id(from.morphism_name(m)).expect("2-cell");
            morphism_named(to, base.two_name(base.whisker_r(a, g)))
        })
        .collect();
    Functor::new(from.clone(), to.clone(), obj, mor).expect("precomposition functor")
}

/// `C(c, j) → F(j)`, `s ↦ F(s)(a)`.
fn evaluation(f: &CatPseudoFunctor, base: &TwoCat, rep: &Arc<FinCat>, c: usize, j: usize, a: usize) -> Functor {
    let obj = base.hom(c, j).iter().map(|&s| f.on1(s).obj(a)).collect();
    let mor = rep
        .morphisms()
        .map(|m| {
            let alpha = base.two_id(rep.morphism_name(m)).expect("2-cell");
            f.on2(alpha).component(a)
        })
        .collect();
    Functor::new(rep.clone(), f.fiber(j).clone(), obj, mor).expect("evaluation functor")
}

/// A finite bilimit cone inside the base 2-category.
#[derive(Clone, Debug)]
pub enum BaseLimit {
    /// A 0-cell with every `hom(j, t)` equivalent to the terminal category.
    Terminal(usize),
    /// `first: apex → x` and `second: apex → y` exhibiting a biproduct.
    Product { first: usize, second: usize },
}

fn pairing(
    p: &Functor,
    q: &Functor,
) -> Functor {
    let prod = biproduct(p.target(), q.target());
    let src = p.source();
    let obj = src.objects().map(|a| prod.object(p.obj(a), q.obj(a))).collect();
    let mor = src.morphisms().map(|m| prod.morphism(p.mor(m), q.mor(m))).collect();
    Functor::new(src.clone(), prod.cat.clone(), obj, mor).expect("pairing functor")
}

fn validate_base_limit(c: &Arc<TwoCat>, lim: &BaseLimit) -> Result<()> {
    let one = Arc::new(FinCat::terminal());
    let bad = |detail: String| Err(Error::Precondition(format!("supplied cone is not a bilimit: {detail}")));
    match *lim {
        BaseLimit::Terminal(t) => {
            for j in c.zero_cells() {
                if !check_equivalence(&Arc::new(c.hom_cat(j, t)), &one).holds() {
                    return bad(format!("hom({}, {}) is not contractible", c.zero_name(j), c.zero_name(t)));
                }
            }
        }
        BaseLimit::Product { first, second } => {
            if c.src(first) != c.src(second) {
                return bad("legs do not share their apex".into());
            }
            for j in c.zero_cells() {
                let r = representable_pseudofunctor(c, j);
                let k = pairing(r.on1(first), r.on1(second));
                if !analyze_functor(&k).is_equivalence() {
                    return bad(format!("pairing at {} is not an equivalence", c.zero_name(j)));
                }
            }
        }
    }
    Ok(())
}

/// Whether `F` carries a supplied bilimit cone of its base to a bilimit
/// cone in Cat.
pub fn check_flat_preserves_bilimits(f: &CatPseudoFunctor, lim: &BaseLimit) -> Result<Verdict> {
    let c = f.source();
    validate_base_limit(c, lim)?;
    let (k, what) = match *lim {
        BaseLimit::Terminal(t) => (
            Functor::constant(f.fiber(t).clone(), Arc::new(FinCat::terminal()), 0),
            format!("F({}) → 1", c.zero_name(t)),
        ),
        BaseLimit::Product { first, second } => (
            pairing(f.on1(first), f.on1(second)),
            format!("F({}) → F({}) × F({})", c.zero_name(c.src(first)), c.zero_name(c.tgt(first)), c.zero_name(c.tgt(second))),
        ),
    };
    let a = analyze_functor(&k);
    Ok(if a.is_equivalence() {
        Verdict::positive("preserves bilimit", vec![Witness::Note { text: format!("{what} is an equivalence") }])
    } else {
        Verdict::negative(
            "preserves bilimit",
            Counterexample {
                condition: "comparison is an equivalence".into(),
                instance: vec![what],
                searched: k.source().n_objects(),
                detail: serde_json::to_string(&a)?,
            },
        )
    })
}
