//! Cat-valued diagrams used by the bundled corpus. All fibers are thin, so
//! functors and transformations are determined by their object maps.

use std::sync::Arc;

use super::indices;
use crate::fincat::{FinCat, Functor, NatTrans};
use crate::twocat::{sigma_closure, CatPseudoFunctor, SigmaClass, TwoCat};

/// The functor between thin categories with the given object map.
pub fn thin_functor(src: &Arc<FinCat>, tgt: &Arc<FinCat>, objects: &[&str]) -> Functor {
    let obj: Vec<usize> = objects
        .iter()
        .map(|n| tgt.object_id(n).unwrap_or_else(|| panic!("unknown object {n}")))
        .collect();
    let mor = src
        .morphisms()
        .map(|f| tgt.hom(obj[src.dom(f)], obj[src.cod(f)])[0])
        .collect();
    Functor::new(src.clone(), tgt.clone(), obj, mor).expect("thin functor")
}

/// The unique transformation `f ⇒ g` into a thin category.
pub fn thin_nat(f: &Functor, g: &Functor) -> NatTrans {
    let t = f.target();
    let components = f
        .source()
        .objects()
        .map(|a| t.hom(f.obj(a), g.obj(a))[0])
        .collect();
    NatTrans::new(f.clone(), g.clone(), components).expect("thin transformation")
}

/// Strict diagram on thin fibers from a 1-cell assignment; 2-cells go to
/// the unique transformations.
pub fn thin_strict(index: &Arc<TwoCat>, cats: Vec<Arc<FinCat>>, on1: &dyn Fn(usize) -> Functor) -> CatPseudoFunctor {
    let on1: Vec<Functor> = index.one_cells().map(on1).collect();
    let on2 = index
        .two_cells()
        .map(|a| thin_nat(&on1[index.dom2(a)], &on1[index.cod2(a)]))
        .collect();
    CatPseudoFunctor::strict(index.clone(), cats, on1, on2).expect("strict thin diagram")
}

pub fn chain(names: &[&str]) -> Arc<FinCat> {
    Arc::new(FinCat::poset(names, |i, j| i <= j).expect("chain"))
}

pub fn arrow() -> Arc<FinCat> {
    Arc::new(FinCat::walking_arrow())
}

/// Constant at the walking arrow over `a ≤ top ≥ b`.
pub fn constant_arrow() -> CatPseudoFunctor {
    CatPseudoFunctor::constant(Arc::new(indices::poset_top()), arrow())
}

/// `{x} ⊂ {x, y} ⊂ {x, y, z}` over `0 ≤ 1 ≤ 2`.
pub fn chain_inclusions() -> CatPseudoFunctor {
    let index = Arc::new(indices::chain3());
    let cats = vec![chain(&["x"]), chain(&["x", "y"]), chain(&["x", "y", "z"])];
    let names = ["x", "y", "z"];
    thin_strict(&index, cats.clone(), &|s| {
        let (i, j) = (index.src(s), index.tgt(s));
        thin_functor(&cats[i], &cats[j], &names[..=i])
    })
}

/// Constant at the walking isomorphism over `0 ≤ 1 ≤ 2`, with `F(0 ≤ 1)`
/// replaced by the collapse onto `a`; comparison cells become nontrivial.
pub fn twisted_iso() -> CatPseudoFunctor {
    let index = Arc::new(indices::chain3());
    let x = Arc::new(FinCat::walking_iso());
    let base = CatPseudoFunctor::constant(index.clone(), x.clone());
    let s = index.one_id("0<1").expect("1-cell");
    let collapse = thin_functor(&x, &x, &["a", "a"]);
    let psi = thin_nat(&Functor::identity(x), &collapse);
    base.transport(&[(s, psi)]).expect("transport along an invertible cell")
}

/// Over the iso-hom index: `F(a) = 1`, `F(b)` the walking isomorphism,
/// `F(u)` and `F(v)` picking its two objects.
pub fn iso_pick() -> CatPseudoFunctor {
    let index = Arc::new(indices::iso_hom());
    let cats = vec![chain(&["*"]), Arc::new(FinCat::walking_iso())];
    thin_strict(&index, cats.clone(), &|s| match index.one_name(s) {
        "u" => thin_functor(&cats[0], &cats[1], &["a"]),
        "v" => thin_functor(&cats[0], &cats[1], &["b"]),
        _ => Functor::identity(cats[index.src(s)].clone()),
    })
}

/// Over the idempotent with counit: the walking arrow with `e` acting as
/// the collapse onto its source.
pub fn idempotent_collapse() -> CatPseudoFunctor {
    let index = Arc::new(indices::idempotent_counit());
    let x = arrow();
    thin_strict(&index, vec![x.clone()], &|s| match index.one_name(s) {
        "e" => thin_functor(&x, &x, &["a", "a"]),
        _ => Functor::identity(x.clone()),
    })
}

/// Walking arrow at every 0-cell; Σ-arrows act as identities, the loose
/// arrow `d` as the collapse onto the source.
fn collapse_on_d(index: TwoCat) -> CatPseudoFunctor {
    let index = Arc::new(index);
    let x = arrow();
    thin_strict(&index, vec![x.clone(); index.n0()], &|s| match index.one_name(s) {
        "d" => thin_functor(&x, &x, &["a", "a"]),
        _ => Functor::identity(x.clone()),
    })
}

pub fn lax_pair_collapse() -> CatPseudoFunctor {
    collapse_on_d(indices::lax_pair())
}

pub fn lax_top_collapse() -> CatPseudoFunctor {
    collapse_on_d(indices::lax_top())
}

pub fn loose_top_collapse() -> CatPseudoFunctor {
    collapse_on_d(indices::loose_top())
}

/// Named diagrams with the Σ-class they are meant to be read with.
pub fn all() -> Vec<(&'static str, CatPseudoFunctor, SigmaClass)> {
    let with_all = |f: CatPseudoFunctor| {
        let s = SigmaClass::all(f.source());
        (f, s)
    };
    let mut out = Vec::new();
    for (name, f) in [
        ("constant_arrow", constant_arrow()),
        ("chain_inclusions", chain_inclusions()),
        ("twisted_iso", twisted_iso()),
        ("iso_pick", iso_pick()),
    ] {
        let (f, s) = with_all(f);
        out.push((name, f, s));
    }
    let f = idempotent_collapse();
    let s = SigmaClass::identities(f.source());
    out.push(("idempotent_collapse", f, s));
    let f = lax_pair_collapse();
    let s = indices::lax_pair_sigma(f.source());
    out.push(("lax_pair_collapse", f, s));
    let f = lax_top_collapse();
    let s = indices::lax_top_sigma(f.source());
    out.push(("lax_top_collapse", f, s));
    out
}

/// Every diagram over a bifiltered index: σ-filtered ones are restricted
/// to the sub-2-category on their closed Σ-class.
pub fn bifiltered() -> Vec<(&'static str, CatPseudoFunctor)> {
    all()
        .into_iter()
        .map(|(name, f, s)| {
            if s.is_all(f.source()) {
                return (name, f);
            }
            let closed = sigma_closure(f.source(), &s);
            let (_, incl) = f.source().restrict_one_cells(&closed).expect("Σ-subcategory");
            (name, f.precompose(&incl).expect("restriction"))
        })
        .collect()
}
