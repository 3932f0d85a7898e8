//! Pseudoidempotents and commutation instances of the bundled corpus.

use std::sync::Arc;

use super::diagrams::{self, arrow, thin_functor, thin_nat};
use crate::bilim::{biproduct, Pseudoidempotent, Shape};
use crate::fincat::{FinCat, Functor, NatTrans};
use crate::twocat::CatPseudoFunctor;

/// Collapse of the walking isomorphism onto `a`; `υ` is the identity.
pub fn collapse_idempotent() -> Pseudoidempotent {
    let x = Arc::new(FinCat::walking_iso());
    let e = thin_functor(&x, &x, &["a", "a"]);
    Pseudoidempotent::new(e.clone(), NatTrans::identity(&e)).expect("pseudoidempotent")
}

/// The swap of the walking isomorphism, with `υ: swap∘swap = 1 ≅ swap`.
pub fn swap_idempotent() -> Pseudoidempotent {
    let x = Arc::new(FinCat::walking_iso());
    let e = thin_functor(&x, &x, &["b", "a"]);
    let ee = e.after(&e);
    let upsilon = thin_nat(&ee, &e);
    Pseudoidempotent::new(e, upsilon).expect("pseudoidempotent")
}

/// `(a, b) ↦ (a, a)` on the square of the walking arrow.
pub fn diagonal_idempotent() -> Pseudoidempotent {
    let x = arrow();
    let p = biproduct(&x, &x);
    let obj = p
        .cat
        .objects()
        .map(|o| p.object(p.first.obj(o), p.first.obj(o)))
        .collect();
    let mor = p
        .cat
        .morphisms()
        .map(|m| p.morphism(p.first.mor(m), p.first.mor(m)))
        .collect();
    let e = Functor::new(p.cat.clone(), p.cat.clone(), obj, mor).expect("diagonal");
    Pseudoidempotent::new(e.clone(), NatTrans::identity(&e)).expect("pseudoidempotent")
}

pub fn identity_idempotent(x: Arc<FinCat>) -> Pseudoidempotent {
    let e = Functor::identity(x);
    Pseudoidempotent::new(e.clone(), NatTrans::identity(&e)).expect("pseudoidempotent")
}

pub fn pseudoidempotents() -> Vec<(&'static str, Pseudoidempotent)> {
    vec![
        ("collapse_idempotent", collapse_idempotent()),
        ("swap_idempotent", swap_idempotent()),
        ("diagonal_idempotent", diagonal_idempotent()),
        ("identity_idempotent", identity_idempotent(arrow())),
    ]
}

/// Over `0 ≤ 1 ≤ 2`: the chain of inclusions mapped to the walking
/// isomorphism, once onto `a` and once splitting `x` from `y, z`.
pub fn equalizer_instance() -> Shape {
    let source = diagrams::chain_inclusions();
    let iso = Arc::new(FinCat::walking_iso());
    let target = CatPseudoFunctor::constant(source.source().clone(), iso.clone());
    let names = ["a", "b", "b"];
    let first = source
        .fibers()
        .iter()
        .map(|c| thin_functor(c, &iso, &vec!["a"; c.n_objects()]))
        .collect();
    let second = source
        .fibers()
        .iter()
        .map(|c| thin_functor(c, &iso, &names[..c.n_objects()]))
        .collect();
    Shape::Equalizer {
        source,
        target,
        first,
        second,
    }
}

pub fn commutation_instances() -> Vec<(&'static str, Shape)> {
    vec![
        (
            "product_chain_twisted",
            {
                let chain = diagrams::chain_inclusions();
                let twisted = twisted_on(&chain);
                Shape::Product(chain, twisted)
            },
        ),
        (
            "product_constant",
            {
                let a = diagrams::constant_arrow();
                let b = CatPseudoFunctor::constant(a.source().clone(), Arc::new(FinCat::walking_iso()));
                Shape::Product(a, b)
            },
        ),
        ("cotensor_chain", Shape::Cotensor(diagrams::chain_inclusions())),
        ("cotensor_twisted", Shape::Cotensor(diagrams::twisted_iso())),
        ("equalizer_chain", equalizer_instance()),
    ]
}

/// The twisted diagram over the same index object as the chain of
/// inclusions.
fn twisted_on(chain: &CatPseudoFunctor) -> CatPseudoFunctor {
    let twisted = diagrams::twisted_iso();
    let doc = twisted.to_doc("chain3");
    crate::twocat::validate_pseudofunctor(&doc, chain.source().clone()).expect("same index shape")
}
