//! Diagrams of finite lattices along meet- and top-preserving functors.

use std::sync::Arc;

use super::diagrams::{chain, thin_functor, thin_strict};
use super::indices;
use crate::fincat::FinCat;
use crate::twocat::CatPseudoFunctor;

/// `bot ≤ x, z ≤ top`.
pub fn diamond() -> Arc<FinCat> {
    let leq = |i: usize, j: usize| i == j || i == 0 || j == 3;
    Arc::new(FinCat::poset(&["bot", "x", "z", "top"], leq).expect("diamond"))
}

/// Constant at the diamond over `0 ≤ 1`.
pub fn constant_diamond() -> CatPseudoFunctor {
    CatPseudoFunctor::constant(Arc::new(indices::chain2()), diamond())
}

/// `{top} ⊂ {x ≤ top} ⊂ diamond` over `0 ≤ 1 ≤ 2`.
pub fn growing_diamond() -> CatPseudoFunctor {
    let index = Arc::new(indices::chain3());
    let cats = vec![chain(&["top"]), chain(&["x", "top"]), diamond()];
    thin_strict(&index, cats.clone(), &|s| {
        let (i, j) = (index.src(s), index.tgt(s));
        let names: Vec<&str> = cats[i].object_names().iter().map(String::as_str).collect();
        thin_functor(&cats[i], &cats[j], &names)
    })
}

/// `{top} ⊂ {y ≤ top} ⊂ {x ≤ y ≤ top}` over `0 ≤ 1 ≤ 2`.
pub fn growing_chain() -> CatPseudoFunctor {
    let index = Arc::new(indices::chain3());
    let cats = vec![chain(&["top"]), chain(&["y", "top"]), chain(&["x", "y", "top"])];
    thin_strict(&index, cats.clone(), &|s| {
        let (i, j) = (index.src(s), index.tgt(s));
        let names: Vec<&str> = cats[i].object_names().iter().map(String::as_str).collect();
        thin_functor(&cats[i], &cats[j], &names)
    })
}

pub fn all() -> Vec<(&'static str, CatPseudoFunctor)> {
    vec![
        ("constant_diamond", constant_diamond()),
        ("growing_diamond", growing_diamond()),
        ("growing_chain", growing_chain()),
    ]
}
