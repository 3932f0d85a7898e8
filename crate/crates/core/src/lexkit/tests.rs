use std::sync::Arc;

use super::*;
use crate::corpus::{diagrams, lex};
use crate::fincat::check_equivalence;

/// Greatest lower bound in a thin category, if any.
fn meet(c: &FinCat, xs: &[usize]) -> Option<usize> {
    let below = |p: usize| xs.iter().all(|&x| !c.hom(p, x).is_empty());
    let lower: Vec<usize> = c.objects().filter(|&p| below(p)).collect();
    lower.iter().copied().find(|&m| lower.iter().all(|&p| !c.hom(p, m).is_empty()))
}

fn thin_endo(c: &Arc<FinCat>, f: impl Fn(usize) -> usize) -> Functor {
    let names: Vec<String> = c.objects().map(|x| c.object_name(f(x)).to_string()).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    diagrams::thin_functor(c, c, &names)
}

#[test]
fn small_categories_have_the_expected_limits() {
    assert!(finite_limit_witnesses(&FinCat::terminal()).is_ok());
    assert!(finite_limit_witnesses(&FinCat::walking_arrow()).is_ok());
    assert!(finite_limit_witnesses(&FinCat::walking_iso()).is_ok());
    let miss = finite_limit_witnesses(&FinCat::discrete(&["a", "b"])).unwrap_err();
    assert_eq!(miss.shape, "terminal");
    let miss = finite_limit_witnesses(&FinCat::parallel_pair()).unwrap_err();
    assert_eq!(miss.shape, "terminal");
    let miss = finite_limit_witnesses(&FinCat::empty()).unwrap_err();
    assert_eq!(miss.shape, "terminal");
}

#[test]
fn diamond_limits_are_meets() {
    let d = lex::diamond();
    let w = finite_limit_witnesses(&d).unwrap();
    assert_eq!(d.object_name(w.terminal), "top");
    for (&(a, b), &(p, _, _)) in &w.products {
        assert_eq!(Some(p), meet(&d, &[a, b]));
    }
    for (&(f, _), &(e, _)) in &w.equalizers {
        assert_eq!(e, d.dom(f));
    }
}

#[test]
fn graph_limits_in_lattices_are_meets() {
    for c in [lex::diamond(), diagrams::chain(&["x", "y", "top"])] {
        let ds = enumerate_diagrams(&c, 3, 4);
        assert!(ds.len() > 1);
        for g in &ds {
            let lim = limit_of(&c, g).expect("lattices are lex");
            assert_eq!(Some(lim.apex), meet(&c, &g.nodes), "{}", g.describe(&c));
            assert!(is_limit(&c, g, &lim));
        }
    }
}

#[test]
fn a_non_limit_cone_is_rejected() {
    let d = lex::diamond();
    let (x, z) = (d.object_id("x").unwrap(), d.object_id("z").unwrap());
    let g = GraphDiagram { nodes: vec![x, z], edges: Vec::new() };
    let bot = d.object_id("bot").unwrap();
    let good = Cone { apex: bot, legs: vec![d.hom(bot, x)[0], d.hom(bot, z)[0]] };
    assert!(is_limit(&d, &g, &good));
    let top = d.object_id("top").unwrap();
    let empty = GraphDiagram { nodes: Vec::new(), edges: Vec::new() };
    assert!(is_limit(&d, &empty, &Cone { apex: top, legs: Vec::new() }));
    assert!(!is_limit(&d, &empty, &Cone { apex: x, legs: Vec::new() }));
}

#[test]
fn lex_functors_on_the_diamond() {
    let d = lex::diamond();
    let top = d.object_id("top").unwrap();
    let x = d.object_id("x").unwrap();
    assert!(is_lex_functor(&Functor::identity(d.clone())).unwrap().holds());
    assert!(is_lex_functor(&Functor::constant(d.clone(), d.clone(), top)).unwrap().holds());
    let meet_x = thin_endo(&d, |a| meet(&d, &[a, x]).unwrap());
    let v = is_lex_functor(&meet_x).unwrap();
    assert!(!v.holds());
    assert_eq!(v.first_counterexample().unwrap().condition, "preserves terminal");
    // sends bot to bot and everything else to top: keeps top, breaks x ∧ z
    let collapse = thin_endo(&d, |a| if d.object_name(a) == "bot" { a } else { top });
    let v = is_lex_functor(&collapse).unwrap();
    assert_eq!(v.first_counterexample().unwrap().condition, "preserves product");
}

#[test]
fn lex_functors_need_a_lex_source() {
    let two = Arc::new(FinCat::discrete(&["a", "b"]));
    assert!(is_lex_functor(&Functor::identity(two)).is_err());
}

#[test]
fn lex_bicolimits_of_the_fixtures() {
    for (name, f) in lex::all() {
        let r = verify_lex_bicolimit(&f).unwrap();
        assert!(r.holds(), "{name}: {r:?}");
        assert!(r.sampled > 100, "{name}");
    }
}

#[test]
fn constant_diamond_colimit_is_the_diamond() {
    let col = bifiltered_bicolimit(&lex::constant_diamond()).unwrap();
    assert!(check_equivalence(col.result(), &lex::diamond()).holds());
    let col = bifiltered_bicolimit(&lex::growing_diamond()).unwrap();
    assert!(check_equivalence(col.result(), &lex::diamond()).holds());
}

#[test]
fn non_lex_transitions_are_refused() {
    assert!(matches!(verify_lex_bicolimit(&diagrams::chain_inclusions()), Err(Error::Precondition(_))));
}

#[test]
fn the_stagewise_formula_fails_without_lex_transitions() {
    let col = bifiltered_bicolimit(&diagrams::chain_inclusions()).unwrap();
    let empty = GraphDiagram { nodes: Vec::new(), edges: Vec::new() };
    assert!(!stagewise_limit_holds(&col, &empty));
    let fixed = bifiltered_bicolimit(&lex::growing_chain()).unwrap();
    assert!(stagewise_limit_holds(&fixed, &empty));
}
