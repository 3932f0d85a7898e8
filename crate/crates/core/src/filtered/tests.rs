use std::sync::Arc;

use super::*;
use crate::corpus::indices;
use crate::twocat::TwoFunctor;

fn sf(c: &TwoCat, s: &SigmaClass) -> bool {
    check_sigma_filtered(c, s).unwrap().outcome
}

#[test]
fn terminal_is_bifiltered() {
    let v = check_bifiltered(&indices::terminal()).unwrap();
    assert!(v.outcome && v.well_formed());
}

#[test]
fn poset_with_top_is_bifiltered() {
    assert!(check_bifiltered(&indices::poset_top()).unwrap().outcome);
}

#[test]
fn discrete_two_has_no_span() {
    let v = check_bifiltered(&indices::discrete2()).unwrap();
    assert!(!v.outcome && v.well_formed());
    let c = v.first_counterexample().unwrap();
    assert_eq!(c.instance, vec!["a".to_string(), "b".to_string()]);
}

#[test]
fn parallel_pair_fails_insertion() {
    let v = check_bifiltered(&indices::parallel_pair()).unwrap();
    assert!(!v.outcome);
    assert_eq!(v.first_counterexample().unwrap().condition, "insertion");
}

#[test]
fn iso_hom_is_bifiltered_with_invertible_insertion() {
    let c = indices::iso_hom();
    let v = check_bifiltered(&c).unwrap();
    assert!(v.outcome);
    assert!(v.all_witnesses().iter().any(|w| matches!(w, Witness::Insertion { cell, .. } if cell == "phi")));
    replay(&v, &c, &SigmaClass::all(&c), None).unwrap();
}

#[test]
fn empty_index_is_rejected() {
    let c = crate::twocat::locally_discrete(&crate::fincat::FinCat::empty());
    assert!(check_bifiltered(&c).is_err());
}

#[test]
fn sigma_all_matches_bifiltered_on_corpus() {
    for (name, c, _) in indices::all() {
        let b = check_bifiltered(&c).unwrap().outcome;
        assert_eq!(b, sf(&c, &SigmaClass::all(&c)), "{name}");
    }
}

#[test]
fn lax_pair_is_sigma_filtered_but_not_bifiltered() {
    let c = indices::lax_pair();
    let s = indices::lax_pair_sigma(&c);
    let s = sigma_closure(&c, &s);
    let v = check_sigma_filtered(&c, &s).unwrap();
    assert!(v.outcome);
    replay(&v, &c, &s, None).unwrap();
    assert!(!check_bifiltered(&c).unwrap().outcome);
}

#[test]
fn loose_arrow_without_cell_fails() {
    let c = indices::loose_top();
    let s = sigma_closure(&c, &SigmaClass::from_names(&c, &["s", "t"]).unwrap());
    let v = check_sigma_filtered(&c, &s).unwrap();
    assert!(!v.outcome);
    assert_eq!(v.first_counterexample().unwrap().condition, "insertion");
}

#[test]
fn identities_only_between_two_objects_fails_spans() {
    let c = indices::chain2();
    let v = check_sigma_filtered(&c, &SigmaClass::identities(&c)).unwrap();
    assert!(!v.outcome);
    assert_eq!(v.first_counterexample().unwrap().condition, "span");
}

#[test]
fn terminal_with_identities_is_sigma_filtered() {
    let c = indices::terminal();
    assert!(sf(&c, &SigmaClass::identities(&c)));
}

#[test]
fn triangles_exist_and_validate() {
    for (name, c, sigmas) in indices::all() {
        for (sn, s) in sigmas {
            let s = sigma_closure(&c, &s);
            if !sf(&c, &s) {
                continue;
            }
            for d in c.one_cells() {
                let t = triangle_completion(&c, &s, d).unwrap_or_else(|e| panic!("{name}/{sn}: {e}"));
                assert!(t.validate(&c, &s), "{name}/{sn}");
            }
        }
    }
}

#[test]
fn triangle_on_identity_is_trivial() {
    let c = indices::poset_top();
    let s = SigmaClass::all(&c);
    let id = c.id1(0);
    let t = triangle_completion(&c, &s, id).unwrap();
    assert_eq!((t.s, t.s_prime, t.phi), (id, id, c.id2(id)));
}

#[test]
fn triangle_absorbs_loose_endo() {
    let c = indices::idempotent_counit();
    let s = SigmaClass::identities(&c);
    let e = c.one_id("e").unwrap();
    let t = triangle_completion(&c, &s, e).unwrap();
    assert_eq!(c.two_name(t.phi), "eps");
}

#[test]
fn triangle_reports_failure_when_not_filtered() {
    let c = indices::discrete2();
    let s = SigmaClass::identities(&c);
    let id = c.id1(0);
    assert!(triangle_completion(&c, &s, id).is_ok());
    let c = indices::loose_top();
    let s = sigma_closure(&c, &SigmaClass::from_names(&c, &["s", "t"]).unwrap());
    let d = c.one_id("d").unwrap();
    let err = triangle_completion(&c, &s, d).unwrap_err().to_string();
    assert!(err.contains("insertion"), "{err}");
}

#[test]
fn identity_functor_is_cofinal() {
    let c = Arc::new(indices::poset_top());
    let s = SigmaClass::all(&c);
    let id = TwoFunctor::identity(c.clone());
    let v = check_sigma_cofinal(&id, &s, &s).unwrap();
    assert!(v.outcome);
    replay(&v, &c, &s, Some((&id, &s))).unwrap();
}

#[test]
fn inclusion_of_non_terminal_point_is_not_cofinal() {
    let c = Arc::new(indices::poset_top());
    let (pt, incl) = {
        let p = Arc::new(TwoCat::terminal());
        let a = c.zero_id("a").unwrap();
        let f = TwoFunctor::new(p.clone(), c.clone(), vec![a], vec![c.id1(a)], vec![c.id2(c.id1(a))]).unwrap();
        (p, f)
    };
    let v = check_sigma_cofinal(&incl, &SigmaClass::all(&pt), &SigmaClass::all(&c)).unwrap();
    assert!(!v.outcome);
    assert_eq!(v.first_counterexample().unwrap().condition, "reach");
}

#[test]
fn trivialization_agrees_on_corpus() {
    for (name, c, sigmas) in indices::all() {
        let c = Arc::new(c);
        for (sn, s) in sigmas {
            let r = trivialization_check(&c, &s).unwrap();
            assert!(r.agrees(), "{name}/{sn}: {r:?}");
        }
    }
}

#[test]
fn sigma_cones_exist_on_filtered_pairs() {
    for (name, c, sigmas) in indices::all() {
        for (sn, s) in sigmas {
            let s = sigma_closure(&c, &s);
            let filtered = sf(&c, &s);
            let cones = sigma_cones_for_subsets(&c, &s, 4).unwrap();
            assert_eq!(filtered, cones.outcome, "{name}/{sn}");
        }
    }
}

#[test]
fn span_families_iterate_binary_spans() {
    let c = indices::poset_top();
    let s = SigmaClass::all(&c);
    assert!(check_span_families(&c, &s, 3).unwrap().outcome);
    let c = indices::discrete2();
    assert!(!check_span_families(&c, &SigmaClass::all(&c), 2).unwrap().outcome);
}

#[test]
fn verdicts_serialize() {
    let v = check_bifiltered(&indices::discrete2()).unwrap();
    let s = serde_json::to_string(&v).unwrap();
    let back: Verdict = serde_json::from_str(&s).unwrap();
    assert_eq!(v, back);
}
