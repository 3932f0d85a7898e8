use std::sync::Arc;

use super::*;
use crate::bilim::{biequalizer, biproduct};
use crate::corpus::{categories, diagrams};
use crate::fincat::check_equivalence;

fn point() -> Arc<FinCat> {
    Arc::new(FinCat::terminal())
}

#[test]
fn points_are_bicompact_and_lifts_pick_representatives() {
    for (name, f) in diagrams::bifiltered() {
        let col = bifiltered_bicolimit(&f).unwrap();
        assert!(check_bicompact_against(&point(), &f).unwrap().holds(), "{name}");
        for x in col.result().objects() {
            let a = Functor::constant(point(), col.result().clone(), x);
            let l = lift_one_cell(&point(), &col, &a).unwrap();
            assert!(validate_one_cell_lift(&col, &a, &l), "{name}");
            let rep = col.cocone(l.stage).obj(l.b.obj(0));
            assert!(col.result().iso_between(rep, x).is_some());
        }
    }
}

#[test]
fn hom_colimit_from_the_point_is_the_colimit() {
    for (name, f) in diagrams::bifiltered() {
        let col = bifiltered_bicolimit(&f).unwrap();
        let (h, _) = hom_diagram(&point(), &f, FUNCTOR_LIMIT).unwrap();
        let col_h = bifiltered_bicolimit(&h).unwrap();
        assert!(check_equivalence(col_h.result(), col.result()).holds(), "{name}");
    }
}

#[test]
fn corpus_categories_are_bicompact_against_every_diagram() {
    for (kn, k) in categories::all() {
        for (name, f) in diagrams::bifiltered() {
            let v = check_bicompact_against(&k, &f).unwrap();
            assert!(v.holds(), "{kn} against {name}: {:?}", v.first_counterexample());
            let cmp = canonical_comparison(&k, &f, FUNCTOR_LIMIT).unwrap();
            assert!(cmp.functoriality_failures().is_empty(), "{kn} against {name}");
        }
    }
}

#[test]
fn products_and_equalizers_of_corpus_categories_are_bicompact() {
    let arrow = Arc::new(FinCat::walking_arrow());
    let iso = Arc::new(FinCat::walking_iso());
    let two = Arc::new(FinCat::discrete(&["a", "b"]));
    let swap = diagrams::thin_functor(&iso, &iso, &["b", "a"]);
    let ks = vec![
        biproduct(&arrow, &two).cat,
        biproduct(&iso, &arrow).cat,
        biequalizer(&Functor::identity(iso.clone()), &swap).unwrap().cat,
        biequalizer(
            &Functor::constant(point(), two.clone(), 0),
            &Functor::constant(point(), two, 1),
        )
        .unwrap()
        .cat,
    ];
    for k in ks {
        for (name, f) in diagrams::bifiltered() {
            assert!(check_bicompact_against(&k, &f).unwrap().holds(), "{name}");
        }
    }
}

#[test]
fn arrows_lift_through_the_stage_containing_them() {
    let k = Arc::new(FinCat::walking_arrow());
    let f = diagrams::chain_inclusions();
    let col = bifiltered_bicolimit(&f).unwrap();
    let homs = functor_category(&k, col.result(), FUNCTOR_LIMIT).unwrap();
    for a in &homs.functors {
        let l = lift_one_cell(&k, &col, a).unwrap();
        assert!(validate_one_cell_lift(&col, a, &l));
        let top = f.source().zero_id("2").unwrap();
        let names: Vec<&str> = k.objects().map(|x| col.result().object_name(a.obj(x))).collect();
        if names.iter().any(|n| n.ends_with(":z")) {
            assert_eq!(l.stage, top);
        }
    }
}

#[test]
fn a_composite_with_a_leg_lifts_by_the_identity() {
    let k = Arc::new(FinCat::walking_arrow());
    let f = diagrams::chain_inclusions();
    let col = bifiltered_bicolimit(&f).unwrap();
    let i = f.source().zero_id("1").unwrap();
    for b in all_functors(&k, f.fiber(i), FUNCTOR_LIMIT).unwrap() {
        let a = col.cocone(i).after(&b);
        let given = OneCellLift {
            stage: i,
            b,
            beta: NatTrans::identity(&a),
        };
        assert!(validate_one_cell_lift(&col, &a, &given));
        let found = lift_one_cell(&k, &col, &a).unwrap();
        let s = refine_lifts(&col, &found, &given).unwrap();
        assert!(s.cell.is_invertible());
    }
}

#[test]
fn lifts_transported_along_the_index_refine() {
    for (name, f) in diagrams::bifiltered() {
        let k = Arc::new(FinCat::walking_arrow());
        let col = bifiltered_bicolimit(&f).unwrap();
        let c = f.source();
        let homs = functor_category(&k, col.result(), FUNCTOR_LIMIT).unwrap();
        for a in &homs.functors {
            let l = lift_one_cell(&k, &col, a).unwrap();
            for &d in c.out1(l.stage) {
                let b = f.on1(d).after(&l.b);
                let beta = col.transition(d).whisker_right(&l.b).then(&l.beta);
                let moved = OneCellLift {
                    stage: c.tgt(d),
                    b,
                    beta,
                };
                assert!(validate_one_cell_lift(&col, a, &moved), "{name}");
                let s = refine_lifts(&col, &l, &moved).unwrap();
                assert!(s.cell.is_invertible(), "{name}");
            }
        }
    }
}

#[test]
fn two_cells_lift_with_their_pasting() {
    for (name, f) in diagrams::bifiltered() {
        let k = Arc::new(FinCat::walking_arrow());
        let col = bifiltered_bicolimit(&f).unwrap();
        let homs = functor_category(&k, col.result(), FUNCTOR_LIMIT).unwrap();
        for phi in &homs.transformations {
            let l = lift_two_cell(&k, &col, phi).unwrap();
            assert!(validate_two_cell_lift(&col, phi, &l), "{name}");
        }
    }
}

#[test]
fn identity_two_cell_lifts_to_the_identity() {
    let k = point();
    let f = diagrams::chain_inclusions();
    let col = bifiltered_bicolimit(&f).unwrap();
    for x in col.result().objects() {
        let a = Functor::constant(k.clone(), col.result().clone(), x);
        let phi = NatTrans::identity(&a);
        let l = lift_one_cell(&k, &col, &a).unwrap();
        let stage = l.stage;
        let id = f.source().id1(stage);
        let fb = f.on1(id).after(&l.b);
        let cell = f.iota(stage).whisker_right(&l.b);
        let lift = TwoCellLift {
            source: l.clone(),
            target: l.clone(),
            span: SpanCell {
                apex: stage,
                d: id,
                d2: id,
                cell: NatTrans::identity(&fb),
            },
        };
        assert!(cell.is_identity());
        assert!(validate_two_cell_lift(&col, &phi, &lift));
    }
}

#[test]
fn parallel_pairs_lift_over_one_span() {
    for (name, f) in diagrams::bifiltered() {
        let k = Arc::new(FinCat::walking_arrow());
        let col = bifiltered_bicolimit(&f).unwrap();
        let homs = functor_category(&k, col.result(), FUNCTOR_LIMIT).unwrap();
        let ts = &homs.transformations;
        for phi in ts {
            for psi in ts.iter().filter(|p| p.source() == phi.source() && p.target() == phi.target()) {
                let l = lift_parallel_pair(&k, &col, phi, psi).unwrap();
                if phi == psi {
                    assert_eq!(l.zeta, l.xi, "{name}");
                }
                for (cell, two) in [(&l.zeta, phi), (&l.xi, psi)] {
                    let lift = TwoCellLift {
                        source: l.source.clone(),
                        target: l.target.clone(),
                        span: SpanCell {
                            apex: l.apex,
                            d: l.d,
                            d2: l.d2,
                            cell: cell.clone(),
                        },
                    };
                    assert!(validate_two_cell_lift(&col, two, &lift), "{name}");
                }
            }
        }
    }
}

#[test]
fn bicompactness_transfers_to_a_pseudoretract() {
    // the point is a retract of the walking arrow through its source
    let arrow = Arc::new(FinCat::walking_arrow());
    let s = Functor::constant(point(), arrow.clone(), 0);
    let r = Functor::constant(arrow.clone(), point(), 0);
    assert!(r.after(&s).is_identity());
    for (name, f) in diagrams::bifiltered() {
        let big = check_bicompact_against(&arrow, &f).unwrap().holds();
        let small = check_bicompact_against(&point(), &f).unwrap().holds();
        assert!(!big || small, "{name}");
        assert!(small);
    }
}
