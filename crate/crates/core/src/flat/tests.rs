use std::sync::Arc;

use super::*;
use crate::corpus::{diagrams, indices};
use crate::fincat::FinCat;
use crate::twocat::locally_discrete;

/// A set-valued functor on `c`, given by fiber sizes and the action of
/// every non-identity morphism.
struct SetFunctor {
    c: FinCat,
    sizes: Vec<usize>,
    maps: Vec<Vec<usize>>,
}

impl SetFunctor {
    fn to_pseudo(&self) -> CatPseudoFunctor {
        let index = Arc::new(locally_discrete(&self.c));
        let names: Vec<Vec<String>> = self.sizes.iter().map(|&n| (0..n).map(|k| format!("e{k}")).collect()).collect();
        let cats: Vec<Arc<FinCat>> = names.iter().map(|n| Arc::new(FinCat::discrete(n))).collect();
        let on1 = |s: usize| {
            let (i, j) = (index.src(s), index.tgt(s));
            let m = self.c.morphism_id(index.one_name(s)).expect("morphism");
            let obj: Vec<&str> = self.maps[m].iter().map(|&y| names[j][y].as_str()).collect();
            diagrams::thin_functor(&cats[i], &cats[j], &obj)
        };
        diagrams::thin_strict(&index, cats.clone(), &on1)
    }

    /// `(el F)^op` is filtered: nonempty, every pair of elements receives a
    /// common element, and parallel maps of elements are equalized.
    fn naive_flat(&self) -> bool {
        let c = &self.c;
        let elems: Vec<(usize, usize)> = c.objects().flat_map(|i| (0..self.sizes[i]).map(move |x| (i, x))).collect();
        if elems.is_empty() {
            return false;
        }
        let maps_to = |m: usize, x: usize, y: usize| self.maps[m][x] == y;
        let arrows = |(i, x): (usize, usize), (j, y): (usize, usize)| -> Vec<usize> {
            c.hom(i, j).iter().copied().filter(|&m| maps_to(m, x, y)).collect()
        };
        for &p in &elems {
            for &q in &elems {
                if !elems.iter().any(|&z| !arrows(z, p).is_empty() && !arrows(z, q).is_empty()) {
                    return false;
                }
                for m1 in arrows(p, q) {
                    for m2 in arrows(p, q) {
                        let equalized = elems.iter().any(|&z| {
                            arrows(z, p).iter().any(|&h| c.comp(m1, h) == c.comp(m2, h))
                        });
                        if !equalized {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn identity_maps(c: &FinCat, sizes: &[usize]) -> Vec<Vec<usize>> {
    c.morphisms().map(|m| (0..sizes[c.dom(m)]).collect()).collect()
}

fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |y| {
                    let mut w = v.clone();
                    w.push(y);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every set-valued functor with fibers of size at most two on the
/// parallel pair.
fn parallel_pair_functors() -> Vec<SetFunctor> {
    let c = FinCat::parallel_pair();
    let (u, v) = (c.morphism_id("u").unwrap(), c.morphism_id("v").unwrap());
    let mut out = Vec::new();
    for n0 in 0..3 {
        for n1 in 0..3 {
            for fu in all_maps(n0, n1) {
                for fv in all_maps(n0, n1) {
                    let sizes = vec![n0, n1];
                    let mut maps = identity_maps(&c, &sizes);
                    maps[u] = fu.clone();
                    maps[v] = fv;
                    out.push(SetFunctor { c: c.clone(), sizes, maps });
                }
            }
        }
    }
    out
}

/// Every set-valued functor with fibers of size at most two on `a ≤ top ≥ b`.
fn cospan_functors() -> Vec<SetFunctor> {
    let c = FinCat::poset(&["a", "b", "top"], |i, j| i == j || j == 2).unwrap();
    let (at, bt) = (c.hom(0, 2)[0], c.hom(1, 2)[0]);
    let mut out = Vec::new();
    for na in 0..3 {
        for nb in 0..3 {
            for nt in 1..3 {
                for fa in all_maps(na, nt) {
                    for fb in all_maps(nb, nt) {
                        let sizes = vec![na, nb, nt];
                        let mut maps = identity_maps(&c, &sizes);
                        maps[at] = fa.clone();
                        maps[bt] = fb;
                        out.push(SetFunctor { c: c.clone(), sizes, maps });
                    }
                }
            }
        }
    }
    out
}

#[test]
fn set_valued_flatness_matches_filtered_elements() {
    let mut flat = 0;
    let cases: Vec<SetFunctor> = parallel_pair_functors().into_iter().chain(cospan_functors()).collect();
    for s in &cases {
        let f = s.to_pseudo();
        let got = check_flat(&f).unwrap().holds();
        assert_eq!(got, s.naive_flat(), "sizes {:?} maps {:?}", s.sizes, s.maps);
        flat += got as usize;
    }
    assert!(flat > 0 && flat < cases.len());
}

#[test]
fn flat_set_valued_functors_reconstruct() {
    for s in parallel_pair_functors().into_iter().chain(cospan_functors()) {
        let f = s.to_pseudo();
        match decompose_flat(&f) {
            Ok(d) => assert!(d.reconstructs(), "{:?}: {d:?}", s.sizes),
            Err(Error::Precondition(_)) => assert!(!s.naive_flat()),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn representable_on_terminal_is_the_point() {
    let c = Arc::new(indices::terminal());
    let r = representable_pseudofunctor(&c, 0);
    assert_eq!(r.fiber(0).n_objects(), 1);
    assert!(r.is_strict());
}

#[test]
fn representable_at_bottom_has_points_above() {
    let c = Arc::new(indices::poset_bottom());
    let r = representable_pseudofunctor(&c, 0);
    assert!(c.zero_cells().all(|j| r.fiber(j).n_objects() == 1));
    let r = representable_pseudofunctor(&c, 1);
    let sizes: Vec<usize> = c.zero_cells().map(|j| r.fiber(j).n_objects()).collect();
    assert_eq!(sizes, vec![0, 1, 0]);
}

#[test]
fn representable_sees_two_cells_as_morphisms() {
    let c = Arc::new(indices::idempotent_counit());
    let r = representable_pseudofunctor(&c, 0);
    let fiber = r.fiber(0);
    assert_eq!(fiber.n_objects(), 2);
    let eps = fiber.morphism_id("eps").unwrap();
    assert!(!fiber.is_identity(eps));
}

#[test]
fn representables_are_flat_and_reconstruct() {
    for (name, c, _) in indices::all() {
        let c = Arc::new(c);
        for x in c.zero_cells() {
            let r = representable_pseudofunctor(&c, x);
            assert!(r.violations().is_empty());
            let v = check_flat(&r).unwrap();
            assert!(v.holds(), "{name} at {}: {:?}", c.zero_name(x), v.first_counterexample());
            let d = decompose_flat(&r).unwrap();
            assert!(d.reconstructs(), "{name} at {}: {d:?}", c.zero_name(x));
        }
    }
}

#[test]
fn constant_empty_is_not_flat() {
    let f = CatPseudoFunctor::constant(Arc::new(indices::poset_bottom()), Arc::new(FinCat::empty()));
    let v = check_flat(&f).unwrap();
    assert!(!v.holds());
    assert_eq!(v.first_counterexample().unwrap().condition, "nonempty elements");
}

#[test]
fn constant_point_is_flat_exactly_when_the_base_has_a_bottom() {
    let point = Arc::new(FinCat::terminal());
    let bottom = CatPseudoFunctor::constant(Arc::new(indices::poset_bottom()), point.clone());
    assert!(check_flat(&bottom).unwrap().holds());
    let d = decompose_flat(&bottom).unwrap();
    assert!(d.reconstructs());
    let top = CatPseudoFunctor::constant(Arc::new(indices::poset_top()), point);
    assert!(!check_flat(&top).unwrap().holds());
    assert!(matches!(decompose_flat(&top), Err(Error::Precondition(_))));
}

#[test]
fn corpus_diagrams_agree() {
    for (name, f, _) in diagrams::all() {
        let flat = check_flat(&f).unwrap().holds();
        match decompose_flat(&f) {
            Ok(d) => assert!(flat && d.reconstructs(), "{name}: {d:?}"),
            Err(Error::Precondition(_)) => assert!(!flat, "{name}"),
            Err(e) => panic!("{name}: {e}"),
        }
    }
}

#[test]
fn flat_functors_preserve_the_terminal_object() {
    let c = Arc::new(indices::poset_top());
    let top = c.zero_id("top").unwrap();
    for x in c.zero_cells() {
        let r = representable_pseudofunctor(&c, x);
        assert!(check_flat_preserves_bilimits(&r, &BaseLimit::Terminal(top)).unwrap().holds());
    }
    let v = check_flat_preserves_bilimits(&diagrams::constant_arrow(), &BaseLimit::Terminal(top)).unwrap();
    assert!(!v.holds());
    assert!(!check_flat(&diagrams::constant_arrow()).unwrap().holds());
}

#[test]
fn representables_preserve_a_product_cone() {
    let c = Arc::new(indices::poset_bottom());
    let first = c.hom(0, 1)[0];
    let second = c.hom(0, 2)[0];
    let lim = BaseLimit::Product { first, second };
    for x in c.zero_cells() {
        let r = representable_pseudofunctor(&c, x);
        assert!(check_flat_preserves_bilimits(&r, &lim).unwrap().holds());
    }
    let point = CatPseudoFunctor::constant(c.clone(), Arc::new(FinCat::discrete(&["p", "q"])));
    assert!(!check_flat_preserves_bilimits(&point, &lim).unwrap().holds());
}

#[test]
fn an_invalid_cone_is_refused() {
    let c = Arc::new(indices::poset_top());
    let r = representable_pseudofunctor(&c, 0);
    assert!(check_flat_preserves_bilimits(&r, &BaseLimit::Terminal(0)).is_err());
}
