//! Backtracking enumeration of functors and natural transformations.

use std::sync::Arc;

use super::{FinCat, Functor, NatTrans};
use crate::error::{Error, Result};

const UNSET: usize = usize::MAX;

/// Composition constraints `g ∘ f = h` among non-identity morphisms, indexed
/// by each participant.
pub(crate) struct Triples {
    by_mor: Vec<Vec<(usize, usize, usize)>>,
}

impl Triples {
    pub(crate) fn new(c: &FinCat) -> Triples {
        let mut by_mor = vec![Vec::new(); c.n_morphisms()];
        for g in c.morphisms() {
            if c.is_identity(g) {
                continue;
            }
            for &f in c.incoming(c.dom(g)) {
                if c.is_identity(f) {
                    continue;
                }
                let h = c.comp(g, f);
                let t = (g, f, h);
                by_mor[g].push(t);
                if f != g {
                    by_mor[f].push(t);
                }
                if h != g && h != f {
                    by_mor[h].push(t);
                }
            }
        }
        Triples { by_mor }
    }
}

/// Extends an object map to morphism maps compatible with composition.
/// `candidates[f]` lists admissible images of each non-identity `f`;
/// `visit` returns `false` to stop the enumeration.
pub(crate) fn extend_to_morphisms(
    c: &FinCat,
    d: &FinCat,
    triples: &Triples,
    obj: &[usize],
    candidates: &dyn Fn(usize) -> Vec<usize>,
    injective: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let mut map = vec![UNSET; c.n_morphisms()];
    for a in c.objects() {
        map[c.id(a)] = d.id(obj[a]);
    }
    let mut order: Vec<usize> = c.morphisms().filter(|&f| !c.is_identity(f)).collect();
    // most constrained first
    order.sort_by_key(|&f| std::cmp::Reverse(triples.by_mor[f].len()));
    let cands: Vec<Vec<usize>> = (0..c.n_morphisms())
        .map(|f| if c.is_identity(f) { Vec::new() } else { candidates(f) })
        .collect();
    if order.iter().any(|&f| cands[f].is_empty()) {
        return true;
    }
    let mut used = vec![false; if injective { d.n_morphisms() } else { 0 }];
    if injective {
        for a in c.objects() {
            used[d.id(obj[a])] = true;
        }
    }
    rec(c, d, triples, &order, 0, &cands, &mut map, injective, &mut used, visit)
}

#[allow(clippy::too_many_arguments)]
fn rec(
    c: &FinCat,
    d: &FinCat,
    triples: &Triples,
    order: &[usize],
    k: usize,
    cands: &[Vec<usize>],
    map: &mut Vec<usize>,
    injective: bool,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if k == order.len() {
        return visit(map);
    }
    let x = order[k];
    for &y in &cands[x] {
        if injective && used[y] {
            continue;
        }
        map[x] = y;
        let ok = triples.by_mor[x].iter().all(|&(g, f, h)| {
            let (mg, mf, mh) = (map[g], map[f], map[h]);
            mg == UNSET || mf == UNSET || mh == UNSET || d.comp(mg, mf) == mh
        });
        // identities participating in triples are preassigned; check
        // composites landing on identities too
        if ok {
            if injective {
                used[y] = true;
            }
            let cont = rec(c, d, triples, order, k + 1, cands, map, injective, used, visit);
            if injective {
                used[y] = false;
            }
            if !cont {
                map[x] = UNSET;
                return false;
            }
        }
        map[x] = UNSET;
    }
    true
}

/// Every functor `c → d`, failing once more than `limit` are found.
pub fn all_functors(c: &Arc<FinCat>, d: &Arc<FinCat>, limit: usize) -> Result<Vec<Functor>> {
    let triples = Triples::new(c);
    let n = c.n_objects();
    let mut out = Vec::new();
    if n > 0 && d.n_objects() == 0 {
        return Ok(out);
    }
    let mut obj = vec![0usize; n];
    let mut overflow = false;
    loop {
        let cand = |f: usize| d.hom(obj[c.dom(f)], obj[c.cod(f)]).to_vec();
        extend_to_morphisms(c, d, &triples, &obj, &cand, false, &mut |m| {
            if out.len() >= limit {
                overflow = true;
                return false;
            }
            out.push(Functor::new_unchecked(c.clone(), d.clone(), obj.clone(), m.to_vec()));
            true
        });
        if overflow {
            return Err(Error::SizeGuard {
                what: "functor enumeration".into(),
                limit,
            });
        }
        // next object map in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            obj[i] += 1;
            if obj[i] < d.n_objects() {
                break;
            }
            obj[i] = 0;
        }
    }
}

/// Every natural transformation `f ⇒ g`.
pub fn all_nat_trans(f: &Functor, g: &Functor) -> Vec<NatTrans> {
    let c = f.source().clone();
    let d = f.target().clone();
    let n = c.n_objects();
    // morphisms checkable once both endpoints are assigned
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); n];
    for m in c.morphisms() {
        if c.is_identity(m) {
            continue;
        }
        ready[c.dom(m).max(c.cod(m))].push(m);
    }
    let mut comps = vec![UNSET; n];
    let mut out = Vec::new();
    fn go(
        k: usize,
        c: &FinCat,
        d: &FinCat,
        f: &Functor,
        g: &Functor,
        ready: &[Vec<usize>],
        comps: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == c.n_objects() {
            out.push(comps.clone());
            return;
        }
        for &t in d.hom(f.obj(k), g.obj(k)) {
            comps[k] = t;
            let ok = ready[k].iter().all(|&m| {
                let (x, y) = (c.dom(m), c.cod(m));
                d.comp(g.mor(m), comps[x]) == d.comp(comps[y], f.mor(m))
            });
            if ok {
                go(k + 1, c, d, f, g, ready, comps, out);
            }
        }
        comps[k] = UNSET;
    }
    let mut raw = Vec::new();
    go(0, &c, &d, f, g, &ready, &mut comps, &mut raw);
    for r in raw {
        out.push(NatTrans::new_unchecked(f.clone(), g.clone(), r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functors_from_arrow_to_arrow() {
        let a = Arc::new(FinCat::walking_arrow());
        // a→b into a→b: constant a, constant b, identity.
        assert_eq!(all_functors(&a, &a, 100).unwrap().len(), 3);
    }

    #[test]
    fn functors_into_empty() {
        let a = Arc::new(FinCat::walking_arrow());
        let e = Arc::new(FinCat::empty());
        assert!(all_functors(&a, &e, 10).unwrap().is_empty());
        assert_eq!(all_functors(&e, &a, 10).unwrap().len(), 1);
    }

    #[test]
    fn functor_limit_is_enforced() {
        let a = Arc::new(FinCat::discrete(&["x", "y", "z"]));
        assert!(matches!(all_functors(&a, &a, 5), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn walking_iso_endofunctors() {
        let c = Arc::new(FinCat::walking_iso());
        // constant at a, constant at b, identity, swap
        assert_eq!(all_functors(&c, &c, 100).unwrap().len(), 4);
    }
}
