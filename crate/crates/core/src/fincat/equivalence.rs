//! Skeletons and equivalence of finite categories. Two finite categories are
//! equivalent exactly when their skeletons are isomorphic, so equivalence is
//! decided by skeletonizing and searching for an isomorphism.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::search::{extend_to_morphisms, Triples};
use super::{Check, FinCat, Functor, MorphismRecord, NatTrans};

/// The full subcategory on `objs` (kept in the given order) with its
/// inclusion functor.
pub fn full_subcategory(c: &Arc<FinCat>, objs: &[usize]) -> (Arc<FinCat>, Functor) {
    let mut local = vec![usize::MAX; c.n_objects()];
    for (k, &a) in objs.iter().enumerate() {
        local[a] = k;
    }
    let mut mor_local = vec![usize::MAX; c.n_morphisms()];
    let mut morphisms = Vec::new();
    let mut back = Vec::new();
    for f in c.morphisms() {
        let (d, e) = (local[c.dom(f)], local[c.cod(f)]);
        if d != usize::MAX && e != usize::MAX {
            mor_local[f] = morphisms.len();
            back.push(f);
            morphisms.push(MorphismRecord {
                name: c.morphism_name(f).to_string(),
                dom: d,
                cod: e,
            });
        }
    }
    let sub = FinCat::from_parts(
        objs.iter().map(|&a| c.object_name(a).to_string()).collect(),
        morphisms,
        objs.iter().map(|&a| mor_local[c.id(a)]).collect(),
        |g, f| Some(mor_local[c.comp(back[g], back[f])]),
        Check::Structural,
    )
    .expect("full subcategory of a valid category");
    let sub = Arc::new(sub);
    let inc = Functor::new_unchecked(sub.clone(), c.clone(), objs.to_vec(), back);
    (sub, inc)
}

/// A skeleton of a category: one object per isomorphism class.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub cat: Arc<FinCat>,
    pub inclusion: Functor,
    pub retraction: Functor,
    /// Representative in the original category for each skeleton object.
    pub representatives: Vec<usize>,
    /// Skeleton object of each original object.
    pub class_of: Vec<usize>,
    /// Chosen isomorphism from each original object to its representative.
    pub to_rep: Vec<usize>,
}

pub fn skeleton(c: &Arc<FinCat>) -> Skeleton {
    let n = c.n_objects();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut to_rep = vec![0; n];
    for a in c.objects() {
        if class_of[a] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(a);
        class_of[a] = k;
        to_rep[a] = c.id(a);
        for b in a + 1..n {
            if class_of[b] == usize::MAX {
                if let Some(f) = c.iso_between(b, a) {
                    class_of[b] = k;
                    to_rep[b] = f;
                }
            }
        }
    }
    let (cat, inclusion) = full_subcategory(c, &reps);
    let mut local = HashMap::new();
    for (k, &f) in inclusion.mor_map().iter().enumerate() {
        local.insert(f, k);
    }
    let mor = c
        .morphisms()
        .map(|f| {
            let (x, y) = (c.dom(f), c.cod(f));
            let inv = c.inverse(to_rep[x]).expect("chosen isomorphism");
            let g = c.comp(to_rep[y], c.comp(f, inv));
            local[&g]
        })
        .collect();
    let retraction = Functor::new_unchecked(c.clone(), cat.clone(), class_of.clone(), mor);
    Skeleton {
        cat,
        inclusion,
        retraction,
        representatives: reps,
        class_of,
        to_rep,
    }
}

fn object_signature(c: &FinCat, a: usize) -> (usize, usize, Vec<usize>, Vec<usize>) {
    let mut out: Vec<usize> = c.objects().map(|b| c.hom(a, b).len()).collect();
    let mut inc: Vec<usize> = c.objects().map(|b| c.hom(b, a).len()).collect();
    out.sort_unstable();
    inc.sort_unstable();
    let endo = c.hom(a, a);
    let isos = endo.iter().filter(|&&f| c.is_iso(f)).count();
    (endo.len(), isos, out, inc)
}

#[derive(PartialEq, Eq, Hash, Clone, Debug)]
struct MorSig {
    iso: bool,
    identity: bool,
    powers: Option<(usize, usize)>,
    factorizations: usize,
    left_fix: usize,
    right_fix: usize,
}

fn morphism_signatures(c: &FinCat) -> Vec<MorSig> {
    let mut fact = vec![0usize; c.n_morphisms()];
    for g in c.morphisms() {
        for &f in c.incoming(c.dom(g)) {
            fact[c.comp(g, f)] += 1;
        }
    }
    c.morphisms()
        .map(|f| {
            let (x, y) = (c.dom(f), c.cod(f));
            let powers = (x == y).then(|| {
                let mut seen: HashMap<usize, usize> = HashMap::new();
                let mut p = f;
                let mut k = 1;
                loop {
                    if let Some(&j) = seen.get(&p) {
                        break (j, k - j);
                    }
                    seen.insert(p, k);
                    p = c.comp(f, p);
                    k += 1;
                }
            });
            MorSig {
                iso: c.is_iso(f),
                identity: c.is_identity(f),
                powers,
                factorizations: fact[f],
                left_fix: c.outgoing(y).iter().filter(|&&g| c.comp(g, f) == f).count(),
                right_fix: c.incoming(x).iter().filter(|&&h| c.comp(f, h) == f).count(),
            }
        })
        .collect()
}

/// An isomorphism of categories `c → d`, if one exists.
pub fn isomorphism(c: &Arc<FinCat>, d: &Arc<FinCat>) -> Option<Functor> {
    if c.n_objects() != d.n_objects() || c.n_morphisms() != d.n_morphisms() {
        return None;
    }
    let osc: Vec<_> = c.objects().map(|a| object_signature(c, a)).collect();
    let osd: Vec<_> = d.objects().map(|a| object_signature(d, a)).collect();
    let msc = morphism_signatures(c);
    let msd = morphism_signatures(d);
    {
        let mut a = osc.clone();
        let mut b = osd.clone();
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
    }
    let triples = Triples::new(c);
    let n = c.n_objects();
    let mut obj = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut found: Option<Functor> = None;

    fn objects_rec(
        k: usize,
        c: &Arc<FinCat>,
        d: &Arc<FinCat>,
        osc: &[(usize, usize, Vec<usize>, Vec<usize>)],
        osd: &[(usize, usize, Vec<usize>, Vec<usize>)],
        msc: &[MorSig],
        msd: &[MorSig],
        triples: &Triples,
        obj: &mut Vec<usize>,
        used: &mut Vec<bool>,
        found: &mut Option<Functor>,
    ) {
        if found.is_some() {
            return;
        }
        if k == c.n_objects() {
            let cand = |f: usize| -> Vec<usize> {
                d.hom(obj[c.dom(f)], obj[c.cod(f)])
                    .iter()
                    .copied()
                    .filter(|&g| msd[g] == msc[f])
                    .collect()
            };
            let mut result = None;
            extend_to_morphisms(c, d, triples, obj, &cand, true, &mut |m| {
                result = Some(m.to_vec());
                false
            });
            if let Some(m) = result {
                *found = Some(Functor::new_unchecked(c.clone(), d.clone(), obj.clone(), m));
            }
            return;
        }
        for t in d.objects() {
            if used[t] || osd[t] != osc[k] {
                continue;
            }
            let consistent = (0..k).all(|j| {
                c.hom(j, k).len() == d.hom(obj[j], t).len() && c.hom(k, j).len() == d.hom(t, obj[j]).len()
            });
            if !consistent {
                continue;
            }
            obj[k] = t;
            used[t] = true;
            objects_rec(k + 1, c, d, osc, osd, msc, msd, triples, obj, used, found);
            used[t] = false;
            obj[k] = usize::MAX;
            if found.is_some() {
                return;
            }
        }
    }
    objects_rec(0, c, d, &osc, &osd, &msc, &msd, &triples, &mut obj, &mut used, &mut found);
    found
}

fn inverse_isomorphism(f: &Functor) -> Functor {
    let c = f.source();
    let d = f.target();
    let mut obj = vec![0; d.n_objects()];
    for a in c.objects() {
        obj[f.obj(a)] = a;
    }
    let mut mor = vec![0; d.n_morphisms()];
    for m in c.morphisms() {
        mor[f.mor(m)] = m;
    }
    Functor::new_unchecked(d.clone(), c.clone(), obj, mor)
}

/// Witness data for an equivalence `forward: C ⇄ D : backward`.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub forward: Functor,
    pub backward: Functor,
    /// `1_C ⇒ backward ∘ forward`, invertible.
    pub unit: NatTrans,
    /// `forward ∘ backward ⇒ 1_D`, invertible.
    pub counit: NatTrans,
}

impl Equivalence {
    /// Re-validates every piece of witness data; empty when sound.
    pub fn violations(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        out.extend(self.forward.violations().iter().map(|v| format!("forward: {v}")));
        out.extend(self.backward.violations().iter().map(|v| format!("backward: {v}")));
        out.extend(self.unit.violations().iter().map(|v| format!("unit: {v}")));
        out.extend(self.counit.violations().iter().map(|v| format!("counit: {v}")));
        if !self.unit.is_invertible() {
            out.push("unit is not invertible".into());
        }
        if !self.counit.is_invertible() {
            out.push("counit is not invertible".into());
        }
        if self.unit.target() != &self.backward.after(&self.forward) {
            out.push("unit does not land in backward∘forward".into());
        }
        if self.counit.source() != &self.forward.after(&self.backward) {
            out.push("counit does not start at forward∘backward".into());
        }
        out
    }
}

#[derive(Clone, Debug)]
pub enum EquivalenceVerdict {
    Equivalent(Box<Equivalence>),
    NotEquivalent(Discrepancy),
}

/// Why two categories are not equivalent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Discrepancy {
    ObjectClassCount { left: usize, right: usize },
    HomProfile { left: BTreeMap<usize, usize>, right: BTreeMap<usize, usize> },
    NoSkeletonIsomorphism,
}

impl std::fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Discrepancy::ObjectClassCount { left, right } => {
                write!(f, "object-class count {left} ≠ {right}")
            }
            Discrepancy::HomProfile { left, right } => {
                write!(f, "hom-set size multisets differ: {left:?} vs {right:?}")
            }
            Discrepancy::NoSkeletonIsomorphism => write!(f, "skeletons are not isomorphic"),
        }
    }
}

impl EquivalenceVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent(_))
    }

    pub fn equivalence(&self) -> Option<&Equivalence> {
        match self {
            EquivalenceVerdict::Equivalent(e) => Some(e),
            EquivalenceVerdict::NotEquivalent(_) => None,
        }
    }
}

fn hom_profile(c: &FinCat) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for a in c.objects() {
        for b in c.objects() {
            *m.entry(c.hom(a, b).len()).or_insert(0) += 1;
        }
    }
    m
}

pub fn check_equivalence(c: &Arc<FinCat>, d: &Arc<FinCat>) -> EquivalenceVerdict {
    let sc = skeleton(c);
    let sd = skeleton(d);
    if sc.cat.n_objects() != sd.cat.n_objects() {
        return EquivalenceVerdict::NotEquivalent(Discrepancy::ObjectClassCount {
            left: sc.cat.n_objects(),
            right: sd.cat.n_objects(),
        });
    }
    let (pc, pd) = (hom_profile(&sc.cat), hom_profile(&sd.cat));
    if pc != pd {
        return EquivalenceVerdict::NotEquivalent(Discrepancy::HomProfile { left: pc, right: pd });
    }
    let Some(iso) = isomorphism(&sc.cat, &sd.cat) else {
        return EquivalenceVerdict::NotEquivalent(Discrepancy::NoSkeletonIsomorphism);
    };
    let inv = inverse_isomorphism(&iso);
    let forward = sd.inclusion.after(&iso.after(&sc.retraction));
    let backward = sc.inclusion.after(&inv.after(&sd.retraction));
    let unit = NatTrans::new_unchecked(
        Functor::identity(c.clone()),
        backward.after(&forward),
        sc.to_rep.clone(),
    );
    let counit_components = d
        .objects()
        .map(|y| d.inverse(sd.to_rep[y]).expect("chosen isomorphism"))
        .collect();
    let counit = NatTrans::new_unchecked(
        forward.after(&backward),
        Functor::identity(d.clone()),
        counit_components,
    );
    EquivalenceVerdict::Equivalent(Box::new(Equivalence {
        forward,
        backward,
        unit,
        counit,
    }))
}

/// Direct analysis of one functor: where it fails to be essentially
/// surjective, full or faithful.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FunctorAnalysis {
    /// Target objects not isomorphic to any image object.
    pub unreached: Vec<String>,
    /// Source pairs whose hom-map misses a morphism.
    pub not_full: Vec<(String, String)>,
    /// Source pairs whose hom-map identifies two morphisms.
    pub not_faithful: Vec<(String, String)>,
}

impl FunctorAnalysis {
    pub fn is_equivalence(&self) -> bool {
        self.unreached.is_empty() && self.not_full.is_empty() && self.not_faithful.is_empty()
    }
}

pub fn analyze_functor(f: &Functor) -> FunctorAnalysis {
    let (c, d) = (f.source(), f.target());
    let mut out = FunctorAnalysis::default();
    for y in d.objects() {
        if !c.objects().any(|x| d.iso_between(f.obj(x), y).is_some()) {
            out.unreached.push(d.object_name(y).to_string());
        }
    }
    for a in c.objects() {
        for b in c.objects() {
            let mut image: Vec<usize> = c.hom(a, b).iter().map(|&m| f.mor(m)).collect();
            image.sort_unstable();
            let n = image.len();
            image.dedup();
            let pair = (c.object_name(a).to_string(), c.object_name(b).to_string());
            if image.len() != n {
                out.not_faithful.push(pair.clone());
            }
            if image.len() != d.hom(f.obj(a), f.obj(b)).len() {
                out.not_full.push(pair);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn skeleton_of_walking_iso_is_terminal() {
        let s = skeleton(&arc(FinCat::walking_iso()));
        assert_eq!(s.cat.n_objects(), 1);
        assert_eq!(s.cat.n_morphisms(), 1);
    }

    #[test]
    fn skeleton_of_discrete_and_parallel_pair_is_itself() {
        for c in [FinCat::discrete(&["a", "b"]), FinCat::parallel_pair()] {
            let c = arc(c);
            let s = skeleton(&c);
            assert_eq!(*s.cat, *c);
        }
    }

    #[test]
    fn discrete_two_vs_one() {
        let v = check_equivalence(&arc(FinCat::discrete(&["a", "b"])), &arc(FinCat::terminal()));
        match v {
            EquivalenceVerdict::NotEquivalent(Discrepancy::ObjectClassCount { left, right }) => {
                assert_eq!((left, right), (2, 1))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn walking_iso_equivalent_to_terminal() {
        let v = check_equivalence(&arc(FinCat::walking_iso()), &arc(FinCat::terminal()));
        let e = v.equivalence().expect("equivalent");
        assert!(e.violations().is_empty(), "{:?}", e.violations());
    }

    #[test]
    fn analysis_of_the_collapse_and_an_inclusion() {
        let iso = arc(FinCat::walking_iso());
        let one = arc(FinCat::terminal());
        assert!(analyze_functor(&Functor::constant(iso.clone(), one.clone(), 0)).is_equivalence());
        assert!(analyze_functor(&Functor::constant(one.clone(), iso, 0)).is_equivalence());
        let d = arc(FinCat::discrete(&["a", "b"]));
        let a = analyze_functor(&Functor::constant(one, d, 0));
        assert_eq!(a.unreached, vec!["b".to_string()]);
        let arrow = arc(FinCat::walking_arrow());
        let a = analyze_functor(&Functor::constant(arrow.clone(), arrow, 0));
        assert_eq!(a.not_full, vec![("b".to_string(), "a".to_string())]);
        assert!(a.not_faithful.is_empty());
        assert_eq!(a.unreached.len(), 1);
    }

    #[test]
    fn arrow_not_equivalent_to_parallel_pair() {
        let v = check_equivalence(&arc(FinCat::walking_arrow()), &arc(FinCat::parallel_pair()));
        assert!(!v.holds());
    }
}
