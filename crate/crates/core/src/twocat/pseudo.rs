use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{TwoCat, TwoFunctor};
use crate::error::{Error, Result, Violation};
use crate::fincat::{validate_fincat, FinCat, FinCatDoc, Functor, NatTrans};
use crate::fincat::{FunctorDoc, NatTransDoc};

/// A pseudofunctor `I → Cat` into finite categories.
///
/// `comp[(s, t)]` is the comparison `F(t)∘F(s) ⇒ F(t∘s)` and `unit[i]` is
/// `1 ⇒ F(1_i)`; both are invertible.
#[derive(Clone, Debug)]
pub struct CatPseudoFunctor {
    source: Arc<TwoCat>,
    cats: Vec<Arc<FinCat>>,
    on1: Vec<Functor>,
    on2: Vec<NatTrans>,
    comp: HashMap<(usize, usize), NatTrans>,
    unit: Vec<NatTrans>,
}

/// Raw data for [`CatPseudoFunctor::new`].
pub struct PseudoParts {
    pub cats: Vec<Arc<FinCat>>,
    pub on1: Vec<Functor>,
    pub on2: Vec<NatTrans>,
    pub comp: HashMap<(usize, usize), NatTrans>,
    pub unit: Vec<NatTrans>,
}

impl CatPseudoFunctor {
    pub fn new(source: Arc<TwoCat>, parts: PseudoParts) -> Result<CatPseudoFunctor> {
        let f = CatPseudoFunctor {
            source,
            cats: parts.cats,
            on1: parts.on1,
            on2: parts.on2,
            comp: parts.comp,
            unit: parts.unit,
        };
        let v = f.violations();
        if v.is_empty() {
            Ok(f)
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// A strict 2-functor: comparison cells are identities, so `F(t∘s)` must
    /// equal `F(t)∘F(s)` on the nose.
    pub fn strict(
        source: Arc<TwoCat>,
        cats: Vec<Arc<FinCat>>,
        on1: Vec<Functor>,
        on2: Vec<NatTrans>,
    ) -> Result<CatPseudoFunctor> {
        let i = &*source;
        if cats.len() != i.n0() || on1.len() != i.n1() || on2.len() != i.n2() {
            return Err(Error::invalid("pseudofunctor", "data does not cover the index"));
        }
        let mut comp = HashMap::new();
        for s in i.one_cells() {
            for &t in i.out1(i.tgt(s)) {
                let fts = &on1[i.h1(t, s)];
                let composite = on1[t].after(&on1[s]);
                if composite.obj_map() != fts.obj_map() || composite.mor_map() != fts.mor_map() {
                    return Err(Error::invalid(
                        "strict functoriality",
                        format!("F({}∘{}) differs from F({})∘F({})", i.one_name(t), i.one_name(s), i.one_name(t), i.one_name(s)),
                    ));
                }
                comp.insert((s, t), NatTrans::identity(fts));
            }
        }
        let unit = i
            .zero_cells()
            .map(|z| NatTrans::identity(&on1[i.id1(z)]))
            .collect();
        CatPseudoFunctor::new(
            source,
            PseudoParts {
                cats,
                on1,
                on2,
                comp,
                unit,
            },
        )
    }

    /// The constant 2-functor at `x`.
    pub fn constant(source: Arc<TwoCat>, x: Arc<FinCat>) -> CatPseudoFunctor {
        let id = Functor::identity(x.clone());
        let idt = NatTrans::identity(&id);
        CatPseudoFunctor::strict(
            source.clone(),
            vec![x; source.n0()],
            vec![id; source.n1()],
            vec![idt; source.n2()],
        )
        .expect("constant 2-functor")
    }

    pub fn violations(&self) -> Vec<Violation> {
        let i = &*self.source;
        let mut v = Vec::new();
        if self.cats.len() != i.n0() || self.on1.len() != i.n1() || self.on2.len() != i.n2() || self.unit.len() != i.n0() {
            v.push(Violation::new("pseudofunctor", "data does not cover the index"));
            return v;
        }
        // typing
        for s in i.one_cells() {
            let f = &self.on1[s];
            if !same(f.source(), &self.cats[i.src(s)]) || !same(f.target(), &self.cats[i.tgt(s)]) {
                v.push(Violation::new("pseudofunctor typing", format!("F({}) has the wrong endpoints", i.one_name(s))));
            }
        }
        for a in i.two_cells() {
            let t = &self.on2[a];
            if !same_functor(t.source(), &self.on1[i.dom2(a)]) || !same_functor(t.target(), &self.on1[i.cod2(a)]) {
                v.push(Violation::new("pseudofunctor typing", format!("F({}) has the wrong boundary", i.two_name(a))));
            }
        }
        for z in i.zero_cells() {
            let u = &self.unit[z];
            let id = Functor::identity(self.cats[z].clone());
            if !same_functor(u.source(), &id) || !same_functor(u.target(), &self.on1[i.id1(z)]) {
                v.push(Violation::new("unit comparison typing", format!("at {}", i.zero_name(z))));
            } else if !u.is_invertible() {
                v.push(Violation::new("unit comparison invertible", format!("at {}", i.zero_name(z))));
            }
        }
        for s in i.one_cells() {
            for &t in i.out1(i.tgt(s)) {
                let name = format!("({}, {})", i.one_name(s), i.one_name(t));
                match self.comp.get(&(s, t)) {
                    None => v.push(Violation::new("composition comparison", format!("missing at {name}"))),
                    Some(m) => {
                        let src = self.on1[t].after(&self.on1[s]);
                        if !same_functor(m.source(), &src) || !same_functor(m.target(), &self.on1[i.h1(t, s)]) {
                            v.push(Violation::new("composition comparison typing", name));
                        } else if !m.is_invertible() {
                            v.push(Violation::new("composition comparison invertible", name));
                        }
                    }
                }
            }
        }
        if !v.is_empty() {
            return v;
        }
        // functoriality on 2-cells
        for s in i.one_cells() {
            if !self.on2[i.id2(s)].is_identity() {
                v.push(Violation::new("2-cell identities", format!("F(1_{}) is not an identity", i.one_name(s))));
            }
        }
        for a in i.two_cells() {
            for b in i.cells_from(i.cod2(a)) {
                let lhs = &self.on2[i.v(b, a)];
                let rhs = self.on2[a].then(&self.on2[b]);
                if lhs.components() != rhs.components() {
                    v.push(Violation::new(
                        "vertical composition",
                        format!("F({}·{})", i.two_name(b), i.two_name(a)),
                    ));
                }
            }
        }
        if !v.is_empty() {
            return v;
        }
        // naturality of the composition comparison in both variables
        for a in i.two_cells() {
            let (s, s2) = (i.dom2(a), i.cod2(a));
            for b in i.two_cells_from(i.tgt(s)) {
                let (t, t2) = (i.dom2(b), i.cod2(b));
                let fj = &self.cats[i.tgt(t)];
                for x in self.cats[i.src(s)].objects() {
                    // F(β)*F(α) at x, then μ_{s',t'}
                    let hor = fj.comp(self.on1[t2].mor(self.on2[a].component(x)), self.on2[b].component(self.on1[s].obj(x)));
                    let lhs = fj.comp(self.comp[&(s2, t2)].component(x), hor);
                    let rhs = fj.comp(self.on2[i.h2(b, a)].component(x), self.comp[&(s, t)].component(x));
                    if lhs != rhs {
                        v.push(Violation::new(
                            "comparison naturality",
                            format!("{} * {} at {}", i.two_name(b), i.two_name(a), self.cats[i.src(s)].object_name(x)),
                        ));
                        break;
                    }
                }
            }
        }
        if !v.is_empty() {
            return v;
        }
        // associativity
        for r in i.one_cells() {
            for &s in i.out1(i.tgt(r)) {
                let sr = i.h1(s, r);
                for &t in i.out1(i.tgt(s)) {
                    let ts = i.h1(t, s);
                    let fl = &self.cats[i.tgt(t)];
                    for x in self.cats[i.src(r)].objects() {
                        let lhs = fl.comp(self.mu_at(r, ts, x), self.mu_at(s, t, self.on1[r].obj(x)));
                        let rhs = fl.comp(self.mu_at(sr, t, x), self.on1[t].mor(self.mu_at(r, s, x)));
                        if lhs != rhs {
                            v.push(Violation::new(
                                "associativity coherence",
                                format!("({}, {}, {}) at {}", i.one_name(r), i.one_name(s), i.one_name(t), self.cats[i.src(r)].object_name(x)),
                            ));
                            break;
                        }
                    }
                }
            }
        }
        // unit triangles
        for s in i.one_cells() {
            let (a, b) = (i.src(s), i.tgt(s));
            let fb = &self.cats[b];
            for x in self.cats[a].objects() {
                let left = fb.comp(self.mu_at(i.id1(a), s, x), self.on1[s].mor(self.unit[a].component(x)));
                let right = fb.comp(self.mu_at(s, i.id1(b), x), self.unit[b].component(self.on1[s].obj(x)));
                if !fb.is_identity(left) || !fb.is_identity(right) {
                    v.push(Violation::new(
                        "unit coherence",
                        format!("{} at {}", i.one_name(s), self.cats[a].object_name(x)),
                    ));
                    break;
                }
            }
        }
        v
    }

    pub fn source(&self) -> &Arc<TwoCat> {
        &self.source
    }

    pub fn fiber(&self, i: usize) -> &Arc<FinCat> {
        &self.cats[i]
    }

    pub fn fibers(&self) -> &[Arc<FinCat>] {
        &self.cats
    }

    pub fn on1(&self, s: usize) -> &Functor {
        &self.on1[s]
    }

    pub fn on2(&self, a: usize) -> &NatTrans {
        &self.on2[a]
    }

    /// `F(t)∘F(s) ⇒ F(t∘s)`.
    pub fn mu(&self, s: usize, t: usize) -> &NatTrans {
        &self.comp[&(s, t)]
    }

    /// Component of [`Self::mu`] at `x ∈ F(src s)`.
    pub fn mu_at(&self, s: usize, t: usize, x: usize) -> usize {
        self.comp[&(s, t)].component(x)
    }

    pub fn mu_inv_at(&self, s: usize, t: usize, x: usize) -> usize {
        let c = &self.cats[self.source.tgt(t)];
        c.inverse(self.mu_at(s, t, x)).expect("comparison cells are invertible")
    }

    /// `1 ⇒ F(1_i)`.
    pub fn iota(&self, i: usize) -> &NatTrans {
        &self.unit[i]
    }

    pub fn iota_at(&self, i: usize, x: usize) -> usize {
        self.unit[i].component(x)
    }

    pub fn iota_inv_at(&self, i: usize, x: usize) -> usize {
        self.cats[i].inverse(self.unit[i].component(x)).expect("unit cells are invertible")
    }

    pub fn is_strict(&self) -> bool {
        self.unit.iter().all(NatTrans::is_identity) && self.comp.values().all(NatTrans::is_identity)
    }

    /// `self ∘ g` for a strict 2-functor `g` into the index.
    pub fn precompose(&self, g: &TwoFunctor) -> Result<CatPseudoFunctor> {
        if !Arc::ptr_eq(g.target(), &self.source) {
            return Err(Error::Precondition("2-functor does not land in the index".into()));
        }
        let i = g.source().clone();
        let mut comp = HashMap::new();
        for s in i.one_cells() {
            for &t in i.out1(i.tgt(s)) {
                comp.insert((s, t), self.comp[&(g.on1(s), g.on1(t))].clone());
            }
        }
        CatPseudoFunctor::new(
            i.clone(),
            PseudoParts {
                cats: i.zero_cells().map(|z| self.cats[g.on0(z)].clone()).collect(),
                on1: i.one_cells().map(|s| self.on1[g.on1(s)].clone()).collect(),
                on2: i.two_cells().map(|a| self.on2[g.on2(a)].clone()).collect(),
                comp,
                unit: i.zero_cells().map(|z| self.unit[g.on0(z)].clone()).collect(),
            },
        )
    }

    /// Replaces each listed `F(s)` by the target of an invertible
    /// `ψ_s: F(s) ⇒ F'(s)` and conjugates the remaining data accordingly.
    pub fn transport(&self, replace: &[(usize, NatTrans)]) -> Result<CatPseudoFunctor> {
        let i = &*self.source;
        let mut psi: Vec<NatTrans> = self.on1.iter().map(NatTrans::identity).collect();
        for (s, p) in replace {
            if !same_functor(p.source(), &self.on1[*s]) || !p.is_invertible() {
                return Err(Error::Precondition(format!(
                    "replacement for {} is not an invertible cell out of F({})",
                    i.one_name(*s),
                    i.one_name(*s)
                )));
            }
            psi[*s] = p.clone();
        }
        let psi_inv: Vec<NatTrans> = psi.iter().map(|p| p.inverse().expect("checked invertible")).collect();
        let on1: Vec<Functor> = psi.iter().map(|p| p.target().clone()).collect();
        let on2 = i
            .two_cells()
            .map(|a| psi_inv[i.dom2(a)].then(&self.on2[a]).then(&psi[i.cod2(a)]))
            .collect();
        let mut comp = HashMap::new();
        for s in i.one_cells() {
            for &t in i.out1(i.tgt(s)) {
                let ts = i.h1(t, s);
                let c = &self.cats[i.tgt(t)];
                let components = self.cats[i.src(s)]
                    .objects()
                    .map(|x| {
                        let back = c.comp(
                            psi_inv[t].component(self.on1[s].obj(x)),
                            on1[t].mor(psi_inv[s].component(x)),
                        );
                        c.comp(psi[ts].component(x), c.comp(self.mu_at(s, t, x), back))
                    })
                    .collect();
                comp.insert((s, t), NatTrans::new(on1[t].after(&on1[s]), on1[ts].clone(), components)?);
            }
        }
        let unit = i
            .zero_cells()
            .map(|z| self.unit[z].then(&psi[i.id1(z)]))
            .collect();
        CatPseudoFunctor::new(
            self.source.clone(),
            PseudoParts {
                cats: self.cats.clone(),
                on1,
                on2,
                comp,
                unit,
            },
        )
    }

    /// Serialized form referring to the index by `index`.
    pub fn to_doc(&self, index: &str) -> PseudoFunctorDoc {
        let i = &*self.source;
        let mut comp_iso = Vec::new();
        for s in i.one_cells() {
            for &t in i.out1(i.tgt(s)) {
                let m = &self.comp[&(s, t)];
                if !m.is_identity() {
                    comp_iso.push(CompIsoDoc {
                        first: i.one_name(s).into(),
                        second: i.one_name(t).into(),
                        components: m.to_doc(),
                    });
                }
            }
        }
        PseudoFunctorDoc {
            index: index.into(),
            fibers: i
                .zero_cells()
                .map(|z| (i.zero_name(z).into(), self.cats[z].to_doc()))
                .collect(),
            on1: i
                .one_cells()
                .filter(|&s| !(i.is_identity1(s) && self.on1[s].is_identity()))
                .map(|s| (i.one_name(s).into(), self.on1[s].to_doc()))
                .collect(),
            on2: i
                .two_cells()
                .filter(|&a| !self.on2[a].is_identity())
                .map(|a| (i.two_name(a).into(), self.on2[a].to_doc()))
                .collect(),
            comp_iso,
            unit_iso: i
                .zero_cells()
                .filter(|&z| !self.unit[z].is_identity())
                .map(|z| (i.zero_name(z).into(), self.unit[z].to_doc()))
                .collect(),
        }
    }
}

fn same(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || (a.n_objects() == b.n_objects() && a.n_morphisms() == b.n_morphisms() && a.object_names() == b.object_names())
}

fn same_functor(f: &Functor, g: &Functor) -> bool {
    same(f.source(), g.source()) && same(f.target(), g.target()) && f.obj_map() == g.obj_map() && f.mor_map() == g.mor_map()
}

/// Serialized pseudofunctor. Identity 1-cells and 2-cells may be omitted
/// (mapped to identities); omitted comparison cells are identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoFunctorDoc {
    /// Path or name of the index 2-category document.
    pub index: String,
    pub fibers: BTreeMap<String, FinCatDoc>,
    #[serde(default)]
    pub on1: BTreeMap<String, FunctorDoc>,
    #[serde(default)]
    pub on2: BTreeMap<String, NatTransDoc>,
    #[serde(default)]
    pub comp_iso: Vec<CompIsoDoc>,
    #[serde(default)]
    pub unit_iso: BTreeMap<String, NatTransDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompIsoDoc {
    pub first: String,
    pub second: String,
    pub components: NatTransDoc,
}

/// Validates a pseudofunctor document against its index 2-category.
pub fn validate_pseudofunctor(doc: &PseudoFunctorDoc, index: Arc<TwoCat>) -> Result<CatPseudoFunctor> {
    let i = &*index;
    let cats = i
        .zero_cells()
        .map(|z| {
            let name = i.zero_name(z);
            let d = doc
                .fibers
                .get(name)
                .ok_or_else(|| Error::invalid("pseudofunctor", format!("no fiber for 0-cell `{name}`")))?;
            validate_fincat(d).map(Arc::new).map_err(|e| prefix(e, &format!("fiber {name}")))
        })
        .collect::<Result<Vec<_>>>()?;
    for k in doc.fibers.keys() {
        if i.zero_id(k).is_none() {
            return Err(Error::unknown("0-cell", k.clone()));
        }
    }
    let on1 = i
        .one_cells()
        .map(|s| {
            let (a, b) = (cats[i.src(s)].clone(), cats[i.tgt(s)].clone());
            match doc.on1.get(i.one_name(s)) {
                Some(d) => Functor::from_doc(d, a, b).map_err(|e| prefix(e, &format!("F({})", i.one_name(s)))),
                None if i.is_identity1(s) => Ok(Functor::identity(a)),
                None => Err(Error::invalid("pseudofunctor", format!("1-cell `{}` is unmapped", i.one_name(s)))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let on2 = i
        .two_cells()
        .map(|a| {
            let (f, g) = (on1[i.dom2(a)].clone(), on1[i.cod2(a)].clone());
            match doc.on2.get(i.two_name(a)) {
                Some(d) => NatTrans::from_doc(d, f, g).map_err(|e| prefix(e, &format!("F({})", i.two_name(a)))),
                None if f.obj_map() == g.obj_map() => NatTrans::from_doc(&NatTransDoc::default(), f, g)
                    .map_err(|e| prefix(e, &format!("F({})", i.two_name(a)))),
                None => Err(Error::invalid("pseudofunctor", format!("2-cell `{}` is unmapped", i.two_name(a)))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut given: HashMap<(usize, usize), &NatTransDoc> = HashMap::new();
    for c in &doc.comp_iso {
        let s = i.one_id(&c.first).ok_or_else(|| Error::unknown("1-cell", c.first.clone()))?;
        let t = i.one_id(&c.second).ok_or_else(|| Error::unknown("1-cell", c.second.clone()))?;
        if i.tgt(s) != i.src(t) {
            return Err(Error::invalid("composition comparison", format!("({}, {}) not composable", c.first, c.second)));
        }
        given.insert((s, t), &c.components);
    }
    let empty = NatTransDoc::default();
    let mut comp = HashMap::new();
    for s in i.one_cells() {
        for &t in i.out1(i.tgt(s)) {
            let src = on1[t].after(&on1[s]);
            let d = given.get(&(s, t)).copied().unwrap_or(&empty);
            let m = NatTrans::from_doc(d, src, on1[i.h1(t, s)].clone())
                .map_err(|e| prefix(e, &format!("comparison ({}, {})", i.one_name(s), i.one_name(t))))?;
            comp.insert((s, t), m);
        }
    }
    let unit = i
        .zero_cells()
        .map(|z| {
            let d = doc.unit_iso.get(i.zero_name(z)).unwrap_or(&empty);
            NatTrans::from_doc(d, Functor::identity(cats[z].clone()), on1[i.id1(z)].clone())
                .map_err(|e| prefix(e, &format!("unit at {}", i.zero_name(z))))
        })
        .collect::<Result<Vec<_>>>()?;
    CatPseudoFunctor::new(
        index,
        PseudoParts {
            cats,
            on1,
            on2,
            comp,
            unit,
        },
    )
}

fn prefix(e: Error, at: &str) -> Error {
    match e {
        Error::Invalid(v) => Error::Invalid(
            v.into_iter()
                .map(|x| Violation::new(format!("{at}: {}", x.axiom), x.detail))
                .collect(),
        ),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twocat::locally_discrete;

    fn arrow_index() -> Arc<TwoCat> {
        Arc::new(locally_discrete(&FinCat::walking_arrow()))
    }

    #[test]
    fn constant_is_strict_and_valid() {
        let f = CatPseudoFunctor::constant(arrow_index(), Arc::new(FinCat::walking_iso()));
        assert!(f.is_strict());
        assert!(f.violations().is_empty());
    }

    #[test]
    fn doc_round_trip() {
        let f = CatPseudoFunctor::constant(arrow_index(), Arc::new(FinCat::walking_arrow()));
        let doc = f.to_doc("arrow");
        let back = validate_pseudofunctor(&doc, arrow_index()).unwrap();
        assert!(back.is_strict());
    }

    #[test]
    fn twisted_comparison_breaks_coherence() {
        let idx = Arc::new(TwoCat::terminal());
        let z2 = crate::fincat::FinCatBuilder::new()
            .object("*")
            .morphism("g", "*", "*")
            .compose("g", "g", "id_*")
            .build()
            .unwrap();
        let mut doc = CatPseudoFunctor::constant(idx.clone(), Arc::new(z2)).to_doc("pt");
        let id = idx.one_name(0).to_string();
        doc.comp_iso.push(CompIsoDoc {
            first: id.clone(),
            second: id,
            components: NatTransDoc {
                components: [("*".to_string(), "g".to_string())].into_iter().collect(),
            },
        });
        let err = validate_pseudofunctor(&doc, idx).unwrap_err();
        assert!(err.violations().iter().any(|v| v.axiom == "unit coherence"), "{err}");
    }

    #[test]
    fn transport_along_collapse_is_coherent() {
        // over 0 → 1, replace F(1_1) = id by the constant functor at `a`
        let idx = arrow_index();
        let x = Arc::new(FinCat::walking_iso());
        let f = CatPseudoFunctor::constant(idx.clone(), x.clone());
        let a = x.object_id("a").unwrap();
        let g = x.morphism_id("g").unwrap();
        let konst = Functor::constant(x.clone(), x.clone(), a);
        let psi = NatTrans::new(Functor::identity(x.clone()), konst, vec![x.id(a), g]).unwrap();
        let one1 = idx.id1(idx.zero_id("b").unwrap());
        let t = f.transport(&[(one1, psi)]).unwrap();
        assert!(!t.is_strict());
        let back = validate_pseudofunctor(&t.to_doc("arrow"), idx).unwrap();
        assert!(!back.is_strict());
    }
}
