use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::FinCat;
use crate::error::{Error, Result, Violation};

/// A functor between finite categories, stored as index maps.
#[derive(Clone, Debug)]
pub struct Functor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj: Vec<usize>,
    mor: Vec<usize>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.obj == other.obj
            && self.mor == other.mor
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl Eq for Functor {}

impl Functor {
    /// Validates that the maps preserve typing, identities and composition.
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, obj: Vec<usize>, mor: Vec<usize>) -> Result<Functor> {
        let f = Functor {
            source,
            target,
            obj,
            mor,
        };
        let v = f.violations();
        if v.is_empty() {
            Ok(f)
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// Builds without validation; callers guarantee functoriality.
    pub(crate) fn new_unchecked(source: Arc<FinCat>, target: Arc<FinCat>, obj: Vec<usize>, mor: Vec<usize>) -> Functor {
        let f = Functor {
            source,
            target,
            obj,
            mor,
        };
        debug_assert!(f.violations().is_empty(), "{:?}", f.violations());
        f
    }

    pub fn violations(&self) -> Vec<Violation> {
        let (s, t) = (&*self.source, &*self.target);
        let mut out = Vec::new();
        if self.obj.len() != s.n_objects() || self.mor.len() != s.n_morphisms() {
            out.push(Violation::new("functor", "maps do not cover the source"));
            return out;
        }
        if self.obj.iter().any(|&x| x >= t.n_objects()) || self.mor.iter().any(|&x| x >= t.n_morphisms()) {
            out.push(Violation::new("functor", "maps leave the target"));
            return out;
        }
        for f in s.morphisms() {
            let g = self.mor[f];
            if t.dom(g) != self.obj[s.dom(f)] || t.cod(g) != self.obj[s.cod(f)] {
                out.push(Violation::new(
                    "functor preserves dom/cod",
                    format!("{} ↦ {}", s.morphism_name(f), t.morphism_name(g)),
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in s.objects() {
            if self.mor[s.id(a)] != t.id(self.obj[a]) {
                out.push(Violation::new(
                    "functor preserves identities",
                    format!("identity of {}", s.object_name(a)),
                ));
            }
        }
        for g in s.morphisms() {
            for &f in s.incoming(s.dom(g)) {
                if self.mor[s.comp(g, f)] != t.comp(self.mor[g], self.mor[f]) {
                    out.push(Violation::new(
                        "functor preserves composition",
                        format!("{} ∘ {}", s.morphism_name(g), s.morphism_name(f)),
                    ));
                }
            }
        }
        out
    }

    pub fn identity(c: Arc<FinCat>) -> Functor {
        let obj = c.objects().collect();
        let mor = c.morphisms().collect();
        Functor {
            source: c.clone(),
            target: c,
            obj,
            mor,
        }
    }

    /// Constant functor at object `x` of `target`.
    pub fn constant(source: Arc<FinCat>, target: Arc<FinCat>, x: usize) -> Functor {
        let obj = vec![x; source.n_objects()];
        let mor = vec![target.id(x); source.n_morphisms()];
        Functor {
            source,
            target,
            obj,
            mor,
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn obj(&self, a: usize) -> usize {
        self.obj[a]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.mor[f]
    }

    pub fn obj_map(&self) -> &[usize] {
        &self.obj
    }

    pub fn mor_map(&self) -> &[usize] {
        &self.mor
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Functor {
        assert_eq!(first.target.n_objects(), self.source.n_objects());
        Functor {
            source: first.source.clone(),
            target: self.target.clone(),
            obj: first.obj.iter().map(|&a| self.obj[a]).collect(),
            mor: first.mor.iter().map(|&f| self.mor[f]).collect(),
        }
    }

    /// Same maps, re-targeted at a structurally equal category.
    pub fn with_categories(&self, source: Arc<FinCat>, target: Arc<FinCat>) -> Functor {
        Functor {
            source,
            target,
            obj: self.obj.clone(),
            mor: self.mor.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.obj.iter().enumerate().all(|(i, &x)| i == x) && self.mor.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn to_doc(&self) -> FunctorDoc {
        let (s, t) = (&*self.source, &*self.target);
        FunctorDoc {
            objects: s
                .objects()
                .map(|a| (s.object_name(a).to_string(), t.object_name(self.obj[a]).to_string()))
                .collect(),
            morphisms: s
                .morphisms()
                .map(|f| (s.morphism_name(f).to_string(), t.morphism_name(self.mor[f]).to_string()))
                .collect(),
        }
    }

    pub fn from_doc(doc: &FunctorDoc, source: Arc<FinCat>, target: Arc<FinCat>) -> Result<Functor> {
        let mut obj = Vec::with_capacity(source.n_objects());
        for a in source.objects() {
            let name = source.object_name(a);
            let img = doc
                .objects
                .get(name)
                .ok_or_else(|| Error::invalid("functor", format!("object `{name}` is unmapped")))?;
            obj.push(target.object_id(img).ok_or_else(|| Error::unknown("object", img.clone()))?);
        }
        let mut mor = Vec::with_capacity(source.n_morphisms());
        for f in source.morphisms() {
            let name = source.morphism_name(f);
            let img = match doc.morphisms.get(name) {
                Some(img) => target.morphism_id(img).ok_or_else(|| Error::unknown("morphism", img.clone()))?,
                // identities may be left implicit
                None if source.is_identity(f) => target.id(obj[source.dom(f)]),
                None => return Err(Error::invalid("functor", format!("morphism `{name}` is unmapped"))),
            };
            mor.push(img);
        }
        Functor::new(source, target, obj, mor)
    }
}

/// A natural transformation `source ⇒ target` between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    source: Functor,
    target: Functor,
    components: Vec<usize>,
}

impl NatTrans {
    pub fn new(source: Functor, target: Functor, components: Vec<usize>) -> Result<NatTrans> {
        let n = NatTrans {
            source,
            target,
            components,
        };
        let v = n.violations();
        if v.is_empty() {
            Ok(n)
        } else {
            Err(Error::Invalid(v))
        }
    }

    pub(crate) fn new_unchecked(source: Functor, target: Functor, components: Vec<usize>) -> NatTrans {
        let n = NatTrans {
            source,
            target,
            components,
        };
        debug_assert!(n.violations().is_empty(), "{:?}", n.violations());
        n
    }

    pub fn violations(&self) -> Vec<Violation> {
        let c = &**self.source.source();
        let d = &**self.source.target();
        let mut out = Vec::new();
        if self.target.source().n_objects() != c.n_objects() || self.target.target().n_objects() != d.n_objects() {
            out.push(Violation::new("natural transformation", "functors are not parallel"));
            return out;
        }
        if self.components.len() != c.n_objects() {
            out.push(Violation::new("natural transformation", "one component per object required"));
            return out;
        }
        for a in c.objects() {
            let k = self.components[a];
            if k >= d.n_morphisms() || d.dom(k) != self.source.obj(a) || d.cod(k) != self.target.obj(a) {
                out.push(Violation::new(
                    "component typing",
                    format!("component at {}", c.object_name(a)),
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in c.morphisms() {
            let (x, y) = (c.dom(f), c.cod(f));
            let lhs = d.comp(self.target.mor(f), self.components[x]);
            let rhs = d.comp(self.components[y], self.source.mor(f));
            if lhs != rhs {
                out.push(Violation::new(
                    "naturality",
                    format!("square at {} does not commute", c.morphism_name(f)),
                ));
            }
        }
        out
    }

    pub fn identity(f: &Functor) -> NatTrans {
        let d = f.target();
        NatTrans {
            source: f.clone(),
            target: f.clone(),
            components: f.source().objects().map(|a| d.id(f.obj(a))).collect(),
        }
    }

    pub fn source(&self) -> &Functor {
        &self.source
    }

    pub fn target(&self) -> &Functor {
        &self.target
    }

    pub fn component(&self, a: usize) -> usize {
        self.components[a]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn is_invertible(&self) -> bool {
        let d = self.source.target();
        self.components.iter().all(|&k| d.is_iso(k))
    }

    pub fn is_identity(&self) -> bool {
        let d = self.source.target();
        self.components.iter().all(|&k| d.is_identity(k))
    }

    pub fn inverse(&self) -> Option<NatTrans> {
        let d = self.source.target();
        let components = self
            .components
            .iter()
            .map(|&k| d.inverse(k))
            .collect::<Option<Vec<_>>>()?;
        Some(NatTrans {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }

    /// Vertical composite `next · self`.
    pub fn then(&self, next: &NatTrans) -> NatTrans {
        let d = self.source.target();
        NatTrans {
            source: self.source.clone(),
            target: next.target.clone(),
            components: self
                .components
                .iter()
                .zip(&next.components)
                .map(|(&a, &b)| d.comp(b, a))
                .collect(),
        }
    }

    /// Whiskering `h ∘ self` by a functor out of the codomain category.
    pub fn whisker_left(&self, h: &Functor) -> NatTrans {
        NatTrans {
            source: h.after(&self.source),
            target: h.after(&self.target),
            components: self.components.iter().map(|&k| h.mor(k)).collect(),
        }
    }

    /// Whiskering `self ∘ k` by a functor into the domain category.
    pub fn whisker_right(&self, k: &Functor) -> NatTrans {
        NatTrans {
            source: self.source.after(k),
            target: self.target.after(k),
            components: k.obj_map().iter().map(|&a| self.components[a]).collect(),
        }
    }

    pub fn to_doc(&self) -> NatTransDoc {
        let c = self.source.source();
        let d = self.source.target();
        NatTransDoc {
            components: c
                .objects()
                .map(|a| (c.object_name(a).to_string(), d.morphism_name(self.components[a]).to_string()))
                .collect(),
        }
    }

    pub fn from_doc(doc: &NatTransDoc, source: Functor, target: Functor) -> Result<NatTrans> {
        let c = source.source().clone();
        let d = source.target().clone();
        let mut components = Vec::with_capacity(c.n_objects());
        for a in c.objects() {
            let name = c.object_name(a);
            let k = match doc.components.get(name) {
                Some(m) => d.morphism_id(m).ok_or_else(|| Error::unknown("morphism", m.clone()))?,
                None if source.obj(a) == target.obj(a) => d.id(source.obj(a)),
                None => {
                    return Err(Error::invalid(
                        "natural transformation",
                        format!("component at `{name}` missing"),
                    ))
                }
            };
            components.push(k);
        }
        NatTrans::new(source, target, components)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct FunctorDoc {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct NatTransDoc {
    #[serde(default)]
    pub components: BTreeMap<String, String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bad_functor_is_rejected() {
        let a = Arc::new(FinCat::walking_arrow());
        let t = Arc::new(FinCat::discrete(&["x", "y"]));
        // a ↦ x, b ↦ y has no image for the arrow.
        let err = Functor::new(a.clone(), t.clone(), vec![0, 1], vec![0, 0, 1]).unwrap_err();
        assert!(!err.violations().is_empty());
    }

    #[test]
    fn non_natural_family_is_rejected() {
        let c = Arc::new(FinCat::parallel_pair());
        let id = Functor::identity(c.clone());
        let u = c.morphism_id("u").unwrap();
        let v = c.morphism_id("v").unwrap();
        // Swap functor: u ↦ v, v ↦ u.
        let mut mor: Vec<usize> = c.morphisms().collect();
        mor[u] = v;
        mor[v] = u;
        let swap = Functor::new(c.clone(), c.clone(), c.objects().collect(), mor).unwrap();
        let ids: Vec<usize> = c.objects().map(|a| c.id(a)).collect();
        assert!(NatTrans::new(id.clone(), swap, ids).is_err());
        assert!(NatTrans::identity(&id).is_invertible());
    }
}
