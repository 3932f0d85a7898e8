//! Finite categories stored as explicit composition tables, together with
//! functors, natural transformations and the equivalence machinery used to
//! compare computed categories.

mod equivalence;
mod funcat;
mod functor;
mod search;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};

pub use equivalence::{
    analyze_functor, check_equivalence, full_subcategory, isomorphism, skeleton, Equivalence, EquivalenceVerdict,
    FunctorAnalysis, Skeleton,
};
pub use funcat::{functor_category, FunctorCategory};
pub use functor::{Functor, FunctorDoc, NatTrans, NatTransDoc};
pub use search::{all_functors, all_nat_trans};

const NONE: u32 = u32::MAX;

/// A morphism record: name plus domain and codomain object indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphismRecord {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// How much of the category axioms a constructor verifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// Totality, typing and identity laws.
    Structural,
    /// Structural checks plus exhaustive associativity.
    Full,
}

/// A category with finitely many objects and morphisms.
#[derive(Clone)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<MorphismRecord>,
    identity: Vec<usize>,
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
    slot: Vec<usize>,
    table: Vec<Vec<u32>>,
    homs: HashMap<(usize, usize), Vec<usize>>,
    inverse: Vec<Option<usize>>,
    obj_index: HashMap<String, usize>,
    mor_index: HashMap<String, usize>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.table == other.table
    }
}

impl Eq for FinCat {}

impl FinCat {
    /// Builds a category from its parts. `compose(g, f)` must return `g ∘ f`
    /// for every composable pair.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<MorphismRecord>,
        identity: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> Option<usize>,
        check: Check,
    ) -> Result<FinCat> {
        let mut violations = Vec::new();
        let n = objects.len();
        let m = morphisms.len();

        let mut obj_index = HashMap::with_capacity(n);
        for (i, name) in objects.iter().enumerate() {
            if obj_index.insert(name.clone(), i).is_some() {
                violations.push(Violation::new("distinct names", format!("duplicate object `{name}`")));
            }
        }
        let mut mor_index = HashMap::with_capacity(m);
        for (i, rec) in morphisms.iter().enumerate() {
            if mor_index.insert(rec.name.clone(), i).is_some() {
                violations.push(Violation::new(
                    "distinct names",
                    format!("duplicate morphism `{}`", rec.name),
                ));
            }
            if rec.dom >= n || rec.cod >= n {
                violations.push(Violation::new(
                    "dangling dom/cod",
                    format!("morphism `{}` refers to a missing object", rec.name),
                ));
            }
        }
        if identity.len() != n {
            violations.push(Violation::new("identities", "one identity per object required"));
        }
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        for (a, &i) in identity.iter().enumerate() {
            if i >= m || morphisms[i].dom != a || morphisms[i].cod != a {
                violations.push(Violation::new(
                    "identities",
                    format!("identity of `{}` is not an endomorphism of it", objects[a]),
                ));
            }
        }
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }

        let mut incoming = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        let mut slot = vec![0; m];
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (f, rec) in morphisms.iter().enumerate() {
            slot[f] = incoming[rec.cod].len();
            incoming[rec.cod].push(f);
            outgoing[rec.dom].push(f);
            homs.entry((rec.dom, rec.cod)).or_default().push(f);
        }

        let mut table = Vec::with_capacity(m);
        for (g, grec) in morphisms.iter().enumerate() {
            let mut row = vec![NONE; incoming[grec.dom].len()];
            for (k, &f) in incoming[grec.dom].iter().enumerate() {
                match compose(g, f) {
                    Some(h) if h < m => {
                        let (d, c) = (morphisms[f].dom, grec.cod);
                        if morphisms[h].dom != d || morphisms[h].cod != c {
                            violations.push(Violation::new(
                                "composite typing",
                                format!(
                                    "{} ∘ {} = {} has wrong domain or codomain",
                                    grec.name, morphisms[f].name, morphisms[h].name
                                ),
                            ));
                        } else {
                            row[k] = h as u32;
                        }
                    }
                    Some(_) => violations.push(Violation::new(
                        "composition not total",
                        format!("{} ∘ {} names a missing morphism", grec.name, morphisms[f].name),
                    )),
                    None => violations.push(Violation::new(
                        "composition not total",
                        format!("{} ∘ {} is undefined", grec.name, morphisms[f].name),
                    )),
                }
            }
            table.push(row);
        }
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }

        let mut cat = FinCat {
            objects,
            morphisms,
            identity,
            incoming,
            outgoing,
            slot,
            table,
            homs,
            inverse: Vec::new(),
            obj_index,
            mor_index,
        };
        let mut violations = cat.identity_violations();
        if check == Check::Full && violations.is_empty() {
            violations.extend(cat.associativity_violations(16));
        }
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        cat.inverse = (0..m).map(|f| cat.find_inverse(f)).collect();
        Ok(cat)
    }

    fn identity_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for f in 0..self.morphisms.len() {
            let rec = &self.morphisms[f];
            if self.compose_raw(f, self.identity[rec.dom]) != f {
                out.push(Violation::new(
                    "right identity",
                    format!("{} ∘ id ≠ {}", rec.name, rec.name),
                ));
            }
            if self.compose_raw(self.identity[rec.cod], f) != f {
                out.push(Violation::new(
                    "left identity",
                    format!("id ∘ {} ≠ {}", rec.name, rec.name),
                ));
            }
        }
        out
    }

    fn associativity_violations(&self, cap: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        for f in 0..self.morphisms.len() {
            let b = self.morphisms[f].cod;
            for &g in &self.outgoing[b] {
                let gf = self.compose_raw(g, f);
                let c = self.morphisms[g].cod;
                for &h in &self.outgoing[c] {
                    let lhs = self.compose_raw(h, gf);
                    let rhs = self.compose_raw(self.compose_raw(h, g), f);
                    if lhs != rhs {
                        out.push(Violation::new(
                            "associativity",
                            format!(
                                "({} ∘ {}) ∘ {} ≠ {} ∘ ({} ∘ {})",
                                self.morphisms[h].name,
                                self.morphisms[g].name,
                                self.morphisms[f].name,
                                self.morphisms[h].name,
                                self.morphisms[g].name,
                                self.morphisms[f].name
                            ),
                        ));
                        if out.len() >= cap {
                            return out;
                        }
                    }
                }
            }
        }
        out
    }

    /// Exhaustive check of every category axiom; empty when valid.
    pub fn check_axioms(&self) -> Vec<Violation> {
        let mut v = self.identity_violations();
        v.extend(self.associativity_violations(usize::MAX));
        v
    }

    fn find_inverse(&self, f: usize) -> Option<usize> {
        let rec = &self.morphisms[f];
        self.hom(rec.cod, rec.dom).iter().copied().find(|&g| {
            self.compose_raw(g, f) == self.identity[rec.dom]
                && self.compose_raw(f, g) == self.identity[rec.cod]
        })
    }

    #[inline]
    fn compose_raw(&self, g: usize, f: usize) -> usize {
        self.table[g][self.slot[f]] as usize
    }

    pub fn terminal() -> FinCat {
        Self::discrete(&["*"])
    }

    pub fn empty() -> FinCat {
        Self::discrete::<&str>(&[])
    }

    pub fn discrete<S: AsRef<str>>(names: &[S]) -> FinCat {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(i, o)| MorphismRecord {
                name: format!("id_{o}"),
                dom: i,
                cod: i,
            })
            .collect();
        let identity = (0..objects.len()).collect();
        FinCat::from_parts(objects, morphisms, identity, |g, f| (g == f).then_some(g), Check::Structural)
            .expect("discrete category")
    }

    /// The poset category on `names` where `leq(i, j)` gives the order.
    /// The relation must be reflexive and transitive.
    pub fn poset<S: AsRef<str>>(names: &[S], leq: impl Fn(usize, usize) -> bool) -> Result<FinCat> {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        let mut identity = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    let name = if i == j {
                        format!("id_{}", objects[i])
                    } else {
                        format!("{}<{}", objects[i], objects[j])
                    };
                    index.insert((i, j), morphisms.len());
                    if i == j {
                        identity[i] = morphisms.len();
                    }
                    morphisms.push(MorphismRecord { name, dom: i, cod: j });
                }
            }
        }
        for i in 0..n {
            if !index.contains_key(&(i, i)) {
                return Err(Error::invalid("identities", format!("order is not reflexive at {}", objects[i])));
            }
        }
        let recs = morphisms.clone();
        FinCat::from_parts(
            objects,
            morphisms,
            identity,
            |g, f| index.get(&(recs[f].dom, recs[g].cod)).copied(),
            Check::Full,
        )
    }

    /// `a → b`.
    pub fn walking_arrow() -> FinCat {
        Self::poset(&["a", "b"], |i, j| i <= j).expect("walking arrow")
    }

    /// Two objects and an isomorphism `f: a → b` with inverse `g`.
    pub fn walking_iso() -> FinCat {
        FinCatBuilder::new()
            .objects(&["a", "b"])
            .morphism("f", "a", "b")
            .morphism("g", "b", "a")
            .compose("g", "f", "id_a")
            .compose("f", "g", "id_b")
            .build()
            .expect("walking isomorphism")
    }

    /// `a ⇉ b` with arrows `u`, `v`.
    pub fn parallel_pair() -> FinCat {
        FinCatBuilder::new()
            .objects(&["a", "b"])
            .morphism("u", "a", "b")
            .morphism("v", "a", "b")
            .build()
            .expect("parallel pair")
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<usize> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_records(&self) -> &[MorphismRecord] {
        &self.morphisms
    }

    pub fn object_id(&self, name: &str) -> Option<usize> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism_id(&self, name: &str) -> Option<usize> {
        self.mor_index.get(name).copied()
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    pub fn id(&self, a: usize) -> usize {
        self.identity[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.morphisms[f].dom] == f
    }

    /// `g ∘ f`, or `None` when `cod f ≠ dom g`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        (self.morphisms[f].cod == self.morphisms[g].dom).then(|| self.compose_raw(g, f))
    }

    /// `g ∘ f`; panics when the pair is not composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        assert_eq!(
            self.morphisms[f].cod, self.morphisms[g].dom,
            "composing non-composable morphisms {} ∘ {}",
            self.morphisms[g].name, self.morphisms[f].name
        );
        self.compose_raw(g, f)
    }

    /// Composite of a path given in diagrammatic order (`[f, g]` is `g ∘ f`).
    /// An empty path yields the identity at `at`.
    pub fn compose_path(&self, at: usize, path: &[usize]) -> Result<usize> {
        let mut acc = self.identity[at];
        for &f in path {
            acc = self.compose(f, acc).ok_or_else(|| {
                Error::Precondition(format!(
                    "path is not composable at `{}`",
                    self.morphisms[f].name
                ))
            })?;
        }
        Ok(acc)
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn outgoing(&self, a: usize) -> &[usize] {
        &self.outgoing[a]
    }

    pub fn incoming(&self, a: usize) -> &[usize] {
        &self.incoming[a]
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverse[f]
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse[f].is_some()
    }

    /// Some isomorphism `a → b`, the first in identifier order.
    pub fn iso_between(&self, a: usize, b: usize) -> Option<usize> {
        self.hom(a, b).iter().copied().find(|&f| self.is_iso(f))
    }

    /// Number of composable pairs, a rough measure of table size.
    pub fn composable_pairs(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }

    /// The opposite category; names are kept.
    pub fn opposite(&self) -> FinCat {
        let morphisms = self
            .morphisms
            .iter()
            .map(|r| MorphismRecord {
                name: r.name.clone(),
                dom: r.cod,
                cod: r.dom,
            })
            .collect();
        FinCat::from_parts(
            self.objects.clone(),
            morphisms,
            self.identity.clone(),
            |g, f| self.compose(f, g),
            Check::Structural,
        )
        .expect("opposite of a valid category")
    }

    pub fn to_doc(&self) -> FinCatDoc {
        let mut composition = Vec::with_capacity(self.composable_pairs());
        for g in self.morphisms() {
            for &f in &self.incoming[self.dom(g)] {
                composition.push([
                    self.morphisms[g].name.clone(),
                    self.morphisms[f].name.clone(),
                    self.morphisms[self.compose_raw(g, f)].name.clone(),
                ]);
            }
        }
        FinCatDoc {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|r| MorphismDoc {
                    name: r.name.clone(),
                    dom: self.objects[r.dom].clone(),
                    cod: self.objects[r.cod].clone(),
                })
                .collect(),
            identities: self
                .objects()
                .map(|a| (self.objects[a].clone(), self.morphisms[self.identity[a]].name.clone()))
                .collect(),
            composition,
        }
    }
}

/// Validates a raw category description; every composite of a composable
/// pair, identities included, has to be listed.
pub fn validate_fincat(doc: &FinCatDoc) -> Result<FinCat> {
    let mut violations = Vec::new();
    let obj: HashMap<&str, usize> = doc
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| (o.as_str(), i))
        .collect();
    let mut morphisms = Vec::with_capacity(doc.morphisms.len());
    for m in &doc.morphisms {
        match (obj.get(m.dom.as_str()), obj.get(m.cod.as_str())) {
            (Some(&d), Some(&c)) => morphisms.push(MorphismRecord {
                name: m.name.clone(),
                dom: d,
                cod: c,
            }),
            _ => violations.push(Violation::new(
                "dangling dom/cod",
                format!("morphism `{}` refers to an unknown object", m.name),
            )),
        }
    }
    let mor: HashMap<&str, usize> = doc
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| (m.name.as_str(), i))
        .collect();
    let mut identity = vec![usize::MAX; doc.objects.len()];
    for (o, m) in &doc.identities {
        match (obj.get(o.as_str()), mor.get(m.as_str())) {
            (Some(&a), Some(&f)) => identity[a] = f,
            _ => violations.push(Violation::new(
                "identities",
                format!("identity entry `{o}: {m}` names unknown data"),
            )),
        }
    }
    for (a, &i) in identity.iter().enumerate() {
        if i == usize::MAX {
            violations.push(Violation::new(
                "identities",
                format!("object `{}` has no identity", doc.objects[a]),
            ));
        }
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for [g, f, gf] in &doc.composition {
        match (mor.get(g.as_str()), mor.get(f.as_str()), mor.get(gf.as_str())) {
            (Some(&g), Some(&f), Some(&h)) => {
                if table.insert((g, f), h).is_some() {
                    violations.push(Violation::new(
                        "composition",
                        format!("composite {} ∘ {} listed twice", doc.morphisms[g].name, doc.morphisms[f].name),
                    ));
                }
            }
            _ => violations.push(Violation::new(
                "composition",
                format!("composition entry [{g}, {f}, {gf}] names an unknown morphism"),
            )),
        }
    }
    if violations.is_empty() {
        for (&(g, f), _) in &table {
            if morphisms[f].cod != morphisms[g].dom {
                violations.push(Violation::new(
                    "composition",
                    format!(
                        "composite listed for non-composable pair {} ∘ {}",
                        morphisms[g].name, morphisms[f].name
                    ),
                ));
            }
        }
    }
    if !violations.is_empty() {
        violations.sort_by(|a, b| a.detail.cmp(&b.detail));
        return Err(Error::Invalid(violations));
    }
    FinCat::from_parts(
        doc.objects.clone(),
        morphisms,
        identity,
        |g, f| table.get(&(g, f)).copied(),
        Check::Full,
    )
}

/// Serialized form of a finite category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCatDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub identities: BTreeMap<String, String>,
    pub composition: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// Incremental construction of small hand-written categories. Identities
/// `id_<obj>` are added automatically, and composites with identities are
/// implied; every other composite must be given.
#[derive(Default)]
pub struct FinCatBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    composites: Vec<(String, String, String)>,
}

impl FinCatBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn objects<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.objects.extend(names.iter().map(|s| s.as_ref().to_string()));
        self
    }

    pub fn object(mut self, name: &str) -> Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn morphism(mut self, name: &str, dom: &str, cod: &str) -> Self {
        self.morphisms.push((name.into(), dom.into(), cod.into()));
        self
    }

    /// Records `g ∘ f = h`.
    pub fn compose(mut self, g: &str, f: &str, h: &str) -> Self {
        self.composites.push((g.into(), f.into(), h.into()));
        self
    }

    pub fn build(self) -> Result<FinCat> {
        let mut doc = FinCatDoc {
            objects: self.objects.clone(),
            morphisms: Vec::new(),
            identities: BTreeMap::new(),
            composition: Vec::new(),
        };
        for o in &self.objects {
            let id = format!("id_{o}");
            doc.morphisms.push(MorphismDoc {
                name: id.clone(),
                dom: o.clone(),
                cod: o.clone(),
            });
            doc.identities.insert(o.clone(), id);
        }
        for (n, d, c) in &self.morphisms {
            doc.morphisms.push(MorphismDoc {
                name: n.clone(),
                dom: d.clone(),
                cod: c.clone(),
            });
        }
        let cod_of: HashMap<&str, &str> = doc
            .morphisms
            .iter()
            .map(|m| (m.name.as_str(), m.cod.as_str()))
            .collect();
        let dom_of: HashMap<&str, &str> = doc
            .morphisms
            .iter()
            .map(|m| (m.name.as_str(), m.dom.as_str()))
            .collect();
        for m in &doc.morphisms {
            let idd = format!("id_{}", m.dom);
            let idc = format!("id_{}", m.cod);
            doc.composition.push([m.name.clone(), idd.clone(), m.name.clone()]);
            if idc != m.name || idd != m.name {
                doc.composition.push([idc, m.name.clone(), m.name.clone()]);
            }
        }
        for (g, f, h) in &self.composites {
            let implied = dom_of.get(g.as_str()).map(|d| format!("id_{d}")).as_deref() == Some(g.as_str())
                || cod_of.get(f.as_str()).map(|c| format!("id_{c}")).as_deref() == Some(f.as_str());
            if !implied {
                doc.composition.push([g.clone(), f.clone(), h.clone()]);
            }
        }
        validate_fincat(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_is_valid() {
        let t = FinCat::terminal();
        assert_eq!(t.n_objects(), 1);
        assert_eq!(t.n_morphisms(), 1);
        assert!(t.check_axioms().is_empty());
    }

    #[test]
    fn walking_iso_is_valid_and_invertible() {
        let c = FinCat::walking_iso();
        assert!(c.check_axioms().is_empty());
        let f = c.morphism_id("f").unwrap();
        let g = c.morphism_id("g").unwrap();
        assert_eq!(c.inverse(f), Some(g));
    }

    #[test]
    fn missing_composite_is_reported() {
        // g∘f is listed but h∘(g∘f) is not.
        let mut doc = FinCatBuilder::new()
            .objects(&["a", "b", "c", "d"])
            .morphism("f", "a", "b")
            .morphism("g", "b", "c")
            .morphism("h", "c", "d")
            .morphism("gf", "a", "c")
            .morphism("hg", "b", "d")
            .morphism("hgf", "a", "d")
            .compose("g", "f", "gf")
            .compose("h", "g", "hg")
            .compose("h", "gf", "hgf")
            .compose("hg", "f", "hgf")
            .build()
            .unwrap()
            .to_doc();
        doc.composition.retain(|[g, f, _]| !(g == "h" && f == "gf"));
        let err = validate_fincat(&doc).unwrap_err();
        assert!(err
            .violations()
            .iter()
            .any(|v| v.axiom == "composition not total"));
    }

    #[test]
    fn associativity_violation_is_reported() {
        // Two idempotent-looking endos with inconsistent products.
        let doc = FinCatBuilder::new()
            .object("x")
            .morphism("e", "x", "x")
            .morphism("k", "x", "x")
            .compose("e", "e", "k")
            .compose("e", "k", "e")
            .compose("k", "e", "k")
            .compose("k", "k", "k")
            .build();
        let err = doc.unwrap_err();
        assert!(err.violations().iter().any(|v| v.axiom == "associativity"));
    }

    #[test]
    fn dangling_object_is_reported() {
        let mut doc = FinCat::walking_arrow().to_doc();
        doc.morphisms[0].cod = "nowhere".into();
        let err = validate_fincat(&doc).unwrap_err();
        assert_eq!(err.violations()[0].axiom, "dangling dom/cod");
    }

    #[test]
    fn compose_path_cases() {
        let c = FinCat::walking_iso();
        let a = c.object_id("a").unwrap();
        let f = c.morphism_id("f").unwrap();
        let g = c.morphism_id("g").unwrap();
        assert_eq!(c.compose_path(a, &[]).unwrap(), c.id(a));
        assert_eq!(c.compose_path(a, &[f]).unwrap(), f);
        assert_eq!(c.compose_path(a, &[f, g]).unwrap(), c.id(a));
        assert!(c.compose_path(a, &[g]).is_err());
    }

    #[test]
    fn doc_round_trip_preserves_category() {
        let c = FinCat::walking_iso();
        let back = validate_fincat(&c.to_doc()).unwrap();
        assert_eq!(c, back);
    }
}
