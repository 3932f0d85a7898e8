//! Finite strict 2-categories, Σ-classes, strict 2-functors and Cat-valued
//! pseudofunctors.

mod builder;
mod pseudo;
mod sigma;
mod twofunctor;
mod verdict;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::fincat::{validate_fincat, Check, FinCat, FinCatDoc, MorphismRecord};

pub use pseudo::{validate_pseudofunctor, CatPseudoFunctor, CompIsoDoc, PseudoFunctorDoc, PseudoParts};
pub use builder::TwoCatBuilder;
pub use sigma::{internal_equivalences, sigma_closure, SigmaClass};
pub use twofunctor::{TwoFunctor, TwoFunctorDoc};
pub use verdict::{Counterexample, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCell {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCell {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite strict 2-category.
#[derive(Clone)]
pub struct TwoCat {
    zero: Vec<String>,
    one: Vec<OneCell>,
    two: Vec<TwoCell>,
    id1: Vec<usize>,
    id2: Vec<usize>,
    hom1: HashMap<(usize, usize), Vec<usize>>,
    out: Vec<Vec<usize>>,
    cells: HashMap<(usize, usize), Vec<usize>>,
    vcomp: HashMap<(usize, usize), usize>,
    hcomp1: HashMap<(usize, usize), usize>,
    hcomp2: HashMap<(usize, usize), usize>,
    inv2: Vec<Option<usize>>,
    zero_index: HashMap<String, usize>,
    one_index: HashMap<String, usize>,
    two_index: HashMap<String, usize>,
}

impl std::fmt::Debug for TwoCat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TwoCat")
            .field("zero_cells", &self.zero)
            .field("one_cells", &self.one.len())
            .field("two_cells", &self.two.len())
            .finish()
    }
}

/// Raw tables for [`TwoCat::from_parts`].
pub struct TwoCatParts {
    pub zero: Vec<String>,
    pub one: Vec<OneCell>,
    pub two: Vec<TwoCell>,
    pub id1: Vec<usize>,
    pub id2: Vec<usize>,
    pub vcomp: HashMap<(usize, usize), usize>,
    pub hcomp1: HashMap<(usize, usize), usize>,
    pub hcomp2: HashMap<(usize, usize), usize>,
}

impl TwoCat {
    pub fn from_parts(parts: TwoCatParts, check: Check) -> Result<TwoCat> {
        let TwoCatParts {
            zero,
            one,
            two,
            id1,
            id2,
            vcomp,
            hcomp1,
            hcomp2,
        } = parts;
        let mut v = Vec::new();
        let n0 = zero.len();
        let n1 = one.len();
        let n2 = two.len();
        let zero_index = index_names(zero.iter(), "0-cell", &mut v);
        let one_index = index_names(one.iter().map(|c| &c.name), "1-cell", &mut v);
        let two_index = index_names(two.iter().map(|c| &c.name), "2-cell", &mut v);
        if one.iter().any(|c| c.src >= n0 || c.tgt >= n0) {
            v.push(Violation::new("dangling", "1-cell endpoint out of range"));
        }
        if two.iter().any(|c| c.dom >= n1 || c.cod >= n1) {
            v.push(Violation::new("dangling", "2-cell endpoint out of range"));
        }
        if id1.len() != n0 || id2.len() != n1 {
            v.push(Violation::new("identities", "identity tables have wrong length"));
        }
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
        for (i, &u) in id1.iter().enumerate() {
            if u >= n1 || one[u].src != i || one[u].tgt != i {
                v.push(Violation::new("identities", format!("bad identity 1-cell at {}", zero[i])));
            }
        }
        for (s, &u) in id2.iter().enumerate() {
            if u >= n2 || two[u].dom != s || two[u].cod != s {
                v.push(Violation::new("identities", format!("bad identity 2-cell at {}", one[s].name)));
            }
        }
        for c in &two {
            let (d, e) = (&one[c.dom], &one[c.cod]);
            if d.src != e.src || d.tgt != e.tgt {
                v.push(Violation::new("2-cell typing", format!("{} joins non-parallel 1-cells", c.name)));
            }
        }
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }

        let mut hom1: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (k, c) in one.iter().enumerate() {
            hom1.entry((c.src, c.tgt)).or_default().push(k);
        }
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n0];
        for (k, c) in one.iter().enumerate() {
            out[c.src].push(k);
        }
        let mut cells: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (k, c) in two.iter().enumerate() {
            cells.entry((c.dom, c.cod)).or_default().push(k);
        }

        let mut cat = TwoCat {
            zero,
            one,
            two,
            id1,
            id2,
            hom1,
            out,
            cells,
            vcomp,
            hcomp1,
            hcomp2,
            inv2: Vec::new(),
            zero_index,
            one_index,
            two_index,
        };

        // hom-categories under vertical composition
        for i in 0..n0 {
            for j in 0..n0 {
                if let Err(e) = cat.hom_cat_checked(i, j, check) {
                    v.extend(e.violations().iter().map(|x| {
                        Violation::new(
                            format!("hom({},{}) {}", cat.zero[i], cat.zero[j], x.axiom),
                            x.detail.clone(),
                        )
                    }));
                }
            }
        }
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
        v.extend(cat.horizontal_violations(check));
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
        cat.inv2 = (0..n2).map(|a| cat.find_inverse2(a)).collect();
        Ok(cat)
    }

    fn horizontal_violations(&self, check: Check) -> Vec<Violation> {
        let mut v = Vec::new();
        // 1-cells
        for s in 0..self.one.len() {
            for &t in self.out1(self.one[s].tgt) {
                match self.hcomp1.get(&(t, s)) {
                    None => v.push(Violation::new(
                        "hcomp not total",
                        format!("{} ∘ {} missing", self.one[t].name, self.one[s].name),
                    )),
                    Some(&u) => {
                        if u >= self.one.len() || self.one[u].src != self.one[s].src || self.one[u].tgt != self.one[t].tgt {
                            v.push(Violation::new(
                                "hcomp typing",
                                format!("{} ∘ {}", self.one[t].name, self.one[s].name),
                            ));
                        }
                    }
                }
            }
        }
        if !v.is_empty() {
            return v;
        }
        for s in 0..self.one.len() {
            let (i, j) = (self.one[s].src, self.one[s].tgt);
            if self.h1(s, self.id1[i]) != s || self.h1(self.id1[j], s) != s {
                v.push(Violation::new("hcomp unit", format!("identity law fails at {}", self.one[s].name)));
            }
        }
        for s in 0..self.one.len() {
            for &t in self.out1(self.one[s].tgt) {
                let ts = self.h1(t, s);
                for &u in self.out1(self.one[t].tgt) {
                    if self.h1(u, ts) != self.h1(self.h1(u, t), s) {
                        v.push(Violation::new(
                            "hcomp associativity",
                            format!("{}, {}, {}", self.one[s].name, self.one[t].name, self.one[u].name),
                        ));
                    }
                }
            }
        }
        if !v.is_empty() {
            return v;
        }
        // 2-cells
        let n2 = self.two.len();
        for a in 0..n2 {
            let j = self.one[self.two[a].dom].tgt;
            for b in self.two_cells_from(j) {
                match self.hcomp2.get(&(b, a)) {
                    None => v.push(Violation::new(
                        "hcomp not total",
                        format!("{} * {} missing", self.two[b].name, self.two[a].name),
                    )),
                    Some(&c) => {
                        let dom = self.h1(self.two[b].dom, self.two[a].dom);
                        let cod = self.h1(self.two[b].cod, self.two[a].cod);
                        if c >= n2 || self.two[c].dom != dom || self.two[c].cod != cod {
                            v.push(Violation::new(
                                "hcomp typing",
                                format!("{} * {}", self.two[b].name, self.two[a].name),
                            ));
                        }
                    }
                }
            }
        }
        if !v.is_empty() {
            return v;
        }
        // functoriality on identities and unit laws
        for s in 0..self.one.len() {
            for &t in self.out1(self.one[s].tgt) {
                if self.h2(self.id2[t], self.id2[s]) != self.id2[self.h1(t, s)] {
                    v.push(Violation::new(
                        "hcomp preserves identities",
                        format!("1_{} * 1_{}", self.one[t].name, self.one[s].name),
                    ));
                }
            }
        }
        for a in 0..n2 {
            let s = self.two[a].dom;
            let (i, j) = (self.one[s].src, self.one[s].tgt);
            let l = self.id2[self.id1[j]];
            let r = self.id2[self.id1[i]];
            if self.h2(l, a) != a || self.h2(a, r) != a {
                v.push(Violation::new("hcomp unit", format!("unit law fails at {}", self.two[a].name)));
            }
        }
        if check == Check::Structural || !v.is_empty() {
            return v;
        }
        // associativity of 2-cell composition and interchange
        for a in 0..n2 {
            let j = self.one[self.two[a].dom].tgt;
            for b in self.two_cells_from(j) {
                let ba = self.h2(b, a);
                let k = self.one[self.two[b].dom].tgt;
                for c in self.two_cells_from(k) {
                    if self.h2(c, ba) != self.h2(self.h2(c, b), a) {
                        v.push(Violation::new(
                            "hcomp associativity",
                            format!("{}, {}, {}", self.two[a].name, self.two[b].name, self.two[c].name),
                        ));
                    }
                }
            }
        }
        for a in 0..n2 {
            for a2 in self.cells_from(self.two[a].cod) {
                let va = self.v(a2, a);
                let j = self.one[self.two[a].dom].tgt;
                for b in self.two_cells_from(j) {
                    for b2 in self.cells_from(self.two[b].cod) {
                        let lhs = self.h2(self.v(b2, b), va);
                        let rhs = self.v(self.h2(b2, a2), self.h2(b, a));
                        if lhs != rhs {
                            v.push(Violation::new(
                                "interchange",
                                format!(
                                    "({}·{}) * ({}·{})",
                                    self.two[b2].name, self.two[b].name, self.two[a2].name, self.two[a].name
                                ),
                            ));
                            if v.len() > 16 {
                                return v;
                            }
                        }
                    }
                }
            }
        }
        v
    }

    fn hom_cat_checked(&self, i: usize, j: usize, check: Check) -> Result<FinCat> {
        let objs = self.hom(i, j).to_vec();
        let mut local = HashMap::new();
        for (k, &s) in objs.iter().enumerate() {
            local.insert(s, k);
        }
        let mut mors = Vec::new();
        let mut mor_local = HashMap::new();
        for &s in &objs {
            for &t in &objs {
                for &a in self.cells_between(s, t) {
                    mor_local.insert(a, mors.len());
                    mors.push((a, local[&s], local[&t]));
                }
            }
        }
        let records = mors
            .iter()
            .map(|&(a, d, c)| MorphismRecord {
                name: self.two[a].name.clone(),
                dom: d,
                cod: c,
            })
            .collect();
        let identity = objs.iter().map(|&s| mor_local[&self.id2[s]]).collect();
        FinCat::from_parts(
            objs.iter().map(|&s| self.one[s].name.clone()).collect(),
            records,
            identity,
            |g, f| {
                self.vcomp
                    .get(&(mors[g].0, mors[f].0))
                    .and_then(|c| mor_local.get(c).copied())
            },
            check,
        )
    }

    /// The hom-category `hom(i, j)`: objects are 1-cells, morphisms 2-cells,
    /// in the 2-category's own identifier order.
    pub fn hom_cat(&self, i: usize, j: usize) -> FinCat {
        self.hom_cat_checked(i, j, Check::Structural)
            .expect("hom-category of a valid 2-category")
    }

    fn find_inverse2(&self, a: usize) -> Option<usize> {
        let (s, t) = (self.two[a].dom, self.two[a].cod);
        self.cells_between(t, s)
            .iter()
            .copied()
            .find(|&b| self.v(b, a) == self.id2[s] && self.v(a, b) == self.id2[t])
    }

    pub fn terminal() -> TwoCat {
        locally_discrete(&FinCat::terminal())
    }

    pub fn n0(&self) -> usize {
        self.zero.len()
    }

    pub fn n1(&self) -> usize {
        self.one.len()
    }

    pub fn n2(&self) -> usize {
        self.two.len()
    }

    pub fn zero_cells(&self) -> std::ops::Range<usize> {
        0..self.zero.len()
    }

    pub fn one_cells(&self) -> std::ops::Range<usize> {
        0..self.one.len()
    }

    pub fn two_cells(&self) -> std::ops::Range<usize> {
        0..self.two.len()
    }

    pub fn zero_name(&self, i: usize) -> &str {
        &self.zero[i]
    }

    pub fn one_name(&self, s: usize) -> &str {
        &self.one[s].name
    }

    pub fn two_name(&self, a: usize) -> &str {
        &self.two[a].name
    }

    pub fn zero_id(&self, name: &str) -> Option<usize> {
        self.zero_index.get(name).copied()
    }

    pub fn one_id(&self, name: &str) -> Option<usize> {
        self.one_index.get(name).copied()
    }

    pub fn two_id(&self, name: &str) -> Option<usize> {
        self.two_index.get(name).copied()
    }

    pub fn src(&self, s: usize) -> usize {
        self.one[s].src
    }

    pub fn tgt(&self, s: usize) -> usize {
        self.one[s].tgt
    }

    pub fn dom2(&self, a: usize) -> usize {
        self.two[a].dom
    }

    pub fn cod2(&self, a: usize) -> usize {
        self.two[a].cod
    }

    pub fn id1(&self, i: usize) -> usize {
        self.id1[i]
    }

    pub fn id2(&self, s: usize) -> usize {
        self.id2[s]
    }

    pub fn is_identity1(&self, s: usize) -> bool {
        self.id1[self.one[s].src] == s
    }

    pub fn is_identity2(&self, a: usize) -> bool {
        self.id2[self.two[a].dom] == a
    }

    /// 1-cells `i → j`.
    pub fn hom(&self, i: usize, j: usize) -> &[usize] {
        self.hom1.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// 1-cells out of `i`, in identifier order.
    pub fn out1(&self, i: usize) -> &[usize] {
        &self.out[i]
    }

    /// 2-cells `s ⇒ t`.
    pub fn cells_between(&self, s: usize, t: usize) -> &[usize] {
        self.cells.get(&(s, t)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// 2-cells with domain `s`.
    pub fn cells_from(&self, s: usize) -> Vec<usize> {
        let (i, j) = (self.one[s].src, self.one[s].tgt);
        self.hom(i, j)
            .iter()
            .flat_map(|&t| self.cells_between(s, t).iter().copied())
            .collect()
    }

    /// 2-cells between 1-cells out of `i`.
    pub fn two_cells_from(&self, i: usize) -> Vec<usize> {
        self.out1(i)
            .iter()
            .flat_map(|&s| self.cells_from(s))
            .collect()
    }

    /// Horizontal composite `t ∘ s` of 1-cells.
    pub fn h1(&self, t: usize, s: usize) -> usize {
        *self.hcomp1.get(&(t, s)).unwrap_or_else(|| {
            panic!("1-cells {} ∘ {} are not composable", self.one[t].name, self.one[s].name)
        })
    }

    pub fn try_h1(&self, t: usize, s: usize) -> Option<usize> {
        self.hcomp1.get(&(t, s)).copied()
    }

    /// Horizontal composite `b * a` of 2-cells.
    pub fn h2(&self, b: usize, a: usize) -> usize {
        *self.hcomp2.get(&(b, a)).unwrap_or_else(|| {
            panic!("2-cells {} * {} are not composable", self.two[b].name, self.two[a].name)
        })
    }

    /// Vertical composite `b · a` (first `a`, then `b`).
    pub fn v(&self, b: usize, a: usize) -> usize {
        *self.vcomp.get(&(b, a)).unwrap_or_else(|| {
            panic!("2-cells {} · {} are not composable", self.two[b].name, self.two[a].name)
        })
    }

    /// Whiskering `t * a` of a 2-cell by a 1-cell on the left.
    pub fn whisker_l(&self, t: usize, a: usize) -> usize {
        self.h2(self.id2[t], a)
    }

    /// Whiskering `a * s` of a 2-cell by a 1-cell on the right.
    pub fn whisker_r(&self, a: usize, s: usize) -> usize {
        self.h2(a, self.id2[s])
    }

    pub fn inverse2(&self, a: usize) -> Option<usize> {
        self.inv2[a]
    }

    pub fn is_invertible2(&self, a: usize) -> bool {
        self.inv2[a].is_some()
    }

    /// The dual on 1-cells: every 1-cell reversed, 2-cells kept in their
    /// original direction. Names are preserved.
    pub fn op1(&self) -> TwoCat {
        let one = self
            .one
            .iter()
            .map(|c| OneCell {
                name: c.name.clone(),
                src: c.tgt,
                tgt: c.src,
            })
            .collect();
        let hcomp1 = self.hcomp1.iter().map(|(&(t, s), &u)| ((s, t), u)).collect();
        let hcomp2 = self.hcomp2.iter().map(|(&(b, a), &c)| ((a, b), c)).collect();
        TwoCat::from_parts(
            TwoCatParts {
                zero: self.zero.clone(),
                one,
                two: self.two.clone(),
                id1: self.id1.clone(),
                id2: self.id2.clone(),
                vcomp: self.vcomp.clone(),
                hcomp1,
                hcomp2,
            },
            Check::Structural,
        )
        .expect("1-cell dual of a valid 2-category")
    }

    /// The sub-2-category full on 0-cells and 2-cells whose 1-cells are
    /// `members`, which must contain identities and be closed under
    /// composition. Returns it with the inclusion.
    pub fn restrict_one_cells(self: &Arc<Self>, members: &SigmaClass) -> Result<(Arc<TwoCat>, TwoFunctor)> {
        let keep: Vec<usize> = self.one_cells().filter(|s| members.contains(*s)).collect();
        let mut local1 = vec![usize::MAX; self.n1()];
        for (k, &s) in keep.iter().enumerate() {
            local1[s] = k;
        }
        for i in self.zero_cells() {
            if local1[self.id1[i]] == usize::MAX {
                return Err(Error::Precondition(format!(
                    "class omits the identity of {}",
                    self.zero[i]
                )));
            }
        }
        let keep2: Vec<usize> = self
            .two_cells()
            .filter(|&a| local1[self.two[a].dom] != usize::MAX && local1[self.two[a].cod] != usize::MAX)
            .collect();
        let mut local2 = vec![usize::MAX; self.n2()];
        for (k, &a) in keep2.iter().enumerate() {
            local2[a] = k;
        }
        let mut hcomp1 = HashMap::new();
        for &s in &keep {
            for &t in self.out1(self.one[s].tgt) {
                if local1[t] == usize::MAX {
                    continue;
                }
                let u = self.h1(t, s);
                if local1[u] == usize::MAX {
                    return Err(Error::Precondition(format!(
                        "class not closed under composition: {} ∘ {}",
                        self.one[t].name, self.one[s].name
                    )));
                }
                hcomp1.insert((local1[t], local1[s]), local1[u]);
            }
        }
        let mut hcomp2 = HashMap::new();
        let mut vcomp = HashMap::new();
        for &a in &keep2 {
            for &b in &keep2 {
                if let Some(&c) = self.hcomp2.get(&(b, a)) {
                    hcomp2.insert((local2[b], local2[a]), local2[c]);
                }
                if let Some(&c) = self.vcomp.get(&(b, a)) {
                    vcomp.insert((local2[b], local2[a]), local2[c]);
                }
            }
        }
        let sub = TwoCat::from_parts(
            TwoCatParts {
                zero: self.zero.clone(),
                one: keep.iter().map(|&s| self.one[s].clone()).collect(),
                two: keep2
                    .iter()
                    .map(|&a| TwoCell {
                        name: self.two[a].name.clone(),
                        dom: local1[self.two[a].dom],
                        cod: local1[self.two[a].cod],
                    })
                    .collect(),
                id1: self.id1.iter().map(|&s| local1[s]).collect(),
                id2: keep.iter().map(|&s| local2[self.id2[s]]).collect(),
                vcomp,
                hcomp1,
                hcomp2,
            },
            Check::Structural,
        )?;
        let sub = Arc::new(sub);
        let inclusion = TwoFunctor::new(
            sub.clone(),
            self.clone(),
            self.zero_cells().collect(),
            keep,
            keep2,
        )?;
        Ok((sub, inclusion))
    }

    pub fn to_doc(&self) -> TwoCatDoc {
        let mut homs = Vec::new();
        for i in self.zero_cells() {
            for j in self.zero_cells() {
                if !self.hom(i, j).is_empty() {
                    homs.push(HomDoc {
                        src: self.zero[i].clone(),
                        tgt: self.zero[j].clone(),
                        category: self.hom_cat(i, j).to_doc(),
                    });
                }
            }
        }
        let mut hcomp = Vec::new();
        for s in self.one_cells() {
            for &t in self.out1(self.one[s].tgt) {
                hcomp.push([
                    self.one[t].name.clone(),
                    self.one[s].name.clone(),
                    self.one[self.h1(t, s)].name.clone(),
                ]);
            }
        }
        let mut hcomp2 = Vec::new();
        for a in self.two_cells() {
            for b in self.two_cells_from(self.one[self.two[a].dom].tgt) {
                hcomp2.push([
                    self.two[b].name.clone(),
                    self.two[a].name.clone(),
                    self.two[self.h2(b, a)].name.clone(),
                ]);
            }
        }
        TwoCatDoc {
            zero_cells: self.zero.clone(),
            homs,
            identities: self
                .zero_cells()
                .map(|i| (self.zero[i].clone(), self.one[self.id1[i]].name.clone()))
                .collect(),
            hcomp,
            hcomp2,
            sigma: BTreeMap::new(),
        }
    }
}

fn index_names<'a>(names: impl Iterator<Item = &'a String>, kind: &str, v: &mut Vec<Violation>) -> HashMap<String, usize> {
    let mut m = HashMap::new();
    for (k, n) in names.enumerate() {
        if m.insert(n.clone(), k).is_some() {
            v.push(Violation::new("distinct names", format!("duplicate {kind} `{n}`")));
        }
    }
    m
}

/// The locally discrete 2-category on a category: 1-cells are its
/// morphisms, 2-cells identities only.
pub fn locally_discrete(c: &FinCat) -> TwoCat {
    let one: Vec<OneCell> = c
        .morphism_records()
        .iter()
        .map(|r| OneCell {
            name: r.name.clone(),
            src: r.dom,
            tgt: r.cod,
        })
        .collect();
    let two = one
        .iter()
        .enumerate()
        .map(|(k, s)| TwoCell {
            name: format!("1_{}", s.name),
            dom: k,
            cod: k,
        })
        .collect();
    let mut vcomp = HashMap::new();
    let mut hcomp1 = HashMap::new();
    let mut hcomp2 = HashMap::new();
    for f in c.morphisms() {
        vcomp.insert((f, f), f);
        for &g in c.outgoing(c.cod(f)) {
            let h = c.comp(g, f);
            hcomp1.insert((g, f), h);
            hcomp2.insert((g, f), h);
        }
    }
    TwoCat::from_parts(
        TwoCatParts {
            zero: c.object_names().to_vec(),
            one,
            two,
            id1: c.objects().map(|a| c.id(a)).collect(),
            id2: c.morphisms().collect(),
            vcomp,
            hcomp1,
            hcomp2,
        },
        Check::Structural,
    )
    .expect("locally discrete 2-category of a valid category")
}

/// Serialized form: one FinCat document per nonempty hom pair plus the
/// horizontal composition tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCatDoc {
    pub zero_cells: Vec<String>,
    pub homs: Vec<HomDoc>,
    pub identities: BTreeMap<String, String>,
    pub hcomp: Vec<[String; 3]>,
    pub hcomp2: Vec<[String; 3]>,
    #[serde(default)]
    pub sigma: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDoc {
    pub src: String,
    pub tgt: String,
    pub category: FinCatDoc,
}

/// Validates a 2-category document; returns it with its named Σ-classes.
pub fn validate_twocat(doc: &TwoCatDoc) -> Result<(TwoCat, BTreeMap<String, SigmaClass>)> {
    let mut v = Vec::new();
    let zero_index: HashMap<&str, usize> = doc
        .zero_cells
        .iter()
        .enumerate()
        .map(|(k, z)| (z.as_str(), k))
        .collect();
    let mut one = Vec::new();
    let mut two = Vec::new();
    let mut vcomp = HashMap::new();
    let mut id2_by_name: HashMap<String, String> = HashMap::new();
    let mut one_index: HashMap<String, usize> = HashMap::new();
    let mut two_index: HashMap<String, usize> = HashMap::new();
    for h in &doc.homs {
        let (Some(&i), Some(&j)) = (zero_index.get(h.src.as_str()), zero_index.get(h.tgt.as_str())) else {
            v.push(Violation::new("dangling", format!("hom({}, {}) names unknown 0-cells", h.src, h.tgt)));
            continue;
        };
        let cat = match validate_fincat(&h.category) {
            Ok(c) => c,
            Err(e) => {
                v.extend(e.violations().iter().map(|x| {
                    Violation::new(format!("hom({}, {}) {}", h.src, h.tgt, x.axiom), x.detail.clone())
                }));
                continue;
            }
        };
        let base1 = one.len();
        for a in cat.objects() {
            one_index.insert(cat.object_name(a).to_string(), one.len());
            one.push(OneCell {
                name: cat.object_name(a).to_string(),
                src: i,
                tgt: j,
            });
            id2_by_name.insert(
                cat.object_name(a).to_string(),
                cat.morphism_name(cat.id(a)).to_string(),
            );
        }
        let base2 = two.len();
        for f in cat.morphisms() {
            two_index.insert(cat.morphism_name(f).to_string(), two.len());
            two.push(TwoCell {
                name: cat.morphism_name(f).to_string(),
                dom: base1 + cat.dom(f),
                cod: base1 + cat.cod(f),
            });
        }
        for g in cat.morphisms() {
            for &f in cat.incoming(cat.dom(g)) {
                vcomp.insert((base2 + g, base2 + f), base2 + cat.comp(g, f));
            }
        }
    }
    if !v.is_empty() {
        return Err(Error::Invalid(v));
    }
    let mut id1 = vec![usize::MAX; doc.zero_cells.len()];
    for (z, s) in &doc.identities {
        match (zero_index.get(z.as_str()), one_index.get(s)) {
            (Some(&i), Some(&k)) => id1[i] = k,
            _ => v.push(Violation::new("identities", format!("`{z}: {s}` names unknown cells"))),
        }
    }
    if let Some(i) = id1.iter().position(|&x| x == usize::MAX) {
        v.push(Violation::new("identities", format!("0-cell {} has no identity", doc.zero_cells[i])));
    }
    let id2: Vec<usize> = one
        .iter()
        .map(|c| two_index[&id2_by_name[&c.name]])
        .collect();
    let mut hcomp1 = HashMap::new();
    for [t, s, u] in &doc.hcomp {
        match (one_index.get(t), one_index.get(s), one_index.get(u)) {
            (Some(&t), Some(&s), Some(&u)) => {
                if one[s].tgt != one[t].src {
                    v.push(Violation::new("hcomp", format!("{} ∘ {} listed but not composable", one[t].name, one[s].name)));
                }
                hcomp1.insert((t, s), u);
            }
            _ => v.push(Violation::new("hcomp", format!("[{t}, {s}, {u}] names unknown 1-cells"))),
        }
    }
    let mut hcomp2 = HashMap::new();
    for [b, a, c] in &doc.hcomp2 {
        match (two_index.get(b), two_index.get(a), two_index.get(c)) {
            (Some(&b), Some(&a), Some(&c)) => {
                hcomp2.insert((b, a), c);
            }
            _ => v.push(Violation::new("hcomp2", format!("[{b}, {a}, {c}] names unknown 2-cells"))),
        }
    }
    if !v.is_empty() {
        return Err(Error::Invalid(v));
    }
    let cat = TwoCat::from_parts(
        TwoCatParts {
            zero: doc.zero_cells.clone(),
            one,
            two,
            id1,
            id2,
            vcomp,
            hcomp1,
            hcomp2,
        },
        Check::Full,
    )?;
    let mut sigmas = BTreeMap::new();
    for (name, members) in &doc.sigma {
        let ids = members
            .iter()
            .map(|m| cat.one_id(m).ok_or_else(|| Error::unknown("1-cell", m.clone())))
            .collect::<Result<Vec<_>>>()?;
        sigmas.insert(name.clone(), SigmaClass::new(&cat, ids)?);
    }
    Ok((cat, sigmas))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn poset_top() -> TwoCat {
        // a ≤ ⊤, b ≤ ⊤
        let c = FinCat::poset(&["a", "b", "top"], |i, j| i == j || j == 2).unwrap();
        locally_discrete(&c)
    }

    #[test]
    fn terminal_two_category_is_valid() {
        let t = TwoCat::terminal();
        assert_eq!((t.n0(), t.n1(), t.n2()), (1, 1, 1));
    }

    #[test]
    fn locally_discrete_poset_is_valid_and_round_trips() {
        let p = poset_top();
        let (back, _) = validate_twocat(&p.to_doc()).unwrap();
        assert_eq!(back.n1(), p.n1());
        assert_eq!(back.n2(), p.n2());
    }

    #[test]
    fn missing_two_cell_composite_is_an_error() {
        let mut doc = poset_top().to_doc();
        doc.hcomp2.pop();
        let err = validate_twocat(&doc).unwrap_err();
        assert!(err.violations().iter().any(|v| v.axiom == "hcomp not total"));
    }

    #[test]
    fn op1_reverses_one_cells() {
        let p = poset_top();
        let o = p.op1();
        let s = p.one_id("a<top").unwrap();
        assert_eq!((o.src(s), o.tgt(s)), (p.tgt(s), p.src(s)));
    }
}
