use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtered::{check_bifiltered, check_sigma_filtered, triangle_completion};
use crate::fincat::{Check, FinCat, Functor, MorphismRecord, NatTrans};
use crate::twocat::{sigma_closure, CatPseudoFunctor, SigmaClass, TwoCat};

const PREMORPHISM_LIMIT: usize = 2_000_000;

/// `(apex, left, right, cell)` from `src = (i1, a1)` to `tgt = (i2, a2)`:
/// `left: i1 → apex`, `right: i2 → apex`, `cell: F(left)a1 → F(right)a2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Premorphism {
    pub src: (usize, usize),
    pub tgt: (usize, usize),
    pub apex: usize,
    pub left: usize,
    pub right: usize,
    pub cell: usize,
}

/// How a colimit was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Premorphisms over the whole index.
    Bifiltered,
    /// Bifiltered colimit of the restriction to the Σ-subcategory.
    Trivialized,
    /// Σ-legs on the left, arbitrary right legs, Σ-transport only.
    SigmaDirect,
}

/// A colimit of a Cat-valued pseudofunctor presented by premorphisms,
/// with its cocone `q_i` and transition cells `θ_d: q_j∘F(d) ⇒ q_i`.
#[derive(Clone, Debug)]
pub struct ColimitCat {
    route: Route,
    index: Arc<TwoCat>,
    sigma: SigmaClass,
    diagram: CatPseudoFunctor,
    engine: Engine,
    /// Index 1-cell → 1-cell of the index the quotient was taken over.
    local1: Vec<Option<usize>>,
    result: Arc<FinCat>,
    cocone: Vec<Functor>,
    transitions: Vec<NatTrans>,
}

#[derive(Clone, Debug)]
struct Engine {
    diagram: CatPseudoFunctor,
    legs: Option<SigmaClass>,
    objects: Vec<(usize, usize)>,
    object_index: HashMap<(usize, usize), usize>,
    premorphisms: Vec<Premorphism>,
    pre_index: HashMap<Premorphism, usize>,
    class_of: Vec<usize>,
    representative: Vec<usize>,
    spans: HashMap<(usize, usize), (usize, usize)>,
    insertions: HashMap<(usize, usize), (usize, usize)>,
}

impl Engine {
    fn c(&self) -> &TwoCat {
        self.diagram.source()
    }

    fn leg_ok(&self, s: usize) -> bool {
        self.legs.as_ref().map_or(true, |l| l.contains(s))
    }

    fn build(diagram: CatPseudoFunctor, legs: Option<SigmaClass>) -> Result<Engine> {
        let mut e = Engine {
            diagram,
            legs,
            objects: Vec::new(),
            object_index: HashMap::new(),
            premorphisms: Vec::new(),
            pre_index: HashMap::new(),
            class_of: Vec::new(),
            representative: Vec::new(),
            spans: HashMap::new(),
            insertions: HashMap::new(),
        };
        e.enumerate()?;
        e.quotient();
        e.witnesses()?;
        Ok(e)
    }

    fn enumerate(&mut self) -> Result<()> {
        let f = self.diagram.clone();
        let c = f.source().clone();
        let ok: Vec<bool> = c.one_cells().map(|s| self.leg_ok(s)).collect();
        for i in c.zero_cells() {
            for a in f.fiber(i).objects() {
                self.object_index.insert((i, a), self.objects.len());
                self.objects.push((i, a));
            }
        }
        for j in c.zero_cells() {
            let fj = f.fiber(j);
            for i1 in c.zero_cells() {
                for &s in c.hom(i1, j).iter().filter(|&&s| ok[s]) {
                    for i2 in c.zero_cells() {
                        for &d in c.hom(i2, j) {
                            for a1 in f.fiber(i1).objects() {
                                for a2 in f.fiber(i2).objects() {
                                    for &cell in fj.hom(f.on1(s).obj(a1), f.on1(d).obj(a2)) {
                                        let p = Premorphism {
                                            src: (i1, a1),
                                            tgt: (i2, a2),
                                            apex: j,
                                            left: s,
                                            right: d,
                                            cell,
                                        };
                                        self.pre_index.insert(p, self.premorphisms.len());
                                        self.premorphisms.push(p);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            if self.premorphisms.len() > PREMORPHISM_LIMIT {
                return Err(Error::SizeGuard {
                    what: "premorphisms".into(),
                    limit: PREMORPHISM_LIMIT,
                });
            }
        }
        Ok(())
    }

    /// Transport along `t` out of the apex.
    fn transport(&self, p: &Premorphism, t: usize) -> Premorphism {
        let (f, c) = (&self.diagram, self.c());
        let fk = f.fiber(c.tgt(t));
        let cell = fk.comp(
            f.mu_at(p.right, t, p.tgt.1),
            fk.comp(f.on1(t).mor(p.cell), f.mu_inv_at(p.left, t, p.src.1)),
        );
        Premorphism {
            apex: c.tgt(t),
            left: c.h1(t, p.left),
            right: c.h1(t, p.right),
            cell,
            ..*p
        }
    }

    fn quotient(&mut self) {
        let n = self.premorphisms.len();
        let mut uf = UnionFind::<usize>::new(n);
        {
            let (f, c) = (&self.diagram, self.c());
            for (k, p) in self.premorphisms.iter().enumerate() {
                let fj = f.fiber(p.apex);
                for &t in c.out1(p.apex).iter().filter(|&&t| self.leg_ok(t)) {
                    if let Some(&m) = self.pre_index.get(&self.transport(p, t)) {
                        uf.union(k, m);
                    }
                }
                for &s0 in c.hom(p.src.0, p.apex).iter().filter(|&&s| self.leg_ok(s)) {
                    for &beta in c.cells_between(s0, p.left) {
                        let q = Premorphism {
                            left: s0,
                            cell: fj.comp(p.cell, f.on2(beta).component(p.src.1)),
                            ..*p
                        };
                        uf.union(k, self.pre_index[&q]);
                    }
                }
                for beta in c.cells_from(p.right) {
                    let q = Premorphism {
                        right: c.cod2(beta),
                        cell: fj.comp(f.on2(beta).component(p.tgt.1), p.cell),
                        ..*p
                    };
                    uf.union(k, self.pre_index[&q]);
                }
            }
        }
        // classes ordered by (source, target, first member)
        let mut first: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for (k, p) in self.premorphisms.iter().enumerate() {
            let r = uf.find(k);
            if !seen.contains_key(&r) {
                seen.insert(r, k);
                first.insert((self.object_index[&p.src], self.object_index[&p.tgt], k), r);
            }
        }
        let mut class_of_root = HashMap::new();
        self.representative = Vec::with_capacity(first.len());
        for (&(_, _, k), &r) in &first {
            class_of_root.insert(r, self.representative.len());
            self.representative.push(k);
        }
        self.class_of = (0..n).map(|k| class_of_root[&uf.find(k)]).collect();
    }

    /// Spans and insertions used by composition, fixed once.
    fn witnesses(&mut self) -> Result<()> {
        let c = self.diagram.source().clone();
        let invertible = self.legs.is_none();
        for j in c.zero_cells() {
            for j2 in c.zero_cells() {
                let span = if j == j2 {
                    Some((c.id1(j), c.id1(j)))
                } else {
                    c.zero_cells().find_map(|k| {
                        let u = c.hom(j, k).iter().copied().find(|&u| self.leg_ok(u))?;
                        let u2 = c.hom(j2, k).iter().copied().find(|&u| self.leg_ok(u))?;
                        Some((u, u2))
                    })
                };
                let span = span.ok_or_else(|| {
                    Error::Precondition(format!("no span from {} and {}", c.zero_name(j), c.zero_name(j2)))
                })?;
                self.spans.insert((j, j2), span);
            }
        }
        for d in c.one_cells() {
            for &e in c.hom(c.src(d), c.tgt(d)) {
                if d == e {
                    self.insertions.insert((d, e), (c.id1(c.tgt(d)), c.id2(d)));
                    continue;
                }
                let found = crate::filtered::extensions(&c, c.tgt(d))
                    .filter(|&w| self.leg_ok(w))
                    .find_map(|w| {
                        c.cells_between(c.h1(w, d), c.h1(w, e))
                            .iter()
                            .copied()
                            .find(|&g| !invertible || c.is_invertible2(g))
                            .map(|g| (w, g))
                    });
                if let Some(x) = found {
                    self.insertions.insert((d, e), x);
                }
            }
        }
        Ok(())
    }

    fn identity(&self, i: usize, a: usize) -> Premorphism {
        let (f, c) = (&self.diagram, self.c());
        let one = c.id1(i);
        let x = f.on1(one).obj(a);
        Premorphism {
            src: (i, a),
            tgt: (i, a),
            apex: i,
            left: one,
            right: one,
            cell: f.fiber(i).id(x),
        }
    }

    fn compose(&self, p2: &Premorphism, p1: &Premorphism) -> Result<Premorphism> {
        if p1.tgt != p2.src {
            return Err(Error::Precondition("premorphisms are not composable".into()));
        }
        let (f, c) = (&self.diagram, self.c());
        let (u, u2) = self.spans[&(p1.apex, p2.apex)];
        let (ud, u2s) = (c.h1(u, p1.right), c.h1(u2, p2.left));
        let &(w, gamma) = self.insertions.get(&(ud, u2s)).ok_or_else(|| {
            Error::Precondition(format!(
                "no insertion for {} and {}",
                c.one_name(ud),
                c.one_name(u2s)
            ))
        })?;
        let q1 = self.transport(p1, c.h1(w, u));
        let q2 = self.transport(p2, c.h1(w, u2));
        let fl = f.fiber(q1.apex);
        let cell = fl.comp(q2.cell, fl.comp(f.on2(gamma).component(p1.tgt.1), q1.cell));
        Ok(Premorphism {
            src: p1.src,
            tgt: p2.tgt,
            apex: q1.apex,
            left: q1.left,
            right: q2.right,
            cell,
        })
    }

    fn class(&self, p: &Premorphism) -> Option<usize> {
        self.pre_index.get(p).map(|&k| self.class_of[k])
    }

    fn result(&self) -> Result<FinCat> {
        let (f, c) = (&self.diagram, self.c());
        let names: Vec<String> = self
            .objects
            .iter()
            .map(|&(i, a)| format!("{}:{}", c.zero_name(i), f.fiber(i).object_name(a)))
            .collect();
        let identity: Vec<usize> = self
            .objects
            .iter()
            .map(|&(i, a)| self.class(&self.identity(i, a)).expect("identity premorphism"))
            .collect();
        let records: Vec<MorphismRecord> = self
            .representative
            .iter()
            .enumerate()
            .map(|(m, &k)| {
                let p = &self.premorphisms[k];
                let (x, y) = (self.object_index[&p.src], self.object_index[&p.tgt]);
                let name = if identity[x] == m {
                    format!("id_{}", names[x])
                } else {
                    format!(
                        "[{}|{}|{}|{}]:{}→{}",
                        c.zero_name(p.apex),
                        c.one_name(p.left),
                        c.one_name(p.right),
                        f.fiber(p.apex).morphism_name(p.cell),
                        names[x],
                        names[y]
                    )
                };
                MorphismRecord { name, dom: x, cod: y }
            })
            .collect();
        let mut table = HashMap::new();
        for (m1, r1) in records.iter().enumerate() {
            for (m2, r2) in records.iter().enumerate() {
                if r1.cod == r2.dom {
                    let p = self.compose(
                        &self.premorphisms[self.representative[m2]],
                        &self.premorphisms[self.representative[m1]],
                    )?;
                    let m = self
                        .class(&p)
                        .ok_or_else(|| Error::Construction("composite premorphism outside the enumeration".into()))?;
                    table.insert((m2, m1), m);
                }
            }
        }
        FinCat::from_parts(names, records, identity, |g, h| table.get(&(g, h)).copied(), Check::Full)
    }
}

impl ColimitCat {
    fn finish(
        route: Route,
        index: Arc<TwoCat>,
        sigma: SigmaClass,
        diagram: CatPseudoFunctor,
        engine: Engine,
        local1: Vec<Option<usize>>,
    ) -> Result<ColimitCat> {
        let result = Arc::new(engine.result()?);
        let mut out = ColimitCat {
            route,
            index,
            sigma,
            diagram,
            engine,
            local1,
            result,
            cocone: Vec::new(),
            transitions: Vec::new(),
        };
        out.cocone = out
            .index
            .zero_cells()
            .map(|i| out.build_leg(i))
            .collect::<Result<_>>()?;
        out.transitions = out
            .index
            .one_cells()
            .map(|d| out.build_transition(d))
            .collect::<Result<_>>()?;
        Ok(out)
    }

    fn build_leg(&self, i: usize) -> Result<Functor> {
        let (f, e) = (&self.diagram, &self.engine);
        let fi = f.fiber(i);
        let obj = fi.objects().map(|a| e.object_index[&(i, a)]).collect();
        let mor = fi
            .morphisms()
            .map(|g| self.class_of(&self.embed(i, g)).expect("embedded premorphism"))
            .collect();
        Functor::new(fi.clone(), self.result.clone(), obj, mor)
    }

    fn build_transition(&self, d: usize) -> Result<NatTrans> {
        let (f, c) = (&self.diagram, &*self.index);
        let (i, i2) = (c.src(d), c.tgt(d));
        let components = if self.local1[d].is_some() {
            f.fiber(i)
                .objects()
                .map(|a| {
                    let x = f.on1(d).obj(a);
                    let p = Premorphism {
                        src: (i2, x),
                        tgt: (i, a),
                        apex: i2,
                        left: c.id1(i2),
                        right: d,
                        cell: f.iota_inv_at(i2, x),
                    };
                    self.class_of(&p).expect("transition premorphism")
                })
                .collect()
        } else {
            let t = triangle_completion(c, &self.sigma, d)?;
            let fj = f.fiber(c.tgt(t.s));
            f.fiber(i)
                .objects()
                .map(|a| {
                    let x = f.on1(d).obj(a);
                    let p = Premorphism {
                        src: (i2, x),
                        tgt: (i, a),
                        apex: c.tgt(t.s),
                        left: t.s_prime,
                        right: t.s,
                        cell: fj.comp(f.on2(t.phi).component(a), f.mu_at(d, t.s_prime, a)),
                    };
                    self.class_of(&p).expect("triangle premorphism")
                })
                .collect()
        };
        NatTrans::new(
            self.cocone[i2].after(f.on1(d)),
            self.cocone[i].clone(),
            components,
        )
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn index(&self) -> &Arc<TwoCat> {
        &self.index
    }

    pub fn sigma(&self) -> &SigmaClass {
        &self.sigma
    }

    pub fn diagram(&self) -> &CatPseudoFunctor {
        &self.diagram
    }

    pub fn result(&self) -> &Arc<FinCat> {
        &self.result
    }

    /// `q_i: F(i) → colim F`.
    pub fn cocone(&self, i: usize) -> &Functor {
        &self.cocone[i]
    }

    pub fn legs(&self) -> &[Functor] {
        &self.cocone
    }

    /// `θ_d: q_j∘F(d) ⇒ q_i` for `d: i → j`.
    pub fn transition(&self, d: usize) -> &NatTrans {
        &self.transitions[d]
    }

    pub fn transitions(&self) -> &[NatTrans] {
        &self.transitions
    }

    pub fn object_id(&self, i: usize, a: usize) -> Option<usize> {
        self.engine.object_index.get(&(i, a)).copied()
    }

    pub fn n_premorphisms(&self) -> usize {
        self.engine.premorphisms.len()
    }

    fn to_local(&self, p: &Premorphism) -> Option<Premorphism> {
        Some(Premorphism {
            left: self.local1.get(p.left).copied().flatten()?,
            right: self.local1.get(p.right).copied().flatten()?,
            ..*p
        })
    }

    fn to_global(&self, p: &Premorphism) -> Premorphism {
        let back = |s: usize| self.local1.iter().position(|&l| l == Some(s)).expect("local 1-cell");
        Premorphism {
            left: back(p.left),
            right: back(p.right),
            ..*p
        }
    }

    /// The morphism of the colimit a premorphism represents, if it is one
    /// of the premorphisms the quotient was taken over.
    pub fn class_of(&self, p: &Premorphism) -> Option<usize> {
        self.engine.class(&self.to_local(p)?)
    }

    /// All premorphisms representing morphism `m`.
    pub fn members(&self, m: usize) -> Vec<Premorphism> {
        self.engine
            .premorphisms
            .iter()
            .zip(&self.engine.class_of)
            .filter(|(_, &k)| k == m)
            .map(|(p, _)| self.to_global(p))
            .collect()
    }

    pub fn representative(&self, m: usize) -> Premorphism {
        self.to_global(&self.engine.premorphisms[self.engine.representative[m]])
    }

    /// `(i, 1, 1, ι f ι⁻¹)`, the image of `f` under `q_i`.
    pub fn embed(&self, i: usize, g: usize) -> Premorphism {
        let (f, c) = (&self.diagram, &*self.index);
        let fi = f.fiber(i);
        let (a, b) = (fi.dom(g), fi.cod(g));
        Premorphism {
            src: (i, a),
            tgt: (i, b),
            apex: i,
            left: c.id1(i),
            right: c.id1(i),
            cell: fi.comp(f.iota_at(i, b), fi.comp(g, f.iota_inv_at(i, a))),
        }
    }

    /// Composite by amalgamation along the fixed span and insertion.
    pub fn compose_premorphisms(&self, p2: &Premorphism, p1: &Premorphism) -> Result<Premorphism> {
        let (q1, q2) = match (self.to_local(p1), self.to_local(p2)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Precondition("premorphism legs outside the quotient index".into())),
        };
        Ok(self.to_global(&self.engine.compose(&q2, &q1)?))
    }
}

/// Decides whether two premorphisms represent the same morphism.
pub fn premorphism_equal(c: &ColimitCat, p: &Premorphism, q: &Premorphism) -> Result<bool> {
    match (c.class_of(p), c.class_of(q)) {
        (Some(a), Some(b)) => Ok(a == b),
        _ => Err(Error::Precondition("premorphism is not well typed over the quotient index".into())),
    }
}

/// Colimit of `f` over a bifiltered index.
pub fn bifiltered_bicolimit(f: &CatPseudoFunctor) -> Result<ColimitCat> {
    let c = f.source().clone();
    let v = check_bifiltered(&c)?;
    if !v.holds() {
        let ce = v.first_counterexample().expect("negative verdict");
        return Err(Error::Precondition(format!(
            "index is not bifiltered: {} fails at {}",
            ce.condition,
            ce.instance.join(", ")
        )));
    }
    let engine = Engine::build(f.clone(), None)?;
    let local1 = c.one_cells().map(Some).collect();
    ColimitCat::finish(Route::Bifiltered, c.clone(), SigmaClass::all(&c), f.clone(), engine, local1)
}

fn require_sigma_filtered(c: &TwoCat, sigma: &SigmaClass) -> Result<SigmaClass> {
    let closed = sigma_closure(c, sigma);
    let v = check_sigma_filtered(c, &closed)?;
    if !v.holds() {
        let ce = v.first_counterexample().expect("negative verdict");
        return Err(Error::Precondition(format!(
            "index is not σ-filtered: {} fails at {}",
            ce.condition,
            ce.instance.join(", ")
        )));
    }
    Ok(closed)
}

/// Colimit of `f` over a σ-filtered pair, computed as the bifiltered
/// colimit of the restriction to the Σ-subcategory. Transitions for
/// 1-cells outside Σ come from triangles.
pub fn sigma_bicolimit(f: &CatPseudoFunctor, sigma: &SigmaClass) -> Result<ColimitCat> {
    let c = f.source().clone();
    let closed = require_sigma_filtered(&c, sigma)?;
    let (sub, incl) = c.restrict_one_cells(&closed)?;
    let restricted = f.precompose(&incl)?;
    let v = check_bifiltered(&sub)?;
    if !v.holds() {
        return Err(Error::Construction("Σ-subcategory of a σ-filtered pair is not bifiltered".into()));
    }
    let engine = Engine::build(restricted, None)?;
    let mut local1 = vec![None; c.n1()];
    for s in sub.one_cells() {
        local1[incl.on1(s)] = Some(s);
    }
    ColimitCat::finish(Route::Trivialized, c, closed, f.clone(), engine, local1)
}

/// Colimit of `f` over a σ-filtered pair by the σ-quotient directly:
/// left legs in Σ, right legs arbitrary, transport only along Σ.
pub fn sigma_bicolimit_direct(f: &CatPseudoFunctor, sigma: &SigmaClass) -> Result<ColimitCat> {
    let c = f.source().clone();
    let closed = require_sigma_filtered(&c, sigma)?;
    let engine = Engine::build(f.clone(), Some(closed.clone()))?;
    let local1 = c.one_cells().map(Some).collect();
    ColimitCat::finish(Route::SigmaDirect, c, closed, f.clone(), engine, local1)
}
