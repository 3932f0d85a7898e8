//! Finite bilimits in Cat through their pseudolimit models: products,
//! biequalizers, arrow cotensors, cocycle pseudolimits, and the splitting
//! of pseudoidempotents.

mod pointwise;

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result, Violation};
use crate::fincat::{full_subcategory, Check, FinCat, Functor, MorphismRecord, NatTrans};
use crate::twocat::CatPseudoFunctor;

pub use pointwise::{
    check_commutation, cotensor_diagram, equalizer_diagram, product_diagram, CommutationReport, Shape,
};

const OBJECT_LIMIT: usize = 100_000;

/// `C × D` with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub cat: Arc<FinCat>,
    pub first: Functor,
    pub second: Functor,
}

impl Product {
    pub fn object(&self, x: usize, y: usize) -> usize {
        x * self.second.target().n_objects() + y
    }

    pub fn morphism(&self, f: usize, g: usize) -> usize {
        f * self.second.target().n_morphisms() + g
    }
}

pub fn biproduct(c: &Arc<FinCat>, d: &Arc<FinCat>) -> Product {
    let (no, nm) = (d.n_objects(), d.n_morphisms());
    let mut objects = Vec::new();
    for x in c.objects() {
        for y in d.objects() {
            objects.push(format!("({},{})", c.object_name(x), d.object_name(y)));
        }
    }
    let mut records = Vec::new();
    for f in c.morphisms() {
        for g in d.morphisms() {
            records.push(MorphismRecord {
                name: format!("({},{})", c.morphism_name(f), d.morphism_name(g)),
                dom: c.dom(f) * no + d.dom(g),
                cod: c.cod(f) * no + d.cod(g),
            });
        }
    }
    let identity = c
        .objects()
        .flat_map(|x| d.objects().map(move |y| c.id(x) * nm + d.id(y)))
        .collect();
    let cat = FinCat::from_parts(
        objects,
        records,
        identity,
        |h, k| {
            let (f2, g2, f1, g1) = (h / nm, h % nm, k / nm, k % nm);
            Some(c.compose(f2, f1)? * nm + d.compose(g2, g1)?)
        },
        Check::Structural,
    )
    .expect("product of valid categories");
    let cat = Arc::new(cat);
    let first = Functor::new(
        cat.clone(),
        c.clone(),
        (0..cat.n_objects()).map(|o| o / no).collect(),
        (0..cat.n_morphisms()).map(|m| m / nm).collect(),
    )
    .expect("first projection");
    let second = Functor::new(
        cat.clone(),
        d.clone(),
        (0..cat.n_objects()).map(|o| o % no).collect(),
        (0..cat.n_morphisms()).map(|m| m % nm).collect(),
    )
    .expect("second projection");
    Product { cat, first, second }
}

/// `f × g` between chosen products.
pub fn product_functor(f: &Functor, g: &Functor, src: &Product, tgt: &Product) -> Functor {
    let (c, d) = (f.source(), g.source());
    let obj = c
        .objects()
        .flat_map(|x| d.objects().map(move |y| (x, y)))
        .map(|(x, y)| tgt.object(f.obj(x), g.obj(y)))
        .collect();
    let mor = c
        .morphisms()
        .flat_map(|x| d.morphisms().map(move |y| (x, y)))
        .map(|(x, y)| tgt.morphism(f.mor(x), g.mor(y)))
        .collect();
    Functor::new(src.cat.clone(), tgt.cat.clone(), obj, mor).expect("product of functors")
}

/// `α × β` between product functors.
pub fn product_nat(a: &NatTrans, b: &NatTrans, src: &Product, tgt: &Product) -> NatTrans {
    let s = product_functor(a.source(), b.source(), src, tgt);
    let t = product_functor(a.target(), b.target(), src, tgt);
    let components = a
        .source()
        .source()
        .objects()
        .flat_map(|x| b.source().source().objects().map(move |y| (x, y)))
        .map(|(x, y)| tgt.morphism(a.component(x), b.component(y)))
        .collect();
    NatTrans::new(s, t, components).expect("product of transformations")
}

/// The iso-inserter of a parallel pair: pairs `(a, θ: F(a) ≅ G(a))`.
#[derive(Clone, Debug)]
pub struct Biequalizer {
    pub cat: Arc<FinCat>,
    pub projection: Functor,
    /// `F∘projection ⇒ G∘projection`, invertible.
    pub cell: NatTrans,
    objects: Vec<(usize, usize)>,
}

impl Biequalizer {
    /// `(a, θ)` of an object.
    pub fn object(&self, x: usize) -> (usize, usize) {
        self.objects[x]
    }

    pub fn object_id(&self, a: usize, theta: usize) -> Option<usize> {
        self.objects.iter().position(|&p| p == (a, theta))
    }
}

pub fn biequalizer(f: &Functor, g: &Functor) -> Result<Biequalizer> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::Precondition("biequalizer needs a parallel pair".into()));
    }
    let (a, b) = (f.source().clone(), f.target().clone());
    let mut objects = Vec::new();
    let mut names = Vec::new();
    for x in a.objects() {
        for &t in b.hom(f.obj(x), g.obj(x)) {
            if b.is_iso(t) {
                names.push(format!("({},{})", a.object_name(x), b.morphism_name(t)));
                objects.push((x, t));
            }
        }
    }
    let mut records = Vec::new();
    let mut under = Vec::new();
    for (p, &(x, t)) in objects.iter().enumerate() {
        for (q, &(y, u)) in objects.iter().enumerate() {
            for &h in a.hom(x, y) {
                if b.comp(u, f.mor(h)) == b.comp(g.mor(h), t) {
                    records.push(MorphismRecord {
                        name: format!("{}:{}→{}", a.morphism_name(h), names[p], names[q]),
                        dom: p,
                        cod: q,
                    });
                    under.push(h);
                }
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> = records
        .iter()
        .zip(&under)
        .enumerate()
        .map(|(k, (r, &h))| ((r.dom, r.cod, h), k))
        .collect();
    let identity = objects
        .iter()
        .enumerate()
        .map(|(p, &(x, _))| index[&(p, p, a.id(x))])
        .collect();
    let cat = FinCat::from_parts(
        names,
        records.clone(),
        identity,
        |m2, m1| index.get(&(records[m1].dom, records[m2].cod, a.compose(under[m2], under[m1])?)).copied(),
        Check::Structural,
    )?;
    let cat = Arc::new(cat);
    let projection = Functor::new(cat.clone(), a.clone(), objects.iter().map(|p| p.0).collect(), under)?;
    let cell = NatTrans::new(
        f.after(&projection),
        g.after(&projection),
        objects.iter().map(|p| p.1).collect(),
    )?;
    Ok(Biequalizer {
        cat,
        projection,
        cell,
        objects,
    })
}

/// `[2, C]` with its domain and codomain functors and the universal cell.
#[derive(Clone, Debug)]
pub struct Cotensor {
    pub cat: Arc<FinCat>,
    pub dom: Functor,
    pub cod: Functor,
    pub cell: NatTrans,
    squares: HashMap<(usize, usize, usize, usize), usize>,
}

impl Cotensor {
    /// The square `(u, v): f → f'`.
    pub fn square(&self, f: usize, f2: usize, u: usize, v: usize) -> Option<usize> {
        self.squares.get(&(f, f2, u, v)).copied()
    }
}

pub fn arrow_cotensor(c: &Arc<FinCat>) -> Cotensor {
    let mut records = Vec::new();
    let mut sides = Vec::new();
    let mut squares = HashMap::new();
    for f in c.morphisms() {
        for f2 in c.morphisms() {
            for &u in c.hom(c.dom(f), c.dom(f2)) {
                for &v in c.hom(c.cod(f), c.cod(f2)) {
                    if c.comp(v, f) == c.comp(f2, u) {
                        squares.insert((f, f2, u, v), records.len());
                        records.push(MorphismRecord {
                            name: format!(
                                "({},{}):{}→{}",
                                c.morphism_name(u),
                                c.morphism_name(v),
                                c.morphism_name(f),
                                c.morphism_name(f2)
                            ),
                            dom: f,
                            cod: f2,
                        });
                        sides.push((u, v));
                    }
                }
            }
        }
    }
    let identity = c
        .morphisms()
        .map(|f| squares[&(f, f, c.id(c.dom(f)), c.id(c.cod(f)))])
        .collect();
    let cat = FinCat::from_parts(
        c.morphism_records().iter().map(|r| r.name.clone()).collect(),
        records.clone(),
        identity,
        |s2, s1| {
            let ((u2, v2), (u1, v1)) = (sides[s2], sides[s1]);
            squares
                .get(&(records[s1].dom, records[s2].cod, c.comp(u2, u1), c.comp(v2, v1)))
                .copied()
        },
        Check::Structural,
    )
    .expect("arrow category of a valid category");
    let cat = Arc::new(cat);
    let dom = Functor::new(
        cat.clone(),
        c.clone(),
        c.morphisms().map(|f| c.dom(f)).collect(),
        sides.iter().map(|s| s.0).collect(),
    )
    .expect("domain functor");
    let cod = Functor::new(
        cat.clone(),
        c.clone(),
        c.morphisms().map(|f| c.cod(f)).collect(),
        sides.iter().map(|s| s.1).collect(),
    )
    .expect("codomain functor");
    let cell = NatTrans::new(dom.clone(), cod.clone(), c.morphisms().collect()).expect("universal arrow");
    Cotensor {
        cat,
        dom,
        cod,
        cell,
        squares,
    }
}

/// `[2, F]: [2, C] → [2, D]`.
pub fn cotensor_functor(f: &Functor, src: &Cotensor, tgt: &Cotensor) -> Functor {
    let c = f.source();
    let obj: Vec<usize> = c.morphisms().map(|g| f.mor(g)).collect();
    let mor = src
        .cat
        .morphisms()
        .map(|s| {
            let (g, g2) = (src.cat.dom(s), src.cat.cod(s));
            let (u, v) = (src.dom.mor(s), src.cod.mor(s));
            tgt.square(obj[g], obj[g2], f.mor(u), f.mor(v)).expect("functors preserve squares")
        })
        .collect();
    Functor::new(src.cat.clone(), tgt.cat.clone(), obj, mor).expect("cotensor of a functor")
}

/// `[2, α]: [2, F] ⇒ [2, G]`.
pub fn cotensor_nat(a: &NatTrans, src: &Cotensor, tgt: &Cotensor) -> NatTrans {
    let (f, g) = (a.source(), a.target());
    let c = f.source();
    let components = c
        .morphisms()
        .map(|h| {
            tgt.square(f.mor(h), g.mor(h), a.component(c.dom(h)), a.component(c.cod(h)))
                .expect("naturality square")
        })
        .collect();
    NatTrans::new(cotensor_functor(f, src, tgt), cotensor_functor(g, src, tgt), components)
        .expect("cotensor of a transformation")
}

/// Pseudolimit of a Cat-valued pseudofunctor: families `(A_i)` with
/// invertible `α_d: F(d)A_i → A_j` satisfying the cocycle identities.
#[derive(Clone, Debug)]
pub struct Pseudolimit {
    pub cat: Arc<FinCat>,
    pub projections: Vec<Functor>,
    /// `(A_i)_i` and `(α_d)_d` of each object.
    pub families: Vec<(Vec<usize>, Vec<usize>)>,
}

pub fn pseudolimit_cocycle(f: &CatPseudoFunctor) -> Result<Pseudolimit> {
    let c = f.source().clone();
    let mut total: usize = 1;
    for i in c.zero_cells() {
        total = total.saturating_mul(f.fiber(i).n_objects().max(1));
    }
    if total > OBJECT_LIMIT {
        return Err(Error::SizeGuard {
            what: "object families".into(),
            limit: OBJECT_LIMIT,
        });
    }
    let mut families = Vec::new();
    let mut objs = vec![0usize; c.n0()];
    let mut alpha = vec![usize::MAX; c.n1()];
    choose_objects(f, 0, &mut objs, &mut alpha, &mut families)?;

    let names: Vec<String> = families
        .iter()
        .map(|(a, al)| {
            let objs: Vec<&str> = c.zero_cells().map(|i| f.fiber(i).object_name(a[i])).collect();
            let isos: Vec<&str> = c
                .one_cells()
                .filter(|&d| !c.is_identity1(d))
                .map(|d| f.fiber(c.tgt(d)).morphism_name(al[d]))
                .collect();
            format!("({}|{})", objs.join(","), isos.join(","))
        })
        .collect();
    let mut records = Vec::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for (p, x) in families.iter().enumerate() {
        for (q, y) in families.iter().enumerate() {
            let mut fam = vec![0usize; c.n0()];
            morphism_families(f, x, y, 0, &mut fam, &mut |fam| {
                let parts: Vec<&str> = c.zero_cells().map(|i| f.fiber(i).morphism_name(fam[i])).collect();
                records.push(MorphismRecord {
                    name: format!("({}):{}→{}", parts.join(","), names[p], names[q]),
                    dom: p,
                    cod: q,
                });
                comps.push(fam.to_vec());
            });
        }
    }
    let index: HashMap<(usize, usize, Vec<usize>), usize> = records
        .iter()
        .zip(&comps)
        .enumerate()
        .map(|(k, (r, fam))| ((r.dom, r.cod, fam.clone()), k))
        .collect();
    let identity = families
        .iter()
        .enumerate()
        .map(|(p, (a, _))| {
            let fam: Vec<usize> = c.zero_cells().map(|i| f.fiber(i).id(a[i])).collect();
            index[&(p, p, fam)]
        })
        .collect();
    let cat = FinCat::from_parts(
        names,
        records.clone(),
        identity,
        |m2, m1| {
            let fam: Vec<usize> = c
                .zero_cells()
                .map(|i| f.fiber(i).compose(comps[m2][i], comps[m1][i]))
                .collect::<Option<_>>()?;
            index.get(&(records[m1].dom, records[m2].cod, fam)).copied()
        },
        Check::Structural,
    )?;
    let cat = Arc::new(cat);
    let projections = c
        .zero_cells()
        .map(|i| {
            Functor::new(
                cat.clone(),
                f.fiber(i).clone(),
                families.iter().map(|(a, _)| a[i]).collect(),
                comps.iter().map(|fam| fam[i]).collect(),
            )
        })
        .collect::<Result<_>>()?;
    Ok(Pseudolimit {
        cat,
        projections,
        families,
    })
}

fn choose_objects(
    f: &CatPseudoFunctor,
    i: usize,
    objs: &mut Vec<usize>,
    alpha: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) -> Result<()> {
    let c = f.source();
    if i == c.n0() {
        for z in c.zero_cells() {
            alpha[c.id1(z)] = f.iota_inv_at(z, objs[z]);
        }
        let ones: Vec<usize> = c.one_cells().filter(|&d| !c.is_identity1(d)).collect();
        if identities_coherent(f, objs, alpha) {
            choose_isos(f, &ones, 0, objs, alpha, out)?;
        }
        return Ok(());
    }
    for a in f.fiber(i).objects() {
        objs[i] = a;
        choose_objects(f, i + 1, objs, alpha, out)?;
    }
    Ok(())
}

fn identities_coherent(f: &CatPseudoFunctor, objs: &[usize], alpha: &[usize]) -> bool {
    let c = f.source();
    c.zero_cells().all(|z| {
        let one = c.id1(z);
        cocycle_holds(f, objs, alpha, one, one)
    })
}

/// `α_{ed} ∘ μ_{d,e} = α_e ∘ F(e)(α_d)` for assigned cells.
fn cocycle_holds(f: &CatPseudoFunctor, objs: &[usize], alpha: &[usize], d: usize, e: usize) -> bool {
    let c = f.source();
    let ed = c.h1(e, d);
    if [d, e, ed].iter().any(|&x| alpha[x] == usize::MAX) {
        return true;
    }
    let fk = f.fiber(c.tgt(e));
    let a = objs[c.src(d)];
    fk.comp(alpha[ed], f.mu_at(d, e, a)) == fk.comp(alpha[e], f.on1(e).mor(alpha[d]))
}

fn two_cells_hold(f: &CatPseudoFunctor, objs: &[usize], alpha: &[usize], d: usize) -> bool {
    let c = f.source();
    let fj = f.fiber(c.tgt(d));
    let a = objs[c.src(d)];
    c.cells_from(d).into_iter().chain(c.two_cells().filter(|&b| c.cod2(b) == d)).all(|b| {
        let (x, y) = (c.dom2(b), c.cod2(b));
        alpha[x] == usize::MAX || alpha[y] == usize::MAX || fj.comp(alpha[y], f.on2(b).component(a)) == alpha[x]
    })
}

fn choose_isos(
    f: &CatPseudoFunctor,
    ones: &[usize],
    k: usize,
    objs: &[usize],
    alpha: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) -> Result<()> {
    let c = f.source();
    if k == ones.len() {
        if out.len() >= OBJECT_LIMIT {
            return Err(Error::SizeGuard {
                what: "pseudolimit objects".into(),
                limit: OBJECT_LIMIT,
            });
        }
        out.push((objs.to_vec(), alpha.clone()));
        return Ok(());
    }
    let d = ones[k];
    let fj = f.fiber(c.tgt(d));
    let from = f.on1(d).obj(objs[c.src(d)]);
    for &t in fj.hom(from, objs[c.tgt(d)]) {
        if !fj.is_iso(t) {
            continue;
        }
        alpha[d] = t;
        let ok = two_cells_hold(f, objs, alpha, d) && all_cocycles(f, objs, alpha);
        if ok {
            choose_isos(f, ones, k + 1, objs, alpha, out)?;
        }
    }
    alpha[d] = usize::MAX;
    Ok(())
}

fn all_cocycles(f: &CatPseudoFunctor, objs: &[usize], alpha: &[usize]) -> bool {
    let c = f.source();
    c.one_cells()
        .all(|d| c.out1(c.tgt(d)).iter().all(|&e| cocycle_holds(f, objs, alpha, d, e)))
}

fn morphism_families(
    f: &CatPseudoFunctor,
    x: &(Vec<usize>, Vec<usize>),
    y: &(Vec<usize>, Vec<usize>),
    i: usize,
    fam: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let c = f.source();
    if i == c.n0() {
        emit(fam);
        return;
    }
    let fi = f.fiber(i);
    for &g in fi.hom(x.0[i], y.0[i]) {
        fam[i] = g;
        // squares α'_d ∘ F(d)(f_s) = f_t ∘ α_d whose ends are both chosen
        let ok = c.one_cells().all(|d| {
            let (s, t) = (c.src(d), c.tgt(d));
            if s > i || t > i {
                return true;
            }
            let fj = f.fiber(t);
            fj.comp(y.1[d], f.on1(d).mor(fam[s])) == fj.comp(fam[t], x.1[d])
        });
        if ok {
            morphism_families(f, x, y, i + 1, fam, emit);
        }
    }
}

/// An endofunctor `e` with an invertible `υ: e∘e ⇒ e`.
#[derive(Clone, Debug)]
pub struct Pseudoidempotent {
    pub carrier: Arc<FinCat>,
    pub endo: Functor,
    pub mult: NatTrans,
}

impl Pseudoidempotent {
    pub fn new(endo: Functor, mult: NatTrans) -> Result<Pseudoidempotent> {
        let carrier = endo.source().clone();
        let mut v = Vec::new();
        if endo.target() != &carrier {
            v.push(Violation::new("endomorphism", "e must map the carrier to itself"));
        } else {
            if *mult.source() != endo.after(&endo) || *mult.target() != endo {
                v.push(Violation::new("typing", "υ must go from e∘e to e"));
            }
            if !mult.is_invertible() {
                v.push(Violation::new("invertibility", "υ must be componentwise invertible"));
            }
        }
        if v.is_empty() {
            Ok(Pseudoidempotent { carrier, endo, mult })
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// Whether `e(υ_a) = υ_{e a}` for every object.
    pub fn is_coherent(&self) -> bool {
        self.carrier
            .objects()
            .all(|a| self.endo.mor(self.mult.component(a)) == self.mult.component(self.endo.obj(a)))
    }
}

/// A splitting `s∘r ≅ e`, `r∘s ≅ 1_B` of a pseudoidempotent.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub cat: Arc<FinCat>,
    pub r: Functor,
    pub s: Functor,
    /// `s∘r ⇒ e`.
    pub alpha: NatTrans,
    /// `r∘s ⇒ 1_B`.
    pub beta: NatTrans,
}

impl Splitting {
    /// Re-checks typing and invertibility of the retract data.
    pub fn violations(&self, p: &Pseudoidempotent) -> Vec<Violation> {
        let mut v = Vec::new();
        for (name, t) in [("α", &self.alpha), ("β", &self.beta)] {
            v.extend(t.violations());
            if !t.is_invertible() {
                v.push(Violation::new("invertibility", format!("{name} is not invertible")));
            }
        }
        if *self.alpha.source() != self.s.after(&self.r) || *self.alpha.target() != p.endo {
            v.push(Violation::new("typing", "α must go from s∘r to e"));
        }
        if *self.beta.source() != self.r.after(&self.s) || !self.beta.target().is_identity() {
            v.push(Violation::new("typing", "β must go from r∘s to the identity"));
        }
        v
    }
}

/// Splits a coherent pseudoidempotent through the full subcategory of the
/// iso-inserter of `(e, 1)` on pairs `(a, μ)` with `e(μ) = υ_a`.
pub fn split_pseudoidempotent(p: &Pseudoidempotent) -> Result<Splitting> {
    if !p.is_coherent() {
        return Err(Error::Precondition("pseudoidempotent is not coherent: e(υ) differs from υe".into()));
    }
    let a = &p.carrier;
    let e = &p.endo;
    let ins = biequalizer(e, &Functor::identity(a.clone()))?;
    let keep: Vec<usize> = ins
        .cat
        .objects()
        .filter(|&x| {
            let (o, mu) = ins.object(x);
            e.mor(mu) == p.mult.component(o)
        })
        .collect();
    let (cat, incl) = full_subcategory(&ins.cat, &keep);
    let mut local = vec![usize::MAX; ins.cat.n_objects()];
    for (k, &x) in keep.iter().enumerate() {
        local[x] = k;
    }
    let s = ins.projection.after(&incl);
    let r_obj: Vec<usize> = a
        .objects()
        .map(|o| {
            let x = ins
                .object_id(e.obj(o), p.mult.component(o))
                .expect("υ_a is an invertible e(ea) → ea");
            local[x]
        })
        .collect();
    let r_mor = a
        .morphisms()
        .map(|g| {
            let (x, y) = (r_obj[a.dom(g)], r_obj[a.cod(g)]);
            cat.hom(x, y)
                .iter()
                .copied()
                .find(|&m| s.mor(m) == e.mor(g))
                .expect("e(g) commutes with υ")
        })
        .collect();
    let r = Functor::new(a.clone(), cat.clone(), r_obj, r_mor)?;
    let alpha = NatTrans::identity(&s.after(&r));
    let alpha = NatTrans::new(alpha.source().clone(), e.clone(), alpha.components().to_vec())?;
    let beta_components = cat
        .objects()
        .map(|x| {
            let (_, mu) = ins.object(keep[x]);
            let from = r.obj(s.obj(x));
            cat.hom(from, x)
                .iter()
                .copied()
                .find(|&m| s.mor(m) == mu)
                .expect("μ is a morphism r(s(a, μ)) → (a, μ)")
        })
        .collect();
    let beta = NatTrans::new(r.after(&s), Functor::identity(cat.clone()), beta_components)?;
    Ok(Splitting {
        cat,
        r,
        s,
        alpha,
        beta,
    })
}

/// Serializable summary of a constructed category.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub objects: usize,
    pub morphisms: usize,
}

impl From<&FinCat> for Summary {
    fn from(c: &FinCat) -> Summary {
        Summary {
            objects: c.n_objects(),
            morphisms: c.n_morphisms(),
        }
    }
}

#[cfg(test)]
mod tests;
