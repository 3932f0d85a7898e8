use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{
    arrow_cotensor, biequalizer, biproduct, cotensor_functor, cotensor_nat, product_functor, product_nat, Biequalizer,
    Summary,
};
use crate::colim::{bifiltered_bicolimit, induced_functor};
use crate::error::{Error, Result};
use crate::fincat::{check_equivalence, Functor, NatTrans};
use crate::twocat::{CatPseudoFunctor, PseudoParts};

/// Pointwise product `i ↦ A(i) × B(i)`.
pub fn product_diagram(a: &CatPseudoFunctor, b: &CatPseudoFunctor) -> Result<CatPseudoFunctor> {
    let c = a.source().clone();
    if !Arc::ptr_eq(&c, b.source()) {
        return Err(Error::Precondition("diagrams must share their index".into()));
    }
    let p: Vec<_> = c.zero_cells().map(|i| biproduct(a.fiber(i), b.fiber(i))).collect();
    let mut comp = HashMap::new();
    for s in c.one_cells() {
        for &t in c.out1(c.tgt(s)) {
            comp.insert(
                (s, t),
                product_nat(a.mu(s, t), b.mu(s, t), &p[c.src(s)], &p[c.tgt(t)]),
            );
        }
    }
    CatPseudoFunctor::new(
        c.clone(),
        PseudoParts {
            cats: p.iter().map(|x| x.cat.clone()).collect(),
            on1: c
                .one_cells()
                .map(|d| product_functor(a.on1(d), b.on1(d), &p[c.src(d)], &p[c.tgt(d)]))
                .collect(),
            on2: c
                .two_cells()
                .map(|x| {
                    let d = c.dom2(x);
                    product_nat(a.on2(x), b.on2(x), &p[c.src(d)], &p[c.tgt(d)])
                })
                .collect(),
            comp,
            unit: c
                .zero_cells()
                .map(|i| product_nat(a.iota(i), b.iota(i), &p[i], &p[i]))
                .collect(),
        },
    )
}

/// Pointwise arrow cotensor `i ↦ [2, A(i)]`.
pub fn cotensor_diagram(a: &CatPseudoFunctor) -> Result<CatPseudoFunctor> {
    let c = a.source().clone();
    let t: Vec<_> = c.zero_cells().map(|i| arrow_cotensor(a.fiber(i))).collect();
    let mut comp = HashMap::new();
    for s in c.one_cells() {
        for &u in c.out1(c.tgt(s)) {
            comp.insert((s, u), cotensor_nat(a.mu(s, u), &t[c.src(s)], &t[c.tgt(u)]));
        }
    }
    CatPseudoFunctor::new(
        c.clone(),
        PseudoParts {
            cats: t.iter().map(|x| x.cat.clone()).collect(),
            on1: c
                .one_cells()
                .map(|d| cotensor_functor(a.on1(d), &t[c.src(d)], &t[c.tgt(d)]))
                .collect(),
            on2: c
                .two_cells()
                .map(|x| {
                    let d = c.dom2(x);
                    cotensor_nat(a.on2(x), &t[c.src(d)], &t[c.tgt(d)])
                })
                .collect(),
            comp,
            unit: c.zero_cells().map(|i| cotensor_nat(a.iota(i), &t[i], &t[i])).collect(),
        },
    )
}

fn strictly_natural(a: &CatPseudoFunctor, b: &CatPseudoFunctor, maps: &[Functor]) -> bool {
    let c = a.source();
    c.one_cells()
        .all(|d| b.on1(d).after(&maps[c.src(d)]) == maps[c.tgt(d)].after(a.on1(d)))
        && c.two_cells().all(|x| {
            let (i, j) = (c.src(c.dom2(x)), c.tgt(c.dom2(x)));
            a.fiber(i)
                .objects()
                .all(|o| maps[j].mor(a.on2(x).component(o)) == b.on2(x).component(maps[i].obj(o)))
        })
}

/// Pointwise biequalizer of strictly natural `p, q: A ⇒ B` between strict
/// diagrams.
pub fn equalizer_diagram(
    a: &CatPseudoFunctor,
    b: &CatPseudoFunctor,
    p: &[Functor],
    q: &[Functor],
) -> Result<(CatPseudoFunctor, Vec<Biequalizer>)> {
    let c = a.source().clone();
    if !a.is_strict() || !b.is_strict() {
        return Err(Error::Precondition("pointwise biequalizers need strict diagrams".into()));
    }
    if p.len() != c.n0() || q.len() != c.n0() || !strictly_natural(a, b, p) || !strictly_natural(a, b, q) {
        return Err(Error::Precondition("maps must be strictly natural".into()));
    }
    let e: Vec<Biequalizer> = c
        .zero_cells()
        .map(|i| biequalizer(&p[i], &q[i]))
        .collect::<Result<_>>()?;
    let image = |d: usize, x: usize| -> usize {
        let (o, theta) = e[c.src(d)].object(x);
        e[c.tgt(d)]
            .object_id(a.on1(d).obj(o), b.on1(d).mor(theta))
            .expect("strict naturality carries isos to isos")
    };
    let over = |j: usize, from: usize, to: usize, h: usize| -> usize {
        e[j].cat
            .hom(from, to)
            .iter()
            .copied()
            .find(|&m| e[j].projection.mor(m) == h)
            .expect("lifted morphism commutes with the cells")
    };
    let on1: Vec<Functor> = c
        .one_cells()
        .map(|d| {
            let (i, j) = (c.src(d), c.tgt(d));
            let src = &e[i].cat;
            let obj: Vec<usize> = src.objects().map(|x| image(d, x)).collect();
            let mor = src
                .morphisms()
                .map(|m| {
                    let h = a.on1(d).mor(e[i].projection.mor(m));
                    over(j, obj[src.dom(m)], obj[src.cod(m)], h)
                })
                .collect();
            Functor::new(src.clone(), e[j].cat.clone(), obj, mor)
        })
        .collect::<Result<_>>()?;
    let on2 = c
        .two_cells()
        .map(|x| {
            let (d, d2) = (c.dom2(x), c.cod2(x));
            let (i, j) = (c.src(d), c.tgt(d));
            let components = e[i]
                .cat
                .objects()
                .map(|y| {
                    let (o, _) = e[i].object(y);
                    over(j, on1[d].obj(y), on1[d2].obj(y), a.on2(x).component(o))
                })
                .collect();
            NatTrans::new(on1[d].clone(), on1[d2].clone(), components)
        })
        .collect::<Result<_>>()?;
    let f = CatPseudoFunctor::strict(c, e.iter().map(|x| x.cat.clone()).collect(), on1, on2)?;
    Ok((f, e))
}

/// A finite conical bilimit shape applied pointwise to diagrams over a
/// shared bifiltered index.
#[derive(Clone, Debug)]
pub enum Shape {
    Product(CatPseudoFunctor, CatPseudoFunctor),
    Equalizer {
        source: CatPseudoFunctor,
        target: CatPseudoFunctor,
        first: Vec<Functor>,
        second: Vec<Functor>,
    },
    Cotensor(CatPseudoFunctor),
}

impl Shape {
    pub fn name(&self) -> &'static str {
        match self {
            Shape::Product(..) => "biproduct",
            Shape::Equalizer { .. } => "biequalizer",
            Shape::Cotensor(_) => "arrow cotensor",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutationReport {
    pub shape: String,
    pub colimit_of_limits: Summary,
    pub limit_of_colimits: Summary,
    pub equivalent: bool,
}

/// Compares the colimit of the pointwise limit with the limit of the
/// pointwise colimits.
pub fn check_commutation(shape: &Shape) -> Result<CommutationReport> {
    let (left, right) = match shape {
        Shape::Product(a, b) => {
            let l = bifiltered_bicolimit(&product_diagram(a, b)?)?;
            let (ca, cb) = (bifiltered_bicolimit(a)?, bifiltered_bicolimit(b)?);
            (l.result().clone(), biproduct(ca.result(), cb.result()).cat)
        }
        Shape::Cotensor(a) => {
            let l = bifiltered_bicolimit(&cotensor_diagram(a)?)?;
            let ca = bifiltered_bicolimit(a)?;
            (l.result().clone(), arrow_cotensor(ca.result()).cat)
        }
        Shape::Equalizer {
            source,
            target,
            first,
            second,
        } => {
            let (pointwise, _) = equalizer_diagram(source, target, first, second)?;
            let l = bifiltered_bicolimit(&pointwise)?;
            let (ca, cb) = (bifiltered_bicolimit(source)?, bifiltered_bicolimit(target)?);
            let p = induced_functor(&ca, &cb, first)?;
            let q = induced_functor(&ca, &cb, second)?;
            (l.result().clone(), biequalizer(&p, &q)?.cat)
        }
    };
    Ok(CommutationReport {
        shape: shape.name().into(),
        colimit_of_limits: Summary::from(&*left),
        limit_of_colimits: Summary::from(&*right),
        equivalent: check_equivalence(&left, &right).holds(),
    })
}
