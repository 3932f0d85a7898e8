//! Bicompactness of finite categories against concrete bifiltered diagrams,
//! with witness-producing lifts of 1-cells and 2-cells into the colimit.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::bilim::Summary;
use crate::colim::{bifiltered_bicolimit, ColimitCat};
use crate::error::{Error, Result};
use crate::fincat::{
    all_functors, all_nat_trans, functor_category, FinCat, Functor, FunctorAnalysis,
    FunctorCategory, NatTrans,
};
use crate::twocat::{CatPseudoFunctor, Counterexample, PseudoParts, Verdict, Witness};

#[cfg(test)]
mod tests;

/// Default bound on functor enumerations and functor-category sizes.
pub const FUNCTOR_LIMIT: usize = 100_000;

/// Scope of every verdict produced here.
pub const SCOPE_STATEMENT: &str = "Bicompactness quantifies over all small bifiltered indices; a verdict here is evidence against the supplied diagram only, not a proof of bicompactness.";

/// `b: K → F(stage)` with invertible `beta: q_stage∘b ⇒ a`.
#[derive(Clone, Debug)]
pub struct OneCellLift {
    pub stage: usize,
    pub b: Functor,
    pub beta: NatTrans,
}

/// A span `d: i → apex`, `d2: i' → apex` and `cell: F(d)∘b ⇒ F(d2)∘b'`.
#[derive(Clone, Debug)]
pub struct SpanCell {
    pub apex: usize,
    pub d: usize,
    pub d2: usize,
    pub cell: NatTrans,
}

/// A 2-cell `phi: a ⇒ a'` lifted between lifts of `a` and `a'`.
#[derive(Clone, Debug)]
pub struct TwoCellLift {
    pub source: OneCellLift,
    pub target: OneCellLift,
    pub span: SpanCell,
}

/// A parallel pair `phi, psi: a ⇒ a'` lifted over one common span.
#[derive(Clone, Debug)]
pub struct ParallelLift {
    pub source: OneCellLift,
    pub target: OneCellLift,
    pub apex: usize,
    pub d: usize,
    pub d2: usize,
    pub zeta: NatTrans,
    pub xi: NatTrans,
}

fn require_source(k: &Arc<FinCat>, a: &Functor, col: &ColimitCat) -> Result<()> {
    if **a.source() != **k || **a.target() != **col.result() {
        return Err(Error::Precondition("functor must run from K into the colimit".into()));
    }
    Ok(())
}

/// Whether `lift` factors `a` through its stage up to the invertible cell.
pub fn validate_one_cell_lift(col: &ColimitCat, a: &Functor, lift: &OneCellLift) -> bool {
    let q = col.cocone(lift.stage);
    lift.beta.violations().is_empty()
        && lift.beta.is_invertible()
        && *lift.beta.source() == q.after(&lift.b)
        && *lift.beta.target() == *a
}

/// Finds `(i, b, β)` with `β: q_i∘b ≅ a`, searching stages in order.
pub fn lift_one_cell(k: &Arc<FinCat>, col: &ColimitCat, a: &Functor) -> Result<OneCellLift> {
    require_source(k, a, col)?;
    let f = col.diagram();
    let r = col.result();
    for i in f.source().zero_cells() {
        let q = col.cocone(i);
        let fiber = f.fiber(i);
        // object maps reaching the right isomorphism classes
        let fits = |x: usize, y: usize| r.iso_between(q.obj(y), a.obj(x)).is_some();
        if !k.objects().all(|x| fiber.objects().any(|y| fits(x, y))) {
            continue;
        }
        for b in all_functors(k, fiber, FUNCTOR_LIMIT)? {
            if !k.objects().all(|x| fits(x, b.obj(x))) {
                continue;
            }
            let qb = q.after(&b);
            if let Some(beta) = all_nat_trans(&qb, a).into_iter().find(NatTrans::is_invertible) {
                return Ok(OneCellLift { stage: i, b, beta });
            }
        }
    }
    Err(Error::Construction("no lift of the functor through any stage".into()))
}

/// The component at `x` of the pasting `θ_{d2}b' · q_apex(cell) · (θ_d b)⁻¹`
/// of a span cell with the transitions.
fn pasted(col: &ColimitCat, l: &OneCellLift, l2: &OneCellLift, s: &SpanCell, x: usize) -> usize {
    let r = col.result();
    let there = col.transition(s.d2).component(l2.b.obj(x));
    let here = r
        .inverse(col.transition(s.d).component(l.b.obj(x)))
        .expect("transitions are invertible");
    r.comp(there, r.comp(col.cocone(s.apex).mor(s.cell.component(x)), here))
}

fn span_cells<'a>(
    col: &'a ColimitCat,
    l: &'a OneCellLift,
    l2: &'a OneCellLift,
) -> impl Iterator<Item = (usize, usize, usize, Functor, Functor)> + 'a {
    let c = col.index().clone();
    let f = col.diagram().clone();
    let (i, i2) = (l.stage, l2.stage);
    c.zero_cells().flat_map(move |apex| {
        let f = f.clone();
        let hi = c.hom(i, apex).to_vec();
        let hi2 = c.hom(i2, apex).to_vec();
        hi.into_iter().flat_map(move |d| {
            let f = f.clone();
            hi2.clone().into_iter().map(move |d2| {
                (apex, d, d2, f.on1(d).after(&l.b), f.on1(d2).after(&l2.b))
            })
        })
    })
}

/// Whether `s` pastes with the transitions to `target[x]` at every `x`.
fn pastes_to(col: &ColimitCat, l: &OneCellLift, l2: &OneCellLift, s: &SpanCell, target: &[usize]) -> bool {
    (0..target.len()).all(|x| pasted(col, l, l2, s, x) == target[x])
}

/// `β'^{-1} · φ · β` at every object of K.
fn conjugate(col: &ColimitCat, l: &OneCellLift, l2: &OneCellLift, phi: &NatTrans) -> Vec<usize> {
    let r = col.result();
    l.b.source()
        .objects()
        .map(|x| {
            let back = r.inverse(l2.beta.component(x)).expect("invertible lift");
            r.comp(back, r.comp(phi.component(x), l.beta.component(x)))
        })
        .collect()
}

/// A common refinement of two lifts of the same functor: an invertible
/// span cell pasting to `β'^{-1}·β`.
pub fn refine_lifts(col: &ColimitCat, l: &OneCellLift, l2: &OneCellLift) -> Result<SpanCell> {
    let a = l.beta.target();
    if a != l2.beta.target() {
        return Err(Error::Precondition("lifts of different functors".into()));
    }
    let target = conjugate(col, l, l2, &NatTrans::identity(a));
    find_span_cell(col, l, l2, &target, true)
}

fn find_span_cell(
    col: &ColimitCat,
    l: &OneCellLift,
    l2: &OneCellLift,
    target: &[usize],
    invertible: bool,
) -> Result<SpanCell> {
    for (apex, d, d2, fb, fb2) in span_cells(col, l, l2) {
        for cell in all_nat_trans(&fb, &fb2) {
            if invertible && !cell.is_invertible() {
                continue;
            }
            let s = SpanCell { apex, d, d2, cell };
            if pastes_to(col, l, l2, &s, target) {
                return Ok(s);
            }
        }
    }
    Err(Error::Construction("no span cell with the required pasting".into()))
}

/// Lifts `phi: a ⇒ a'` to a cell between lifts of `a` and `a'`.
pub fn lift_two_cell(k: &Arc<FinCat>, col: &ColimitCat, phi: &NatTrans) -> Result<TwoCellLift> {
    let source = lift_one_cell(k, col, phi.source())?;
    let target = lift_one_cell(k, col, phi.target())?;
    let want = conjugate(col, &source, &target, phi);
    let span = find_span_cell(col, &source, &target, &want, false)?;
    Ok(TwoCellLift { source, target, span })
}

pub fn validate_two_cell_lift(col: &ColimitCat, phi: &NatTrans, lift: &TwoCellLift) -> bool {
    validate_one_cell_lift(col, phi.source(), &lift.source)
        && validate_one_cell_lift(col, phi.target(), &lift.target)
        && lift.span.cell.violations().is_empty()
        && pastes_to(col, &lift.source, &lift.target, &lift.span, &conjugate(col, &lift.source, &lift.target, phi))
}

/// Lifts a parallel pair `phi, psi: a ⇒ a'` to `zeta, xi` over one span.
pub fn lift_parallel_pair(k: &Arc<FinCat>, col: &ColimitCat, phi: &NatTrans, psi: &NatTrans) -> Result<ParallelLift> {
    if phi.source() != psi.source() || phi.target() != psi.target() {
        return Err(Error::Precondition("2-cells are not parallel".into()));
    }
    let source = lift_one_cell(k, col, phi.source())?;
    let target = lift_one_cell(k, col, phi.target())?;
    let want_phi = conjugate(col, &source, &target, phi);
    let want_psi = conjugate(col, &source, &target, psi);
    let found = span_cells(col, &source, &target).find_map(|(apex, d, d2, fb, fb2)| {
        let cells = all_nat_trans(&fb, &fb2);
        let hit = |want: &[usize]| {
            cells
                .iter()
                .find(|c| {
                    let s = SpanCell {
                        apex,
                        d,
                        d2,
                        cell: (*c).clone(),
                    };
                    pastes_to(col, &source, &target, &s, want)
                })
                .cloned()
        };
        Some((apex, d, d2, hit(&want_phi)?, hit(&want_psi)?))
    });
    if let Some((apex, d, d2, zeta, xi)) = found {
        return Ok(ParallelLift {
            source,
            target,
            apex,
            d,
            d2,
            zeta,
            xi,
        });
    }
    Err(Error::Construction("no common span lifts the pair".into()))
}

/// `i ↦ Fun(K, F(i))` with post-composition on 1-cells and whiskering on
/// 2-cells.
pub fn hom_diagram(k: &Arc<FinCat>, f: &CatPseudoFunctor, limit: usize) -> Result<(CatPseudoFunctor, Vec<FunctorCategory>)> {
    let c = f.source().clone();
    let fc: Vec<FunctorCategory> = c
        .zero_cells()
        .map(|i| functor_category(k, f.fiber(i), limit))
        .collect::<Result<_>>()?;
    let obj_of = |i: usize, g: &Functor| fc[i].object_of(g).expect("functor listed");
    let mor_of = |i: usize, t: &NatTrans| fc[i].morphism_of(t).expect("transformation listed");
    let post = |d: usize| -> Functor {
        let (i, j) = (c.src(d), c.tgt(d));
        let fd = f.on1(d);
        let obj = fc[i].functors.iter().map(|b| obj_of(j, &fd.after(b))).collect();
        let mor = fc[i]
            .transformations
            .iter()
            .map(|t| mor_of(j, &t.whisker_left(fd)))
            .collect();
        Functor::new(fc[i].cat.clone(), fc[j].cat.clone(), obj, mor).expect("post-composition")
    };
    let on1: Vec<Functor> = c.one_cells().map(post).collect();
    // the cell `g(b) = t.whisker_right(b)` at every listed `b`
    let pointwise = |i: usize, j: usize, src: &Functor, tgt: &Functor, t: &NatTrans| -> Result<NatTrans> {
        let components = fc[i].functors.iter().map(|b| mor_of(j, &t.whisker_right(b))).collect();
        NatTrans::new(src.clone(), tgt.clone(), components)
    };
    let on2 = c
        .two_cells()
        .map(|x| {
            let (d, d2) = (c.dom2(x), c.cod2(x));
            pointwise(c.src(d), c.tgt(d), &on1[d], &on1[d2], f.on2(x))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut comp = HashMap::new();
    for s in c.one_cells() {
        for &t in c.out1(c.tgt(s)) {
            let ts = c.h1(t, s);
            comp.insert(
                (s, t),
                pointwise(c.src(s), c.tgt(t), &on1[t].after(&on1[s]), &on1[ts], f.mu(s, t))?,
            );
        }
    }
    let unit = c
        .zero_cells()
        .map(|i| {
            let id = Functor::identity(fc[i].cat.clone());
            pointwise(i, i, &id, &on1[c.id1(i)], f.iota(i))
        })
        .collect::<Result<Vec<_>>>()?;
    let h = CatPseudoFunctor::new(
        c.clone(),
        PseudoParts {
            cats: fc.iter().map(|x| x.cat.clone()).collect(),
            on1,
            on2,
            comp,
            unit,
        },
    )?;
    Ok((h, fc))
}

#[derive(Clone, Debug, Serialize)]
pub struct CompactReport {
    pub colimit_of_homs: Summary,
    /// Number of functors `K → bicolim F`.
    pub functors_into_colimit: usize,
    /// Analysis of the canonical comparison functor.
    pub comparison: FunctorAnalysis,
}

/// The canonical comparison `bicolim_i Fun(K, F(i)) → Fun(K, bicolim F)`:
/// `(i, b) ↦ q_i∘b`, and a class `[j, s, d, φ]` goes to
/// `θ_d b' · q_j φ · (θ_s b)⁻¹`.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub colimit: ColimitCat,
    pub homs: ColimitCat,
    pub objects: Vec<Functor>,
    pub morphisms: Vec<NatTrans>,
}

impl Comparison {
    /// Composites not preserved by the comparison, empty when functorial.
    pub fn functoriality_failures(&self) -> Vec<(usize, usize)> {
        let r = self.homs.result();
        let mut out = Vec::new();
        for f in r.morphisms() {
            for &g in r.outgoing(r.cod(f)) {
                let gf = r.comp(g, f);
                if self.morphisms[f].then(&self.morphisms[g]) != self.morphisms[gf] {
                    out.push((g, f));
                }
            }
        }
        out
    }
}

pub fn canonical_comparison(k: &Arc<FinCat>, f: &CatPseudoFunctor, limit: usize) -> Result<Comparison> {
    let col = bifiltered_bicolimit(f)?;
    let (h, fc) = hom_diagram(k, f, limit)?;
    let homs = bifiltered_bicolimit(&h)?;
    let c = f.source();
    let rh = homs.result().clone();
    let mut objects = vec![None; rh.n_objects()];
    for i in c.zero_cells() {
        for (n, b) in fc[i].functors.iter().enumerate() {
            let x = homs.object_id(i, n).expect("colimit object");
            objects[x] = Some((i, b.clone(), col.cocone(i).after(b)));
        }
    }
    let objects: Vec<(usize, Functor, Functor)> = objects.into_iter().map(|o| o.expect("every object")).collect();
    let r = col.result();
    let morphisms = rh
        .morphisms()
        .map(|m| {
            let p = homs.representative(m);
            let b = &fc[p.src.0].functors[p.src.1];
            let b2 = &fc[p.tgt.0].functors[p.tgt.1];
            let phi = &fc[p.apex].transformations[p.cell];
            let q = col.cocone(p.apex);
            let components = k
                .objects()
                .map(|x| {
                    let back = r
                        .inverse(col.transition(p.left).component(b.obj(x)))
                        .expect("transitions are invertible");
                    let fwd = col.transition(p.right).component(b2.obj(x));
                    r.comp(fwd, r.comp(q.mor(phi.component(x)), back))
                })
                .collect();
            NatTrans::new(objects[rh.dom(m)].2.clone(), objects[rh.cod(m)].2.clone(), components)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Comparison {
        objects: objects.into_iter().map(|o| o.2).collect(),
        morphisms,
        colimit: col,
        homs,
    })
}

fn describe(a: &Functor) -> String {
    let t = a.target();
    let names: Vec<&str> = a.source().objects().map(|x| t.object_name(a.obj(x))).collect();
    format!("[{}]", names.join(", "))
}

/// Essential surjectivity and full faithfulness of the comparison, checked
/// against every functor `K → bicolim F` and every hom-set of the source.
pub fn analyze_comparison(k: &Arc<FinCat>, cmp: &Comparison, limit: usize) -> Result<(FunctorAnalysis, usize)> {
    let targets = all_functors(k, cmp.colimit.result(), limit)?;
    let mut out = FunctorAnalysis::default();
    for a in &targets {
        let hit = cmp
            .objects
            .iter()
            .any(|o| all_nat_trans(o, a).iter().any(NatTrans::is_invertible));
        if !hit {
            out.unreached.push(describe(a));
        }
    }
    let rh = cmp.homs.result();
    for x in rh.objects() {
        for y in rh.objects() {
            let mut image: Vec<&NatTrans> = rh.hom(x, y).iter().map(|&m| &cmp.morphisms[m]).collect();
            let n = image.len();
            image.sort_by(|a, b| a.components().cmp(b.components()));
            image.dedup();
            let pair = (rh.object_name(x).to_string(), rh.object_name(y).to_string());
            if image.len() != n {
                out.not_faithful.push(pair.clone());
            }
            if image.len() != all_nat_trans(&cmp.objects[x], &cmp.objects[y]).len() {
                out.not_full.push(pair);
            }
        }
    }
    Ok((out, targets.len()))
}

/// Builds and analyzes the canonical comparison for one diagram.
pub fn compact_report(k: &Arc<FinCat>, f: &CatPseudoFunctor) -> Result<CompactReport> {
    let cmp = canonical_comparison(k, f, FUNCTOR_LIMIT)?;
    let (comparison, n) = analyze_comparison(k, &cmp, FUNCTOR_LIMIT)?;
    Ok(CompactReport {
        colimit_of_homs: Summary::from(&**cmp.homs.result()),
        functors_into_colimit: n,
        comparison,
    })
}

/// Positive iff the canonical comparison functor is essentially surjective
/// and fully faithful for this diagram.
pub fn check_bicompact_against(k: &Arc<FinCat>, f: &CatPseudoFunctor) -> Result<Verdict> {
    let report = compact_report(k, f)?;
    let a = &report.comparison;
    Ok(if a.is_equivalence() {
        Verdict::positive(
            "bicompact against diagram",
            vec![Witness::Note {
                text: format!(
                    "comparison from {} objects onto {} functors is an equivalence",
                    report.colimit_of_homs.objects, report.functors_into_colimit
                ),
            }],
        )
    } else {
        let (condition, instance) = if let Some(y) = a.unreached.first() {
            ("essential surjectivity", vec![y.clone()])
        } else if let Some((x, y)) = a.not_full.first() {
            ("fullness", vec![x.clone(), y.clone()])
        } else {
            let (x, y) = &a.not_faithful[0];
            ("faithfulness", vec![x.clone(), y.clone()])
        };
        Verdict::negative(
            "bicompact against diagram",
            Counterexample {
                condition: condition.into(),
                instance,
                searched: report.colimit_of_homs.objects,
                detail: SCOPE_STATEMENT.into(),
            },
        )
    })
}
