use std::sync::Arc;

use crate::error::{Error, Result, Violation};
use crate::fincat::{all_nat_trans, FinCat, Functor, NatTrans};
use crate::twocat::{CatPseudoFunctor, SigmaClass};

use super::quotient::ColimitCat;

/// An oplax cocone under a Cat-valued pseudofunctor with invertible cells
/// on Σ: `legs[i]: F(i) → target` and `cells[d]: legs[j]∘F(d) ⇒ legs[i]`.
#[derive(Clone, Debug)]
pub struct SigmaCocone {
    pub target: Arc<FinCat>,
    pub legs: Vec<Functor>,
    pub cells: Vec<NatTrans>,
}

fn v(axiom: &str, detail: String) -> Violation {
    Violation {
        axiom: axiom.into(),
        detail,
    }
}

impl SigmaCocone {
    pub fn violations(&self, f: &CatPseudoFunctor, sigma: &SigmaClass) -> Vec<Violation> {
        let c = &**f.source();
        let mut out = Vec::new();
        if self.legs.len() != c.n0() || self.cells.len() != c.n1() {
            out.push(v("shape", "one leg per 0-cell and one cell per 1-cell".into()));
            return out;
        }
        for i in c.zero_cells() {
            let l = &self.legs[i];
            if **l.source() != **f.fiber(i) || **l.target() != *self.target {
                out.push(v("leg typing", format!("leg at {}", c.zero_name(i))));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for d in c.one_cells() {
            let (i, j) = (c.src(d), c.tgt(d));
            let cell = &self.cells[d];
            if *cell.source() != self.legs[j].after(f.on1(d)) || *cell.target() != self.legs[i] {
                out.push(v("cell typing", format!("cell at {}", c.one_name(d))));
            } else if sigma.contains(d) && !cell.is_invertible() {
                out.push(v("Σ-invertibility", format!("cell at {} is not invertible", c.one_name(d))));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let t = &*self.target;
        for beta in c.two_cells() {
            let (d, d2) = (c.dom2(beta), c.cod2(beta));
            let lj = &self.legs[c.tgt(d)];
            for a in f.fiber(c.src(d)).objects() {
                let lhs = t.comp(self.cells[d2].component(a), lj.mor(f.on2(beta).component(a)));
                if lhs != self.cells[d].component(a) {
                    out.push(v("2-cell compatibility", format!("{} at {}", c.two_name(beta), a)));
                }
            }
        }
        for d in c.one_cells() {
            for &e in c.out1(c.tgt(d)) {
                let ed = c.h1(e, d);
                let lk = &self.legs[c.tgt(e)];
                for a in f.fiber(c.src(d)).objects() {
                    let lhs = t.comp(self.cells[ed].component(a), lk.mor(f.mu_at(d, e, a)));
                    let rhs = t.comp(self.cells[d].component(a), self.cells[e].component(f.on1(d).obj(a)));
                    if lhs != rhs {
                        out.push(v(
                            "composition compatibility",
                            format!("{} after {} at {}", c.one_name(e), c.one_name(d), a),
                        ));
                    }
                }
            }
        }
        for i in c.zero_cells() {
            let one = c.id1(i);
            for a in f.fiber(i).objects() {
                let lhs = t.comp(self.cells[one].component(a), self.legs[i].mor(f.iota_at(i, a)));
                if !t.is_identity(lhs) {
                    out.push(v("unit compatibility", format!("{} at {}", c.zero_name(i), a)));
                }
            }
        }
        out
    }
}

impl ColimitCat {
    /// The colimit's own cocone.
    pub fn cocone_data(&self) -> SigmaCocone {
        SigmaCocone {
            target: self.result().clone(),
            legs: self.legs().to_vec(),
            cells: self.transitions().to_vec(),
        }
    }

    pub fn cocone_violations(&self) -> Vec<Violation> {
        self.cocone_data().violations(self.diagram(), self.sigma())
    }
}

/// The functor out of a colimit induced by a σ-cocone, with the
/// comparison cells `K∘q_i ⇒ legs[i]`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub functor: Functor,
    pub comparisons: Vec<NatTrans>,
}

pub fn factor_cocone(col: &ColimitCat, cone: &SigmaCocone) -> Result<Factorization> {
    let f = col.diagram();
    let c = &**col.index();
    let bad = cone.violations(f, col.sigma());
    if !bad.is_empty() {
        return Err(Error::Invalid(bad));
    }
    let r = col.result();
    let t = &*cone.target;
    let obj: Vec<usize> = r
        .objects()
        .map(|x| {
            let p = col.representative(r.id(x));
            cone.legs[p.src.0].obj(p.src.1)
        })
        .collect();
    let mut mor = Vec::with_capacity(r.n_morphisms());
    for m in r.morphisms() {
        let mut value = None;
        for p in col.members(m) {
            let back = t.inverse(cone.cells[p.left].component(p.src.1)).ok_or_else(|| {
                Error::Precondition(format!("cocone cell at {} is not invertible", c.one_name(p.left)))
            })?;
            let x = t.comp(
                cone.cells[p.right].component(p.tgt.1),
                t.comp(cone.legs[p.apex].mor(p.cell), back),
            );
            match value {
                None => value = Some(x),
                Some(y) if y != x => {
                    return Err(Error::Construction(format!(
                        "cocone does not respect the quotient at {}",
                        r.morphism_name(m)
                    )))
                }
                _ => {}
            }
        }
        mor.push(value.expect("classes are nonempty"));
    }
    let functor = Functor::new(r.clone(), cone.target.clone(), obj, mor)?;
    let comparisons = c
        .zero_cells()
        .map(|i| {
            let k = functor.after(col.cocone(i));
            let components = f.fiber(i).objects().map(|a| t.id(cone.legs[i].obj(a))).collect();
            NatTrans::new(k, cone.legs[i].clone(), components)
        })
        .collect::<Result<Vec<_>>>()?;
    for d in c.one_cells() {
        for a in f.fiber(c.src(d)).objects() {
            if functor.mor(col.transition(d).component(a)) != cone.cells[d].component(a) {
                return Err(Error::Construction(format!(
                    "induced functor does not carry the transition at {} to the cocone cell",
                    c.one_name(d)
                )));
            }
        }
    }
    Ok(Factorization { functor, comparisons })
}

/// An invertible transformation between two functors out of the same
/// colimit, if one exists.
pub fn compare_factorizations(k: &Functor, k2: &Functor) -> Option<NatTrans> {
    all_nat_trans(k, k2).into_iter().find(NatTrans::is_invertible)
}

/// The functor `colim F → colim G` induced by functors `maps[i]: F(i) → G(i)`
/// that commute strictly with the diagrams.
pub fn induced_functor(from: &ColimitCat, to: &ColimitCat, maps: &[Functor]) -> Result<Functor> {
    let (f, g) = (from.diagram(), to.diagram());
    let c = &**from.index();
    if maps.len() != c.n0() || to.index().n0() != c.n0() {
        return Err(Error::Precondition("one map per 0-cell of a shared index".into()));
    }
    for d in c.one_cells() {
        if g.on1(d).after(&maps[c.src(d)]) != maps[c.tgt(d)].after(f.on1(d)) {
            return Err(Error::Precondition(format!("maps do not commute with {}", c.one_name(d))));
        }
    }
    let legs: Vec<Functor> = c.zero_cells().map(|i| to.cocone(i).after(&maps[i])).collect();
    let cells = c
        .one_cells()
        .map(|d| {
            let i = c.src(d);
            let components = f
                .fiber(i)
                .objects()
                .map(|a| to.transition(d).component(maps[i].obj(a)))
                .collect();
            NatTrans::new(legs[c.tgt(d)].after(f.on1(d)), legs[i].clone(), components)
        })
        .collect::<Result<Vec<_>>>()?;
    let cone = SigmaCocone {
        target: to.result().clone(),
        legs,
        cells,
    };
    Ok(factor_cocone(from, &cone)?.functor)
}
