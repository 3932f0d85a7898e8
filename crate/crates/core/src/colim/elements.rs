use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::fincat::Check;
use crate::twocat::{CatPseudoFunctor, OneCell, SigmaClass, TwoCat, TwoCatParts, TwoCell, TwoFunctor};

/// The Grothendieck construction `∫F` of a Cat-valued pseudofunctor.
///
/// 0-cells are pairs `(i, a)`, 1-cells `(f, φ: F(f)a → a')`, and 2-cells
/// over `α: f ⇒ f'` are those with `φ'∘F(α)_a = φ`.
#[derive(Clone, Debug)]
pub struct ElementsCat {
    pub base: Arc<TwoCat>,
    pub total: Arc<TwoCat>,
    pub projection: TwoFunctor,
    /// 1-cells whose fiber component is invertible.
    pub opcartesian: SigmaClass,
    objects: Vec<(usize, usize)>,
    ones: Vec<(usize, usize, usize)>,
    object_index: HashMap<(usize, usize), usize>,
    one_index: HashMap<(usize, usize, usize), usize>,
}

impl ElementsCat {
    /// `(i, a)` of a 0-cell.
    pub fn object(&self, x: usize) -> (usize, usize) {
        self.objects[x]
    }

    pub fn object_id(&self, i: usize, a: usize) -> Option<usize> {
        self.object_index.get(&(i, a)).copied()
    }

    /// `(f, a, φ)` of a 1-cell out of `(src f, a)`.
    pub fn one_cell(&self, u: usize) -> (usize, usize, usize) {
        self.ones[u]
    }

    pub fn one_cell_id(&self, f: usize, a: usize, phi: usize) -> Option<usize> {
        self.one_index.get(&(f, a, phi)).copied()
    }

    pub fn is_opcartesian(&self, u: usize) -> bool {
        self.opcartesian.contains(u)
    }
}

pub fn elements_category(f: &CatPseudoFunctor) -> Result<ElementsCat> {
    let base = f.source().clone();
    let b = &*base;

    let mut objects = Vec::new();
    let mut object_index = HashMap::new();
    let mut zero = Vec::new();
    for i in b.zero_cells() {
        let fi = f.fiber(i);
        for a in fi.objects() {
            object_index.insert((i, a), objects.len());
            objects.push((i, a));
            zero.push(format!("{}:{}", b.zero_name(i), fi.object_name(a)));
        }
    }

    let mut ones = Vec::new();
    let mut one_index = HashMap::new();
    let mut one = Vec::new();
    let mut by_base: Vec<Vec<usize>> = vec![Vec::new(); b.n1()];
    for g in b.one_cells() {
        let (i, j) = (b.src(g), b.tgt(g));
        let (fi, fj) = (f.fiber(i), f.fiber(j));
        let fg = f.on1(g);
        for a in fi.objects() {
            for &phi in fj.outgoing(fg.obj(a)) {
                let k = ones.len();
                one_index.insert((g, a, phi), k);
                ones.push((g, a, phi));
                by_base[g].push(k);
                one.push(OneCell {
                    name: format!("({}|{}|{})", b.one_name(g), fi.object_name(a), fj.morphism_name(phi)),
                    src: object_index[&(i, a)],
                    tgt: object_index[&(j, fj.cod(phi))],
                });
            }
        }
    }

    // a 2-cell is determined by its base cell and its codomain 1-cell
    let mut two = Vec::new();
    let mut twos: Vec<(usize, usize)> = Vec::new();
    let mut two_index: HashMap<(usize, usize), usize> = HashMap::new();
    for alpha in b.two_cells() {
        let (g, g2) = (b.dom2(alpha), b.cod2(alpha));
        let fj = f.fiber(b.tgt(g));
        for &u2 in &by_base[g2] {
            let (_, a, phi2) = ones[u2];
            let phi = fj.comp(phi2, f.on2(alpha).component(a));
            let u = one_index[&(g, a, phi)];
            two_index.insert((alpha, u2), two.len());
            twos.push((alpha, u2));
            two.push(TwoCell {
                name: format!("[{}|{}|{}]", b.two_name(alpha), f.fiber(b.src(g)).object_name(a), fj.morphism_name(phi2)),
                dom: u,
                cod: u2,
            });
        }
    }

    let id1: Vec<usize> = objects
        .iter()
        .map(|&(i, a)| one_index[&(b.id1(i), a, f.iota_inv_at(i, a))])
        .collect();
    let id2: Vec<usize> = (0..ones.len())
        .map(|u| two_index[&(b.id2(ones[u].0), u)])
        .collect();

    let compose1 = |v: usize, u: usize| -> usize {
        let (g, a, phi) = ones[u];
        let (h, _, psi) = ones[v];
        let fk = f.fiber(b.tgt(h));
        let cell = fk.comp(psi, fk.comp(f.on1(h).mor(phi), f.mu_inv_at(g, h, a)));
        one_index[&(b.h1(h, g), a, cell)]
    };
    let mut hcomp1 = HashMap::new();
    for u in 0..ones.len() {
        for &v in &out_of(&one, one[u].tgt) {
            hcomp1.insert((v, u), compose1(v, u));
        }
    }
    let mut vcomp = HashMap::new();
    let mut hcomp2 = HashMap::new();
    for x in 0..two.len() {
        let (alpha, _) = twos[x];
        for y in 0..two.len() {
            let (beta, v2) = twos[y];
            if two[y].dom == two[x].cod {
                vcomp.insert((y, x), two_index[&(b.v(beta, alpha), v2)]);
            }
            if one[two[y].dom].src == one[two[x].dom].tgt {
                let cod = hcomp1[&(two[y].cod, two[x].cod)];
                hcomp2.insert((y, x), two_index[&(b.h2(beta, alpha), cod)]);
            }
        }
    }

    let total = Arc::new(TwoCat::from_parts(
        TwoCatParts {
            zero,
            one,
            two,
            id1,
            id2,
            vcomp,
            hcomp1,
            hcomp2,
        },
        Check::Structural,
    )?);
    let projection = TwoFunctor::new(
        total.clone(),
        base.clone(),
        objects.iter().map(|&(i, _)| i).collect(),
        ones.iter().map(|&(g, _, _)| g).collect(),
        twos.iter().map(|&(alpha, _)| alpha).collect(),
    )?;
    let opcartesian = SigmaClass::new(
        &total,
        (0..ones.len()).filter(|&u| {
            let (g, _, phi) = ones[u];
            f.fiber(b.tgt(g)).is_iso(phi)
        }),
    )?;
    Ok(ElementsCat {
        base,
        total,
        projection,
        opcartesian,
        objects,
        ones,
        object_index,
        one_index,
    })
}

fn out_of(one: &[OneCell], x: usize) -> Vec<usize> {
    one.iter()
        .enumerate()
        .filter(|(_, c)| c.src == x)
        .map(|(k, _)| k)
        .collect()
}
