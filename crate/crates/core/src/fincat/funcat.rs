use std::collections::HashMap;
use std::sync::Arc;

use super::search::{all_functors, all_nat_trans};
use super::{Check, FinCat, Functor, MorphismRecord, NatTrans};
use crate::error::{Error, Result};

/// `Fun(C, D)` together with the functors and transformations its objects
/// and morphisms stand for.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub cat: Arc<FinCat>,
    pub functors: Vec<Functor>,
    pub transformations: Vec<NatTrans>,
    by_maps: HashMap<(Vec<usize>, Vec<usize>), usize>,
    by_components: HashMap<(usize, usize, Vec<usize>), usize>,
}

impl FunctorCategory {
    /// Object index of a functor given by its maps.
    pub fn object_of(&self, f: &Functor) -> Option<usize> {
        self.by_maps
            .get(&(f.obj_map().to_vec(), f.mor_map().to_vec()))
            .copied()
    }

    /// Morphism index of a transformation between two listed functors.
    pub fn morphism_of(&self, t: &NatTrans) -> Option<usize> {
        let s = self.object_of(t.source())?;
        let u = self.object_of(t.target())?;
        self.by_components.get(&(s, u, t.components().to_vec())).copied()
    }
}

/// Enumerates `Fun(C, D)`; fails when more than `max_morphisms` natural
/// transformations would be produced.
pub fn functor_category(c: &Arc<FinCat>, d: &Arc<FinCat>, max_morphisms: usize) -> Result<FunctorCategory> {
    let functors = all_functors(c, d, max_morphisms)?;
    let mut by_maps = HashMap::new();
    for (i, f) in functors.iter().enumerate() {
        by_maps.insert((f.obj_map().to_vec(), f.mor_map().to_vec()), i);
    }
    let mut transformations = Vec::new();
    let mut records = Vec::new();
    let mut by_components = HashMap::new();
    let mut identity = vec![0; functors.len()];
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for t in all_nat_trans(f, g) {
                if transformations.len() >= max_morphisms {
                    return Err(Error::SizeGuard {
                        what: "functor category morphisms".into(),
                        limit: max_morphisms,
                    });
                }
                let k = transformations.len();
                if i == j && t.is_identity() {
                    identity[i] = k;
                }
                by_components.insert((i, j, t.components().to_vec()), k);
                records.push(MorphismRecord {
                    name: format!("nt{k}"),
                    dom: i,
                    cod: j,
                });
                transformations.push(t);
            }
        }
    }
    let objects = (0..functors.len()).map(|i| format!("F{i}")).collect();
    let cat = FinCat::from_parts(
        objects,
        records,
        identity,
        |b, a| {
            let (ta, tb) = (&transformations[a], &transformations[b]);
            let comps: Vec<usize> = ta
                .components()
                .iter()
                .zip(tb.components())
                .map(|(&x, &y)| d.comp(y, x))
                .collect();
            let s = by_maps[&(ta.source().obj_map().to_vec(), ta.source().mor_map().to_vec())];
            let u = by_maps[&(tb.target().obj_map().to_vec(), tb.target().mor_map().to_vec())];
            by_components.get(&(s, u, comps)).copied()
        },
        Check::Structural,
    )?;
    Ok(FunctorCategory {
        cat: Arc::new(cat),
        functors,
        transformations,
        by_maps,
        by_components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::check_equivalence;

    #[test]
    fn fun_from_point_is_target() {
        let d = Arc::new(FinCat::walking_arrow());
        let fc = functor_category(&Arc::new(FinCat::terminal()), &d, 1000).unwrap();
        assert!(check_equivalence(&fc.cat, &d).holds());
    }

    #[test]
    fn fun_arrow_into_terminal() {
        let fc = functor_category(&Arc::new(FinCat::walking_arrow()), &Arc::new(FinCat::terminal()), 1000).unwrap();
        assert_eq!(fc.cat.n_objects(), 1);
        assert_eq!(fc.cat.n_morphisms(), 1);
    }

    #[test]
    fn fun_discrete_two_into_itself() {
        let d2 = Arc::new(FinCat::discrete(&["a", "b"]));
        let fc = functor_category(&d2, &d2, 1000).unwrap();
        assert_eq!(fc.cat.n_objects(), 4);
        assert_eq!(fc.cat.n_morphisms(), 4);
        assert!(fc.cat.check_axioms().is_empty());
    }

    #[test]
    fn size_guard_fails_loudly() {
        let d = Arc::new(FinCat::discrete(&["a", "b", "c"]));
        assert!(functor_category(&d, &d, 10).is_err());
    }
}
