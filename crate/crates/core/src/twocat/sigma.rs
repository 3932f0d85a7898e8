use std::collections::BTreeSet;

use super::TwoCat;
use crate::error::{Error, Result};

/// A distinguished class of 1-cells of a 2-category. No closure condition
/// is imposed at construction; see [`sigma_closure`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SigmaClass {
    members: BTreeSet<usize>,
}

impl SigmaClass {
    pub fn new(owner: &TwoCat, members: impl IntoIterator<Item = usize>) -> Result<SigmaClass> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&s| s >= owner.n1()) {
            return Err(Error::Precondition(format!("1-cell index {bad} outside the 2-category")));
        }
        Ok(SigmaClass { members })
    }

    pub fn all(owner: &TwoCat) -> SigmaClass {
        SigmaClass {
            members: owner.one_cells().collect(),
        }
    }

    pub fn identities(owner: &TwoCat) -> SigmaClass {
        SigmaClass {
            members: owner.zero_cells().map(|i| owner.id1(i)).collect(),
        }
    }

    pub fn from_names(owner: &TwoCat, names: &[&str]) -> Result<SigmaClass> {
        let ids = names
            .iter()
            .map(|n| owner.one_id(n).ok_or_else(|| Error::unknown("1-cell", *n)))
            .collect::<Result<Vec<_>>>()?;
        SigmaClass::new(owner, ids)
    }

    pub fn contains(&self, s: usize) -> bool {
        self.members.contains(&s)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &SigmaClass) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_all(&self, owner: &TwoCat) -> bool {
        self.members.len() == owner.n1()
    }

    pub fn names(&self, owner: &TwoCat) -> Vec<String> {
        self.members.iter().map(|&s| owner.one_name(s).to_string()).collect()
    }
}

/// Smallest superset of `s` containing identities and closed under
/// composition and under replacement along invertible 2-cells.
pub fn sigma_closure(owner: &TwoCat, s: &SigmaClass) -> SigmaClass {
    let mut members = s.members.clone();
    members.extend(owner.zero_cells().map(|i| owner.id1(i)));
    loop {
        let mut added = Vec::new();
        for &a in &members {
            for &b in owner.out1(owner.tgt(a)) {
                if members.contains(&b) {
                    let c = owner.h1(b, a);
                    if !members.contains(&c) {
                        added.push(c);
                    }
                }
            }
            let (i, j) = (owner.src(a), owner.tgt(a));
            for &d in owner.hom(i, j) {
                if !members.contains(&d)
                    && owner
                        .cells_between(a, d)
                        .iter()
                        .any(|&x| owner.is_invertible2(x))
                {
                    added.push(d);
                }
            }
        }
        if added.is_empty() {
            return SigmaClass { members };
        }
        members.extend(added);
    }
}

/// 1-cells that are equivalences internal to the 2-category: some `g` in
/// the other direction with invertible 2-cells `g∘f ≅ 1` and `f∘g ≅ 1`.
pub fn internal_equivalences(owner: &TwoCat) -> Vec<usize> {
    let iso_to = |x: usize, y: usize| {
        x == y
            || owner
                .cells_between(x, y)
                .iter()
                .any(|&a| owner.is_invertible2(a))
    };
    owner
        .one_cells()
        .filter(|&f| {
            let (i, j) = (owner.src(f), owner.tgt(f));
            owner.hom(j, i).iter().any(|&g| {
                iso_to(owner.h1(g, f), owner.id1(i)) && iso_to(owner.h1(f, g), owner.id1(j))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twocat::TwoCatBuilder;

    fn iso_pair() -> TwoCat {
        TwoCatBuilder::new()
            .zero_cells(&["a", "b"])
            .one_cell("u", "a", "b")
            .one_cell("v", "a", "b")
            .two_cell("phi", "u", "v")
            .two_cell("psi", "v", "u")
            .vcomp("psi", "phi", "1_u")
            .vcomp("phi", "psi", "1_v")
            .build()
            .unwrap()
    }

    #[test]
    fn empty_closes_to_identities() {
        let c = iso_pair();
        let cl = sigma_closure(&c, &SigmaClass::default());
        assert_eq!(cl, SigmaClass::identities(&c));
    }

    #[test]
    fn closure_adds_invertible_mates_and_is_idempotent() {
        let c = iso_pair();
        let s = SigmaClass::from_names(&c, &["u"]).unwrap();
        let cl = sigma_closure(&c, &s);
        assert!(cl.contains(c.one_id("v").unwrap()));
        assert_eq!(sigma_closure(&c, &cl), cl);
        assert!(SigmaClass::all(&c) == sigma_closure(&c, &SigmaClass::all(&c)));
    }

    #[test]
    fn identities_are_internal_equivalences() {
        let c = iso_pair();
        let eq = internal_equivalences(&c);
        assert_eq!(eq, vec![c.id1(0), c.id1(1)]);
    }
}
