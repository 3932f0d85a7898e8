use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::TwoCat;
use crate::error::{Error, Result, Violation};

/// A strict 2-functor between finite 2-categories.
#[derive(Clone, Debug)]
pub struct TwoFunctor {
    source: Arc<TwoCat>,
    target: Arc<TwoCat>,
    on0: Vec<usize>,
    on1: Vec<usize>,
    on2: Vec<usize>,
}

impl TwoFunctor {
    pub fn new(
        source: Arc<TwoCat>,
        target: Arc<TwoCat>,
        on0: Vec<usize>,
        on1: Vec<usize>,
        on2: Vec<usize>,
    ) -> Result<TwoFunctor> {
        let f = TwoFunctor {
            source,
            target,
            on0,
            on1,
            on2,
        };
        let v = f.violations();
        if v.is_empty() {
            Ok(f)
        } else {
            Err(Error::Invalid(v))
        }
    }

    pub fn identity(c: Arc<TwoCat>) -> TwoFunctor {
        TwoFunctor {
            on0: c.zero_cells().collect(),
            on1: c.one_cells().collect(),
            on2: c.two_cells().collect(),
            source: c.clone(),
            target: c,
        }
    }

    pub fn violations(&self) -> Vec<Violation> {
        let (s, t) = (&*self.source, &*self.target);
        let mut v = Vec::new();
        if self.on0.len() != s.n0() || self.on1.len() != s.n1() || self.on2.len() != s.n2() {
            v.push(Violation::new("2-functor", "maps do not cover the source"));
            return v;
        }
        if self.on0.iter().any(|&x| x >= t.n0())
            || self.on1.iter().any(|&x| x >= t.n1())
            || self.on2.iter().any(|&x| x >= t.n2())
        {
            v.push(Violation::new("2-functor", "maps leave the target"));
            return v;
        }
        for c in s.one_cells() {
            let d = self.on1[c];
            if t.src(d) != self.on0[s.src(c)] || t.tgt(d) != self.on0[s.tgt(c)] {
                v.push(Violation::new("2-functor typing", format!("1-cell {}", s.one_name(c))));
            }
        }
        for a in s.two_cells() {
            let b = self.on2[a];
            if t.dom2(b) != self.on1[s.dom2(a)] || t.cod2(b) != self.on1[s.cod2(a)] {
                v.push(Violation::new("2-functor typing", format!("2-cell {}", s.two_name(a))));
            }
        }
        if !v.is_empty() {
            return v;
        }
        for i in s.zero_cells() {
            if self.on1[s.id1(i)] != t.id1(self.on0[i]) {
                v.push(Violation::new("2-functor identities", format!("at {}", s.zero_name(i))));
            }
        }
        for c in s.one_cells() {
            if self.on2[s.id2(c)] != t.id2(self.on1[c]) {
                v.push(Violation::new("2-functor identities", format!("at {}", s.one_name(c))));
            }
            for &d in s.out1(s.tgt(c)) {
                if self.on1[s.h1(d, c)] != t.h1(self.on1[d], self.on1[c]) {
                    v.push(Violation::new(
                        "2-functor composition",
                        format!("{} ∘ {}", s.one_name(d), s.one_name(c)),
                    ));
                }
            }
        }
        for a in s.two_cells() {
            for b in s.cells_from(s.cod2(a)) {
                if self.on2[s.v(b, a)] != t.v(self.on2[b], self.on2[a]) {
                    v.push(Violation::new(
                        "2-functor vertical composition",
                        format!("{} · {}", s.two_name(b), s.two_name(a)),
                    ));
                }
            }
            for b in s.two_cells_from(s.tgt(s.dom2(a))) {
                if self.on2[s.h2(b, a)] != t.h2(self.on2[b], self.on2[a]) {
                    v.push(Violation::new(
                        "2-functor horizontal composition",
                        format!("{} * {}", s.two_name(b), s.two_name(a)),
                    ));
                }
            }
        }
        v
    }

    pub fn source(&self) -> &Arc<TwoCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TwoCat> {
        &self.target
    }

    pub fn on0(&self, i: usize) -> usize {
        self.on0[i]
    }

    pub fn on1(&self, s: usize) -> usize {
        self.on1[s]
    }

    pub fn on2(&self, a: usize) -> usize {
        self.on2[a]
    }

    pub fn from_doc(doc: &TwoFunctorDoc, source: Arc<TwoCat>, target: Arc<TwoCat>) -> Result<TwoFunctor> {
        fn look<'a>(
            m: &'a BTreeMap<String, String>,
            key: &str,
            kind: &'static str,
        ) -> Result<&'a String> {
            m.get(key)
                .ok_or_else(|| Error::invalid("2-functor", format!("{kind} `{key}` is unmapped")))
        }
        let on0 = source
            .zero_cells()
            .map(|i| {
                let n = look(&doc.on0, source.zero_name(i), "0-cell")?;
                target.zero_id(n).ok_or_else(|| Error::unknown("0-cell", n.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let on1 = source
            .one_cells()
            .map(|s| match doc.on1.get(source.one_name(s)) {
                Some(n) => target.one_id(n).ok_or_else(|| Error::unknown("1-cell", n.clone())),
                None if source.is_identity1(s) => Ok(target.id1(on0[source.src(s)])),
                None => Err(Error::invalid("2-functor", format!("1-cell `{}` is unmapped", source.one_name(s)))),
            })
            .collect::<Result<Vec<_>>>()?;
        let on2 = source
            .two_cells()
            .map(|a| match doc.on2.get(source.two_name(a)) {
                Some(n) => target.two_id(n).ok_or_else(|| Error::unknown("2-cell", n.clone())),
                None if source.is_identity2(a) => Ok(target.id2(on1[source.dom2(a)])),
                None => Err(Error::invalid("2-functor", format!("2-cell `{}` is unmapped", source.two_name(a)))),
            })
            .collect::<Result<Vec<_>>>()?;
        TwoFunctor::new(source, target, on0, on1, on2)
    }

    pub fn to_doc(&self) -> TwoFunctorDoc {
        let (s, t) = (&*self.source, &*self.target);
        TwoFunctorDoc {
            on0: s
                .zero_cells()
                .map(|i| (s.zero_name(i).into(), t.zero_name(self.on0[i]).into()))
                .collect(),
            on1: s
                .one_cells()
                .map(|c| (s.one_name(c).into(), t.one_name(self.on1[c]).into()))
                .collect(),
            on2: s
                .two_cells()
                .map(|a| (s.two_name(a).into(), t.two_name(self.on2[a]).into()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct TwoFunctorDoc {
    pub on0: BTreeMap<String, String>,
    #[serde(default)]
    pub on1: BTreeMap<String, String>,
    #[serde(default)]
    pub on2: BTreeMap<String, String>,
}
