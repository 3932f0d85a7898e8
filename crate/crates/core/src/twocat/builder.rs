use std::collections::HashMap;

use super::{OneCell, TwoCat, TwoCatParts, TwoCell};
use crate::error::{Error, Result};
use crate::fincat::Check;

/// Incremental construction of small 2-categories.
///
/// Identity 1-cells `1_<i>` and identity 2-cells `1_<s>` are added
/// automatically, as are all composites that involve identities. Every
/// other composite must be recorded.
#[derive(Default)]
pub struct TwoCatBuilder {
    zero: Vec<String>,
    one: Vec<(String, String, String)>,
    two: Vec<(String, String, String)>,
    vcomp: Vec<(String, String, String)>,
    hcomp1: Vec<(String, String, String)>,
    hcomp2: Vec<(String, String, String)>,
}

impl TwoCatBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zero_cells<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.zero.extend(names.iter().map(|s| s.as_ref().to_string()));
        self
    }

    pub fn one_cell(mut self, name: &str, src: &str, tgt: &str) -> Self {
        self.one.push((name.into(), src.into(), tgt.into()));
        self
    }

    pub fn two_cell(mut self, name: &str, dom: &str, cod: &str) -> Self {
        self.two.push((name.into(), dom.into(), cod.into()));
        self
    }

    /// Records `b · a = c`.
    pub fn vcomp(mut self, b: &str, a: &str, c: &str) -> Self {
        self.vcomp.push((b.into(), a.into(), c.into()));
        self
    }

    /// Records `t ∘ s = u`.
    pub fn hcomp1(mut self, t: &str, s: &str, u: &str) -> Self {
        self.hcomp1.push((t.into(), s.into(), u.into()));
        self
    }

    /// Records `b * a = c`.
    pub fn hcomp2(mut self, b: &str, a: &str, c: &str) -> Self {
        self.hcomp2.push((b.into(), a.into(), c.into()));
        self
    }

    pub fn build(self) -> Result<TwoCat> {
        let z: HashMap<&str, usize> = self.zero.iter().enumerate().map(|(k, n)| (n.as_str(), k)).collect();
        let mut one: Vec<OneCell> = self
            .zero
            .iter()
            .enumerate()
            .map(|(k, n)| OneCell {
                name: format!("1_{n}"),
                src: k,
                tgt: k,
            })
            .collect();
        for (n, s, t) in &self.one {
            let (Some(&s), Some(&t)) = (z.get(s.as_str()), z.get(t.as_str())) else {
                return Err(Error::invalid("dangling", format!("1-cell `{n}` names unknown 0-cells")));
            };
            one.push(OneCell { name: n.clone(), src: s, tgt: t });
        }
        let o: HashMap<String, usize> = one.iter().enumerate().map(|(k, c)| (c.name.clone(), k)).collect();
        let mut two: Vec<TwoCell> = one
            .iter()
            .enumerate()
            .map(|(k, c)| TwoCell {
                name: format!("1_{}", c.name),
                dom: k,
                cod: k,
            })
            .collect();
        for (n, d, c) in &self.two {
            let (Some(&d), Some(&c)) = (o.get(d), o.get(c)) else {
                return Err(Error::invalid("dangling", format!("2-cell `{n}` names unknown 1-cells")));
            };
            two.push(TwoCell { name: n.clone(), dom: d, cod: c });
        }
        let t: HashMap<String, usize> = two.iter().enumerate().map(|(k, c)| (c.name.clone(), k)).collect();
        let id1: Vec<usize> = (0..self.zero.len()).collect();
        let id2: Vec<usize> = (0..one.len()).collect();

        let look = |m: &HashMap<String, usize>, n: &str, kind: &'static str| {
            m.get(n).copied().ok_or_else(|| Error::unknown(kind, n))
        };
        let mut vcomp = HashMap::new();
        for (a, c) in two.iter().enumerate() {
            vcomp.insert((a, id2[c.dom]), a);
            vcomp.insert((id2[c.cod], a), a);
        }
        for (b, a, c) in &self.vcomp {
            vcomp.insert((look(&t, b, "2-cell")?, look(&t, a, "2-cell")?), look(&t, c, "2-cell")?);
        }
        let mut hcomp1 = HashMap::new();
        for (s, c) in one.iter().enumerate() {
            hcomp1.insert((s, id1[c.src]), s);
            hcomp1.insert((id1[c.tgt], s), s);
        }
        for (b, a, c) in &self.hcomp1 {
            hcomp1.insert((look(&o, b, "1-cell")?, look(&o, a, "1-cell")?), look(&o, c, "1-cell")?);
        }
        let mut hcomp2 = HashMap::new();
        for (a, c) in two.iter().enumerate() {
            let (i, j) = (one[c.dom].src, one[c.dom].tgt);
            hcomp2.insert((a, id2[id1[i]]), a);
            hcomp2.insert((id2[id1[j]], a), a);
        }
        for (&(tt, ss), &u) in &hcomp1 {
            hcomp2.insert((id2[tt], id2[ss]), id2[u]);
        }
        for (b, a, c) in &self.hcomp2 {
            hcomp2.insert((look(&t, b, "2-cell")?, look(&t, a, "2-cell")?), look(&t, c, "2-cell")?);
        }
        TwoCat::from_parts(
            TwoCatParts {
                zero: self.zero,
                one,
                two,
                id1,
                id2,
                vcomp,
                hcomp1,
                hcomp2,
            },
            Check::Full,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cellular_iso_hom() {
        let c = TwoCatBuilder::new()
            .zero_cells(&["a", "b"])
            .one_cell("u", "a", "b")
            .one_cell("v", "a", "b")
            .two_cell("phi", "u", "v")
            .two_cell("psi", "v", "u")
            .vcomp("psi", "phi", "1_u")
            .vcomp("phi", "psi", "1_v")
            .build()
            .unwrap();
        let phi = c.two_id("phi").unwrap();
        assert_eq!(c.inverse2(phi), c.two_id("psi"));
    }

    #[test]
    fn missing_vertical_composite_is_reported() {
        let err = TwoCatBuilder::new()
            .zero_cells(&["a", "b"])
            .one_cell("u", "a", "b")
            .one_cell("v", "a", "b")
            .two_cell("phi", "u", "v")
            .two_cell("psi", "v", "u")
            .build()
            .unwrap_err();
        assert!(!err.violations().is_empty());
    }
}
