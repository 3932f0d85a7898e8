//! Decision procedures for bifilteredness, σ-filteredness and σ-cofinality,
//! with the triangle and trivialization lemmas as executable checks.

mod cone;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::twocat::{sigma_closure, Counterexample, SigmaClass, TwoCat, TwoFunctor, Verdict, Witness};

pub use cone::{find_sigma_cone, sigma_cones_for_subsets, SigmaCone};

/// 1-cells out of `j`, identity first, then identifier order.
pub(crate) fn extensions(c: &TwoCat, j: usize) -> impl Iterator<Item = usize> + '_ {
    let id = c.id1(j);
    std::iter::once(id).chain(c.out1(j).iter().copied().filter(move |&f| f != id))
}

fn require_nonempty(c: &TwoCat) -> Result<()> {
    if c.n0() == 0 {
        Err(Error::Precondition("index 2-category has no 0-cells".into()))
    } else {
        Ok(())
    }
}

fn span(c: &TwoCat, a: usize, b: usize, sigma: &dyn Fn(usize) -> bool, searched: &mut usize) -> Option<Witness> {
    for k in c.zero_cells() {
        for &s in c.hom(a, k).iter().filter(|&&s| sigma(s)) {
            if let Some(&t) = c.hom(b, k).iter().find(|&&t| sigma(t)) {
                *searched += 1;
                return Some(Witness::Span {
                    a: c.zero_name(a).into(),
                    b: c.zero_name(b).into(),
                    apex: c.zero_name(k).into(),
                    left: c.one_name(s).into(),
                    right: c.one_name(t).into(),
                });
            }
        }
        *searched += 1;
    }
    None
}

fn spans_condition(c: &TwoCat, sigma: &dyn Fn(usize) -> bool, name: &str) -> Verdict {
    let mut out = Vec::new();
    for a in c.zero_cells() {
        for b in a + 1..c.n0() {
            let mut searched = 0;
            match span(c, a, b, sigma, &mut searched) {
                Some(w) => out.push(w),
                None => {
                    return Verdict::negative(
                        name,
                        Counterexample {
                            condition: "span".into(),
                            instance: vec![c.zero_name(a).into(), c.zero_name(b).into()],
                            searched,
                            detail: format!("no span from {} and {}", c.zero_name(a), c.zero_name(b)),
                        },
                    )
                }
            }
        }
    }
    Verdict::positive(name, out)
}

/// Finds `f` out of the common target, allowed by `ext`, and a 2-cell
/// `f∘d ⇒ f∘e` accepted by `cell_ok`.
fn insertion(
    c: &TwoCat,
    d: usize,
    e: usize,
    ext: &dyn Fn(usize) -> bool,
    cell_ok: &dyn Fn(usize) -> bool,
    searched: &mut usize,
) -> Option<(usize, usize)> {
    for f in extensions(c, c.tgt(d)).filter(|&f| ext(f)) {
        let (fd, fe) = (c.h1(f, d), c.h1(f, e));
        for &a in c.cells_between(fd, fe) {
            *searched += 1;
            if cell_ok(a) {
                return Some((f, a));
            }
        }
        *searched += 1;
    }
    None
}

fn equifier(c: &TwoCat, a: usize, b: usize, ext: &dyn Fn(usize) -> bool, searched: &mut usize) -> Option<usize> {
    let j = c.tgt(c.dom2(a));
    extensions(c, j).filter(|&f| ext(f)).find(|&f| {
        *searched += 1;
        c.whisker_l(f, a) == c.whisker_l(f, b)
    })
}

/// Parallel 2-cell pairs `a < b` whose common codomain satisfies `cod_ok`.
fn parallel_two_cells(c: &TwoCat, cod_ok: &dyn Fn(usize) -> bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in c.two_cells() {
        if !cod_ok(c.cod2(a)) {
            continue;
        }
        for &b in c.cells_between(c.dom2(a), c.cod2(a)) {
            if b > a {
                out.push((a, b));
            }
        }
    }
    out
}

/// Decides whether `c` is bifiltered.
pub fn check_bifiltered(c: &TwoCat) -> Result<Verdict> {
    require_nonempty(c)?;
    let all = |_: usize| true;
    let c1 = spans_condition(c, &all, "span condition");

    let mut w2 = Vec::new();
    let mut fail2 = None;
    'outer: for d in c.one_cells() {
        for &e in c.hom(c.src(d), c.tgt(d)) {
            if e <= d {
                continue;
            }
            let mut searched = 0;
            match insertion(c, d, e, &all, &|a| c.is_invertible2(a), &mut searched) {
                Some((f, a)) => w2.push(Witness::Insertion {
                    first: c.one_name(d).into(),
                    second: c.one_name(e).into(),
                    extend: c.one_name(f).into(),
                    cell: c.two_name(a).into(),
                    invertible: true,
                }),
                None => {
                    fail2 = Some(Counterexample {
                        condition: "insertion".into(),
                        instance: vec![c.one_name(d).into(), c.one_name(e).into()],
                        searched,
                        detail: "no invertible 2-cell after any extension".into(),
                    });
                    break 'outer;
                }
            }
        }
    }
    let c2 = match fail2 {
        Some(x) => Verdict::negative("insertion condition", x),
        None => Verdict::positive("insertion condition", w2),
    };

    let c3 = equification_condition(c, &all, &all, "equification condition");
    Ok(Verdict::all("bifiltered", vec![c1, c2, c3]))
}

fn equification_condition(
    c: &TwoCat,
    cod_ok: &dyn Fn(usize) -> bool,
    ext: &dyn Fn(usize) -> bool,
    name: &str,
) -> Verdict {
    let mut w = Vec::new();
    for (a, b) in parallel_two_cells(c, cod_ok) {
        let mut searched = 0;
        match equifier(c, a, b, ext, &mut searched) {
            Some(f) => w.push(Witness::Equification {
                first: c.two_name(a).into(),
                second: c.two_name(b).into(),
                extend: c.one_name(f).into(),
            }),
            None => {
                return Verdict::negative(
                    name,
                    Counterexample {
                        condition: "equification".into(),
                        instance: vec![c.two_name(a).into(), c.two_name(b).into()],
                        searched,
                        detail: "no extension equalizes the pair".into(),
                    },
                )
            }
        }
    }
    Verdict::positive(name, w)
}

/// Decides whether `(c, sigma)` is a σ-filtered pair. `sigma` is used as
/// given; close it first with [`sigma_closure`] if required.
///
/// The verdict has four parts: spans, insertion, the invertible-insertion
/// strengthening for pairs inside Σ, and equification.
pub fn check_sigma_filtered(c: &TwoCat, sigma: &SigmaClass) -> Result<Verdict> {
    require_nonempty(c)?;
    let in_s = |s: usize| sigma.contains(s);
    let c1 = spans_condition(c, &in_s, "span condition");

    let mut w2 = Vec::new();
    let mut w2i = Vec::new();
    let mut fail2 = None;
    let mut fail2i = None;
    for s in sigma.members() {
        for &d in c.hom(c.src(s), c.tgt(s)) {
            if d == s {
                continue;
            }
            let mk = |f: usize, a: usize, inv: bool| Witness::Insertion {
                first: c.one_name(d).into(),
                second: c.one_name(s).into(),
                extend: c.one_name(f).into(),
                cell: c.two_name(a).into(),
                invertible: inv,
            };
            if fail2.is_none() {
                let mut searched = 0;
                match insertion(c, d, s, &in_s, &|_| true, &mut searched) {
                    Some((f, a)) => w2.push(mk(f, a, c.is_invertible2(a))),
                    None => {
                        fail2 = Some(Counterexample {
                            condition: "insertion".into(),
                            instance: vec![c.one_name(d).into(), c.one_name(s).into()],
                            searched,
                            detail: "no Σ-extension carries a 2-cell between the pair".into(),
                        })
                    }
                }
            }
            if in_s(d) && fail2i.is_none() {
                let mut searched = 0;
                match insertion(c, d, s, &in_s, &|a| c.is_invertible2(a), &mut searched) {
                    Some((f, a)) => w2i.push(mk(f, a, true)),
                    None => {
                        fail2i = Some(Counterexample {
                            condition: "invertible insertion".into(),
                            instance: vec![c.one_name(d).into(), c.one_name(s).into()],
                            searched,
                            detail: "both cells lie in Σ but no Σ-extension carries an invertible 2-cell".into(),
                        })
                    }
                }
            }
        }
    }
    let c2 = match fail2 {
        Some(x) => Verdict::negative("insertion condition", x),
        None => Verdict::positive("insertion condition", w2),
    };
    let c2i = match fail2i {
        Some(x) => Verdict::negative("invertible insertion inside Σ", x),
        None => Verdict::positive("invertible insertion inside Σ", w2i),
    };
    let c3 = equification_condition(c, &in_s, &in_s, "equification condition");
    Ok(Verdict::all("sigma-filtered", vec![c1, c2, c2i, c3]))
}

/// λ-filteredness degenerates on finite data: checks that every family of
/// `size` 0-cells admits a cocone of Σ-arrows. For `size ≥ 2` this is
/// implied by the binary span condition.
pub fn check_span_families(c: &TwoCat, sigma: &SigmaClass, size: usize) -> Result<Verdict> {
    require_nonempty(c)?;
    let n = c.n0();
    let mut family = vec![0usize; size];
    let mut out = Vec::new();
    loop {
        let mut found = None;
        for k in c.zero_cells() {
            let legs: Option<Vec<usize>> = family
                .iter()
                .map(|&x| c.hom(x, k).iter().copied().find(|&s| sigma.contains(s)))
                .collect();
            if let Some(legs) = legs {
                found = Some((k, legs));
                break;
            }
        }
        let names: Vec<String> = family.iter().map(|&x| c.zero_name(x).to_string()).collect();
        match found {
            Some((k, legs)) => out.push(Witness::Note {
                text: format!(
                    "{} → {} via {}",
                    names.join(","),
                    c.zero_name(k),
                    legs.iter().map(|&s| c.one_name(s)).collect::<Vec<_>>().join(",")
                ),
            }),
            None => {
                return Ok(Verdict::negative(
                    "span families",
                    Counterexample {
                        condition: "family cocone".into(),
                        instance: names,
                        searched: n,
                        detail: "no common Σ-target".into(),
                    },
                ))
            }
        }
        // next non-decreasing family
        let mut p = size;
        loop {
            if p == 0 {
                return Ok(Verdict::positive("span families", out));
            }
            p -= 1;
            if family[p] + 1 < n {
                family[p] += 1;
                for q in p + 1..size {
                    family[q] = family[p];
                }
                break;
            }
        }
    }
}

/// Witness of the triangle lemma for `d: i → i'`: Σ-arrows `s: i → j`,
/// `s': i' → j` and `phi: s'∘d ⇒ s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub d: usize,
    pub s: usize,
    pub s_prime: usize,
    pub phi: usize,
}

impl Triangle {
    pub fn to_witness(&self, c: &TwoCat) -> Witness {
        Witness::Triangle {
            arrow: c.one_name(self.d).into(),
            left: c.one_name(self.s).into(),
            right: c.one_name(self.s_prime).into(),
            phi: c.two_name(self.phi).into(),
        }
    }

    /// Re-checks typing and Σ-membership.
    pub fn validate(&self, c: &TwoCat, sigma: &SigmaClass) -> bool {
        sigma.contains(self.s)
            && sigma.contains(self.s_prime)
            && c.src(self.s) == c.src(self.d)
            && c.src(self.s_prime) == c.tgt(self.d)
            && c.tgt(self.s) == c.tgt(self.s_prime)
            && c.dom2(self.phi) == c.h1(self.s_prime, self.d)
            && c.cod2(self.phi) == self.s
    }
}

/// Completes `d` into a triangle by the lemma's two steps: a Σ-span
/// `t, t'` of its endpoints, then a Σ-insertion for the pair `(t'∘d, t)`.
pub fn triangle_completion(c: &TwoCat, sigma: &SigmaClass, d: usize) -> Result<Triangle> {
    let (i, i2) = (c.src(d), c.tgt(d));
    if c.is_identity1(d) && sigma.contains(d) {
        return Ok(Triangle {
            d,
            s: d,
            s_prime: d,
            phi: c.id2(d),
        });
    }
    let mut spans_seen = 0;
    for k in c.zero_cells() {
        for &t in c.hom(i, k).iter().filter(|&&t| sigma.contains(t)) {
            for &t2 in c.hom(i2, k).iter().filter(|&&t| sigma.contains(t)) {
                spans_seen += 1;
                let t2d = c.h1(t2, d);
                let mut searched = 0;
                if let Some((t3, phi)) = insertion(c, t2d, t, &|f| sigma.contains(f), &|_| true, &mut searched) {
                    return Ok(Triangle {
                        d,
                        s: c.h1(t3, t),
                        s_prime: c.h1(t3, t2),
                        phi,
                    });
                }
            }
        }
    }
    let step = if spans_seen == 0 { "span" } else { "insertion" };
    Err(Error::Precondition(format!(
        "triangle for {} fails at the {step} step ({spans_seen} spans tried)",
        c.one_name(d)
    )))
}

/// Decides σ-cofinality of a strict 2-functor `f: I → J` relative to
/// `sigma` in `I` and `sigma2` in `J`.
pub fn check_sigma_cofinal(f: &TwoFunctor, sigma: &SigmaClass, sigma2: &SigmaClass) -> Result<Verdict> {
    let (ci, cj) = (&**f.source(), &**f.target());
    require_nonempty(ci)?;
    // (1) reach
    let mut w1 = Vec::new();
    let mut fail1 = None;
    for j in cj.zero_cells() {
        let hit = ci.zero_cells().find_map(|i| {
            cj.hom(j, f.on0(i))
                .iter()
                .copied()
                .find(|&s| sigma2.contains(s))
                .map(|s| (i, s))
        });
        match hit {
            Some((i, s)) => w1.push(Witness::Reach {
                object: cj.zero_name(j).into(),
                preimage: ci.zero_name(i).into(),
                arrow: cj.one_name(s).into(),
            }),
            None => {
                fail1 = Some(Counterexample {
                    condition: "reach".into(),
                    instance: vec![cj.zero_name(j).into()],
                    searched: ci.n0(),
                    detail: "no Σ'-arrow into the image".into(),
                });
                break;
            }
        }
    }
    let c1 = match fail1 {
        Some(x) => Verdict::negative("reach condition", x),
        None => Verdict::positive("reach condition", w1),
    };

    // (2) insertion along images
    let mut w2 = Vec::new();
    let mut w2i = Vec::new();
    let mut fail2 = None;
    let mut fail2i = None;
    let search = |d: usize, t: usize, i: usize, inv: bool, searched: &mut usize| {
        extensions(ci, i).filter(|&s| sigma.contains(s)).find_map(|s| {
            let fs = f.on1(s);
            let (a, b) = (cj.h1(fs, d), cj.h1(fs, t));
            *searched += 1;
            cj.cells_between(a, b)
                .iter()
                .copied()
                .find(|&x| !inv || cj.is_invertible2(x))
                .map(|x| (s, x))
        })
    };
    for i in ci.zero_cells() {
        let fi = f.on0(i);
        for j in cj.zero_cells() {
            for &t in cj.hom(j, fi).iter().filter(|&&t| sigma2.contains(t)) {
                for &d in cj.hom(j, fi) {
                    if d == t {
                        continue;
                    }
                    let mk = |s: usize, x: usize, inv: bool| Witness::CofinalInsertion {
                        first: cj.one_name(d).into(),
                        second: cj.one_name(t).into(),
                        along: ci.one_name(s).into(),
                        cell: cj.two_name(x).into(),
                        invertible: inv,
                    };
                    let inst = || vec![cj.one_name(d).into(), cj.one_name(t).into(), ci.zero_name(i).into()];
                    if fail2.is_none() {
                        let mut searched = 0;
                        match search(d, t, i, false, &mut searched) {
                            Some((s, x)) => w2.push(mk(s, x, cj.is_invertible2(x))),
                            None => {
                                fail2 = Some(Counterexample {
                                    condition: "cofinal insertion".into(),
                                    instance: inst(),
                                    searched,
                                    detail: "no Σ-arrow whose image carries a 2-cell between the pair".into(),
                                })
                            }
                        }
                    }
                    if sigma2.contains(d) && fail2i.is_none() {
                        let mut searched = 0;
                        match search(d, t, i, true, &mut searched) {
                            Some((s, x)) => w2i.push(mk(s, x, true)),
                            None => {
                                fail2i = Some(Counterexample {
                                    condition: "invertible cofinal insertion".into(),
                                    instance: inst(),
                                    searched,
                                    detail: "no Σ-arrow whose image carries an invertible 2-cell".into(),
                                })
                            }
                        }
                    }
                }
            }
        }
    }
    let c2 = match fail2 {
        Some(x) => Verdict::negative("cofinal insertion condition", x),
        None => Verdict::positive("cofinal insertion condition", w2),
    };
    let c2i = match fail2i {
        Some(x) => Verdict::negative("invertible cofinal insertion inside Σ'", x),
        None => Verdict::positive("invertible cofinal insertion inside Σ'", w2i),
    };

    // (3) equification along images
    let mut w3 = Vec::new();
    let mut fail3 = None;
    'outer: for i in ci.zero_cells() {
        let fi = f.on0(i);
        for j in cj.zero_cells() {
            for &t in cj.hom(j, fi).iter().filter(|&&t| sigma2.contains(t)) {
                for &d in cj.hom(j, fi) {
                    let cells = cj.cells_between(d, t);
                    for (p, &a) in cells.iter().enumerate() {
                        for &b in &cells[p + 1..] {
                            let mut searched = 0;
                            let hit = extensions(ci, i).filter(|&s| sigma.contains(s)).find(|&s| {
                                searched += 1;
                                cj.whisker_l(f.on1(s), a) == cj.whisker_l(f.on1(s), b)
                            });
                            match hit {
                                Some(s) => w3.push(Witness::CofinalEquification {
                                    first: cj.two_name(a).into(),
                                    second: cj.two_name(b).into(),
                                    along: ci.one_name(s).into(),
                                }),
                                None => {
                                    fail3 = Some(Counterexample {
                                        condition: "cofinal equification".into(),
                                        instance: vec![cj.two_name(a).into(), cj.two_name(b).into(), ci.zero_name(i).into()],
                                        searched,
                                        detail: "no Σ-arrow whose image equalizes the pair".into(),
                                    });
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let c3 = match fail3 {
        Some(x) => Verdict::negative("cofinal equification condition", x),
        None => Verdict::positive("cofinal equification condition", w3),
    };
    Ok(Verdict::all("sigma-cofinal", vec![c1, c2, c2i, c3]))
}

/// Both sides of the trivialization lemma for `(c, sigma)`, computed with
/// the closure of `sigma`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrivializationReport {
    pub sigma_filtered: Verdict,
    pub restricted_bifiltered: Verdict,
    pub inclusion_cofinal: Verdict,
}

impl TrivializationReport {
    pub fn left(&self) -> bool {
        self.sigma_filtered.outcome
    }

    pub fn right(&self) -> bool {
        self.restricted_bifiltered.outcome && self.inclusion_cofinal.outcome
    }

    pub fn agrees(&self) -> bool {
        self.left() == self.right()
    }
}

pub fn trivialization_check(c: &Arc<TwoCat>, sigma: &SigmaClass) -> Result<TrivializationReport> {
    let closed = sigma_closure(c, sigma);
    let (sub, incl) = c.restrict_one_cells(&closed)?;
    Ok(TrivializationReport {
        sigma_filtered: check_sigma_filtered(c, &closed)?,
        restricted_bifiltered: check_bifiltered(&sub)?,
        inclusion_cofinal: check_sigma_cofinal(&incl, &SigmaClass::all(&sub), &closed)?,
    })
}

/// Re-checks every witness of a verdict produced by the checkers in this
/// module against `c`, the class `sigma` and (for cofinality) `f`.
///
/// For cofinality verdicts pass the functor and the target class as `f`;
/// `sigma` is then the class in the source.
pub fn replay(
    verdict: &Verdict,
    c: &TwoCat,
    sigma: &SigmaClass,
    f: Option<(&TwoFunctor, &SigmaClass)>,
) -> std::result::Result<(), String> {
    let z = |n: &str| c.zero_id(n).ok_or_else(|| format!("unknown 0-cell {n}"));
    let o = |n: &str| c.one_id(n).ok_or_else(|| format!("unknown 1-cell {n}"));
    let t = |n: &str| c.two_id(n).ok_or_else(|| format!("unknown 2-cell {n}"));
    let restricted = verdict.property != "bifiltered";
    let in_s = |s: usize| !restricted || sigma.contains(s);
    for w in verdict.all_witnesses() {
        let ok = match w {
            Witness::Span { a, b, apex, left, right } => {
                let (a, b, k, l, r) = (z(a)?, z(b)?, z(apex)?, o(left)?, o(right)?);
                c.src(l) == a && c.src(r) == b && c.tgt(l) == k && c.tgt(r) == k && in_s(l) && in_s(r)
            }
            Witness::Insertion { first, second, extend, cell, invertible } => {
                let (d, e, g, a) = (o(first)?, o(second)?, o(extend)?, t(cell)?);
                c.src(g) == c.tgt(d)
                    && c.dom2(a) == c.h1(g, d)
                    && c.cod2(a) == c.h1(g, e)
                    && in_s(g)
                    && (!invertible || c.is_invertible2(a))
            }
            Witness::Equification { first, second, extend } => {
                let (a, b, g) = (t(first)?, t(second)?, o(extend)?);
                c.src(g) == c.tgt(c.dom2(a)) && c.whisker_l(g, a) == c.whisker_l(g, b) && in_s(g)
            }
            Witness::Triangle { arrow, left, right, phi } => Triangle {
                d: o(arrow)?,
                s: o(left)?,
                s_prime: o(right)?,
                phi: t(phi)?,
            }
            .validate(c, sigma),
            Witness::Reach { .. } | Witness::CofinalInsertion { .. } | Witness::CofinalEquification { .. } => {
                let Some((f, sigma2)) = f else {
                    return Err("cofinality witness without a functor".into());
                };
                replay_cofinal(w, f, sigma, sigma2)?
            }
            Witness::Note { .. } => true,
        };
        if !ok {
            return Err(format!("witness does not re-validate: {w:?}"));
        }
    }
    Ok(())
}

fn replay_cofinal(w: &Witness, f: &TwoFunctor, sigma: &SigmaClass, sigma2: &SigmaClass) -> std::result::Result<bool, String> {
    let (ci, cj) = (&**f.source(), &**f.target());
    let oj = |n: &str| cj.one_id(n).ok_or_else(|| format!("unknown 1-cell {n}"));
    let oi = |n: &str| ci.one_id(n).ok_or_else(|| format!("unknown 1-cell {n}"));
    let tj = |n: &str| cj.two_id(n).ok_or_else(|| format!("unknown 2-cell {n}"));
    Ok(match w {
        Witness::Reach { object, preimage, arrow } => {
            let j = cj.zero_id(object).ok_or("unknown 0-cell")?;
            let i = ci.zero_id(preimage).ok_or("unknown 0-cell")?;
            let s = oj(arrow)?;
            cj.src(s) == j && cj.tgt(s) == f.on0(i) && sigma2.contains(s)
        }
        Witness::CofinalInsertion { first, second, along, cell, invertible } => {
            let (d, t, s, a) = (oj(first)?, oj(second)?, oi(along)?, tj(cell)?);
            let fs = f.on1(s);
            sigma.contains(s)
                && cj.src(fs) == cj.tgt(d)
                && cj.dom2(a) == cj.h1(fs, d)
                && cj.cod2(a) == cj.h1(fs, t)
                && (!invertible || cj.is_invertible2(a))
        }
        Witness::CofinalEquification { first, second, along } => {
            let (a, b, s) = (tj(first)?, tj(second)?, oi(along)?);
            let fs = f.on1(s);
            sigma.contains(s) && cj.src(fs) == cj.tgt(cj.dom2(a)) && cj.whisker_l(fs, a) == cj.whisker_l(fs, b)
        }
        _ => true,
    })
}

#[cfg(test)]
mod tests;
