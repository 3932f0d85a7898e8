//! Index 2-categories used by the bundled corpus.

use crate::fincat::FinCat;
use crate::twocat::{locally_discrete, SigmaClass, TwoCat, TwoCatBuilder};

pub fn terminal() -> TwoCat {
    TwoCat::terminal()
}

/// `a ≤ top`, `b ≤ top`.
pub fn poset_top() -> TwoCat {
    locally_discrete(&FinCat::poset(&["a", "b", "top"], |i, j| i == j || j == 2).expect("poset"))
}

/// `bot ≤ a`, `bot ≤ b`.
pub fn poset_bottom() -> TwoCat {
    locally_discrete(&FinCat::poset(&["bot", "a", "b"], |i, j| i == j || i == 0).expect("poset"))
}

/// `0 ≤ 1 ≤ 2`.
pub fn chain3() -> TwoCat {
    locally_discrete(&FinCat::poset(&["0", "1", "2"], |i, j| i <= j).expect("poset"))
}

/// `0 ≤ 1`.
pub fn chain2() -> TwoCat {
    locally_discrete(&FinCat::walking_arrow())
}

pub fn discrete2() -> TwoCat {
    locally_discrete(&FinCat::discrete(&["a", "b"]))
}

pub fn parallel_pair() -> TwoCat {
    locally_discrete(&FinCat::parallel_pair())
}

/// Two 0-cells whose only nontrivial hom is a walking isomorphism
/// `phi: u ≅ v` with inverse `psi`.
pub fn iso_hom() -> TwoCat {
    TwoCatBuilder::new()
        .zero_cells(&["a", "b"])
        .one_cell("u", "a", "b")
        .one_cell("v", "a", "b")
        .two_cell("phi", "u", "v")
        .two_cell("psi", "v", "u")
        .vcomp("psi", "phi", "1_u")
        .vcomp("phi", "psi", "1_v")
        .build()
        .expect("iso hom 2-category")
}

/// Two 0-cells `i`, `j`, 1-cells `s, d: i → j` and a non-invertible
/// `phi: d ⇒ s`. σ-filtered for Σ = {s} but not bifiltered.
pub fn lax_pair() -> TwoCat {
    TwoCatBuilder::new()
        .zero_cells(&["i", "j"])
        .one_cell("s", "i", "j")
        .one_cell("d", "i", "j")
        .two_cell("phi", "d", "s")
        .build()
        .expect("lax pair 2-category")
}

pub fn lax_pair_sigma(c: &TwoCat) -> SigmaClass {
    SigmaClass::from_names(c, &["s"]).expect("member")
}

/// One 0-cell with an idempotent `e` and a counit `eps: e ⇒ 1`.
/// σ-filtered for Σ = identities; `e` is absorbed by a Σ-triangle.
pub fn idempotent_counit() -> TwoCat {
    TwoCatBuilder::new()
        .zero_cells(&["i"])
        .one_cell("e", "i", "i")
        .hcomp1("e", "e", "e")
        .two_cell("eps", "e", "1_i")
        .hcomp2("1_e", "1_e", "1_e")
        .hcomp2("eps", "eps", "eps")
        .hcomp2("eps", "1_e", "1_e")
        .hcomp2("1_e", "eps", "1_e")
        .build()
        .expect("idempotent counit 2-category")
}

/// `top` reached from `a` by a Σ-arrow `s` and a loose arrow `d`, from `b`
/// by a Σ-arrow `t`; `phi: d ⇒ s`. σ-filtered for Σ = {s, t}.
pub fn lax_top() -> TwoCat {
    TwoCatBuilder::new()
        .zero_cells(&["a", "b", "top"])
        .one_cell("s", "a", "top")
        .one_cell("d", "a", "top")
        .one_cell("t", "b", "top")
        .two_cell("phi", "d", "s")
        .build()
        .expect("lax top 2-category")
}

pub fn lax_top_sigma(c: &TwoCat) -> SigmaClass {
    SigmaClass::from_names(c, &["s", "t"]).expect("members")
}

/// `lax_top` without its 2-cell: σ-filteredness fails at the pair `(d, s)`.
pub fn loose_top() -> TwoCat {
    TwoCatBuilder::new()
        .zero_cells(&["a", "b", "top"])
        .one_cell("s", "a", "top")
        .one_cell("d", "a", "top")
        .one_cell("t", "b", "top")
        .build()
        .expect("loose top 2-category")
}

/// All index 2-categories of the corpus with their named Σ-classes.
pub fn all() -> Vec<(&'static str, TwoCat, Vec<(&'static str, SigmaClass)>)> {
    let mut out = Vec::new();
    let mut push = |name: &'static str, c: TwoCat, extra: Vec<(&'static str, SigmaClass)>| {
        let mut sig = vec![("all", SigmaClass::all(&c)), ("identities", SigmaClass::identities(&c))];
        sig.extend(extra);
        out.push((name, c, sig));
    };
    push("terminal", terminal(), vec![]);
    push("poset_top", poset_top(), vec![]);
    push("poset_bottom", poset_bottom(), vec![]);
    push("chain3", chain3(), vec![]);
    push("discrete2", discrete2(), vec![]);
    push("parallel_pair", parallel_pair(), vec![]);
    push("iso_hom", iso_hom(), vec![]);
    let c = lax_pair();
    let s = lax_pair_sigma(&c);
    push("lax_pair", c, vec![("proper", s)]);
    push("idempotent_counit", idempotent_counit(), vec![]);
    let c = lax_top();
    let s = lax_top_sigma(&c);
    push("lax_top", c, vec![("proper", s)]);
    let c = loose_top();
    let s = SigmaClass::from_names(&c, &["s", "t"]).expect("members");
    push("loose_top", c, vec![("proper", s)]);
    out
}
