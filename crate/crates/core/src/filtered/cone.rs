use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::twocat::{Counterexample, SigmaClass, TwoCat, Verdict, Witness};

/// An oplax cocone with Σ-legs over the full sub-2-category on `objects`:
/// `legs[x]: x → apex` and, per 1-cell `d: x → y` among them,
/// `cells[d]: leg_y∘d ⇒ leg_x`, invertible when `d ∈ Σ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaCone {
    pub apex: usize,
    pub legs: Vec<(usize, usize)>,
    pub cells: Vec<(usize, usize)>,
}

const NODE_LIMIT: usize = 2_000_000;

/// Searches for a σ-cone with legs in Σ over the full sub-2-category on
/// `objects`. `Ok(None)` means the search space was exhausted.
pub fn find_sigma_cone(c: &TwoCat, sigma: &SigmaClass, objects: &[usize]) -> Result<Option<SigmaCone>> {
    let mut pos = vec![usize::MAX; c.n0()];
    for (k, &x) in objects.iter().enumerate() {
        pos[x] = k;
    }
    let ones: Vec<usize> = c
        .one_cells()
        .filter(|&d| pos[c.src(d)] != usize::MAX && pos[c.tgt(d)] != usize::MAX)
        .collect();
    let mut local = vec![usize::MAX; c.n1()];
    for (k, &d) in ones.iter().enumerate() {
        local[d] = k;
    }
    let mut nodes = 0usize;
    for apex in c.zero_cells() {
        let choices: Vec<Vec<usize>> = objects
            .iter()
            .map(|&x| c.hom(x, apex).iter().copied().filter(|&s| sigma.contains(s)).collect())
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let mut pick = vec![0usize; objects.len()];
        loop {
            let legs: Vec<usize> = pick.iter().zip(&choices).map(|(&p, ch)| ch[p]).collect();
            let mut theta = vec![usize::MAX; ones.len()];
            if assign(c, sigma, &ones, &local, &pos, &legs, &mut theta, 0, &mut nodes)? {
                return Ok(Some(SigmaCone {
                    apex,
                    legs: objects.iter().copied().zip(legs).collect(),
                    cells: ones.iter().copied().zip(theta).collect(),
                }));
            }
            // odometer over leg choices
            let mut p = 0;
            while p < pick.len() {
                pick[p] += 1;
                if pick[p] < choices[p].len() {
                    break;
                }
                pick[p] = 0;
                p += 1;
            }
            if p == pick.len() {
                break;
            }
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn assign(
    c: &TwoCat,
    sigma: &SigmaClass,
    ones: &[usize],
    local: &[usize],
    pos: &[usize],
    legs: &[usize],
    theta: &mut Vec<usize>,
    k: usize,
    nodes: &mut usize,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > NODE_LIMIT {
        return Err(Error::SizeGuard {
            what: "σ-cone search nodes".into(),
            limit: NODE_LIMIT,
        });
    }
    if k == ones.len() {
        return Ok(true);
    }
    let d = ones[k];
    let (x, y) = (c.src(d), c.tgt(d));
    let (lx, ly) = (legs[pos[x]], legs[pos[y]]);
    let dom = c.h1(ly, d);
    let candidates: Vec<usize> = if c.is_identity1(d) {
        vec![c.id2(lx)]
    } else {
        c.cells_between(dom, lx)
            .iter()
            .copied()
            .filter(|&a| !sigma.contains(d) || c.is_invertible2(a))
            .collect()
    };
    for a in candidates {
        theta[k] = a;
        if consistent(c, ones, local, pos, legs, theta, k) && assign(c, sigma, ones, local, pos, legs, theta, k + 1, nodes)? {
            return Ok(true);
        }
    }
    theta[k] = usize::MAX;
    Ok(false)
}

/// Checks every constraint that mentions `ones[k]` and otherwise only
/// assigned cells.
fn consistent(c: &TwoCat, ones: &[usize], local: &[usize], pos: &[usize], legs: &[usize], theta: &[usize], k: usize) -> bool {
    let set = |d: usize| theta[local[d]] != usize::MAX;
    let th = |d: usize| theta[local[d]];
    let leg = |z: usize| legs[pos[z]];
    let d = ones[k];
    // composition: θ_{e∘f} = θ_f · (θ_e * f)
    for (m, &f) in ones.iter().enumerate() {
        for (n, &e) in ones.iter().enumerate() {
            if c.tgt(f) != c.src(e) {
                continue;
            }
            let ef = c.h1(e, f);
            if ![m, n, local[ef]].contains(&k) || !(set(f) && set(e) && set(ef)) {
                continue;
            }
            if th(ef) != c.v(th(f), c.whisker_r(th(e), f)) {
                return false;
            }
        }
    }
    // 2-cells: θ_{d'} · (leg_y * β) = θ_d for β: d ⇒ d'
    for &e in ones {
        if c.src(e) != c.src(d) || c.tgt(e) != c.tgt(d) {
            continue;
        }
        for (a, b) in [(d, e), (e, d)] {
            if !(set(a) && set(b)) {
                continue;
            }
            for &beta in c.cells_between(a, b) {
                if c.v(th(b), c.whisker_l(leg(c.tgt(a)), beta)) != th(a) {
                    return false;
                }
            }
        }
    }
    true
}

/// Searches σ-cones over the full sub-2-categories on every nonempty set
/// of at most `max_size` 0-cells.
pub fn sigma_cones_for_subsets(c: &TwoCat, sigma: &SigmaClass, max_size: usize) -> Result<Verdict> {
    let n = c.n0();
    if n > 16 {
        return Err(Error::SizeGuard {
            what: "0-cells for subset enumeration".into(),
            limit: 16,
        });
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize > max_size {
            continue;
        }
        let objs: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let names: Vec<String> = objs.iter().map(|&x| c.zero_name(x).to_string()).collect();
        match find_sigma_cone(c, sigma, &objs)? {
            Some(cone) => out.push(Witness::Note {
                text: format!("{{{}}} under {}", names.join(","), c.zero_name(cone.apex)),
            }),
            None => {
                return Ok(Verdict::negative(
                    "sigma-cones",
                    Counterexample {
                        condition: "σ-cone".into(),
                        instance: names,
                        searched: n,
                        detail: "no apex admits Σ-legs with coherent cells".into(),
                    },
                ))
            }
        }
    }
    Ok(Verdict::positive("sigma-cones", out))
}
