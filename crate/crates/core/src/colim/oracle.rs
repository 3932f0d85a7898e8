//! Brute-force premorphism classes, independent of the union-find quotient.

use std::collections::{HashMap, VecDeque};

use super::{ColimitCat, Premorphism};
use crate::twocat::CatPseudoFunctor;

/// Closure of the premorphism relation by breadth-first search
/// over an explicit adjacency list.
pub fn naive_classes(f: &CatPseudoFunctor, legs: &dyn Fn(usize) -> bool) -> (Vec<Premorphism>, Vec<usize>) {
    let c = f.source();
    let mut all = Vec::new();
    for j in c.zero_cells() {
        for i1 in c.zero_cells() {
            for i2 in c.zero_cells() {
                for &s in c.hom(i1, j) {
                    if !legs(s) {
                        continue;
                    }
                    for &d in c.hom(i2, j) {
                        for a1 in f.fiber(i1).objects() {
                            for a2 in f.fiber(i2).objects() {
                                for &cell in f.fiber(j).hom(f.on1(s).obj(a1), f.on1(d).obj(a2)) {
                                    all.push(Premorphism {
                                        src: (i1, a1),
                                        tgt: (i2, a2),
                                        apex: j,
                                        left: s,
                                        right: d,
                                        cell,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let pos: HashMap<Premorphism, usize> = all.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let mut adj = vec![Vec::new(); all.len()];
    let mut edge = |x: usize, y: &Premorphism| {
        if let Some(&k) = pos.get(y) {
            adj[x].push(k);
            adj[k].push(x);
        }
    };
    for (k, p) in all.iter().enumerate() {
        let fj = f.fiber(p.apex);
        for &t in c.out1(p.apex) {
            if !legs(t) {
                continue;
            }
            let fk = f.fiber(c.tgt(t));
            let moved = fk.comp(
                fk.comp(f.mu(p.right, t).component(p.tgt.1), f.on1(t).mor(p.cell)),
                fk.inverse(f.mu(p.left, t).component(p.src.1)).unwrap(),
            );
            edge(
                k,
                &Premorphism {
                    apex: c.tgt(t),
                    left: c.h1(t, p.left),
                    right: c.h1(t, p.right),
                    cell: moved,
                    ..*p
                },
            );
        }
        for beta in c.two_cells() {
            if c.cod2(beta) == p.left && legs(c.dom2(beta)) {
                let cell = fj.comp(p.cell, f.on2(beta).component(p.src.1));
                edge(k, &Premorphism { left: c.dom2(beta), cell, ..*p });
            }
            if c.dom2(beta) == p.right {
                let cell = fj.comp(f.on2(beta).component(p.tgt.1), p.cell);
                edge(k, &Premorphism { right: c.cod2(beta), cell, ..*p });
            }
        }
    }
    let mut label = vec![usize::MAX; all.len()];
    let mut next = 0;
    for start in 0..all.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        label[start] = next;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if label[y] == usize::MAX {
                    label[y] = next;
                    queue.push_back(y);
                }
            }
        }
        next += 1;
    }
    (all, label)
}

pub fn same_partition(col: &ColimitCat, all: &[Premorphism], label: &[usize]) -> bool {
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut back: HashMap<usize, usize> = HashMap::new();
    for (p, &l) in all.iter().zip(label) {
        let Some(m) = col.class_of(p) else { return false };
        if *seen.entry(l).or_insert(m) != m || *back.entry(m).or_insert(l) != l {
            return false;
        }
    }
    true
}

