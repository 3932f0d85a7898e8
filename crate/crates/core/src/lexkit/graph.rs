use crate::fincat::FinCat;

/// A finite diagram shaped by a graph: `nodes[k]` are objects, each edge
/// `(s, t, m)` a morphism `nodes[s] → nodes[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDiagram {
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize, usize)>,
}

impl GraphDiagram {
    pub fn describe(&self, c: &FinCat) -> String {
        let nodes: Vec<&str> = self.nodes.iter().map(|&x| c.object_name(x)).collect();
        let edges: Vec<&str> = self.edges.iter().map(|&(_, _, m)| c.morphism_name(m)).collect();
        format!("nodes [{}] edges [{}]", nodes.join(", "), edges.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: usize,
    pub legs: Vec<usize>,
}

/// All cones over `g` with apex `x`.
fn cones_from(c: &FinCat, g: &GraphDiagram, x: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in &g.nodes {
        out = out
            .into_iter()
            .flat_map(|legs| {
                c.hom(x, n).iter().map(move |&l| {
                    let mut next = legs.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
    }
    out.retain(|legs| g.edges.iter().all(|&(s, t, m)| c.comp(m, legs[s]) == legs[t]));
    out
}

fn is_cone(c: &FinCat, g: &GraphDiagram, cone: &Cone) -> bool {
    cone.legs.len() == g.nodes.len()
        && cone
            .legs
            .iter()
            .zip(&g.nodes)
            .all(|(&l, &n)| c.dom(l) == cone.apex && c.cod(l) == n)
        && g.edges.iter().all(|&(s, t, m)| c.comp(m, cone.legs[s]) == cone.legs[t])
}

/// Every cone factors uniquely through `cone`.
pub fn is_limit(c: &FinCat, g: &GraphDiagram, cone: &Cone) -> bool {
    is_cone(c, g, cone)
        && c.objects().all(|x| {
            let mut induced: Vec<Vec<usize>> = c
                .hom(x, cone.apex)
                .iter()
                .map(|&h| cone.legs.iter().map(|&l| c.comp(l, h)).collect())
                .collect();
            let n = induced.len();
            induced.sort();
            induced.dedup();
            induced.len() == n && n == cones_from(c, g, x).len()
        })
}

pub fn limit_of(c: &FinCat, g: &GraphDiagram) -> Option<Cone> {
    c.objects().find_map(|apex| {
        cones_from(c, g, apex)
            .into_iter()
            .map(|legs| Cone { apex, legs })
            .find(|cone| is_limit(c, g, cone))
    })
}

/// Every graph diagram with at most `max_nodes` nodes, listed in
/// non-decreasing order, and at most `max_edges` non-identity edges.
pub fn enumerate_diagrams(c: &FinCat, max_nodes: usize, max_edges: usize) -> Vec<GraphDiagram> {
    let mut node_lists: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_nodes {
        let mut next = Vec::new();
        for list in &frontier {
            let from = list.last().copied().unwrap_or(0);
            for x in from..c.n_objects() {
                let mut l: Vec<usize> = list.clone();
                l.push(x);
                next.push(l);
            }
        }
        node_lists.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for nodes in node_lists {
        let mut candidates = Vec::new();
        for (s, &a) in nodes.iter().enumerate() {
            for (t, &b) in nodes.iter().enumerate() {
                for &m in c.hom(a, b) {
                    if !c.is_identity(m) {
                        candidates.push((s, t, m));
                    }
                }
            }
        }
        subsets(&candidates, max_edges, 0, &mut Vec::new(), &mut |edges| {
            out.push(GraphDiagram {
                nodes: nodes.clone(),
                edges: edges.to_vec(),
            })
        });
    }
    out
}

fn subsets<T: Copy>(items: &[T], max: usize, from: usize, acc: &mut Vec<T>, visit: &mut dyn FnMut(&[T])) {
    visit(acc);
    if acc.len() == max {
        return;
    }
    for k in from..items.len() {
        acc.push(items[k]);
        subsets(items, max, k + 1, acc, visit);
        acc.pop();
    }
}
