//! σ-cofinal 2-functors between corpus indices, each with a diagram on
//! its target.

use std::sync::Arc;

use super::indices;
use crate::twocat::{TwoCat, TwoFunctor};

/// A recorded cofinal map: names of source, target, the Σ-classes on both
/// sides and a diagram over the target.
pub struct CofinalMap {
    pub source: &'static str,
    pub target: &'static str,
    pub map: TwoFunctor,
    pub sigma: &'static str,
    pub target_sigma: &'static str,
    pub diagram: &'static str,
}

/// The monotone map of locally discrete posets with the given object map.
pub fn poset_map(source: &Arc<TwoCat>, target: &Arc<TwoCat>, on0: &[&str]) -> TwoFunctor {
    let on0: Vec<usize> = on0.iter().map(|n| target.zero_id(n).expect("0-cell")).collect();
    let on1: Vec<usize> = source
        .one_cells()
        .map(|s| target.hom(on0[source.src(s)], on0[source.tgt(s)])[0])
        .collect();
    let on2 = source.two_cells().map(|a| target.id2(on1[source.dom2(a)])).collect();
    TwoFunctor::new(source.clone(), target.clone(), on0, on1, on2).expect("monotone map")
}

pub fn all() -> Vec<(&'static str, CofinalMap)> {
    let point = Arc::new(indices::terminal());
    let top = Arc::new(indices::poset_top());
    let chain2 = Arc::new(indices::chain2());
    let chain3 = Arc::new(indices::chain3());
    let lax = Arc::new(indices::lax_pair());
    vec![
        (
            "point_at_top",
            CofinalMap {
                source: "terminal",
                target: "poset_top",
                map: poset_map(&point, &top, &["top"]),
                sigma: "all",
                target_sigma: "all",
                diagram: "constant_arrow",
            },
        ),
        (
            "chain_tail",
            CofinalMap {
                source: "chain2",
                target: "chain3",
                map: poset_map(&chain2, &chain3, &["1", "2"]),
                sigma: "all",
                target_sigma: "all",
                diagram: "chain_inclusions",
            },
        ),
        (
            "lax_pair_identity",
            CofinalMap {
                source: "lax_pair",
                target: "lax_pair",
                map: TwoFunctor::identity(lax),
                sigma: "proper",
                target_sigma: "proper",
                diagram: "lax_pair_collapse",
            },
        ),
    ]
}
