use std::sync::Arc;

use proptest::prelude::*;
use sigmacat::colim::bifiltered_bicolimit;
use sigmacat::fincat::{check_equivalence, FinCat};
use sigmacat::filtered::{check_bifiltered, check_sigma_filtered};
use sigmacat::lexkit::{enumerate_diagrams, finite_limit_witnesses, limit_of};
use sigmacat::twocat::{locally_discrete, CatPseudoFunctor, SigmaClass};

/// A partial order on `0..n` as a reflexive, transitive relation matrix.
fn order(n: usize, bits: &[bool]) -> Vec<Vec<bool>> {
    let mut leq = vec![vec![false; n]; n];
    let mut k = 0;
    for i in 0..n {
        leq[i][i] = true;
        for j in i + 1..n {
            leq[i][j] = bits[k];
            k += 1;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][m] && leq[m][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    leq
}

fn poset(leq: &[Vec<bool>]) -> FinCat {
    let names: Vec<String> = (0..leq.len()).map(|i| format!("p{i}")).collect();
    FinCat::poset(&names, |i, j| leq[i][j]).unwrap()
}

fn meet(leq: &[Vec<bool>], xs: &[usize]) -> Option<usize> {
    let n = leq.len();
    let lower: Vec<usize> = (0..n).filter(|&p| xs.iter().all(|&x| leq[p][x])).collect();
    lower.iter().copied().find(|&m| lower.iter().all(|&p| leq[p][m]))
}

fn directed(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    n > 0 && (0..n).all(|a| (0..n).all(|b| (0..n).any(|k| leq[a][k] && leq[b][k])))
}

fn posets() -> impl Strategy<Value = Vec<Vec<bool>>> {
    (1usize..=5).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |b| order(n, &b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn posets_are_valid_and_self_equivalent(leq in posets()) {
        let c = Arc::new(poset(&leq));
        prop_assert!(c.check_axioms().is_empty());
        prop_assert!(check_equivalence(&c, &c).holds());
    }

    #[test]
    fn bifiltered_posets_are_the_directed_ones(leq in posets()) {
        let c = locally_discrete(&poset(&leq));
        let b = check_bifiltered(&c).unwrap().outcome;
        prop_assert_eq!(b, directed(&leq));
        prop_assert_eq!(b, check_sigma_filtered(&c, &SigmaClass::all(&c)).unwrap().outcome);
    }

    #[test]
    fn lex_posets_have_top_and_meets(leq in posets()) {
        let n = leq.len();
        let has_top = (0..n).any(|t| (0..n).all(|x| leq[x][t]));
        let meets = (0..n).all(|a| (0..n).all(|b| meet(&leq, &[a, b]).is_some()));
        let c = poset(&leq);
        prop_assert_eq!(finite_limit_witnesses(&c).is_ok(), has_top && meets);
    }

    #[test]
    fn graph_limits_in_posets_are_meets(leq in posets()) {
        let c = poset(&leq);
        for g in enumerate_diagrams(&c, 2, 1) {
            let lim = limit_of(&c, &g).map(|l| l.apex);
            prop_assert_eq!(lim, meet(&leq, &g.nodes));
        }
    }

    #[test]
    fn constant_diagrams_over_directed_posets_recover_the_fiber(leq in posets(), k in 0usize..3) {
        prop_assume!(directed(&leq));
        let index = Arc::new(locally_discrete(&poset(&leq)));
        let fiber = match k {
            0 => Arc::new(FinCat::walking_arrow()),
            1 => Arc::new(FinCat::walking_iso()),
            _ => Arc::new(FinCat::parallel_pair()),
        };
        let col = bifiltered_bicolimit(&CatPseudoFunctor::constant(index, fiber.clone())).unwrap();
        prop_assert!(check_equivalence(col.result(), &fiber).holds());
    }
}
