//! Finite categories of the bundled corpus.

use std::sync::Arc;

use crate::fincat::FinCat;

pub fn all() -> Vec<(&'static str, Arc<FinCat>)> {
    vec![
        ("terminal", Arc::new(FinCat::terminal())),
        ("empty", Arc::new(FinCat::empty())),
        ("walking_arrow", Arc::new(FinCat::walking_arrow())),
        ("walking_iso", Arc::new(FinCat::walking_iso())),
        ("discrete2", Arc::new(FinCat::discrete(&["a", "b"]))),
        ("parallel_pair", Arc::new(FinCat::parallel_pair())),
    ]
}
