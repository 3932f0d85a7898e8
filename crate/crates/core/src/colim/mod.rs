//! Colimits of Cat-valued pseudofunctors over bifiltered and σ-filtered
//! indices, presented by premorphisms modulo transport and 2-cell moves.

mod cocone;
mod elements;
pub mod oracle;
mod quotient;

pub use cocone::{compare_factorizations, factor_cocone, induced_functor, Factorization, SigmaCocone};
pub use elements::{elements_category, ElementsCat};
pub use quotient::{
    bifiltered_bicolimit, premorphism_equal, sigma_bicolimit, sigma_bicolimit_direct, ColimitCat, Premorphism, Route,
};

#[cfg(test)]
mod tests;
