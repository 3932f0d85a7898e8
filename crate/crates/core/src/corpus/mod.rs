//! The bundled fixture corpus, built programmatically.

pub mod categories;
pub mod diagrams;
pub mod indices;
pub mod instances;
pub mod lex;
pub mod maps;
