//! Exact-arithmetic toolkit for lattice ideals: the cone of the quotient
//! configuration, its Stanley-Reisner generators, the intersection graph of
//! their relative interiors, and the combinatorial lower bounds that graph
//! yields for the arithmetical rank of the ideal.

pub mod clique_cover;
pub mod cli;
pub mod cone;
pub mod error;
pub mod family_an;
pub mod groebner;
pub mod input;
pub mod lattice;
pub mod lp;
pub mod matching;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod report;
pub mod sigma_graph;
pub mod stanley_reisner;

pub use error::Error;
pub use rat::{Int, Rat};
