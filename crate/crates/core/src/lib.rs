//! Alternating Turing machines with output (ATOs), the exact span of their
//! valid outputs, and the compilation of an ATO run into a tree automaton
//! whose language has exactly that many trees.

pub mod computation;
pub mod corpus;
pub mod dag;
pub mod error;
pub mod machine;
pub mod nfta;
pub mod reduction;
pub mod trees;

pub use error::RunError;
