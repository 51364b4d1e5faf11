//! Affine crystals of type `D_n^(1)`, the Kirillov-Reshetikhin crystals `B^{1,s}`
//! and `B^{2,s}`, Lecouvey insertion, combinatorial R-matrices and the soliton
//! cellular automaton built from `B^{2,1}` cells.

pub mod a_type;
pub mod crystal;
pub mod error;
pub mod letter;
pub mod insertion;
pub mod kr_b2;
pub mod one_row;
pub mod oracle;
pub mod rmatrix;
pub mod sca;
pub mod suites;
pub mod tableau;
pub mod weight;
pub mod zero_action;

pub use error::{Error, Result};
pub use weight::{CartanType, Weight};
