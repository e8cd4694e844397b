//! Amalgamated free products and HNN extensions over desk-scale groups:
//! normal forms, group-ring arithmetic, the block grading of the group ring,
//! and the double-coset data attached to a pair of embeddings.

pub mod amalgam;
pub mod blocks;
pub mod cosets;
pub mod embed;
pub mod group;
pub mod hnn;
pub mod io;
pub mod ring;
pub mod samples;

use thiserror::Error;

pub use amalgam::{Amalgam, AmalgamWord};
pub use blocks::{lemma16_check, s_blocks, BlockBasis, Lemma16Report, SBlocks, SData};
pub use cosets::{double_cosets, gamma_data, intersection, GammaData};
pub use embed::Embedding;
pub use group::{Elem, FiniteGroup, GroupOracle};
pub use hnn::{HNNWord, Hnn, HnnLetter};
pub use ring::{parse_group_ring, Construction, GroupRingElement, SequenceType, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeProdError {
    #[error("not in factor: {0}")]
    NotInFactor(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid group data: {0}")]
    InvalidData(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("oracle inconsistency: {0}")]
    OracleInconsistency(String),
    #[error("elements of different constructions: {0} and {1}")]
    MixedConstructions(String, String),
}
