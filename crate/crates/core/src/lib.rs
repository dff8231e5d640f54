//! Longest common factor with at most `k` mismatches, reported only when it
//! is at least `ℓ` long.
//!
//! Pipeline: a joint suffix index over `X, X^R, Y, Y^R` ([`textindex`]),
//! cut positions from a difference cover ([`diffcover`]), a trie of
//! modified suffixes ([`errata`]), and a reduction of the resulting pair
//! families ([`familylcp`]) to the colored trees problem ([`coloredtrees`]).
//! [`lcf::solve`] ties them together; [`oracle`] holds the brute-force
//! references.

pub mod cli;
pub mod coloredtrees;
pub mod diffcover;
pub mod errata;
pub mod familylcp;
pub mod gen;
pub mod lcf;
pub mod oracle;
pub mod textindex;

mod lca;
mod rmq;

pub use lcf::{solve, solve_exact_zero, Match, MatchResult};
pub use textindex::{SuffixRef, TextId, TextIndex};

/// The wildcard symbol. It may not occur in inputs.
pub const WILDCARD: u8 = b'$';

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{text} contains the reserved symbol {:?} at offset {position}", *symbol as char)]
    ReservedSymbol {
        text: &'static str,
        position: usize,
        symbol: u8,
    },
    #[error("suffix reference {0} is out of range")]
    InvalidSuffix(SuffixRef),
    #[error("invalid difference cover: {0}")]
    InvalidCover(String),
    #[error("mismatch budget {0} exceeds the supported maximum of {max}", max = errata::MAX_K)]
    BudgetTooLarge(usize),
    #[error("{0} is not in the trie's family")]
    NotInFamily(SuffixRef),
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("pair family was built for a different trie")]
    ForeignTrie,
    #[error("node {0} does not exist in the trie")]
    InvalidNode(u32),
    #[error("minimum length must be at least 1")]
    ZeroMinLength,
    #[error("internal error: {0}")]
    Internal(String),
}
