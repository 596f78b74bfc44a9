//! Exact computational character theory for small permutation groups.
//!
//! The crate has three layers:
//!
//! * an exact permutation-group engine ([`perm`]): stabilizer chains,
//!   conjugacy classes, Sylow subgroups, normalizers, quotients, residuals
//!   and chief factors, all over unbounded integers;
//! * exact cyclotomic arithmetic ([`cyclo`]) and character tables computed
//!   with the modular (Dixon/Burnside) method ([`chartab`]), together with
//!   restriction, induction and Clifford-theoretic operations;
//! * the verification layer: relative Glauberman correspondents with full
//!   decomposition witnesses ([`glauberman`]), picky-element certification
//!   ([`picky`]), and the sign-bijection checker with its report format
//!   ([`verify`], [`corpus`]).
//!
//! Everything is exact: no floating point is used anywhere in the engine.
//! All operations are deterministic functions of their inputs; ties are
//! broken by the lexicographic order on permutation image sequences.

pub mod chartab;
pub mod corpus;
pub mod cyclo;
pub mod glauberman;
pub mod groups;
pub mod perm;
pub mod picky;
pub mod verify;

/// Crate-wide error type.
///
/// `TheoremViolation` is reserved for situations where a computation
/// contradicts a statement the harness is supposed to verify; callers that
/// assemble reports record these as first-class events instead of
/// propagating them.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
    pub(crate) fn violation(msg: impl Into<String>) -> Self {
        Error::TheoremViolation(msg.into())
    }
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
