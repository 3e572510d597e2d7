//! Permutation groups, bi-Cayley and coset graphs, and verifiers for
//! 4-valent G-oriented graphs of biquasiprimitive type.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod constructions;
pub mod graph;
pub mod group;
pub mod perm;
pub mod union_find;
pub mod verify;
pub mod zoo;

pub use group::{wreath_decompose, wreath_element, direct_power_with_top, PermGroup};
pub use perm::{Permutation, Point};

use alloc::string::String;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection")]
    NotABijection,
    #[error("empty domain")]
    EmptyDomain,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("point set is not invariant")]
    NotInvariant,
    #[error("top permutation has degree {found}, expected {expected}")]
    MalformedTop { expected: usize, found: usize },
    #[error("blocks are not permuted consistently")]
    InconsistentBlocks,
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("subgroup of order {order} exceeds the limit {limit}")]
    SubgroupTooLarge { order: u128, limit: u128 },
    #[error("group order {order} exceeds the bound {bound}")]
    OrderBoundExceeded { order: u128, bound: u128 },
    #[error("{what} budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("inadmissible parameter: {0}")]
    Inadmissible(String),
    #[error("check failed: {0}")]
    AssertionFailed(String),
    #[error("connection set is not closed under inverses")]
    NotInverseClosed,
    #[error("connection set contains the identity")]
    ContainsIdentity,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is trivial")]
    TrivialSubgroup,
    #[error("graph is not 4-valent")]
    NotFourValent,
    #[error("graph is not connected")]
    NotConnected,
    #[error("group does not preserve an orientation")]
    NotOriented,
    #[error("permutation is not a graph automorphism")]
    NotAutomorphism,
    #[error("pair is not biquasiprimitive")]
    NotBiquasiprimitive,
    #[error("the square of the automorphism is not conjugation by y")]
    PhiSquaredNotInner,
    #[error("y must not be the identity")]
    IdentityY,
    #[error("conjugating element does not normalize the group")]
    NotNormalizing,
    #[error("no element of the vertex stabilizer is fixed-point-free on the neighbourhood")]
    NoFixedPointFreeElement,
    #[error("no automorphism inverting both generators was found")]
    ThetaNotFound,
}
