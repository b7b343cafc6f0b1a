use thiserror::Error;

use crate::model::Variant;

/// Rejected instance or parameter combination.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("instance has no variables")]
    EmptyInstance,
    #[error("domain of x{index} is empty")]
    EmptyDomain { index: usize },
    #[error("domain of {0} is empty")]
    EmptyCountDomain(&'static str),
    #[error("len = {len} outside [1, {n}]")]
    LengthOutOfRange { len: usize, n: usize },
    #[error("h = {h} outside [0, len - 2] for len = {len}")]
    SlackOutOfRange { h: usize, len: usize },
    #[error("variant {variant} takes no slack, got h = {h}")]
    SlackNotAllowed { variant: Variant, h: usize },
    #[error("weighted variant needs a zc domain")]
    MissingWeight,
    #[error("zc given for an unweighted variant")]
    UnexpectedWeight,
    #[error("unknown variant `{0}`")]
    UnknownVariant(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
}

/// Why a cover fails to witness the constraint on an assignment.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverViolation {
    #[error("assignment has {found} values, expected {expected}")]
    AssignmentLength { expected: usize, found: usize },
    #[error("value of x{index} lies outside its domain")]
    OutsideDomain { index: usize },
    #[error("sequence ends at {end}, past the last index {}", .n - 1)]
    OutOfRange { end: usize, n: usize },
    #[error("{count} sequences, at most {max} allowed")]
    Cardinality { count: usize, max: i64 },
    #[error("x{index} is above k but not covered")]
    Uncovered { index: usize },
    #[error("x{index} is covered but not above k")]
    CoveredLow { index: usize },
    #[error("sequence {seq} has length {length} > {max}")]
    TooLong { seq: usize, length: usize, max: usize },
    #[error("sequence {seq} starts or ends on a value not above k")]
    LowEndpoint { seq: usize },
    #[error("sequence {seq} covers {lows} values not above k, at most {max} allowed")]
    TooManyLows { seq: usize, lows: usize, max: usize },
    #[error("total length {total} exceeds {max}")]
    Weight { total: usize, max: i64 },
}

impl CoverViolation {
    /// Number of the violated condition in the variant's definition, `None`
    /// for malformed input.
    pub fn condition(&self, variant: Variant) -> Option<u8> {
        use CoverViolation::*;
        let n = match (self, variant) {
            (AssignmentLength { .. } | OutsideDomain { .. } | OutOfRange { .. }, _) => return None,
            (Cardinality { .. }, _) => 1,
            (Uncovered { .. } | CoveredLow { .. }, _) => 2,
            (TooLong { .. } | LowEndpoint { .. }, Variant::WeightedSpringy) => 4,
            (TooLong { .. } | LowEndpoint { .. }, _) => 3,
            (TooManyLows { .. }, Variant::WeightedSpringy) => 3,
            (TooManyLows { .. }, _) => 4,
            (Weight { .. }, Variant::WeightedSpringy) => 5,
            (Weight { .. }, _) => 4,
        };
        Some(n)
    }
}

/// Filtering proved that no instantiation within the current bounds
/// satisfies the constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("constraint is infeasible")]
pub struct Infeasible;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} variables exceed the enumeration cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}
