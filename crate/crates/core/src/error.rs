use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parts must be positive integers, got {0}")]
    NonPositivePart(i64),
    #[error("{part} is not a part of {partition}")]
    NotAPart { part: u64, partition: String },
    #[error("no partitions of {n} in class {class}")]
    EmptyClass { n: u64, class: String },
    #[error("reciprocal of a series with zero constant term")]
    ZeroConstantTerm,
    #[error("rational power of a series needs constant term 1")]
    NonUnitConstantTerm,
    #[error("enumeration of partitions of {n} exceeds the ceiling ({count} > {ceiling})")]
    CeilingExceeded { n: u64, count: String, ceiling: u64 },
    #[error("series order {order} exceeds the ceiling {ceiling}")]
    OrderExceeded { order: usize, ceiling: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cannot add pi^{0} to pi^{1}")]
    PiPowerMismatch(u32, u32),
}

pub type Result<T> = std::result::Result<T, Error>;
