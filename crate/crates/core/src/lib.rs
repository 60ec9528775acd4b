//! Exact computations around the partition norm, the product of the parts
//! of an integer partition.
//!
//! * [`partitions`]: the frequency-form [`Partition`], restricted classes and
//!   their enumeration, subpartitions, factorization helpers.
//! * [`series`]: truncated power series over the rationals and the
//!   generating-function identities (Euler, MacMahon, Fine, sigma powers).
//! * [`stats`]: extremal norms with brute-force oracles, minimum size for a
//!   fixed norm, MacMahon statistics, Lehmer sums, expected norm.
//! * [`zeta`]: partition zeta functions, exact even zeta values as rational
//!   multiples of powers of pi, fixed-length zeta, partition phi.
//! * [`verify`]: the identity-verification harness producing
//!   [`VerifyReport`]s.

pub mod constants;
pub mod error;
pub mod limits;
pub mod partitions;
pub mod report;
pub mod series;
pub mod stats;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
pub use limits::Limits;
pub use partitions::{
    enumerate, enumerate_with_largest, subpartitions, PartSet, Partition, PartitionClass,
};
pub use report::{KnownIssue, Status, VerifyReport};
pub use series::Series;
pub use stats::{Direction, ExtremalResult, MinSizeResult, Source};
pub use zeta::{EvalResult, PartSetSpec, PiValue};
