use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::series::pentagonal_p;

/// Environment variable overriding [`Limits::max_partitions`].
pub const ENV_ENUM_CEILING: &str = "PARTNORM_ENUM_CEILING";
/// Environment variable overriding [`Limits::max_series_order`].
pub const ENV_SERIES_ORDER: &str = "PARTNORM_MAX_SERIES_ORDER";
/// Environment variable overriding [`Limits::macmahon_max_n`].
pub const ENV_MACMAHON_MAX_N: &str = "PARTNORM_MACMAHON_MAX_N";

/// Ceilings for enumeration-backed operations, so that large inputs fail
/// with an error instead of running for hours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest p(n) an enumeration-backed operation will walk.
    pub max_partitions: u64,
    pub max_series_order: usize,
    /// Largest n accepted by the partial-fraction check.
    pub macmahon_max_n: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_partitions: 1_000_000,
            max_series_order: 5000,
            macmahon_max_n: 25,
        }
    }
}

impl Limits {
    /// Defaults, overridden by any of the `PARTNORM_*` variables that parse.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(v) = read_env(ENV_ENUM_CEILING) {
            limits.max_partitions = v;
        }
        if let Some(v) = read_env(ENV_SERIES_ORDER) {
            limits.max_series_order = v as usize;
        }
        if let Some(v) = read_env(ENV_MACMAHON_MAX_N) {
            limits.macmahon_max_n = v;
        }
        limits
    }

    /// Fails when enumerating the partitions of `n` would exceed the ceiling.
    pub fn check_enumeration(&self, n: u64) -> Result<()> {
        // p(1000) already has 31 digits
        if n > 1000 {
            return Err(Error::CeilingExceeded {
                n,
                count: "more than 10^30".into(),
                ceiling: self.max_partitions,
            });
        }
        let count = pentagonal_p(n);
        if count > BigUint::from(self.max_partitions) {
            return Err(Error::CeilingExceeded {
                n,
                count: count.to_string(),
                ceiling: self.max_partitions,
            });
        }
        Ok(())
    }

    pub fn check_order(&self, order: usize) -> Result<()> {
        if order > self.max_series_order {
            return Err(Error::OrderExceeded {
                order,
                ceiling: self.max_series_order,
            });
        }
        Ok(())
    }
}

fn read_env(name: &str) -> Option<u64> {
    std::env::var(name).ok()?.trim().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceiling_rejects_large_n() {
        let limits = Limits::default();
        assert!(limits.check_enumeration(60).is_ok());
        assert!(matches!(
            limits.check_enumeration(80),
            Err(Error::CeilingExceeded { n: 80, .. })
        ));
        assert!(limits.check_order(5000).is_ok());
        assert!(limits.check_order(5001).is_err());
    }
}
