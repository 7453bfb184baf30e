//! Size guards for exhaustive enumerations.
//!
//! Every brute-force scan in the crate checks its item count against a single
//! process-wide limit. The limit can be raised explicitly (the CLI wires the
//! `RML_GUARD_OVERRIDE` environment variable to [`set_override`]).

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default cap on the number of items an exhaustive scan may visit.
pub const DEFAULT_LIMIT: u64 = 1 << 24;

static OVERRIDE: AtomicU64 = AtomicU64::new(0);

/// Raise (or lower) the guard. `None` restores [`DEFAULT_LIMIT`].
pub fn set_override(limit: Option<u64>) {
    OVERRIDE.store(limit.unwrap_or(0), Ordering::Relaxed);
}

pub fn current() -> u64 {
    match OVERRIDE.load(Ordering::Relaxed) {
        0 => DEFAULT_LIMIT,
        v => v,
    }
}

/// Fails with `SizeGuardExceeded` when `count` exceeds the active limit.
pub fn check(what: &str, count: u128) -> Result<()> {
    let limit = current() as u128;
    if count > limit {
        return Err(Error::SizeGuardExceeded {
            what: what.to_string(),
            count,
            limit,
        });
    }
    Ok(())
}

/// `base^exp` saturating at `u128::MAX`.
pub fn pow_saturating(base: u128, exp: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}
