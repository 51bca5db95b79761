//! Global guard on the size of constructed carriers.
//!
//! Products of products grow quickly, so every construction that allocates a
//! new carrier (or a generated subset of a power) consults [`max_size`]. The
//! limit is process-wide, with a per-thread override for scoped use.

use std::cell::Cell;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_SIZE: usize = 4096;

/// Operation tables larger than this are refused regardless of carrier size.
pub const MAX_TABLE_ENTRIES: usize = 1 << 26;

static MAX_SIZE: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_SIZE);

thread_local! {
    static OVERRIDE: Cell<Option<usize>> = const { Cell::new(None) };
}

pub fn max_size() -> usize {
    OVERRIDE
        .with(Cell::get)
        .unwrap_or_else(|| MAX_SIZE.load(Ordering::Relaxed))
}

pub fn set_max_size(limit: usize) {
    MAX_SIZE.store(limit, Ordering::Relaxed);
}

/// Runs `f` with the limit set to `limit` on the current thread only.
pub fn with_max_size<T>(limit: usize, f: impl FnOnce() -> T) -> T {
    let previous = OVERRIDE.with(|o| o.replace(Some(limit)));
    struct Restore(Option<usize>);
    impl Drop for Restore {
        fn drop(&mut self) {
            OVERRIDE.with(|o| o.set(self.0));
        }
    }
    let _restore = Restore(previous);
    f()
}

pub fn check_size(requested: usize) -> Result<()> {
    let limit = max_size();
    if requested > limit {
        Err(Error::SizeLimit { requested, limit })
    } else {
        Ok(())
    }
}

pub(crate) fn table_len(size: usize, arity: usize) -> Result<usize> {
    let mut len: usize = 1;
    for _ in 0..arity {
        len = len
            .checked_mul(size)
            .filter(|&l| l <= MAX_TABLE_ENTRIES)
            .ok_or(Error::SizeLimit {
                requested: usize::MAX,
                limit: MAX_TABLE_ENTRIES,
            })?;
    }
    Ok(len)
}
