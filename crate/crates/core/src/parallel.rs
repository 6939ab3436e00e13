//! Thread-count control. Solvers use rayon's global pool; its size comes
//! from `STABKIT_THREADS` when set, otherwise rayon's default.

use crate::error::{Error, Result};

pub const THREADS_ENV: &str = "STABKIT_THREADS";

/// Parses `STABKIT_THREADS`; unset or empty means no cap.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Error::Parameter(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(None),
    }
}

/// Sizes the global pool from the environment. Call once, before any
/// parallel work; later calls are no-ops.
pub fn init_from_env() -> Result<()> {
    if let Some(n) = threads_from_env()? {
        // Fails only if the pool already exists, which is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}
