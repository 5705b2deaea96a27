//! Process-wide absolute tolerance for interval comparisons.

use std::sync::atomic::{AtomicU64, Ordering};

/// Default absolute tolerance.
pub const DEFAULT_EPS: f64 = 1e-9;

static EPS_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Current tolerance used by every geometric comparison in the crate.
#[inline]
pub fn eps() -> f64 {
    f64::from_bits(EPS_BITS.load(Ordering::Relaxed))
}

/// Override the tolerance. Non-finite or non-positive values are ignored.
pub fn set_eps(value: f64) -> bool {
    if value.is_finite() && value > 0.0 {
        EPS_BITS.store(value.to_bits(), Ordering::Relaxed);
        true
    } else {
        false
    }
}
