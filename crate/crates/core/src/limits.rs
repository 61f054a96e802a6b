//! Computation caps and the deterministic seed.
//!
//! Defaults come from the environment (`HALLBOUND_CAP`, `HALLBOUND_SEED`)
//! and can be overridden per thread with [`with_limits`].

use std::cell::RefCell;
use std::sync::OnceLock;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;
pub const DEFAULT_QUOTIENT_CAP: u128 = 20_000;
pub const ORACLE_SCALE: u128 = 3_600;
pub const EXHAUSTIVE_HALL_SCALE: u128 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group whose elements may be enumerated.
    pub enumeration_cap: u128,
    /// Largest coset space a quotient may act on.
    pub quotient_cap: u128,
    pub seed: u64,
    /// Random elements drawn per randomized phase.
    pub random_samples: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            quotient_cap: DEFAULT_QUOTIENT_CAP,
            seed: 0,
            random_samples: 48,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var("HALLBOUND_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.enumeration_cap = cap;
        }
        if let Some(seed) = std::env::var("HALLBOUND_SEED")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.seed = seed;
        }
        limits
    }

    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

static GLOBAL: OnceLock<Limits> = OnceLock::new();

thread_local! {
    static OVERRIDE: RefCell<Option<Limits>> = const { RefCell::new(None) };
}

/// Limits in effect on the current thread.
pub fn current() -> Limits {
    OVERRIDE
        .with(|o| *o.borrow())
        .unwrap_or_else(|| *GLOBAL.get_or_init(Limits::from_env))
}

/// Sets the process-wide defaults; only the first call wins.
pub fn set_global(limits: Limits) -> bool {
    GLOBAL.set(limits).is_ok()
}

/// Runs `f` with `limits` in effect on this thread.
pub fn with_limits<T>(limits: Limits, f: impl FnOnce() -> T) -> T {
    let prev = OVERRIDE.with(|o| o.borrow_mut().replace(limits));
    struct Restore(Option<Limits>);
    impl Drop for Restore {
        fn drop(&mut self) {
            let prev = self.0.take();
            OVERRIDE.with(|o| *o.borrow_mut() = prev);
        }
    }
    let _restore = Restore(prev);
    f()
}
