//! Portable deterministic randomness.
//!
//! Every random choice made by the augmenters goes through [`Rng`], a
//! splitmix64 generator, seeded per item with [`derive_item_seed`]. Both
//! algorithms are integer-only, so any implementation that follows the
//! definitions below reproduces the same corpora bit for bit:
//!
//! * `derive_item_seed(m, label, i)` is FNV-1a-64 over
//!   `m.to_le_bytes() ++ label.as_bytes() ++ (i as u64).to_le_bytes()`.
//! * [`Rng::below`] maps a draw `x` to `(x * n) >> 64` (128-bit product).
//! * [`uniform_real`] takes the top `D` bits of a draw, where `D` is the
//!   significand width of the target float (53 for `f64`), and scales by
//!   `2^-D`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const FNV_OFFSET_BASIS: u64 = 0xcbf2_9ce4_8422_2325;
pub const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Master seed for a run. Any value is legal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeedSpec {
    pub master_seed: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64) -> Self {
        SeedSpec { master_seed }
    }

    /// Generator for one item of one stream.
    pub fn rng_for(&self, stream_label: &str, item_index: usize) -> Rng {
        Rng::new(derive_item_seed(self.master_seed, stream_label, item_index))
    }
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    fnv1a64_extend(FNV_OFFSET_BASIS, bytes)
}

fn fnv1a64_extend(mut hash: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

pub fn derive_item_seed(master_seed: u64, stream_label: &str, item_index: usize) -> u64 {
    let mut h = fnv1a64_extend(FNV_OFFSET_BASIS, &master_seed.to_le_bytes());
    h = fnv1a64_extend(h, stream_label.as_bytes());
    fnv1a64_extend(h, &(item_index as u64).to_le_bytes())
}

/// splitmix64 generator. Single owner; clone to fork a replayable copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Integer in `[0, n)`; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0) has no valid outcome");
        ((u128::from(self.next_u64()) * n as u128) >> 64) as usize
    }
}

/// Real in `[lo, hi)`; returns `lo` when `lo == hi`.
pub fn uniform_real<F: Real>(rng: &mut Rng, lo: F, hi: F) -> F {
    let digits = F::MANTISSA_DIGITS;
    let bits = rng.next_u64() >> (64 - digits);
    let u = F::from_u64(bits).expect("fits in significand") * F::from_f64_lossy(2f64.powi(-(digits as i32)));
    let x = lo + (hi - lo) * u;
    // rounding of the affine map can land on hi
    if x >= hi && hi > lo {
        lo
    } else {
        x
    }
}

/// `k` distinct indices from `0..n` in partial Fisher–Yates emission order.
pub fn sample_without_replacement(rng: &mut Rng, n: usize, k: usize) -> Result<Vec<usize>> {
    if k > n {
        return Err(Error::KTooLarge { n, k });
    }
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + rng.below(n - i);
        pool.swap(i, j);
    }
    pool.truncate(k);
    Ok(pool)
}

/// In-place Fisher–Yates shuffle.
pub fn shuffle<T>(rng: &mut Rng, items: &mut [T]) {
    let n = items.len();
    for i in 0..n.saturating_sub(1) {
        let j = i + rng.below(n - i);
        items.swap(i, j);
    }
}
