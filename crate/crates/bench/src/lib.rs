//! Seeded inputs for the benchmarks.

use focus_core::corpus::rng;
use focus_core::solver::{random_rentals, RentalsInstance};
use focus_core::{FocusInstance, FocusParams, IntInterval, Variant};
use rand::Rng;

/// `n` days over classes 0/1: a quarter fixed low, a quarter fixed high,
/// the rest free.
pub fn days(n: usize, seed: u64) -> Vec<IntInterval> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| match r.gen_range(0..4) {
            0 => IntInterval::fixed(0),
            1 => IntInterval::fixed(1),
            _ => IntInterval::new(0, 1),
        })
        .collect()
}

/// Instance with loose count domains, so the filter runs to completion
/// instead of failing early.
pub fn instance(variant: Variant, n: usize, len: usize, h: usize) -> FocusInstance {
    let xs = days(n, n as u64);
    let zc = variant.is_weighted().then(|| IntInterval::new(0, n as i64));
    let h = if variant.is_springy() { h } else { 0 };
    FocusInstance::new(xs, IntInterval::new(0, n as i64), zc, FocusParams::new(variant, 0, len, h))
        .expect("valid benchmark instance")
}

pub fn rentals(n: usize, h: usize, seed: u64) -> RentalsInstance {
    random_rentals(&mut rng(seed), n, 4, h, 3)
}
