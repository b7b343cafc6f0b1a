//! Seeded random instances and the propagator-versus-oracle comparison used
//! by the fuzzer and the acceptance suite.
//!
//! Instances use domains `{k}`, `{k+1}` and `{k, k+1}` so every
//! instantiation of the bounds is a choice of class per variable. The
//! generator is `ChaCha8Rng`, which produces the same stream on every
//! platform for a given seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Infeasible, OracleError};
use crate::model::{FocusInstance, FocusParams, IntInterval, Variant};
use crate::oracle;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random instance of `variant` with `1 <= n <= n_max` (`n >= 2` for the
/// springy variants, which need `len >= 2`).
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, variant: Variant, n_max: usize) -> FocusInstance {
    let springy = variant.is_springy();
    let n_min = if springy { 2 } else { 1 };
    let n = rng.gen_range(n_min..=n_max.max(n_min));
    let k: i64 = rng.gen_range(-2..=2);
    let xs: Vec<IntInterval> = (0..n)
        .map(|_| match rng.gen_range(0..4) {
            0 => IntInterval::fixed(k),
            1 => IntInterval::fixed(k + 1),
            _ => IntInterval::new(k, k + 1),
        })
        .collect();
    let len = rng.gen_range(if springy { 2 } else { 1 }..=n);
    let h = if springy { rng.gen_range(0..=len - 2) } else { 0 };
    // Tight budgets are where supports get lost.
    let yc = random_range(rng, (n as i64 + 1) / 2);
    let zc = variant.is_weighted().then(|| random_range(rng, n as i64));
    FocusInstance::new(xs, yc, zc, FocusParams::new(variant, k, len, h))
        .expect("generator respects parameter ranges")
}

fn random_range<R: Rng + ?Sized>(rng: &mut R, max: i64) -> IntInterval {
    let hi = rng.gen_range(0..=max);
    let lo = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..=hi) };
    IntInterval::new(lo, hi)
}

/// A propagator result that differs from the exhaustive closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub instance: FocusInstance,
    pub expected: Result<FocusInstance, Infeasible>,
    pub found: Result<FocusInstance, Infeasible>,
}

/// Runs the propagator for the instance's variant against
/// [`oracle::bc_closure`].
pub fn compare_with_oracle(inst: &FocusInstance, cap: usize) -> Result<Option<Mismatch>, OracleError> {
    let expected = oracle::bc_closure(inst, cap)?;
    let found = crate::propagate(inst);
    Ok((expected != found).then(|| Mismatch {
        instance: inst.clone(),
        expected,
        found,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instances() {
        let mut a = rng(7);
        let mut b = rng(7);
        for v in Variant::ALL {
            assert_eq!(random_instance(&mut a, v, 8), random_instance(&mut b, v, 8));
        }
    }

    #[test]
    fn respects_bounds() {
        let mut r = rng(3);
        for _ in 0..500 {
            for v in Variant::ALL {
                let inst = random_instance(&mut r, v, 6);
                assert!(inst.n() <= 6);
                assert_eq!(inst.zc().is_some(), v.is_weighted());
            }
        }
    }
}
