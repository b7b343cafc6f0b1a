//! Every propagator against the exhaustive closure on seeded random
//! instances.

use focus_core::corpus::{compare_with_oracle, random_instance, rng};
use focus_core::oracle::CLOSURE_CAP;
use focus_core::Variant;

fn run(variant: Variant, seed: u64, trials: usize, n_max: usize) {
    let mut r = rng(seed);
    for t in 0..trials {
        let inst = random_instance(&mut r, variant, n_max);
        if let Some(m) = compare_with_oracle(&inst, CLOSURE_CAP).unwrap() {
            panic!(
                "trial {t}: {}\n expected {:?}\n found    {:?}",
                m.instance, m.expected, m.found
            );
        }
    }
}

#[test]
fn focus_matches_closure() {
    run(Variant::Focus, 1, 2000, 8);
}

#[test]
fn springy_matches_closure() {
    run(Variant::Springy, 2, 2000, 8);
}

#[test]
fn weighted_matches_closure() {
    run(Variant::Weighted, 3, 2000, 8);
}

#[test]
fn weighted_springy_matches_closure() {
    run(Variant::WeightedSpringy, 4, 2000, 8);
}

#[test]
fn corpus_exercises_every_outcome() {
    // a corpus of already-consistent instances would make the comparisons
    // above vacuous
    for v in Variant::ALL {
        let mut r = rng(9);
        let (mut inf, mut pruned, mut same) = (0, 0, 0);
        for _ in 0..2000 {
            let inst = random_instance(&mut r, v, 8);
            match focus_core::oracle::bc_closure(&inst, CLOSURE_CAP).unwrap() {
                Err(_) => inf += 1,
                Ok(o) if o != inst => pruned += 1,
                Ok(_) => same += 1,
            }
        }
        assert!(inf >= 200 && pruned >= 200 && same >= 200, "{v}: {inf} {pruned} {same}");
    }
}
