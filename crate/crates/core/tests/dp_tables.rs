//! The cost tables against covers of every prefix enumerated directly from
//! the domains.

use focus_core::corpus::{random_instance, rng};
use focus_core::dp::{DpEntry, INF};
use focus_core::oracle::{best_covers, enumerate_instantiations};
use focus_core::weighted::build_dp_w;
use focus_core::weighted_springy::build_dp_wh;
use focus_core::{FocusInstance, IntInterval, Variant};

/// Summary of one cover of `x_0..x_j`: cost, number of sequences, length of
/// the sequence ending at `j` (INF if none) and the neutral variables it
/// covers (INF if none).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PrefixCover {
    cost: usize,
    q: u32,
    l: u32,
    hc: u32,
}

/// Covers of `x_0..=j` that cover every penalizing variable and respect the
/// length and tolerance limits. A covered undetermined variable is taken
/// above `k`; with tolerance, the sequence ending at `j` may end on a
/// neutral variable (it is still open).
fn prefix_covers(inst: &FocusInstance, j: usize) -> Vec<PrefixCover> {
    let xs = &inst.xs()[..=j];
    let p = inst.params();
    let k = p.k;
    let springy = p.variant.is_springy();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0usize, 0u32, INF, INF)];
    while let Some((pos, cost, q, l, hc)) = stack.pop() {
        if pos == xs.len() {
            out.push(PrefixCover { cost, q, l, hc });
            continue;
        }
        if xs[pos].can_be_low(k) {
            stack.push((pos + 1, cost, q, INF, INF));
        }
        if !xs[pos].can_be_high(k) {
            continue;
        }
        let mut neutral = 0u32;
        let mut extra = 0usize;
        for end in pos..xs.len().min(pos + p.len) {
            let x: &IntInterval = &xs[end];
            if x.lo() <= k {
                extra += 1;
            }
            if !x.can_be_high(k) {
                if !springy {
                    break;
                }
                neutral += 1;
                if neutral as usize > p.h {
                    break;
                }
            }
            let closes = x.can_be_high(k);
            let at_end = end + 1 == xs.len();
            if closes || (at_end && springy) {
                let (l, h) = if at_end {
                    ((end - pos + 1) as u32, neutral)
                } else {
                    (INF, INF)
                };
                stack.push((end + 1, cost + extra, q + 1, l, h));
            }
        }
    }
    out
}

fn corpus(variant: Variant, seed: u64, count: usize) -> Vec<FocusInstance> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random_instance(&mut r, variant, 8))
        .filter(|i| i.zc().unwrap().hi() >= i.penalizing_count() as i64)
        .collect()
}

#[test]
fn weighted_tables_are_structured() {
    for inst in corpus(Variant::Weighted, 21, 3000) {
        let t = build_dp_w(inst.xs(), inst.params(), inst.zc().unwrap().hi()).unwrap();
        t.check_structure().unwrap_or_else(|e| panic!("{inst}: {e}"));
    }
}

#[test]
fn weighted_springy_tables_are_structured() {
    for inst in corpus(Variant::WeightedSpringy, 22, 3000) {
        let t = build_dp_wh(inst.xs(), inst.params(), inst.zc().unwrap().hi()).unwrap();
        t.check_structure().unwrap_or_else(|e| panic!("{inst}: {e}"));
    }
}

#[test]
fn weighted_entries_have_witnesses() {
    for inst in corpus(Variant::Weighted, 23, 1500) {
        let t = build_dp_w(inst.xs(), inst.params(), inst.zc().unwrap().hi()).unwrap();
        for j in 0..inst.n() {
            let covers = prefix_covers(&inst, j);
            for c in 0..t.rows() {
                let e = t.get(c, j as isize);
                if e.is_dummy() {
                    continue;
                }
                assert!(
                    covers.iter().any(|w| w.cost == c && w.q == e.q && w.l == e.l),
                    "{inst}: f[{c}][{j}] = {e:?} has no witness"
                );
            }
        }
    }
}

#[test]
fn weighted_entries_dominate_every_cover() {
    for inst in corpus(Variant::Weighted, 24, 1500) {
        let t = build_dp_w(inst.xs(), inst.params(), inst.zc().unwrap().hi()).unwrap();
        for j in 0..inst.n() {
            for w in prefix_covers(&inst, j) {
                if w.cost > t.zcu() {
                    continue;
                }
                let beaten = (0..=w.cost).any(|c| {
                    let e = t.get(c, j as isize);
                    !e.is_dummy() && e.key() <= (w.q, w.l)
                });
                assert!(beaten, "{inst}: column {j} misses {w:?}");
            }
        }
    }
}

#[test]
fn weighted_springy_entries_have_witnesses() {
    for inst in corpus(Variant::WeightedSpringy, 25, 1500) {
        let t = build_dp_wh(inst.xs(), inst.params(), inst.zc().unwrap().hi()).unwrap();
        for j in 0..inst.n() {
            let covers = prefix_covers(&inst, j);
            for c in 0..t.rows() {
                let e = t.get(c, j as isize);
                if e.is_dummy() {
                    continue;
                }
                assert!(
                    covers
                        .iter()
                        .any(|w| w.cost <= c && w.q == e.q && w.l == e.l && w.hc == e.hc),
                    "{inst}: f[{c}][{j}] = {e:?} has no witness"
                );
            }
        }
    }
}

#[test]
fn weighted_springy_entries_dominate_every_cover() {
    for inst in corpus(Variant::WeightedSpringy, 26, 1500) {
        let t = build_dp_wh(inst.xs(), inst.params(), inst.zc().unwrap().hi()).unwrap();
        for j in 0..inst.n() {
            for w in prefix_covers(&inst, j) {
                if w.cost > t.zcu() {
                    continue;
                }
                let beaten = (0..=w.cost).any(|c| {
                    let e = t.get(c, j as isize);
                    !e.is_dummy() && e.key() <= (w.q, w.l)
                });
                assert!(beaten, "{inst}: column {j} misses {w:?}");
            }
        }
    }
}

fn check_last_column(variant: Variant, seed: u64) {
    // the cheapest full cover with at most q sequences, over all
    // instantiations, pays |P| plus the table's cost
    let mut r = rng(seed);
    for _ in 0..800 {
        let inst = random_instance(&mut r, variant, 8);
        let n = inst.n();
        let zc = n as i64;
        let t = match variant {
            Variant::Weighted => {
                let t = build_dp_w(inst.xs(), inst.params(), zc).unwrap();
                (0..=n).map(|q| t.min_cost_within(q as i64)).collect::<Vec<_>>()
            }
            _ => {
                let t = build_dp_wh(inst.xs(), inst.params(), zc).unwrap();
                (0..=n).map(|q| t.min_cost_within(q as i64)).collect()
            }
        };
        let mut expected = vec![None::<usize>; n + 1];
        for a in enumerate_instantiations(inst.xs(), 12).unwrap() {
            for (q, w) in best_covers(&a, inst.params()) {
                for slot in &mut expected[q..] {
                    *slot = Some(slot.map_or(w, |m| m.min(w)));
                }
            }
        }
        let p = inst.penalizing_count();
        let found: Vec<_> = t.iter().map(|c| c.map(|c| c + p)).collect();
        assert_eq!(found, expected, "{inst}");
    }
}

#[test]
fn weighted_last_column_prices_full_covers() {
    check_last_column(Variant::Weighted, 27);
}

#[test]
fn weighted_springy_last_column_prices_full_covers() {
    check_last_column(Variant::WeightedSpringy, 28);
}
