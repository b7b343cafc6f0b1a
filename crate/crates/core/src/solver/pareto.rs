//! Scheduling with rentals: day `l` needs an extra machine iff `x_l > k`.
//! Window constraints bound how many rented days fall in each interval.
//! Rentals are sequences of consecutive days of length at most `len`, which
//! may include up to `h` days without need; we minimize both the number of
//! rentals and the total rented days.

use rand::Rng;

use crate::model::{FocusParams, IntInterval, Variant};
use crate::oracle;

use super::among::{Among, AmongSpec};
use super::network::{FocusProp, Network};
use super::search::{minimize, SearchStats};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RentalsInstance {
    /// One domain per day.
    pub days: Vec<IntInterval>,
    pub k: i64,
    pub len: usize,
    pub h: usize,
    pub amongs: Vec<AmongSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("the window constraints admit no schedule")]
pub struct Unsatisfiable;

/// Variable layout of [`RentalsInstance::network`].
#[derive(Debug, Clone)]
pub struct RentalsModel {
    pub net: Network,
    pub xs: Vec<usize>,
    pub yc: usize,
    pub zc: usize,
}

impl RentalsInstance {
    /// `n` free days, `k = 0`.
    pub fn binary(n: usize, len: usize, h: usize, amongs: Vec<AmongSpec>) -> Self {
        RentalsInstance {
            days: vec![IntInterval::new(0, 1); n],
            k: 0,
            len,
            h,
            amongs,
        }
    }

    pub fn n(&self) -> usize {
        self.days.len()
    }

    pub fn params(&self) -> FocusParams {
        FocusParams::new(Variant::WeightedSpringy, self.k, self.len, self.h)
    }

    /// The day variables, `yc` and `zc` in `[0, n]`, one weighted springy
    /// constraint and the windows.
    pub fn network(&self) -> RentalsModel {
        let mut net = Network::new();
        let n = self.n() as i64;
        let xs: Vec<usize> = self.days.iter().map(|&d| net.add_var(d)).collect();
        let yc = net.add_var(IntInterval::new(0, n));
        let zc = net.add_var(IntInterval::new(0, n));
        net.post(FocusProp::new(xs.clone(), yc, Some(zc), self.params()));
        for a in &self.amongs {
            net.post(Among::new(xs.clone(), *a, self.k));
        }
        RentalsModel { net, xs, yc, zc }
    }
}

/// Nondominated `(rentals, rented days)` points, sorted by rentals. For each
/// bound on the number of rentals, from its root lower bound up, the total
/// length is minimized by branch and bound; bounds that do not improve it
/// are dropped.
pub fn pareto_rentals(inst: &RentalsInstance) -> Result<(Vec<(i64, i64)>, SearchStats), Unsatisfiable> {
    let mut model = inst.network();
    model.net.fixpoint().map_err(|_| Unsatisfiable)?;
    let mut total = SearchStats::default();
    let mut run = |model: &mut RentalsModel, v: i64| {
        let m = model.net.mark();
        let res = model
            .net
            .restrict(model.yc, IntInterval::new(i64::MIN, v))
            .ok()
            .and_then(|_| {
                let (best, stats) = minimize(&mut model.net, &model.xs, model.zc);
                total.nodes += stats.nodes;
                total.failures += stats.failures;
                total.solutions += stats.solutions;
                best.map(|b| b.0)
            });
        model.net.undo(m);
        res
    };
    let top = model.net.domain(model.yc).hi();
    let floor = run(&mut model, top).ok_or(Unsatisfiable)?;
    let mut points = Vec::new();
    let mut prev: Option<i64> = None;
    for v in model.net.domain(model.yc).lo()..=top {
        let Some(z) = run(&mut model, v) else { continue };
        if prev.is_none_or(|p| z < p) {
            points.push((v, z));
            prev = Some(z);
        }
        if z == floor {
            break;
        }
    }
    Ok((points, total))
}

/// Frontier by enumerating every bound instantiation of the days that
/// meets the windows.
pub fn oracle_frontier(inst: &RentalsInstance) -> Result<Vec<(i64, i64)>, Unsatisfiable> {
    let p = inst.params();
    let mut pairs = Vec::new();
    let mut any = false;
    let all = oracle::enumerate_instantiations(&inst.days, inst.n()).expect("no cap");
    for a in all {
        if inst.amongs.iter().all(|w| w.holds(&a, inst.k)) {
            any = true;
            pairs.extend(oracle::best_covers(&a, &p));
        }
    }
    if !any {
        return Err(Unsatisfiable);
    }
    Ok(oracle::pareto_min(pairs.into_iter())
        .into_iter()
        .map(|(q, w)| (q as i64, w as i64))
        .collect())
}

/// Random satisfiable instance: windows are drawn around a hidden schedule
/// so that it meets all of them. `len >= h + 2` is required.
pub fn random_rentals<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    len: usize,
    h: usize,
    windows: usize,
) -> RentalsInstance {
    assert!(h + 2 <= len && len <= n);
    let hidden: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
    let amongs = (0..windows)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let (s, e) = (a.min(b), a.max(b));
            let c = hidden[s..=e].iter().filter(|&&v| v > 0).count();
            let lo = c.saturating_sub(rng.gen_range(0..=1));
            let hi = (c + rng.gen_range(0..=1)).min(e - s + 1);
            AmongSpec::new(s, e, lo, hi)
        })
        .collect();
    RentalsInstance::binary(n, len, h, amongs)
}

/// `true` when every point of `b` is matched or beaten by a point of `a`.
pub fn weakly_dominates(a: &[(i64, i64)], b: &[(i64, i64)]) -> bool {
    b.iter()
        .all(|&(y, z)| a.iter().any(|&(ya, za)| ya <= y && za <= z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::rng;

    #[test]
    fn single_window_of_three() {
        let inst = RentalsInstance::binary(6, 6, 0, vec![AmongSpec::new(0, 5, 3, 3)]);
        let (front, _) = pareto_rentals(&inst).unwrap();
        assert_eq!(front, oracle_frontier(&inst).unwrap());
        assert_eq!(front, vec![(1, 3)]);
    }

    #[test]
    fn contradictory_windows() {
        let windows = vec![AmongSpec::new(0, 1, 2, 2), AmongSpec::new(0, 3, 0, 1)];
        let inst = RentalsInstance::binary(4, 2, 0, windows);
        assert_eq!(pareto_rentals(&inst).map(|r| r.0), Err(Unsatisfiable));
        assert_eq!(oracle_frontier(&inst), Err(Unsatisfiable));
    }

    #[test]
    fn frontier_matches_oracle_on_random_instances() {
        let mut r = rng(11);
        for _ in 0..20 {
            let inst = random_rentals(&mut r, 8, 4, 1, 3);
            assert_eq!(pareto_rentals(&inst).unwrap().0, oracle_frontier(&inst).unwrap(), "{inst:?}");
        }
    }

    #[test]
    fn fixed_days_give_one_point() {
        let mut inst = RentalsInstance::binary(6, 3, 1, vec![]);
        for (d, v) in inst.days.iter_mut().zip([0, 1, 1, 0, 0, 1]) {
            *d = IntInterval::fixed(v);
        }
        assert_eq!(pareto_rentals(&inst).unwrap().0, vec![(2, 3)]);
        assert_eq!(oracle_frontier(&inst).unwrap(), vec![(2, 3)]);
    }

    #[test]
    fn dominance_helper() {
        assert!(weakly_dominates(&[(1, 5), (2, 3)], &[(2, 4)]));
        assert!(!weakly_dominates(&[(2, 3)], &[(1, 5)]));
    }
}
