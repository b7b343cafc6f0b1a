//! Exhaustive reference semantics for small instances.
//!
//! Nothing here shares code with the propagators: covers are enumerated by
//! plain recursion and bounds consistency is computed by trying every
//! instantiation of the domain bounds.

use std::collections::BTreeSet;

use crate::error::{Infeasible, OracleError};
use crate::model::{cover_is_valid, Cover, FocusInstance, FocusParams, IntInterval};

/// Default limit on `n` for enumerating instantiations.
pub const INSTANTIATION_CAP: usize = 12;
/// Default limit on `n` for [`bc_closure`].
pub const CLOSURE_CAP: usize = 10;

/// Every assignment taking each variable to its lower or upper bound.
pub fn enumerate_instantiations(
    xs: &[IntInterval],
    cap: usize,
) -> Result<Vec<Vec<i64>>, OracleError> {
    if xs.len() > cap {
        return Err(OracleError::TooLarge { n: xs.len(), cap });
    }
    let mut out = vec![Vec::with_capacity(xs.len())];
    for x in xs {
        if x.is_fixed() {
            for a in &mut out {
                a.push(x.lo());
            }
        } else {
            let mut next = Vec::with_capacity(out.len() * 2);
            for a in out {
                let mut b = a.clone();
                b.push(x.hi());
                let mut a = a;
                a.push(x.lo());
                next.push(a);
                next.push(b);
            }
            out = next;
        }
    }
    Ok(out)
}

/// Pareto-minimal `(sequences, total length)` over all valid covers of a
/// full assignment, ignoring `yc` and `zc`. Empty if no cover exists.
pub fn best_covers(assignment: &[i64], params: &FocusParams) -> Vec<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    walk(assignment, params, 0, 0, 0, &mut pairs);
    pareto_min(pairs.into_iter())
}

fn walk(
    a: &[i64],
    p: &FocusParams,
    pos: usize,
    count: usize,
    weight: usize,
    out: &mut BTreeSet<(usize, usize)>,
) {
    if pos == a.len() {
        out.insert((count, weight));
        return;
    }
    let k = p.k;
    if a[pos] <= k {
        walk(a, p, pos + 1, count, weight, out);
    }
    let springy = p.variant.is_springy();
    let mut lows = 0;
    for end in pos..a.len().min(pos + p.len) {
        let high = a[end] > k;
        if !high {
            lows += 1;
            if !springy || lows > p.h {
                break;
            }
        }
        let ok_start = !springy || a[pos] > k;
        if ok_start && high {
            walk(a, p, end + 1, count + 1, weight + end - pos + 1, out);
        }
        if springy && a[pos] <= k {
            break;
        }
    }
}

/// Keeps the pairs not dominated in both coordinates.
pub fn pareto_min(pairs: impl Iterator<Item = (usize, usize)>) -> Vec<(usize, usize)> {
    let mut v: Vec<_> = pairs.collect();
    v.sort_unstable();
    v.dedup();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for (q, w) in v {
        if out.last().is_none_or(|&(_, bw)| w < bw) {
            out.push((q, w));
        }
    }
    out
}

/// Slow second opinion on [`best_covers`]: tries every way of marking each
/// position as uncovered, starting a sequence or continuing one, and keeps
/// the markings that [`cover_is_valid`] accepts. Exponential in `n` with
/// base 3; meant for `n <= 6`.
pub fn best_covers_bruteforce(assignment: &[i64], params: &FocusParams) -> Vec<(usize, usize)> {
    let n = assignment.len();
    let xs: Vec<IntInterval> = assignment.iter().map(|&v| IntInterval::fixed(v)).collect();
    let yc = IntInterval::new(0, n as i64);
    let zc = params.variant.is_weighted().then(|| IntInterval::new(0, n as i64));
    let Ok(inst) = FocusInstance::new(xs, yc, zc, *params) else {
        return Vec::new();
    };
    let mut pairs = BTreeSet::new();
    let total = 3usize.pow(n as u32);
    'marks: for code in 0..total {
        let mut seqs: Vec<(usize, usize)> = Vec::new();
        let mut m = code;
        for l in 0..n {
            match m % 3 {
                0 => {}
                1 => seqs.push((l, l)),
                _ => match seqs.last_mut() {
                    Some(s) if s.1 + 1 == l => s.1 = l,
                    _ => continue 'marks,
                },
            }
            m /= 3;
        }
        let cover = Cover::new(seqs).expect("sorted disjoint");
        if cover_is_valid(&inst, assignment, &cover) {
            pairs.insert((cover.cardinality(), cover.total_length()));
        }
    }
    pareto_min(pairs.into_iter())
}

/// Whether the assignment has a cover within the current `yc`/`zc` maxima.
pub fn satisfiable(inst: &FocusInstance, assignment: &[i64]) -> bool {
    let zmax = inst.zc().map_or(i64::MAX, |z| z.hi());
    best_covers(assignment, inst.params())
        .iter()
        .any(|&(q, w)| q as i64 <= inst.yc().hi() && w as i64 <= zmax)
}

/// Bounds-consistent domains by exhaustive search, iterated to a fixpoint.
/// Upper bounds of `yc` and `zc` are budgets and are never lowered.
pub fn bc_closure(
    inst: &FocusInstance,
    cap: usize,
) -> Result<Result<FocusInstance, Infeasible>, OracleError> {
    let mut cur = inst.clone();
    loop {
        let next = match closure_step(&cur, cap)? {
            Ok(next) => next,
            Err(e) => return Ok(Err(e)),
        };
        if next == cur {
            return Ok(Ok(cur));
        }
        cur = next;
    }
}

fn closure_step(
    inst: &FocusInstance,
    cap: usize,
) -> Result<Result<FocusInstance, Infeasible>, OracleError> {
    let n = inst.n();
    let k = inst.k();
    let ymax = inst.yc().hi();
    let zmax = inst.zc().map_or(i64::MAX, |z| z.hi());
    let mut low = vec![false; n];
    let mut high = vec![false; n];
    let mut min_q: Option<usize> = None;
    let mut min_w: Option<usize> = None;
    for a in enumerate_instantiations(inst.xs(), cap)? {
        let pairs = best_covers(&a, inst.params());
        let ok = pairs.iter().any(|&(q, w)| q as i64 <= ymax && w as i64 <= zmax);
        for &(q, w) in &pairs {
            if w as i64 <= zmax {
                min_q = Some(min_q.map_or(q, |m| m.min(q)));
            }
            if q as i64 <= ymax {
                min_w = Some(min_w.map_or(w, |m| m.min(w)));
            }
        }
        if ok {
            for (l, &v) in a.iter().enumerate() {
                if v > k {
                    high[l] = true;
                } else {
                    low[l] = true;
                }
            }
        }
    }
    if !low.iter().zip(&high).all(|(a, b)| *a || *b) {
        return Ok(Err(Infeasible));
    }
    let (Some(min_q), Some(min_w)) = (min_q, min_w) else {
        return Ok(Err(Infeasible));
    };
    let xs = inst
        .xs()
        .iter()
        .enumerate()
        .map(|(l, &x)| {
            let mut d = x;
            if !low[l] {
                d = d.remove_low_class(k);
            }
            if !high[l] {
                d = d.remove_high_class(k);
            }
            d
        })
        .collect();
    let yc = inst.yc().raise_lo(min_q as i64);
    let zc = inst.zc().map(|z| z.raise_lo(min_w as i64));
    if yc.is_empty() || zc.is_some_and(|z| z.is_empty()) {
        return Ok(Err(Infeasible));
    }
    Ok(Ok(inst
        .try_with_domains(xs, yc, zc)
        .expect("closure keeps domains non-empty")))
}
