//! Depth-first search: variables in the given order, smallest value first,
//! binary branching `x = lo` / `x >= lo + 1`.

use crate::model::IntInterval;

use super::network::Network;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search nodes, root included.
    pub nodes: u64,
    pub failures: u64,
    pub solutions: u64,
}

/// Every assignment of `decision` reachable at a consistent fixpoint. Other
/// variables are not branched on.
pub fn solve_all(net: &mut Network, decision: &[usize]) -> (Vec<Vec<i64>>, SearchStats) {
    let mut stats = SearchStats::default();
    let mut sols = Vec::new();
    let root = net.mark();
    dfs(net, decision, &mut stats, &mut |net| {
        sols.push(decision.iter().map(|&v| net.domain(v).lo()).collect());
        true
    });
    net.undo(root);
    (sols, stats)
}

/// Smallest value of `objective` over assignments of `decision`, with the
/// assignment reaching it. Branch and bound: after each solution the
/// objective is bounded strictly below it.
pub fn minimize(
    net: &mut Network,
    decision: &[usize],
    objective: usize,
) -> (Option<(i64, Vec<i64>)>, SearchStats) {
    let mut stats = SearchStats::default();
    let root = net.mark();
    let mut best: Option<(i64, Vec<i64>)> = None;
    bnb(net, decision, objective, &mut stats, &mut best);
    net.undo(root);
    (best, stats)
}

fn dfs(
    net: &mut Network,
    decision: &[usize],
    stats: &mut SearchStats,
    on_solution: &mut dyn FnMut(&Network) -> bool,
) -> bool {
    stats.nodes += 1;
    if net.fixpoint().is_err() {
        stats.failures += 1;
        return true;
    }
    let Some(&v) = decision.iter().find(|&&v| !net.domain(v).is_fixed()) else {
        stats.solutions += 1;
        return on_solution(net);
    };
    let d = net.domain(v);
    for part in [IntInterval::fixed(d.lo()), IntInterval::new(d.lo() + 1, d.hi())] {
        let m = net.mark();
        let keep_going = net.restrict(v, part).is_err() || dfs(net, decision, stats, on_solution);
        net.undo(m);
        if !keep_going {
            return false;
        }
    }
    true
}

fn bnb(
    net: &mut Network,
    decision: &[usize],
    objective: usize,
    stats: &mut SearchStats,
    best: &mut Option<(i64, Vec<i64>)>,
) {
    stats.nodes += 1;
    if let Some((b, _)) = best {
        if net.restrict(objective, IntInterval::new(i64::MIN, *b - 1)).is_err() {
            stats.failures += 1;
            return;
        }
    }
    if net.fixpoint().is_err() {
        stats.failures += 1;
        return;
    }
    let Some(&v) = decision.iter().find(|&&v| !net.domain(v).is_fixed()) else {
        stats.solutions += 1;
        let sol = decision.iter().map(|&v| net.domain(v).lo()).collect();
        *best = Some((net.domain(objective).lo(), sol));
        return;
    };
    let d = net.domain(v);
    for part in [IntInterval::fixed(d.lo()), IntInterval::new(d.lo() + 1, d.hi())] {
        let m = net.mark();
        if net.restrict(v, part).is_ok() {
            bnb(net, decision, objective, stats, best);
        }
        net.undo(m);
    }
}
