//! Weighted FOCUS: at most `yc` sequences of length at most `len`, covering
//! exactly the values above `k`, with total length at most `zc`.
//!
//! Covered penalizing variables are paid for by every cover, so the table
//! only tracks the cost `c` = number of covered undetermined variables. The
//! entry `f[c][j]` is the best (fewest sequences, then shortest last
//! sequence) cover of `x_0..x_j` at cost `c`.

use std::fmt;

use crate::dp::{prefix_best, show, DpEntry, Direction, Grid, INF};
use crate::error::Infeasible;
use crate::model::{label, FocusInstance, FocusParams, IntInterval, VarLabel};
use crate::solver::{Channel, FocusProp, Network, SumLeq};

/// `{q, l}`: number of sequences and length of the last one, `l = INF` when
/// the last sequence stops before the current column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpCell {
    pub q: u32,
    pub l: u32,
}

impl DpEntry for DpCell {
    const DUMMY: Self = DpCell { q: INF, l: INF };
    const ORIGIN: Self = DpCell { q: 0, l: 0 };

    fn q(&self) -> u32 {
        self.q
    }

    fn l(&self) -> u32 {
        self.l
    }

    fn render(&self) -> String {
        format!("{{{},{}}}", show(self.q), show(self.l))
    }
}

impl fmt::Display for DpCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub type DpTable = Grid<DpCell>;

/// `max(zc) - |P_k|`, negative when the penalizing variables alone exceed
/// the budget.
pub fn cost_budget(xs: &[IntInterval], k: i64, zc_hi: i64) -> i64 {
    let p = xs.iter().filter(|x| x.lo() > k).count() as i64;
    zc_hi - p
}

/// Disentailment table over `xs` in the given order. Returns `None` when the
/// cost budget is negative.
pub fn build_dp_w(xs: &[IntInterval], params: &FocusParams, zc_hi: i64) -> Option<DpTable> {
    build(xs.iter(), xs.len(), params, zc_hi, Direction::Forward)
}

/// Same table over the reversed variables.
pub fn build_dp_w_backward(
    xs: &[IntInterval],
    params: &FocusParams,
    zc_hi: i64,
) -> Option<DpTable> {
    build(xs.iter().rev(), xs.len(), params, zc_hi, Direction::Backward)
}

fn build<'a, I>(xs: I, n: usize, params: &FocusParams, zc_hi: i64, dir: Direction) -> Option<DpTable>
where
    I: Iterator<Item = &'a IntInterval> + Clone,
{
    let k = params.k;
    let p = xs.clone().filter(|x| x.lo() > k).count() as i64;
    let zcu = zc_hi - p;
    if zcu < 0 {
        return None;
    }
    let zcu = zcu.min(n as i64) as usize;
    let len = params.len as u32;
    let rows = zcu + 1;
    let mut t = DpTable::new(rows, n, dir);
    let mut prev: Vec<DpCell> = t.column_vec(-1);
    for (j, x) in xs.enumerate() {
        let lab = label(x, k);
        let top = j.min(zcu);
        let col = t.column_mut(j);
        for c in 0..=top {
            let b = prev[c];
            col[c] = match lab {
                VarLabel::Penalizing => {
                    if b.l >= 1 && b.l < len {
                        DpCell { q: b.q, l: b.l + 1 }
                    } else if b.q != INF {
                        DpCell { q: b.q + 1, l: 1 }
                    } else {
                        DpCell::DUMMY
                    }
                }
                VarLabel::Undetermined => {
                    let a = if c > 0 { prev[c - 1] } else { DpCell::DUMMY };
                    if a.l >= 1 && a.l < len && (a.q == b.q || b.q == INF) {
                        DpCell { q: a.q, l: a.l + 1 }
                    } else if b.q != INF {
                        DpCell { q: b.q, l: INF }
                    } else {
                        DpCell::DUMMY
                    }
                }
                VarLabel::Neutral => {
                    if b.q != INF {
                        DpCell { q: b.q, l: INF }
                    } else {
                        DpCell::DUMMY
                    }
                }
            };
        }
        prev.copy_from_slice(col);
    }
    Some(t)
}

/// Grid dump: one column per variable headed by its domain, one row per
/// sequence count.
pub fn dump_table(table: &DpTable, xs: &[IntInterval]) -> String {
    table.render(&column_headers(table.direction(), xs))
}

pub(crate) fn column_headers(dir: Direction, xs: &[IntInterval]) -> Vec<String> {
    let order: Vec<usize> = match dir {
        Direction::Forward => (0..xs.len()).collect(),
        Direction::Backward => (0..xs.len()).rev().collect(),
    };
    order.iter().map(|&i| format!("x{i}{}", xs[i])).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entailment {
    Feasible,
    Disentailed,
}

pub fn disentailment_w(inst: &FocusInstance) -> Entailment {
    let zc = inst.zc().expect("weighted instance");
    match build_dp_w(inst.xs(), inst.params(), zc.hi()) {
        Some(t) if t.min_cost_within(inst.yc().hi()).is_some() => Entailment::Feasible,
        _ => Entailment::Disentailed,
    }
}

/// Bounds consistency for weighted FOCUS.
pub fn bc_filter_w(inst: &FocusInstance) -> Result<FocusInstance, Infeasible> {
    let xs = inst.xs();
    let n = xs.len();
    let p = inst.params();
    let k = p.k;
    let zc = inst.zc().expect("weighted instance");
    let yc = inst.yc();
    let f = build_dp_w(xs, p, zc.hi()).ok_or(Infeasible)?;
    let zcu = f.zcu();
    let last = f.column(n - 1);
    let best_c = f.min_cost_within(yc.hi()).ok_or(Infeasible)?;
    let yc = yc.raise_lo(f.min_q() as i64);
    let zc = zc.raise_lo(inst.penalizing_count() as i64 + best_c as i64);

    // With spare room on both counts, one class change cannot break a cover.
    let slack = (0..zcu).any(|c| last[c].q != INF && (last[c].q as i64) < yc.hi());
    if slack {
        return Ok(inst.with_domains(xs.to_vec(), yc, Some(zc)));
    }

    let b = build_dp_w_backward(xs, p, zc.hi()).ok_or(Infeasible)?;
    let len = p.len as u32;
    let max = yc.hi();
    let mut out = xs.to_vec();
    for i in 0..n {
        let x = xs[i];
        if x.is_fixed() {
            continue;
        }
        let left = f.column_vec(i as isize - 1);
        let right = prefix_best(&b.column_vec(n as isize - i as isize - 2));
        let lab = label(&x, k);
        let high_cost = usize::from(lab == VarLabel::Undetermined);
        let mut high_ok = false;
        let mut low_ok = false;
        for (c1, a) in left.iter().enumerate() {
            if a.is_dummy() {
                continue;
            }
            if !high_ok && c1 + high_cost <= zcu {
                let r = right[zcu - c1 - high_cost];
                high_ok = !r.is_dummy() && high_count(*a, r, len) as i64 <= max;
            }
            if !low_ok {
                let r = right[zcu - c1];
                low_ok = !r.is_dummy() && (a.q + r.q) as i64 <= max;
            }
            if high_ok && low_ok {
                break;
            }
        }
        let mut d = x;
        if x.can_be_high(k) && !high_ok {
            d = d.remove_high_class(k);
        }
        if x.can_be_low(k) && !low_ok {
            d = d.remove_low_class(k);
        }
        if d.is_empty() {
            return Err(Infeasible);
        }
        out[i] = d;
    }
    Ok(inst.with_domains(out, yc, Some(zc)))
}

/// Sequences needed when a value above `k` sits between a prefix ending in
/// `a` and a suffix starting in `b`.
fn high_count(a: DpCell, b: DpCell, len: u32) -> u32 {
    let joins = |l: u32| l >= 1 && l != INF && l < len;
    if a.l >= 1 && b.l >= 1 && a.l != INF && b.l != INF && a.l + b.l < len {
        a.q + b.q - 1
    } else if joins(a.l) || joins(b.l) {
        a.q + b.q
    } else {
        a.q + b.q + 1
    }
}

/// Network equivalent to weighted FOCUS built from plain FOCUS, one 0/1
/// indicator per variable and a sum: `FOCUS(X, yc, len, k)`,
/// `b_l = 1 <=> x_l > k`, `sum b_l <= zc`.
///
/// Variables are laid out as `x_0..x_{n-1}, yc, zc, b_0..b_{n-1}`.
pub fn decompose_w(inst: &FocusInstance) -> Network {
    let n = inst.n();
    let p = inst.params();
    let zc = inst.zc().expect("weighted instance");
    let mut net = Network::new();
    let xs: Vec<usize> = inst.xs().iter().map(|&d| net.add_var(d)).collect();
    let yc = net.add_var(inst.yc());
    let z = net.add_var(zc);
    let bs: Vec<usize> = (0..n).map(|_| net.add_var(IntInterval::new(0, 1))).collect();
    let focus = FocusParams::new(crate::model::Variant::Focus, p.k, p.len, 0);
    net.post(FocusProp::new(xs.clone(), yc, None, focus));
    for (&x, &b) in xs.iter().zip(&bs) {
        net.post(Channel::new(x, b, p.k));
    }
    net.post(SumLeq::new(bs, z));
    net
}
