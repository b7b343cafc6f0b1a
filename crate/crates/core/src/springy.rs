//! Linear-time bounds consistency for SpringyFocus (and plain FOCUS, the
//! `h = 0` case).
//!
//! A forward pass computes, for every prefix `x_0..x_l`, the least number of
//! sequences under three assumptions on `x_l`, together with the length of
//! the sequence that can still be extended at `l` and the number of low
//! values it already covers. The same pass over the reversed variables gives
//! the suffix view. A variable class is supported iff splicing the prefix
//! ending at `l - 1` with the suffix starting at `l + 1` around that class
//! needs at most `max(yc)` sequences.

use std::fmt;

use crate::error::Infeasible;
use crate::model::{FocusInstance, FocusParams, IntInterval};

/// Prefix quantities at one index. Counts equal to the table sentinel mean
/// "impossible".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixCell {
    /// Least count with `x_l <= k` left uncovered.
    pub p_leq: u32,
    /// Least count with `x_l <= k` covered by a sequence that continues.
    /// Only stored when it matches the uncovered count; higher values are
    /// dominated and reported as the sentinel.
    pub ps_leq: u32,
    /// Least count with `x_l > k`.
    pub p_gt: u32,
    /// Length of the extendable sequence ending at `l` in an optimal prefix,
    /// 0 if no such sequence.
    pub plen: u32,
    /// Low values covered by that sequence before `l`.
    pub card: u32,
}

impl PrefixCell {
    /// `min(p_leq, p_gt)`
    #[inline]
    pub fn best(&self) -> u32 {
        self.p_leq.min(self.p_gt)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// One cell per variable. In a backward table, cell `t` describes the
/// reversed prefix `x_{n-1}, .., x_{n-1-t}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixTable {
    cells: Vec<PrefixCell>,
    direction: Direction,
    sentinel: u32,
}

impl PrefixTable {
    pub fn cells(&self) -> &[PrefixCell] {
        &self.cells
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// `n + 1`
    pub fn sentinel(&self) -> u32 {
        self.sentinel
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

impl fmt::Display for PrefixTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: u32| {
            if v == self.sentinel {
                "-".to_string()
            } else {
                v.to_string()
            }
        };
        writeln!(
            f,
            "{:>6} {:>6} {:>6} {:>6} {:>6} {:>6}",
            "l", "p<=", "pS<=", "p>", "plen", "card"
        )?;
        let n = self.cells.len();
        for (t, c) in self.cells.iter().enumerate() {
            let l = match self.direction {
                Direction::Forward => t,
                Direction::Backward => n - 1 - t,
            };
            writeln!(
                f,
                "{:>6} {:>6} {:>6} {:>6} {:>6} {:>6}",
                l,
                show(c.p_leq),
                show(c.ps_leq),
                show(c.p_gt),
                c.plen,
                c.card
            )?;
        }
        Ok(())
    }
}

struct Shape {
    k: i64,
    len: u32,
    h: u32,
    inf: u32,
}

fn first_cell(x: &IntInterval, s: &Shape) -> PrefixCell {
    let p_leq = if x.can_be_low(s.k) { 0 } else { s.inf };
    let p_gt = if x.can_be_high(s.k) { 1 } else { s.inf };
    // A sequence is only open at x_0 when leaving it uncovered is impossible.
    let plen = if p_gt < p_leq { 1 } else { 0 };
    PrefixCell {
        p_leq,
        ps_leq: s.inf,
        p_gt,
        plen,
        card: 0,
    }
}

fn next_cell(prev: &PrefixCell, prev_x: &IntInterval, x: &IntInterval, s: &Shape) -> PrefixCell {
    let can_low = x.can_be_low(s.k);
    let can_high = x.can_be_high(s.k);
    let q = prev.best();
    let l = prev.plen;
    let lows = if l >= 1 && !prev_x.can_be_high(s.k) {
        prev.card + 1
    } else {
        prev.card
    };

    let p_leq = if can_low { q } else { s.inf };
    let ps_leq = if can_low && l >= 1 && l + 2 <= s.len && lows < s.h {
        q
    } else {
        s.inf
    };
    let extend_high = can_high && l >= 1 && l < s.len;
    let p_gt = if !can_high {
        s.inf
    } else if extend_high {
        q
    } else {
        q + 1
    };

    let best = p_leq.min(p_gt);
    let (plen, card) = if best == q && (extend_high || ps_leq != s.inf) {
        (l + 1, lows)
    } else if p_gt == best && best != s.inf {
        (1, 0)
    } else {
        (0, 0)
    };
    PrefixCell {
        p_leq,
        ps_leq,
        p_gt,
        plen,
        card,
    }
}

fn shape(n: usize, params: &FocusParams) -> Shape {
    Shape {
        k: params.k,
        len: params.len as u32,
        h: params.tolerance() as u32,
        inf: n as u32 + 1,
    }
}

/// Runs the recurrence over `xs`, handing each cell and its variable to
/// `visit` in order. The last cell is never open.
fn scan<'a, I>(xs: I, s: &Shape, mut visit: impl FnMut(&PrefixCell, &IntInterval))
where
    I: Iterator<Item = &'a IntInterval>,
{
    let mut xs = xs.peekable();
    let Some(mut prev_x) = xs.next() else { return };
    let mut prev = first_cell(prev_x, s);
    for x in xs {
        visit(&prev, prev_x);
        prev = next_cell(&prev, prev_x, x, s);
        prev_x = x;
    }
    prev.ps_leq = s.inf;
    visit(&prev, prev_x);
}

fn build<'a, I>(xs: I, n: usize, params: &FocusParams, direction: Direction) -> PrefixTable
where
    I: Iterator<Item = &'a IntInterval>,
{
    let s = shape(n, params);
    let mut cells: Vec<PrefixCell> = Vec::with_capacity(n);
    scan(xs, &s, |c, _| cells.push(*c));
    PrefixTable {
        cells,
        direction,
        sentinel: s.inf,
    }
}

/// Forward prefix table.
pub fn min_cards(xs: &[IntInterval], params: &FocusParams) -> PrefixTable {
    build(xs.iter(), xs.len(), params, Direction::Forward)
}

/// Prefix table of the reversed sequence.
pub fn min_cards_backward(xs: &[IntInterval], params: &FocusParams) -> PrefixTable {
    build(xs.iter().rev(), xs.len(), params, Direction::Backward)
}

/// Least number of sequences over all instantiations, or the sentinel.
pub fn focus_cardinality(table: &PrefixTable) -> u32 {
    table.cells.last().map_or(0, |c| c.best())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpringyOptions {
    /// Only prune `X` when `yc` is fixed after raising its lower bound.
    pub fixed_yc_guard: bool,
}

/// Count, plus extendable length and covered lows, of one side of a splice.
#[derive(Clone, Copy)]
struct Side {
    q: u32,
    l: u32,
    lows: u32,
}

impl Side {
    const EMPTY: Side = Side { q: 0, l: 0, lows: 0 };

    fn of(cell: &PrefixCell, x: &IntInterval, k: i64) -> Side {
        let lows = if cell.plen >= 1 && !x.can_be_high(k) {
            cell.card + 1
        } else {
            cell.card
        };
        Side {
            q: cell.best(),
            l: cell.plen,
            lows,
        }
    }
}

/// Least counts with `x_i > k` and with `x_i <= k`, ignoring the domain of
/// `x_i` itself.
fn splice(a: Side, b: Side, len: u32, h: u32) -> (u32, u32) {
    let high = if a.l >= 1 && b.l >= 1 && a.l + b.l < len && a.lows + b.lows <= h {
        a.q + b.q - 1
    } else if (a.l >= 1 && a.l < len) || (b.l >= 1 && b.l < len) {
        a.q + b.q
    } else {
        a.q + b.q + 1
    };
    let low = if a.l >= 1 && b.l >= 1 && a.l + b.l < len && a.lows + b.lows < h {
        a.q + b.q - 1
    } else {
        a.q + b.q
    };
    (high, low)
}

/// Bounds consistency for Focus and Springy instances.
pub fn springy_filter(inst: &FocusInstance) -> Result<FocusInstance, Infeasible> {
    springy_filter_with(inst, SpringyOptions::default())
}

pub fn springy_filter_with(
    inst: &FocusInstance,
    opts: SpringyOptions,
) -> Result<FocusInstance, Infeasible> {
    debug_assert!(!inst.variant().is_weighted());
    let xs = inst.xs();
    let n = xs.len();
    let p = inst.params();
    let k = p.k;
    let s = shape(n, p);
    // Suffix summaries, indexed by the variable they end at. The forward
    // table is never stored: each prefix is combined as soon as it exists.
    let mut suffix: Vec<Side> = Vec::with_capacity(n);
    let mut fc = 0;
    scan(xs.iter().rev(), &s, |c, x| {
        fc = c.best();
        suffix.push(Side::of(c, x, k));
    });
    suffix.reverse();
    let yc = inst.yc();
    if fc as i64 > yc.hi() {
        return Err(Infeasible);
    }
    let yc = yc.raise_lo(fc as i64);
    if opts.fixed_yc_guard && !yc.is_fixed() {
        // One class change moves the optimum by at most one sequence, so
        // nothing can lose support while yc has slack.
        return Ok(inst.with_domains(xs.to_vec(), yc, None));
    }
    let max = yc.hi();
    let mut out = Vec::with_capacity(n);
    let mut before = Side::EMPTY;
    let mut i = 0;
    let mut wiped = false;
    scan(xs.iter(), &s, |c, &x| {
        let after = suffix.get(i + 1).copied().unwrap_or(Side::EMPTY);
        let mut d = x;
        if !x.is_fixed() {
            let (high, low) = splice(before, after, s.len, s.h);
            if x.can_be_high(k) && high as i64 > max {
                d = d.remove_high_class(k);
            }
            if x.can_be_low(k) && low as i64 > max {
                d = d.remove_low_class(k);
            }
            wiped |= d.is_empty();
        }
        out.push(d);
        before = Side::of(c, &x, k);
        i += 1;
    });
    if wiped {
        return Err(Infeasible);
    }
    Ok(inst.with_domains(out, yc, None))
}
